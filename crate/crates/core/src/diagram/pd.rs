//! PD-code parsing and validation.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::PdError;

/// A planar-diagram code: per crossing, the four incident edge labels listed
/// counterclockwise starting from the incoming under-strand.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
}

/// Strand orientation recovered from a PD code.
///
/// Positions are flattened as `4 * crossing + slot`.
#[derive(Clone, Debug)]
pub(crate) struct Strand {
    /// The other position carrying the same edge label.
    pub partner: Vec<usize>,
    /// Tail positions (where an edge leaves its crossing) in traversal order,
    /// starting from the under-strand leaving crossing 0.
    pub tails: Vec<usize>,
}

impl PdCode {
    /// Validates `crossings` and returns the code.
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self, PdError> {
        let pd = PdCode { crossings };
        pd.strand()?;
        Ok(pd)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Reflect the diagram in the plane. The result is a PD code of the
    /// mirror image knot.
    pub fn reflected(&self) -> PdCode {
        PdCode { crossings: self.crossings.iter().map(|&[a, b, c, d]| [a, d, c, b]).collect() }
    }

    pub(crate) fn strand(&self) -> Result<Strand, PdError> {
        let k = self.crossings.len();
        if k == 0 {
            return Err(PdError::Empty);
        }
        let mut seen: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (c, tuple) in self.crossings.iter().enumerate() {
            for (slot, &label) in tuple.iter().enumerate() {
                if label == 0 {
                    return Err(PdError::Syntax { offset: 0, message: "edge labels must be positive" });
                }
                seen.entry(label).or_default().push(4 * c + slot);
            }
        }
        if let Some((&label, pos)) = seen.iter().find(|(_, v)| v.len() != 2) {
            return Err(PdError::LabelCount { label, count: pos.len() });
        }
        let mut partner = vec![0; 4 * k];
        for pos in seen.values() {
            partner[pos[0]] = pos[1];
            partner[pos[1]] = pos[0];
        }

        let start = 2;
        let mut tails = Vec::with_capacity(2 * k);
        let mut tail = start;
        loop {
            tails.push(tail);
            let head = partner[tail];
            if head % 4 == 2 {
                return Err(PdError::Orientation { crossing: head / 4 });
            }
            tail = 4 * (head / 4) + (head % 4 + 2) % 4;
            if tail == start {
                break;
            }
            if tails.len() > 2 * k {
                return Err(PdError::Orientation { crossing: head / 4 });
            }
        }
        if tails.len() != 2 * k {
            return Err(PdError::MultipleComponents { components: count_components(&partner) });
        }
        Ok(Strand { partner, tails })
    }
}

/// Number of closed strands, ignoring orientation.
fn count_components(partner: &[usize]) -> usize {
    let mut visited = vec![false; partner.len()];
    let mut n = 0;
    for s in 0..partner.len() {
        if visited[s] {
            continue;
        }
        n += 1;
        let mut p = s;
        while !visited[p] {
            visited[p] = true;
            let q = partner[p];
            visited[q] = true;
            p = 4 * (q / 4) + (q % 4 + 2) % 4;
        }
    }
    n
}

/// Bracket form, `[[1,4,2,5],[3,6,4,1],[5,2,6,3]]`.
impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{},{},{},{}]", a, b, c, d)?;
        }
        f.write_str("]")
    }
}

/// Parses either `[[1,4,2,5],[3,6,4,1]]` or `X(1,4,2,5) X(3,6,4,1)`.
/// `X[...]` tuples and an optional `PD[...]`/`PD(...)` wrapper are accepted
/// as well.
pub fn parse_pd(text: &str) -> Result<PdCode, PdError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.eat_keyword(b"PD") {
        p.skip_ws();
        let close = match p.next() {
            Some(b'[') => b']',
            Some(b'(') => b')',
            _ => return Err(p.error("expected '[' or '(' after PD")),
        };
        let crossings = p.x_list(Some(close))?;
        p.expect(close)?;
        p.finish()?;
        return PdCode::new(crossings);
    }
    let crossings = match p.peek() {
        Some(b'[') => p.bracket_list()?,
        Some(b'X') | Some(b'x') => p.x_list(None)?,
        Some(_) => return Err(p.error("expected '[' or 'X'")),
        None => return Err(PdError::Empty),
    };
    p.finish()?;
    PdCode::new(crossings)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &'static str) -> PdError {
        PdError::Syntax { offset: self.pos, message }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat_keyword(&mut self, kw: &[u8]) -> bool {
        if self.src[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PdError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(match c {
                b']' => "expected ']'",
                b'[' => "expected '['",
                b')' => "expected ')'",
                b'(' => "expected '('",
                b',' => "expected ','",
                _ => "unexpected character",
            }))
        }
    }

    fn finish(&mut self) -> Result<(), PdError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("trailing characters")),
        }
    }

    fn number(&mut self) -> Result<u32, PdError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an edge label"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let n: u32 =
            digits.parse().map_err(|_| PdError::Syntax { offset: start, message: "edge label out of range" })?;
        if n == 0 {
            return Err(PdError::Syntax { offset: start, message: "edge labels must be positive" });
        }
        Ok(n)
    }

    fn quad(&mut self, close: u8) -> Result<[u32; 4], PdError> {
        let mut out = [0; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            if i > 0 {
                self.expect(b',')?;
            }
            *slot = self.number()?;
        }
        self.expect(close)?;
        Ok(out)
    }

    fn bracket_list(&mut self) -> Result<Vec<[u32; 4]>, PdError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            self.expect(b'[')?;
            out.push(self.quad(b']')?);
            self.skip_ws();
            match self.next() {
                Some(b',') => continue,
                Some(b']') => break,
                _ => return Err(self.error("expected ',' or ']'")),
            }
        }
        Ok(out)
    }

    /// `X(..) X(..)`, optionally comma separated, up to `end` or end of input.
    fn x_list(&mut self, end: Option<u8>) -> Result<Vec<[u32; 4]>, PdError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(c) if Some(c) == end => break,
                Some(b',') if !out.is_empty() => {
                    self.pos += 1;
                    continue;
                }
                Some(b'X') | Some(b'x') => {
                    self.pos += 1;
                    self.skip_ws();
                    let close = match self.next() {
                        Some(b'(') => b')',
                        Some(b'[') => b']',
                        _ => return Err(self.error("expected '(' or '[' after X")),
                    };
                    out.push(self.quad(close)?);
                }
                Some(_) => return Err(self.error("expected 'X'")),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn bracket_and_x_forms_agree() {
        let a = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap();
        let b = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let c = parse_pd("PD[X[1, 4, 2, 5], X[3, 6, 4, 1], X[5, 2, 6, 3]]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn kink_unknot() {
        let pd = parse_pd("[[1,2,2,1]]").unwrap();
        assert_eq!(pd.len(), 1);
    }

    #[test]
    fn label_seen_once() {
        let err = parse_pd("[[1,4,2,5],[3,6,4,1]]").unwrap_err();
        assert!(matches!(err, PdError::LabelCount { count: 1, .. }));
    }

    #[test]
    fn hopf_link_is_rejected() {
        let err = parse_pd("[[4,1,3,2],[2,3,1,4]]").unwrap_err();
        assert_eq!(err, PdError::MultipleComponents { components: 2 });
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_pd("[[1,2,2]]"), Err(PdError::Syntax { .. })));
        assert!(matches!(parse_pd("[[1,2,2,1]] junk"), Err(PdError::Syntax { .. })));
        assert!(matches!(parse_pd("hello"), Err(PdError::Syntax { .. })));
        assert!(matches!(parse_pd("[[0,1,1,0]]"), Err(PdError::Syntax { .. })));
        assert_eq!(parse_pd("   "), Err(PdError::Empty));
        assert_eq!(parse_pd("[]"), Err(PdError::Empty));
    }

    #[test]
    fn display_reparses() {
        let pd = parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        assert_eq!(parse_pd(&pd.to_string()).unwrap(), pd);
    }
}
