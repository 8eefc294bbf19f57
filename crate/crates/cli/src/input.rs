//! Reading knots from the command line or a file.

use std::io::Read;
use std::path::{Path, PathBuf};

/// Where the PD codes come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Inline(String),
    /// `-` reads standard input.
    File(PathBuf),
}

/// One knot of the input with its 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub text: String,
}

/// One knot per line; blank lines and lines starting with `#` are skipped.
pub fn entries(text: &str) -> Vec<Entry> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.trim();
            (!l.is_empty() && !l.starts_with('#')).then(|| Entry { line: i + 1, text: l.to_string() })
        })
        .collect()
}

pub fn read(input: &Input) -> std::io::Result<Vec<Entry>> {
    match input {
        Input::Inline(s) => Ok(entries(s)),
        Input::File(p) if p == Path::new("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(entries(&s))
        }
        Input::File(p) => Ok(entries(&std::fs::read_to_string(p)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blanks() {
        let e = entries("# corpus\n\n[[1,2,2,1]]\n   \n  X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)  \n# end\n");
        assert_eq!(e.len(), 2);
        assert_eq!(e[0], Entry { line: 3, text: "[[1,2,2,1]]".into() });
        assert_eq!(e[1].line, 5);
        assert_eq!(e[1].text, "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
    }

    #[test]
    fn empty_input() {
        assert!(entries("# nothing\n\n").is_empty());
    }
}
