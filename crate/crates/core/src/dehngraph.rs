//! Corner and region labelings of a knot diagram and the Dehn graph they
//! assemble into.
//!
//! Group elements are freely reduced words in the arc generators. They are
//! never rewritten modulo the Wirtinger relations; equalities in the knot
//! group are only ever checked after evaluating under a representation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::diagram::{Corner, KnotDiagram};
use crate::mscomplex::Representation;

/// A freely reduced word in the arc generators.
///
/// Words are written in composition order: `x * w` is the loop that runs
/// `w` first and then `x`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(g: usize) -> Self {
        Word { letters: alloc::vec![(g, 1)] }
    }

    /// Builds a word from raw letters, reducing it. Exponents other than
    /// ±1 are rejected.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Option<Self> {
        let mut w = Word::empty();
        for (g, e) in letters {
            if e != 1 && e != -1 {
                return None;
            }
            w.push(g, e);
        }
        Some(w)
    }

    fn push(&mut self, g: usize, e: i8) {
        match self.letters.last() {
            Some(&(h, f)) if h == g && f == -e => {
                self.letters.pop();
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        let mut out = self.clone();
        for &(g, e) in &rhs.letters {
            out.push(g, e);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::empty(), |acc, _| acc.mul(&base))
    }

    /// Image in H_1 of the knot exterior, which is Z generated by any
    /// meridian.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn display(&self) -> WordDisplay<'_> {
        WordDisplay(self)
    }
}

/// Display name of arc generator `g`: `a`, `b`, ..., `z`, then `g27`, ...
pub fn generator_name(g: usize) -> String {
    if g < 26 {
        String::from(char::from(b'a' + g as u8))
    } else {
        format!("g{}", g + 1)
    }
}

/// Inverse of [`generator_name`].
pub fn parse_generator_name(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    match bytes {
        [c] if c.is_ascii_lowercase() => Some((c - b'a') as usize),
        [b'g', rest @ ..] if !rest.is_empty() => {
            let n: usize = core::str::from_utf8(rest).ok()?.parse().ok()?;
            (n >= 27).then(|| n - 1)
        }
        _ => None,
    }
}

/// Renders a word as `ab^-1c`; the empty word renders as `1`.
pub struct WordDisplay<'a>(&'a Word);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &(g, e) in &self.0.letters {
            f.write_str(&generator_name(g))?;
            if e < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// `sign * word`, an element of Z[pi_1] with a single term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupRingTerm {
    pub sign: i8,
    pub word: Word,
}

impl GroupRingTerm {
    pub fn new(sign: i8, word: Word) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        GroupRingTerm { sign, word }
    }

    pub fn one() -> Self {
        Self::new(1, Word::empty())
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.sign, self.word.clone())
    }
}

/// `+1`, `-a`, `+ab^-1`.
impl fmt::Display for GroupRingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char(if self.sign > 0 { '+' } else { '-' })?;
        write!(f, "{}", self.word.display())
    }
}

/// Labels on the four corners of every crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerLabeling {
    labels: Vec<[GroupRingTerm; 4]>,
}

impl CornerLabeling {
    pub fn label(&self, corner: Corner) -> &GroupRingTerm {
        &self.labels[corner.crossing][corner.position as usize]
    }

    pub fn crossing(&self, c: usize) -> &[GroupRingTerm; 4] {
        &self.labels[c]
    }
}

/// Corner labels: with `x` the over arc, the two corners behind the
/// crossing along `x` get `-x` (left) and `+1` (right), the two ahead get
/// `+x` (left) and `-1` (right).
pub fn build_d1(diagram: &KnotDiagram) -> CornerLabeling {
    let labels = diagram
        .crossings()
        .iter()
        .map(|c| {
            let x = Word::generator(c.over_arc);
            let back = c.over_in as usize;
            let ahead = c.over_out() as usize;
            let mut out: [GroupRingTerm; 4] = core::array::from_fn(|_| GroupRingTerm::one());
            out[(back + 3) % 4] = GroupRingTerm::new(-1, x.clone());
            out[back] = GroupRingTerm::new(1, Word::empty());
            out[(ahead + 3) % 4] = GroupRingTerm::new(-1, Word::empty());
            out[ahead] = GroupRingTerm::new(1, x);
            out
        })
        .collect();
    CornerLabeling { labels }
}

/// Group elements attached to regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionLabeling {
    labels: Vec<Word>,
    root: usize,
}

impl RegionLabeling {
    pub fn label(&self, region: usize) -> &Word {
        &self.labels[region]
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Replace one label. Only useful for building negative controls.
    pub fn with_label(&self, region: usize, word: Word) -> Self {
        let mut out = self.clone();
        out.labels[region] = word;
        out
    }
}

/// Region labels: the unbounded region gets the empty word, and crossing an
/// arc `x` from its left side to its right side multiplies by `x` on the
/// left. Labels are propagated breadth-first over the dual graph.
pub fn build_d2(diagram: &KnotDiagram) -> RegionLabeling {
    let root = diagram.unbounded_region();
    let mut labels = alloc::vec![Word::empty(); diagram.regions().len()];
    let (order, _) = diagram.dual_spanning_tree(root);
    for (region, edge) in order {
        let e = &diagram.edges()[edge];
        let x = Word::generator(e.arc);
        labels[region] = if region == e.right { x.mul(&labels[e.left]) } else { x.inverse().mul(&labels[e.right]) };
    }
    RegionLabeling { labels, root }
}

/// A diagram edge whose two sides carry labels that disagree under the
/// representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Violation {
    pub edge_label: u32,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum D2Error {
    #[error("region labels disagree across {} diagram edge(s)", .violations.len())]
    Inconsistent { violations: Vec<D2Violation> },
    #[error("region labeling does not belong to this diagram")]
    Mismatch,
}

/// Successful consistency check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Report {
    /// Diagram edges checked (all of them).
    pub checked: usize,
    /// Of those, edges outside the breadth-first spanning tree, which hold
    /// only because of the Wirtinger relations.
    pub non_tree: usize,
}

/// Checks `rho(l(right)) = rho(x * l(left))` across every diagram edge.
pub fn check_d2(labeling: &RegionLabeling, diagram: &KnotDiagram, rep: &Representation) -> Result<D2Report, D2Error> {
    if labeling.labels.len() != diagram.regions().len() || labeling.root != diagram.unbounded_region() {
        return Err(D2Error::Mismatch);
    }
    let mut violations = Vec::new();
    for e in diagram.edges() {
        let lhs = rep.eval_word(&labeling.labels[e.right]);
        let rhs = rep.eval_word(&Word::generator(e.arc).mul(&labeling.labels[e.left]));
        if lhs != rhs {
            violations.push(D2Violation { edge_label: e.label, left: e.left, right: e.right });
        }
    }
    if !labeling.labels[labeling.root].is_empty() {
        violations.push(D2Violation { edge_label: 0, left: labeling.root, right: labeling.root });
    }
    if !violations.is_empty() {
        return Err(D2Error::Inconsistent { violations });
    }
    let (_, non_tree) = diagram.dual_spanning_tree(labeling.root);
    Ok(D2Report { checked: diagram.edges().len(), non_tree: non_tree.len() })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VertexKind {
    Crossing(usize),
    Region(usize),
    Basepoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub kind: VertexKind,
    /// Morse index: 2 for crossings, 1 for bounded regions, 0 for the
    /// basepoint.
    pub index: u8,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EdgeOrigin {
    Corner(Corner),
    RegionPlus(usize),
    RegionMinus(usize),
}

/// A trajectory from `from` (index i) down to `to` (index i - 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub label: GroupRingTerm,
    pub origin: EdgeOrigin,
}

/// Vertices are ordered crossings first, then bounded regions by id, then
/// the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnGraph {
    vertices: Vec<Vertex>,
    edges: Vec<GraphEdge>,
    generators: usize,
}

impl DehnGraph {
    /// Assembles a graph from raw parts, checking the structural rules:
    /// vertex ids are positions, edges go from index i to index i - 1.
    pub fn from_parts(vertices: Vec<Vertex>, edges: Vec<GraphEdge>, generators: usize) -> Result<Self, GraphError> {
        for (i, v) in vertices.iter().enumerate() {
            let expected = match v.kind {
                VertexKind::Crossing(_) => 2,
                VertexKind::Region(_) => 1,
                VertexKind::Basepoint => 0,
            };
            if v.id != i || v.index != expected {
                return Err(GraphError::BadVertex(i));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            let (Some(a), Some(b)) = (vertices.get(e.from), vertices.get(e.to)) else {
                return Err(GraphError::BadEdge(i));
            };
            if a.index != b.index + 1 || e.label.word.letters().iter().any(|&(g, _)| g >= generators) {
                return Err(GraphError::BadEdge(i));
            }
        }
        Ok(DehnGraph { vertices, edges, generators })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    /// Number of arc generators the labels are written in.
    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn basepoint(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match self.vertices[v].kind {
            VertexKind::Crossing(c) => format!("p{}", c + 1),
            VertexKind::Region(_) => {
                let j = self.vertices[..v].iter().filter(|u| matches!(u.kind, VertexKind::Region(_))).count();
                format!("q{}", j + 1)
            }
            VertexKind::Basepoint => String::from("inf"),
        }
    }

    /// Graphviz rendering. Crossing vertices are boxes, region vertices
    /// ellipses and the basepoint a double circle.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph dehn {\n");
        for v in &self.vertices {
            let shape = match v.index {
                2 => "box",
                1 => "ellipse",
                _ => "doublecircle",
            };
            let _ = writeln!(out, "  v{} [label=\"{}\", shape={}];", v.id, self.vertex_name(v.id), shape);
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, e.label);
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} has an inconsistent id or index label")]
    BadVertex(usize),
    #[error("edge {0} does not join consecutive indices or uses an unknown generator")]
    BadEdge(usize),
}

/// The Dehn graph of the knot exterior: one index-2 vertex per crossing, one
/// index-1 vertex per bounded region, the basepoint, one edge per corner on a
/// bounded region, and two edges from each region vertex to the basepoint
/// labeled `+1` and `-l(Q)`.
pub fn build_dehn_graph(diagram: &KnotDiagram, d1: &CornerLabeling, d2: &RegionLabeling) -> DehnGraph {
    let k = diagram.crossing_count();
    let mut vertices: Vec<Vertex> = (0..k).map(|c| Vertex { id: c, kind: VertexKind::Crossing(c), index: 2 }).collect();
    let mut region_vertex = alloc::vec![usize::MAX; diagram.regions().len()];
    for r in diagram.bounded_regions() {
        region_vertex[r] = vertices.len();
        vertices.push(Vertex { id: vertices.len(), kind: VertexKind::Region(r), index: 1 });
    }
    let base = vertices.len();
    vertices.push(Vertex { id: base, kind: VertexKind::Basepoint, index: 0 });

    let mut edges = Vec::new();
    for c in 0..k {
        for position in 0..4u8 {
            let corner = Corner { crossing: c, position };
            let r = diagram.region_of(corner);
            if r == diagram.unbounded_region() {
                continue;
            }
            edges.push(GraphEdge {
                from: c,
                to: region_vertex[r],
                label: d1.label(corner).clone(),
                origin: EdgeOrigin::Corner(corner),
            });
        }
    }
    for r in diagram.bounded_regions() {
        let q = region_vertex[r];
        edges.push(GraphEdge { from: q, to: base, label: GroupRingTerm::one(), origin: EdgeOrigin::RegionPlus(r) });
        edges.push(GraphEdge {
            from: q,
            to: base,
            label: GroupRingTerm::new(-1, d2.label(r).clone()),
            origin: EdgeOrigin::RegionMinus(r),
        });
    }
    DehnGraph { vertices, edges, generators: diagram.arcs().len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn diagram(s: &str) -> KnotDiagram {
        KnotDiagram::build(&parse_pd(s).unwrap()).unwrap()
    }

    const TREFOIL: &str = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]";

    #[test]
    fn words_reduce() {
        let a = Word::generator(0);
        let b = Word::generator(1);
        assert!(a.mul(&a.inverse()).is_empty());
        assert_eq!(a.mul(&b).mul(&b.inverse()), a);
        assert_eq!(a.pow(-2).exponent_sum(), -2);
        assert_eq!(Word::from_letters([(0, 1), (1, 1), (1, -1), (0, -1)]), Some(Word::empty()));
        assert_eq!(Word::from_letters([(0, 2)]), None);
    }

    #[test]
    fn generator_names_round_trip() {
        for g in [0, 1, 25, 26, 40] {
            assert_eq!(parse_generator_name(&generator_name(g)), Some(g));
        }
        assert_eq!(generator_name(2), "c");
        assert_eq!(parse_generator_name("g5"), None);
    }

    #[test]
    fn term_display() {
        assert_eq!(format!("{}", GroupRingTerm::one()), "+1");
        let w = Word::from_letters([(0, 1), (1, -1)]).unwrap();
        assert_eq!(format!("{}", GroupRingTerm::new(-1, w)), "-ab^-1");
    }

    #[test]
    fn corner_labels_per_crossing() {
        let d = diagram(TREFOIL);
        let d1 = build_d1(&d);
        for c in d.crossings() {
            let x = Word::generator(c.over_arc);
            let mut labels: Vec<_> = d1.crossing(c.id).to_vec();
            let mut expected = alloc::vec![
                GroupRingTerm::new(-1, x.clone()),
                GroupRingTerm::new(1, Word::empty()),
                GroupRingTerm::new(1, x),
                GroupRingTerm::new(-1, Word::empty()),
            ];
            labels.sort_by_key(|t| (t.sign, t.word.len()));
            expected.sort_by_key(|t| (t.sign, t.word.len()));
            assert_eq!(labels, expected);
        }
    }

    #[test]
    fn unbounded_region_label_is_trivial() {
        let d = diagram(TREFOIL);
        let d2 = build_d2(&d);
        assert!(d2.label(d.unbounded_region()).is_empty());
    }

    #[test]
    fn trefoil_graph_counts() {
        let d = diagram(TREFOIL);
        let g = build_dehn_graph(&d, &build_d1(&d), &build_d2(&d));
        assert_eq!(g.vertices().len(), 8);
        let corner_edges = g.edges().iter().filter(|e| matches!(e.origin, EdgeOrigin::Corner(_))).count();
        assert_eq!(corner_edges, 12 - d.regions()[d.unbounded_region()].corners.len());
        assert_eq!(corner_edges, 9);
        assert_eq!(g.edges().len(), 17);
        for e in g.edges() {
            assert_eq!(g.vertices()[e.from].index, g.vertices()[e.to].index + 1);
        }
    }

    #[test]
    fn kink_has_parallel_edges() {
        let d = diagram("[[1,2,2,1]]");
        // The two-corner face is the default unbounded region; move it inside.
        let two = d.regions().iter().find(|r| r.corners.len() == 2).unwrap().id;
        let other = d.regions().iter().find(|r| r.id != two).unwrap().id;
        let d = d.with_unbounded(other).unwrap();
        let labels = build_d2(&d);
        // The sign of each exponent sum follows the strand direction, which
        // depends on which way the strand runs around the loop.
        let mut sums: Vec<i64> = d.bounded_regions().map(|r| labels.label(r).exponent_sum().abs()).collect();
        sums.sort();
        assert_eq!(sums, [1, 2]);
        let inner = d.bounded_regions().find(|&r| r != two).unwrap();
        assert_eq!(labels.label(inner).exponent_sum().abs(), 2);
        let g = build_dehn_graph(&d, &build_d1(&d), &labels);
        assert_eq!(g.vertices().len(), 4);
        let q = g.vertices().iter().find(|v| v.kind == VertexKind::Region(two)).unwrap().id;
        assert_eq!(g.edges().iter().filter(|e| e.from == 0 && e.to == q).count(), 2);
    }

    #[test]
    fn dot_output() {
        let d = diagram(TREFOIL);
        let g = build_dehn_graph(&d, &build_d1(&d), &build_d2(&d));
        let dot = g.export_dot();
        assert_eq!(dot.matches("shape=").count(), 8);
        assert_eq!(dot.matches("->").count(), 17);
        assert!(dot.contains("shape=doublecircle"));
        assert!(dot.contains("[label=\"+1\"]"));
    }

    #[test]
    fn from_parts_validates() {
        let d = diagram(TREFOIL);
        let g = build_dehn_graph(&d, &build_d1(&d), &build_d2(&d));
        let again = DehnGraph::from_parts(g.vertices().to_vec(), g.edges().to_vec(), g.generators()).unwrap();
        assert_eq!(again, g);
        let mut edges = g.edges().to_vec();
        edges[0].to = 0;
        assert_eq!(DehnGraph::from_parts(g.vertices().to_vec(), edges, 3), Err(GraphError::BadEdge(0)));
    }
}
