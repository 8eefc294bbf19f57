//! The Morse-Smale chain complex `C_2 -> C_1 -> C_0` of a Dehn graph with
//! coefficients twisted by a representation of the knot group.

use alloc::vec::Vec;

use crate::algebra::{FieldMatrix, RatFunc};
use crate::dehngraph::{DehnGraph, GroupRingTerm, VertexKind, Word};
use crate::diagram::WirtingerPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    /// Every generator acts as multiplication by `t` on Q(t).
    Abelian,
    /// Arbitrary invertible matrices over Q(t).
    Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("expected images for {expected} generators, got {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("image of generator {0} is not a square matrix of the common dimension")]
    BadShape(usize),
    #[error("image of generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("Wirtinger relation {0} is not satisfied")]
    Relation(usize),
    #[error("representation dimension must be positive")]
    ZeroDimension,
}

/// A representation of the knot group on `Q(t)^dim`.
///
/// A word is evaluated with its letters composed right to left, matching the
/// composition order words are written in: `rho(x * w) = rho(w) rho(x)`.
#[derive(Clone, Debug)]
pub struct Representation {
    kind: RepKind,
    dim: usize,
    images: Vec<FieldMatrix>,
    inverses: Vec<FieldMatrix>,
}

impl Representation {
    /// The maximal abelian representation, every arc to `t`.
    pub fn abelian(w: &WirtingerPresentation) -> Self {
        let t = FieldMatrix::scalar(RatFunc::t());
        let ti = FieldMatrix::scalar(RatFunc::t_pow(-1));
        Representation {
            kind: RepKind::Abelian,
            dim: 1,
            images: alloc::vec![t; w.generators],
            inverses: alloc::vec![ti; w.generators],
        }
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(w: &WirtingerPresentation) -> Self {
        Self::matrix(w, alloc::vec![FieldMatrix::identity(1); w.generators]).expect("trivial representation is valid")
    }

    /// Validates `images` (one per generator) against the relations of `w`.
    pub fn matrix(w: &WirtingerPresentation, images: Vec<FieldMatrix>) -> Result<Self, RepError> {
        if images.len() != w.generators {
            return Err(RepError::GeneratorCount { expected: w.generators, found: images.len() });
        }
        let dim = images.first().map_or(1, FieldMatrix::rows);
        if dim == 0 {
            return Err(RepError::ZeroDimension);
        }
        let mut inverses = Vec::with_capacity(images.len());
        for (g, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(RepError::BadShape(g));
            }
            inverses.push(m.inverse().map_err(|_| RepError::NotInvertible(g))?);
        }
        let rep = Representation { kind: RepKind::Matrix, dim, images, inverses };
        for (i, r) in w.relations.iter().enumerate() {
            if !rep.eval_word(r).is_identity() {
                return Err(RepError::Relation(i));
            }
        }
        Ok(rep)
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, g: usize) -> &FieldMatrix {
        &self.images[g]
    }

    pub fn eval_word(&self, w: &Word) -> FieldMatrix {
        if self.kind == RepKind::Abelian {
            return FieldMatrix::scalar(RatFunc::t_pow(w.exponent_sum()));
        }
        let mut acc = FieldMatrix::identity(self.dim);
        for &(g, e) in w.letters() {
            let m = if e > 0 { &self.images[g] } else { &self.inverses[g] };
            acc = m * &acc;
        }
        acc
    }

    /// `sign * rho(word)`.
    pub fn eval_term(&self, term: &GroupRingTerm) -> FieldMatrix {
        let m = self.eval_word(&term.word);
        if term.sign < 0 {
            -&m
        } else {
            m
        }
    }
}

/// Which Dehn-graph vertex each basis block stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisTable {
    /// Graph vertex ids of the blocks of C_2, C_1 and C_0, in block order.
    pub c2: Vec<usize>,
    pub c1: Vec<usize>,
    pub c0: Vec<usize>,
    /// Diagram crossing / region ids of the C_2 / C_1 blocks.
    pub crossings: Vec<usize>,
    pub regions: Vec<usize>,
}

impl BasisTable {
    pub fn block_of_vertex(&self, v: usize) -> Option<(u8, usize)> {
        if let Some(i) = self.c2.iter().position(|&u| u == v) {
            return Some((2, i));
        }
        if let Some(i) = self.c1.iter().position(|&u| u == v) {
            return Some((1, i));
        }
        self.c0.iter().position(|&u| u == v).map(|i| (0, i))
    }
}

/// `0 -> C_2 --d2--> C_1 --d1--> C_0 -> 0`; matrices act on coordinate
/// columns, so `d2` is `dim C_1 x dim C_2`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dim: usize,
    pub d2: FieldMatrix,
    pub d1: FieldMatrix,
    pub basis: BasisTable,
}

impl ChainComplex {
    pub fn c2_dim(&self) -> usize {
        self.d2.cols()
    }

    pub fn c1_dim(&self) -> usize {
        self.d2.rows()
    }

    pub fn c0_dim(&self) -> usize {
        self.d1.rows()
    }

    /// `d1 * d2`, which must vanish.
    pub fn boundary_squared(&self) -> FieldMatrix {
        &self.d1 * &self.d2
    }
}

/// Boundary blocks are sums of `rho(label)` over the edges between two
/// vertices; C_2 is ordered by crossing, C_1 by bounded region.
pub fn build_complex(graph: &DehnGraph, rep: &Representation) -> ChainComplex {
    let n = rep.dim();
    let mut basis =
        BasisTable { c2: Vec::new(), c1: Vec::new(), c0: Vec::new(), crossings: Vec::new(), regions: Vec::new() };
    let mut block = alloc::vec![0usize; graph.vertices().len()];
    for v in graph.vertices() {
        match v.kind {
            VertexKind::Crossing(c) => {
                block[v.id] = basis.c2.len();
                basis.c2.push(v.id);
                basis.crossings.push(c);
            }
            VertexKind::Region(r) => {
                block[v.id] = basis.c1.len();
                basis.c1.push(v.id);
                basis.regions.push(r);
            }
            VertexKind::Basepoint => {
                block[v.id] = basis.c0.len();
                basis.c0.push(v.id);
            }
        }
    }
    let mut d2 = FieldMatrix::zeros(basis.c1.len() * n, basis.c2.len() * n);
    let mut d1 = FieldMatrix::zeros(basis.c0.len() * n, basis.c1.len() * n);
    for e in graph.edges() {
        let m = rep.eval_term(&e.label);
        let (row, col) = (block[e.to] * n, block[e.from] * n);
        match graph.vertices()[e.from].index {
            2 => d2.add_block(row, col, &m),
            1 => d1.add_block(row, col, &m),
            _ => unreachable!("edges leave index 2 or 1 vertices"),
        }
    }
    ChainComplex { dim: n, d2, d1, basis }
}

/// Which rank condition failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessWitness {
    pub rank_d2: usize,
    pub rank_d1: usize,
    pub c2_dim: usize,
    pub c1_dim: usize,
    pub c0_dim: usize,
    pub boundary_squared_vanishes: bool,
}

impl ExactnessWitness {
    /// Nonzero homology in degree 2 (`d2` not injective).
    pub fn h2_nonzero(&self) -> bool {
        self.rank_d2 != self.c2_dim
    }

    /// Nonzero homology in degree 0 (`d1` not surjective).
    pub fn h0_nonzero(&self) -> bool {
        self.rank_d1 != self.c0_dim
    }

    /// Nonzero homology in degree 1.
    pub fn h1_nonzero(&self) -> bool {
        self.c1_dim != self.rank_d2 + self.rank_d1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    NotExact(ExactnessWitness),
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact)
    }
}

/// Ranks and dimensions of the complex.
pub fn witness(cx: &ChainComplex) -> ExactnessWitness {
    ExactnessWitness {
        rank_d2: cx.d2.rank(),
        rank_d1: cx.d1.rank(),
        c2_dim: cx.c2_dim(),
        c1_dim: cx.c1_dim(),
        c0_dim: cx.c0_dim(),
        boundary_squared_vanishes: cx.boundary_squared().is_zero(),
    }
}

impl ExactnessWitness {
    pub fn is_exact(&self) -> bool {
        self.boundary_squared_vanishes && !self.h2_nonzero() && !self.h0_nonzero() && !self.h1_nonzero()
    }
}

pub fn check_exactness(cx: &ChainComplex) -> Exactness {
    let w = witness(cx);
    if w.is_exact() {
        Exactness::Exact
    } else {
        Exactness::NotExact(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dehngraph::{build_d1, build_d2, build_dehn_graph};
    use crate::diagram::{parse_pd, KnotDiagram};
    use num_traits::Zero;

    fn complex(s: &str, trivial: bool) -> ChainComplex {
        let d = KnotDiagram::build(&parse_pd(s).unwrap()).unwrap();
        let g = build_dehn_graph(&d, &build_d1(&d), &build_d2(&d));
        let w = d.wirtinger();
        let rep = if trivial { Representation::trivial(&w) } else { Representation::abelian(&w) };
        build_complex(&g, &rep)
    }

    #[test]
    fn eval_signed_terms() {
        let w = WirtingerPresentation { generators: 3, relations: Vec::new() };
        let rho = Representation::abelian(&w);
        let neg_a = GroupRingTerm::new(-1, Word::generator(0));
        assert_eq!(rho.eval_term(&neg_a), FieldMatrix::scalar(-RatFunc::t()));
        assert!(rho.eval_term(&GroupRingTerm::one()).is_identity());
        let w2 = Word::generator(0).mul(&Word::generator(2));
        assert_eq!(rho.eval_term(&GroupRingTerm::new(-1, w2)), FieldMatrix::scalar(-RatFunc::t_pow(2)));
    }

    #[test]
    fn trefoil_boundary_squares_to_zero() {
        let cx = complex("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]", false);
        assert_eq!((cx.c2_dim(), cx.c1_dim(), cx.c0_dim()), (3, 4, 1));
        assert!(cx.boundary_squared().is_zero());
        assert!(check_exactness(&cx).is_exact());
    }

    #[test]
    fn kink_is_exact() {
        assert!(check_exactness(&complex("[[1,2,2,1]]", false)).is_exact());
    }

    #[test]
    fn trivial_rep_is_not_exact() {
        let cx = complex("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]", true);
        assert!(cx.d1.is_zero());
        match check_exactness(&cx) {
            Exactness::NotExact(w) => {
                assert_eq!(w.rank_d1, 0);
                assert!(w.h0_nonzero());
            }
            Exactness::Exact => panic!("trivial coefficients give nonzero homology"),
        }
    }

    #[test]
    fn representation_validation() {
        let d = KnotDiagram::build(&parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap()).unwrap();
        let w = d.wirtinger();
        assert_eq!(
            Representation::matrix(&w, alloc::vec![FieldMatrix::identity(1); 2]).unwrap_err(),
            RepError::GeneratorCount { expected: 3, found: 2 }
        );
        let mut imgs = alloc::vec![FieldMatrix::scalar(RatFunc::t()); 3];
        imgs[1] = FieldMatrix::scalar(RatFunc::zero());
        assert_eq!(Representation::matrix(&w, imgs).unwrap_err(), RepError::NotInvertible(1));
        let mut imgs = alloc::vec![FieldMatrix::scalar(RatFunc::t()); 3];
        imgs[2] = FieldMatrix::scalar(RatFunc::from_int(2));
        assert!(matches!(Representation::matrix(&w, imgs), Err(RepError::Relation(_))));
        let ok = Representation::matrix(&w, alloc::vec![FieldMatrix::scalar(RatFunc::t()); 3]).unwrap();
        assert_eq!(ok.dim(), 1);
    }
}
