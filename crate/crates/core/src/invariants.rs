//! Propagators, Reidemeister torsion and the defect invariant.
//!
//! For an acyclic complex `C_2 -> C_1 -> C_0` a propagator is a pair
//! `g2: C_1 -> C_2`, `g1: C_0 -> C_1` with
//!
//! ```text
//! g2 d2 = 1,   d2 g2 + g1 d1 = 1,   d1 g1 = 1.
//! ```
//!
//! The torsion is `det [d2 | g1]`, the determinant of `d + g` from the even
//! chains to the odd chains. It is well defined up to `±t^m`.
//!
//! The defect sums, over graph edges with nontrivial word, the homology
//! class of the word times `rho(label)` composed with the propagator entry
//! that runs back along the edge. Edges leaving an index-1 vertex enter with
//! a minus sign, so that the sum is the graded trace of `g ∘ t d/dt (d)`; that
//! graded trace is exactly `t d/dt log Tor`.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraError, FieldMatrix, RatFunc};
use crate::dehngraph::{DehnGraph, GraphEdge};
use crate::mscomplex::{check_exactness, ChainComplex, Exactness, ExactnessWitness, RepKind, Representation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("chain complex is not acyclic")]
    NotExact(ExactnessWitness),
    #[error("propagator identities fail")]
    PropagatorIdentity,
    #[error("the defect is only defined here for one-dimensional abelian representations (got dimension {dim})")]
    UnsupportedRepresentation { dim: usize },
    #[error("complex and graph do not match")]
    Mismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A chain contraction of an acyclic three-term complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Propagator {
    /// `C_1 -> C_2`.
    pub g2: FieldMatrix,
    /// `C_0 -> C_1`.
    pub g1: FieldMatrix,
    /// Coordinates of C_1 spanning the complement of `im d2`.
    pub complement: Vec<usize>,
}

/// Result of checking the three propagator identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropagatorIdentities {
    pub top: bool,
    pub middle: bool,
    pub bottom: bool,
}

impl PropagatorIdentities {
    pub fn all(&self) -> bool {
        self.top && self.middle && self.bottom
    }
}

impl Propagator {
    pub fn identities(&self, cx: &ChainComplex) -> Result<PropagatorIdentities, AlgebraError> {
        let top = self.g2.checked_mul(&cx.d2)?.is_identity();
        let middle = cx.d2.checked_mul(&self.g2)?.checked_add(&self.g1.checked_mul(&cx.d1)?)?.is_identity();
        let bottom = cx.d1.checked_mul(&self.g1)?.is_identity();
        Ok(PropagatorIdentities { top, middle, bottom })
    }
}

/// Builds a propagator by choosing coordinate vectors of C_1 that complement
/// `im d2`, scanning candidates in ascending order or, with a seed, in a
/// seeded random order; the first candidate that enlarges the span wins.
///
/// `g1` inverts `d1` on the chosen span and `g2` inverts `d2` after
/// projecting onto `im d2` along it.
pub fn build_propagator(cx: &ChainComplex, pivot_seed: Option<u64>) -> Result<Propagator, InvariantError> {
    if let Exactness::NotExact(w) = check_exactness(cx) {
        return Err(InvariantError::NotExact(w));
    }
    let (c2, c1, c0) = (cx.c2_dim(), cx.c1_dim(), cx.c0_dim());
    let mut order: Vec<usize> = (0..c1).collect();
    if let Some(seed) = pivot_seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    // Greedy selection in `order` picks exactly the pivot columns of the
    // reduced row echelon form of [d2 | e_order] past the first c2.
    let rref = cx.d2.hstack(&unit_columns(c1, &order))?.rref();
    if rref.pivots.len() != c1 || rref.pivots[..c2].iter().enumerate().any(|(i, &p)| i != p) {
        return Err(InvariantError::PropagatorIdentity);
    }
    let complement: Vec<usize> = rref.pivots[c2..].iter().map(|&p| order[p - c2]).collect();
    if complement.len() != c0 {
        return Err(InvariantError::PropagatorIdentity);
    }
    let basis = cx.d2.hstack(&unit_columns(c1, &complement))?;

    let e = unit_columns(c1, &complement);
    let g1 = e.checked_mul(&cx.d1.checked_mul(&e)?.inverse()?)?;
    let g2 = basis.inverse()?.block(0, 0, c2, c1);
    let g = Propagator { g2, g1, complement };
    if !g.identities(cx)?.all() {
        return Err(InvariantError::PropagatorIdentity);
    }
    Ok(g)
}

fn unit_columns(n: usize, idx: &[usize]) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(n, idx.len());
    for (col, &row) in idx.iter().enumerate() {
        m[(row, col)] = RatFunc::one();
    }
    m
}

/// Torsion `raw = sign * t^power * normalized`, where `normalized` has
/// numerator and denominator with nonzero constant terms and a positive
/// numerator constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionValue {
    pub raw: RatFunc,
    pub normalized: RatFunc,
    pub unit_sign: i8,
    pub unit_power: i64,
}

impl TorsionValue {
    pub fn from_raw(raw: RatFunc) -> Self {
        let (power, stripped) = raw.strip_t_power();
        let negative = stripped.num().coeff(0).is_negative();
        let normalized = if negative { -stripped } else { stripped };
        TorsionValue { raw, normalized, unit_sign: if negative { -1 } else { 1 }, unit_power: power }
    }
}

/// `det [d2 | g1]`.
pub fn torsion(cx: &ChainComplex, g: &Propagator) -> Result<TorsionValue, InvariantError> {
    let m = cx.d2.hstack(&g.g1)?;
    Ok(TorsionValue::from_raw(m.det()?))
}

/// True iff `ratio = ±t^m` for some integer `m`.
pub fn is_unit(ratio: &RatFunc) -> bool {
    let (_, f) = ratio.strip_t_power();
    f.as_constant().is_some_and(|c| c.abs().is_one())
}

pub fn torsion_equal_up_to_units(a: &TorsionValue, b: &TorsionValue) -> bool {
    match a.raw.checked_div(&b.raw) {
        Ok(ratio) => is_unit(&ratio),
        Err(_) => a.raw.is_zero(),
    }
}

/// A representative of the defect in Q(t)/Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectValue {
    pub representative: RatFunc,
}

/// One edge's contribution to the defect sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectTerm {
    /// Index into `DehnGraph::edges`.
    pub edge: usize,
    pub value: RatFunc,
}

/// Nonzero per-edge contributions, in graph edge order.
pub fn defect_terms(
    graph: &DehnGraph,
    cx: &ChainComplex,
    g: &Propagator,
    rep: &Representation,
) -> Result<Vec<DefectTerm>, InvariantError> {
    if rep.kind() != RepKind::Abelian || rep.dim() != 1 {
        return Err(InvariantError::UnsupportedRepresentation { dim: rep.dim() });
    }
    let mut terms = Vec::new();
    for (i, e) in graph.edges().iter().enumerate() {
        if e.label.word.is_empty() {
            continue;
        }
        let class = e.label.word.exponent_sum();
        if class == 0 {
            continue;
        }
        let entry = propagator_entry(cx, g, e)?;
        if entry.is_zero() {
            continue;
        }
        let sign = if graph.vertices()[e.from].index == 2 { 1 } else { -1 };
        let rho = rep.eval_term(&e.label)[(0, 0)].clone();
        let value = &(&RatFunc::from_int(sign * class) * &rho) * &entry;
        terms.push(DefectTerm { edge: i, value });
    }
    Ok(terms)
}

/// The propagator entry running back along `e`, from the block of `e.to`
/// to the block of `e.from`.
fn propagator_entry(cx: &ChainComplex, g: &Propagator, e: &GraphEdge) -> Result<RatFunc, InvariantError> {
    let (from_deg, p) = cx.basis.block_of_vertex(e.from).ok_or(InvariantError::Mismatch)?;
    let (to_deg, q) = cx.basis.block_of_vertex(e.to).ok_or(InvariantError::Mismatch)?;
    match (from_deg, to_deg) {
        (2, 1) => Ok(g.g2[(p, q)].clone()),
        (1, 0) => Ok(g.g1[(p, q)].clone()),
        _ => Err(InvariantError::Mismatch),
    }
}

pub fn defect(
    graph: &DehnGraph,
    cx: &ChainComplex,
    g: &Propagator,
    rep: &Representation,
) -> Result<DefectValue, InvariantError> {
    let terms = defect_terms(graph, cx, g, rep)?;
    let representative = terms.iter().fold(RatFunc::zero(), |acc, t| &acc + &t.value);
    Ok(DefectValue { representative })
}

/// Equality in Q(t)/Z.
pub fn defect_equal_mod_z(a: &DefectValue, b: &DefectValue) -> bool {
    (&a.representative - &b.representative).is_integer_constant()
}

/// Checks `d ≡ t d/dt log Tor (mod Z)`. Replacing `Tor` by `±t^m Tor`
/// shifts the right-hand side by the integer `m`, so the check does not
/// depend on the representative.
pub fn check_lescop_relation(tor: &TorsionValue, d: &DefectValue) -> bool {
    match tor.raw.t_log_derivative() {
        Ok(rhs) => defect_equal_mod_z(d, &DefectValue { representative: rhs }),
        Err(_) => false,
    }
}
