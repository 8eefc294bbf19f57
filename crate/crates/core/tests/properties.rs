//! Property tests for the exact algebra and the PD layer.

mod common;

use common::*;
use dehn_core::algebra::AlgebraError;
use dehn_core::dehngraph::{build_d1, build_d2, build_dehn_graph};
use dehn_core::diagram::parse_pd;
use dehn_core::{FieldMatrix, KnotDiagram, PdCode, Polynomial, RatFunc};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| Polynomial::from_ints(&c))
}

fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), small_poly()).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

fn small_matrix(max: usize) -> impl Strategy<Value = FieldMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(small_ratfunc(), r * c).prop_map(move |e| FieldMatrix::from_entries(r, c, e).unwrap())
    })
}

fn square_matrix(max: usize) -> impl Strategy<Value = FieldMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(small_ratfunc(), n * n).prop_map(move |e| FieldMatrix::from_entries(n, n, e).unwrap())
    })
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &FieldMatrix) -> RatFunc {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = RatFunc::zero();
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = m.select_rows(&rows).select_cols(&cols);
        let term = &m[(0, j)] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ratfunc_field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RatFunc::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RatFunc::one());
        } else {
            prop_assert_eq!(a.inv(), Err(AlgebraError::DivisionByZero));
        }
    }

    #[test]
    fn canonical_form_is_stable(a in small_ratfunc()) {
        prop_assert_eq!(a.canonicalize(), a.clone());
        prop_assert!(a.den().is_monic());
        prop_assert!(Polynomial::gcd(a.num(), a.den()).is_one() || a.is_zero());
        let rebuilt = RatFunc::new(a.num() * &Polynomial::from_ints(&[2, 1]), a.den() * &Polynomial::from_ints(&[2, 1])).unwrap();
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn gcd_divides_both(a in small_poly(), b in small_poly()) {
        let g = Polynomial::gcd(&a, &b);
        if a.is_zero() && b.is_zero() {
            prop_assert!(g.is_zero());
        } else {
            prop_assert!(g.is_monic());
            prop_assert!(a.div_exact(&g).is_some());
            prop_assert!(b.div_exact(&g).is_some());
        }
    }

    #[test]
    fn det_agrees_with_cofactor_expansion(m in square_matrix(3)) {
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn rank_of_transpose(m in small_matrix(5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn inverse_when_nonsingular(m in square_matrix(3)) {
        match m.inverse() {
            Ok(inv) => {
                prop_assert!((&m * &inv).is_identity());
                prop_assert!(!m.det().unwrap().is_zero());
            }
            Err(e) => {
                prop_assert_eq!(e, AlgebraError::Singular);
                prop_assert!(m.det().unwrap().is_zero());
            }
        }
    }

    #[test]
    fn pd_display_reparses(i in 0..CORPUS.len(), mirror in any::<bool>()) {
        let code = pd(CORPUS[i].pd);
        let code = if mirror { code.reflected() } else { code };
        prop_assert_eq!(parse_pd(&code.to_string()).unwrap(), code);
    }

    #[test]
    fn relabeling_preserves_structure(i in 0..CORPUS.len(), offset in 1u32..1000, stride in 1u32..5) {
        let code = pd(CORPUS[i].pd);
        let relabeled = PdCode::new(code.crossings().iter().map(|q| q.map(|l| offset + stride * l)).collect()).unwrap();
        let a = KnotDiagram::build(&code).unwrap();
        let b = KnotDiagram::build(&relabeled).unwrap();
        prop_assert_eq!(a.regions().len(), b.regions().len());
        prop_assert_eq!(a.arcs().len(), b.arcs().len());
        let signs = |d: &KnotDiagram| d.crossings().iter().map(|c| c.sign).collect::<Vec<_>>();
        prop_assert_eq!(signs(&a), signs(&b));
    }

    #[test]
    fn graph_shape(i in 0..CORPUS.len(), pick in any::<usize>()) {
        let d = KnotDiagram::build(&pd(CORPUS[i].pd)).unwrap();
        let d = d.with_unbounded(pick % d.regions().len()).unwrap();
        let g = build_dehn_graph(&d, &build_d1(&d), &build_d2(&d));
        let k = d.crossing_count();
        let outer_corners = d.regions()[d.unbounded_region()].corners.len();
        prop_assert_eq!(g.vertices().len(), 2 * k + 2);
        prop_assert_eq!(g.edges().len(), 4 * k - outer_corners + 2 * (k + 1));
        for e in g.edges() {
            prop_assert_eq!(g.vertices()[e.from].index, g.vertices()[e.to].index + 1);
        }
    }
}
