//! Alexander polynomial from Fox calculus on the Wirtinger presentation.
//!
//! This path shares nothing with the chain-complex computation beyond the
//! presentation itself: derivatives are taken letter by letter, entries are
//! Laurent polynomials cleared to ordinary polynomials, and the determinant
//! is fraction-free Bareiss elimination over Q[t].

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Polynomial, RatFunc, Rational};
use crate::dehngraph::Word;
use crate::diagram::WirtingerPresentation;
use crate::invariants::{is_unit, TorsionValue};

/// Alexander polynomial normalized to integer coefficients with content 1,
/// nonzero constant term and positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPolynomial {
    poly: Polynomial,
}

impl AlexanderPolynomial {
    pub fn from_poly(p: &Polynomial) -> Self {
        if p.is_zero() {
            return AlexanderPolynomial { poly: Polynomial::zero() };
        }
        AlexanderPolynomial { poly: p.shift_down(p.low_degree()).primitive() }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// Integer coefficients, constant term first.
    pub fn coefficients(&self) -> Vec<num_bigint::BigInt> {
        self.poly.coeffs().iter().map(|c| c.to_integer()).collect()
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Sparse Laurent polynomial in t as (exponent, coefficient) pairs.
#[derive(Clone, Debug, Default)]
struct Laurent(Vec<(i64, i64)>);

impl Laurent {
    fn add(&mut self, exp: i64, c: i64) {
        match self.0.iter_mut().find(|(e, _)| *e == exp) {
            Some(slot) => slot.1 += c,
            None => self.0.push((exp, c)),
        }
    }

    fn min_exp(&self) -> Option<i64> {
        self.0.iter().filter(|(_, c)| *c != 0).map(|(e, _)| *e).min()
    }

    fn to_poly_shifted(&self, shift: i64) -> Polynomial {
        let mut out = Polynomial::zero();
        for &(e, c) in &self.0 {
            if c != 0 {
                let deg = usize::try_from(e - shift).expect("shift below minimum exponent");
                out = &out + &Polynomial::monomial(Rational::from_integer(c.into()), deg);
            }
        }
        out
    }
}

/// Abelianized Fox derivative `∂w/∂x_j` as a Laurent polynomial.
///
/// `∂(x_i^{+1})/∂x_i = 1` and `∂(x_i^{-1})/∂x_i = -x_i^{-1}`; a prefix `u`
/// contributes the factor `t^{e(u)}`.
fn fox_derivative(w: &Word, j: usize) -> Laurent {
    let mut out = Laurent::default();
    let mut prefix = 0i64;
    for &(g, e) in w.letters() {
        if g == j {
            if e > 0 {
                out.add(prefix, 1);
            } else {
                out.add(prefix - 1, -1);
            }
        }
        prefix += i64::from(e);
    }
    out
}

/// Alexander matrix rows cleared of negative powers: each row multiplied by
/// the power of t making its lowest exponent zero.
fn alexander_matrix(w: &WirtingerPresentation) -> Vec<Vec<Polynomial>> {
    w.relations
        .iter()
        .map(|r| {
            let row: Vec<Laurent> = (0..w.generators).map(|j| fox_derivative(r, j)).collect();
            let shift = row.iter().filter_map(Laurent::min_exp).min().unwrap_or(0);
            row.iter().map(|l| l.to_poly_shifted(shift)).collect()
        })
        .collect()
}

/// Bareiss fraction-free determinant.
pub(crate) fn bareiss_det(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut sign = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

fn minor(m: &[Vec<Polynomial>], skip_row: usize, skip_col: usize) -> Vec<Vec<Polynomial>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip_row)
        .map(|(_, row)| row.iter().enumerate().filter(|&(j, _)| j != skip_col).map(|(_, p)| p.clone()).collect())
        .collect()
}

/// Alexander polynomial of the knot presented by `w`.
///
/// One generator column and one relation row are deleted; any single
/// relation of a Wirtinger presentation is redundant, but if the chosen
/// minor vanishes, the gcd over every row deletion is used instead.
pub fn fox_alexander(w: &WirtingerPresentation) -> AlexanderPolynomial {
    if w.generators <= 1 || w.relations.is_empty() {
        return AlexanderPolynomial::from_poly(&Polynomial::one());
    }
    let m = alexander_matrix(w);
    let last = m.len() - 1;
    let det = bareiss_det(minor(&m, last, 0));
    if !det.is_zero() {
        return AlexanderPolynomial::from_poly(&det);
    }
    let g = (0..m.len()).fold(Polynomial::zero(), |acc, r| Polynomial::gcd(&acc, &bareiss_det(minor(&m, r, 0))));
    AlexanderPolynomial::from_poly(&g)
}

/// Checks `Tor · (t - 1) = ±t^m Δ`.
pub fn milnor_check(tor: &TorsionValue, alexander: &AlexanderPolynomial) -> bool {
    if alexander.poly().is_zero() {
        return false;
    }
    let lhs = &tor.raw * &RatFunc::from_poly(Polynomial::from_ints(&[-1, 1]));
    match lhs.checked_div(&RatFunc::from_poly(alexander.poly().clone())) {
        Ok(ratio) => is_unit(&ratio),
        Err(_) => false,
    }
}
