//! The field Q(t) of rational functions.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraError, Polynomial, Rational};

/// An element of Q(t), kept in canonical form: numerator and denominator
/// coprime, denominator monic, zero stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

impl RatFunc {
    /// Builds `num/den` in canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = if den.is_constant() { Polynomial::one() } else { Polynomial::gcd(&num, &den) };
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if !den.is_monic() {
            let inv = den.leading().expect("nonzero").recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RatFunc { num: p, den: Polynomial::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Polynomial::from_ints(&[c]))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_poly(Polynomial::t())
    }

    /// `t^e` for any integer exponent.
    pub fn t_pow(e: i64) -> Self {
        let m = Polynomial::monomial(Rational::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_poly(m)
        } else {
            RatFunc { num: Polynomial::one(), den: m }
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Re-run canonicalization. A no-op on every value this type can hold.
    pub fn canonicalize(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// True iff this is a constant with an integer value.
    pub fn is_integer_constant(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_integer())
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).map_err(|_| AlgebraError::ExponentOverflow)?;
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Quotient-rule derivative d/dt.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        Self::canonical(num, den)
    }

    /// `t * f'/f`, the logarithmic derivative scaled by `t`.
    pub fn t_log_derivative(&self) -> Result<Self, AlgebraError> {
        Ok(&Self::t() * &self.derivative().checked_div(self)?)
    }

    /// Evaluate at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Split off the largest power of `t` from numerator and denominator:
    /// returns `(m, f)` with `self = t^m * f` and `f` having numerator and
    /// denominator with nonzero constant terms.
    pub fn strip_t_power(&self) -> (i64, RatFunc) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let a = self.num.low_degree();
        let b = self.den.low_degree();
        let f = RatFunc { num: self.num.shift_down(a), den: self.den.shift_down(b) };
        (a as i64 - b as i64, f)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Polynomial::zero(), den: Polynomial::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
}

impl From<Polynomial> for RatFunc {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<BigInt> for RatFunc {
    fn from(c: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(c))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num + &rhs.num, self.den.clone());
        }
        // Over the lcm of the denominators.
        let g = Polynomial::gcd(&self.den, &rhs.den);
        let (a, b) = if g.is_one() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (rhs.den.div_exact(&g).expect("gcd divides"), self.den.div_exact(&g).expect("gcd divides"))
        };
        let num = &(&self.num * &a) + &(&rhs.num * &b);
        RatFunc::canonical(num, &self.den * &a)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: Polynomial::one() };
        }
        RatFunc::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi_term = |p: &Polynomial| p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if multi_term(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if multi_term(&self.den) || !self.den.is_monic() {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
