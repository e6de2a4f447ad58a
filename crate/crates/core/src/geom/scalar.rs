//! Field elements used by every geometric routine.
//!
//! Two modes exist: exact [`Rational`] (arbitrary-precision fractions, always
//! reduced) and binary `f64`. All geometry is generic over [`Scalar`], so the
//! mode is fixed by the type and two modes can never meet in one expression.
//! Conversions between them are explicit ([`Scalar::to_f64`],
//! [`Scalar::from_f64_exact`]).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Exact rational number; `num_rational` keeps it in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Default absolute tolerance for float degeneracy predicates.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Which arithmetic a scalar type performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Exact,
    Float,
}

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static
{
    const MODE: ScalarMode;

    fn from_i64(v: i64) -> Self;

    /// Exact conversion of a finite double; the rational carries the full
    /// binary expansion.
    fn from_f64_exact(v: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Zero test used by every degeneracy predicate: exact zero for
    /// rationals, `|x| < eps` for floats.
    fn is_negligible(&self, eps: f64) -> bool;

    /// Sign with the same tolerance as [`Scalar::is_negligible`].
    fn sign(&self, eps: f64) -> i8 {
        if self.is_negligible(eps) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn is_exact() -> bool {
        Self::MODE == ScalarMode::Exact
    }
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64_exact(v: f64) -> Option<Self> {
        Rational::from_float(v)
    }

    fn to_f64(&self) -> f64 {
        // `ToPrimitive` on big ratios rounds correctly and only fails for
        // values outside the double range.
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn is_negligible(&self, _eps: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64_exact(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, eps: f64) -> bool {
        self.abs() < eps
    }
}

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-1.25"` into an exact
/// rational. Returns `None` for anything else, including a zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str_radix(p.trim(), 10).ok()?;
        let q = BigInt::from_str_radix(q.trim(), 10).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Ok(i) = BigInt::from_str_radix(s, 10) {
        return Some(Rational::from_integer(i));
    }
    // plain decimal: sign, digits, one dot, digits
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str_radix(&digits, 10).ok()?;
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let r = Rational::new(num, den);
    Some(if neg { -r } else { r })
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn from_usize<S: Scalar>(n: usize) -> S {
    S::from_i64(i64::from_usize(n).expect("polygon size fits in i64"))
}
