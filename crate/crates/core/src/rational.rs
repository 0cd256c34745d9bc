//! Exact number types shared by every module, plus certified decimal
//! enclosures used whenever an irrational quantity has to be compared with a
//! rational one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Exact reduced fraction with positive denominator.
pub type Rational = BigRational;

/// Precision used when √2 has to be rendered, in decimal digits.
pub const DEFAULT_DIGITS: u32 = 50;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

/// `num/den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_int(v: &Integer) -> Rational {
    Rational::from_integer(v.clone())
}

/// Parses `"num/den"` or a bare integer `"num"`.
///
/// The result is always reduced; the input does not have to be.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<Integer>()
            .map_err(|e| Error::Parse(format!("invalid rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (parse_int(n)?, parse_int(d)?);
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Canonical interchange form: `"num/den"`, or `"num"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Nearest `f64`; saturates to ±inf for values outside the `f64` range.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn pow10(digits: u32) -> Integer {
    num_traits::pow(Integer::from(10), digits as usize)
}

/// A closed interval `[lo, hi]` with rational endpoints known to contain
/// some real number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn point(x: Rational) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Certified upper bound on `|x - y|` for any `x` in `self`, `y` in `other`.
    pub fn distance_upper(&self, other: &Enclosure) -> Rational {
        let a = (&self.hi - &other.lo).abs();
        let b = (&other.hi - &self.lo).abs();
        a.max(b)
    }

    /// `a + b·self`, with endpoints swapped when `b` is negative.
    pub fn affine(&self, a: &Integer, b: &Integer) -> Enclosure {
        let a = rat_int(a);
        let b = rat_int(b);
        let x = &a + &b * &self.lo;
        let y = &a + &b * &self.hi;
        if x <= y {
            Enclosure { lo: x, hi: y }
        } else {
            Enclosure { lo: y, hi: x }
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / Rational::from_integer(2.into())))
    }
}

/// `[s, s+1] / 10^digits` with `s = ⌊√2·10^digits⌋`.
pub fn sqrt2_enclosure(digits: u32) -> Enclosure {
    let scale = pow10(digits);
    let s = (Integer::from(2) * &scale * &scale).sqrt();
    Enclosure {
        lo: Rational::new(s.clone(), scale.clone()),
        hi: Rational::new(s + Integer::one(), scale),
    }
}
