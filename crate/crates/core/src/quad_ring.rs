//! Exact arithmetic in `Z[√2]`.
//!
//! The constant `β = 3 - 2√2 = (1 + √2)^-2` is stored exactly as
//! `QuadInt { a: 3, b: -2 }`. Comparisons against rationals go through
//! [`Enclosure`]s built from a scaled integer square root of 2, so every
//! reported distance is a certified upper bound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::rational::{sqrt2_enclosure, Enclosure, Integer, Rational, DEFAULT_DIGITS};
use crate::sequence::{sequence, SequenceKind};

/// `a + b√2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: Integer,
    pub b: Integer,
}

impl QuadInt {
    pub fn new(a: impl Into<Integer>, b: impl Into<Integer>) -> Self {
        QuadInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(a: impl Into<Integer>) -> Self {
        QuadInt::new(a, 0)
    }

    pub fn one() -> Self {
        QuadInt::from_int(1)
    }

    /// `3 - 2√2`.
    pub fn beta() -> Self {
        QuadInt::new(3, -2)
    }

    /// `1 + √2`.
    pub fn silver_ratio() -> Self {
        QuadInt::new(1, 1)
    }

    pub fn conjugate(&self) -> Self {
        QuadInt {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// `a² - 2b²`.
    pub fn norm(&self) -> Integer {
        &self.a * &self.a - Integer::from(2) * &self.b * &self.b
    }

    pub fn scale(&self, k: &Integer) -> Self {
        QuadInt {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        qpow(self, n)
    }

    /// Certified enclosure of the real value at `digits` decimal digits of √2.
    pub fn enclose(&self, digits: u32) -> Enclosure {
        sqrt2_enclosure(digits).affine(&self.a, &self.b)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(30).midpoint_f64()
    }

    /// Sign of the real value, decided exactly.
    pub fn is_positive(&self) -> bool {
        // a + b√2 > 0  <=>  compare a² with 2b² depending on signs
        match (self.a.is_negative(), self.b.is_negative()) {
            (false, false) => !(self.a.is_zero() && self.b.is_zero()),
            (true, true) => false,
            (false, true) => self.norm().is_positive(),
            (true, false) => self.norm().is_negative(),
        }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}√2", self.a, -&self.b)
        } else {
            write!(f, "{}+{}√2", self.a, self.b)
        }
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        qmul(self, rhs)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            a: -self.a,
            b: -self.b,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadInt {
            type Output = QuadInt;
            fn $m(self, rhs: QuadInt) -> QuadInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `(a₁a₂ + 2b₁b₂) + (a₁b₂ + a₂b₁)√2`.
pub fn qmul(x: &QuadInt, y: &QuadInt) -> QuadInt {
    QuadInt {
        a: &x.a * &y.a + Integer::from(2) * &x.b * &y.b,
        b: &x.a * &y.b + &y.a * &x.b,
    }
}

/// `x^n` by repeated multiplication; `x^0 = 1`.
pub fn qpow(x: &QuadInt, n: u32) -> QuadInt {
    (0..n).fold(QuadInt::one(), |acc, _| qmul(&acc, x))
}

/// Checks `β^{n+1} = β·B_{n+1} - B_n` exactly.
pub fn beta_power_identity(n: usize) -> bool {
    let b = sequence(SequenceKind::Balancing, n + 2);
    let beta = QuadInt::beta();
    let lhs = qpow(&beta, n as u32 + 1);
    let rhs = &beta.scale(&b[n + 1]) - &QuadInt::from_int(b[n].clone());
    lhs == rhs
}

/// `[β^i - β^{i+1}]` for `i = 0..count`: the exact stationary probabilities
/// of the infinite reset chain.
pub fn infinite_steady_state(count: usize) -> Vec<QuadInt> {
    let beta = QuadInt::beta();
    let mut power = QuadInt::one();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let next = qmul(&power, &beta);
        out.push(&power - &next);
        power = next;
    }
    out
}

/// Certified upper bound on `|B_{n-1}/B_n - β|` at the default precision.
pub fn silver_ratio_gap(n: usize) -> Rational {
    silver_ratio_gap_with_digits(n, DEFAULT_DIGITS)
}

pub fn silver_ratio_gap_with_digits(n: usize, digits: u32) -> Rational {
    assert!(n >= 2, "silver_ratio_gap needs n >= 2");
    let b = sequence(SequenceKind::Balancing, n + 1);
    let ratio = Rational::new(b[n - 1].clone(), b[n].clone());
    Enclosure::point(ratio).distance_upper(&QuadInt::beta().enclose(digits))
}
