//! Balancing-family integer sequences.
//!
//! Every sequence here is produced by one second-order engine,
//!
//! ```text
//! x[n+1] = coeff·x[n] + lag·x[n-1] + shift
//! ```
//!
//! with `lag = -1` for the balancing family and `lag = +1` for Pell numbers.
//! Indexing is 0-based and matches the usual subscripts: `B_0 = 0`,
//! `C_0 = 1`, `b_0 = b_1 = 0`, `c_0 = 1`, `P_0 = 0`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Integer;

/// Coefficients and seeds of a second-order linear recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub coeff: Integer,
    /// Multiplier of `x[n-1]`.
    pub lag: Integer,
    pub shift: Integer,
    pub x0: Integer,
    pub x1: Integer,
}

impl RecurrenceSpec {
    /// `x[n+1] = coeff·x[n] - x[n-1] + shift`.
    pub fn balancing_type(coeff: i64, shift: i64, x0: i64, x1: i64) -> Self {
        RecurrenceSpec {
            coeff: coeff.into(),
            lag: (-1).into(),
            shift: shift.into(),
            x0: x0.into(),
            x1: x1.into(),
        }
    }

    pub fn next(&self, prev: &Integer, cur: &Integer) -> Integer {
        &self.coeff * cur + &self.lag * prev + &self.shift
    }

    pub fn terms(&self) -> Terms {
        Terms {
            spec: self.clone(),
            prev: None,
            cur: self.x0.clone(),
        }
    }
}

/// Unbounded iterator over the terms of a [`RecurrenceSpec`].
#[derive(Debug, Clone)]
pub struct Terms {
    spec: RecurrenceSpec,
    prev: Option<Integer>,
    cur: Integer,
}

impl Iterator for Terms {
    type Item = Integer;

    fn next(&mut self) -> Option<Integer> {
        let out = self.cur.clone();
        let following = match &self.prev {
            None => self.spec.x1.clone(),
            Some(p) => self.spec.next(p, &self.cur),
        };
        self.prev = Some(std::mem::replace(&mut self.cur, following));
        Some(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    Balancing,
    LucasBalancing,
    Cobalancing,
    LucasCobalancing,
    Pell,
    /// `x[n+1] = A·x[n] - x[n-1]`, `x_0 = 0`, `x_1 = 1`.
    BalancingLike(u32),
}

impl SequenceKind {
    pub fn recurrence(&self) -> RecurrenceSpec {
        match *self {
            SequenceKind::Balancing => RecurrenceSpec::balancing_type(6, 0, 0, 1),
            SequenceKind::LucasBalancing => RecurrenceSpec::balancing_type(6, 0, 1, 3),
            SequenceKind::Cobalancing => RecurrenceSpec::balancing_type(6, 2, 0, 0),
            SequenceKind::LucasCobalancing => RecurrenceSpec::balancing_type(6, 0, 1, 7),
            SequenceKind::Pell => RecurrenceSpec {
                coeff: 2.into(),
                lag: 1.into(),
                shift: 0.into(),
                x0: 0.into(),
                x1: 1.into(),
            },
            SequenceKind::BalancingLike(a) => RecurrenceSpec::balancing_type(a.into(), 0, 0, 1),
        }
    }

    pub fn terms(&self) -> Terms {
        self.recurrence().terms()
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::Balancing => f.write_str("balancing"),
            SequenceKind::LucasBalancing => f.write_str("lucas-balancing"),
            SequenceKind::Cobalancing => f.write_str("cobalancing"),
            SequenceKind::LucasCobalancing => f.write_str("lucas-cobalancing"),
            SequenceKind::Pell => f.write_str("pell"),
            SequenceKind::BalancingLike(a) => write!(f, "balancing-like(a={a})"),
        }
    }
}

/// The `n`-th term of `kind`.
pub fn term(kind: SequenceKind, n: usize) -> Integer {
    kind.terms()
        .nth(n)
        .expect("recurrence iterator is unbounded")
}

/// The first `count` terms of `kind`.
pub fn sequence(kind: SequenceKind, count: usize) -> Vec<Integer> {
    kind.terms().take(count).collect()
}

/// `(⌊√n⌋, ⌊√n⌋² == n)`.
pub fn integer_sqrt(n: &Integer) -> Result<(Integer, bool)> {
    if n.is_negative() {
        return Err(Error::NegativeInput(n.clone()));
    }
    let root = n.sqrt();
    let exact = &root * &root == *n;
    Ok((root, exact))
}

fn square_root_witness(value: &Integer) -> Option<Integer> {
    match integer_sqrt(value) {
        Ok((root, true)) => Some(root),
        _ => None,
    }
}

/// `Some(√(8N²+1))` when `N` is a balancing number.
///
/// The witness is the Lucas-balancing partner of `N`.
pub fn is_balancing(n: &Integer) -> Option<Integer> {
    square_root_witness(&(BigInt::from(8) * n * n + 1))
}

/// `Some(√(8N²+8N+1))` when `N` is a cobalancing number.
///
/// For `N = b_k` with `k ≥ 1` the witness is `c_{k-1}`; `b_0 = b_1 = 0` both
/// map to witness 1.
pub fn is_cobalancing(n: &Integer) -> Option<Integer> {
    square_root_witness(&(BigInt::from(8) * n * n + BigInt::from(8) * n + 1))
}

/// `2·(B_1 + … + B_{n-1}) == b_n`.
pub fn check_sum_identity(n: usize) -> bool {
    let partial: Integer = SequenceKind::Balancing.terms().take(n).skip(1).sum();
    partial * 2 == term(SequenceKind::Cobalancing, n)
}

/// `(P_{2n} == 2·B_n, P_{2n+1} == B_{n+1} - B_n)`.
pub fn check_pell_links(n: usize) -> (bool, bool) {
    let pell = sequence(SequenceKind::Pell, 2 * n + 2);
    let bal = sequence(SequenceKind::Balancing, n + 2);
    let even = pell[2 * n] == &bal[n] * 2;
    let odd = pell[2 * n + 1] == &bal[n + 1] - &bal[n];
    (even, odd)
}

pub type IntMatrix2 = [[Integer; 2]; 2];

/// `[[B_{n+1}, B_n], [-B_n, -B_{n-1}]]` assembled from sequence terms.
pub fn balancing_matrix_from_terms(n: usize) -> IntMatrix2 {
    assert!(n >= 1, "structure is stated for n >= 1");
    let b = sequence(SequenceKind::Balancing, n + 2);
    [[b[n + 1].clone(), b[n].clone()], [-&b[n], -&b[n - 1]]]
}

fn mul2(x: &IntMatrix2, y: &IntMatrix2) -> IntMatrix2 {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `[[6, 1], [-1, 0]]^n` by repeated multiplication.
///
/// For `n ≥ 1` this is `[[B_{n+1}, B_n], [-B_n, -B_{n-1}]]`. The corner is
/// `-B_{n-1}`, not `+B_{n-1}`: the base has determinant 1, so every power
/// does, and `B_{n+1}·B_{n-1} - B_n² = -1`. `n = 0` gives the identity.
pub fn balancing_matrix_power(n: usize) -> IntMatrix2 {
    let base: IntMatrix2 = [[6.into(), 1.into()], [(-1).into(), 0.into()]];
    let identity: IntMatrix2 = [[One::one(), Zero::zero()], [Zero::zero(), One::one()]];
    (0..n).fold(identity, |acc, _| mul2(&acc, &base))
}
