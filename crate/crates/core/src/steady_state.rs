//! Stationary distributions by three independent routes: exact rational
//! elimination, floating-point power iteration and seeded simulation, plus
//! exact n-step transition matrices.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain::StochasticMatrix;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Integer, Rational};

/// Identifier of the sampling algorithm used by [`simulate`]: ChaCha8
/// seeded with `seed_from_u64`, one `next_u64` per step, rejection of the
/// incomplete top zone, then `x mod D` against the row's cumulative integer
/// weights over their common denominator `D`.
pub const SIMULATION_RNG: &str = "chacha8-seed_from_u64/rejection-mod-v1";

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

/// Exact stationary probability vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteadyStateVector {
    pub probs: Vec<Rational>,
}

impl SteadyStateVector {
    pub fn new(probs: Vec<Rational>) -> Self {
        SteadyStateVector { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn sum(&self) -> Rational {
        self.probs.iter().sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.probs.iter().map(to_f64).collect()
    }

    /// Largest `|self_i - other_i|`, exactly.
    pub fn max_abs_diff(&self, other: &SteadyStateVector) -> Rational {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Solves `π = π·m`, `Σπ = 1` exactly.
///
/// The system is `(mᵀ - I)·π = 0` with the state-0 equation replaced by the
/// normalization row, solved by Gaussian elimination with partial pivoting
/// on rational magnitude.
pub fn solve_exact(m: &StochasticMatrix) -> Result<SteadyStateVector> {
    let n = m.n();
    let rows = m.to_rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut x = rows[j][i].clone();
                    if i == j {
                        x -= Rational::one();
                    }
                    x
                })
                .collect()
        })
        .collect();
    a[0] = vec![Rational::one(); n];
    let mut b = vec![Rational::zero(); n];
    b[0] = Rational::one();
    solve_linear(a, b).map(SteadyStateVector::new)
}

/// Gaussian elimination with partial pivoting; `Singular` when no nonzero
/// pivot exists in some column.
pub(crate) fn solve_linear(
    mut a: Vec<Vec<Rational>>,
    mut b: Vec<Rational>,
) -> Result<Vec<Rational>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "system is {}x? with {n} right-hand sides",
            a.len()
        )));
    }
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&r, &s| a[r][col].abs().cmp(&a[s][col].abs()))
            .ok_or(Error::Singular)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for (k, row) in rest.iter_mut().enumerate() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for j in col..n {
                if !pivot_row[j].is_zero() {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
            let delta = &factor * &b[col];
            b[col + 1 + k] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            if !a[i][j].is_zero() {
                acc -= &a[i][j] * &x[j];
            }
        }
        x[i] = acc / &a[i][i];
    }
    Ok(x)
}

/// `π·m == π`, exactly.
pub fn is_stationary(m: &StochasticMatrix, pi: &SteadyStateVector) -> bool {
    let n = m.n();
    if pi.len() != n {
        return false;
    }
    let mut out = vec![Rational::zero(); n];
    for (i, p) in pi.probs.iter().enumerate() {
        for j in m.support(i) {
            out[j] += p * m.get(i, j);
        }
    }
    out == pi.probs
}

/// Result of [`power_iteration`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerIterate {
    pub probs: Vec<f64>,
    pub iterations: usize,
    pub tol: f64,
}

/// Iterates `v <- v·m` from the uniform vector until the L1 change drops
/// below `tol`.
pub fn power_iteration(m: &StochasticMatrix, tol: f64, max_iter: usize) -> Result<PowerIterate> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::bounds(format!("tol must be positive, got {tol}")));
    }
    if max_iter == 0 {
        return Err(Error::bounds("max_iter must be at least 1"));
    }
    let n = m.n();
    let sparse: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|i| {
            m.support(i)
                .into_iter()
                .map(|j| (j, to_f64(&m.get(i, j))))
                .collect()
        })
        .collect();
    let mut v = vec![1.0 / n as f64; n];
    let mut change = f64::INFINITY;
    for it in 1..=max_iter {
        let mut next = vec![0.0; n];
        for (i, row) in sparse.iter().enumerate() {
            for &(j, p) in row {
                next[j] += v[i] * p;
            }
        }
        change = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).sum();
        v = next;
        if change < tol {
            return Ok(PowerIterate {
                probs: v,
                iterations: it,
                tol,
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        last_change: change,
        last: v,
    })
}

/// `M / D` with integer `M`; powers stay in this form so no gcd work is
/// done until the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledMatrix {
    pub numer: Vec<Vec<Integer>>,
    pub denom: Integer,
}

impl ScaledMatrix {
    pub fn from_matrix(m: &StochasticMatrix) -> Self {
        let (numer, denom) = m.scaled_integer_form();
        ScaledMatrix { numer, denom }
    }

    fn identity(n: usize) -> Self {
        let numer = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Integer::one()
                        } else {
                            Integer::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        ScaledMatrix {
            numer,
            denom: Integer::one(),
        }
    }

    pub fn mul(&self, other: &ScaledMatrix) -> ScaledMatrix {
        let n = self.numer.len();
        let mut out = vec![vec![Integer::zero(); n]; n];
        for (i, row) in self.numer.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in other.numer[k].iter().enumerate() {
                    if !y.is_zero() {
                        out[i][j] += x * y;
                    }
                }
            }
        }
        ScaledMatrix {
            numer: out,
            denom: &self.denom * &other.denom,
        }
    }

    pub fn to_matrix(&self) -> StochasticMatrix {
        let rows = self
            .numer
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Rational::new(x.clone(), self.denom.clone()))
                    .collect()
            })
            .collect();
        StochasticMatrix::from_rows(rows).expect("square by construction")
    }

    /// `max_ij |M_ij / D - π_j|` rendered to `f64`.
    pub fn max_row_deviation(&self, pi: &SteadyStateVector) -> f64 {
        let mut worst = 0.0f64;
        for row in &self.numer {
            for (x, p) in row.iter().zip(&pi.probs) {
                let num = x * p.denom() - p.numer() * &self.denom;
                let den = &self.denom * p.denom();
                let d = Rational::new_raw(num.abs(), den)
                    .to_f64()
                    .unwrap_or(f64::INFINITY);
                worst = worst.max(d);
            }
        }
        worst
    }
}

/// `m^steps` exactly, by binary exponentiation.
pub fn n_step(m: &StochasticMatrix, steps: u64) -> Result<StochasticMatrix> {
    if steps == 0 {
        return Err(Error::bounds("n_step needs n >= 1"));
    }
    let mut base = ScaledMatrix::from_matrix(m);
    let mut acc = ScaledMatrix::identity(m.n());
    let mut e = steps;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    Ok(acc.to_matrix())
}

/// `m^(2^squarings)` by repeated squaring.
pub fn n_step_pow2(m: &StochasticMatrix, squarings: u32) -> StochasticMatrix {
    (0..squarings)
        .fold(ScaledMatrix::from_matrix(m), |p, _| p.mul(&p))
        .to_matrix()
}

/// Trace of repeated squaring of `m` towards the rank-one limit `1·π`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SquaringTrace {
    /// `deviations[k]` is the max row deviation of `m^(2^k)` from `π`.
    pub deviations: Vec<f64>,
    /// First `k` with deviation below the tolerance, if reached.
    pub converged_at: Option<u32>,
}

/// Squares `m` until every row of `m^(2^k)` is within `tol` of `pi`, or
/// `max_squarings` squarings have been done.
pub fn squaring_convergence(
    m: &StochasticMatrix,
    pi: &SteadyStateVector,
    tol: f64,
    max_squarings: u32,
) -> SquaringTrace {
    let mut p = ScaledMatrix::from_matrix(m);
    let mut deviations = Vec::new();
    for k in 0..=max_squarings {
        let d = p.max_row_deviation(pi);
        deviations.push(d);
        if d < tol {
            return SquaringTrace {
                deviations,
                converged_at: Some(k),
            };
        }
        if k < max_squarings {
            p = p.mul(&p);
        }
    }
    SquaringTrace {
        deviations,
        converged_at: None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationResult {
    /// Visits to each state after each transition; sums to `steps`.
    pub visits: Vec<u64>,
    pub steps: u64,
    pub seed: u64,
    pub start: usize,
    pub rng: String,
    pub empirical: Vec<f64>,
}

struct RowSampler {
    denom: u64,
    zone: u128,
    /// `(state, cumulative weight)` for the positive entries.
    cumulative: Vec<(usize, u64)>,
}

impl RowSampler {
    fn new(m: &StochasticMatrix, i: usize) -> Result<Self> {
        let support = m.support(i);
        let entries: Vec<Rational> = support.iter().map(|&j| m.get(i, j)).collect();
        let d = entries.iter().fold(Integer::one(), |acc, x| {
            num_integer::Integer::lcm(&acc, x.denom())
        });
        let denom = d
            .to_u64()
            .ok_or_else(|| Error::bounds(format!("row {i} denominator {d} exceeds 64 bits")))?;
        let mut total = 0u64;
        let mut cumulative = Vec::new();
        for (&j, x) in support.iter().zip(&entries) {
            if x.is_negative() {
                return Err(Error::bounds(format!("negative entry at ({i},{j})")));
            }
            let w = (x.numer() * (&d / x.denom()))
                .to_u64()
                .expect("bounded by denominator");
            total += w;
            cumulative.push((j, total));
        }
        if total != denom {
            return Err(Error::bounds(format!("row {i} does not sum to 1")));
        }
        let zone = (1u128 << 64) / denom as u128 * denom as u128;
        Ok(RowSampler {
            denom,
            zone,
            cumulative,
        })
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let r = loop {
            let x = rng.next_u64();
            if (x as u128) < self.zone {
                break x % self.denom;
            }
        };
        self.cumulative
            .iter()
            .find(|&&(_, c)| r < c)
            .map(|&(j, _)| j)
            .expect("r < denom = last cumulative weight")
    }
}

/// Runs the chain for `steps` transitions from `start`.
///
/// Sampling is exact: each row is drawn as an integer over its common
/// denominator, so results depend only on the seed and [`SIMULATION_RNG`].
pub fn simulate(
    m: &StochasticMatrix,
    steps: u64,
    seed: u64,
    start: usize,
) -> Result<SimulationResult> {
    let n = m.n();
    if start >= n {
        return Err(Error::StateOutOfRange { start, n });
    }
    if steps == 0 {
        return Err(Error::bounds("simulate needs steps >= 1"));
    }
    let samplers = (0..n)
        .map(|i| RowSampler::new(m, i))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut visits = vec![0u64; n];
    let mut state = start;
    for _ in 0..steps {
        state = samplers[state].sample(&mut rng);
        visits[state] += 1;
    }
    let empirical = visits.iter().map(|&v| v as f64 / steps as f64).collect();
    Ok(SimulationResult {
        visits,
        steps,
        seed,
        start,
        rng: SIMULATION_RNG.to_string(),
        empirical,
    })
}
