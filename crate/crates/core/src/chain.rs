//! Transition-matrix families whose stationary vectors are built from
//! balancing-type numbers.
//!
//! All families share one shape: a reset column 0 plus a tridiagonal band.
//! With step probability `q` and coefficient `c` (6, or `A` for the
//! balancing-like families) the rows are
//!
//! ```text
//! row 0          : [1-q, q, 0, ...]
//! row 1          : [(c-1)q, 1-cq, q, 0, ...]
//! row 2..=n-2    : [(c-2)q, ..., q, 1-cq, q, ...]
//! row n-1        : family specific
//! ```
//!
//! and the q-free families are the `q = 1/c` members.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Integer, Rational};

/// Above this size built matrices use banded storage.
pub const DENSE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ChainFamily {
    /// Reset chain whose stationary vector is proportional to `B_{n-i}`.
    BalancingChain(usize),
    BalancingChainQ(usize, Rational),
    /// Like `BalancingChain` but the last row keeps a 1/6 self loop.
    PellRatioChain(usize),
    /// Last row `[1/3, ..., 1/6, 1/2]`.
    LucasChain(usize),
    LucasChainQ(usize, Rational),
    /// Rows `n-2` and `n-1` are special: `[16/21, ..., 1/6, 0, 1/14]`
    /// and `[1/3, ..., 1/6, 1/2]`.
    LucasCobalancingChain(usize),
    /// `n`-state truncation of the infinite reset chain; same matrix as
    /// `PellRatioChain(n)`.
    TruncatedInfinite(usize),
    TruncatedInfiniteQ(usize, Rational),
    BalancingLikeChain(usize, u32),
    BalancingLikeChainQ(usize, u32, Rational),
}

/// Last-row rule of a q-family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LastRow {
    /// `[(c-1)q, ..., q, 1-cq]`
    Reflecting,
    /// `[4q, ..., q, 1-5q]`
    SelfLoop,
    /// `[2q, ..., q, 1-3q]`
    Lucas,
}

impl ChainFamily {
    pub fn n(&self) -> usize {
        use ChainFamily::*;
        match *self {
            BalancingChain(n)
            | BalancingChainQ(n, _)
            | PellRatioChain(n)
            | LucasChain(n)
            | LucasChainQ(n, _)
            | LucasCobalancingChain(n)
            | TruncatedInfinite(n)
            | TruncatedInfiniteQ(n, _)
            | BalancingLikeChain(n, _)
            | BalancingLikeChainQ(n, _, _) => n,
        }
    }

    /// Coefficient `c` of the band: 6, or `A` for balancing-like chains.
    pub fn coefficient(&self) -> u32 {
        match *self {
            ChainFamily::BalancingLikeChain(_, a) | ChainFamily::BalancingLikeChainQ(_, a, _) => a,
            _ => 6,
        }
    }

    pub fn q(&self) -> Option<&Rational> {
        match self {
            ChainFamily::BalancingChainQ(_, q)
            | ChainFamily::LucasChainQ(_, q)
            | ChainFamily::TruncatedInfiniteQ(_, q)
            | ChainFamily::BalancingLikeChainQ(_, _, q) => Some(q),
            _ => None,
        }
    }

    pub fn min_size(&self) -> usize {
        match self {
            ChainFamily::LucasCobalancingChain(_) => 4,
            _ => 3,
        }
    }

    /// Command-line name of the family.
    pub fn slug(&self) -> &'static str {
        use ChainFamily::*;
        match self {
            BalancingChain(_) => "balancing",
            BalancingChainQ(..) => "balancing-q",
            PellRatioChain(_) => "pell-ratio",
            LucasChain(_) => "lucas",
            LucasChainQ(..) => "lucas-q",
            LucasCobalancingChain(_) => "lucas-cobalancing",
            TruncatedInfinite(_) => "truncated-infinite",
            TruncatedInfiniteQ(..) => "truncated-infinite-q",
            BalancingLikeChain(..) => "balancing-like",
            BalancingLikeChainQ(..) => "balancing-like-q",
        }
    }

    /// Parameters other than `n`, rendered as `a=4;q=1/10`.
    pub fn params(&self) -> String {
        let mut parts = Vec::new();
        if let ChainFamily::BalancingLikeChain(_, a) | ChainFamily::BalancingLikeChainQ(_, a, _) =
            self
        {
            parts.push(format!("a={a}"));
        }
        if let Some(q) = self.q() {
            parts.push(format!("q={q}"));
        }
        parts.join(";")
    }

    /// Builds a family from its command-line name.
    pub fn from_parts(
        slug: &str,
        n: usize,
        a: Option<u32>,
        q: Option<Rational>,
    ) -> Result<ChainFamily> {
        let need_q = |q: Option<Rational>| {
            q.ok_or_else(|| Error::bounds(format!("family {slug} requires q")))
        };
        let need_a = || a.ok_or_else(|| Error::bounds(format!("family {slug} requires a")));
        let family = match slug {
            "balancing" => ChainFamily::BalancingChain(n),
            "balancing-q" => ChainFamily::BalancingChainQ(n, need_q(q)?),
            "pell-ratio" => ChainFamily::PellRatioChain(n),
            "lucas" => ChainFamily::LucasChain(n),
            "lucas-q" => ChainFamily::LucasChainQ(n, need_q(q)?),
            "lucas-cobalancing" => ChainFamily::LucasCobalancingChain(n),
            "truncated-infinite" => ChainFamily::TruncatedInfinite(n),
            "truncated-infinite-q" => ChainFamily::TruncatedInfiniteQ(n, need_q(q)?),
            "balancing-like" => ChainFamily::BalancingLikeChain(n, need_a()?),
            "balancing-like-q" => ChainFamily::BalancingLikeChainQ(n, need_a()?, need_q(q)?),
            other => return Err(Error::bounds(format!("unknown chain family {other:?}"))),
        };
        family.check()?;
        Ok(family)
    }

    /// Rejects sizes below the family minimum, `A < 2` and `q ∉ (0, 1/c]`.
    pub fn check(&self) -> Result<()> {
        let n = self.n();
        if n < self.min_size() {
            return Err(Error::bounds(format!(
                "{} needs n >= {}, got {n}",
                self.slug(),
                self.min_size()
            )));
        }
        let c = self.coefficient();
        if c < 2 {
            return Err(Error::bounds(format!(
                "{} needs a >= 2, got {c}",
                self.slug()
            )));
        }
        if let Some(q) = self.q() {
            if !q.is_positive() || *q > rat(1, c.into()) {
                return Err(Error::bounds(format!(
                    "{} needs 0 < q <= 1/{c}, got {q}",
                    self.slug()
                )));
            }
        }
        Ok(())
    }

    fn q_and_last_row(&self) -> Option<(Rational, LastRow)> {
        use ChainFamily::*;
        let inv = |c: u32| rat(1, c.into());
        Some(match self {
            BalancingChain(_) => (inv(6), LastRow::Reflecting),
            BalancingChainQ(_, q) => (q.clone(), LastRow::Reflecting),
            PellRatioChain(_) | TruncatedInfinite(_) => (inv(6), LastRow::SelfLoop),
            TruncatedInfiniteQ(_, q) => (q.clone(), LastRow::SelfLoop),
            LucasChain(_) => (inv(6), LastRow::Lucas),
            LucasChainQ(_, q) => (q.clone(), LastRow::Lucas),
            BalancingLikeChain(_, a) => (inv(*a), LastRow::Reflecting),
            BalancingLikeChainQ(_, _, q) => (q.clone(), LastRow::Reflecting),
            LucasCobalancingChain(_) => return None,
        })
    }
}

impl fmt::Display for ChainFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            write!(f, "{}(n={})", self.slug(), self.n())
        } else {
            write!(f, "{}(n={};{})", self.slug(), self.n(), params)
        }
    }
}

/// Column 0 plus a tridiagonal band. `sub[1]` and `diag[0]` are unused:
/// those positions live in `col0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pub col0: Vec<Rational>,
    pub sub: Vec<Rational>,
    pub diag: Vec<Rational>,
    pub sup: Vec<Rational>,
}

impl Band {
    fn zeros(n: usize) -> Self {
        let z = vec![Rational::zero(); n];
        Band {
            col0: z.clone(),
            sub: z.clone(),
            diag: z.clone(),
            sup: z,
        }
    }

    fn get(&self, i: usize, j: usize) -> Rational {
        if j == 0 {
            self.col0[i].clone()
        } else if j == i {
            self.diag[i].clone()
        } else if j + 1 == i {
            self.sub[i].clone()
        } else if j == i + 1 {
            self.sup[i].clone()
        } else {
            Rational::zero()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Storage {
    Dense,
    Banded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Entries {
    Dense(Vec<Vec<Rational>>),
    Banded(Band),
}

/// Square matrix of exact rationals meant to be row-stochastic.
///
/// Built families always are; matrices from [`StochasticMatrix::from_rows`]
/// are only checked for squareness, use [`validate`] for the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochasticMatrix {
    n: usize,
    entries: Entries,
}

impl StochasticMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("matrix has no rows".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {n}",
                r.len()
            )));
        }
        Ok(StochasticMatrix {
            n,
            entries: Entries::Dense(rows),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn storage(&self) -> Storage {
        match self.entries {
            Entries::Dense(_) => Storage::Dense,
            Entries::Banded(_) => Storage::Banded,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match &self.entries {
            Entries::Dense(rows) => rows[i][j].clone(),
            Entries::Banded(band) => band.get(i, j),
        }
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        match &self.entries {
            Entries::Dense(rows) => rows[i].clone(),
            Entries::Banded(band) => (0..self.n).map(|j| band.get(i, j)).collect(),
        }
    }

    /// Dense row-major copy; identical whichever storage backs the matrix.
    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    /// Indices of the nonzero entries of row `i`, in increasing order.
    pub fn support(&self, i: usize) -> Vec<usize> {
        match &self.entries {
            Entries::Dense(rows) => (0..self.n).filter(|&j| !rows[i][j].is_zero()).collect(),
            Entries::Banded(_) => {
                let mut cols: Vec<usize> = [0, i.wrapping_sub(1), i, i + 1]
                    .into_iter()
                    .filter(|&j| j < self.n)
                    .collect();
                cols.sort_unstable();
                cols.dedup();
                cols.into_iter()
                    .filter(|&j| !self.get(i, j).is_zero())
                    .collect()
            }
        }
    }

    pub fn nonzero_count(&self) -> usize {
        (0..self.n).map(|i| self.support(i).len()).sum()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.to_rows()
            .iter()
            .map(|r| r.iter().map(crate::rational::to_f64).collect())
            .collect()
    }

    /// `(M, D)` with integer `M` and `self = M / D`, `D` the lcm of all
    /// denominators.
    pub fn scaled_integer_form(&self) -> (Vec<Vec<Integer>>, Integer) {
        let rows = self.to_rows();
        let d = rows
            .iter()
            .flatten()
            .fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
        let m = rows
            .iter()
            .map(|r| r.iter().map(|x| x.numer() * (&d / x.denom())).collect())
            .collect();
        (m, d)
    }
}

/// Builds `family`, dense up to [`DENSE_LIMIT`] states and banded above.
pub fn build(family: &ChainFamily) -> Result<StochasticMatrix> {
    let storage = if family.n() <= DENSE_LIMIT {
        Storage::Dense
    } else {
        Storage::Banded
    };
    build_with_storage(family, storage)
}

pub fn build_with_storage(family: &ChainFamily, storage: Storage) -> Result<StochasticMatrix> {
    family.check()?;
    let band = build_band(family);
    let n = family.n();
    let entries = match storage {
        Storage::Banded => Entries::Banded(band),
        Storage::Dense => Entries::Dense(
            (0..n)
                .map(|i| (0..n).map(|j| band.get(i, j)).collect())
                .collect(),
        ),
    };
    Ok(StochasticMatrix { n, entries })
}

fn build_band(family: &ChainFamily) -> Band {
    let n = family.n();
    let mut band = Band::zeros(n);
    let one = Rational::one();
    let (q, last) = match family.q_and_last_row() {
        Some(v) => v,
        None => return lucas_cobalancing_band(n),
    };
    let c = Rational::from_integer(family.coefficient().into());
    let int = |v: i64| Rational::from_integer(v.into());

    band.col0[0] = &one - &q;
    band.sup[0] = q.clone();

    band.col0[1] = (&c - &one) * &q;
    band.diag[1] = &one - &c * &q;
    band.sup[1] = q.clone();

    for i in 2..n - 1 {
        band.col0[i] = (&c - int(2)) * &q;
        band.sub[i] = q.clone();
        band.diag[i] = &one - &c * &q;
        band.sup[i] = q.clone();
    }

    let l = n - 1;
    let (reset, stay) = match last {
        LastRow::Reflecting => ((&c - &one) * &q, &one - &c * &q),
        LastRow::SelfLoop => (int(4) * &q, &one - int(5) * &q),
        LastRow::Lucas => (int(2) * &q, &one - int(3) * &q),
    };
    band.col0[l] = reset;
    band.sub[l] = q;
    band.diag[l] = stay;
    band
}

fn lucas_cobalancing_band(n: usize) -> Band {
    let mut band = Band::zeros(n);
    let sixth = rat(1, 6);

    band.col0[0] = rat(5, 6);
    band.sup[0] = sixth.clone();
    band.col0[1] = rat(5, 6);
    band.sup[1] = sixth.clone();
    for i in 2..n - 2 {
        band.col0[i] = rat(2, 3);
        band.sub[i] = sixth.clone();
        band.sup[i] = sixth.clone();
    }
    let k = n - 2;
    band.col0[k] = rat(16, 21);
    band.sub[k] = sixth.clone();
    band.sup[k] = rat(1, 14);
    let l = n - 1;
    band.col0[l] = rat(1, 3);
    band.sub[l] = sixth;
    band.diag[l] = rat(1, 2);
    band
}

/// Outcome of [`validate`]; violations are listed, not raised.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// `(row, col)` of negative entries.
    pub negative_entries: Vec<(usize, usize)>,
    /// `(row, actual sum)` for rows not summing to exactly 1.
    pub row_sum_violations: Vec<(usize, Rational)>,
    /// States not in the communicating class of state 0.
    pub unreachable_states: Vec<usize>,
    /// Period of the chain; `None` when it is not irreducible.
    pub period: Option<usize>,
}

impl ValidationReport {
    pub fn is_stochastic(&self) -> bool {
        self.negative_entries.is_empty() && self.row_sum_violations.is_empty()
    }

    pub fn is_irreducible(&self) -> bool {
        self.unreachable_states.is_empty()
    }

    pub fn is_aperiodic(&self) -> bool {
        self.period == Some(1)
    }

    pub fn is_ok(&self) -> bool {
        self.is_stochastic() && self.is_irreducible() && self.is_aperiodic()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        let mut problems = Vec::new();
        for (i, j) in &self.negative_entries {
            problems.push(format!("negative entry at ({i},{j})"));
        }
        for (i, s) in &self.row_sum_violations {
            problems.push(format!("row {i} sums to {s}"));
        }
        if !self.unreachable_states.is_empty() {
            problems.push(format!(
                "not irreducible: states {:?} do not communicate with state 0",
                self.unreachable_states
            ));
        }
        if let Some(p) = self.period.filter(|&p| p != 1) {
            problems.push(format!("periodic with period {p}"));
        }
        f.write_str(&problems.join("; "))
    }
}

/// Nonnegativity, exact row sums, irreducibility and aperiodicity.
pub fn validate(m: &StochasticMatrix) -> ValidationReport {
    let n = m.n();
    let mut report = ValidationReport::default();
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    for (i, out) in succ.iter_mut().enumerate() {
        let row = m.row(i);
        for (j, x) in row.iter().enumerate() {
            if x.is_negative() {
                report.negative_entries.push((i, j));
            } else if x.is_positive() {
                out.push(j);
                pred[j].push(i);
            }
        }
        let sum: Rational = row.iter().sum();
        if !sum.is_one() {
            report.row_sum_violations.push((i, sum));
        }
    }

    let forward = bfs_levels(&succ, 0);
    let backward = bfs_levels(&pred, 0);
    report.unreachable_states = (0..n)
        .filter(|&s| forward[s].is_none() || backward[s].is_none())
        .collect();

    if report.unreachable_states.is_empty() {
        // gcd of level[u] + 1 - level[v] over all edges u -> v
        let mut g = 0usize;
        for (u, targets) in succ.iter().enumerate() {
            let lu = forward[u].expect("reachable");
            for &v in targets {
                let lv = forward[v].expect("reachable");
                g = g.gcd(&(lu + 1).abs_diff(lv));
            }
        }
        report.period = Some(g);
    }
    report
}

fn bfs_levels(adj: &[Vec<usize>], start: usize) -> Vec<Option<usize>> {
    let mut level = vec![None; adj.len()];
    level[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let next = level[u].map(|l| l + 1);
        for &v in &adj[u] {
            if level[v].is_none() {
                level[v] = next;
                queue.push_back(v);
            }
        }
    }
    level
}
