//! Closed-form stationary vectors for every chain family, checked against the
//! exact solver, plus the truncation study of the infinite reset chain.
//!
//! The closed forms are the ones that satisfy the boundary balance equations
//! `π_{n-2} = r·π_{n-1}` (r = 6, 5, 3, 7 or A). Index-shifted variants of
//! some of them are evaluated as well and their (mis)match is written into
//! the report notes.

use num_traits::{One, Signed, Zero};

use crate::chain::{build, ChainFamily};
use crate::error::{Error, Result};
use crate::quad_ring::{beta_power_identity, infinite_steady_state, QuadInt};
use crate::rational::{rat, rat_int, to_f64, Enclosure, Integer, Rational, DEFAULT_DIGITS};
use crate::sequence::{
    balancing_matrix_from_terms, balancing_matrix_power, check_pell_links, check_sum_identity,
    is_balancing, is_cobalancing, sequence, SequenceKind,
};
use crate::steady_state::{solve_exact, SteadyStateVector};

/// How many leading entries of the truncated chain are compared with the
/// infinite chain.
pub const TRUNCATION_WINDOW: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub family: ChainFamily,
    pub predicted: SteadyStateVector,
    pub solved: SteadyStateVector,
    pub exact_match: bool,
    pub max_gap: Rational,
    pub notes: String,
}

fn normalize(weights: Vec<Integer>) -> SteadyStateVector {
    let total: Integer = weights.iter().sum();
    SteadyStateVector::new(
        weights
            .into_iter()
            .map(|w| Rational::new(w, total.clone()))
            .collect(),
    )
}

/// Weights `w_i`, `i = 0..n`, with `π_i = w_i / Σw`.
fn closed_form_weights(family: &ChainFamily) -> Vec<Integer> {
    use ChainFamily::*;
    let n = family.n();
    match family {
        BalancingChain(_) | BalancingChainQ(..) => {
            let b = sequence(SequenceKind::Balancing, n + 1);
            (0..n).map(|i| b[n - i].clone()).collect()
        }
        PellRatioChain(_) | TruncatedInfinite(_) | TruncatedInfiniteQ(..) => {
            let b = sequence(SequenceKind::Balancing, n + 1);
            (0..n).map(|i| &b[n - i] - &b[n - i - 1]).collect()
        }
        LucasChain(_) | LucasChainQ(..) => {
            let c = sequence(SequenceKind::LucasBalancing, n);
            (0..n).map(|i| c[n - 1 - i].clone()).collect()
        }
        LucasCobalancingChain(_) => {
            let c = sequence(SequenceKind::LucasCobalancing, n);
            (0..n).map(|i| c[n - 1 - i].clone()).collect()
        }
        BalancingLikeChain(_, a) | BalancingLikeChainQ(_, a, _) => {
            let x = sequence(SequenceKind::BalancingLike(*a), n + 1);
            (0..n).map(|i| x[n - i].clone()).collect()
        }
    }
}

/// Closed-form stationary vector of `family`.
///
/// * balancing: `B_{n-i} / (B_1 + … + B_n)`
/// * Pell-ratio and truncated infinite: `(B_{n-i} - B_{n-i-1}) / B_n`
/// * Lucas: `C_{n-1-i} / (C_0 + … + C_{n-1})`
/// * Lucas-cobalancing: `c_{n-1-i} / (c_0 + … + c_{n-1})`
/// * balancing-like: `x_{n-i} / (x_1 + … + x_n)`
pub fn closed_form(family: &ChainFamily) -> Result<SteadyStateVector> {
    family.check()?;
    Ok(normalize(closed_form_weights(family)))
}

/// Index-shifted variants that do not match, evaluated for the notes.
fn shifted_forms(family: &ChainFamily) -> Vec<(&'static str, &'static str, SteadyStateVector)> {
    use ChainFamily::*;
    let n = family.n();
    match family {
        PellRatioChain(_) | TruncatedInfinite(_) | TruncatedInfiniteQ(..) => {
            let b = sequence(SequenceKind::Balancing, 2 * n + 1);
            let p = sequence(SequenceKind::Pell, 2 * n + 1);
            let bn = &b[n];
            let plus_index = (0..n)
                .map(|i| Rational::new(&b[n + i] - &b[n + i - 1], bn.clone()))
                .collect();
            let constant = Rational::new(Integer::from(2) * &p[2 * n - 1], p[2 * n].clone());
            vec![
                (
                    "(B_{n+i}-B_{n+i-1})/B_n",
                    "index runs the wrong way, entries do not sum to 1",
                    SteadyStateVector::new(plus_index),
                ),
                (
                    "2P_{2n-1}/P_{2n} for every i",
                    "equals pi_0 only, the i-dependent form is P_{2(n-i)-1}/B_n",
                    SteadyStateVector::new(vec![constant; n]),
                ),
            ]
        }
        LucasChain(_) | LucasChainQ(..) => {
            let c = sequence(SequenceKind::LucasBalancing, n + 1);
            let total: Integer = c[1..=n].iter().sum();
            let v = (0..n)
                .map(|i| Rational::new(c[n - i].clone(), total.clone()))
                .collect();
            vec![(
                "C_{n-i}/(C_1+…+C_n)",
                "off by one index, boundary ratio would be C_2/C_1 instead of 3",
                SteadyStateVector::new(v),
            )]
        }
        LucasCobalancingChain(_) => {
            let c = sequence(SequenceKind::LucasCobalancing, n + 1);
            let total: Integer = c[1..=n].iter().sum();
            let v = (0..n)
                .map(|i| Rational::new(c[n - i].clone(), total.clone()))
                .collect();
            vec![(
                "c_{n-i}/(c_1+…+c_n)",
                "off by one index, boundary ratio would be c_2/c_1 instead of 7",
                SteadyStateVector::new(v),
            )]
        }
        BalancingChain(_) | BalancingChainQ(..) => {
            let b = sequence(SequenceKind::Balancing, n + 1);
            let p = sequence(SequenceKind::Pell, 2 * n + 1);
            let sum_b: Integer = b[1..=n].iter().sum();
            let v = (0..n)
                .map(|i| Rational::new(p[2 * (n - i)].clone(), sum_b.clone()))
                .collect();
            vec![(
                "P_{2(n-i)}/(B_1+…+B_n)",
                "off by a factor of 2, entries sum to 2, denominator should be b_{n+1} = 2(B_1+…+B_n)",
                SteadyStateVector::new(v),
            )]
        }
        BalancingLikeChain(..) | BalancingLikeChainQ(..) => Vec::new(),
    }
}

fn describe(family: &ChainFamily) -> &'static str {
    use ChainFamily::*;
    match family {
        BalancingChain(_) => {
            "balancing chain: pi_i = B_{n-i}/(B_1+…+B_n) = 2B_{n-i}/b_{n+1} = P_{2(n-i)}/b_{n+1}"
        }
        BalancingChainQ(..) => {
            "balancing q-chain: same vector as the q-free balancing chain, pi_i = 2B_{n-i}/b_{n+1}"
        }
        PellRatioChain(_) => {
            "Pell-ratio chain: pi_i = (B_{n-i}-B_{n-i-1})/B_n = P_{2(n-i)-1}/B_n (boundary ratio 5)"
        }
        TruncatedInfinite(_) | TruncatedInfiniteQ(..) => {
            "truncated infinite reset chain: pi_i = (B_{n-i}-B_{n-i-1})/B_n, tends to beta^i - beta^{i+1}"
        }
        LucasChain(_) => "Lucas chain: pi_i = C_{n-1-i}/(C_0+…+C_{n-1}) (boundary ratio 3 = C_1/C_0)",
        LucasChainQ(..) => "Lucas q-chain: same vector as the q-free Lucas chain",
        LucasCobalancingChain(_) => {
            "Lucas-cobalancing chain: pi_i = c_{n-1-i}/(c_0+…+c_{n-1}) (boundary ratio 7 = c_1/c_0)"
        }
        BalancingLikeChain(..) => "balancing-like chain: pi_i = x_{n-i}/(x_1+…+x_n) (boundary ratio A)",
        BalancingLikeChainQ(..) => "balancing-like q-chain: same vector as the q-free balancing-like chain",
    }
}

fn notes_for(family: &ChainFamily, solved: &SteadyStateVector) -> String {
    let mut notes = vec![describe(family).to_string()];
    for (label, reason, v) in shifted_forms(family) {
        let verdict = if &v == solved {
            "matches the exact solution".to_string()
        } else {
            let first_bad = v
                .probs
                .iter()
                .zip(&solved.probs)
                .position(|(a, b)| a != b)
                .unwrap_or(0);
            format!("does not match ({reason}, first differs at i={first_bad})")
        };
        notes.push(format!("index-discrepancy check: {label} {verdict}"));
    }
    notes.join("; ")
}

/// Compares [`closed_form`] with [`solve_exact`] on the built matrix.
pub fn verify_family(family: &ChainFamily) -> Result<VerificationReport> {
    let predicted = closed_form(family)?;
    let solved = solve_exact(&build(family)?)?;
    let exact_match = predicted == solved;
    let max_gap = predicted.max_abs_diff(&solved);
    let notes = notes_for(family, &solved);
    Ok(VerificationReport {
        family: family.clone(),
        predicted,
        solved,
        exact_match,
        max_gap,
        notes,
    })
}

/// Families that come with a step-probability parameter `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QFamily {
    Balancing,
    Lucas,
    TruncatedInfinite,
    BalancingLike(u32),
}

impl QFamily {
    pub fn coefficient(&self) -> u32 {
        match *self {
            QFamily::BalancingLike(a) => a,
            _ => 6,
        }
    }

    pub fn base(&self, n: usize) -> ChainFamily {
        match *self {
            QFamily::Balancing => ChainFamily::BalancingChain(n),
            QFamily::Lucas => ChainFamily::LucasChain(n),
            QFamily::TruncatedInfinite => ChainFamily::TruncatedInfinite(n),
            QFamily::BalancingLike(a) => ChainFamily::BalancingLikeChain(n, a),
        }
    }

    pub fn with_q(&self, n: usize, q: Rational) -> ChainFamily {
        match *self {
            QFamily::Balancing => ChainFamily::BalancingChainQ(n, q),
            QFamily::Lucas => ChainFamily::LucasChainQ(n, q),
            QFamily::TruncatedInfinite => ChainFamily::TruncatedInfiniteQ(n, q),
            QFamily::BalancingLike(a) => ChainFamily::BalancingLikeChainQ(n, a, q),
        }
    }

    /// `1/c`, `1/(c+1)` and `1/100`.
    pub fn standard_qs(&self) -> Vec<Rational> {
        let c = i64::from(self.coefficient());
        vec![rat(1, c), rat(1, c + 1), rat(1, 100)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QInvarianceReport {
    pub base: ChainFamily,
    pub reference: SteadyStateVector,
    /// Each q-member with whether its exact solution equals `reference`.
    pub members: Vec<(ChainFamily, bool)>,
    pub all_identical: bool,
}

/// Solves every `q` member of `kind` at size `base_n` and compares the
/// fractions with the q-free member.
pub fn q_invariance(
    base_n: usize,
    q_values: &[Rational],
    kind: QFamily,
) -> Result<QInvarianceReport> {
    if q_values.is_empty() {
        return Err(Error::bounds("q_invariance needs at least one q"));
    }
    let base = kind.base(base_n);
    let reference = solve_exact(&build(&base)?)?;
    let members = q_values
        .iter()
        .map(|q| {
            let f = kind.with_q(base_n, q.clone());
            let pi = solve_exact(&build(&f)?)?;
            Ok((f, pi == reference))
        })
        .collect::<Result<Vec<_>>>()?;
    let all_identical = members.iter().all(|(_, ok)| *ok);
    Ok(QInvarianceReport {
        base,
        reference,
        members,
        all_identical,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationRow {
    pub n: usize,
    /// Certified upper bound on the L∞ gap over the leading window.
    pub gap: Rational,
}

impl TruncationRow {
    pub fn gap_f64(&self) -> f64 {
        to_f64(&self.gap)
    }
}

/// Exact stationary vector of the `n`-state truncation.
pub fn truncated_solution(n: usize) -> Result<SteadyStateVector> {
    solve_exact(&build(&ChainFamily::TruncatedInfinite(n))?)
}

/// Distance between the truncated chains and the infinite chain over the
/// first `min(n, 8)` states, at the default precision.
pub fn truncation_convergence(sizes: &[usize]) -> Result<Vec<TruncationRow>> {
    truncation_convergence_with_digits(sizes, DEFAULT_DIGITS)
}

pub fn truncation_convergence_with_digits(
    sizes: &[usize],
    digits: u32,
) -> Result<Vec<TruncationRow>> {
    if sizes.is_empty() {
        return Err(Error::bounds(
            "truncation_convergence needs at least one size",
        ));
    }
    let limit = infinite_steady_state(TRUNCATION_WINDOW);
    let limit: Vec<Enclosure> = limit.iter().map(|x| x.enclose(digits)).collect();
    sizes
        .iter()
        .map(|&n| {
            let pi = truncated_solution(n)?;
            let gap = pi
                .probs
                .iter()
                .zip(&limit)
                .map(|(p, e)| Enclosure::point(p.clone()).distance_upper(e))
                .max()
                .unwrap_or_else(Rational::zero);
            Ok(TruncationRow { n, gap })
        })
        .collect()
}

/// Right-hand side of `π_i = (B_{i+1} - B_i)·π_0 - 4B_i`.
fn recursion_rhs<T>(i: usize, pi0: &T, b: &[Integer], lift: impl Fn(&Integer) -> T) -> T
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Sub<&'a T, Output = T>,
{
    let coeff = lift(&(&b[i + 1] - &b[i]));
    let offset = lift(&(Integer::from(4) * &b[i]));
    &(&coeff * pi0) - &offset
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecursionCheck {
    pub n: usize,
    /// `|π_i - ((B_{i+1}-B_i)π_0 - 4B_i)|` for `i = 1..=count`.
    pub residuals: Vec<Rational>,
    /// Truncation gap at `n`, the admitted tolerance.
    pub bound: Rational,
    pub holds: bool,
}

/// Checks the unnormalized recursion on the exact `n`-state truncation.
pub fn recursion_check(n: usize, count: usize) -> Result<RecursionCheck> {
    if count == 0 || count >= n {
        return Err(Error::bounds(format!(
            "recursion check needs 1 <= count < n, got count={count}, n={n}"
        )));
    }
    let pi = truncated_solution(n)?;
    let b = sequence(SequenceKind::Balancing, count + 2);
    let residuals: Vec<Rational> = (1..=count)
        .map(|i| (&pi.probs[i] - &recursion_rhs(i, &pi.probs[0], &b, rat_int)).abs())
        .collect();
    let bound = truncation_convergence(&[n])?[0].gap.clone();
    let holds = residuals.iter().all(|r| r <= &bound);
    Ok(RecursionCheck {
        n,
        residuals,
        bound,
        holds,
    })
}

pub fn unnormalized_recursion_check(n: usize, count: usize) -> bool {
    recursion_check(n, count).map(|c| c.holds).unwrap_or(false)
}

/// The same recursion on the exact infinite-chain values `β^i - β^{i+1}`,
/// checked in `Z[√2]` with no tolerance.
pub fn infinite_recursion_check(count: usize) -> bool {
    let pi = infinite_steady_state(count + 1);
    let b = sequence(SequenceKind::Balancing, count + 2);
    (1..=count).all(|i| pi[i] == recursion_rhs(i, &pi[0], &b, |x| QuadInt::from_int(x.clone())))
}

/// Outcome of the sequence identity checks for indices up to some bound.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdentityReport {
    pub max_n: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Balancing/cobalancing square tests, the partial-sum identity, the Pell
/// links and the 2×2 power structure, all for `n ≤ max_n`.
pub fn identity_suite(max_n: usize) -> IdentityReport {
    let bal = sequence(SequenceKind::Balancing, max_n + 2);
    let luc = sequence(SequenceKind::LucasBalancing, max_n + 2);
    let cob = sequence(SequenceKind::Cobalancing, max_n + 2);
    let lcob = sequence(SequenceKind::LucasCobalancing, max_n + 2);
    let mut failures = Vec::new();
    for n in 0..=max_n {
        if is_balancing(&bal[n]).as_ref() != Some(&luc[n]) {
            failures.push(format!("8B_{n}^2+1 is not C_{n}^2"));
        }
        let expected = if n == 0 { &lcob[0] } else { &lcob[n - 1] };
        if is_cobalancing(&cob[n]).as_ref() != Some(expected) {
            failures.push(format!("8b_{n}^2+8b_{n}+1 witness mismatch"));
        }
        if n >= 1 && !check_sum_identity(n) {
            failures.push(format!("2(B_1+…+B_{}) != b_{n}", n - 1));
        }
        if check_pell_links(n) != (true, true) {
            failures.push(format!("Pell links fail at n={n}"));
        }
        if n >= 1 && balancing_matrix_power(n) != balancing_matrix_from_terms(n) {
            failures.push(format!("2x2 power structure fails at n={n}"));
        }
    }
    IdentityReport { max_n, failures }
}

/// Every entry of `[[6,1],[-1,0]]^n` as stated with a `+B_{n-1}` corner;
/// kept to document that this form only holds at `n = 1`.
pub fn literal_corner_form_holds(n: usize) -> bool {
    let p = balancing_matrix_power(n);
    let b = sequence(SequenceKind::Balancing, n + 2);
    p[0][0] == b[n + 1] && p[0][1] == b[n] && p[1][0] == -&b[n] && p[1][1] == b[n - 1]
}

/// Everything `verify --all` runs.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub reports: Vec<VerificationReport>,
    pub q_checks: Vec<QInvarianceReport>,
    pub beta_identity_max_n: usize,
    pub beta_identity_ok: bool,
    pub identities: IdentityReport,
    pub truncation: Vec<TruncationRow>,
    pub infinite_recursion_ok: bool,
}

impl SuiteReport {
    pub fn all_green(&self) -> bool {
        self.reports.iter().all(|r| r.exact_match)
            && self.q_checks.iter().all(|q| q.all_identical)
            && self.beta_identity_ok
            && self.identities.all_hold()
            && self.infinite_recursion_ok
            && self.truncation.windows(2).all(|w| w[1].gap < w[0].gap)
    }
}

/// Balancing-like coefficients exercised by the suite.
pub const SUITE_COEFFICIENTS: [u32; 5] = [2, 3, 4, 6, 10];

/// All families for `n` in `3..=max_n`, q-invariance at `n = 10` (or
/// `max_n` if smaller), `β`-power identity for `n ≤ 100`, sequence
/// identities for `n ≤ 50` and the truncation study.
pub fn run_suite(max_n: usize) -> Result<SuiteReport> {
    if max_n < 3 {
        return Err(Error::bounds(format!(
            "max_n must be at least 3, got {max_n}"
        )));
    }
    let mut families = Vec::new();
    for n in 3..=max_n {
        families.push(ChainFamily::BalancingChain(n));
        families.push(ChainFamily::PellRatioChain(n));
        families.push(ChainFamily::LucasChain(n));
        if n >= 4 {
            families.push(ChainFamily::LucasCobalancingChain(n));
        }
        for a in SUITE_COEFFICIENTS {
            families.push(ChainFamily::BalancingLikeChain(n, a));
        }
    }
    let reports = families
        .iter()
        .map(verify_family)
        .collect::<Result<Vec<_>>>()?;

    let qn = max_n.min(10);
    let mut q_checks = Vec::new();
    for kind in [
        QFamily::Balancing,
        QFamily::Lucas,
        QFamily::TruncatedInfinite,
        QFamily::BalancingLike(4),
    ] {
        q_checks.push(q_invariance(qn, &kind.standard_qs(), kind)?);
    }

    let beta_identity_max_n = 100;
    let beta_identity_ok = (1..=beta_identity_max_n).all(beta_power_identity);
    let sizes: Vec<usize> = (3..=max_n.min(20)).collect();
    Ok(SuiteReport {
        reports,
        q_checks,
        beta_identity_max_n,
        beta_identity_ok,
        identities: identity_suite(50),
        truncation: truncation_convergence(&sizes)?,
        infinite_recursion_ok: infinite_recursion_check(TRUNCATION_WINDOW),
    })
}

/// `true` when every stationary entry of a truncated solution is positive
/// and the entries sum to one.
pub fn is_distribution(v: &SteadyStateVector) -> bool {
    v.probs.iter().all(|p| !p.is_negative()) && v.sum().is_one()
}
