//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every expected value is recomputed here from plain recurrences
//! instead of being taken from the library.

use std::time::Instant;

use balancing_chains::chain::{build, ChainFamily};
use balancing_chains::quad_ring::{beta_power_identity, infinite_steady_state, QuadInt};
use balancing_chains::rational::{pow10, rat, to_f64, Integer, Rational};
use balancing_chains::steady_state::{
    power_iteration, simulate, solve_exact, squaring_convergence,
};
use balancing_chains::verifier::{
    identity_suite, literal_corner_form_holds, q_invariance, recursion_check,
    truncation_convergence, verify_family, QFamily,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

/// `x[k+1] = a·x[k] + lag·x[k-1] + shift` as big integers.
fn rec(a: i64, lag: i64, shift: i64, x0: i64, x1: i64, count: usize) -> Vec<Integer> {
    let mut v: Vec<Integer> = vec![x0.into(), x1.into()];
    while v.len() < count {
        let k = v.len();
        let next = Integer::from(a) * &v[k - 1] + Integer::from(lag) * &v[k - 2] + shift;
        v.push(next);
    }
    v.truncate(count);
    v
}

fn bal(count: usize) -> Vec<Integer> {
    rec(6, -1, 0, 0, 1, count)
}

fn fraction(num: &Integer, den: &Integer) -> Rational {
    Rational::new(num.clone(), den.clone())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn solved(f: &ChainFamily) -> Result<Vec<Rational>, String> {
    let m = build(f).map_err(|e| e.to_string())?;
    Ok(solve_exact(&m).map_err(|e| e.to_string())?.probs)
}

fn criterion_1() -> Check {
    let b = bal(42);
    let cob = rec(6, -1, 2, 0, 0, 42);
    for n in 3..=40 {
        let expected: Vec<Rational> = (0..n)
            .map(|i| fraction(&(Integer::from(2) * &b[n - i]), &cob[n + 1]))
            .collect();
        let got = solved(&ChainFamily::BalancingChain(n))?;
        ensure(got == expected, || {
            format!("balancing chain differs at n={n}")
        })?;
    }
    Ok("n=3..40 exact".into())
}

fn criterion_2() -> Check {
    let kinds = [
        QFamily::Balancing,
        QFamily::Lucas,
        QFamily::TruncatedInfinite,
        QFamily::BalancingLike(2),
        QFamily::BalancingLike(3),
        QFamily::BalancingLike(4),
        QFamily::BalancingLike(10),
    ];
    let mut members = 0;
    for kind in kinds {
        let c = i64::from(kind.coefficient());
        let qs = [rat(1, c), rat(1, c + 1), rat(1, 100)];
        let report = q_invariance(10, &qs, kind).map_err(|e| e.to_string())?;
        let base = solved(&kind.base(10))?;
        ensure(report.reference.probs == base, || {
            format!("{kind:?}: reference drift")
        })?;
        for q in &qs {
            let v = solved(&kind.with_q(10, q.clone()))?;
            ensure(v == base, || format!("{kind:?} differs at q={q}"))?;
            members += 1;
        }
    }
    Ok(format!(
        "{members} q-members identical to their q-free family"
    ))
}

fn criterion_3() -> Check {
    let b = bal(42);
    let pell = rec(2, 1, 0, 0, 1, 82);
    for n in 3..=40 {
        let got = solved(&ChainFamily::PellRatioChain(n))?;
        for (i, p) in got.iter().enumerate() {
            let num = &b[n - i] - &b[n - i - 1];
            ensure(*p == fraction(&num, &b[n]), || format!("n={n}, i={i}"))?;
            let scaled = p * Rational::from_integer(b[n].clone());
            ensure(
                scaled == Rational::from_integer(pell[2 * (n - i) - 1].clone()),
                || format!("numerator is not P_{} at n={n}", 2 * (n - i) - 1),
            )?;
        }
    }
    Ok("n=3..40 exact, numerators odd-indexed Pell".into())
}

fn proportional_to(v: &[Rational], weights: &[Integer]) -> bool {
    let last = v.last().cloned().unwrap_or_else(Rational::zero);
    let wlast = Rational::from_integer(weights.last().cloned().unwrap_or_default());
    !last.is_zero()
        && v.iter()
            .zip(weights)
            .all(|(p, w)| p / &last * &wlast == Rational::from_integer(w.clone()))
}

fn criterion_4() -> Check {
    let luc = rec(6, -1, 0, 1, 3, 41);
    let lcob = rec(6, -1, 0, 1, 7, 41);
    for n in 3..=40 {
        let w: Vec<Integer> = (0..n).rev().map(|k| luc[k].clone()).collect();
        ensure(
            proportional_to(&solved(&ChainFamily::LucasChain(n))?, &w),
            || format!("Lucas chain not proportional to C at n={n}"),
        )?;
        if n >= 4 {
            let w: Vec<Integer> = (0..n).rev().map(|k| lcob[k].clone()).collect();
            let f = ChainFamily::LucasCobalancingChain(n);
            ensure(proportional_to(&solved(&f)?, &w), || {
                format!("Lucas-cobalancing chain not proportional to c at n={n}")
            })?;
        }
    }
    for f in [
        ChainFamily::LucasChain(12),
        ChainFamily::LucasCobalancingChain(12),
    ] {
        let r = verify_family(&f).map_err(|e| e.to_string())?;
        ensure(r.exact_match, || format!("{f}: verifier mismatch"))?;
        ensure(r.notes.contains("does not match (off by one index"), || {
            format!("{f}: notes lack the index discrepancy: {}", r.notes)
        })?;
    }
    Ok("n<=40 proportional, index discrepancy noted".into())
}

fn criterion_5() -> Check {
    for a in [2u32, 3, 4, 6, 10] {
        let x = rec(i64::from(a), -1, 0, 0, 1, 27);
        for n in 3..=25 {
            let total: Integer = x[1..=n].iter().sum();
            let expected: Vec<Rational> = (0..n).map(|i| fraction(&x[n - i], &total)).collect();
            let got = solved(&ChainFamily::BalancingLikeChain(n, a))?;
            ensure(got == expected, || format!("A={a}, n={n}"))?;
            if a == 6 {
                ensure(got == solved(&ChainFamily::BalancingChain(n))?, || {
                    format!("A=6 differs from the balancing chain at n={n}")
                })?;
            }
            if a == 3 {
                let fib = rec(1, 1, 0, 0, 1, 2 * n + 1);
                let last = got[n - 1].clone();
                for (i, p) in got.iter().enumerate() {
                    ensure(
                        p / &last == Rational::from_integer(fib[2 * (n - i)].clone()),
                        || format!("A=3 numerator at n={n}, i={i} is not F_{}", 2 * (n - i)),
                    )?;
                }
            }
        }
    }
    Ok("A in {2,3,4,6,10}, n=3..25 exact".into())
}

fn criterion_6() -> Check {
    let rows = truncation_convergence(&[10, 20]).map_err(|e| e.to_string())?;
    let one_over = |d: u32| Rational::new(Integer::one(), pow10(d));
    ensure(rows[0].gap < one_over(7), || {
        format!("gap(10) = {}", rows[0].gap_f64())
    })?;
    ensure(rows[1].gap < one_over(14), || {
        format!("gap(20) = {}", rows[1].gap_f64())
    })?;

    // β^i by hand in Z[√2]: (a + b√2)(3 - 2√2) = (3a - 4b) + (3b - 2a)√2.
    let mut powers = vec![(Integer::one(), Integer::zero())];
    for _ in 0..4 {
        let (a, b) = powers.last().cloned().unwrap();
        powers.push((
            Integer::from(3) * &a - Integer::from(4) * &b,
            Integer::from(3) * &b - Integer::from(2) * &a,
        ));
    }
    let pi: Vec<QuadInt> = (0..4)
        .map(|i| {
            QuadInt::new(
                &powers[i].0 - &powers[i + 1].0,
                &powers[i].1 - &powers[i + 1].1,
            )
        })
        .collect();
    ensure(pi == infinite_steady_state(4), || {
        "infinite vector differs".into()
    })?;
    for (i, (k, c)) in [(1, (5, 4)), (2, (29, 24)), (3, (169, 140))] {
        let rhs = &pi[0].scale(&Integer::from(k)) - &QuadInt::from_int(Integer::from(c));
        ensure(pi[i] == rhs, || {
            format!("pi_{i} != {k}pi_0 - {c} in Z[sqrt2]")
        })?;
        let width = pi[i].enclose(50).distance_upper(&rhs.enclose(50));
        ensure(width < one_over(14), || {
            format!("pi_{i} rendering gap too wide")
        })?;
    }
    let check = recursion_check(20, 3).map_err(|e| e.to_string())?;
    ensure(check.holds, || {
        "recursion fails on the n=20 truncation".into()
    })?;
    Ok(format!(
        "gap(10)={:.3e}, gap(20)={:.3e}, recursion exact",
        rows[0].gap_f64(),
        rows[1].gap_f64()
    ))
}

fn criterion_7() -> Check {
    let b = bal(103);
    let c = rec(6, -1, 0, 1, 3, 103);
    let beta = QuadInt::beta();
    let mut power = QuadInt::one();
    for n in 0..=100usize {
        power = &power * &beta;
        // β^{n+1} = C_{n+1} - 2B_{n+1}√2
        let expected = QuadInt::new(c[n + 1].clone(), Integer::from(-2) * &b[n + 1]);
        ensure(power == expected, || format!("beta^{} wrong", n + 1))?;
        if n >= 1 {
            ensure(beta_power_identity(n), || {
                format!("identity fails at n={n}")
            })?;
        }
    }
    Ok("n=1..100 exact in Z[sqrt2]".into())
}

fn criterion_8() -> Check {
    let report = identity_suite(50);
    ensure(report.all_hold(), || format!("{:?}", report.failures))?;
    let b = bal(52);
    let c = rec(6, -1, 0, 1, 3, 52);
    let cob = rec(6, -1, 2, 0, 0, 52);
    let lcob = rec(6, -1, 0, 1, 7, 52);
    let pell = rec(2, 1, 0, 0, 1, 104);
    let eight = Integer::from(8);
    for n in 0..=50 {
        ensure(&c[n] * &c[n] == &eight * &b[n] * &b[n] + 1, || {
            format!("C_{n}")
        })?;
        let w = if n == 0 { &lcob[0] } else { &lcob[n - 1] };
        ensure(
            w * w == &eight * &cob[n] * &cob[n] + &eight * &cob[n] + 1,
            || format!("b_{n}"),
        )?;
        if n >= 1 {
            let s: Integer = b[1..n].iter().sum();
            ensure(Integer::from(2) * s == cob[n], || {
                format!("partial sum at {n}")
            })?;
        }
        ensure(pell[2 * n] == Integer::from(2) * &b[n], || {
            format!("P_2n at {n}")
        })?;
        ensure(pell[2 * n + 1] == &b[n + 1] - &b[n], || {
            format!("P_2n+1 at {n}")
        })?;
    }
    let literal_failures = (2..=50).filter(|&n| !literal_corner_form_holds(n)).count();
    ensure(literal_failures == 49, || {
        "literal corner form unexpectedly holds".into()
    })?;
    Ok("n<=50 exact; 2x2 powers are [[B_{n+1},B_n],[-B_n,-B_{n-1}]] (a +B_{n-1} corner fails for all n=2..50)".into())
}

fn random_instance(rng: &mut ChaCha8Rng) -> ChainFamily {
    let n = rng.gen_range(3..=10usize);
    let a = [2u32, 3, 4, 6, 10][rng.gen_range(0..5)];
    let j = rng.gen_range(0..=3i64);
    let q = |c: i64| rat(1, c + j);
    match rng.gen_range(0..9) {
        0 => ChainFamily::BalancingChain(n),
        1 => ChainFamily::BalancingChainQ(n, q(6)),
        2 => ChainFamily::PellRatioChain(n),
        3 => ChainFamily::LucasChain(n),
        4 => ChainFamily::LucasChainQ(n, q(6)),
        5 => ChainFamily::LucasCobalancingChain(n.max(4)),
        6 => ChainFamily::TruncatedInfiniteQ(n, q(6)),
        7 => ChainFamily::BalancingLikeChain(n, a),
        _ => ChainFamily::BalancingLikeChainQ(n, a, q(i64::from(a))),
    }
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_517);
    let (mut worst_power, mut worst_sim, mut most_squarings) = (0.0f64, 0.0f64, 0u32);
    for _ in 0..20 {
        let f = random_instance(&mut rng);
        let m = build(&f).map_err(|e| e.to_string())?;
        let pi = solve_exact(&m).map_err(|e| e.to_string())?;
        let exact: Vec<f64> = pi.probs.iter().map(to_f64).collect();
        let linf = |v: &[f64]| {
            v.iter()
                .zip(&exact)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };

        let p = power_iteration(&m, 1e-12, 1_000_000).map_err(|e| format!("{f}: {e}"))?;
        let d = linf(&p.probs);
        ensure(d < 1e-10, || format!("{f}: power iteration off by {d:e}"))?;
        worst_power = worst_power.max(d);

        let trace = squaring_convergence(&m, &pi, 1e-9, 64);
        let k = trace
            .converged_at
            .ok_or_else(|| format!("{f}: P^(2^64) rows not within 1e-9"))?;
        most_squarings = most_squarings.max(k);

        for seed in [1u64, 2, 3] {
            let s = simulate(&m, 1_000_000, seed, 0).map_err(|e| e.to_string())?;
            let d = linf(&s.empirical);
            ensure(d < 1e-2, || {
                format!("{f}: simulation seed {seed} off by {d}")
            })?;
            worst_sim = worst_sim.max(d);
        }
    }
    Ok(format!(
        "20 instances; power {worst_power:.1e}, squarings <= {most_squarings}, simulation {worst_sim:.1e}"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("balancing chain closed form", criterion_1),
        ("q-invariance", criterion_2),
        ("Pell-ratio chain", criterion_3),
        ("Lucas and Lucas-cobalancing chains", criterion_4),
        ("balancing-like chains", criterion_5),
        ("truncation limit and recursion", criterion_6),
        ("beta-power identity", criterion_7),
        ("sequence identity suite", criterion_8),
        ("cross-method agreement", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
