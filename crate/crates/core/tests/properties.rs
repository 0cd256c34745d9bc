//! Property tests against small independent oracles (i128 recurrences, a
//! brute-force square search and a tiny Ratio<i128> solver).

use balancing_chains::chain::{build, validate, ChainFamily};
use balancing_chains::quad_ring::{qpow, QuadInt};
use balancing_chains::rational::{format_rational, parse_rational, pow10, rat, Integer, Rational};
use balancing_chains::sequence::{is_balancing, is_cobalancing, sequence, term, SequenceKind};
use balancing_chains::steady_state::{is_stationary, n_step, solve_exact};
use balancing_chains::verifier::{closed_form, verify_family};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn i128_terms(a: i128, lag: i128, shift: i128, x0: i128, x1: i128, count: usize) -> Vec<i128> {
    let mut v = vec![x0, x1];
    while v.len() < count {
        let k = v.len();
        v.push(a * v[k - 1] + lag * v[k - 2] + shift);
    }
    v.truncate(count);
    v
}

fn big(v: &[i128]) -> Vec<Integer> {
    v.iter().map(|&x| Integer::from(x)).collect()
}

#[test]
fn sequences_match_i128_oracle() {
    let cases = [
        (SequenceKind::Balancing, i128_terms(6, -1, 0, 0, 1, 40)),
        (SequenceKind::LucasBalancing, i128_terms(6, -1, 0, 1, 3, 40)),
        (SequenceKind::Cobalancing, i128_terms(6, -1, 2, 0, 0, 40)),
        (
            SequenceKind::LucasCobalancing,
            i128_terms(6, -1, 0, 1, 7, 40),
        ),
        (SequenceKind::Pell, i128_terms(2, 1, 0, 0, 1, 80)),
        (
            SequenceKind::BalancingLike(3),
            i128_terms(3, -1, 0, 0, 1, 60),
        ),
    ];
    for (kind, expected) in cases {
        assert_eq!(sequence(kind, expected.len()), big(&expected), "{kind}");
    }
}

#[test]
fn square_tests_match_brute_force() {
    let bal: Vec<i128> = i128_terms(6, -1, 0, 0, 1, 12);
    let cob: Vec<i128> = i128_terms(6, -1, 2, 0, 0, 12);
    let square = |v: i128| (0..=v).take_while(|r| r * r <= v).any(|r| r * r == v);
    for n in 0..3000i128 {
        let balancing = square(8 * n * n + 1);
        let cobalancing = square(8 * n * n + 8 * n + 1);
        assert_eq!(is_balancing(&n.into()).is_some(), balancing, "{n}");
        assert_eq!(is_cobalancing(&n.into()).is_some(), cobalancing, "{n}");
        assert_eq!(balancing, bal.contains(&n), "{n}");
        assert_eq!(cobalancing, cob.contains(&n), "{n}");
    }
}

type R = Ratio<i128>;

/// Plain Gauss-Jordan on `(Pᵀ - I)` with the first equation replaced by
/// `Σπ = 1`, first nonzero pivot.
fn small_solver(p: &[Vec<R>]) -> Vec<R> {
    let n = p.len();
    let mut a: Vec<Vec<R>> = (0..n)
        .map(|i| {
            let mut row: Vec<R> = (0..n)
                .map(|j| p[j][i] - if i == j { R::one() } else { R::zero() })
                .collect();
            row.push(R::zero());
            row
        })
        .collect();
    a[0] = vec![R::one(); n + 1];
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("nonsingular");
        a.swap(col, piv);
        let d = a[col][col];
        for x in a[col].iter_mut() {
            *x /= d;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, v) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * v;
                }
            }
        }
    }
    a.iter().map(|row| row[n]).collect()
}

fn to_small(x: &Rational) -> R {
    R::new(
        i128::try_from(x.numer()).unwrap(),
        i128::try_from(x.denom()).unwrap(),
    )
}

fn family_strategy() -> impl Strategy<Value = ChainFamily> {
    (
        3usize..=7,
        0usize..10,
        prop::sample::select(vec![2u32, 3, 4, 6, 10]),
        0i64..4,
    )
        .prop_map(|(n, kind, a, j)| match kind {
            0 => ChainFamily::BalancingChain(n),
            1 => ChainFamily::BalancingChainQ(n, rat(1, 6 + j)),
            2 => ChainFamily::PellRatioChain(n),
            3 => ChainFamily::LucasChain(n),
            4 => ChainFamily::LucasChainQ(n, rat(1, 6 + j)),
            5 => ChainFamily::LucasCobalancingChain(n.max(4)),
            6 => ChainFamily::TruncatedInfinite(n),
            7 => ChainFamily::TruncatedInfiniteQ(n, rat(1, 6 + j)),
            8 => ChainFamily::BalancingLikeChain(n, a),
            _ => ChainFamily::BalancingLikeChainQ(n, a, rat(1, i64::from(a) + j)),
        })
}

fn beta_oracle(n: u32) -> (i128, i128) {
    (0..n).fold((1, 0), |(a, b), _| (3 * a - 4 * b, 3 * b - 2 * a))
}

proptest! {
    #[test]
    fn solver_matches_small_oracle(f in family_strategy()) {
        let m = build(&f).unwrap();
        let rows: Vec<Vec<R>> = m.to_rows().iter().map(|r| r.iter().map(to_small).collect()).collect();
        let ours: Vec<R> = solve_exact(&m).unwrap().probs.iter().map(to_small).collect();
        prop_assert_eq!(ours, small_solver(&rows));
    }

    #[test]
    fn families_are_valid_and_fixed_points(f in family_strategy()) {
        let m = build(&f).unwrap();
        prop_assert!(validate(&m).is_ok());
        let pi = solve_exact(&m).unwrap();
        prop_assert!(is_stationary(&m, &pi));
        prop_assert_eq!(pi.sum(), Rational::one());
        prop_assert!(verify_family(&f).unwrap().exact_match);
        prop_assert_eq!(closed_form(&f).unwrap(), pi);
    }

    #[test]
    fn boundary_balance_ratios(n in 4usize..30) {
        let ratio = |f: ChainFamily| {
            let p = solve_exact(&build(&f).unwrap()).unwrap().probs;
            &p[n - 2] / &p[n - 1]
        };
        prop_assert_eq!(ratio(ChainFamily::BalancingChain(n)), rat(6, 1));
        prop_assert_eq!(ratio(ChainFamily::PellRatioChain(n)), rat(5, 1));
        prop_assert_eq!(ratio(ChainFamily::LucasChain(n)), rat(3, 1));
        prop_assert_eq!(ratio(ChainFamily::LucasCobalancingChain(n)), rat(7, 1));
        prop_assert_eq!(ratio(ChainFamily::BalancingLikeChain(n, 9)), rat(9, 1));
    }

    #[test]
    fn n_step_rows_stay_stochastic(f in family_strategy(), k in 1u64..6) {
        let p = n_step(&build(&f).unwrap(), k).unwrap();
        for row in p.to_rows() {
            prop_assert_eq!(row.iter().sum::<Rational>(), Rational::one());
        }
    }

    #[test]
    fn recurrence_holds(n in 1usize..200, a in 2u32..50) {
        for kind in [SequenceKind::Balancing, SequenceKind::LucasBalancing, SequenceKind::LucasCobalancing, SequenceKind::BalancingLike(a)] {
            let coeff = Integer::from(if let SequenceKind::BalancingLike(a) = kind { a } else { 6 });
            prop_assert_eq!(term(kind, n + 1), coeff * term(kind, n) - term(kind, n - 1));
        }
        prop_assert_eq!(
            term(SequenceKind::Cobalancing, n + 1),
            Integer::from(6) * term(SequenceKind::Cobalancing, n) - term(SequenceKind::Cobalancing, n - 1) + 2
        );
    }

    #[test]
    fn norm_is_multiplicative(a in -10i64.pow(9)..10i64.pow(9), b in -10i64.pow(9)..10i64.pow(9),
                              c in -10i64.pow(9)..10i64.pow(9), d in -10i64.pow(9)..10i64.pow(9)) {
        let x = QuadInt::new(a, b);
        let y = QuadInt::new(c, d);
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn beta_powers_are_units(n in 0u32..40) {
        let p = qpow(&QuadInt::beta(), n);
        prop_assert_eq!(p.norm(), Integer::one());
        let (a, b) = beta_oracle(n);
        prop_assert_eq!(p.clone(), QuadInt::new(a, b));
        // β^n = C_n - 2B_n√2
        let expected = QuadInt::new(term(SequenceKind::LucasBalancing, n as usize), Integer::from(-2) * term(SequenceKind::Balancing, n as usize));
        prop_assert_eq!(p.clone(), expected);
        prop_assert!(p.is_positive());
    }

    #[test]
    fn beta_enclosure_contains_float(n in 0u32..30) {
        let p = qpow(&QuadInt::beta(), n);
        // a + b√2 cancels: the width is |b|·10^-digits, not relative to β^n
        let e = p.enclose(50);
        prop_assert_eq!(e.width(), Rational::new(p.b.abs(), pow10(50)));
        let x = (3.0 - 2.0 * std::f64::consts::SQRT_2).powi(n as i32);
        prop_assert!(((p.enclose(80).midpoint_f64() - x) / x).abs() < 1e-9);
    }

    #[test]
    fn rational_round_trip(num in any::<i64>(), den in 1i64..i64::MAX) {
        let r = rat(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
}
