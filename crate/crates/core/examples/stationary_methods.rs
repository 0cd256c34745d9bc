//! Three ways to a stationary distribution: exact elimination, power
//! iteration, matrix powers, plus a seeded simulation.
//!
//! cargo run --release --example stationary_methods

use balancing_chains::chain::{build, ChainFamily};
use balancing_chains::rational::rat;
use balancing_chains::steady_state::{
    power_iteration, simulate, solve_exact, squaring_convergence, DEFAULT_MAX_ITER, DEFAULT_TOL,
};

fn main() {
    let family = ChainFamily::LucasChainQ(6, rat(1, 8));
    let m = build(&family).unwrap();
    let exact = solve_exact(&m).unwrap();
    let approx = exact.to_f64();

    println!("{family}");
    let fractions: Vec<String> = exact.probs.iter().map(|p| p.to_string()).collect();
    println!("exact:      {}", fractions.join(", "));

    let p = power_iteration(&m, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    let err = p
        .probs
        .iter()
        .zip(&approx)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!(
        "power:      {} iterations, max error {err:.2e}",
        p.iterations
    );

    let trace = squaring_convergence(&m, &exact, 1e-9, 64);
    println!("P^(2^k):    row deviation by k:");
    for (k, d) in trace.deviations.iter().enumerate() {
        println!("  k={k:<2} {d:.3e}");
    }

    for seed in [1, 2, 3] {
        let s = simulate(&m, 1_000_000, seed, 0).unwrap();
        let err = s
            .empirical
            .iter()
            .zip(&approx)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!(
            "simulate:   seed {seed}, 10^6 steps, max error {err:.2e} ({})",
            s.rng
        );
    }
}
