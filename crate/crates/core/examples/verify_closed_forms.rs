//! Closed-form stationary vectors checked against the exact solver, the
//! q-invariance of the q families, and the full suite.
//!
//! cargo run --release --example verify_closed_forms

use balancing_chains::chain::ChainFamily;
use balancing_chains::verifier::{q_invariance, run_suite, verify_family, QFamily};

fn main() {
    for f in [
        ChainFamily::BalancingChain(6),
        ChainFamily::LucasChain(6),
        ChainFamily::LucasCobalancingChain(6),
    ] {
        let r = verify_family(&f).unwrap();
        println!("{f}: exact_match={} max_gap={}", r.exact_match, r.max_gap);
        for note in r.notes.split("; ") {
            println!("  {note}");
        }
    }

    let kind = QFamily::BalancingLike(4);
    let r = q_invariance(10, &kind.standard_qs(), kind).unwrap();
    println!("\nq-invariance of {}: {}", r.base, r.all_identical);

    let suite = run_suite(20).unwrap();
    println!(
        "\nsuite up to n=20: {} family instances, all green: {}",
        suite.reports.len(),
        suite.all_green()
    );
}
