//! How fast the truncated chains approach the infinite one, and how fast
//! B_(n-1)/B_n approaches β.
//!
//! cargo run --example silver_ratio_limit

use balancing_chains::quad_ring::silver_ratio_gap;
use balancing_chains::rational::to_f64;
use balancing_chains::verifier::{recursion_check, truncation_convergence};

fn main() {
    println!("truncation gap over the first 8 states (certified, 50 digits):");
    let sizes: Vec<usize> = (3..=12).collect();
    let rows = truncation_convergence(&sizes).unwrap();
    for w in rows.windows(2) {
        println!(
            "  n={:<3} gap {:.3e}   next/this {:.4}",
            w[0].n,
            w[0].gap_f64(),
            w[1].gap_f64() / w[0].gap_f64()
        );
    }
    let last = rows.last().unwrap();
    println!("  n={:<3} gap {:.3e}", last.n, last.gap_f64());
    println!(
        "  (beta^2 = {:.4})",
        (3.0 - 2.0 * std::f64::consts::SQRT_2).powi(2)
    );

    println!("\n|B_(n-1)/B_n - beta|:");
    for n in 2..=8 {
        println!("  n={n} {:.3e}", to_f64(&silver_ratio_gap(n)));
    }

    let c = recursion_check(15, 5).unwrap();
    println!(
        "\npi_i = (B_(i+1)-B_i) pi_0 - 4B_i on the n=15 truncation, i=1..5: {}",
        c.holds
    );
}
