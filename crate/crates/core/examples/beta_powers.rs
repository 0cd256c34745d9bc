//! Exact arithmetic in Z[√2]: powers of β = 3 - 2√2 and the infinite reset
//! chain's stationary vector.
//!
//! cargo run --example beta_powers

use balancing_chains::quad_ring::{beta_power_identity, infinite_steady_state, QuadInt};
use balancing_chains::rational::to_f64;

fn main() {
    let beta = QuadInt::beta();
    for n in [1, 2, 5, 10] {
        let p = beta.pow(n);
        println!(
            "beta^{n:<2} = {:<24} norm {}  ~ {:.6e}",
            p.to_string(),
            p.norm(),
            p.to_f64()
        );
    }

    let ok = (1..=100).all(beta_power_identity);
    println!("\nbeta^(n+1) = beta*B_(n+1) - B_n for n = 1..100: {ok}");

    println!("\ninfinite chain, pi_i = beta^i - beta^(i+1):");
    for (i, p) in infinite_steady_state(5).iter().enumerate() {
        let e = p.enclose(50);
        println!(
            "  pi_{i} = {:<16} ~ {:.15e} (enclosure width {:.1e})",
            p.to_string(),
            e.midpoint_f64(),
            to_f64(&e.width())
        );
    }
}
