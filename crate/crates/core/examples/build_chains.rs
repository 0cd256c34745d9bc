//! Building each transition-matrix family and validating it.
//!
//! cargo run --example build_chains

use balancing_chains::chain::{build, validate, ChainFamily, StochasticMatrix};
use balancing_chains::rational::rat;

fn show(m: &StochasticMatrix) {
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>6}")).collect();
        println!("  [{}]", cells.join(" "));
    }
}

fn main() {
    let families = [
        ChainFamily::BalancingChain(4),
        ChainFamily::PellRatioChain(4),
        ChainFamily::LucasChain(4),
        ChainFamily::LucasCobalancingChain(5),
        ChainFamily::BalancingLikeChainQ(4, 3, rat(1, 5)),
    ];
    for f in &families {
        let m = build(f).expect("parameters are in range");
        println!("{f}  ({:?} storage)", m.storage());
        show(&m);
        println!("  {}\n", validate(&m));
    }

    // out-of-range parameters are rejected before anything is built
    let err = build(&ChainFamily::LucasChainQ(5, rat(1, 2))).unwrap_err();
    println!("lucas-q with q = 1/2: {err}");

    let big = build(&ChainFamily::TruncatedInfinite(500)).unwrap();
    println!(
        "truncated-infinite(n=500): {:?} storage, {} nonzero entries",
        big.storage(),
        big.nonzero_count()
    );
}
