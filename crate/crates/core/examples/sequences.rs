//! Sequence terms and the square tests that define them.
//!
//! cargo run --example sequences

use balancing_chains::sequence::{is_balancing, is_cobalancing, sequence, SequenceKind};

fn main() {
    for kind in [
        SequenceKind::Balancing,
        SequenceKind::LucasBalancing,
        SequenceKind::Cobalancing,
        SequenceKind::LucasCobalancing,
        SequenceKind::Pell,
        SequenceKind::BalancingLike(3),
    ] {
        let terms: Vec<String> = sequence(kind, 8).iter().map(|t| t.to_string()).collect();
        println!("{:>20}: {}", kind.to_string(), terms.join(", "));
    }

    let b = sequence(SequenceKind::Balancing, 30);
    let witness = is_balancing(&b[29]).expect("B_29 is a balancing number");
    println!("\nB_29 = {}\n  sqrt(8B^2+1) = {witness}", b[29]);

    for n in [14, 15, 84] {
        match is_cobalancing(&n.into()) {
            Some(w) => println!("{n} is cobalancing, sqrt(8n^2+8n+1) = {w}"),
            None => println!("{n} is not cobalancing"),
        }
    }
}
