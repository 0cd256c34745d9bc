//! Writing a chain as exact CSV/JSON and reading it back.
//!
//! cargo run --example matrix_io

use balancing_chains::chain::{build, ChainFamily};
use balancing_chains::io::{exact_vector_output, matrix_output, parse_matrix, Format};
use balancing_chains::steady_state::solve_exact;

fn main() {
    let family = ChainFamily::LucasChain(4);
    let m = build(&family).unwrap();

    let csv = matrix_output(&m, family.slug(), Format::Csv);
    let json = matrix_output(&m, family.slug(), Format::Json);
    println!("CSV:\n{csv}");
    println!("JSON:\n{json}");

    for text in [&csv, &json] {
        let back = parse_matrix(text).unwrap();
        assert_eq!(back, m);
        print!(
            "{}",
            exact_vector_output(&solve_exact(&back).unwrap(), Format::Csv)
        );
        println!("--");
    }
}
