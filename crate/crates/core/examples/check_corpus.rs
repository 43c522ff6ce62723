//! Checks every `*.proof` script in a directory (default: the shipped corpus).

use std::path::PathBuf;

use negint::kernel::{check_corpus, Kernel};

fn main() {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus")));
    let report = check_corpus(&Kernel::standard(), &dir).expect("readable corpus directory");
    println!("{report}");
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
