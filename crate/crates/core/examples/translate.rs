//! Prints the negative translation of each formula given on the command
//! line (default: the two introductory examples) under both atom policies.

use negint::syntax::{parse, print};
use negint::translate::{is_negative, negative_translate, AtomPolicy};

fn main() {
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = vec![
            "A x. (A y. $a(pair(x, y)) = 0) \\/ ~A y. $a(pair(x, y)) = 0".into(),
            "E $b. A x. $b(x) = 0 <-> A y. $a(pair(x, y)) = 0".into(),
        ];
    }
    for text in inputs {
        let f = match parse(&text) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("{text}: {e}");
                continue;
            }
        };
        println!("formula   {}", print(&f));
        for policy in [AtomPolicy::Identity, AtomPolicy::Strict] {
            let g = negative_translate(&f, policy);
            assert!(is_negative(&g));
            println!("{:<9} {}", format!("{policy:?}").to_lowercase(), print(&g));
        }
    }
}
