//! Lists the syntactic classes of a few formulas, or of those given as arguments.

use negint::syntax::parse;
use negint::translate::classify;

fn main() {
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = ["x = 0", "A x <= 5. E y < x. x = suc(y)", "E y. $a(y) = 0", "A $a. E x. $a(x) = 0", "A x. ~~E y. x = y"]
            .map(String::from)
            .to_vec();
    }
    for text in inputs {
        match parse(&text) {
            Ok(f) => {
                let names: Vec<&str> = classify(&f).into_iter().map(|c| c.name()).collect();
                println!("{text}\n    {}", names.join(" "));
            }
            Err(e) => eprintln!("{text}: {e}"),
        }
    }
}
