//! Generates a kernel script proving `~~A <-> A` for a negative formula
//! (default: `A y. x = y -> y = x`) and checks it.

use negint::kernel::{stability_script, Kernel};
use negint::syntax::parse;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "A y. x = y -> y = x".into());
    let f = parse(&text).expect("formula parses");
    let script = match stability_script(&f) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    print!("{script}");
    let judgment = Kernel::standard().check(&script).expect("known theory");
    eprintln!("{judgment}");
    std::process::exit(i32::from(!judgment.is_checked()));
}
