//! Three-valued bounded evaluation: unbounded number quantifiers are
//! searched up to N, sequence quantifiers are never certified.

use negint::model::{eval_bounded, Profile};
use negint::oracle::parse_env;
use negint::syntax::parse;

fn main() {
    let env = parse_env("$a = table {5:1} default 0\n$r = prterm sg(monus(proj(z, 1), proj(z, 0)))\n").expect("env parses");
    let profile = Profile::with_bound(50);
    for text in [
        "E x. $a(x) != 0",
        "A x. $a(x) = 0",
        "A x <= 10. E y <= 10. $r(pair(x, y)) = 0",
        "E $b. $b(0) = 1",
        "A $b. $b(0) = $b(0)",
    ] {
        let f = parse(text).expect("formula parses");
        match eval_bounded(&f, &env, &profile) {
            Ok(v) => println!("{text:<42} {v}"),
            Err(e) => println!("{text:<42} error: {e}"),
        }
    }
}
