//! Builds a proof of the negative translation of excluded middle,
//! `~(~?A & ~~?A)`, with the untrusted builder, then checks the emitted
//! script with the kernel.

use negint::kernel::builder::{and_l, and_r, compile, hyp, neg_intro};
use negint::kernel::Kernel;
use negint::syntax::parse;

fn main() {
    let h = parse("~?A & ~~?A").unwrap();
    let proof = neg_intro(&h, &and_l(&hyp(&h)).unwrap(), &and_r(&hyp(&h)).unwrap()).unwrap();
    let script = compile(&proof, "PL", &parse("~(~?A & ~~?A)").unwrap()).unwrap();
    print!("{script}");
    let judgment = Kernel::standard().check(&script).unwrap();
    eprintln!("{judgment}");
    assert!(judgment.is_checked());
}
