//! Prime-power sequence codes: encoding, projections, length,
//! concatenation and prefix codes.

use negint::arith::{bar_code, SeqCode};

fn main() {
    let u = SeqCode::encode(&[1, 2]);
    let v = SeqCode::encode(&[3]);
    println!("<> = {}", SeqCode::empty().0);
    println!("<1, 2> = {}, lh = {}, entries = {:?}", u.0, u.lh(), u.entries());
    let w = u.concat(&v).expect("both are sequence codes");
    println!("<1, 2> * <3> = {} = <{:?}>", w.0, w.entries());
    let w10 = SeqCode::from_u64(10);
    println!("10 = 2 * 5: lh = {}, Seq = {}", w10.lh(), w10.is_seq());
    let prefix = bar_code(|i| i % 2, 4);
    println!("prefix of 0, 1, 0, 1 of length 4 = {} with entries {:?}", prefix.0, prefix.entries());
}
