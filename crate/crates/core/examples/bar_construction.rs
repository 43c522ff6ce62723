//! The binary sequence rho built from alpha, bar search along zeta, and
//! the coding function gamma.

use negint::arith::{BarView, SeqCode};
use negint::model::{bar_hit, least_witness_oracle, make_rho, GammaConstruction};
use negint::oracle::parse_oracle;
use num_bigint::BigUint;

fn main() {
    let alpha = parse_oracle("table {3:1} default 0").expect("oracle parses");
    let rho = make_rho(alpha.clone());
    for w in [1u64, 2, 4, 6, 12] {
        println!("rho({w}) = {}", rho.at(&BigUint::from(w)));
    }
    let chi_star = least_witness_oracle(&alpha).expect("finite table");
    for zeta_text in ["table {} default 0", "table {0:2} default 0", "table {} default 1"] {
        let zeta = parse_oracle(zeta_text).expect("oracle parses");
        let hit = bar_hit(&rho, &zeta, 20);
        let differs = (0..20).any(|j| zeta.at_u64(j) != chi_star.at_u64(j));
        println!("zeta = {zeta_text:<22} bar at {hit:?}, differs from least witnesses: {differs}");
    }
    let gamma = GammaConstruction { rho };
    let x = SeqCode::encode(&[1]);
    for y in 0..3u32 {
        let len = BigUint::from(2u32).pow(2) * BigUint::from(3u32).pow(y);
        let values = |_: u64| 0;
        println!("gamma(bar(0, <{}, {y}>)) = {}", x.0, gamma.value(&BarView { values: &values, len }));
    }
}
