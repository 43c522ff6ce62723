//! Prints the minimum classical extension of each registered base theory
//! and the schemas it adds.

use negint::catalog::Catalog;

fn main() {
    let cat = Catalog::standard();
    for row in cat.extension_rows() {
        let lhs = cat.theory(&row.lhs).expect("registered theory");
        let (_, ext) = cat.minimum_extension(&lhs).expect("row lookup");
        let added: Vec<String> = ext.schemas.difference(&lhs.schemas).cloned().collect();
        println!("({:>4}) {:<14} => {:<32} adds {}", row.row, row.lhs, ext.name, if added.is_empty() { "nothing".into() } else { added.join(", ") });
    }
}
