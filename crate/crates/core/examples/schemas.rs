//! Instantiates every catalog schema with its documented bindings and
//! prints the instance and its negative translation.

use negint::catalog::{Bindings, Catalog};
use negint::syntax::print;
use negint::translate::{negative_translate, AtomPolicy};

fn main() {
    let cat = Catalog::standard();
    for schema in cat.schemas() {
        for ex in &schema.examples {
            let bindings = Bindings::parse(&ex.bindings).expect("documented bindings parse");
            let f = schema.instantiate(&bindings).expect("documented bindings instantiate");
            println!("{}  [{}]", schema.name, ex.bindings.join("; "));
            println!("    {}", print(&f));
            println!("  g {}", print(&negative_translate(&f, AtomPolicy::Identity)));
        }
    }
}
