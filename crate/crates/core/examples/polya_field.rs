//! Pólya group and the quotient Cl/Po of a quadratic field.
//!
//!     cargo run --example polya_field -- -5460

use polya::group::structure_string;
use polya::polya::{polya_group, polya_group_in, relative_class_group, ClassSense};
use polya::quadfield::{ambiguous_forms, make_field};

fn main() {
    let d: i64 = std::env::args().nth(1).map(|s| s.parse().expect("an integer")).unwrap_or(-5460);
    let field = make_field(d).expect("fundamental discriminant");
    println!("d = {d}, ramified primes {:?}", field.ramified());
    for a in ambiguous_forms(&field) {
        println!("  prime {} -> {}", a.p, a.form);
    }
    let po = polya_group(&field).unwrap();
    println!("Po = {} (order {})", structure_string(po.group.elementary_divisors()), po.order());
    if d > 0 {
        let narrow = polya_group_in(&field, ClassSense::Narrow).unwrap();
        println!("narrow Po order {}", narrow.order());
    }
    let rel = relative_class_group(&field).unwrap();
    println!(
        "Cl = {}, Cl/Po = {}, Polya field: {}, Cl = Po: {}",
        structure_string(&rel.class_divisors),
        structure_string(&rel.divisors),
        po.is_trivial(),
        rel.trivial
    );
}
