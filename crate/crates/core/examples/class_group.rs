//! Class groups from binary quadratic forms, definite and indefinite.
//!
//!     cargo run --example class_group -- -84
//!     cargo run --example class_group -- 316

use polya::forms::{class_group_definite, class_group_real, class_number_analytic, reduced_forms_definite};
use polya::group::structure_string;
use polya::quadfield::make_field;

fn main() {
    let d: i64 = std::env::args().nth(1).map(|s| s.parse().expect("an integer")).unwrap_or(-84);
    let field = make_field(d).expect("fundamental discriminant");
    if d < 0 {
        let cl = class_group_definite(&field).unwrap();
        println!("Cl({d}) = {} (h = {})", structure_string(cl.elementary_divisors()), cl.order());
        println!("analytic h = {}", class_number_analytic(&field).unwrap());
        for f in reduced_forms_definite(d) {
            println!("  {f}  order {}", cl.element_order(&f).unwrap());
        }
    } else {
        let g = class_group_real(&field).unwrap();
        println!("narrow Cl({d}) = {}", structure_string(g.narrow.elementary_divisors()));
        println!("wide   Cl({d}) = {}", structure_string(g.wide.elementary_divisors()));
        println!("unit norm {}", g.unit_norm);
        for cycle in g.classes.cycles() {
            let forms: Vec<String> = cycle.iter().map(|f| f.to_string()).collect();
            println!("  cycle: {}", forms.join(" -> "));
        }
    }
}
