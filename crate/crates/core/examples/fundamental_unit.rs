//! Fundamental units by continued fractions, and the two unit families.

use polya::quadfield::make_field;
use polya::units::{cf_sqrt, check_family, fundamental_unit, regulator_ratio, Family};

fn main() {
    for d in [5, 8, 12, 13, 40, 61, 109, 376] {
        let u = fundamental_unit(&make_field(d).unwrap()).unwrap();
        println!("d = {d:>4}: eps = {u}, norm {}, R = {}", u.norm, u.regulator.to_decimal(20));
    }
    let cf = cf_sqrt(94).unwrap();
    println!("sqrt(94) = [{}; {:?}]", cf.a0, cf.period);

    for family in Family::ALL {
        for n in [1, 2, 3, 10, 1000] {
            let (outcome, unit) = check_family(family, n).unwrap();
            let unit = unit.map(|u| u.to_string()).unwrap_or_default();
            println!("{family} n = {n}: {outcome:?} {unit}");
        }
        println!(
            "{family}: log R / log sqrt d = {:.4} at n = 10, {:.4} at n = 1000",
            regulator_ratio(10, family).unwrap(),
            regulator_ratio(1000, family).unwrap()
        );
    }
}
