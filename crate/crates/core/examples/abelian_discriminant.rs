//! Discriminants of abelian fields from their conductor.
//!
//!     cargo run --example abelian_discriminant -- 60

use polya::abelian::{
    discriminant_from_conductor_formula, discriminant_oracle, discriminant_sign, subfields_of_cyclotomic,
    AbelianField,
};

fn main() {
    let m: u64 = std::env::args().nth(1).map(|s| s.parse().expect("an integer")).unwrap_or(60);
    let k = AbelianField::cyclotomic_plus(m);
    let b = discriminant_from_conductor_formula(&k).unwrap();
    println!("Q(zeta_{m})+: degree {}, |d| = {}", b.degree, b.abs_disc);
    for e in &b.entries {
        println!("  p = {}, alpha = {}, u = {}/{}, lambda = {}/{}", e.p, e.alpha, e.u.0, e.u.1, e.lambda.0, e.lambda.1);
    }

    println!("subfields of Q(zeta_{m}):");
    for k in subfields_of_cyclotomic(m) {
        let b = discriminant_from_conductor_formula(&k).unwrap();
        assert_eq!(b.abs_disc, discriminant_oracle(&k));
        let sign = if discriminant_sign(&k) < 0 { "-" } else { "" };
        println!("  conductor {:>3}, degree {:>2}, real {:>5}, d = {sign}{}", k.conductor(), k.degree(), k.is_real(), b.abs_disc);
    }
}
