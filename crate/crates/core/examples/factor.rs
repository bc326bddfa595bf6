//! Factorization, primality and Kronecker symbols on big integers.
//!
//!     cargo run --example factor -- 600851475143

use num_bigint::BigInt;
use polya::intarith::{factorize, is_squarefree, kronecker};

fn main() {
    let n: BigInt = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1000000016000000063".into())
        .parse()
        .expect("an integer");
    let f = factorize(&n).expect("nonzero");
    let parts: Vec<String> = f
        .factors()
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    println!("{n} = {}", parts.join(" * "));
    println!("squarefree: {}", is_squarefree(&n).unwrap());
    for d in [-4, 5, -23] {
        println!("({d} | {n}) = {}", kronecker(&BigInt::from(d), &n));
    }
}
