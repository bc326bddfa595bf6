//! Ramification in composita: lcm rule and the Bezout exponents.

use polya::ramify::{abhyankar_index, bezout_exponents, coprime_splitting_orders, RamificationScenario};

fn main() {
    for (e1, e2, p) in [(2, 3, 5), (4, 6, 5), (2, 2, 2), (3, 9, 3)] {
        let sc = RamificationScenario::new(e1, e2, p).unwrap();
        println!("e1 = {e1}, e2 = {e2}, p = {p}: {:?}", abhyankar_index(&sc));
    }
    for (e1, e2) in [(2, 3), (4, 6), (3, 10)] {
        let m = num_integer::lcm(e1, e2);
        let (u, v) = bezout_exponents(e1, e2, m).unwrap();
        println!("e = lcm({e1}, {e2}) = {m}: {u}*{} + {v}*{} = 1", m / e1, m / e2);
    }
    println!("orders 4, 9 in degrees 2, 3 coprime: {}", coprime_splitting_orders(4, 9, 2, 3));
}
