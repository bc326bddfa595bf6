//! Relative class numbers of Q(zeta_p) from generalized Bernoulli numbers.

use polya::abelian::hminus_cyclotomic;
use polya::intarith::is_prime_u64;

fn main() {
    for p in (3..=100).filter(|&p| is_prime_u64(p)) {
        let h = hminus_cyclotomic(p).unwrap();
        println!("p = {p:>3}: h- = {:<24} residue {:.1e} at {} bits", h.value.to_string(), h.residue, h.bits);
    }
}
