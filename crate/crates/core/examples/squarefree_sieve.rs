//! Squarefree values of n^2 + 1 and 4n^2 - 1.

use polya::sieve::{density_limit_estimate, residue_roots, sieve_family, Family};

fn main() {
    for family in Family::ALL {
        println!("{family}: roots mod 25 {:?}, mod 49 {:?}", residue_roots(family, 5), residue_roots(family, 7));
        for n_max in [1_000, 100_000, 1_000_000] {
            let r = sieve_family(family, n_max).unwrap();
            println!(
                "  N = {n_max:>7}: |S_N| = {:>7}, density {:.5} (Euler product {:.5}), N/6 floor {}",
                r.count,
                r.density,
                density_limit_estimate(family, n_max),
                r.meets_sixth_floor()
            );
        }
        let r = sieve_family(family, 100).unwrap();
        let first: Vec<String> = r.excluded.iter().take(6).map(|e| format!("{} (p = {})", e.n, e.p)).collect();
        println!("  first excluded: {}", first.join(", "));
    }
}
