//! Squarefree values of `n^2 + 1` and `4n^2 - 1` by sieving residue classes
//! modulo `p^2`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intarith::{inv_mod, isqrt_u64, mul_mod, primes_up_to, sqrt_mod_prime};
pub use crate::units::Family;

/// All `x` in `[0, p^2)` with `p^2 | f(x)`, ascending.
pub fn residue_roots(family: Family, p: u64) -> Vec<u64> {
    let q = p * p;
    let mut roots = match family {
        Family::N2p1 => {
            if p % 4 != 1 {
                return Vec::new();
            }
            let r = sqrt_mod_prime(p - 1, p).expect("-1 is a square mod p = 1 mod 4");
            // Hensel: r - (r^2 + 1) / (2r) mod p^2
            let f = (mul_mod(r, r, q) + 1) % q;
            let inv = inv_mod(2 * r % q, q).expect("2r is a unit mod p^2");
            let lifted = (r + q - mul_mod(f, inv, q)) % q;
            vec![lifted, q - lifted]
        }
        Family::FourN2m1 => {
            if p == 2 {
                return Vec::new();
            }
            let half = inv_mod(2, q).expect("p odd");
            vec![half, q - half]
        }
    };
    roots.sort_unstable();
    roots
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exclusion {
    pub n: u64,
    /// Smallest prime whose square divides the family value.
    pub p: u64,
}

/// `|S_{N,p}| = #{n <= N : p^2 | f(n)}` against the bound `2 + 2N/p^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimeCount {
    pub p: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SieveReport {
    pub family: Family,
    pub n_max: u64,
    pub count: u64,
    pub density: f64,
    pub excluded: Vec<Exclusion>,
    pub prime_counts: Vec<PrimeCount>,
}

impl SieveReport {
    /// `|S_N| >= N/6`.
    pub fn meets_sixth_floor(&self) -> bool {
        6 * self.count >= self.n_max
    }

    /// Every sieved prime satisfies `|S_{N,p}| <= 2 + 2N/p^2`.
    pub fn prime_bounds_hold(&self) -> bool {
        self.prime_counts.iter().all(|c| {
            let q = c.p * c.p;
            c.count * q <= 2 * q + 2 * self.n_max
        })
    }

    /// Witness prime for `n`, if `f(n)` is not squarefree.
    pub fn witness(&self, n: u64) -> Option<u64> {
        self.excluded.binary_search_by_key(&n, |e| e.n).ok().map(|i| self.excluded[i].p)
    }

    /// Rows `(n, f(n), squarefree, witness_p)` for `1 <= n <= N`.
    pub fn rows(&self) -> impl Iterator<Item = SieveRow> + '_ {
        let mut ex = self.excluded.iter().peekable();
        (1..=self.n_max).map(move |n| {
            let witness = match ex.peek() {
                Some(e) if e.n == n => ex.next().map(|e| e.p),
                _ => None,
            };
            SieveRow { n, family_value: self.family.value(n), squarefree: witness.is_none(), witness_p: witness }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SieveRow {
    pub n: u64,
    pub family_value: u64,
    pub squarefree: bool,
    pub witness_p: Option<u64>,
}

/// Largest accepted `N` (the witness table holds one `u32` per `n`).
pub const MAX_N: u64 = 100_000_000;

/// Exact `S_N` for the family, with a witness `p` for every excluded `n`.
pub fn sieve_family(family: Family, n_max: u64) -> Result<SieveReport> {
    if n_max == 0 {
        return Err(Error::ZeroInput);
    }
    if n_max > MAX_N {
        return Err(Error::InvalidInput(format!("N = {n_max} exceeds {MAX_N}")));
    }
    let pmax = isqrt_u64(family.value(n_max));
    let primes = primes_up_to(u32::try_from(pmax).map_err(|_| Error::InvalidInput("N too large".into()))?);
    let hits: Vec<(u64, Vec<u64>)> = primes
        .par_iter()
        .map(|&p| {
            let p = p as u64;
            let q = p * p;
            let mut ns = Vec::new();
            for r in residue_roots(family, p) {
                let mut n = if r == 0 { q } else { r };
                while n <= n_max {
                    ns.push(n);
                    n += q;
                }
            }
            (p, ns)
        })
        .collect();

    let mut witness = vec![0u32; n_max as usize + 1];
    let mut prime_counts = Vec::new();
    for (p, ns) in &hits {
        if !ns.is_empty() {
            prime_counts.push(PrimeCount { p: *p, count: ns.len() as u64 });
        }
        for &n in ns {
            let w = &mut witness[n as usize];
            if *w == 0 {
                *w = *p as u32;
            }
        }
    }
    let excluded: Vec<Exclusion> = witness
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &p)| p != 0)
        .map(|(n, &p)| Exclusion { n: n as u64, p: p as u64 })
        .collect();
    let count = n_max - excluded.len() as u64;
    Ok(SieveReport {
        family,
        n_max,
        count,
        density: count as f64 / n_max as f64,
        excluded,
        prime_counts,
    })
}

/// Truncated Euler product `prod_{p <= sqrt N} (1 - r_p / p^2)`.
pub fn density_limit_estimate(family: Family, n_max: u64) -> f64 {
    let bound = isqrt_u64(n_max) as u32;
    primes_up_to(bound)
        .into_iter()
        .map(|p| {
            let p = p as u64;
            1.0 - residue_roots(family, p).len() as f64 / (p * p) as f64
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intarith::is_squarefree_u64;

    fn brute(family: Family, n_max: u64) -> Vec<u64> {
        (1..=n_max).filter(|&n| is_squarefree_u64(family.value(n))).collect()
    }

    #[test]
    fn roots_examples() {
        assert_eq!(residue_roots(Family::FourN2m1, 3), vec![4, 5]);
        assert!(residue_roots(Family::N2p1, 3).is_empty());
        assert_eq!(residue_roots(Family::N2p1, 5), vec![7, 18]);
        assert!(residue_roots(Family::N2p1, 2).is_empty());
        assert!(residue_roots(Family::FourN2m1, 2).is_empty());
    }

    #[test]
    fn roots_match_brute_force() {
        for p in primes_up_to(60) {
            let p = p as u64;
            for family in Family::ALL {
                let q = p * p;
                let expect: Vec<u64> = (0..q).filter(|&x| family.value(x + q) % q == 0).collect();
                assert_eq!(residue_roots(family, p), expect, "{family} p = {p}");
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = sieve_family(Family::FourN2m1, 3).unwrap();
        assert_eq!((r.count, r.density), (3, 1.0));
        let r = sieve_family(Family::N2p1, 7).unwrap();
        assert_eq!(r.count, 6);
        assert_eq!(r.excluded, vec![Exclusion { n: 7, p: 5 }]);
        assert_eq!(r.witness(7), Some(5));
        let rows: Vec<SieveRow> = r.rows().collect();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[6].family_value, 50);
        assert!(!rows[6].squarefree);
        assert_eq!(sieve_family(Family::N2p1, 0), Err(Error::ZeroInput));
    }

    #[test]
    fn sieve_matches_brute_force() {
        for family in Family::ALL {
            let r = sieve_family(family, 10_000).unwrap();
            let members: Vec<u64> = r.rows().filter(|row| row.squarefree).map(|row| row.n).collect();
            assert_eq!(members, brute(family, 10_000), "{family}");
            for e in &r.excluded {
                assert_eq!(family.value(e.n) % (e.p * e.p), 0);
            }
            assert!(r.prime_bounds_hold());
        }
    }

    #[test]
    fn density_estimates() {
        let est = density_limit_estimate(Family::FourN2m1, 100_000);
        assert!(est > 1.0 / 6.0 && est < 1.0);
        let r = sieve_family(Family::N2p1, 10_000).unwrap();
        assert!((density_limit_estimate(Family::N2p1, 10_000) - r.density).abs() < 0.01);
        assert_eq!(density_limit_estimate(Family::N2p1, 3), 1.0);
        assert!(sieve_family(Family::FourN2m1, 1000).unwrap().meets_sixth_floor());
    }
}
