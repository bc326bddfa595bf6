//! Ramification-index arithmetic for composita: the lcm rule, the Bezout
//! combination of ambiguous ideals, and prime-support checks on Pólya orders.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::intarith::{ext_gcd, factorize_u64};

/// A prime `p` with ramification indices `e1`, `e2` in two fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RamificationScenario {
    pub e1: u64,
    pub e2: u64,
    pub p: u64,
}

impl RamificationScenario {
    pub fn new(e1: u64, e2: u64, p: u64) -> Result<Self> {
        if e1 == 0 || e2 == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(RamificationScenario { e1, e2, p })
    }

    pub fn tame1(&self) -> bool {
        self.e1 % self.p != 0
    }

    pub fn tame2(&self) -> bool {
        self.e2 % self.p != 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Abhyankar {
    Index(u64),
    /// Both indices are divisible by `p`.
    Inapplicable,
}

/// Ramification index in the compositum: `lcm(e1, e2)` when one side is tame.
pub fn abhyankar_index(sc: &RamificationScenario) -> Abhyankar {
    if sc.tame1() || sc.tame2() {
        Abhyankar::Index(sc.e1.lcm(&sc.e2))
    } else {
        Abhyankar::Inapplicable
    }
}

/// `(u, v)` with `u (m/e1) + v (m/e2) = 1` and `|u|` minimal, ties going to `u > 0`.
pub fn bezout_exponents(e1: u64, e2: u64, m: u64) -> Result<(i64, i64)> {
    if e1 == 0 || e2 == 0 || m == 0 {
        return Err(Error::ZeroInput);
    }
    if m % e1 != 0 || m % e2 != 0 {
        return Err(Error::InvalidInput(format!("{m} is not a common multiple of {e1} and {e2}")));
    }
    let a = (m / e1) as i64;
    let b = (m / e2) as i64;
    let (g, u0, _) = ext_gcd(a, b);
    if g != 1 {
        return Err(Error::NotCoprime(a as u64, b as u64));
    }
    // u ranges over u0 + k b; pick the representative in [-b/2, b/2], ties positive
    let mut u = u0.rem_euclid(b);
    if 2 * u > b {
        u -= b;
    }
    let v = (1 - u * a) / b;
    debug_assert_eq!(u * a + v * b, 1);
    Ok((u, v))
}

/// Exponent killing every Pólya generator of a Galois field of this degree.
pub fn annihilation_exponent(degree: u64) -> Result<u64> {
    if degree == 0 {
        return Err(Error::ZeroInput);
    }
    Ok(degree)
}

fn support_divides(o: u64, d: u64) -> bool {
    if o == 0 {
        return false;
    }
    factorize_u64(o).iter().all(|&(q, _)| d % q == 0)
}

/// Every prime of `o_i` divides `d_i`, so coprime degrees force coprime orders.
pub fn coprime_splitting_orders(o1: u64, o2: u64, d1: u64, d2: u64) -> bool {
    support_divides(o1, d1) && support_divides(o2, d2) && (d1.gcd(&d2) != 1 || o1.gcd(&o2) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(e1: u64, e2: u64, p: u64) -> RamificationScenario {
        RamificationScenario::new(e1, e2, p).unwrap()
    }

    #[test]
    fn abhyankar_examples() {
        assert_eq!(abhyankar_index(&sc(2, 3, 5)), Abhyankar::Index(6));
        assert_eq!(abhyankar_index(&sc(2, 2, 2)), Abhyankar::Inapplicable);
        assert_eq!(abhyankar_index(&sc(4, 6, 5)), Abhyankar::Index(12));
        assert_eq!(RamificationScenario::new(0, 1, 2), Err(Error::ZeroInput));
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_exponents(2, 3, 6).unwrap(), (1, -1));
        assert_eq!(bezout_exponents(1, 7, 7).unwrap(), (0, 1));
        assert_eq!(bezout_exponents(4, 6, 12).unwrap(), (1, -1));
        assert_eq!(bezout_exponents(2, 2, 4), Err(Error::NotCoprime(2, 2)));
    }

    #[test]
    fn bezout_identity_sweep() {
        for e1 in 1..=120u64 {
            for e2 in 1..=120u64 {
                let m = e1.lcm(&e2);
                let (u, v) = bezout_exponents(e1, e2, m).unwrap();
                let (a, b) = ((m / e1) as i64, (m / e2) as i64);
                assert_eq!(u * a + v * b, 1);
                assert!(2 * u.abs() <= b.max(1));
            }
        }
    }

    #[test]
    fn lcm_divisibility() {
        for e1 in 1..=60 {
            for e2 in 1..=60 {
                for p in [2u64, 3, 5, 7] {
                    if let Abhyankar::Index(e) = abhyankar_index(&sc(e1, e2, p)) {
                        assert_eq!((e1 * e2) % e, 0);
                        assert_eq!((e % e1, e % e2), (0, 0));
                    }
                }
            }
        }
    }

    #[test]
    fn splitting_examples() {
        assert!(coprime_splitting_orders(2, 3, 2, 3));
        assert!(coprime_splitting_orders(4, 9, 2, 3));
        assert!(!coprime_splitting_orders(6, 1, 2, 3));
        assert_eq!(annihilation_exponent(2).unwrap(), 2);
        assert_eq!(annihilation_exponent(1).unwrap(), 1);
        assert_eq!(annihilation_exponent(6).unwrap(), 6);
    }
}
