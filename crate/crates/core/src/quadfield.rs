//! Fundamental discriminants of quadratic fields, their ramified primes, and
//! the binary form attached to each ambiguous ideal `sqrt(p O_K)`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::forms::QuadForm;
use crate::intarith::{factorize_u64, is_squarefree_u64};

/// Discriminant of the maximal order of `Q(sqrt d)`, `d != 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FundamentalDiscriminant {
    d: i64,
    ramified: Vec<u64>,
}

impl FundamentalDiscriminant {
    pub fn d(&self) -> i64 {
        self.d
    }

    /// Ramified primes in ascending order.
    pub fn ramified(&self) -> &[u64] {
        &self.ramified
    }

    /// Number of ramified primes.
    pub fn s(&self) -> u32 {
        self.ramified.len() as u32
    }

    pub fn is_imaginary(&self) -> bool {
        self.d < 0
    }

    /// Squarefree `n` with `K = Q(sqrt n)`.
    pub fn radicand(&self) -> i64 {
        if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            self.d / 4
        }
    }

    pub fn d_big(&self) -> BigInt {
        BigInt::from(self.d)
    }
}

impl fmt::Display for FundamentalDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.d)
    }
}

/// True iff `d` is a fundamental discriminant other than 1.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree_u64(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree_u64(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Validate `d` and compute its ramified primes.
pub fn make_field(d: i64) -> Result<FundamentalDiscriminant> {
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let ramified = factorize_u64(d.unsigned_abs())
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    Ok(FundamentalDiscriminant { d, ramified })
}

/// Field discriminant of `Q(sqrt n)` for squarefree `n`: `n` if `n = 1 mod 4`, else `4n`.
pub fn discriminant_of_radicand(n: i64) -> Result<FundamentalDiscriminant> {
    if n == 0 || n == 1 {
        return Err(Error::InvalidInput(format!("radicand {n} does not define a quadratic field")));
    }
    if !is_squarefree_u64(n.unsigned_abs()) {
        return Err(Error::NotSquarefree(n.to_string()));
    }
    let d = if n.rem_euclid(4) == 1 { n } else { 4 * n };
    make_field(d)
}

/// Ambiguous ideal above a ramified prime, as a primitive form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguousPrimeData {
    pub p: u64,
    pub form: QuadForm,
}

/// Canonical form `(p, b, c)` of discriminant `d` representing the prime above `p`.
pub fn ambiguous_form(field: &FundamentalDiscriminant, p: u64) -> Result<AmbiguousPrimeData> {
    let d = field.d;
    if !field.ramified.contains(&p) {
        return Err(Error::NotRamified { p, d });
    }
    let pi = p as i64;
    let (b, c) = if d.rem_euclid(4) == 1 {
        (pi, (pi * pi - d) / (4 * pi))
    } else if p != 2 {
        (0, -d / (4 * pi))
    } else if (d / 4).rem_euclid(4) == 2 {
        (0, -d / 8)
    } else {
        (2, (4 - d) / 8)
    };
    let form = QuadForm::new(pi, b, c);
    debug_assert_eq!(form.discriminant(), BigInt::from(d));
    Ok(AmbiguousPrimeData { p, form })
}

/// One ambiguous form per ramified prime, in prime order.
pub fn ambiguous_forms(field: &FundamentalDiscriminant) -> Vec<AmbiguousPrimeData> {
    field
        .ramified
        .iter()
        .map(|&p| ambiguous_form(field, p).expect("ramified by construction"))
        .collect()
}

/// Fundamental discriminants in `[lo, hi]`, ascending.
pub fn fundamental_discriminants(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(|&d| is_fundamental(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_examples() {
        let f = make_field(-20).unwrap();
        assert_eq!((f.d(), f.ramified(), f.s()), (-20, &[2, 5][..], 2));
        let f = make_field(-23).unwrap();
        assert_eq!((f.ramified(), f.s()), (&[23][..], 1));
        assert!(make_field(12).is_ok());
        assert_eq!(make_field(45), Err(Error::NotFundamental(45)));
        assert_eq!(make_field(1), Err(Error::NotFundamental(1)));
        assert_eq!(make_field(0), Err(Error::NotFundamental(0)));
        assert_eq!(make_field(-16), Err(Error::NotFundamental(-16)));
    }

    #[test]
    fn radicand_examples() {
        assert_eq!(discriminant_of_radicand(5).unwrap().d(), 5);
        assert_eq!(discriminant_of_radicand(-5).unwrap().d(), -20);
        assert_eq!(discriminant_of_radicand(10).unwrap().d(), 40);
        assert_eq!(discriminant_of_radicand(-1).unwrap().d(), -4);
        assert!(matches!(discriminant_of_radicand(12), Err(Error::NotSquarefree(_))));
    }

    #[test]
    fn radicand_round_trip() {
        for d in fundamental_discriminants(-2000, 2000) {
            let f = make_field(d).unwrap();
            assert_eq!(discriminant_of_radicand(f.radicand()).unwrap(), f);
            assert!(f.s() >= 1);
        }
    }

    #[test]
    fn ambiguous_form_examples() {
        let f = make_field(-20).unwrap();
        assert_eq!(ambiguous_form(&f, 2).unwrap().form, QuadForm::new(2, 2, 3));
        assert_eq!(ambiguous_form(&f, 5).unwrap().form, QuadForm::new(5, 0, 1));
        let f = make_field(-4).unwrap();
        assert_eq!(ambiguous_form(&f, 2).unwrap().form, QuadForm::new(2, 2, 1));
        let f = make_field(-23).unwrap();
        assert_eq!(ambiguous_form(&f, 23).unwrap().form, QuadForm::new(23, 23, 6));
        assert_eq!(ambiguous_form(&f, 3), Err(Error::NotRamified { p: 3, d: -23 }));
        let f = make_field(40).unwrap();
        assert_eq!(ambiguous_form(&f, 2).unwrap().form, QuadForm::new(2, 0, -5));
    }

    #[test]
    fn ambiguous_forms_have_field_discriminant() {
        for d in fundamental_discriminants(-3000, 3000) {
            let f = make_field(d).unwrap();
            for amb in ambiguous_forms(&f) {
                assert_eq!(amb.form.discriminant(), BigInt::from(d));
                assert_eq!(amb.form.a(), &BigInt::from(amb.p));
            }
        }
    }
}
