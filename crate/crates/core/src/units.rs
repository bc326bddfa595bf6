//! Fundamental units of real quadratic fields from continued fractions, and
//! the two explicit unit families `n + sqrt(n^2 + 1)` and `2n + sqrt(4n^2 - 1)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hp::{bits_for_digits, Real};
use crate::intarith::{is_square_u64, is_squarefree_u64, isqrt_u64};
use crate::quadfield::{discriminant_of_radicand, FundamentalDiscriminant};

/// Decimal digits carried by stored regulators.
pub const REGULATOR_DIGITS: u32 = 50;

/// `sqrt(n) = [a0; period, period, ...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub a0: u64,
    pub period: Vec<u64>,
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail: Vec<String> = self.period.iter().map(u64::to_string).collect();
        write!(f, "[{}; ({})]", self.a0, tail.join(", "))
    }
}

/// Continued fraction of `sqrt(n)` via the `(m, d, a)` recurrence; the period
/// ends at the first partial quotient `2 a0`.
pub fn cf_sqrt(n: u64) -> Result<ContinuedFraction> {
    if n < 2 || is_square_u64(n) {
        return Err(Error::PerfectSquare(n));
    }
    let a0 = isqrt_u64(n);
    let (mut m, mut d, mut a) = (0u64, 1u64, a0);
    let mut period = Vec::new();
    loop {
        m = d * a - m;
        d = (n - m * m) / d;
        a = (a0 + m) / d;
        period.push(a);
        if a == 2 * a0 {
            break;
        }
    }
    debug_assert_eq!(d, 1);
    Ok(ContinuedFraction { a0, period })
}

/// Fundamental unit `(x + y sqrt(n)) / sigma` of the maximal order of
/// `Q(sqrt n)`, `n` squarefree.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitData {
    pub d: i64,
    pub n: i64,
    pub x: BigInt,
    pub y: BigInt,
    pub sigma: u8,
    pub norm: i8,
    pub regulator: Real,
}

impl UnitData {
    pub fn regulator_f64(&self) -> f64 {
        self.regulator.to_f64()
    }

    /// `(x^2 - n y^2) / sigma^2`, computed exactly.
    pub fn exact_norm(&self) -> BigInt {
        let s = BigInt::from(self.sigma);
        (&self.x * &self.x - BigInt::from(self.n) * &self.y * &self.y) / (&s * &s)
    }

    /// `true` iff this is `x0 + y0 sqrt(n)` with integer coordinates.
    pub fn equals_integral(&self, x0: &BigInt, y0: &BigInt) -> bool {
        let s = BigInt::from(self.sigma);
        self.x == x0 * &s && self.y == y0 * &s
    }
}

impl fmt::Display for UnitData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sigma == 1 {
            write!(f, "{} + {}*sqrt({})", self.x, self.y, self.n)
        } else {
            write!(f, "({} + {}*sqrt({}))/{}", self.x, self.y, self.n, self.sigma)
        }
    }
}

/// `log((x + y sqrt n)/sigma)` with `digits` correct decimals.
pub fn regulator(x: &BigInt, y: &BigInt, n: i64, sigma: u8, digits: u32) -> Real {
    let bits = bits_for_digits(digits);
    let y2n: BigUint = (y * y * BigInt::from(n)).magnitude().clone();
    let root = Real::sqrt_int(&y2n, bits + 32);
    let value = (&Real::from_int(x, bits + 32) + &root).div_int(&BigInt::from(sigma));
    value.ln().with_bits(bits)
}

// Convergents p/q of (P + sqrt D)/Q until `stop(p, q)` holds.
fn convergents_until<F>(d: u64, mut pp: i64, mut qq: i64, mut stop: F) -> (BigInt, BigInt)
where
    F: FnMut(&BigInt, &BigInt) -> bool,
{
    let s = isqrt_u64(d) as i64;
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (pp + s).div_euclid(qq);
        let p_next = BigInt::from(a) * &p + &p_prev;
        let q_next = BigInt::from(a) * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        if stop(&p, &q) {
            return (p, q);
        }
        pp = a * qq - pp;
        qq = (d as i64 - pp * pp) / qq;
    }
}

/// Smallest unit `> 1` of the maximal order of the real quadratic field.
pub fn fundamental_unit(field: &FundamentalDiscriminant) -> Result<UnitData> {
    let d = field.d();
    if d <= 0 {
        return Err(Error::InvalidInput(format!("discriminant {d} is not positive")));
    }
    let n = field.radicand();
    let (x, y, sigma) = if d.rem_euclid(4) == 1 {
        // omega = (1 + sqrt d)/2, unit p - q * conj(omega) = (2p - q + q sqrt d)/2
        let c = (1 - d) / 4;
        let (p, q) = convergents_until(d as u64, 1, 2, |p, q| {
            let nm: BigInt = p * p - p * q + BigInt::from(c) * q * q;
            nm.abs().is_one()
        });
        let x = BigInt::from(2) * &p - &q;
        if x.is_even() && q.is_even() {
            (x / 2, q / 2, 1u8)
        } else {
            (x, q, 2u8)
        }
    } else {
        let (p, q) = convergents_until(n as u64, 0, 1, |p, q| {
            let nm: BigInt = p * p - BigInt::from(n) * q * q;
            nm.abs().is_one()
        });
        (p, q, 1u8)
    };
    let s = BigInt::from(sigma);
    let nm = (&x * &x - BigInt::from(n) * &y * &y) / (&s * &s);
    let norm = if nm.is_one() { 1 } else { -1 };
    let regulator = regulator(&x, &y, n, sigma, REGULATOR_DIGITS);
    Ok(UnitData { d, n, x, y, sigma, norm, regulator })
}

/// Outcome of testing a family member's asserted unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyOutcome {
    Holds,
    Fails,
    Skipped,
}

impl fmt::Display for FamilyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyOutcome::Holds => "holds",
            FamilyOutcome::Fails => "fails",
            FamilyOutcome::Skipped => "skipped",
        })
    }
}

/// The two polynomial families `n^2 + 1` and `4n^2 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    #[serde(rename = "n2p1")]
    N2p1,
    #[serde(rename = "4n2m1")]
    FourN2m1,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::N2p1, Family::FourN2m1];

    pub fn value(self, n: u64) -> u64 {
        match self {
            Family::N2p1 => n * n + 1,
            Family::FourN2m1 => 4 * n * n - 1,
        }
    }

    /// Asserted unit `(x, y)` meaning `x + y sqrt(value)`.
    pub fn asserted_unit(self, n: u64) -> (u64, u64) {
        match self {
            Family::N2p1 => (n, 1),
            Family::FourN2m1 => (2 * n, 1),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Family::N2p1 => "n2p1",
            Family::FourN2m1 => "4n2m1",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n2p1" => Ok(Family::N2p1),
            "4n2m1" => Ok(Family::FourN2m1),
            _ => Err(Error::InvalidInput(format!("unknown family {s:?}"))),
        }
    }
}

fn family_field(family: Family, n: u64) -> Result<Option<FundamentalDiscriminant>> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let v = family.value(n);
    if !is_squarefree_u64(v) {
        return Ok(None);
    }
    discriminant_of_radicand(v as i64).map(Some)
}

/// Check the family unit against the true fundamental unit.
pub fn check_family(family: Family, n: u64) -> Result<(FamilyOutcome, Option<UnitData>)> {
    let Some(field) = family_field(family, n)? else {
        return Ok((FamilyOutcome::Skipped, None));
    };
    let unit = fundamental_unit(&field)?;
    let (x0, y0) = family.asserted_unit(n);
    let outcome = if unit.equals_integral(&BigInt::from(x0), &BigInt::from(y0)) {
        FamilyOutcome::Holds
    } else {
        FamilyOutcome::Fails
    };
    Ok((outcome, Some(unit)))
}

/// Is `n + sqrt(n^2 + 1)` the fundamental unit of `Q(sqrt(n^2 + 1))`?
pub fn check_family_n2p1(n: u64) -> Result<FamilyOutcome> {
    check_family(Family::N2p1, n).map(|r| r.0)
}

/// Is `2n + sqrt(4n^2 - 1)` the fundamental unit of `Q(sqrt(4n^2 - 1))`?
pub fn check_family_4n2m1(n: u64) -> Result<FamilyOutcome> {
    check_family(Family::FourN2m1, n).map(|r| r.0)
}

/// `log(R) / log(sqrt d)` for the family field, using the true unit.
pub fn regulator_ratio(n: u64, family: Family) -> Result<f64> {
    let field = family_field(family, n)?.ok_or_else(|| Error::NotSquarefree(family.value(n).to_string()))?;
    let unit = fundamental_unit(&field)?;
    let r = unit.regulator.to_f64();
    Ok(r.ln() / (0.5 * (field.d() as f64).ln()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{fundamental_discriminants, make_field};

    fn unit(d: i64) -> UnitData {
        fundamental_unit(&make_field(d).unwrap()).unwrap()
    }

    #[test]
    fn cf_examples() {
        assert_eq!(cf_sqrt(2).unwrap(), ContinuedFraction { a0: 1, period: vec![2] });
        assert_eq!(cf_sqrt(10).unwrap(), ContinuedFraction { a0: 3, period: vec![6] });
        assert_eq!(cf_sqrt(3).unwrap(), ContinuedFraction { a0: 1, period: vec![1, 2] });
        assert_eq!(cf_sqrt(7).unwrap().period, vec![1, 1, 1, 4]);
        assert_eq!(cf_sqrt(16), Err(Error::PerfectSquare(16)));
        assert_eq!(cf_sqrt(1), Err(Error::PerfectSquare(1)));
    }

    // Float recurrence as an independent check of the integer recurrence.
    #[test]
    fn cf_matches_float_expansion() {
        for n in [2u64, 3, 5, 6, 7, 11, 13, 19, 22, 31] {
            let cf = cf_sqrt(n).unwrap();
            let mut x = (n as f64).sqrt();
            let mut terms = Vec::new();
            for _ in 0..=cf.period.len() {
                let a = x.floor();
                terms.push(a as u64);
                x = 1.0 / (x - a);
            }
            assert_eq!(terms[0], cf.a0);
            assert_eq!(&terms[1..], &cf.period[..], "n = {n}");
        }
    }

    #[test]
    fn unit_examples() {
        let u = unit(5);
        assert_eq!((u.x.clone(), u.y.clone(), u.sigma, u.norm), (1.into(), 1.into(), 2, -1));
        assert!((u.regulator_f64() - 0.4812118).abs() < 1e-7);
        let u = unit(8);
        assert_eq!((u.x.clone(), u.y.clone(), u.sigma, u.norm), (1.into(), 1.into(), 1, -1));
        assert!((u.regulator_f64() - 0.8813736).abs() < 1e-7);
        let u = unit(40);
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (3.into(), 1.into(), -1));
        assert!((u.regulator_f64() - 1.8184465).abs() < 1e-7);
        let u = unit(12);
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (2.into(), 1.into(), 1));
        // (5 + sqrt 21)/2
        let u = unit(21);
        assert_eq!((u.x.clone(), u.y.clone(), u.sigma, u.norm), (5.into(), 1.into(), 2, 1));
        // 1 mod 4 with an integral fundamental unit: 8 + 3 sqrt 7 lives at d = 28,
        // while d = 17 gives 4 + sqrt 17
        let u = unit(17);
        assert_eq!((u.x.clone(), u.y.clone(), u.sigma, u.norm), (4.into(), 1.into(), 1, -1));
        assert!(fundamental_unit(&make_field(-4).unwrap()).is_err());
    }

    #[test]
    fn pell_identity_and_period_parity() {
        for d in fundamental_discriminants(5, 3000) {
            let u = unit(d);
            assert_eq!(u.exact_norm(), BigInt::from(u.norm), "d = {d}");
            let cf = cf_sqrt(u.n as u64).unwrap();
            assert_eq!(u.norm == -1, cf.period.len() % 2 == 1, "d = {d}");
        }
    }

    // Brute force: the smallest unit > 1 has the smallest y among solutions of
    // x^2 - n y^2 = +-sigma^2.
    #[test]
    fn minimality_against_search() {
        for d in fundamental_discriminants(5, 1000) {
            let u = unit(d);
            let Some(y_found) = num_traits::ToPrimitive::to_u64(&u.y) else { continue };
            if y_found > 10_000 {
                continue;
            }
            let n = u.n as u64;
            let four = d % 4 == 1;
            let mut best = None;
            'search: for y in 1..=y_found {
                for (s, t) in [(4u64, true), (1u64, false)] {
                    if t && !four {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let x2 = (n * y * y) as i64 + sign * s as i64;
                        if x2 > 0 && is_square_u64(x2 as u64) {
                            best = Some(y);
                            break 'search;
                        }
                    }
                }
            }
            assert_eq!(best, Some(y_found), "d = {d}");
        }
    }

    #[test]
    fn regulator_precision_doubling() {
        for d in [5, 8, 12, 40, 61, 94 * 4] {
            let u = unit(d);
            let r1 = regulator(&u.x, &u.y, u.n, u.sigma, 50);
            let r2 = regulator(&u.x, &u.y, u.n, u.sigma, 100).with_bits(r1.bits());
            let diff = (&r1 - &r2).abs();
            assert!(diff < Real::from_ratio(&1.into(), &BigInt::from(10).pow(45), r1.bits()));
        }
        assert_eq!(unit(5).regulator.to_decimal(30), "0.481211825059603447497758913424");
    }

    #[test]
    fn family_examples() {
        assert_eq!(check_family_n2p1(1).unwrap(), FamilyOutcome::Holds);
        assert_eq!(check_family_n2p1(2).unwrap(), FamilyOutcome::Fails);
        assert_eq!(check_family_n2p1(3).unwrap(), FamilyOutcome::Holds);
        assert_eq!(check_family_n2p1(7).unwrap(), FamilyOutcome::Skipped);
        assert_eq!(check_family_4n2m1(1).unwrap(), FamilyOutcome::Holds);
        assert_eq!(check_family_4n2m1(2).unwrap(), FamilyOutcome::Holds);
        assert_eq!(check_family_4n2m1(3).unwrap(), FamilyOutcome::Holds);
        assert_eq!(check_family_n2p1(0), Err(Error::ZeroInput));
    }

    #[test]
    fn regulator_ratio_examples() {
        let r = regulator_ratio(3, Family::N2p1).unwrap();
        let expect = (3f64 + 10f64.sqrt()).ln().ln() / 40f64.sqrt().ln();
        assert!((r - expect).abs() < 1e-12);
        let r = regulator_ratio(1, Family::FourN2m1).unwrap();
        let expect = (2f64 + 3f64.sqrt()).ln().ln() / 12f64.sqrt().ln();
        assert!((r - expect).abs() < 1e-12);
        assert!(matches!(regulator_ratio(7, Family::N2p1), Err(Error::NotSquarefree(_))));
    }
}
