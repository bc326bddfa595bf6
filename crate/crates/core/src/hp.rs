//! Binary fixed-point reals on top of `BigInt`.
//!
//! A [`Real`] is `mant / 2^bits`. Every value in a computation carries the
//! same `bits`; transcendental functions work with extra guard bits and
//! round back. This is all the regulator and minus-class-number code needs:
//! exact-ish logarithms, `pi`, and sine/cosine on `[-pi, pi]`.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const GUARD: u32 = 64;

/// Bits needed for `digits` decimal digits plus a small margin.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    bits: u32,
}

fn shift_round(x: &BigInt, by: u32) -> BigInt {
    if by == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (by - 1);
    (x + half) >> by
}

impl Real {
    pub fn zero(bits: u32) -> Self {
        Real { mant: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        Real { mant: BigInt::one() << bits, bits }
    }

    pub fn from_int(n: &BigInt, bits: u32) -> Self {
        Real { mant: n << bits, bits }
    }

    pub fn from_i64(n: i64, bits: u32) -> Self {
        Self::from_int(&BigInt::from(n), bits)
    }

    /// Nearest fixed-point value to `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        let scaled = (num << (bits + 1)).div_floor(den);
        Real { mant: shift_round(&scaled, 1), bits }
    }

    /// `sqrt(n)` truncated to `bits` fractional bits.
    pub fn sqrt_int(n: &BigUint, bits: u32) -> Self {
        let scaled: BigUint = n << (2 * bits);
        Real { mant: BigInt::from(scaled.sqrt()), bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    /// Re-express at a different precision (rounding when narrowing).
    pub fn with_bits(&self, bits: u32) -> Self {
        let mant = match bits.cmp(&self.bits) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant << (bits - self.bits),
            Ordering::Less => shift_round(&self.mant, self.bits - bits),
        };
        Real { mant, bits }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    pub fn abs(&self) -> Self {
        Real { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Real { mant: &self.mant * k, bits: self.bits }
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        let scaled = (&self.mant << 1u32).div_floor(k);
        Real { mant: shift_round(&scaled, 1), bits: self.bits }
    }

    pub fn div(&self, other: &Real) -> Self {
        assert_eq!(self.bits, other.bits);
        let scaled = (&self.mant << (self.bits + 1)).div_floor(&other.mant);
        Real { mant: shift_round(&scaled, 1), bits: self.bits }
    }

    /// Nearest integer (ties away from zero are irrelevant here; ties round up).
    pub fn round(&self) -> BigInt {
        shift_round(&self.mant, self.bits)
    }

    pub fn to_f64(&self) -> f64 {
        let len = self.mant.bits() as i64;
        let drop = (len - 60).max(0);
        let top = (&self.mant >> drop as u32).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi((drop - self.bits as i64) as i32)
    }

    /// Decimal rendering truncated to `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = (self.mant.abs() * &scale) >> self.bits;
        let (int_part, frac) = scaled.div_rem(&scale);
        let sign = if self.is_negative() && !scaled.is_zero() { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = digits)
    }

    fn atanh_inv(k: u64, bits: u32) -> BigInt {
        // atanh(1/k) = sum 1 / ((2j+1) k^(2j+1)), fixed point at `bits`
        let one = BigInt::one() << bits;
        let k = BigInt::from(k);
        let k2 = &k * &k;
        let mut power = &one / &k;
        let mut sum = BigInt::zero();
        let mut j = 1u64;
        while !power.is_zero() {
            sum += &power / BigInt::from(j);
            power /= &k2;
            j += 2;
        }
        sum
    }

    fn atan_inv(k: u64, bits: u32) -> BigInt {
        let one = BigInt::one() << bits;
        let k = BigInt::from(k);
        let k2 = &k * &k;
        let mut power = &one / &k;
        let mut sum = BigInt::zero();
        let mut j = 1u64;
        let mut positive = true;
        while !power.is_zero() {
            let term = &power / BigInt::from(j);
            if positive {
                sum += term;
            } else {
                sum -= term;
            }
            positive = !positive;
            power /= &k2;
            j += 2;
        }
        sum
    }

    pub fn ln2(bits: u32) -> Self {
        let w = bits + GUARD;
        let mant = Self::atanh_inv(3, w) << 1u32;
        Real { mant, bits: w }.with_bits(bits)
    }

    pub fn pi(bits: u32) -> Self {
        let w = bits + GUARD;
        let mant = Self::atan_inv(5, w) * 16 - Self::atan_inv(239, w) * 4;
        Real { mant, bits: w }.with_bits(bits)
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self) -> Self {
        assert!(self.mant.sign() == Sign::Plus, "ln of a non-positive value");
        let w = self.bits + GUARD;
        let x = self.with_bits(w);
        // x = m * 2^k with m in [1, 2)
        let k = x.mant.bits() as i64 - 1 - w as i64;
        let m = if k >= 0 {
            &x.mant >> k as u32
        } else {
            &x.mant << (-k) as u32
        };
        let one = BigInt::one() << w;
        // ln m = 2 atanh(t), t = (m-1)/(m+1) in [0, 1/3)
        let t = ((&m - &one) << w) / (&m + &one);
        let t2 = (&t * &t) >> w;
        let mut power = t.clone();
        let mut sum = BigInt::zero();
        let mut j = 1u64;
        while !power.is_zero() {
            sum += &power / BigInt::from(j);
            power = (&power * &t2) >> w;
            j += 2;
        }
        let ln_m = sum << 1u32;
        let ln2 = Self::atanh_inv(3, w) << 1u32;
        let mant = ln_m + ln2 * BigInt::from(k);
        Real { mant, bits: w }.with_bits(self.bits)
    }

    /// `(sin x, cos x)` by Taylor series; intended for `|x| <= pi`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let w = self.bits + GUARD;
        let x = self.with_bits(w);
        let x2 = (&x.mant * &x.mant) >> w;
        let one = BigInt::one() << w;

        let mut sin = BigInt::zero();
        let mut term = x.mant.clone();
        let mut n = 1u64;
        while !term.is_zero() {
            sin += &term;
            term = -((&term * &x2) >> w) / BigInt::from((n + 1) * (n + 2));
            n += 2;
        }

        let mut cos = BigInt::zero();
        let mut term = one;
        let mut n = 0u64;
        while !term.is_zero() {
            cos += &term;
            term = -((&term * &x2) >> w) / BigInt::from((n + 1) * (n + 2));
            n += 2;
        }
        (
            Real { mant: sin, bits: w }.with_bits(self.bits),
            Real { mant: cos, bits: w }.with_bits(self.bits),
        )
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        assert_eq!(self.bits, rhs.bits);
        Real { mant: &self.mant + &rhs.mant, bits: self.bits }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        assert_eq!(self.bits, rhs.bits);
        Real { mant: &self.mant - &rhs.mant, bits: self.bits }
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        assert_eq!(self.bits, rhs.bits);
        Real { mant: shift_round(&(&self.mant * &rhs.mant), self.bits), bits: self.bits }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mant: -&self.mant, bits: self.bits }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.bits == other.bits).then(|| self.mant.cmp(&other.mant))
    }
}

/// Complex number with [`Real`] parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        Complex::new(Real::zero(bits), Real::zero(bits))
    }

    pub fn one(bits: u32) -> Self {
        Complex::new(Real::one(bits), Real::zero(bits))
    }

    /// `exp(2 pi i k / n)`.
    pub fn root_of_unity(k: u64, n: u64, bits: u32) -> Self {
        let k = k % n;
        // angle in (-pi, pi] keeps the Taylor series short
        let signed = if 2 * k > n { k as i64 - n as i64 } else { k as i64 };
        let two_pi = Real::pi(bits + 8).mul_int(&BigInt::from(2));
        let angle = two_pi
            .mul_int(&BigInt::from(signed))
            .div_int(&BigInt::from(n))
            .with_bits(bits);
        let (s, c) = angle.sin_cos();
        Complex::new(c, s)
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Complex::new(self.re.mul_int(k), self.im.mul_int(k))
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        Complex::new(self.re.div_int(k), self.im.div_int(k))
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        Complex::new(re, im)
    }
}
