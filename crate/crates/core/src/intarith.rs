//! Exact integer primitives: primality, factorization, Kronecker symbols,
//! integer square roots and square-free tests.
//!
//! Hot loops in the sweeps go through the `u64`/`i64` entry points; the
//! `BigInt`/`BigUint` entry points accept anything and fall back to the
//! machine-word paths whenever the value fits.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division bound before switching to Pollard rho.
pub const TRIAL_LIMIT: u32 = 1_000_000;

/// Rounds of the strong-pseudoprime test above 2^64.
pub const BIG_MR_ROUNDS: usize = 30;

// Witnesses that make Miller-Rabin deterministic below 3.3 * 10^24.
const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn prime_table() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

/// All primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u32) -> Vec<u32> {
    let n = limit as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes `<= limit`, served from the shared table when possible.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit <= TRIAL_LIMIT as u64 {
        let table = prime_table();
        let end = table.partition_point(|&p| (p as u64) <= limit);
        table[..end].iter().map(|&p| p as u64).collect()
    } else {
        primes_up_to(limit as u32).into_iter().map(u64::from).collect()
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd((a % m) as i64, m as i64);
    (g == 1).then(|| x.rem_euclid(m as i64) as u64)
}

fn strong_probable_prime(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_U64 {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    MR_BASES_U64.iter().all(|&a| strong_probable_prime(n, a))
}

fn strong_probable_prime_big(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Primality of an arbitrary nonnegative integer.
///
/// Exact below 2^64. Above that, a strong-pseudoprime test to the first
/// [`BIG_MR_ROUNDS`] prime bases.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    prime_table()
        .iter()
        .take(BIG_MR_ROUNDS)
        .all(|&p| strong_probable_prime_big(n, &BigUint::from(p)))
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

// Brent's variant of Pollard rho; `n` odd composite.
fn rho_u64(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut y, mut r, mut q, m) = (2u64, 1u64, 1u64, 128u64);
        let mut g = 1;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let f = rho_u64(n);
    split_u64(f, out);
    split_u64(n / f, out);
}

fn collect(mut primes: Vec<u64>) -> Vec<(u64, u32)> {
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Factorization of a nonzero `u64` as `(prime, exponent)` pairs sorted by prime.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    for &p in prime_table() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    if n > 1 {
        split_u64(n, &mut primes);
    }
    collect(primes)
}

fn rho_big(n: &BigUint) -> BigUint {
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let (mut r, m) = (1u64, 64u64);
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split_big(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        out.extend(factorize_u64(small).into_iter().flat_map(|(p, e)| {
            std::iter::repeat_n(BigUint::from(p), e as usize)
        }));
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let f = rho_big(&n);
    let cofactor = &n / &f;
    split_big(f, out);
    split_big(cofactor, out);
}

/// Exact factorization of `|n|`: `(prime, exponent)` pairs sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of `p^e`, i.e. `|n|`.
    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Machine-word view, `None` if any prime exceeds `u64`.
    pub fn to_u64_pairs(&self) -> Option<Vec<(u64, u32)>> {
        self.factors
            .iter()
            .map(|(p, e)| p.to_u64().map(|p| (p, *e)))
            .collect()
    }
}

/// Factorize a nonzero integer.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m = n.magnitude().clone();
    let mut primes: Vec<BigUint> = Vec::new();
    if m.to_u64().is_none() {
        for &p in prime_table() {
            let pb = BigUint::from(p);
            if &pb * &pb > m {
                break;
            }
            while (&m % &pb).is_zero() {
                m /= &pb;
                primes.push(pb.clone());
            }
        }
    }
    split_big(m, &mut primes);
    primes.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { factors })
}

/// Kronecker symbol `(a | n)` on machine integers.
pub fn kronecker_i64(a: i64, n: i64) -> i8 {
    let (mut a, mut n) = (a as i128, n as i128);
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut k: i8 = 1;
    let v = n.trailing_zeros();
    n >>= v;
    if v % 2 == 1 && (a.rem_euclid(8) == 3 || a.rem_euclid(8) == 5) {
        k = -k;
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // n odd positive: Jacobi symbol with sign bookkeeping
    a = a.rem_euclid(n);
    while a != 0 {
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            k = -k;
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// Kronecker symbol `(a | n)` with the usual conventions at 0, -1 and 2.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i8 {
    if let (Some(a), Some(n)) = (a.to_i64(), n.to_i64()) {
        return kronecker_i64(a, n);
    }
    if n.is_zero() {
        return if a.magnitude().is_one() { 1 } else { 0 };
    }
    if a.is_even() && n.is_even() {
        return 0;
    }
    let mut k: i8 = 1;
    let mut n = n.clone();
    let v = n.trailing_zeros().unwrap_or(0);
    n >>= v;
    let a8 = a.mod_floor(&BigInt::from(8));
    if v % 2 == 1 && (a8 == BigInt::from(3) || a8 == BigInt::from(5)) {
        k = -k;
    }
    if n.sign() == Sign::Minus {
        n = -n;
        if a.sign() == Sign::Minus {
            k = -k;
        }
    }
    let mut a = a.mod_floor(&n);
    let (three, four, five, eight) = (
        BigInt::from(3),
        BigInt::from(4),
        BigInt::from(5),
        BigInt::from(8),
    );
    while !a.is_zero() {
        let v = a.trailing_zeros().unwrap_or(0);
        a >>= v;
        let n8 = n.mod_floor(&eight);
        if v % 2 == 1 && (n8 == three || n8 == five) {
            k = -k;
        }
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            k = -k;
        }
        let r = n.mod_floor(&a);
        n = a;
        a = r;
    }
    if n.is_one() {
        k
    } else {
        0
    }
}

pub fn is_squarefree_u64(n: u64) -> bool {
    factorize_u64(n).iter().all(|&(_, e)| e == 1)
}

/// True iff no prime square divides `|n|`.
pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    match n.magnitude().to_u64() {
        Some(m) => Ok(is_squarefree_u64(m)),
        None => Ok(factorize(n)?.is_squarefree()),
    }
}

/// Floor square root.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}

pub fn is_square_u64(n: u64) -> bool {
    let r = isqrt_u64(n);
    r * r == n
}

/// Euler's totient from a factorization.
pub fn totient_u64(n: u64) -> u64 {
    factorize_u64(n)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// Positive divisors in ascending order.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize_u64(n) {
        let current = divs.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            divs.extend(current.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// A square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(a, q, p), pow_mod(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Smallest primitive root modulo an odd prime power or 2, 4.
pub fn primitive_root(n: u64) -> Option<u64> {
    let phi = totient_u64(n);
    let prime_factors: Vec<u64> = factorize_u64(phi).into_iter().map(|(p, _)| p).collect();
    (1..n).find(|&g| {
        g.gcd(&n) == 1 && prime_factors.iter().all(|&q| pow_mod(g, phi / q, n) != 1)
    })
}
