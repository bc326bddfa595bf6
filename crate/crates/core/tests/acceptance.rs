//! Acceptance checks, one PASS/FAIL line each. Oracles here are written
//! independently of the library code they check.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use polya::abelian::{
    discriminant_from_conductor_formula, discriminant_oracle, hminus_cyclotomic, lambda_bound_check,
    subfields_of_cyclotomic,
};
use polya::forms::{class_number_analytic, class_number_definite, compose, is_principal};
use polya::polya::polya_group;
use polya::quadfield::{fundamental_discriminants, make_field};
use polya::sieve::sieve_family;
use polya::survey::{cmd_survey_imaginary, growth_buckets, survey_rows, Format, SurveyConfig};
use polya::units::{check_family, regulator_ratio, Family, FamilyOutcome};

type Check = std::result::Result<String, String>;

const GOLDEN_SURVEY: &str = include_str!("golden/survey_b1000.csv");

fn distinct_primes(mut n: u64) -> u32 {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            count += 1;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    count + u32::from(n > 1)
}

fn squarefree(mut n: u64) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

// h(d) for d < 0 by counting reduced (a, b, c): |b| <= a <= c, b >= 0 on the boundary.
fn count_reduced(d: i64) -> u64 {
    let n = -d;
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let t = b * b + n;
            if t % (4 * a) != 0 {
                continue;
            }
            let c = t / (4 * a);
            if c < a || (c == a && b < 0) || a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

fn cfg(workers: usize) -> SurveyConfig {
    SurveyConfig { workers, precision: 30, format: Format::Csv }
}

fn dual_class_numbers() -> Check {
    let mut n = 0;
    for d in fundamental_discriminants(-10_000, -3) {
        let f = make_field(d).map_err(|e| e.to_string())?;
        let ha = class_number_analytic(&f).map_err(|e| e.to_string())?;
        let he = class_number_definite(d);
        if ha != he {
            return Err(format!("d = {d}: analytic {ha}, forms {he}"));
        }
        n += 1;
    }
    Ok(format!("{n} discriminants agree"))
}

fn hilbert_formula() -> Check {
    let mut n = 0;
    for d in fundamental_discriminants(-10_000, -3) {
        let f = make_field(d).map_err(|e| e.to_string())?;
        let po = polya_group(&f).map_err(|e| e.to_string())?.order();
        let expect = 1u64 << (distinct_primes(d.unsigned_abs()) - 1);
        if po != expect {
            return Err(format!("d = {d}: |Po| = {po}, 2^(s-1) = {expect}"));
        }
        n += 1;
    }
    Ok(format!("{n} fields"))
}

fn squares_principal() -> Check {
    let mut n = 0;
    for d in fundamental_discriminants(-10_000, -3) {
        let f = make_field(d).map_err(|e| e.to_string())?;
        for g in polya_group(&f).map_err(|e| e.to_string())?.generators {
            let sq = compose(&g, &g).map_err(|e| e.to_string())?;
            if !is_principal(&sq).map_err(|e| e.to_string())? {
                return Err(format!("d = {d}: {g} squared is {sq}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} generators"))
}

fn finiteness() -> Check {
    let rows = survey_rows(100_000, &cfg(4)).map_err(|e| e.to_string())?;
    let listed: Vec<i64> = rows.iter().filter(|r| r.trivial_relative).map(|r| r.d).collect();
    // Cl = Po exactly when h = 2^(s-1), since Po sits inside Cl with that order.
    let mut oracle: Vec<i64> = fundamental_discriminants(-100_000, -3)
        .filter(|&d| count_reduced(d) == 1 << (distinct_primes(d.unsigned_abs()) - 1))
        .collect();
    oracle.reverse();
    if listed != oracle {
        return Err(format!("survey lists {} fields, oracle {}", listed.len(), oracle.len()));
    }
    let largest = listed.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0);
    if largest > 10_000 {
        return Err(format!("member with |d| = {largest} > 10^4"));
    }
    Ok(format!("{} fields, largest |d| = {largest}", listed.len()))
}

fn survey_buckets() -> std::result::Result<Vec<polya::survey::GrowthBucket>, String> {
    let rows = survey_rows(100_000, &cfg(4)).map_err(|e| e.to_string())?;
    Ok(growth_buckets(&rows, 100_000))
}

fn vanishing_ratio() -> Check {
    let buckets = survey_buckets()?;
    let maxima: Vec<f64> = buckets.iter().filter(|b| b.lo >= 100).map(|b| b.max_polya_over_sqrt_d).collect();
    if maxima.len() != 3 {
        return Err(format!("expected decades 10^2..10^5, got {}", maxima.len()));
    }
    if !maxima.windows(2).all(|w| w[1] < w[0]) {
        return Err(format!("maxima {maxima:?}"));
    }
    Ok(format!("maxima {maxima:.4?}"))
}

fn growth_exponent() -> Check {
    let buckets = survey_buckets()?;
    let b = buckets.iter().find(|b| b.lo == 10_000).ok_or("no decade at 10^4")?;
    let m = b.median_log_h_over_log_d;
    if (0.40..=0.55).contains(&m) {
        Ok(format!("median {m:.4} over {} fields", b.count))
    } else {
        Err(format!("median {m:.4} outside [0.40, 0.55]"))
    }
}

fn conductor_discriminant() -> Check {
    let mut n = 0;
    for m in 1..=200u64 {
        if m % 4 == 2 {
            continue;
        }
        for k in subfields_of_cyclotomic(m) {
            let formula = discriminant_from_conductor_formula(&k).map_err(|e| e.to_string())?;
            if formula.abs_disc != discriminant_oracle(&k) {
                return Err(format!("m = {m}, subgroup {:?}", k.subgroup()));
            }
            if !lambda_bound_check(&k).map_err(|e| e.to_string())? {
                return Err(format!("lambda > 2 at m = {m}, subgroup {:?}", k.subgroup()));
            }
            n += 1;
        }
    }
    Ok(format!("{n} subfields"))
}

fn unit_families() -> Check {
    let mut exceptions = Vec::new();
    for n in 1..=1000 {
        let (o, _) = check_family(Family::FourN2m1, n).map_err(|e| e.to_string())?;
        if o == FamilyOutcome::Fails {
            return Err(format!("4n^2-1 fails at n = {n}"));
        }
        let (o, _) = check_family(Family::N2p1, n).map_err(|e| e.to_string())?;
        if o == FamilyOutcome::Fails {
            exceptions.push(n);
        }
        if squarefree(Family::N2p1.value(n)) != (o != FamilyOutcome::Skipped) {
            return Err(format!("n^2+1 skip status wrong at n = {n}"));
        }
    }
    if !exceptions.contains(&2) {
        return Err(format!("exceptions {exceptions:?} miss n = 2"));
    }
    Ok(format!("n^2+1 exceptions {exceptions:?}"))
}

fn sieve_floor() -> Check {
    let mut parts = Vec::new();
    for n_max in [1_000u64, 10_000, 100_000] {
        let r = sieve_family(Family::FourN2m1, n_max).map_err(|e| e.to_string())?;
        if 6 * r.count < n_max {
            return Err(format!("density {} at N = {n_max}", r.density));
        }
        parts.push(format!("{:.4}", r.density));
    }
    for family in Family::ALL {
        let r = sieve_family(family, 10_000).map_err(|e| e.to_string())?;
        for row in r.rows() {
            if row.squarefree != squarefree(family.value(row.n)) {
                return Err(format!("{family} disagrees at n = {}", row.n));
            }
        }
    }
    Ok(format!("densities {}", parts.join(", ")))
}

fn regulator_trend() -> Check {
    let mut parts = Vec::new();
    for family in Family::ALL {
        let lo = regulator_ratio(10, family).map_err(|e| e.to_string())?;
        let hi = regulator_ratio(1000, family).map_err(|e| e.to_string())?;
        // The asserted unit holds at both points, so R = ln(x + y sqrt v) directly.
        for (n, got) in [(10u64, lo), (1000, hi)] {
            let v = family.value(n);
            let disc = if v % 4 == 1 { v } else { 4 * v } as f64;
            let (x, y) = family.asserted_unit(n);
            let oracle = (x as f64 + y as f64 * (v as f64).sqrt()).ln().ln() / (0.5 * disc.ln());
            if (oracle - got).abs() > 1e-9 {
                return Err(format!("{family} n = {n}: {got} vs {oracle}"));
            }
        }
        if hi >= lo {
            return Err(format!("{family}: {hi} at 10^3 is not below {lo} at 10"));
        }
        let heuristic = (1000f64).ln().ln() / (1000f64).ln();
        parts.push(format!("{family} {lo:.4} -> {hi:.4} (loglog n/log n = {heuristic:.4})"));
    }
    Ok(parts.join("; "))
}

// Maillet matrix [r(i j^-1)] for 1 <= i, j <= (p-1)/2 has determinant
// +-p^((p-3)/2) h^-(p); evaluated exactly by fraction-free elimination.
fn maillet_hminus(p: i64) -> BigInt {
    let k = ((p - 1) / 2) as usize;
    let inv = |j: i64| (1..p).find(|x| x * j % p == 1).unwrap();
    let mut m: Vec<Vec<BigInt>> =
        (1..=k as i64).map(|i| (1..=k as i64).map(|j| BigInt::from(i * inv(j) % p)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for col in 0..k {
        let Some(piv) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            m.swap(piv, col);
            sign = -sign;
        }
        for r in col + 1..k {
            for c in col + 1..k {
                m[r][c] = (&m[r][c] * &m[col][col] - &m[r][col] * &m[col][c]) / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }
    let det: BigInt = prev * sign;
    let (h, r) = det.abs().div_rem(&BigInt::from(p).pow(((p - 3) / 2) as u32));
    assert!(r.is_zero(), "Maillet determinant for {p} not divisible");
    h
}

fn cyclotomic_minus() -> Check {
    let primes: Vec<u64> = (3..=100u64).filter(|&p| (2..p).all(|q| p % q != 0)).collect();
    let mut worst: f64 = 0.0;
    for &p in &primes {
        let h = hminus_cyclotomic(p).map_err(|e| e.to_string())?;
        if h.value != maillet_hminus(p as i64) {
            return Err(format!("p = {p}: {} vs Maillet {}", h.value, maillet_hminus(p as i64)));
        }
        if h.residue >= 1e-6 {
            return Err(format!("p = {p}: residue {}", h.residue));
        }
        if p <= 19 && h.value != BigInt::from(1) {
            return Err(format!("h^-({p}) = {}", h.value));
        }
        worst = worst.max(h.residue);
    }
    let h23 = hminus_cyclotomic(23).map_err(|e| e.to_string())?.value;
    let k23 = class_number_definite(-23);
    if h23 != BigInt::from(3) || !(&h23 % k23).is_zero() {
        return Err(format!("h^-(23) = {h23}, h(-23) = {k23}"));
    }
    Ok(format!("h^-(23) = {h23} divisible by h(-23) = {k23}; max residue {worst:.1e}"))
}

fn determinism() -> Check {
    let one = cmd_survey_imaginary(1000, &cfg(1)).map_err(|e| e.to_string())?.to_csv_string();
    let eight = cmd_survey_imaginary(1000, &cfg(8)).map_err(|e| e.to_string())?.to_csv_string();
    if one != eight {
        return Err("1 and 8 workers differ".into());
    }
    if one != GOLDEN_SURVEY {
        return Err("output differs from golden file".into());
    }
    Ok(format!("{} bytes identical", one.len()))
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Check); 12] = [
        ("dual-oracle class numbers", dual_class_numbers),
        ("Po order is 2^(s-1)", hilbert_formula),
        ("ambiguous generators square to principal", squares_principal),
        ("Cl = Po list is finite below 10^4", finiteness),
        ("max |Po|/sqrt|d| decreases by decade", vanishing_ratio),
        ("median log h / log |d| in [0.40, 0.55]", growth_exponent),
        ("conductor discriminant formula and lambda <= 2", conductor_discriminant),
        ("unit families", unit_families),
        ("sieve floor 1/6 and brute force", sieve_floor),
        ("regulator ratio decreases", regulator_trend),
        ("cyclotomic minus class numbers", cyclotomic_minus),
        ("worker-count determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
