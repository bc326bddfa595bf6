//! Binary quadratic forms and class groups of quadratic fields.
//!
//! Definite discriminants use Gauss reduction, which picks a unique reduced
//! form per class. Indefinite discriminants use the reduction operator `rho`
//! whose orbits on reduced forms ("cycles") are exactly the proper
//! equivalence classes, i.e. the narrow class group. The wide group is the
//! narrow group modulo the class of a form representing `-1`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::AbGroup;
use crate::intarith::{factorize_u64, isqrt_u64};
use crate::quadfield::FundamentalDiscriminant;
use crate::units;

/// Integral binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn from_big(a: BigInt, b: BigInt, c: BigInt) -> Self {
        QuadForm { a, b, c }
    }

    /// Form with leading coefficient `a`, middle `b` and the `c` forced by `d`.
    pub fn from_a_b_disc(a: BigInt, b: BigInt, d: &BigInt) -> Self {
        let c = (&b * &b - d) / (BigInt::from(4) * &a);
        QuadForm { a, b, c }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// Class inverse `(a, -b, c)`.
    pub fn inverse(&self) -> Self {
        QuadForm { a: self.a.clone(), b: -&self.b, c: self.c.clone() }
    }

    /// Principal form `(1, d mod 2, (d mod 2 - d)/4)` of discriminant `d`.
    pub fn principal(d: &BigInt) -> Self {
        let delta = d.mod_floor(&BigInt::from(2));
        Self::from_a_b_disc(BigInt::one(), delta, d)
    }

    /// Value `f(x, y)`.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }
}

fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Dirichlet composition of two primitive forms with `a > 0`, unreduced.
fn compose_raw(f1: &QuadForm, f2: &QuadForm) -> QuadForm {
    let (f1, f2) = if f1.a > f2.a { (f2, f1) } else { (f1, f2) };
    let s: BigInt = (&f1.b + &f2.b) / 2;
    let n = &f2.b - &s;
    let (y1, d) = if f2.a.is_multiple_of(&f1.a) {
        (BigInt::zero(), f1.a.clone())
    } else {
        let (g, u, _) = xgcd(&f2.a, &f1.a);
        (u, g)
    };
    let (x2, y2, d1) = if s.is_multiple_of(&d) {
        (BigInt::zero(), -BigInt::one(), d.clone())
    } else {
        let (g, u, v) = xgcd(&s, &d);
        (u, -v, g)
    };
    let v1 = &f1.a / &d1;
    let v2 = &f2.a / &d1;
    let r = (&y1 * &y2 * &n - &x2 * &f2.c).mod_floor(&v1);
    let b3 = &f2.b + BigInt::from(2) * &v2 * &r;
    let a3 = &v1 * &v2;
    let c3 = (&f2.c * &d1 + &r * (&f2.b + &v2 * &r)) / &v1;
    QuadForm { a: a3, b: b3, c: c3 }
}

/// Gauss reduction of a primitive positive definite form: the unique form in
/// its class with `|b| <= a <= c`, and `b >= 0` when `|b| = a` or `a = c`.
pub fn reduce_definite(f: &QuadForm) -> Result<QuadForm> {
    if !f.discriminant().is_negative() || !f.a.is_positive() {
        return Err(Error::WrongSign);
    }
    if !f.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    Ok(reduce_definite_unchecked(f.clone()))
}

fn normalize_definite(f: &mut QuadForm) {
    // b into (-a, a]
    let two_a = BigInt::from(2) * &f.a;
    let shifted = (&f.b + &f.a - BigInt::one()).mod_floor(&two_a) - &f.a + BigInt::one();
    let k = (&shifted - &f.b) / &two_a;
    if !k.is_zero() {
        // x -> x + k y
        f.c = &f.a * &k * &k + &f.b * &k + &f.c;
        f.b = shifted;
    }
}

fn reduce_definite_unchecked(mut f: QuadForm) -> QuadForm {
    loop {
        normalize_definite(&mut f);
        if f.a > f.c {
            std::mem::swap(&mut f.a, &mut f.c);
            f.b = -&f.b;
            continue;
        }
        if f.a == f.c && f.b.is_negative() {
            f.b = -&f.b;
        }
        return f;
    }
}

/// `true` iff the indefinite form is reduced: `|sqrt D - 2|a|| < b < sqrt D`.
fn is_reduced_indefinite(f: &QuadForm, sqrt_floor: &BigInt) -> bool {
    let two_a = BigInt::from(2) * f.a.abs();
    f.b.is_positive() && &f.b <= sqrt_floor && &(&two_a + &f.b) > sqrt_floor && &(&two_a - &f.b) <= sqrt_floor
}

/// One step of the reduction operator: `(a, b, c) -> (c, r, (r^2 - D)/4c)`.
fn rho(f: &QuadForm, d: &BigInt, sqrt_floor: &BigInt) -> QuadForm {
    let abs_c = f.c.abs();
    let two_c = BigInt::from(2) * &abs_c;
    let r = if &abs_c > sqrt_floor {
        let r = (-&f.b).mod_floor(&two_c);
        if r > abs_c {
            r - &two_c
        } else {
            r
        }
    } else {
        sqrt_floor - (sqrt_floor + &f.b).mod_floor(&two_c)
    };
    let c = (&r * &r - d) / (BigInt::from(4) * &f.c);
    QuadForm { a: f.c.clone(), b: r, c }
}

/// Reduce an indefinite form of non-square discriminant by iterating `rho`.
pub fn reduce_indefinite(f: &QuadForm) -> QuadForm {
    let d = f.discriminant();
    let s = d.sqrt();
    let mut g = f.clone();
    while !is_reduced_indefinite(&g, &s) {
        g = rho(&g, &d, &s);
    }
    g
}

/// Composition followed by reduction.
///
/// For negative discriminants the result is the unique reduced form; for
/// positive ones it is some reduced form in the product's narrow class.
pub fn compose(f: &QuadForm, g: &QuadForm) -> Result<QuadForm> {
    let d = f.discriminant();
    if d != g.discriminant() {
        return Err(Error::DiscriminantMismatch);
    }
    if !f.is_primitive() || !g.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if d.is_negative() {
        if !f.a.is_positive() || !g.a.is_positive() {
            return Err(Error::WrongSign);
        }
        return Ok(reduce_definite_unchecked(compose_raw(f, g)));
    }
    let s = d.sqrt();
    let lift = |h: &QuadForm| {
        let mut h = h.clone();
        while !h.a.is_positive() || !is_reduced_indefinite(&h, &s) {
            h = rho(&h, &d, &s);
        }
        h
    };
    Ok(reduce_indefinite(&compose_raw(&lift(f), &lift(g))))
}

/// Product of two reduced definite forms, reduced.
pub fn definite_op(x: &QuadForm, y: &QuadForm) -> QuadForm {
    reduce_definite_unchecked(compose_raw(x, y))
}

/// All reduced forms of a negative discriminant, ordered by `(a, b)`.
pub fn reduced_forms_definite(d: i64) -> Vec<QuadForm> {
    let mut out = Vec::new();
    for_each_reduced_definite(d, |a, b, c| out.push(QuadForm::new(a, b, c)));
    out
}

fn for_each_reduced_definite(d: i64, mut visit: impl FnMut(i64, i64, i64)) {
    assert!(d < 0);
    let amax = isqrt_u64((-d / 3) as u64) as i64;
    for a in 1..=amax {
        let start = if (a - d).rem_euclid(2) == 0 { -a + 2 } else { -a + 1 };
        let mut b = start;
        while b <= a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                let ok = c >= a && !(b < 0 && (a == c)) && num_integer::gcd(num_integer::gcd(a, b), c) == 1;
                if ok {
                    visit(a, b, c);
                }
            }
            b += 2;
        }
    }
}

/// Class number of a negative fundamental discriminant by counting reduced forms.
pub fn class_number_definite(d: i64) -> u64 {
    let mut h = 0;
    for_each_reduced_definite(d, |_, _, _| h += 1);
    h
}

// Generators chosen greedily from `elems` until they span all of them.
fn greedy_generators<F>(elems: &[QuadForm], identity: &QuadForm, op: F) -> Vec<QuadForm>
where
    F: Fn(&QuadForm, &QuadForm) -> QuadForm,
{
    let total = elems.len();
    let mut span: HashSet<QuadForm> = HashSet::from([identity.clone()]);
    let mut gens = Vec::new();
    for f in elems {
        if span.len() == total {
            break;
        }
        if span.contains(f) {
            continue;
        }
        gens.push(f.clone());
        let base: Vec<QuadForm> = span.iter().cloned().collect();
        let mut power = f.clone();
        while !span.contains(&power) {
            for x in &base {
                span.insert(op(x, &power));
            }
            power = op(&power, f);
        }
    }
    gens
}

/// Class group of an imaginary quadratic field.
pub fn class_group_definite(field: &FundamentalDiscriminant) -> Result<AbGroup<QuadForm>> {
    let d = field.d();
    if d >= 0 {
        return Err(Error::InvalidInput(format!("discriminant {d} is not negative")));
    }
    let forms = reduced_forms_definite(d);
    let identity = QuadForm::principal(&field.d_big());
    let gens = greedy_generators(&forms, &identity, definite_op);
    let group = AbGroup::generated_by(&gens, identity, definite_op);
    if group.order() != forms.len() as u64 {
        return Err(Error::Invariant(format!(
            "class group of {d}: generated {} classes, enumerated {}",
            group.order(),
            forms.len()
        )));
    }
    Ok(group)
}

/// Number of roots of unity in an imaginary quadratic field.
pub fn roots_of_unity(d: i64) -> u64 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

// chi(a) = (d | a) for 0 <= a < n, by complete multiplicativity over a
// smallest-prime-factor sieve.
fn kronecker_table(d: i64, n: usize) -> Vec<i8> {
    // chi_d is the product of the prime-discriminant characters dividing d;
    // each is periodic with a small period, so multiply tables pointwise.
    let mut chi = vec![1i8; n];
    let mut rest = d;
    for (p, _) in factorize_u64(d.unsigned_abs()) {
        if p == 2 {
            continue;
        }
        let p_star = if p % 4 == 1 { p as i64 } else { -(p as i64) };
        rest /= p_star;
        let mut legendre = vec![-1i8; p as usize];
        legendre[0] = 0;
        for x in 1..p {
            legendre[(x * x % p) as usize] = 1;
        }
        apply_periodic(&mut chi, &legendre);
    }
    let two: Option<[i8; 8]> = match rest {
        1 => None,
        -4 => Some([0, 1, 0, -1, 0, 1, 0, -1]),
        8 => Some([0, 1, 0, -1, 0, -1, 0, 1]),
        -8 => Some([0, 1, 0, 1, 0, -1, 0, -1]),
        _ => unreachable!("{d} is not a fundamental discriminant"),
    };
    if let Some(t) = two {
        apply_periodic(&mut chi, &t);
    }
    chi
}

fn apply_periodic(chi: &mut [i8], table: &[i8]) {
    for block in chi.chunks_mut(table.len()) {
        for (c, &t) in block.iter_mut().zip(table) {
            *c *= t;
        }
    }
}

/// Class number from Dirichlet's formula, `h = -(w/2|d|) sum_{a<|d|} chi_d(a) a`.
pub fn class_number_analytic(field: &FundamentalDiscriminant) -> Result<u64> {
    let d = field.d();
    if d > 0 {
        return Err(Error::OutOfRange(d));
    }
    let n = d.unsigned_abs() as usize;
    let chi = kronecker_table(d, n);
    let sum: i64 = chi.iter().enumerate().map(|(a, &x)| x as i64 * a as i64).sum();
    let scaled = -(sum as i128) * roots_of_unity(d) as i128;
    let den = 2 * n as i128;
    if scaled <= 0 || scaled % den != 0 {
        return Err(Error::Invariant(format!("character sum {sum} for {d} is not -2h|d|/w")));
    }
    Ok((scaled / den) as u64)
}

/// Narrow classes of a positive discriminant as cycles of reduced forms.
#[derive(Debug, Clone)]
pub struct RealClasses {
    d: BigInt,
    cycle_of: HashMap<QuadForm, usize>,
    reps: Vec<QuadForm>,
    cycles: Vec<Vec<QuadForm>>,
    principal: usize,
    minus_one: usize,
}

impl RealClasses {
    pub fn new(d: i64) -> Result<Self> {
        if d <= 0 {
            return Err(Error::InvalidInput(format!("discriminant {d} is not positive")));
        }
        let s = isqrt_u64(d as u64) as i64;
        if s * s == d {
            return Err(Error::PerfectSquare(d as u64));
        }
        let dd = BigInt::from(d);
        let sb = BigInt::from(s);
        let mut reduced: Vec<QuadForm> = Vec::new();
        let mut b = if (d - 1).rem_euclid(2) == 0 { 1 } else { 2 };
        while b <= s {
            let n = (d - b * b) / 4;
            // s - b < 2A <= s + b
            let lo = (s - b) / 2 + 1;
            let hi = (s + b) / 2;
            for a in lo.max(1)..=hi {
                if n % a == 0 {
                    let c = n / a;
                    if num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                        reduced.push(QuadForm::new(a, b, -c));
                        reduced.push(QuadForm::new(-a, b, c));
                    }
                }
            }
            b += 2;
        }
        reduced.sort();

        let mut cycle_of: HashMap<QuadForm, usize> = HashMap::new();
        let mut cycles: Vec<Vec<QuadForm>> = Vec::new();
        for f in &reduced {
            if cycle_of.contains_key(f) {
                continue;
            }
            let id = cycles.len();
            let mut cycle = Vec::new();
            let mut g = f.clone();
            loop {
                cycle_of.insert(g.clone(), id);
                cycle.push(g.clone());
                g = rho(&g, &dd, &sb);
                if &g == f {
                    break;
                }
                if cycle_of.contains_key(&g) {
                    return Err(Error::Invariant(format!("rho is not a permutation for {d}")));
                }
            }
            cycles.push(cycle);
        }
        let reps: Vec<QuadForm> = cycles
            .iter()
            .map(|c| c.iter().min().expect("non-empty cycle").clone())
            .collect();
        let mut this = RealClasses {
            d: dd.clone(),
            cycle_of,
            reps,
            cycles,
            principal: 0,
            minus_one: 0,
        };
        this.principal = this.class_index(&QuadForm::principal(&dd));
        let delta = BigInt::from(d.rem_euclid(2));
        let minus = QuadForm::from_a_b_disc(-BigInt::one(), delta, &dd);
        this.minus_one = this.class_index(&minus);
        Ok(this)
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    /// Number of narrow classes.
    pub fn narrow_class_number(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycles(&self) -> &[Vec<QuadForm>] {
        &self.cycles
    }

    /// Index of the cycle containing the reduction of `f`.
    pub fn class_index(&self, f: &QuadForm) -> usize {
        let g = reduce_indefinite(f);
        self.cycle_of[&g]
    }

    /// Canonical representative (smallest form of the cycle).
    pub fn narrow_rep(&self, f: &QuadForm) -> QuadForm {
        self.reps[self.class_index(f)].clone()
    }

    pub fn identity(&self) -> QuadForm {
        self.reps[self.principal].clone()
    }

    /// Representative of the class of forms representing `-1`.
    pub fn minus_one_class(&self) -> QuadForm {
        self.reps[self.minus_one].clone()
    }

    /// `true` iff a form of the principal genus representing `-1` is narrowly
    /// principal, i.e. the fundamental unit has norm `-1`.
    pub fn minus_one_is_principal(&self) -> bool {
        self.minus_one == self.principal
    }

    pub fn narrow_op(&self, x: &QuadForm, y: &QuadForm) -> QuadForm {
        let p = compose(x, y).expect("same discriminant");
        self.reps[self.cycle_of[&p]].clone()
    }

    /// Canonical wide-class representative: the smaller of `C` and `C * J`.
    pub fn wide_rep(&self, f: &QuadForm) -> QuadForm {
        let c = self.narrow_rep(f);
        if self.minus_one == self.principal {
            return c;
        }
        let cj = self.narrow_op(&c, &self.minus_one_class());
        c.min(cj)
    }

    pub fn wide_op(&self, x: &QuadForm, y: &QuadForm) -> QuadForm {
        self.wide_rep(&self.narrow_op(x, y))
    }

    pub fn is_narrowly_principal(&self, f: &QuadForm) -> bool {
        self.class_index(f) == self.principal
    }

    /// Principal as an ideal class: narrowly principal or in the class of `-1`.
    pub fn is_principal(&self, f: &QuadForm) -> bool {
        let i = self.class_index(f);
        i == self.principal || i == self.minus_one
    }
}

/// Narrow and wide class groups of a real quadratic field.
#[derive(Debug, Clone)]
pub struct RealClassGroups {
    pub narrow: AbGroup<QuadForm>,
    pub wide: AbGroup<QuadForm>,
    pub unit_norm: i8,
    pub classes: RealClasses,
}

pub fn class_group_real(field: &FundamentalDiscriminant) -> Result<RealClassGroups> {
    let d = field.d();
    if d <= 0 {
        return Err(Error::InvalidInput(format!("discriminant {d} is not positive")));
    }
    let classes = RealClasses::new(d)?;
    let unit = units::fundamental_unit(field)?;
    if (unit.norm == -1) != classes.minus_one_is_principal() {
        return Err(Error::Invariant(format!(
            "unit norm {} disagrees with the class of -1 for {d}",
            unit.norm
        )));
    }

    let narrow_op = |x: &QuadForm, y: &QuadForm| classes.narrow_op(x, y);
    let narrow_gens = greedy_generators(&classes.reps, &classes.identity(), narrow_op);
    let narrow = AbGroup::generated_by(&narrow_gens, classes.identity(), narrow_op);

    let wide = if unit.norm == -1 {
        narrow.clone()
    } else {
        let wide_op = |x: &QuadForm, y: &QuadForm| classes.wide_op(x, y);
        let mut wide_elems: Vec<QuadForm> = classes.reps.iter().map(|f| classes.wide_rep(f)).collect();
        wide_elems.sort();
        wide_elems.dedup();
        let identity = classes.wide_rep(&classes.identity());
        let gens = greedy_generators(&wide_elems, &identity, wide_op);
        AbGroup::generated_by(&gens, identity, wide_op)
    };
    if narrow.order() != classes.narrow_class_number() as u64 {
        return Err(Error::Invariant(format!("narrow group of {d} does not cover every cycle")));
    }
    Ok(RealClassGroups { narrow, wide, unit_norm: unit.norm, classes })
}

/// Is the ideal class of `f` trivial? (Wide sense for positive discriminants.)
pub fn is_principal(f: &QuadForm) -> Result<bool> {
    let d = f.discriminant();
    if !f.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if d.is_negative() {
        let r = reduce_definite(f)?;
        return Ok(r == QuadForm::principal(&d));
    }
    let d = d.to_i64().ok_or_else(|| Error::InvalidInput("discriminant too large".into()))?;
    Ok(RealClasses::new(d)?.is_principal(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{fundamental_discriminants, make_field};

    fn field(d: i64) -> FundamentalDiscriminant {
        make_field(d).unwrap()
    }

    // Proper equivalence by search over SL2(Z) matrices with small entries.
    fn sl2_equivalent(f: &QuadForm, g: &QuadForm, bound: i64) -> bool {
        for p in -bound..=bound {
            for q in -bound..=bound {
                for r in -bound..=bound {
                    for s in -bound..=bound {
                        if p * s - q * r != 1 {
                            continue;
                        }
                        let (p, q, r, s) = (BigInt::from(p), BigInt::from(q), BigInt::from(r), BigInt::from(s));
                        let a = f.eval(&p, &r);
                        let c = f.eval(&q, &s);
                        let b = BigInt::from(2) * &f.a * &p * &q + &f.b * (&p * &s + &q * &r) + BigInt::from(2) * &f.c * &r * &s;
                        if QuadForm::from_big(a, b, c) == *g {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_definite(&QuadForm::new(5, 0, 1)).unwrap(), QuadForm::new(1, 0, 5));
        assert_eq!(reduce_definite(&QuadForm::new(2, 2, 1)).unwrap(), QuadForm::new(1, 0, 1));
        assert_eq!(reduce_definite(&QuadForm::new(1, 1, 6)).unwrap(), QuadForm::new(1, 1, 6));
        assert!(sl2_equivalent(&QuadForm::new(2, 2, 1), &QuadForm::new(1, 0, 1), 3));
        assert_eq!(reduce_definite(&QuadForm::new(2, 2, 2)), Err(Error::NotPrimitive));
        assert_eq!(reduce_definite(&QuadForm::new(-1, 0, -5)), Err(Error::WrongSign));
        assert_eq!(reduce_definite(&QuadForm::new(1, 0, -5)), Err(Error::WrongSign));
    }

    #[test]
    fn reduction_agrees_with_brute_force_equivalence() {
        for f in [QuadForm::new(3, 4, 5), QuadForm::new(7, 9, 3), QuadForm::new(6, -5, 2)] {
            let r = reduce_definite(&f).unwrap();
            assert_eq!(r.discriminant(), f.discriminant());
            assert!(sl2_equivalent(&f, &r, 3), "{f} ~ {r}");
        }
    }

    #[test]
    fn compose_examples() {
        let f = QuadForm::new(2, 2, 3);
        assert_eq!(compose(&f, &f).unwrap(), QuadForm::new(1, 0, 5));
        let id = QuadForm::principal(&BigInt::from(-20));
        assert_eq!(compose(&f, &id).unwrap(), f);
        let g = QuadForm::new(2, 1, 3);
        assert_eq!(compose(&g, &g.inverse()).unwrap(), QuadForm::new(1, 1, 6));
        assert_eq!(
            compose(&QuadForm::new(2, 1, 3), &QuadForm::new(1, 0, 5)),
            Err(Error::DiscriminantMismatch)
        );
    }

    #[test]
    fn definite_class_groups() {
        let g = class_group_definite(&field(-23)).unwrap();
        assert_eq!((g.order(), g.elementary_divisors()), (3, &[3][..]));
        assert_eq!(class_group_definite(&field(-4)).unwrap().order(), 1);
        let g = class_group_definite(&field(-84)).unwrap();
        assert_eq!((g.order(), g.elementary_divisors()), (4, &[2, 2][..]));
        let g = class_group_definite(&field(-56)).unwrap();
        assert_eq!(g.elementary_divisors(), &[4]);
        let g = class_group_definite(&field(-5460)).unwrap();
        assert_eq!(g.elementary_divisors(), &[2, 2, 2, 2]);
        assert!(class_group_definite(&field(5)).is_err());
    }

    #[test]
    fn analytic_examples() {
        assert_eq!(class_number_analytic(&field(-23)).unwrap(), 3);
        assert_eq!(class_number_analytic(&field(-20)).unwrap(), 2);
        assert_eq!(class_number_analytic(&field(-7)).unwrap(), 1);
        assert_eq!(class_number_analytic(&field(-3)).unwrap(), 1);
        assert_eq!(class_number_analytic(&field(-4)).unwrap(), 1);
        assert_eq!(class_number_analytic(&field(5)), Err(Error::OutOfRange(5)));
        assert_eq!(roots_of_unity(-3), 6);
    }

    #[test]
    fn analytic_matches_enumeration_small() {
        for d in fundamental_discriminants(-2000, -3) {
            let f = field(d);
            assert_eq!(class_number_analytic(&f).unwrap(), class_number_definite(d), "d = {d}");
        }
    }

    #[test]
    fn character_table_matches_kronecker() {
        use crate::intarith::kronecker_i64;
        for d in fundamental_discriminants(-600, 600) {
            let n = d.unsigned_abs() as usize;
            let chi = kronecker_table(d, n);
            for (a, &x) in chi.iter().enumerate() {
                assert_eq!(x, kronecker_i64(d, a as i64), "d = {d}, a = {a}");
            }
        }
    }

    #[test]
    fn real_class_groups() {
        let g = class_group_real(&field(5)).unwrap();
        assert_eq!((g.narrow.order(), g.wide.order(), g.unit_norm), (1, 1, -1));
        let g = class_group_real(&field(12)).unwrap();
        assert_eq!((g.narrow.order(), g.wide.order(), g.unit_norm), (2, 1, 1));
        let g = class_group_real(&field(40)).unwrap();
        assert_eq!((g.narrow.order(), g.wide.order(), g.unit_norm), (2, 2, -1));
        // Q(sqrt 79): h = 3, narrow 6
        let g = class_group_real(&field(316)).unwrap();
        assert_eq!((g.narrow.order(), g.wide.order()), (6, 3));
    }

    #[test]
    fn reduced_indefinite_forms_are_reduced_and_cycled() {
        let classes = RealClasses::new(40).unwrap();
        for cycle in classes.cycles() {
            for f in cycle {
                assert_eq!(reduce_indefinite(f), *f);
                assert_eq!(f.discriminant(), BigInt::from(40));
            }
        }
        assert!(classes.is_principal(&QuadForm::new(1, 6, -1)));
        assert!(!classes.is_principal(&QuadForm::new(2, 0, -5)));
    }

    #[test]
    fn principality_examples() {
        assert!(is_principal(&QuadForm::new(2, 2, 1)).unwrap());
        assert!(!is_principal(&QuadForm::new(2, 2, 3)).unwrap());
        assert!(!is_principal(&QuadForm::new(2, 0, -5)).unwrap());
        // Q(sqrt 3): (-1, 2, 2) represents -1, principal as an ideal but not narrowly
        let classes = RealClasses::new(12).unwrap();
        let f = QuadForm::new(-1, 2, 2);
        assert!(classes.is_principal(&f));
        assert!(!classes.is_narrowly_principal(&f));
    }

    #[test]
    fn indefinite_reduction_is_equivalence() {
        for f in [QuadForm::new(3, 7, -2), QuadForm::new(-5, 11, 1), QuadForm::new(7, 13, 3)] {
            let r = reduce_indefinite(&f);
            assert_eq!(r.discriminant(), f.discriminant());
            assert!(sl2_equivalent(&f, &r, 4), "{f} ~ {r}");
        }
    }
}
