//! Pólya groups of quadratic fields: the subgroup of the class group
//! generated by the ambiguous ideals, and the quotient `Cl(K)/Po(K)`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::forms::{self, class_group_definite, class_group_real, definite_op, QuadForm, RealClasses};
use crate::group::AbGroup;
use crate::quadfield::{ambiguous_forms, FundamentalDiscriminant};

#[derive(Debug, Clone)]
pub struct PolyaGroup {
    pub field: FundamentalDiscriminant,
    /// Class of each ambiguous form, in ramified-prime order.
    pub generators: Vec<QuadForm>,
    pub group: AbGroup<QuadForm>,
}

impl PolyaGroup {
    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// `true` iff `K` is a Pólya field.
    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }
}

/// Which class group real fields are measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassSense {
    /// Ideal classes modulo principal ideals.
    Wide,
    /// Ideal classes modulo totally positive principal ideals.
    Narrow,
}

fn reduced_generators(field: &FundamentalDiscriminant) -> Vec<QuadForm> {
    ambiguous_forms(field)
        .into_iter()
        .map(|a| forms::reduce_definite(&a.form).expect("ambiguous forms are primitive and positive"))
        .collect()
}

/// Pólya group of `K`; real fields use the wide class group.
pub fn polya_group(field: &FundamentalDiscriminant) -> Result<PolyaGroup> {
    polya_group_in(field, ClassSense::Wide)
}

pub fn polya_group_in(field: &FundamentalDiscriminant, sense: ClassSense) -> Result<PolyaGroup> {
    if field.is_imaginary() {
        let generators = reduced_generators(field);
        let identity = QuadForm::principal(&field.d_big());
        let group = AbGroup::generated_by(&generators, identity, definite_op);
        return Ok(PolyaGroup { field: field.clone(), generators, group });
    }
    let classes = RealClasses::new(field.d())?;
    polya_group_real(field, &classes, sense)
}

fn polya_group_real(field: &FundamentalDiscriminant, classes: &RealClasses, sense: ClassSense) -> Result<PolyaGroup> {
    let amb = ambiguous_forms(field);
    let group = match sense {
        ClassSense::Wide => {
            let generators: Vec<QuadForm> = amb.iter().map(|a| classes.wide_rep(&a.form)).collect();
            let identity = classes.wide_rep(&classes.identity());
            let group = AbGroup::generated_by(&generators, identity, |x, y| classes.wide_op(x, y));
            (generators, group)
        }
        ClassSense::Narrow => {
            let generators: Vec<QuadForm> = amb.iter().map(|a| classes.narrow_rep(&a.form)).collect();
            let group = AbGroup::generated_by(&generators, classes.identity(), |x, y| classes.narrow_op(x, y));
            (generators, group)
        }
    };
    Ok(PolyaGroup { field: field.clone(), generators: group.0, group: group.1 })
}

/// `2^(s-1)` for an imaginary quadratic field with `s` ramified primes.
pub fn hilbert_order(field: &FundamentalDiscriminant) -> Result<u64> {
    if !field.is_imaginary() {
        return Err(Error::InvalidInput(format!("{} is not an imaginary discriminant", field.d())));
    }
    Ok(1u64 << (field.s() - 1))
}

/// `Cl(K)/Po(K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeClassGroup {
    pub d: i64,
    pub class_number: u64,
    pub class_divisors: Vec<u64>,
    pub polya_order: u64,
    pub polya_divisors: Vec<u64>,
    pub order: u64,
    pub divisors: Vec<u64>,
    pub trivial: bool,
}

pub fn relative_class_group(field: &FundamentalDiscriminant) -> Result<RelativeClassGroup> {
    let (cl, po) = if field.is_imaginary() {
        (class_group_definite(field)?, polya_group(field)?)
    } else {
        let groups = class_group_real(field)?;
        let po = polya_group_real(field, &groups.classes, ClassSense::Wide)?;
        (groups.wide, po)
    };
    let h = cl.order();
    let p = po.order();
    if h % p != 0 {
        return Err(Error::Invariant(format!("|Po| = {p} does not divide h = {h} for {}", field.d())));
    }
    let divisors = cl.quotient_divisors(&po.generators);
    let order: u64 = divisors.iter().product();
    if order * p != h {
        return Err(Error::Invariant(format!("quotient order {order} * {p} != {h} for {}", field.d())));
    }
    Ok(RelativeClassGroup {
        d: field.d(),
        class_number: h,
        class_divisors: cl.elementary_divisors().to_vec(),
        polya_order: p,
        polya_divisors: po.group.elementary_divisors().to_vec(),
        order,
        divisors,
        trivial: order == 1,
    })
}

/// `|Po(K)| / sqrt|d|`.
pub fn polya_ratio(field: &FundamentalDiscriminant) -> Result<f64> {
    Ok(polya_group(field)?.order() as f64 / (field.d().unsigned_abs() as f64).sqrt())
}

/// Does every Pólya generator become principal after raising to `exponent`?
pub fn generators_killed_by(po: &PolyaGroup, exponent: u64) -> bool {
    let d: BigInt = po.field.d_big();
    po.generators.iter().all(|g| {
        let mut acc = QuadForm::principal(&d);
        for _ in 0..exponent {
            acc = forms::compose(&acc, g).expect("same discriminant");
        }
        forms::is_principal(&acc).expect("primitive")
    })
}
