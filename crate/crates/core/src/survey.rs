//! Range sweeps behind the command-line tool, and their CSV/JSON tables.
//!
//! Every sweep maps a pure per-item function over a range on a private
//! rayon pool and collects in input order, so the output does not depend on
//! the worker count.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::abelian::{hminus_ratio_table, HMINUS_PMAX};
use crate::error::{Error, Result};
use crate::forms::{class_number_analytic, class_number_definite};
use crate::group::structure_string;
use crate::intarith::{is_prime_u64, is_squarefree_u64};
use crate::polya::{hilbert_order, polya_group, relative_class_group};
use crate::quadfield::{fundamental_discriminants, make_field};
use crate::sieve::{density_limit_estimate, sieve_family};
use crate::units::{check_family, fundamental_unit, regulator, Family, FamilyOutcome, REGULATOR_DIGITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}"))),
        }
    }
}

/// Shared knobs of every command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyConfig {
    pub workers: usize,
    /// Decimal digits for regulators.
    pub precision: u32,
    pub format: Format,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig { workers: 1, precision: 30, format: Format::Csv }
    }
}

impl SurveyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::InvalidInput("worker count must be at least 1".into()));
        }
        if self.precision == 0 || self.precision > 10_000 {
            return Err(Error::InvalidInput(format!("precision {} out of range", self.precision)));
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        self.validate()?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))
    }
}

/// Format with 12 significant digits, plain notation when reasonable.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        format!("{mant}e{exp}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => match i64::try_from(*v) {
                Ok(x) => json!(x),
                Err(_) => json!(v.to_string()),
            },
            Cell::Float(v) => fmt_float(*v).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Header, rows, and a trailing `# key: value` summary block.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new(), summary: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.to_string(), value.to_string()));
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        let io = |e: csv::Error| Error::InvalidInput(format!("write failed: {e}"));
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(io)?;
        }
        let mut out = w.into_inner().map_err(|e| Error::InvalidInput(format!("write failed: {e}")))?;
        for (k, v) in &self.summary {
            writeln!(out, "# {k}: {v}").map_err(|e| Error::InvalidInput(format!("write failed: {e}")))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut obj = Map::new();
                for (c, v) in self.columns.iter().zip(r) {
                    obj.insert(c.to_string(), v.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        let mut summary = Map::new();
        for (k, v) in &self.summary {
            summary.insert(k.clone(), json!(v));
        }
        json!({ "columns": self.columns, "rows": rows, "summary": summary })
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                let s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                writeln!(out, "{s}").map_err(|e| Error::InvalidInput(format!("write failed: {e}")))
            }
        }
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("utf-8")
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// Per-field report for a single discriminant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadReport {
    pub d: i64,
    pub ramified: Vec<u64>,
    pub s: u32,
    pub class_number: u64,
    pub class_structure: String,
    pub polya_order: u64,
    pub polya_structure: String,
    pub relative_order: u64,
    pub relative_structure: String,
    pub relative_trivial: bool,
    pub hilbert_order: Option<u64>,
    pub analytic_class_number: Option<u64>,
    pub narrow_class_number: Option<u64>,
    pub unit: Option<String>,
    pub unit_norm: Option<i8>,
    pub regulator: Option<String>,
}

impl QuadReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["field", "value"]);
        let v = serde_json::to_value(self).expect("serializable");
        for key in [
            "d",
            "ramified",
            "s",
            "class_number",
            "class_structure",
            "polya_order",
            "polya_structure",
            "relative_order",
            "relative_structure",
            "relative_trivial",
            "hilbert_order",
            "analytic_class_number",
            "narrow_class_number",
            "unit",
            "unit_norm",
            "regulator",
        ] {
            let cell = match &v[key] {
                Value::Null => continue,
                Value::String(s) => s.clone(),
                Value::Array(a) => a.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                other => other.to_string(),
            };
            t.push(vec![Cell::from(key), Cell::Text(cell)]);
        }
        t
    }
}

/// Class group, Pólya group, quotient and (for `d > 0`) the fundamental unit.
pub fn cmd_quad(d: i64, cfg: &SurveyConfig) -> Result<QuadReport> {
    cfg.validate()?;
    let field = make_field(d)?;
    let rel = relative_class_group(&field)?;
    let mut report = QuadReport {
        d,
        ramified: field.ramified().to_vec(),
        s: field.s(),
        class_number: rel.class_number,
        class_structure: structure_string(&rel.class_divisors),
        polya_order: rel.polya_order,
        polya_structure: structure_string(&rel.polya_divisors),
        relative_order: rel.order,
        relative_structure: structure_string(&rel.divisors),
        relative_trivial: rel.trivial,
        hilbert_order: None,
        analytic_class_number: None,
        narrow_class_number: None,
        unit: None,
        unit_norm: None,
        regulator: None,
    };
    if d < 0 {
        let hilbert = hilbert_order(&field)?;
        if hilbert != rel.polya_order {
            return Err(Error::Invariant(format!("|Po| = {} but 2^(s-1) = {hilbert} for {d}", rel.polya_order)));
        }
        report.hilbert_order = Some(hilbert);
        let ha = class_number_analytic(&field)?;
        if ha != rel.class_number {
            return Err(Error::Invariant(format!("analytic h = {ha}, forms h = {} for {d}", rel.class_number)));
        }
        report.analytic_class_number = Some(ha);
    } else {
        let groups = crate::forms::class_group_real(&field)?;
        let unit = fundamental_unit(&field)?;
        let reg = if cfg.precision <= REGULATOR_DIGITS {
            unit.regulator.to_decimal(cfg.precision as usize)
        } else {
            regulator(&unit.x, &unit.y, unit.n, unit.sigma, cfg.precision).to_decimal(cfg.precision as usize)
        };
        report.narrow_class_number = Some(groups.narrow.order());
        report.unit = Some(unit.to_string());
        report.unit_norm = Some(unit.norm);
        report.regulator = Some(reg);
    }
    Ok(report)
}

/// One imaginary field of the survey.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyRow {
    pub d: i64,
    pub h: u64,
    pub s: u32,
    pub polya_order: u64,
    pub h_over_sqrt_d: f64,
    pub polya_over_sqrt_d: f64,
    pub trivial_relative: bool,
}

fn survey_row(d: i64) -> Result<SurveyRow> {
    let field = make_field(d)?;
    let h = class_number_definite(d);
    let ha = class_number_analytic(&field)?;
    if ha != h {
        return Err(Error::Invariant(format!("analytic h = {ha}, forms h = {h} for {d}")));
    }
    let po = polya_group(&field)?.order();
    if h % po != 0 {
        return Err(Error::Invariant(format!("|Po| = {po} does not divide h = {h} for {d}")));
    }
    let root = (d.unsigned_abs() as f64).sqrt();
    Ok(SurveyRow {
        d,
        h,
        s: field.s(),
        polya_order: po,
        h_over_sqrt_d: h as f64 / root,
        polya_over_sqrt_d: po as f64 / root,
        trivial_relative: h == po,
    })
}

/// Every imaginary fundamental discriminant `-B <= d < 0`, by increasing `|d|`.
pub fn survey_rows(bound: u64, cfg: &SurveyConfig) -> Result<Vec<SurveyRow>> {
    if bound < 3 {
        return Err(Error::InvalidInput(format!("bound {bound} is below 3")));
    }
    let mut ds: Vec<i64> = fundamental_discriminants(-(bound as i64), -1).collect();
    ds.reverse();
    cfg.pool()?.install(|| ds.par_iter().map(|&d| survey_row(d)).collect())
}

pub const SURVEY_COLUMNS: [&str; 7] =
    ["d", "h", "s", "polya_order", "h_over_sqrt_d", "polya_over_sqrt_d", "trivial_relative"];

pub fn cmd_survey_imaginary(bound: u64, cfg: &SurveyConfig) -> Result<Table> {
    let rows = survey_rows(bound, cfg)?;
    let mut t = Table::new(&SURVEY_COLUMNS);
    for r in &rows {
        t.push(vec![
            r.d.into(),
            r.h.into(),
            r.s.into(),
            r.polya_order.into(),
            r.h_over_sqrt_d.into(),
            r.polya_over_sqrt_d.into(),
            r.trivial_relative.into(),
        ]);
    }
    let equal: Vec<i64> = rows.iter().filter(|r| r.trivial_relative).map(|r| r.d).collect();
    t.note("bound", bound);
    t.note("fields", rows.len());
    t.note("cl_equals_po_count", equal.len());
    t.note("cl_equals_po_max_abs_d", equal.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0));
    t.note("cl_equals_po", join(&equal, " "));
    Ok(t)
}

/// Statistics of one decade `[lo, hi]` of `|d|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthBucket {
    pub lo: u64,
    pub hi: u64,
    pub count: usize,
    pub median_log_h_over_log_d: f64,
    pub max_log_h_over_log_d: f64,
    pub max_polya_over_sqrt_d: f64,
    pub argmax_polya_d: i64,
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

pub fn growth_buckets(rows: &[SurveyRow], bound: u64) -> Vec<GrowthBucket> {
    let mut out = Vec::new();
    let mut lo = 1u64;
    while lo <= bound {
        let hi = (lo * 10 - 1).min(bound);
        let members: Vec<&SurveyRow> = rows.iter().filter(|r| (lo..=hi).contains(&r.d.unsigned_abs())).collect();
        if !members.is_empty() {
            let mut ratios: Vec<f64> =
                members.iter().map(|r| (r.h as f64).ln() / (r.d.unsigned_abs() as f64).ln()).collect();
            let max_ratio = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let best = members
                .iter()
                .max_by(|a, b| a.polya_over_sqrt_d.total_cmp(&b.polya_over_sqrt_d).then(b.d.cmp(&a.d)))
                .expect("non-empty");
            out.push(GrowthBucket {
                lo,
                hi,
                count: members.len(),
                median_log_h_over_log_d: median(&mut ratios),
                max_log_h_over_log_d: max_ratio,
                max_polya_over_sqrt_d: best.polya_over_sqrt_d,
                argmax_polya_d: best.d,
            });
        }
        lo *= 10;
    }
    out
}

pub fn cmd_growth(bound: u64, cfg: &SurveyConfig) -> Result<Table> {
    if bound < 1000 {
        return Err(Error::InvalidInput(format!("bound {bound} is below 1000")));
    }
    let rows = survey_rows(bound, cfg)?;
    let buckets = growth_buckets(&rows, bound);
    let mut t = Table::new(&[
        "abs_d_lo",
        "abs_d_hi",
        "fields",
        "median_log_h_over_log_d",
        "max_log_h_over_log_d",
        "max_polya_over_sqrt_d",
        "argmax_d",
    ]);
    for b in &buckets {
        t.push(vec![
            b.lo.into(),
            b.hi.into(),
            (b.count as u64).into(),
            b.median_log_h_over_log_d.into(),
            b.max_log_h_over_log_d.into(),
            b.max_polya_over_sqrt_d.into(),
            b.argmax_polya_d.into(),
        ]);
    }
    let tail: Vec<&GrowthBucket> = buckets.iter().filter(|b| b.lo >= 100).collect();
    let decreasing = tail.windows(2).all(|w| w[1].max_polya_over_sqrt_d < w[0].max_polya_over_sqrt_d);
    t.note("bound", bound);
    t.note("buckets", buckets.len());
    t.note("max_polya_ratio_strictly_decreasing_from_100", decreasing);
    Ok(t)
}

/// One member of a unit family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    pub family: Family,
    pub n: u64,
    pub value: u64,
    pub squarefree: bool,
    pub outcome: FamilyOutcome,
    pub unit: Option<String>,
    pub norm: Option<i8>,
    pub regulator: Option<String>,
    pub regulator_f64: Option<f64>,
    /// `log R / log sqrt d`.
    pub log_r_over_log_sqrt_d: Option<f64>,
    pub class_number: Option<u64>,
    pub polya_order: Option<u64>,
    pub relative_order: Option<u64>,
    /// `|Cl/Po| / log sqrt d`.
    pub relative_over_log_sqrt_d: Option<f64>,
    /// `log |Cl/Po| / log sqrt d`.
    pub log_relative_over_log_sqrt_d: Option<f64>,
}

/// Unit check and regulator for one family member; class data when `classes`.
pub fn family_row(family: Family, n: u64, precision: u32, classes: bool) -> Result<FamilyRow> {
    let value = family.value(n);
    let mut row = FamilyRow {
        family,
        n,
        value,
        squarefree: is_squarefree_u64(value),
        outcome: FamilyOutcome::Skipped,
        unit: None,
        norm: None,
        regulator: None,
        regulator_f64: None,
        log_r_over_log_sqrt_d: None,
        class_number: None,
        polya_order: None,
        relative_order: None,
        relative_over_log_sqrt_d: None,
        log_relative_over_log_sqrt_d: None,
    };
    let (outcome, unit) = check_family(family, n)?;
    row.outcome = outcome;
    let Some(unit) = unit else { return Ok(row) };
    let log_sqrt_d = 0.5 * (unit.d as f64).ln();
    let r = unit.regulator.to_f64();
    row.regulator = Some(if precision <= REGULATOR_DIGITS {
        unit.regulator.to_decimal(precision as usize)
    } else {
        regulator(&unit.x, &unit.y, unit.n, unit.sigma, precision).to_decimal(precision as usize)
    });
    row.regulator_f64 = Some(r);
    row.log_r_over_log_sqrt_d = Some(r.ln() / log_sqrt_d);
    row.unit = Some(unit.to_string());
    row.norm = Some(unit.norm);
    if classes {
        let rel = relative_class_group(&make_field(unit.d)?)?;
        row.class_number = Some(rel.class_number);
        row.polya_order = Some(rel.polya_order);
        row.relative_order = Some(rel.order);
        row.relative_over_log_sqrt_d = Some(rel.order as f64 / log_sqrt_d);
        row.log_relative_over_log_sqrt_d = Some((rel.order as f64).ln() / log_sqrt_d);
    }
    Ok(row)
}

pub fn family_rows(family: Family, n_max: u64, cfg: &SurveyConfig, classes: bool) -> Result<Vec<FamilyRow>> {
    let precision = cfg.precision;
    cfg.pool()?.install(|| (1..=n_max).into_par_iter().map(|n| family_row(family, n, precision, classes)).collect())
}

pub const FAMILY_COLUMNS: [&str; 15] = [
    "family",
    "n",
    "value",
    "squarefree",
    "unit_check",
    "unit",
    "norm",
    "regulator",
    "regulator_f64",
    "log_r_over_log_sqrt_d",
    "class_number",
    "polya_order",
    "relative_order",
    "relative_over_log_sqrt_d",
    "log_relative_over_log_sqrt_d",
];

/// Both unit families for `1 <= n <= N`, with sieve densities in the summary.
pub fn cmd_families(n_max: u64, families: &[Family], cfg: &SurveyConfig, classes: bool) -> Result<Table> {
    if n_max < 10 {
        return Err(Error::InvalidInput(format!("N = {n_max} is below 10")));
    }
    let mut t = Table::new(&FAMILY_COLUMNS);
    for &family in families {
        let rows = family_rows(family, n_max, cfg, classes)?;
        for r in &rows {
            t.push(vec![
                family.tag().into(),
                r.n.into(),
                r.value.into(),
                r.squarefree.into(),
                r.outcome.to_string().into(),
                r.unit.clone().into(),
                r.norm.map(|x| x as i64).into(),
                r.regulator.clone().into(),
                r.regulator_f64.into(),
                r.log_r_over_log_sqrt_d.into(),
                r.class_number.into(),
                r.polya_order.into(),
                r.relative_order.into(),
                r.relative_over_log_sqrt_d.into(),
                r.log_relative_over_log_sqrt_d.into(),
            ]);
        }
        let failures: Vec<String> = rows
            .iter()
            .filter(|r| r.outcome == FamilyOutcome::Fails)
            .map(|r| format!("{}:{}", r.n, r.unit.as_deref().unwrap_or("")))
            .collect();
        let sieve = cfg.pool()?.install(|| sieve_family(family, n_max))?;
        let tag = family.tag();
        t.note(&format!("{tag}_failures"), failures.join(" "));
        t.note(&format!("{tag}_failure_count"), failures.len());
        t.note(&format!("{tag}_squarefree_count"), sieve.count);
        t.note(&format!("{tag}_density"), fmt_float(sieve.density));
        t.note(&format!("{tag}_density_estimate"), fmt_float(density_limit_estimate(family, n_max)));
        t.note(&format!("{tag}_density_at_least_one_sixth"), sieve.meets_sixth_floor());
    }
    t.note("n_max", n_max);
    Ok(t)
}

/// Minus class numbers of `Q(zeta_p)` for odd primes `p <= pmax`.
pub fn cmd_cyclotomic(pmax: u64, cfg: &SurveyConfig) -> Result<Table> {
    if !(3..=HMINUS_PMAX).contains(&pmax) {
        return Err(Error::InvalidInput(format!("pmax must lie in 3..={HMINUS_PMAX}")));
    }
    let primes: Vec<u64> = (3..=pmax).filter(|&p| is_prime_u64(p)).collect();
    let rows = cfg.pool()?.install(|| {
        primes
            .par_iter()
            .map(|&p| hminus_ratio_table(&[p]).map(|mut v| v.remove(0)))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut t = Table::new(&[
        "p",
        "degree",
        "abs_disc",
        "oracle_match",
        "hminus",
        "log_hminus_over_log_sqrt_d",
        "max_lambda",
        "lambda_at_most_2",
        "rounding_residue",
        "regulator_ratio_q1",
    ]);
    for r in &rows {
        if !r.oracle_match {
            return Err(Error::Invariant(format!("discriminant mismatch for Q(zeta_{})", r.p)));
        }
        t.push(vec![
            r.p.into(),
            r.degree.into(),
            r.abs_disc.clone().into(),
            r.oracle_match.into(),
            r.hminus.clone().into(),
            r.ratio.into(),
            r.max_lambda.into(),
            r.lambda_ok.into(),
            r.residue.into(),
            r.regulator_ratio.clone().into(),
        ]);
    }
    t.note("pmax", pmax);
    t.note("all_lambda_at_most_2", rows.iter().all(|r| r.lambda_ok));
    t.note("max_rounding_residue", fmt_float(rows.iter().map(|r| r.residue).fold(0.0, f64::max)));
    Ok(t)
}

/// Squarefree sieve table for one family.
pub fn cmd_sieve(family: Family, n_max: u64, cfg: &SurveyConfig) -> Result<Table> {
    let report = cfg.pool()?.install(|| sieve_family(family, n_max))?;
    let mut t = Table::new(&["n", "family_value", "squarefree", "witness_p"]);
    for r in report.rows() {
        t.push(vec![r.n.into(), r.family_value.into(), r.squarefree.into(), r.witness_p.into()]);
    }
    t.note("family", family.tag());
    t.note("n_max", n_max);
    t.note("count", report.count);
    t.note("density", fmt_float(report.density));
    t.note("density_at_least_one_sixth", report.meets_sixth_floor());
    t.note("prime_count_bounds_hold", report.prime_bounds_hold());
    if n_max >= 1000 {
        t.note("density_estimate", fmt_float(density_limit_estimate(family, n_max)));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(fmt_float(0.5), "0.5");
        assert_eq!(fmt_float(2.0 / 20f64.sqrt()), "0.4472135955");
        assert_eq!(fmt_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_float(123456.0), "123456");
        assert_eq!(fmt_float(1e-9), "1e-9");
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(-2.5), "-2.5");
    }

    #[test]
    fn quad_reports() {
        let cfg = SurveyConfig::default();
        let r = cmd_quad(-84, &cfg).unwrap();
        assert_eq!((r.class_number, r.polya_order, r.relative_trivial), (4, 4, true));
        let r = cmd_quad(-23, &cfg).unwrap();
        assert_eq!((r.class_number, r.polya_order), (3, 1));
        let r = cmd_quad(40, &cfg).unwrap();
        assert_eq!((r.class_number, r.unit.as_deref(), r.unit_norm), (2, Some("3 + 1*sqrt(10)"), Some(-1)));
        assert!(r.regulator.unwrap().starts_with("1.8184464592"));
        assert_eq!(cmd_quad(45, &cfg).unwrap_err(), Error::NotFundamental(45));
    }

    #[test]
    fn survey_small() {
        let cfg = SurveyConfig::default();
        let t = cmd_survey_imaginary(100, &cfg).unwrap();
        let d_col = t.column("d").unwrap();
        let triv = t.column("trivial_relative").unwrap();
        let row = t.rows.iter().find(|r| r[d_col] == Cell::Int(-84)).unwrap();
        assert_eq!(row[triv], Cell::Bool(true));
        assert!(t.summary_value("cl_equals_po").unwrap().contains("-84"));
    }

    #[test]
    fn workers_do_not_change_output() {
        let one = cmd_survey_imaginary(500, &SurveyConfig { workers: 1, ..Default::default() }).unwrap();
        let four = cmd_survey_imaginary(500, &SurveyConfig { workers: 4, ..Default::default() }).unwrap();
        assert_eq!(one.to_csv_string(), four.to_csv_string());
    }

    #[test]
    fn growth_rows() {
        let t = cmd_growth(1000, &SurveyConfig::default()).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(cmd_growth(999, &SurveyConfig::default()).is_err());
    }

    #[test]
    fn families_small() {
        let t = cmd_families(12, &Family::ALL, &SurveyConfig::default(), true).unwrap();
        assert_eq!(t.rows.len(), 24);
        assert!(t.summary_value("n2p1_failures").unwrap().starts_with("2:"));
        assert_eq!(t.summary_value("4n2m1_failure_count"), Some("0"));
    }

    #[test]
    fn cyclotomic_small() {
        let t = cmd_cyclotomic(23, &SurveyConfig::default()).unwrap();
        let h = t.column("hminus").unwrap();
        assert_eq!(t.rows.last().unwrap()[h], Cell::Text("3".into()));
        assert!(cmd_cyclotomic(101, &SurveyConfig::default()).is_err());
    }

    #[test]
    fn sieve_table() {
        let t = cmd_sieve(Family::N2p1, 7, &SurveyConfig::default()).unwrap();
        let csv = t.to_csv_string();
        assert!(csv.starts_with("n,family_value,squarefree,witness_p\n1,2,true,\n"));
        assert!(csv.contains("7,50,false,5\n"));
    }
}
