//! Pairs each brute-force computation with its closed-form prediction and
//! runs exhaustive sweeps over monic polynomials.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::gauss::{
    classify_order, enumerate_half_systems, gauss_factorial, gauss_factorial_lifted,
    gauss_factorial_upto, gauss_half, mult_order, predict_g, predict_g_upto,
    predict_half_value, predict_many_prime_value, predict_prime_power_value,
    predict_two_prime_value, HalfPrediction, HalfSystem,
};
use crate::poly::{polys_of_degree, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// `G(f)` in odd characteristic.
    Con1,
    /// `G(f)` in characteristic two.
    Con2,
    /// `G(n, f)` for `n >= deg f`.
    Con3,
    /// Order of `G(f, S)`.
    Extension,
    /// Value of `G(f, S)` in every case.
    HalfValue,
    /// `G(f, S)` for prime powers, `q ≡ 3 (mod 4)`, odd degree.
    Gpe,
    /// `G(f, S)` with two prime divisors.
    P1p2,
    /// `G(f, S)` with three or more prime divisors.
    P1p2p3,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::Con1,
        Theorem::Con2,
        Theorem::Con3,
        Theorem::Extension,
        Theorem::HalfValue,
        Theorem::Gpe,
        Theorem::P1p2,
        Theorem::P1p2p3,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Con1 => "con1",
            Theorem::Con2 => "con2",
            Theorem::Con3 => "con3",
            Theorem::Extension => "extension",
            Theorem::HalfValue => "half_value",
            Theorem::Gpe => "gpe",
            Theorem::P1p2 => "p1p2",
            Theorem::P1p2p3 => "p1p2p3",
        }
    }

    /// Whether instances carry a half-system (and therefore need odd `q`).
    pub fn needs_half_system(self) -> bool {
        !matches!(self, Theorem::Con1 | Theorem::Con2 | Theorem::Con3)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// One point of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub f: Poly,
    pub s: Option<HalfSystem>,
    /// Upper degree bound for `G(n, f)`; defaults to `deg f`.
    pub n: Option<usize>,
}

impl Instance {
    pub fn new(f: Poly) -> Self {
        Instance { f, s: None, n: None }
    }

    pub fn with_half_system(f: Poly, s: HalfSystem) -> Self {
        Instance { f, s: Some(s), n: None }
    }

    pub fn with_n(f: Poly, n: usize) -> Self {
        Instance { f, s: None, n: Some(n) }
    }
}

/// One report row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub field: String,
    pub q: u32,
    pub f: String,
    #[serde(rename = "S")]
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub theorem: String,
    pub brute: String,
    pub predicted: String,
    pub matches: bool,
    pub order: Option<u64>,
    pub clause: Option<String>,
}

impl VerdictRecord {
    fn new(instance: &Instance, theorem: Theorem) -> Self {
        let field = instance.f.field();
        VerdictRecord {
            field: field.spec_string(),
            q: field.q(),
            f: instance.f.to_string(),
            s: instance.s.as_ref().map(HalfSystem::to_string),
            n: None,
            theorem: theorem.tag().to_string(),
            brute: String::new(),
            predicted: String::new(),
            matches: false,
            order: None,
            clause: None,
        }
    }
}

fn half_system(instance: &Instance) -> Result<&HalfSystem> {
    instance.s.as_ref().ok_or(Error::MissingHalfSystem)
}

/// Compute the brute-force value and the prediction for one instance.
///
/// Theorems with shape hypotheses (`gpe`, `p1p2`, `p1p2p3`) return
/// [`Error::NotApplicable`] on instances outside them.
pub fn verify_instance(instance: &Instance, theorem: Theorem) -> Result<VerdictRecord> {
    let f = &instance.f;
    if f.is_constant() {
        return Err(if f.is_zero() { Error::ZeroPolynomial } else { Error::ConstantInput });
    }
    let mut rec = VerdictRecord::new(instance, theorem);
    match theorem {
        Theorem::Con1 | Theorem::Con2 => {
            let brute = gauss_factorial(f);
            let predicted = predict_g(f)?;
            rec.matches = brute == predicted;
            rec.brute = brute.to_string();
            rec.predicted = predicted.to_string();
        }
        Theorem::Con3 => {
            let deg = f.deg().unwrap();
            let n = instance.n.unwrap_or(deg);
            let brute = gauss_factorial_upto(n, f)?;
            let predicted = predict_g_upto(n, f)?;
            let lifted = gauss_factorial_lifted(f, (n + 1 - deg) as u32)?;
            rec.n = Some(n);
            rec.matches = brute == predicted && brute == lifted;
            rec.brute = brute.to_string();
            rec.predicted = predicted.to_string();
        }
        Theorem::Extension => {
            let s = half_system(instance)?;
            let brute = gauss_half(f, s)?;
            let observed = mult_order(&brute, f)?;
            let class = classify_order(f, s)?;
            rec.matches = observed == class.order as u64;
            rec.brute = brute.to_string();
            rec.predicted = class.order.to_string();
            rec.order = Some(observed);
            rec.clause = Some(class.clause.tag().to_string());
        }
        Theorem::HalfValue => {
            let s = half_system(instance)?;
            let brute = gauss_half(f, s)?;
            let predicted = predict_half_value(f, s)?;
            rec.matches = predicted.is_satisfied_by(&brute, f);
            rec.brute = brute.to_string();
            rec.predicted = predicted.to_string();
            rec.order = Some(mult_order(&brute, f)?);
            rec.clause = Some(classify_order(f, s)?.clause.tag().to_string());
        }
        Theorem::Gpe => {
            let s = half_system(instance)?;
            let predicted = predict_prime_power_value(f, s)?;
            let brute = gauss_half(f, s)?;
            rec.matches = brute == predicted;
            rec.brute = brute.to_string();
            rec.predicted = predicted.to_string();
        }
        Theorem::P1p2 => {
            let s = half_system(instance)?;
            let predicted = predict_two_prime_value(f)?;
            let brute = gauss_half(f, s)?;
            rec.matches = predicted.is_satisfied_by(&brute, f);
            rec.brute = brute.to_string();
            rec.predicted = predicted.to_string();
        }
        Theorem::P1p2p3 => {
            let s = half_system(instance)?;
            let predicted = predict_many_prime_value(f)?;
            let brute = gauss_half(f, s)?;
            rec.matches = HalfPrediction::Residue(predicted.clone()).is_satisfied_by(&brute, f);
            rec.brute = brute.to_string();
            rec.predicted = predicted.to_string();
        }
    }
    Ok(rec)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfSystemPolicy {
    All,
    List(Vec<HalfSystem>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format {other:?} (expected json or csv)")),
        }
    }
}

/// Default sweep budget, in estimated modular multiplications.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub field: FieldCtx,
    pub max_degree: usize,
    pub theorems: Vec<Theorem>,
    pub half_systems: HalfSystemPolicy,
    /// Fixed `n` for `con3`; otherwise `n` ranges over `deg f ..= deg f + 2`.
    pub n: Option<usize>,
    pub budget: u128,
    pub jobs: usize,
}

impl SweepConfig {
    pub fn new(field: FieldCtx, max_degree: usize, theorems: Vec<Theorem>) -> Self {
        SweepConfig {
            field,
            max_degree,
            theorems,
            half_systems: HalfSystemPolicy::All,
            n: None,
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub records: Vec<VerdictRecord>,
    pub mismatches: usize,
    /// Instances skipped because a theorem's hypotheses did not hold.
    pub skipped: usize,
}

#[derive(Serialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub mismatches: usize,
    pub skipped: usize,
}

impl SweepReport {
    pub fn summary(&self) -> SweepSummary {
        SweepSummary {
            instances: self.records.len(),
            mismatches: self.mismatches,
            skipped: self.skipped,
        }
    }
}

type SortKey = (usize, Poly, Vec<u32>, usize);

fn con3_range(config: &SweepConfig, deg: usize) -> Vec<usize> {
    match config.n {
        Some(n) => vec![n],
        None => (deg..=deg + 2).collect(),
    }
}

fn build_instances(config: &SweepConfig) -> Result<Vec<(SortKey, Theorem, Instance)>> {
    if config.max_degree == 0 {
        return Err(Error::Internal("max_degree must be at least 1".into()));
    }
    let needs_s = config.theorems.iter().any(|t| t.needs_half_system());
    let systems = match (&config.half_systems, needs_s) {
        (_, false) => Vec::new(),
        (HalfSystemPolicy::All, true) => enumerate_half_systems(&config.field)?,
        (HalfSystemPolicy::List(list), true) => {
            if !config.field.is_odd() {
                return Err(Error::EvenCharacteristic);
            }
            if list.iter().any(|s| s.field() != &config.field) {
                return Err(Error::CtxMismatch);
            }
            list.clone()
        }
    };

    let q = BigUint::from(config.field.q());
    let mut estimate = BigUint::from(0u32);
    let mut out = Vec::new();
    for (ti, &theorem) in config.theorems.iter().enumerate() {
        for d in 1..=config.max_degree {
            for f in polys_of_degree(&config.field, d, true) {
                if theorem.needs_half_system() {
                    for s in &systems {
                        estimate += q.pow(d as u32);
                        let key = (ti, f.clone(), s.members().to_vec(), 0);
                        out.push((key, theorem, Instance::with_half_system(f.clone(), s.clone())));
                    }
                } else if theorem == Theorem::Con3 {
                    for n in con3_range(config, d) {
                        if n < d {
                            continue;
                        }
                        estimate += q.pow(n as u32 + 1) + q.pow(d as u32);
                        let key = (ti, f.clone(), Vec::new(), n);
                        out.push((key, theorem, Instance::with_n(f.clone(), n)));
                    }
                } else {
                    estimate += q.pow(d as u32);
                    let key = (ti, f.clone(), Vec::new(), 0);
                    out.push((key, theorem, Instance::new(f.clone())));
                }
            }
        }
        if estimate > BigUint::from(config.budget) {
            break;
        }
    }
    if estimate > BigUint::from(config.budget) {
        let estimate = u128::try_from(&estimate).unwrap_or(u128::MAX);
        return Err(Error::BudgetExceeded {
            estimate,
            budget: config.budget,
        });
    }
    Ok(out)
}

/// Run every instance of the sweep. Output order is canonical regardless of
/// `jobs`: theorem (as listed), then `f` encoding, then `S`, then `n`.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let instances = build_instances(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let results: Vec<(SortKey, Result<VerdictRecord>)> = pool.install(|| {
        instances
            .into_par_iter()
            .map(|(key, theorem, instance)| (key, verify_instance(&instance, theorem)))
            .collect()
    });

    let mut rows = Vec::with_capacity(results.len());
    let mut report = SweepReport::default();
    for (key, result) in results {
        match result {
            Ok(rec) => rows.push((key, rec)),
            Err(Error::NotApplicable(_)) => report.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    report.mismatches = rows.iter().filter(|(_, r)| !r.matches).count();
    report.records = rows.into_iter().map(|(_, r)| r).collect();
    Ok(report)
}

/// CSV column order.
pub const CSV_COLUMNS: [&str; 10] = [
    "field", "q", "f", "S", "theorem", "brute", "predicted", "matches", "order", "clause",
];

/// Write records as JSON lines or CSV.
pub fn write_records<W: Write>(
    records: &[VerdictRecord],
    format: OutputFormat,
    out: W,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            let mut out = out;
            for rec in records {
                serde_json::to_writer(&mut out, rec)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for rec in records {
                // The fixed column set has no n; con3 rows carry it in the theorem cell.
                let theorem = match rec.n {
                    Some(n) => format!("{}:n={n}", rec.theorem),
                    None => rec.theorem.clone(),
                };
                w.write_record([
                    rec.field.clone(),
                    rec.q.to_string(),
                    rec.f.clone(),
                    rec.s.clone().unwrap_or_default(),
                    theorem,
                    rec.brute.clone(),
                    rec.predicted.clone(),
                    rec.matches.to_string(),
                    rec.order.map(|o| o.to_string()).unwrap_or_default(),
                    rec.clause.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()
        }
    }
}
