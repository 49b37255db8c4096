//! Command-line front end: `compute`, `verify`, `classnum`.
//!
//! Exit codes: 0 when everything matched, 1 when a brute-force value and its
//! prediction disagree, 2 on usage or precondition errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::factorize::{factor, phi_of};
use crate::field::FieldCtx;
use crate::gauss::{
    big_m, classify_order, delta, gauss_factorial, gauss_factorial_upto, gauss_half, mult_order,
    predict_g, predict_g_upto, predict_half_value, HalfSystem,
};
use crate::poly::{parse_poly, Poly};
use crate::symbols::{class_number, class_number_report};
use crate::verify::{
    run_sweep, write_records, HalfSystemPolicy, OutputFormat, SweepConfig, Theorem,
    DEFAULT_BUDGET,
};

#[derive(Parser, Debug)]
#[command(name = "gaussfact", version, about = "Gauss factorials of polynomials over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute G(f), and G(f, S) when a half-system is given, with predictions.
    Compute {
        /// Field spec, e.g. `p=3` or `p=3,s=2,mod=1,0,1`.
        #[arg(long)]
        field: String,
        #[arg(long = "f")]
        f: String,
        /// Half-system as comma-joined element codes.
        #[arg(long = "S")]
        s: Option<String>,
        /// Also compute G(n, f).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Exhaustively compare brute-force values with predictions.
    Verify {
        #[arg(long)]
        field: String,
        /// Theorem tags; repeat or comma-join.
        #[arg(long, required = true, value_delimiter = ',')]
        theorem: Vec<String>,
        #[arg(long)]
        max_degree: usize,
        /// `all`, or one half-system per occurrence.
        #[arg(long = "S")]
        s: Vec<String>,
        /// Fixed n for con3 (default: deg f ..= deg f + 2).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Refuse sweeps whose estimated multiplication count exceeds this.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Class number h(-P) for an odd-degree monic prime P.
    Classnum {
        #[arg(long)]
        field: String,
        #[arg(long = "P")]
        p: String,
    },
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<O: Write, E: Write>(args: &[String], stdout: &mut O, stderr: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(Failure::Mismatch) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn dispatch<O: Write, E: Write>(
    command: Command,
    stdout: &mut O,
    stderr: &mut E,
) -> std::result::Result<(), Failure> {
    match command {
        Command::Compute { field, f, s, n } => {
            let field = FieldCtx::from_spec(&field)?;
            let f = parse_poly(&f, &field)?;
            let s = s.map(|s| HalfSystem::parse(&field, &s)).transpose()?;
            let (report, matched) = compute(&f, s.as_ref(), n)?;
            writeln!(stdout, "{}", Value::Object(report))?;
            if matched {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::Verify {
            field,
            theorem,
            max_degree,
            s,
            n,
            format,
            out,
            jobs,
            budget,
        } => {
            let field = FieldCtx::from_spec(&field)?;
            let theorems = theorem
                .iter()
                .map(|t| t.trim().parse::<Theorem>())
                .collect::<Result<Vec<_>>>()?;
            if max_degree == 0 {
                return Err(Failure::Usage("--max-degree must be at least 1".into()));
            }
            let half_systems = if s.is_empty() || s.iter().any(|s| s == "all") {
                HalfSystemPolicy::All
            } else {
                HalfSystemPolicy::List(
                    s.iter()
                        .map(|s| HalfSystem::parse(&field, s))
                        .collect::<Result<Vec<_>>>()?,
                )
            };
            let mut config = SweepConfig::new(field, max_degree, theorems);
            config.half_systems = half_systems;
            config.n = n;
            config.budget = budget;
            config.jobs = jobs;
            let report = run_sweep(&config)?;
            match out {
                Some(path) => {
                    let file = File::create(&path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    write_records(&report.records, format, BufWriter::new(file))?;
                }
                None => write_records(&report.records, format, &mut *stdout)?,
            }
            writeln!(stderr, "{}", serde_json::to_string(&report.summary()).unwrap())?;
            if report.mismatches == 0 {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::Classnum { field, p } => {
            let field = FieldCtx::from_spec(&field)?;
            let prime = parse_poly(&p, &field)?;
            let report = class_number_report(&prime)?;
            writeln!(stdout, "{}", serde_json::to_string(&report).unwrap())?;
            Ok(())
        }
    }
}

/// Build the `compute` report; the flag says whether every prediction matched.
fn compute(f: &Poly, s: Option<&HalfSystem>, n: Option<usize>) -> Result<(Map<String, Value>, bool)> {
    let field = f.field();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let fac = factor(f)?;
    let g = gauss_factorial(f);
    let predicted = predict_g(f)?;
    let mut matched = g == predicted;

    let mut report = Map::new();
    report.insert("field".into(), json!(field.spec_string()));
    report.insert("q".into(), json!(field.q()));
    report.insert("f".into(), json!(f.to_string()));
    report.insert("factorization".into(), serde_json::to_value(fac.to_json()).unwrap());
    report.insert("phi".into(), json!(phi_of(&fac).to_string()));
    report.insert("G".into(), json!(g.to_string()));

    if let Some(n) = n {
        let brute = gauss_factorial_upto(n, f)?;
        let pred = predict_g_upto(n, f)?;
        matched &= brute == pred;
        report.insert("n".into(), json!(n));
        report.insert("G_n".into(), json!(brute.to_string()));
        report.insert("predicted_G_n".into(), json!(pred.to_string()));
    }

    match s {
        Some(s) => {
            if !field.is_odd() {
                return Err(Error::EvenCharacteristic);
            }
            let half = gauss_half(f, s)?;
            let order = mult_order(&half, f)?;
            let class = classify_order(f, s)?;
            let prediction = predict_half_value(f, s)?;
            matched &= order == class.order as u64 && prediction.is_satisfied_by(&half, f);
            report.insert("predicted_G".into(), json!(predicted.to_string()));
            report.insert("S".into(), json!(s.to_string()));
            report.insert("delta".into(), json!(delta(s).code()));
            report.insert("M".into(), json!(big_m(f)?.to_string()));
            report.insert("G_half".into(), json!(half.to_string()));
            report.insert("order".into(), json!(order));
            report.insert("clause".into(), json!(class.clause.tag()));
            report.insert("predicted".into(), json!(prediction.to_string()));
            if let Some(h) = class.witnesses.h {
                report.insert("h".into(), json!(h));
            }
        }
        None => {
            report.insert("predicted".into(), json!(predicted.to_string()));
        }
    }
    // h(-P) is reported whenever it is defined, not only when a clause needs it.
    if field.is_odd() && !report.contains_key("h") && fac.num_primes() == 1 {
        let prime = &fac.factors[0].0;
        if prime.deg().unwrap() % 2 == 1 {
            report.insert("h".into(), json!(class_number(prime)?));
        }
    }
    report.insert("matches".into(), json!(matched));
    Ok((report, matched))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut argv = vec!["gaussfact".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn compute_worked_example() {
        let (code, out, _) = run_args(&["compute", "--field", "p=3", "--f", "X^3+2*X+2", "--S", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["h"], 7);
        assert_eq!(v["G_half"], "2");
        assert_eq!(v["order"], 2);
        assert_eq!(v["clause"], "2a");
        assert_eq!(v["matches"], true);
    }

    #[test]
    fn compute_characteristic_two() {
        let (code, out, _) = run_args(&["compute", "--field", "p=2", "--f", "coeffs:0,0,1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["G"], "X+1");
    }

    #[test]
    fn compute_zero_polynomial() {
        let (code, out, err) = run_args(&["compute", "--field", "p=3", "--f", "0"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("zero polynomial"), "{err}");
    }

    #[test]
    fn classnum_examples() {
        let (code, out, _) = run_args(&["classnum", "--field", "p=3", "--P", "X^3+2*X+2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["h"], 7);
        let (code, out, _) = run_args(&["classnum", "--field", "p=3", "--P", "X"]);
        assert_eq!(code, 0);
        assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["h"], 1);
        let (code, _, err) = run_args(&["classnum", "--field", "p=2", "--P", "X"]);
        assert_eq!(code, 2);
        assert!(err.contains("requires odd q"), "{err}");
    }

    #[test]
    fn verify_even_q_extension() {
        let (code, _, err) =
            run_args(&["verify", "--field", "p=2", "--theorem", "extension", "--max-degree", "2"]);
        assert_eq!(code, 2);
        assert!(err.contains("requires odd q"), "{err}");
    }

    #[test]
    fn bad_flags_exit_two() {
        assert_eq!(run_args(&["compute", "--field", "p=4", "--f", "X"]).0, 2);
        assert_eq!(run_args(&["verify", "--field", "p=3", "--theorem", "nope", "--max-degree", "2"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
    }
}
