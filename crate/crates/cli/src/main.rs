//! `kzeros`: zeros of the Macdonald function `K_ν` from the command line.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 numerical failure.

mod format;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use kzeros::moments::moment_vector;
use kzeros::special::{check_g_hessian, special_point, solve_xn};
use kzeros::sweep::sweep;
use kzeros::zeros::{solve_zeros, verify_zeroset, VerifyReport};
use kzeros::{check, snap_half_odd, Cplx, Level, Method, Precision, ZeroSet};

use format::{sig9, signed9};

#[derive(Parser)]
#[command(name = "kzeros", version, about = "Zeros of the Macdonald function K_nu for real order nu >= 1.5")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// All zeros of K_nu at one order
    Zeros {
        #[arg(long, value_parser = parse_nu, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Re-check the zero set and append the report
        #[arg(long)]
        verify: bool,
    },
    /// Zeros on a grid of orders, in table column order
    Table {
        #[arg(long, value_parser = parse_nu, default_value = "1.5", allow_hyphen_values = true)]
        from: f64,
        #[arg(long, value_parser = parse_nu, default_value = "9.5", allow_hyphen_values = true)]
        to: f64,
        #[arg(long, value_parser = parse_nu, default_value = "0.1", allow_hyphen_values = true)]
        step: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Track-labelled zero trajectories (CSV)
    Sweep {
        #[arg(long, value_parser = parse_nu, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, value_parser = parse_nu, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, value_parser = parse_nu, default_value = "0.05", allow_hyphen_values = true)]
        step: f64,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Special point x_n and its identity residuals
    Xn {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Signed moment integrals M_1..M_K
    Moments {
        #[arg(long, value_parser = parse_nu, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long)]
        max_k: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run the invariant suite
    Check {
        #[arg(long, value_enum, default_value = "quick")]
        level: CheckLevel,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckLevel {
    Quick,
    Full,
}

/// Orders are read as decimal strings and snapped onto half-odd integers.
fn parse_nu(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a decimal number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(snap_half_odd(v, 1e-12))
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<kzeros::Error> for Failure {
    fn from(e: kzeros::Error) -> Self {
        if e.is_domain() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub target_rel_tol: f64,
    pub max_terms: usize,
    pub snapped: bool,
    pub guard_flag: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub nu: f64,
    pub zeros: Vec<[f64; 2]>,
    pub residuals: Vec<f64>,
    pub method: Method,
    pub metadata: Metadata,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verify: Option<VerifyReport>,
}

fn record(zs: &ZeroSet, order: &[usize], prec: &Precision, verify: Option<VerifyReport>) -> ZeroRecord {
    ZeroRecord {
        nu: zs.nu,
        zeros: order.iter().map(|&i| [zs.zeros[i].re, zs.zeros[i].im]).collect(),
        residuals: order.iter().map(|&i| zs.residuals[i]).collect(),
        method: zs.method,
        metadata: Metadata {
            target_rel_tol: prec.target_rel_tol,
            max_terms: prec.max_terms,
            snapped: zs.snapped,
            guard_flag: zs.guard_flag,
        },
        verify,
    }
}

/// Table column order: descending `|Im|`, `+Im` first, the real zero last.
fn table_order(zs: &ZeroSet) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..zs.len()).collect();
    let z = &zs.zeros;
    idx.sort_by(|&a, &b| z[b].im.abs().total_cmp(&z[a].im.abs()).then(z[b].im.total_cmp(&z[a].im)));
    idx
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn zero_rows(out: &mut String, zs: &ZeroSet, order: &[usize]) {
    for (k, &i) in order.iter().enumerate() {
        let z: Cplx = zs.zeros[i];
        let _ = writeln!(out, "{},{k},{},{},{}", sig9(zs.nu), sig9(z.re), signed9(z.im), sig9(zs.residuals[i]));
    }
}

const ZERO_HEADER: &str = "nu,zero_index,re,im,residual";

fn cmd_zeros(nu: f64, format: Format, verify: bool, prec: &Precision) -> Result<String, Failure> {
    let zs = solve_zeros(nu, prec)?;
    let report = if verify { Some(verify_zeroset(&zs, prec, true)?) } else { None };
    let order: Vec<usize> = (0..zs.len()).collect();
    let mut out = String::new();
    match format {
        Format::Json => out = json(&record(&zs, &order, prec, report.clone())),
        Format::Csv => {
            let _ = writeln!(out, "{ZERO_HEADER}");
            zero_rows(&mut out, &zs, &order);
            if let Some(rep) = &report {
                for item in &rep.items {
                    let status = if item.passed { "pass" } else { "FAIL" };
                    let _ = writeln!(out, "# verify {} {status}: {}", item.name, item.detail);
                }
                for w in &rep.warnings {
                    let _ = writeln!(out, "# warning: {w}");
                }
            }
        }
    }
    if let Some(rep) = report.filter(|r| !r.passed()) {
        let failed: Vec<&str> = rep.items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
        print!("{out}");
        return Err(Failure::Numerical(format!("verification failed: {}", failed.join(", "))));
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct TableOutput {
    rows: Vec<ZeroRecord>,
}

fn cmd_table(from: f64, to: f64, step: f64, format: Format, prec: &Precision) -> Result<String, Failure> {
    let grid = kzeros::sweep::grid(from, to, step)?;
    let sets = grid.par_iter().map(|&nu| solve_zeros(nu, prec)).collect::<Result<Vec<_>, _>>()?;
    let mut out = String::new();
    match format {
        Format::Json => {
            let rows = sets.iter().map(|zs| record(zs, &table_order(zs), prec, None)).collect();
            out = json(&TableOutput { rows });
        }
        Format::Csv => {
            let _ = writeln!(out, "{ZERO_HEADER}");
            for zs in &sets {
                zero_rows(&mut out, zs, &table_order(zs));
            }
        }
    }
    Ok(out)
}

fn cmd_sweep(from: f64, to: f64, step: f64, out_path: Option<PathBuf>, prec: &Precision) -> Result<String, Failure> {
    let r = sweep(from, to, step, prec)?;
    let mut out = String::from("nu,track_id,re,im,residual,note\n");
    for pt in &r.points {
        let mut idx: Vec<usize> = (0..pt.zeros.len()).collect();
        idx.sort_by(|&a, &b| pt.track_ids[a].cmp(&pt.track_ids[b]).then(pt.zeros.zeros[b].im.total_cmp(&pt.zeros.zeros[a].im)));
        for i in idx {
            let z = pt.zeros.zeros[i];
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                sig9(pt.nu),
                pt.track_ids[i],
                sig9(z.re),
                signed9(z.im),
                sig9(pt.zeros.residuals[i]),
                pt.notes[i].unwrap_or("")
            );
        }
    }
    match out_path {
        Some(p) => {
            std::fs::write(&p, &out)?;
            Ok(format!("wrote {} rows for {} orders to {}\n", out.lines().count() - 1, r.points.len(), p.display()))
        }
        None => Ok(out),
    }
}

#[derive(Serialize)]
struct XnOutput {
    #[serde(flatten)]
    point: kzeros::SpecialPoint,
    hessian_residuals: std::collections::BTreeMap<String, f64>,
}

fn cmd_xn(n: usize, format: Format, prec: &Precision) -> Result<String, Failure> {
    let sp = if *prec == Precision::default() { special_point(n)? } else { solve_xn(n, prec)? };
    let hess = check_g_hessian(&sp, prec)?;
    if format == Format::Json {
        return Ok(json(&XnOutput { point: sp, hessian_residuals: hess }));
    }
    let mut out = String::from("quantity,value\n");
    for (k, v) in [("n", sp.n as f64), ("nu_n", sp.nu_n), ("x_n", sp.x_n), ("alpha_n", sp.alpha_n), ("beta_n", sp.beta_n), ("k_n", sp.k_n)] {
        let _ = writeln!(out, "{k},{}", sig9(v));
    }
    let mut all = sp.identity_residuals.clone();
    all.extend(hess);
    for (k, v) in &all {
        let _ = writeln!(out, "residual_{k},{}", sig9(*v));
    }
    Ok(out)
}

fn cmd_moments(nu: f64, max_k: usize, format: Format, prec: &Precision) -> Result<String, Failure> {
    let mv = moment_vector(nu, max_k, prec)?;
    if format == Format::Json {
        return Ok(json(&mv));
    }
    let mut out = String::from("nu,k,value,abs_err\n");
    for k in 1..=mv.len() {
        let _ = writeln!(out, "{},{k},{},{}", sig9(nu), sig9(mv.get(k)), sig9(mv.abs_err[k - 1]));
    }
    Ok(out)
}

fn cmd_check(level: CheckLevel, prec: &Precision) -> Result<String, Failure> {
    let level = match level {
        CheckLevel::Quick => Level::Quick,
        CheckLevel::Full => Level::Full,
    };
    let outcomes = check::run(level, prec);
    let mut out = String::new();
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status} {:<26} {:>7.2}s  {}", o.name, o.seconds, o.detail);
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    if failed.is_empty() {
        let _ = writeln!(out, "all {} checks passed", outcomes.len());
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Numerical(format!("failed checks: {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let prec = Precision::from_env().map_err(|e| Failure::Usage(format!("KZEROS_PRECISION: {e}")))?;
    match cli.cmd {
        Cmd::Zeros { nu, format, verify } => cmd_zeros(nu, format, verify, &prec),
        Cmd::Table { from, to, step, format } => cmd_table(from, to, step, format, &prec),
        Cmd::Sweep { from, to, step, out } => cmd_sweep(from, to, step, out, &prec),
        Cmd::Xn { n, format } => cmd_xn(n, format, &prec),
        Cmd::Moments { nu, max_k, format } => cmd_moments(nu, max_k, format, &prec),
        Cmd::Check { level } => cmd_check(level, &prec),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Err(Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Numerical(msg))) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}
