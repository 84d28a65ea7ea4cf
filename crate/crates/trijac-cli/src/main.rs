//! Command-line driver: evaluate and tabulate the triangle basis families,
//! dump connection matrices and quadrature rules, and run the verification
//! suites as JSON certification reports.
//!
//! Numeric arguments written as `p/q` or plain integers route through exact
//! rational arithmetic; anything with a decimal point or exponent routes
//! through f64. Output is deterministic for a fixed command line: CSV floats
//! carry 17 significant digits, rationals stay `p/q` literals, and reports
//! are ordered by check id.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use trijac::connection::{connection_pi, connection_sigma, ConnectionMatrix};
use trijac::error::Result;
use trijac::quadrature;
use trijac::report::{Check, Report};
use trijac::scalar::{format_rat, parse_rat, Rat, Scalar};
use trijac::triangle::{lattice_indices, tri_family_eval, Family, TriIndex, TriParams};
use trijac::verify::{self, parse_family};

#[derive(Parser)]
#[command(name = "trijac", version, about = "Triangle Jacobi basis toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one family member at a point
    Eval(EvalArgs),
    /// Tabulate all members with n ≤ nmax at a point
    Table(TableArgs),
    /// Run a verification suite and emit its JSON report
    Verify(VerifyArgs),
    /// Dump a change-of-basis matrix between two families
    Connection(ConnectionArgs),
    /// Dump the nodes and weights of the triangle quadrature rule
    Quadrature(QuadratureArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// First weight exponent; `p/q` routes exact, decimals route f64
    #[arg(long, default_value = "0")]
    a: String,
    /// Second weight exponent
    #[arg(long, default_value = "0")]
    b: String,
    /// Third weight exponent
    #[arg(long, default_value = "0")]
    c: String,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Family name: e, pi, sigma, tau, rot1, rot2
    #[arg(long, default_value = "e")]
    family: String,
    /// Total degree
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Member index within the degree, 0 ≤ k ≤ n
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Evaluation point as x,y
    #[arg(long)]
    at: String,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Family name: e, pi, sigma, tau, rot1, rot2
    #[arg(long, default_value = "e")]
    family: String,
    /// Largest total degree to tabulate
    #[arg(long, default_value_t = 4)]
    nmax: u32,
    /// Evaluation point as x,y
    #[arg(long)]
    at: String,
    /// Output format: table, csv, or json
    #[arg(long, default_value = "table")]
    format: String,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConnectionArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Target family of the expansion: pi or sigma (source is e)
    #[arg(long, default_value = "pi")]
    family: String,
    /// Total degree of the block
    #[arg(long, default_value_t = 4)]
    n: u32,
    /// Output format: csv, table, or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QuadratureArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Points per direction of the collapsed-square rule
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Output format: table, csv, or json
    #[arg(long, default_value = "table")]
    format: String,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    suite: VerifySuite,
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Certify the defining relations of the operator algebra, exactly
    Algebra(VerifyOpts),
    /// Certify the rank-one subalgebra presentations, exactly
    Subalgebras(VerifyOpts),
    /// Certify that the differential and lattice realizations agree
    Intertwine(VerifyOpts),
    /// Certify norm-weighted detailed balance and Gram symmetry
    Hermiticity(VerifyOpts),
    /// Quadrature orthogonality of the three families
    Orthogonality(VerifyOpts),
    /// Connection matrices: reconstruction, orthogonality, certificates
    Connection(VerifyOpts),
    /// Discrete-family orthogonality, recurrences and realization
    Racah(VerifyOpts),
}

#[derive(Args)]
struct VerifyOpts {
    #[command(flatten)]
    params: ParamArgs,
    /// Seed for the rational parameter sampler
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Degree window for polynomial and lattice identities
    #[arg(long)]
    nmax: Option<u32>,
    /// Truncation level for discrete-family suites
    #[arg(long = "N")]
    trunc: Option<u32>,
    /// Residual tolerance for the float checks
    #[arg(long)]
    tol: Option<f64>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A numeric CLI argument, kept exact when it was written exactly.
#[derive(Clone, Debug)]
enum Num {
    Exact(Rat),
    Float(f64),
}

impl Num {
    fn to_f64(&self) -> f64 {
        match self {
            Num::Exact(r) => Scalar::to_f64(r),
            Num::Float(v) => *v,
        }
    }

    fn exact(&self) -> Option<&Rat> {
        match self {
            Num::Exact(r) => Some(r),
            Num::Float(_) => None,
        }
    }
}

fn parse_num(s: &str) -> Option<Num> {
    let t = s.trim();
    if !t.contains(['.', 'e', 'E']) {
        if let Some(r) = parse_rat(t) {
            return Some(Num::Exact(r));
        }
    }
    t.parse::<f64>().ok().filter(|v| v.is_finite()).map(Num::Float)
}

fn parse_point(s: &str) -> Option<(Num, Num)> {
    let (x, y) = s.split_once(',')?;
    Some((parse_num(x)?, parse_num(y)?))
}

struct Usage(String);

fn parse_params(p: &ParamArgs) -> std::result::Result<[Num; 3], Usage> {
    let f = |s: &str, name: &str| {
        parse_num(s).ok_or_else(|| Usage(format!("--{name} {s:?} is not a number")))
    };
    Ok([f(&p.a, "a")?, f(&p.b, "b")?, f(&p.c, "c")?])
}

fn float_params(p: &[Num; 3]) -> TriParams<f64> {
    TriParams::new(p[0].to_f64(), p[1].to_f64(), p[2].to_f64())
}

fn exact_params(p: &[Num; 3]) -> Option<TriParams<Rat>> {
    Some(TriParams::new(
        p[0].exact()?.clone(),
        p[1].exact()?.clone(),
        p[2].exact()?.clone(),
    ))
}

/// CSV float format: 17 significant digits, lossless on round-trip.
fn csv_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn emit(out: Option<&PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()
        }
    }
}

fn family_or_usage(name: &str) -> std::result::Result<Family, Usage> {
    parse_family(name).ok_or_else(|| {
        Usage(format!(
            "unknown family {name:?}; expected e, pi, sigma, tau, rot1 or rot2"
        ))
    })
}

fn run_eval(args: &EvalArgs) -> std::result::Result<Result<String>, Usage> {
    let fam = family_or_usage(&args.family)?;
    if args.k > args.n {
        return Err(Usage(format!(
            "--k {} exceeds --n {}; members need 0 <= k <= n",
            args.k, args.n
        )));
    }
    let idx = TriIndex::new(args.n, args.k);
    let p = parse_params(&args.params)?;
    let (x, y) = parse_point(&args.at)
        .ok_or_else(|| Usage(format!("--at {:?} is not an x,y pair", args.at)))?;
    let exact_point = (x.exact(), y.exact());
    Ok(
        match (exact_params(&p), exact_point.0, exact_point.1) {
            (Some(pe), Some(xe), Some(ye)) => tri_family_eval(&pe, fam, idx, xe, ye)
                .map(|v| format!("{}\n", format_rat(&v))),
            _ => {
                let pf = float_params(&p);
                tri_family_eval(&pf, fam, idx, &x.to_f64(), &y.to_f64())
                    .map(|v| format!("{v}\n"))
            }
        },
    )
}

enum TableValue {
    Exact(Rat),
    Float(f64),
}

fn run_table(args: &TableArgs) -> std::result::Result<Result<String>, Usage> {
    let fam = family_or_usage(&args.family)?;
    let p = parse_params(&args.params)?;
    let (x, y) = parse_point(&args.at)
        .ok_or_else(|| Usage(format!("--at {:?} is not an x,y pair", args.at)))?;

    let rows: Result<Vec<(TriIndex, TableValue)>> =
        match (exact_params(&p), x.exact(), y.exact()) {
            (Some(pe), Some(xe), Some(ye)) => lattice_indices(args.nmax)
                .into_iter()
                .map(|idx| {
                    tri_family_eval(&pe, fam, idx, xe, ye)
                        .map(|v| (idx, TableValue::Exact(v)))
                })
                .collect(),
            _ => {
                let pf = float_params(&p);
                let (xf, yf) = (x.to_f64(), y.to_f64());
                lattice_indices(args.nmax)
                    .into_iter()
                    .map(|idx| {
                        tri_family_eval(&pf, fam, idx, &xf, &yf)
                            .map(|v| (idx, TableValue::Float(v)))
                    })
                    .collect()
            }
        };
    let rows = match rows {
        Ok(r) => r,
        Err(e) => return Ok(Err(e)),
    };

    let text = match args.format.as_str() {
        "csv" => {
            let mut s = String::from("n,k,value\n");
            for (idx, v) in &rows {
                let cell = match v {
                    TableValue::Exact(r) => format_rat(r),
                    TableValue::Float(f) => csv_float(*f),
                };
                s.push_str(&format!("{},{},{cell}\n", idx.n, idx.k));
            }
            s
        }
        "json" => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(idx, v)| {
                    let value = match v {
                        TableValue::Exact(r) => serde_json::Value::from(format_rat(r)),
                        TableValue::Float(f) => serde_json::Value::from(*f),
                    };
                    serde_json::json!({"n": idx.n, "k": idx.k, "value": value})
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&items).expect("serializable"))
        }
        "table" => {
            let mut s = format!("{:>4} {:>4}  value\n", "n", "k");
            for (idx, v) in &rows {
                let cell = match v {
                    TableValue::Exact(r) => format_rat(r),
                    TableValue::Float(f) => format!("{f}"),
                };
                s.push_str(&format!("{:>4} {:>4}  {cell}\n", idx.n, idx.k));
            }
            s
        }
        other => return Err(Usage(format!("unknown format {other:?}"))),
    };
    Ok(Ok(text))
}

fn render_matrix(m: &ConnectionMatrix, format: &str) -> std::result::Result<String, Usage> {
    let n = m.n;
    match format {
        "csv" => {
            let mut s = String::from("l/m");
            for col in 0..=n {
                s.push_str(&format!(",{col}"));
            }
            s.push('\n');
            for ell in 0..=n {
                s.push_str(&ell.to_string());
                for col in 0..=n {
                    s.push_str(&format!(",{}", csv_float(m.entry(ell, col))));
                }
                s.push('\n');
            }
            Ok(s)
        }
        "table" => {
            let mut s = format!("{:>4}", "l/m");
            for col in 0..=n {
                s.push_str(&format!(" {col:>24}"));
            }
            s.push('\n');
            for ell in 0..=n {
                s.push_str(&format!("{ell:>4}"));
                for col in 0..=n {
                    s.push_str(&format!(" {:>24.16e}", m.entry(ell, col)));
                }
                s.push('\n');
            }
            Ok(s)
        }
        "json" => {
            let rows: Vec<Vec<f64>> = (0..=n)
                .map(|ell| (0..=n).map(|col| m.entry(ell, col)).collect())
                .collect();
            let v = serde_json::json!({
                "n": n,
                "source": "e",
                "target": if matches!(m.target, Family::Pi) { "pi" } else { "sigma" },
                "entries": rows,
            });
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("serializable")
            ))
        }
        other => Err(Usage(format!("unknown format {other:?}"))),
    }
}

fn run_connection(args: &ConnectionArgs) -> std::result::Result<Result<String>, Usage> {
    let p = float_params(&parse_params(&args.params)?);
    let m = match args.family.as_str() {
        "pi" => connection_pi(args.n, &p),
        "sigma" => connection_sigma(args.n, &p),
        other => {
            return Err(Usage(format!(
                "unknown expansion target {other:?}; expected pi or sigma"
            )))
        }
    };
    Ok(match m {
        Ok(m) => render_matrix(&m, &args.format).map(Ok)?,
        Err(e) => Err(e),
    })
}

fn run_quadrature(args: &QuadratureArgs) -> std::result::Result<Result<String>, Usage> {
    if args.n == 0 {
        return Err(Usage("--n must be positive".into()));
    }
    let p = float_params(&parse_params(&args.params)?);
    let rule = match quadrature::triangle_rule(args.n, &p) {
        Ok(r) => r,
        Err(e) => return Ok(Err(e)),
    };
    let text = match args.format.as_str() {
        "csv" => {
            let mut s = String::from("x,y,w\n");
            for (&(x, y), &w) in rule.nodes.iter().zip(&rule.weights) {
                s.push_str(&format!("{},{},{}\n", csv_float(x), csv_float(y), csv_float(w)));
            }
            s
        }
        "table" => {
            let mut s = format!("{:>24} {:>24} {:>24}\n", "x", "y", "w");
            for (&(x, y), &w) in rule.nodes.iter().zip(&rule.weights) {
                s.push_str(&format!("{x:>24.16e} {y:>24.16e} {w:>24.16e}\n"));
            }
            s
        }
        "json" => {
            let items: Vec<serde_json::Value> = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&(x, y), &w)| serde_json::json!({"x": x, "y": y, "w": w}))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&items).expect("serializable"))
        }
        other => return Err(Usage(format!("unknown format {other:?}"))),
    };
    Ok(Ok(text))
}

/// The default float parameter sets the orthogonality and connection suites
/// sweep when no explicit triple is on the command line.
fn default_sets() -> Vec<(String, TriParams<f64>)> {
    vec![
        ("unit".into(), TriParams::new(0.0, 0.0, 0.0)),
        ("integer".into(), TriParams::new(1.0, 2.0, 3.0)),
        ("generic".into(), TriParams::new(0.5, 0.3, 1.7)),
    ]
}

fn chosen_sets(
    opts: &VerifyOpts,
) -> std::result::Result<Vec<(String, TriParams<f64>)>, Usage> {
    let defaults = ["0", "0", "0"];
    let given = [&opts.params.a, &opts.params.b, &opts.params.c]
        .iter()
        .zip(defaults)
        .any(|(s, d)| s.as_str() != d);
    if given {
        let p = parse_params(&opts.params)?;
        Ok(vec![("custom".into(), float_params(&p))])
    } else {
        Ok(default_sets())
    }
}

type SuitePlan = (Result<Vec<Check>>, serde_json::Value, Option<PathBuf>);

fn verify_checks(suite: &VerifySuite) -> std::result::Result<SuitePlan, Usage> {
    let (name, opts) = match suite {
        VerifySuite::Algebra(o) => ("algebra", o),
        VerifySuite::Subalgebras(o) => ("subalgebras", o),
        VerifySuite::Intertwine(o) => ("intertwine", o),
        VerifySuite::Hermiticity(o) => ("hermiticity", o),
        VerifySuite::Orthogonality(o) => ("orthogonality", o),
        VerifySuite::Connection(o) => ("connection", o),
        VerifySuite::Racah(o) => ("racah", o),
    };
    if let Some(t) = opts.tol {
        if !t.is_finite() || t <= 0.0 {
            return Err(Usage(format!("--tol {t} must be positive")));
        }
    }
    let seed = opts.seed;
    let mut config = serde_json::json!({"command": format!("verify {name}"), "seed": seed});
    let entry = |cfg: &mut serde_json::Value, key: &str, val: serde_json::Value| {
        cfg.as_object_mut().expect("config object").insert(key.into(), val);
    };

    let checks = match suite {
        VerifySuite::Algebra(o) => {
            let nmax = o.nmax.unwrap_or(6);
            entry(&mut config, "nmax", nmax.into());
            entry(&mut config, "trials", 5.into());
            verify::run_algebra(seed, 5, nmax)
        }
        VerifySuite::Subalgebras(_) => {
            entry(&mut config, "trials", 5.into());
            verify::run_subalgebras(seed, 5)
        }
        VerifySuite::Intertwine(o) => {
            let nmax = o.nmax.unwrap_or(6);
            entry(&mut config, "nmax", nmax.into());
            verify::run_intertwine(seed, nmax)
        }
        VerifySuite::Hermiticity(o) => {
            let trunc = o.trunc.unwrap_or(5);
            let tol = o.tol.unwrap_or(1e-10);
            entry(&mut config, "N", trunc.into());
            entry(&mut config, "tol", tol.into());
            verify::run_hermiticity(seed, trunc, 24, tol)
        }
        VerifySuite::Orthogonality(o) => {
            let nmax = o.nmax.unwrap_or(6);
            let tol = o.tol.unwrap_or(1e-10);
            let npts = nmax as usize + 4;
            entry(&mut config, "nmax", nmax.into());
            entry(&mut config, "tol", tol.into());
            entry(&mut config, "npts", npts.into());
            let sets = chosen_sets(o)?;
            entry(
                &mut config,
                "parameter_sets",
                sets.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>().into(),
            );
            sets.iter().try_fold(Vec::new(), |mut acc, (label, p)| {
                acc.extend(verify::run_orthogonality(p, label, nmax, npts, tol)?);
                Ok(acc)
            })
        }
        VerifySuite::Connection(o) => {
            let nmax = o.nmax.unwrap_or(6);
            let tol = o.tol.unwrap_or(1e-10);
            entry(&mut config, "nmax", nmax.into());
            entry(&mut config, "tol", tol.into());
            entry(&mut config, "matrix_nmax", 10.into());
            let sets = chosen_sets(o)?;
            entry(
                &mut config,
                "parameter_sets",
                sets.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>().into(),
            );
            let float_part = sets.iter().try_fold(Vec::new(), |mut acc, (label, p)| {
                acc.extend(verify::run_connection(
                    p, label, seed, nmax, 10, 10, tol, 1e-12,
                )?);
                Ok(acc)
            });
            float_part.and_then(|mut cs| {
                cs.extend(verify::run_connection_exact(seed, 4)?);
                Ok(cs)
            })
        }
        VerifySuite::Racah(o) => {
            let trunc = o.trunc.unwrap_or(6);
            entry(&mut config, "N", trunc.into());
            verify::run_racah(trunc)
        }
    };
    Ok((checks, config, opts_out(suite).cloned()))
}

fn opts_out(suite: &VerifySuite) -> Option<&PathBuf> {
    match suite {
        VerifySuite::Algebra(o)
        | VerifySuite::Subalgebras(o)
        | VerifySuite::Intertwine(o)
        | VerifySuite::Hermiticity(o)
        | VerifySuite::Orthogonality(o)
        | VerifySuite::Connection(o)
        | VerifySuite::Racah(o) => o.out.as_ref(),
    }
}

fn run_verify(args: &VerifyArgs) -> std::result::Result<ExitCode, Usage> {
    let (checks, config, out) = verify_checks(&args.suite)?;
    let checks = match checks {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: verification suite failed to run: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let mut report = Report::new(config);
    report.extend(checks);
    let report = report.finish();
    let passed = report.all_passed();
    let json = report.to_json();
    if let Err(e) = emit(out.as_ref(), &format!("{json}\n")) {
        eprintln!("error: could not write the report: {e}");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::from(if passed { 0 } else { 1 }))
}

fn dispatch(cli: &Cli) -> std::result::Result<ExitCode, Usage> {
    match &cli.command {
        Command::Eval(args) => match run_eval(args)? {
            Ok(text) => {
                if let Err(e) = emit(None, &text) {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(1));
                }
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => Err(Usage(format!("evaluation failed: {e}"))),
        },
        Command::Table(args) => finish_data(run_table(args)?, args.out.as_ref()),
        Command::Connection(args) => finish_data(run_connection(args)?, args.out.as_ref()),
        Command::Quadrature(args) => finish_data(run_quadrature(args)?, args.out.as_ref()),
        Command::Verify(args) => run_verify(args),
    }
}

fn finish_data(
    result: Result<String>,
    out: Option<&PathBuf>,
) -> std::result::Result<ExitCode, Usage> {
    match result {
        Ok(text) => {
            if let Err(e) = emit(out, &text) {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => Err(Usage(format!("computation failed: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
