use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use sniep5::oracle::{grid_scan_lemma1, grid_scan_lemma2, mc_necessity};
use sniep5::{assess, construct, verify, Boundary, Error, Matrix, ScanReport, Spectrum, Tolerances};

/// Realizability of 5-element spectra by symmetric nonnegative matrices.
#[derive(Parser, Debug)]
#[command(name = "sniep5", version, about)]
struct Cli {
    /// Slack for region and ordering inequalities
    #[arg(long, global = true, value_name = "EPS")]
    tol_geom: Option<f64>,

    /// Zero-trace tolerance, relative to max(1, |λ1|)
    #[arg(long, global = true, value_name = "EPS")]
    tol_sum: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Eigenvalues {
    /// Five eigenvalues in any order
    #[arg(num_args = 5, value_name = "LAMBDA", allow_negative_numbers = true, required = true)]
    values: Vec<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide realizability with both criteria
    Check {
        #[command(flatten)]
        spectrum: Eigenvalues,
        /// Emit JSON including the normalized form
        #[arg(long)]
        json: bool,
    },
    /// Build a realizing matrix and print its certificate as JSON
    Construct {
        #[command(flatten)]
        spectrum: Eigenvalues,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check that a matrix file realizes the given spectrum
    Verify {
        /// JSON with a "matrix" field, a bare JSON array, or 5 lines of 5 numbers
        file: PathBuf,
        #[command(flatten)]
        spectrum: Eigenvalues,
    },
    /// Export the region boundary for a fixed d
    Boundary {
        #[arg(allow_negative_numbers = true)]
        d: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo check that random realizable spectra pass the criterion
    Sample {
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Grid scan on OBJ: 1 checks the extremal power-sum table, 2 the sign of s3
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        lemma: u8,
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        /// Power for lemma 1
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotRealizable(_) | Error::NotPerronDominant { .. } | Error::NonPositiveLeading { .. } => 1,
            Error::NotSymmetric { .. }
            | Error::NegativeEntry { .. }
            | Error::NonZeroMatrixTrace { .. }
            | Error::Verification(_) => 3,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn tolerances(cli: &Cli) -> Result<Tolerances<f64>, Failure> {
    let mut tol = Tolerances::default();
    for (name, v) in [("--tol-geom", cli.tol_geom), ("--tol-sum", cli.tol_sum)] {
        if let Some(v) = v {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Failure::input(format!("{name} must be a finite nonnegative number")));
            }
        }
    }
    if let Some(g) = cli.tol_geom {
        tol = tol.with_geom(g);
    }
    if let Some(s) = cli.tol_sum {
        tol = tol.with_sum(s);
    }
    Ok(tol)
}

fn run(cli: Cli) -> Outcome {
    let tol = tolerances(&cli)?;
    match cli.command {
        Command::Check { spectrum, json } => check(&spectrum.values, json, &tol),
        Command::Construct { spectrum, output } => build(&spectrum.values, output.as_deref(), &tol),
        Command::Verify { file, spectrum } => verify_file(&file, &spectrum.values, &tol),
        Command::Boundary { d, samples, format, output } => boundary(d, samples, format, output.as_deref()),
        Command::Sample { trials, seed } => {
            if trials == 0 {
                return Err(Failure::input("--trials must be positive"));
            }
            report(mc_necessity(trials, seed, &tol)?)
        }
        Command::Scan { lemma, d, k, resolution } => {
            if resolution == 0 {
                return Err(Failure::input("--resolution must be positive"));
            }
            let r = if lemma == 1 {
                let k = k.ok_or_else(|| Failure::input("--k is required for lemma 1"))?;
                if k == 0 {
                    return Err(Failure::input("--k must be positive"));
                }
                grid_scan_lemma1(d, k, resolution)?
            } else {
                grid_scan_lemma2(d, resolution, &tol)?
            };
            report(r)
        }
    }
}

fn print_json<S: Serialize>(v: &S) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::input(e.to_string()))
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(raw: &[f64], as_json: bool, tol: &Tolerances<f64>) -> Outcome {
    let s = Spectrum::validate_and_sort(raw, tol)?;
    if s.is_zero() {
        if as_json {
            print_json(&json!({ "realizable": true, "reason": "zero spectrum", "normalized": null }));
        } else {
            println!("realizable (zero matrix)");
        }
        return Ok(0);
    }
    let n = match s.normalize(tol) {
        Ok(n) => n,
        Err(e @ (Error::NotPerronDominant { .. } | Error::NonPositiveLeading { .. })) => {
            if as_json {
                print_json(&json!({ "realizable": false, "reason": e.to_string(), "normalized": null }));
            } else {
                println!("not realizable: {e}");
            }
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    let a = assess(&n, tol)?;
    let ok = a.realizable();
    if as_json {
        print_json(&json!({
            "realizable": ok,
            "geometric": a.geometric,
            "power_sum": a.power_sum,
            "agree": a.agree(),
            "normalized": n,
        }));
    } else {
        if ok {
            println!("realizable (region {})", a.geometric.region_label);
        } else {
            println!("not realizable: {}", a.failure());
        }
        let line = |v: &sniep5::Verdict| match &v.failed_condition {
            None => "realizable".to_owned(),
            Some(c) => format!("not realizable ({c})"),
        };
        println!("  geometric criterion: {}", line(&a.geometric));
        println!("  power-sum criterion: {}", line(&a.power_sum));
        println!("  criteria agree: {}", yes_no(a.agree()));
    }
    Ok(if ok { 0 } else { 1 })
}

fn build(raw: &[f64], output: Option<&Path>, tol: &Tolerances<f64>) -> Outcome {
    let s = Spectrum::validate_and_sort(raw, tol)?;
    let cert = construct(&s, tol)?;
    let text = serde_json::to_string_pretty(&cert).expect("serializable") + "\n";
    write_out(output, &text)?;
    if let Some(p) = output {
        println!("{} certificate written to {} (residual {:e})", cert.method, p.display(), cert.residual);
    }
    Ok(0)
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<f64>>, String> {
    if let Ok(v) = serde_json::from_str::<serde_json::Value>(text) {
        let rows = match &v {
            serde_json::Value::Object(m) => m.get("matrix").ok_or("JSON object has no \"matrix\" field")?,
            other => other,
        };
        return serde_json::from_value(rows.clone()).map_err(|e| format!("bad matrix: {e}"));
    }
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|t| t.parse::<f64>().map_err(|e| format!("bad entry {t:?}: {e}"))).collect())
        .collect()
}

fn load_matrix(path: &Path, tol: &Tolerances<f64>) -> Result<Matrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let rows = parse_matrix(&text).map_err(Failure::input)?;
    if rows.len() != 5 || rows.iter().any(|r| r.len() != 5) {
        return Err(Failure::input("expected a 5x5 matrix"));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Failure::input("matrix has non-finite entries"));
    }
    let m = Matrix::from_rows(&rows)?.clamp_dust(tol.entry)?;
    let trace = m.trace();
    if trace.abs() > 5.0 * tol.entry * m.norm_inf().max(1.0) {
        return Err(Error::NonZeroMatrixTrace { trace }.into());
    }
    Ok(m)
}

fn verify_file(path: &Path, raw: &[f64], tol: &Tolerances<f64>) -> Outcome {
    let m = load_matrix(path, tol)?;
    let s = Spectrum::validate_and_sort(raw, tol)?;
    let residual = verify(&m, &s)?;
    let bound = tol.eig * s.values()[0].abs().max(1.0);
    let ok = residual <= bound;
    println!("residual {residual:e} (bound {bound:e}): {}", if ok { "pass" } else { "fail" });
    Ok(if ok { 0 } else { 1 })
}

fn boundary(d: f64, samples: usize, format: Format, output: Option<&Path>) -> Outcome {
    if samples < 2 {
        return Err(Failure::input("--samples must be at least 2"));
    }
    let b = Boundary::new(d, samples)?;
    let text = match format {
        Format::Csv => b.to_csv(),
        Format::Json => serde_json::to_string_pretty(&b).expect("serializable") + "\n",
    };
    write_out(output, &text)?;
    Ok(0)
}

fn report(r: ScanReport) -> Outcome {
    print_json(&r);
    Ok(if r.passed { 0 } else { 1 })
}
