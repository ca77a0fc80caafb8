//! The `qwzeta` command line.
//!
//! Every command prints one JSON document on stdout (spectra can also be
//! CSV) and diagnostics on stderr. Exit codes: 0 success, 1 malformed input
//! or arguments, 2 a well-formed request outside the domain (pole, branch
//! violation), 3 a failed cross-check.

use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::crosscheck::{self, CrossCheckOptions, Fault};
use crate::error::{Error, Result};
use crate::generators;
use crate::graph::{reduced_cycle_counts, Graph};
use crate::json::{pair, pairs};
use crate::operators::CoinParams;
use crate::periodic::{self, VoltageGraph, DEFAULT_GRID};
use crate::series::bass_log_series;
use crate::zeta::{self, CharpolyMethod, SpectrumMethod, ZetaMethod};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qwzeta", version, about = "Zeta functions of graphs from coined quantum walks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ihara zeta through the Bass determinant, or the series of log Z.
    Ihara {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, required_unless_present = "series")]
        t: Option<Complex64>,
        /// Emit the coefficients of t^1..t^DEG of log Z instead of a value.
        #[arg(long, value_name = "DEG")]
        series: Option<usize>,
    },
    /// zeta(G, u) = det(I - uU)^{-1} for the coin with eigenvalues a, b.
    QwZeta {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        coin: CoinArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        u: Complex64,
        #[arg(long, value_enum, default_value = "reduced")]
        method: ZetaArg,
    },
    /// Characteristic polynomial det(xI - U), ascending coefficients.
    Charpoly {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        coin: CoinArgs,
        #[arg(long, value_enum, default_value = "reduced")]
        method: CharpolyArg,
    },
    /// Eigenvalues of U.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        coin: CoinArgs,
        #[arg(long, value_enum, default_value = "direct")]
        method: SpectrumArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Ihara zeta of a Z^d-periodic graph by torus quadrature.
    PeriodicIhara {
        #[command(flatten)]
        input: VoltageInput,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        t: Complex64,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Quantum-walk zeta of a Z^d-periodic graph by torus quadrature.
    PeriodicQw {
        #[command(flatten)]
        input: VoltageInput,
        #[command(flatten)]
        coin: CoinArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        u: Complex64,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, value_enum, default_value = "interior")]
        method: PeriodicArg,
    },
    /// The finite cover by (Z/L)^d, as a graph document.
    Quotient {
        #[command(flatten)]
        input: VoltageInput,
        #[arg(long = "L", value_name = "L")]
        l: usize,
    },
    /// Emit a built-in graph or voltage graph.
    Gen {
        #[command(subcommand)]
        which: GenCommand,
    },
    /// Run the identity suite on a graph or voltage graph.
    CrossCheck {
        /// Graph document; stdin when neither this nor --voltage is given.
        #[arg(long, value_name = "PATH", conflicts_with = "voltage")]
        graph: Option<String>,
        #[arg(long, value_name = "PATH")]
        voltage: Option<String>,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Quotient sizes for the sampling identity (repeatable).
        #[arg(long = "L", value_name = "L")]
        l: Vec<usize>,
        #[arg(long, value_name = "DEG", default_value_t = 12)]
        series: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Cycle { n: usize },
    Complete { n: usize },
    Path { n: usize },
    Petersen,
    /// Random connected graph: a spanning tree plus `extra` edges.
    Random {
        n: usize,
        extra: usize,
        #[arg(default_value_t = 0)]
        seed: u64,
    },
    Line,
    Grid2d,
    Honeycomb,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph document; read from stdin when omitted.
    #[arg(long, value_name = "PATH")]
    pub graph: Option<String>,
}

#[derive(Debug, Args)]
pub struct VoltageInput {
    /// Voltage graph document; read from stdin when omitted.
    #[arg(long, value_name = "PATH")]
    pub voltage: Option<String>,
}

#[derive(Debug, Args)]
pub struct CoinArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1,0")]
    pub a: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "-1,0")]
    pub b: Complex64,
}

impl CoinArgs {
    fn params(&self) -> CoinParams {
        CoinParams::new(self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ZetaArg {
    Direct,
    Reduced,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CharpolyArg {
    Direct,
    Reduced,
    KonnoSato,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SpectrumArg {
    Direct,
    Mapped,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PeriodicArg {
    Interior,
    Arc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Parses `re,im` (or a bare real number).
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|_| format!("expected re,im but got {s:?}"));
    let z = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err(format!("expected re,im but got {s:?}")),
    };
    if z.is_finite() {
        Ok(z)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command. `stdin` is read
/// only when an input path is omitted.
pub fn run<I, T>(args: I, stdin: &mut (dyn Read + Send)) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { exit_code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                Outcome { exit_code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    with_thread_limit(|| execute(&cli.command, stdin))
}

fn with_thread_limit<F: FnOnce() -> Outcome + Send>(f: F) -> Outcome {
    let threads = std::env::var("QWZETA_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok());
    match threads {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

fn execute(command: &Command, stdin: &mut (dyn Read + Send)) -> Outcome {
    match dispatch(command, stdin) {
        Ok((exit_code, stdout, stderr)) => Outcome { exit_code, stdout, stderr },
        Err(e) => error_outcome(&e),
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let exit_code = if e.is_domain_error() { EXIT_DOMAIN } else { EXIT_INVALID };
    let mut detail = json!({ "kind": e.kind(), "reason": e.to_string() });
    match e {
        Error::BranchViolation { theta, eigenvalue } => {
            detail["theta"] = json!(theta);
            detail["eigenvalue"] = json!(pair(*eigenvalue));
        }
        Error::Pole { factor, value } => {
            detail["factor"] = json!(factor);
            detail["value"] = json!(pair(*value));
        }
        _ => {}
    }
    Outcome { exit_code, stdout: document(&json!({ "error": detail })), stderr: format!("error: {e}\n") }
}

fn document<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn ok(value: Value) -> Result<(i32, String, String)> {
    Ok((EXIT_OK, document(&value), String::new()))
}

fn read_source(path: Option<&str>, stdin: &mut (dyn Read + Send)) -> Result<String> {
    match path {
        Some(p) => Ok(fs::read_to_string(p)?),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn load_graph(input: &GraphInput, stdin: &mut (dyn Read + Send)) -> Result<Graph> {
    Graph::from_json(&read_source(input.graph.as_deref(), stdin)?)
}

fn load_voltage(input: &VoltageInput, stdin: &mut (dyn Read + Send)) -> Result<VoltageGraph> {
    VoltageGraph::from_json(&read_source(input.voltage.as_deref(), stdin)?)
}

fn positive(name: &str, value: usize) -> Result<usize> {
    if value == 0 {
        Err(Error::InvalidArgument(format!("{name} must be positive")))
    } else {
        Ok(value)
    }
}

fn dispatch(command: &Command, stdin: &mut (dyn Read + Send)) -> Result<(i32, String, String)> {
    match command {
        Command::Ihara { input, t, series } => {
            let g = load_graph(input, stdin)?;
            match (series, t) {
                (Some(degree), _) => {
                    let degree = positive("--series", *degree)?;
                    let counts = reduced_cycle_counts(&g, degree)?;
                    let exact = bass_log_series(&g, degree);
                    let coefficients: Vec<Complex64> = exact
                        .iter()
                        .map(|q| Complex64::new(num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN), 0.0))
                        .collect();
                    ok(json!({
                        "degree": degree,
                        "coefficients": pairs(&coefficients),
                        "exact": exact.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                        "cycle_counts": counts.counts(),
                    }))
                }
                (None, Some(t)) => ok(json!({ "value": pair(zeta::ihara_zeta_bass(&g, *t)?) })),
                (None, None) => Err(Error::InvalidArgument("one of --t or --series is required".into())),
            }
        }
        Command::QwZeta { input, coin, u, method } => {
            let g = load_graph(input, stdin)?;
            let method = match method {
                ZetaArg::Direct => ZetaMethod::Direct,
                ZetaArg::Reduced => ZetaMethod::Reduced,
            };
            ok(json!({ "value": pair(zeta::qw_zeta(&g, &coin.params(), *u, method)?) }))
        }
        Command::Charpoly { input, coin, method } => {
            let g = load_graph(input, stdin)?;
            let p = coin.params();
            let poly = match method {
                CharpolyArg::Direct => zeta::qw_charpoly(&g, &p, CharpolyMethod::Direct)?,
                CharpolyArg::Reduced => zeta::qw_charpoly(&g, &p, CharpolyMethod::Reduced)?,
                CharpolyArg::KonnoSato => {
                    if p != CoinParams::grover() {
                        return Err(Error::InvalidArgument("konno-sato applies to the Grover coin (a=1, b=-1) only".into()));
                    }
                    zeta::konno_sato_charpoly(&g)
                }
            };
            ok(json!({ "degree": poly.degree(), "coefficients": pairs(poly.coefficients()) }))
        }
        Command::Spectrum { input, coin, method, format } => {
            let g = load_graph(input, stdin)?;
            let method = match method {
                SpectrumArg::Direct => SpectrumMethod::Direct,
                SpectrumArg::Mapped => SpectrumMethod::Mapped,
            };
            let s = zeta::qw_spectrum(&g, &coin.params(), method)?;
            match format {
                Format::Json => ok(serde_json::to_value(&s)?),
                Format::Csv => {
                    let mut out = String::from("re,im\n");
                    for z in &s.eigenvalues {
                        out.push_str(&format!("{},{}\n", z.re, z.im));
                    }
                    Ok((EXIT_OK, out, String::new()))
                }
            }
        }
        Command::PeriodicIhara { input, t, grid } => {
            let vg = load_voltage(input, stdin)?;
            let grid = positive("--grid", *grid)?;
            ok(json!({ "value": pair(periodic::periodic_ihara_zeta(&vg, *t, grid)?), "grid": grid }))
        }
        Command::PeriodicQw { input, coin, u, grid, method } => {
            let vg = load_voltage(input, stdin)?;
            let grid = positive("--grid", *grid)?;
            let p = coin.params();
            let value = match method {
                PeriodicArg::Interior => periodic::periodic_qw_zeta(&vg, &p, *u, grid)?,
                PeriodicArg::Arc => periodic::periodic_qw_zeta_arc(&vg, &p, *u, grid)?,
            };
            ok(json!({ "value": pair(value), "grid": grid }))
        }
        Command::Quotient { input, l } => {
            let vg = load_voltage(input, stdin)?;
            Ok((EXIT_OK, document(&vg.finite_quotient(*l)?.spec()), String::new()))
        }
        Command::Gen { which } => {
            let out = match which {
                GenCommand::Cycle { n } => checked_graph(*n, 3, "cycle", generators::cycle)?,
                GenCommand::Complete { n } => checked_graph(*n, 1, "complete", generators::complete)?,
                GenCommand::Path { n } => checked_graph(*n, 1, "path", generators::path)?,
                GenCommand::Petersen => document(&generators::petersen().spec()),
                GenCommand::Random { n, extra, seed } => {
                    positive("n", *n)?;
                    let max_extra = n * n.saturating_sub(1) / 2 - (n - 1);
                    if *extra > max_extra {
                        return Err(Error::InvalidArgument(format!("at most {max_extra} extra edges fit on {n} vertices")));
                    }
                    document(&generators::random_connected(*n, *extra, *seed).spec())
                }
                GenCommand::Line => document(&generators::line().spec()),
                GenCommand::Grid2d => document(&generators::grid2d().spec()),
                GenCommand::Honeycomb => document(&generators::honeycomb().spec()),
            };
            Ok((EXIT_OK, out, String::new()))
        }
        Command::CrossCheck { graph, voltage, grid, l, series, seed, inject_fault } => {
            let mut opts = CrossCheckOptions {
                seed: *seed,
                series_degree: positive("--series", *series)?,
                grid: positive("--grid", *grid)?,
                fault: inject_fault.then_some(Fault::CorruptPrefactor),
                ..Default::default()
            };
            if !l.is_empty() {
                opts.sampling_sizes = l.clone();
            }
            let report = match (graph, voltage) {
                (_, Some(path)) => crosscheck::check_voltage(&VoltageGraph::from_json(&fs::read_to_string(path)?)?, &opts)?,
                (Some(path), None) => crosscheck::check_graph(&Graph::from_json(&fs::read_to_string(path)?)?, &opts)?,
                (None, None) => {
                    let text = read_source(None, stdin)?;
                    if is_voltage_document(&text) {
                        crosscheck::check_voltage(&VoltageGraph::from_json(&text)?, &opts)?
                    } else {
                        crosscheck::check_graph(&Graph::from_json(&text)?, &opts)?
                    }
                }
            };
            let mut stderr = String::new();
            for f in report.failures() {
                stderr.push_str(&format!(
                    "FAILED {}: residual {:e} > {:e} at {}\n",
                    f.name, f.max_residual, f.tolerance, f.worst_case
                ));
            }
            let code = if report.all_passed { EXIT_OK } else { EXIT_CHECK_FAILED };
            Ok((code, document(&report), stderr))
        }
    }
}

fn checked_graph(n: usize, min: usize, name: &str, build: fn(usize) -> Graph) -> Result<String> {
    if n < min {
        return Err(Error::InvalidArgument(format!("{name} needs at least {min} vertices")));
    }
    Ok(document(&build(n).spec()))
}

fn is_voltage_document(text: &str) -> bool {
    serde_json::from_str::<Value>(text).map(|v| v.get("dim").is_some()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> Outcome {
        let mut argv = vec!["qwzeta"];
        argv.extend_from_slice(args);
        run(argv, &mut input.as_bytes())
    }

    fn value(out: &Outcome) -> Complex64 {
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        Complex64::new(v["value"][0].as_f64().unwrap(), v["value"][1].as_f64().unwrap())
    }

    #[test]
    fn parses_complex_flags() {
        assert_eq!(parse_complex("0.5,0").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("-1, 2.5").unwrap(), Complex64::new(-1.0, 2.5));
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x,1").is_err());
        assert!(parse_complex("inf,0").is_err());
    }

    #[test]
    fn triangle_ihara_through_stdin() {
        let triangle = run_str(&["gen", "cycle", "3"], "");
        assert_eq!(triangle.exit_code, 0);
        let out = run_str(&["ihara", "--t", "0.5,0"], &triangle.stdout);
        assert_eq!(out.exit_code, 0, "{}", out.stderr);
        assert!((value(&out) - Complex64::new(64.0 / 49.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn negative_flag_values_parse() {
        let k4 = run_str(&["gen", "complete", "4"], "").stdout;
        let out = run_str(&["qw-zeta", "--a", "1,0", "--b", "-1,0", "--u", "0,0", "--method", "reduced"], &k4);
        assert_eq!(out.exit_code, 0, "{}", out.stderr);
        assert_eq!(value(&out), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn pole_is_a_domain_error() {
        let c3 = run_str(&["gen", "cycle", "3"], "").stdout;
        let out = run_str(&["ihara", "--t", "1,0"], &c3);
        assert_eq!(out.exit_code, EXIT_DOMAIN);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "pole");
        assert!(v["error"]["reason"].as_str().unwrap().contains("vanishes"));
    }

    #[test]
    fn bad_input_is_a_validation_error() {
        assert_eq!(run_str(&["ihara", "--t", "0.1,0"], "{\"n\": 2, \"edges\": [[0, 0]]}").exit_code, EXIT_INVALID);
        assert_eq!(run_str(&["ihara", "--t", "0.1,0"], "not json").exit_code, EXIT_INVALID);
        assert_eq!(run_str(&["ihara", "--t", "zero"], "").exit_code, EXIT_INVALID);
        assert_eq!(run_str(&["frobnicate"], "").exit_code, EXIT_INVALID);
        assert_eq!(run_str(&["gen", "cycle", "2"], "").exit_code, EXIT_INVALID);
        let line = run_str(&["gen", "line"], "").stdout;
        assert_eq!(run_str(&["quotient", "--L", "2"], &line).exit_code, EXIT_INVALID);
        assert_eq!(run_str(&["periodic-ihara", "--t", "0.1,0", "--grid", "0"], &line).exit_code, EXIT_INVALID);
    }

    #[test]
    fn help_exits_cleanly() {
        let out = run_str(&["--help"], "");
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("periodic-ihara"));
    }

    #[test]
    fn branch_violation_names_theta() {
        let line = run_str(&["gen", "line"], "").stdout;
        let out = run_str(&["periodic-ihara", "--t", "0.8,0", "--grid", "8"], &line);
        assert_eq!(out.exit_code, EXIT_DOMAIN);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "branch_violation");
        assert_eq!(v["error"]["theta"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn csv_spectrum() {
        let c3 = run_str(&["gen", "cycle", "3"], "").stdout;
        let out = run_str(&["spectrum", "--format", "csv"], &c3);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.stdout.lines().count(), 7);
        assert_eq!(out.stdout.lines().next(), Some("re,im"));
    }

    #[test]
    fn konno_sato_rejects_other_coins() {
        let c3 = run_str(&["gen", "cycle", "3"], "").stdout;
        assert_eq!(run_str(&["charpoly", "--method", "konno-sato", "--b", "0,1"], &c3).exit_code, EXIT_INVALID);
        assert_eq!(run_str(&["charpoly", "--method", "konno-sato"], &c3).exit_code, EXIT_OK);
    }

    #[test]
    fn output_is_deterministic() {
        let line = run_str(&["gen", "grid2d"], "").stdout;
        let a = run_str(&["periodic-qw", "--u", "0.2,0.1", "--grid", "16"], &line);
        let b = run_str(&["periodic-qw", "--u", "0.2,0.1", "--grid", "16"], &line);
        assert_eq!(a, b);
        assert_ne!(value(&a), Complex64::new(0.0, 0.0));
    }
}
