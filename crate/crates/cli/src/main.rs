//! Command-line front end: bound tables, spectrum enumeration, extremal
//! searches, the two-crossing formula, and the self-verification suite.
//!
//! Exit codes: 0 ok, 1 verify/runtime failure, 2 usage, 3 invalid surface,
//! 4 unconverged search (the result is still printed).

mod envelope;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use geocross::bounds::{known_l_symbolic, sandwich_report};
use geocross::hypmath::Length;
use geocross::search::{find_extremal, SearchConfig};
use geocross::torus::{complete_triple, enumerate_geodesics, min_two_crossing_partner, TraceTriple};
use geocross::{Error as GeoError, HalfTrace};

use envelope::{envelope, fmt15, params_object, Status};

const EXIT_OK: i32 = 0;
const EXIT_FAILURE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_INVALID_SURFACE: i32 = 3;
const EXIT_UNCONVERGED: i32 = 4;

/// Residual above which a spectrum input is rejected as not cusped.
const SPECTRUM_RESIDUAL_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "geocross",
    version,
    about = "Length bounds and spectra for intersecting simple closed geodesics on hyperbolic surfaces"
)]
struct Cli {
    /// Worker threads for parallel grid evaluation (falls back to GEO_JOBS).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyLevel {
    Fast,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Lower/upper bound table l_n <= L_n <= u_n for n = 1..n_max.
    Bounds {
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Simple length spectrum of the cusped torus with half-traces (r, s, t).
    Spectrum {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        s: f64,
        /// Third coordinate; completed to the low root of the cusp relation
        /// when omitted.
        #[arg(long)]
        t: Option<f64>,
        /// Length cutoff for the enumeration.
        #[arg(long)]
        cutoff: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Minimize the longer length of an n-crossing pair over cusped tori.
    Extremal {
        #[arg(long)]
        n: u32,
        #[arg(long = "grid-lo", default_value_t = 1.05)]
        grid_lo: f64,
        #[arg(long = "grid-hi", default_value_t = 3.0)]
        grid_hi: f64,
        #[arg(long = "grid-steps", default_value_t = 60)]
        grid_steps: u32,
        /// Enumeration cutoff as a multiple of the collar threshold l_n.
        #[arg(long = "cutoff-factor", default_value_t = 2.2)]
        cutoff_factor: f64,
        /// Simplex convergence tolerance in chart coordinates.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long = "max-iters", default_value_t = 2000)]
        max_iters: u32,
    },
    /// Sharp minimal length of a geodesic crossing one of length alpha twice.
    Pair {
        #[arg(long)]
        alpha: f64,
        /// Boundary length of the torus (0 = cusp).
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
    },
    /// Run the built-in verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Fast)]
        level: VerifyLevel,
    },
}

fn main() {
    let cli = Cli::parse();
    configure_jobs(cli.jobs);
    std::process::exit(run(cli.command));
}

fn configure_jobs(flag: Option<usize>) {
    let jobs = flag.or_else(|| {
        std::env::var("GEO_JOBS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
    });
    if let Some(jobs) = jobs.filter(|&j| j > 0) {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

fn run(command: Command) -> i32 {
    match command {
        Command::Bounds { n_max, format } => cmd_bounds(n_max, format),
        Command::Spectrum {
            r,
            s,
            t,
            cutoff,
            format,
        } => cmd_spectrum(r, s, t, cutoff, format),
        Command::Extremal {
            n,
            grid_lo,
            grid_hi,
            grid_steps,
            cutoff_factor,
            tol,
            max_iters,
        } => cmd_extremal(SearchConfig {
            n,
            grid_lo,
            grid_hi,
            grid_steps,
            cutoff_factor,
            refine_tol: tol,
            max_refine_iters: max_iters,
        }),
        Command::Pair { alpha, eps } => cmd_pair(alpha, eps),
        Command::Verify { level } => cmd_verify(level),
    }
}

/// Classify a library error into an envelope status and exit code.
fn error_exit(command: &str, params: Value, err: &GeoError) -> i32 {
    let (status, code) = match err {
        GeoError::SearchFailed { .. } => (Status::Infeasible, EXIT_FAILURE),
        GeoError::InvalidConfig { .. } => (Status::Error, EXIT_USAGE),
        GeoError::DegenerateSurface { .. }
        | GeoError::NotCusped { .. }
        | GeoError::NoCuspedTorus { .. }
        | GeoError::HalfTraceRange(_)
        | GeoError::NegativeLength(_)
        | GeoError::NonPositiveLength { .. }
        | GeoError::InvalidSlope { .. } => (Status::Error, EXIT_INVALID_SURFACE),
        _ => (Status::Error, EXIT_FAILURE),
    };
    print_envelope(envelope(
        command,
        params,
        json!({ "error": err.to_string() }),
        status,
    ));
    code
}

fn print_envelope(value: Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("valid JSON"));
}

fn cmd_bounds(n_max: u32, format: Format) -> i32 {
    let params = params_object(&[("n_max", json!(n_max))]);
    if n_max == 0 {
        return error_exit(
            "bounds",
            params,
            &GeoError::InvalidConfig {
                reason: "n-max must be >= 1".into(),
            },
        );
    }
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        match sandwich_report(n) {
            Ok(report) => rows.push(report),
            Err(e) => return error_exit("bounds", params, &e),
        }
    }
    match format {
        Format::Csv => {
            println!("n,l_n,u_n,L_n,sandwich_ok");
            for row in rows {
                let (n, l, u, known, ok) = row.csv_cells();
                let known = known.map(fmt15).unwrap_or_default();
                println!("{},{},{},{},{}", n, fmt15(l), fmt15(u), known, ok);
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .into_iter()
                .map(|row| {
                    let mut v = serde_json::to_value(row).expect("serializable report");
                    if let Some(symbolic) = known_l_symbolic(row.n) {
                        v["L_n_symbolic"] = json!(symbolic);
                    }
                    v
                })
                .collect();
            print_envelope(envelope("bounds", params, json!(rows), Status::Ok));
        }
    }
    EXIT_OK
}

fn cmd_spectrum(r: f64, s: f64, t: Option<f64>, cutoff: f64, format: Format) -> i32 {
    let params = params_object(&[
        ("r", json!(r)),
        ("s", json!(s)),
        ("t", t.map_or(Value::Null, |v| json!(v))),
        ("cutoff", json!(cutoff)),
    ]);

    let triple = match build_triple(r, s, t) {
        Ok(triple) => triple,
        Err(e) => return error_exit("spectrum", params, &e),
    };
    let residual = triple.residual();
    if residual.abs() > SPECTRUM_RESIDUAL_TOL {
        return error_exit(
            "spectrum",
            params,
            &GeoError::NotCusped { residual },
        );
    }
    let cutoff = match Length::new(cutoff) {
        Ok(c) => c,
        Err(e) => return error_exit("spectrum", params, &e),
    };
    let spectrum = match enumerate_geodesics(&triple, cutoff) {
        Ok(s) => s,
        Err(e) => return error_exit("spectrum", params, &e),
    };
    match format {
        Format::Csv => {
            println!("slope_p,slope_q,halftrace,length");
            for g in spectrum {
                println!(
                    "{},{},{},{}",
                    g.slope.p(),
                    g.slope.q(),
                    fmt15(g.halftrace.value()),
                    fmt15(g.length.value())
                );
            }
        }
        Format::Json => {
            let result = json!({
                "triple": serde_json::to_value(triple).expect("serializable triple"),
                "residual": residual,
                "count": spectrum.len(),
                "geodesics": serde_json::to_value(spectrum).expect("serializable spectrum"),
            });
            print_envelope(envelope("spectrum", params, result, Status::Ok));
        }
    }
    EXIT_OK
}

fn build_triple(r: f64, s: f64, t: Option<f64>) -> Result<TraceTriple, GeoError> {
    let (hr, hs) = (HalfTrace::new(r)?, HalfTrace::new(s)?);
    for v in [r, s] {
        if v <= 1.0 {
            return Err(GeoError::DegenerateSurface { value: v });
        }
    }
    let ht = match t {
        Some(v) => {
            if v <= 1.0 {
                return Err(GeoError::DegenerateSurface { value: v });
            }
            HalfTrace::new(v)?
        }
        None => complete_triple(hr, hs)?.0,
    };
    Ok(TraceTriple::new(hr, hs, ht, Length::ZERO))
}

fn cmd_extremal(config: SearchConfig) -> i32 {
    let params = serde_json::to_value(config).expect("serializable config");
    let result = match find_extremal(config.n, &config) {
        Ok(r) => r,
        Err(e) => return error_exit("extremal", params, &e),
    };
    let mut payload = serde_json::to_value(result).expect("serializable result");
    // beyond the known constants the search is an upper bound restricted to
    // once-punctured tori, not a proven sharp value
    payload["label"] = json!(if config.n <= 3 {
        "sharp constant candidate"
    } else {
        "torus-restricted upper bound"
    });
    let status = if result.converged {
        Status::Ok
    } else {
        Status::Unconverged
    };
    print_envelope(envelope("extremal", params, payload, status));
    if result.converged {
        EXIT_OK
    } else {
        EXIT_UNCONVERGED
    }
}

fn cmd_pair(alpha: f64, eps: f64) -> i32 {
    let params = params_object(&[("alpha", json!(alpha)), ("eps", json!(eps))]);
    let result = (|| -> Result<Value, GeoError> {
        let beta = min_two_crossing_partner(Length::new(alpha)?, Length::new(eps)?)?;
        Ok(json!({
            "alpha": alpha,
            "eps": eps,
            "beta_min": beta.value(),
        }))
    })();
    match result {
        Ok(payload) => {
            print_envelope(envelope("pair", params, payload, Status::Ok));
            EXIT_OK
        }
        Err(e) => error_exit("pair", params, &e),
    }
}

fn cmd_verify(level: VerifyLevel) -> i32 {
    let level = match level {
        VerifyLevel::Fast => verify::Level::Fast,
        VerifyLevel::Full => verify::Level::Full,
    };
    let report = verify::run_checks(level, |line| println!("{line}"));
    let total = report.passed + report.failed.len();
    if report.failed.is_empty() {
        println!("verify: {total}/{total} checks passed");
        EXIT_OK
    } else {
        println!(
            "verify: {}/{} checks passed, failed: {}",
            report.passed,
            total,
            report.failed.join(", ")
        );
        EXIT_FAILURE
    }
}
