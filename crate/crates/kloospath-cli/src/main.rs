//! Command-line front end: classification tables, single-path verdicts,
//! path and gallery dumps (CSV/JSON/SVG) and Monte Carlo runs.
//!
//! All outputs are deterministic: classification counts commute across
//! worker threads, Monte Carlo trials derive their streams from
//! seed ⊕ trial-index, and files are written with fixed field order.

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use std::process::ExitCode;
use std::str::FromStr;

use kloospath::gallery::{GalleryFunction, GalleryId};
use kloospath::membership::{FrequencyScan, MembershipVerdict, PathKind};
use kloospath::path::PolyPath;
use kloospath::stochastic::mc_ball_probability;

#[derive(Parser)]
#[command(name = "kloospath", version, about = "Exponential-sum partial-sum paths and the support of their limiting random series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Plain Kloosterman path (n = p−1).
    Plain,
    /// Swiss-railway-clock path with the mid-path pause (n = p).
    Swiss,
    /// Kloosterman path with pauses of duration 1/(2p) at both ends.
    Padded,
    /// Birch-sum path with the x = 0 summand split across both ends.
    Birch,
    /// Legendre character path with pauses at both ends.
    Character,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanArg {
    /// Criterion over all nonzero frequencies (the support characterization).
    All,
    /// Positive frequencies only (the published tables' convention).
    Positive,
}

impl From<ScanArg> for FrequencyScan {
    fn from(s: ScanArg) -> Self {
        match s {
            ScanArg::All => FrequencyScan::All,
            ScanArg::Positive => FrequencyScan::PositiveOnly,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Classify K_p(a, b) over all a for each listed prime.
    Classify {
        /// Comma-separated list of odd primes.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        b: u64,
        #[arg(long, value_enum)]
        kind: TableKindArg,
        #[arg(long, value_enum, default_value_t = ScanArg::All)]
        scan: ScanArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<String>,
        /// Worker threads (0 = auto); falls back to KLOOSPATH_THREADS.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Support verdict for a single path.
    Check {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = ScanArg::All)]
        scan: ScanArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Emit a path as CSV vertices or an SVG polyline.
    Path {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Sample a gallery curve and report its verdict.
    Gallery {
        /// Curve id, e.g. takagi, riemann, cantor, davenport, liouville,
        /// line:2.0, parabola:6.28, semicircle-sqrt:1.0, semicircle-trig:1.0,
        /// hilbert:3.
        #[arg(long)]
        id: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Sample count for CSV/SVG output.
        #[arg(long, default_value_t = 1025)]
        samples: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Monte Carlo estimate of P(sup|K − f| < eps).
    Mc {
        /// Center function: `zero` or any gallery id.
        #[arg(long = "f")]
        f_id: String,
        #[arg(long)]
        eps: f64,
        /// Series cutoff (|h| ≤ N).
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1025)]
        grid: usize,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKindArg {
    Plain,
    Swiss,
}

#[derive(Serialize)]
struct CheckOutput {
    p: u64,
    a: u64,
    b: u64,
    kind: String,
    scan: FrequencyScan,
    status: kloospath::membership::SupportStatus,
    witness_h: Option<i64>,
    witness_value: Option<f64>,
    borderline: bool,
}

#[derive(Serialize)]
struct GalleryOutput {
    id: String,
    status: kloospath::membership::SupportStatus,
    witness_h: Option<i64>,
    witness_value: Option<f64>,
    f1_ok: bool,
    symmetry_ok: bool,
    borderline: bool,
}

#[derive(Serialize)]
struct McOutput {
    f_id: String,
    eps: f64,
    #[serde(rename = "N")]
    n: usize,
    trials: usize,
    seed: u64,
    frequency: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Classify {
            p,
            b,
            kind,
            scan,
            format,
            out,
            threads,
        } => {
            let kind = match kind {
                TableKindArg::Plain => PathKind::Plain,
                TableKindArg::Swiss => PathKind::SwissClock,
            };
            let rows = with_thread_pool(threads, || {
                p.iter()
                    .map(|&p| kloospath::membership::classify_prime(p, b, kind, scan.into()))
                    .collect::<kloospath::Result<Vec<_>>>()
            })
            .map_err(|e| e.to_string())?;
            let text = match format {
                FormatArg::Csv => {
                    let mut text = String::from("p,in_s_easy,in_s_hard,not_in_s\n");
                    for row in &rows {
                        text.push_str(&format!(
                            "{},{},{},{}\n",
                            row.p, row.in_s_easy, row.in_s_hard, row.not_in_s
                        ));
                    }
                    text
                }
                FormatArg::Json => serde_json::to_string_pretty(&rows).unwrap() + "\n",
                FormatArg::Svg => return Err("classification has no SVG form".into()),
            };
            emit(out.as_deref(), &text)
        }
        Command::Check {
            p,
            a,
            b,
            kind,
            scan,
            out,
        } => {
            let (path, kind_name) = build_path(p, a, b, kind)?;
            let verdict = judge(&path, kind, scan.into())?;
            let output = CheckOutput {
                p,
                a,
                b,
                kind: kind_name,
                scan: scan.into(),
                status: verdict.status,
                witness_h: verdict.witness_h,
                witness_value: verdict.witness_value,
                borderline: verdict.borderline,
            };
            emit(
                out.as_deref(),
                &(serde_json::to_string_pretty(&output).unwrap() + "\n"),
            )
        }
        Command::Path {
            p,
            a,
            b,
            kind,
            format,
            out,
        } => {
            let (path, _) = build_path(p, a, b, kind)?;
            let text = match format {
                FormatArg::Csv => path.to_csv(),
                FormatArg::Svg => path.to_svg(1024, 768),
                FormatArg::Json => return Err("path output is csv or svg".into()),
            };
            emit(out.as_deref(), &text)
        }
        Command::Gallery {
            id,
            format,
            samples,
            out,
        } => {
            let gallery_id = GalleryId::from_str(&id).map_err(|e| e.to_string())?;
            let function = GalleryFunction::new(gallery_id).map_err(|e| e.to_string())?;
            let text = match format {
                FormatArg::Json => {
                    let verdict = function.verdict().map_err(|e| e.to_string())?;
                    let output = GalleryOutput {
                        id: gallery_id.to_string(),
                        status: verdict.status,
                        witness_h: verdict.witness_h,
                        witness_value: verdict.witness_value,
                        f1_ok: verdict.f1_ok,
                        symmetry_ok: verdict.symmetry_ok,
                        borderline: verdict.borderline,
                    };
                    serde_json::to_string_pretty(&output).unwrap() + "\n"
                }
                FormatArg::Csv => {
                    let mut text = String::from("t,re,im\n");
                    for i in 0..samples.max(2) {
                        let t = i as f64 / (samples.max(2) - 1) as f64;
                        let z = function.eval(t);
                        text.push_str(&format!("{},{},{}\n", t, z.re, z.im));
                    }
                    text
                }
                FormatArg::Svg => gallery_svg(&function, samples.max(2))?,
            };
            emit(out.as_deref(), &text)
        }
        Command::Mc {
            f_id,
            eps,
            n,
            trials,
            seed,
            grid,
            out,
            threads,
        } => {
            let center = center_function(&f_id)?;
            let frequency = with_thread_pool(threads, || {
                Ok(mc_ball_probability(
                    |t| center(t),
                    eps,
                    n,
                    trials,
                    seed,
                    grid,
                ))
            })
            .map_err(|e: kloospath::Error| e.to_string())?;
            let output = McOutput {
                f_id,
                eps,
                n,
                trials,
                seed,
                frequency,
            };
            emit(
                out.as_deref(),
                &(serde_json::to_string_pretty(&output).unwrap() + "\n"),
            )
        }
    }
}

fn build_path(p: u64, a: u64, b: u64, kind: KindArg) -> Result<(PolyPath, String), String> {
    let built = match kind {
        KindArg::Plain => kloospath::path::kloosterman_path(a, b, p),
        KindArg::Swiss => kloospath::path::swiss_clock_path(a, b, p),
        KindArg::Padded => kloospath::path::padded_kloosterman_path(a, b, p),
        KindArg::Birch => kloospath::path::padded_birch_path(a, p),
        KindArg::Character => kloospath::path::padded_character_path(p),
    };
    let name = match kind {
        KindArg::Plain => "plain",
        KindArg::Swiss => "swiss",
        KindArg::Padded => "padded",
        KindArg::Birch => "birch",
        KindArg::Character => "character",
    };
    built
        .map(|path| (path, name.to_string()))
        .map_err(|e| e.to_string())
}

fn judge(path: &PolyPath, kind: KindArg, scan: FrequencyScan) -> Result<MembershipVerdict, String> {
    match kind {
        KindArg::Plain | KindArg::Swiss => {
            let plan = kloospath::dft::Dft::new(path.n_segments());
            kloospath::membership::check_polygonal_with(path, &plan, scan)
                .map_err(|e| e.to_string())
        }
        // The padded variants have unequal knot spacing; the α-scan covers
        // both frequency signs by construction.
        _ => kloospath::membership::check_polygonal_general(path).map_err(|e| e.to_string()),
    }
}

fn center_function(f_id: &str) -> Result<Box<dyn Fn(f64) -> Complex64 + Sync>, String> {
    if f_id == "zero" {
        return Ok(Box::new(|_| Complex64::new(0.0, 0.0)));
    }
    let id = GalleryId::from_str(f_id).map_err(|e| e.to_string())?;
    let function = GalleryFunction::new(id).map_err(|e| e.to_string())?;
    Ok(Box::new(move |t| function.eval(t)))
}

fn gallery_svg(function: &GalleryFunction, samples: usize) -> Result<String, String> {
    // Hilbert approximations are polygonal already; render them exactly.
    if let GalleryId::HilbertApprox(n) = function.id() {
        let path = kloospath::gallery::hilbert_path(n).map_err(|e| e.to_string())?;
        return Ok(path.to_svg(1024, 768));
    }
    let vertices: Vec<Complex64> = (0..samples)
        .map(|i| function.eval(i as f64 / (samples - 1) as f64))
        .collect();
    let knots: Vec<f64> = (0..samples)
        .map(|i| i as f64 / (samples - 1) as f64)
        .collect();
    let path = PolyPath::new(vertices, knots).map_err(|e| e.to_string())?;
    Ok(path.to_svg(1024, 768))
}

fn thread_count(flag: usize) -> usize {
    if flag > 0 {
        return flag;
    }
    std::env::var("KLOOSPATH_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0)
}

fn with_thread_pool<T>(
    flag: usize,
    work: impl FnOnce() -> kloospath::Result<T> + Send,
) -> kloospath::Result<T>
where
    T: Send,
{
    let threads = thread_count(flag);
    if threads == 0 {
        work()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(work)
    }
}

fn emit(out: Option<&str>, text: &str) -> Result<(), String> {
    match out {
        Some(file) => std::fs::write(file, text).map_err(|e| format!("writing {file}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
