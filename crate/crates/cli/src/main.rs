use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use crosstile::codes::{binary_hamming, ternary_hamming, BlockCode};
use crosstile::constructions::{
    from_binary_perfect, from_ternary_perfect, locate_tile_binary, locate_tile_ternary,
    punctured_construction,
};
use crosstile::error::Error;
use crosstile::format::{parse_code, parse_point, parse_tiling, write_code, write_tiling};
use crosstile::geometry::covers;
use crosstile::report::{self, ReportFormat};
use crosstile::search::{search_tilings, SearchConfig, SearchStatus};
use crosstile::svg::render_svg;
use crosstile::tiling::{
    admissible_dimension, nonexistence_certificate, structural_audit, verify_with, Admissibility,
    Conclusion, PeriodicTiling, VerifyOptions, DEFAULT_CELL_BUDGET,
};

/// Largest `n` accepted by `exist`; the certificate arithmetic grows as `n log n` digits.
const MAX_EXIST_N: u64 = 100_000;
/// Largest window for which `exist` builds and verifies a witness.
const WITNESS_CELLS: u64 = 429_981_696;

#[derive(Parser)]
#[command(name = "crosstile", version, about = "Tilings of Z^n by the half-cross and perfect codes")]
struct Cli {
    /// Worker threads for verification (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a binary or ternary Hamming code.
    GenCode {
        /// Alphabet size: 2 for binary, 3 for ternary.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        base: u8,
        /// Redundancy; the length is (base^t - 1) / (base - 1).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        /// Output CODE v1 file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a tiling from a perfect code.
    BuildTiling {
        /// Construction to apply.
        #[arg(long, value_enum)]
        method: Method,
        /// Input CODE v1 file.
        #[arg(long)]
        code: PathBuf,
        /// Output TILING v1 file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that a tiling file covers its torus exactly once.
    Verify {
        /// Input TILING v1 file.
        #[arg(long)]
        tiling: PathBuf,
        /// Add the structural audit (normalizes at the first codeword if 0 is absent).
        #[arg(long)]
        audit: bool,
        /// Report the minimum torus cross distance between codewords.
        #[arg(long)]
        min_dist: bool,
        /// Plain text or a JSON tree.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest window p^n to mark.
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        cell_budget: u64,
    },
    /// Name the codeword whose tile covers a point.
    Locate {
        /// Construction whose tile is located.
        #[arg(long, value_enum)]
        tiling_method: LocateMethod,
        /// The perfect code the tiling is built from.
        #[arg(long)]
        code: PathBuf,
        /// Space-separated integers, e.g. "1 1".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Decide whether a tiling of Z^n can exist.
    Exist {
        /// Dimension.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Plain text or a JSON tree.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustive search for tilings of Z_p^n.
    Search {
        /// Dimension.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        n: u64,
        /// Period; the window is Z_p^n.
        #[arg(long)]
        p: u64,
        /// Stop after this many solutions.
        #[arg(long)]
        max_solutions: Option<usize>,
        /// Stop after this many search nodes (exit 4).
        #[arg(long, default_value_t = 50_000_000)]
        node_budget: u64,
        /// Enumerate all translates instead of fixing 0 as a codeword.
        #[arg(long)]
        no_symmetry_breaking: bool,
        /// Write each solution as a TILING v1 file into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Include elapsed time in the report.
        #[arg(long)]
        time: bool,
        /// Plain text or a JSON tree.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Draw a verified two-dimensional tiling as SVG.
    ExportSvg {
        /// Input TILING v1 file.
        #[arg(long)]
        tiling: PathBuf,
        /// Output SVG file.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Binary,
    Punctured,
    Ternary,
}

#[derive(Clone, Copy, ValueEnum)]
enum LocateMethod {
    Binary,
    Ternary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tree,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Tree => ReportFormat::Tree,
        }
    }
}

/// Exit statuses.
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const PRECONDITION: u8 = 3;
const BUDGET: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotPerfect(_) | Error::Singular | Error::NotPeriodic(_) => PRECONDITION,
            Error::CellBudget { .. } | Error::Guard(_) => BUDGET,
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::InvalidDimension(_)
            | Error::DimensionMismatch { .. }
            | Error::PeriodTooSmall(_) => USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<(String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(USAGE, format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::new(USAGE, format!("cannot write {}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<BlockCode, Failure> {
    parse_code(&read(path)?).map_err(|e| Failure::new(USAGE, format!("{}: {e}", path.display())))
}

fn load_tiling(path: &Path) -> Result<PeriodicTiling, Failure> {
    parse_tiling(&read(path)?).map_err(|e| Failure::new(USAGE, format!("{}: {e}", path.display())))
}

fn gen_code(base: u8, t: u32, out: &Path) -> Outcome {
    let code = if base == 2 {
        binary_hamming(t)?
    } else {
        ternary_hamming(t)?
    };
    write(out, &write_code(&code))?;
    let check = code.is_perfect();
    let mut text = String::new();
    let _ = writeln!(text, "q: {}", code.q());
    let _ = writeln!(text, "size: {}", code.len());
    let _ = writeln!(text, "length: {}", code.length());
    if code.len() >= 2 {
        let _ = writeln!(text, "min_distance: {}", code.min_hamming_distance()?);
    } else {
        let _ = writeln!(text, "min_distance: none");
    }
    let _ = writeln!(text, "perfect: {}", if check.perfect { "yes" } else { "no" });
    let _ = writeln!(text, "result: wrote {} codewords to {}", code.len(), out.display());
    Ok((text, if check.perfect { 0 } else { NEGATIVE }))
}

fn build_tiling(method: Method, code: &Path, out: &Path) -> Outcome {
    let code = load_code(code)?;
    let tiling = match method {
        Method::Binary => from_binary_perfect(&code)?,
        Method::Punctured => punctured_construction(&code)?,
        Method::Ternary => from_ternary_perfect(&code)?,
    };
    write(out, &write_tiling(&tiling))?;
    let opts = VerifyOptions {
        pair_budget: 0,
        ..VerifyOptions::default()
    };
    let r = verify_with(&tiling, &opts)?;
    let mut text = String::new();
    let _ = writeln!(text, "n: {}", tiling.dim());
    let _ = writeln!(text, "p: {}", tiling.period());
    let _ = writeln!(text, "count: {}", tiling.len());
    let _ = writeln!(text, "is_tiling: {}", r.is_tiling);
    text.push_str(&report::verification_summary(&r));
    text.push('\n');
    Ok((text, if r.is_tiling { 0 } else { NEGATIVE }))
}

fn verify_cmd(path: &Path, audit: bool, min_dist: bool, format: Format, cell_budget: u64) -> Outcome {
    let t = load_tiling(path)?;
    let opts = VerifyOptions {
        cell_budget,
        pair_budget: if min_dist { VerifyOptions::default().pair_budget } else { 0 },
        ..VerifyOptions::default()
    };
    let r = verify_with(&t, &opts)?;
    let audit_result = if audit && r.is_tiling {
        let normalized = if t.multiplicity(&vec![0; t.dim()]) > 0 {
            t.clone()
        } else {
            t.normalize(&t.codewords()[0])?
        };
        let nr = verify_with(&normalized, &VerifyOptions { pair_budget: 0, ..opts })?;
        Some(structural_audit(&normalized, &nr).map_err(|e| e.to_string()))
    } else if audit {
        Some(Err("not a tiling".to_string()))
    } else {
        None
    };
    let text = report::render_verification(
        &r,
        audit_result.as_ref().map(|a| a.as_ref().map_err(String::as_str)),
        min_dist,
        format.into(),
    );
    Ok((text, if r.is_tiling { 0 } else { NEGATIVE }))
}

fn locate(method: LocateMethod, code: &Path, point: &str) -> Outcome {
    let code = load_code(code)?;
    let a = parse_point(point)?;
    let (x, p) = match method {
        LocateMethod::Binary => (locate_tile_binary(&a, &code)?, 4),
        LocateMethod::Ternary => (locate_tile_ternary(&a, &code)?, 12),
    };
    let ok = covers(&x, &a)?;
    let mut text = String::new();
    let _ = writeln!(text, "point: {a}");
    let _ = writeln!(text, "codeword: {x}");
    let _ = writeln!(text, "codeword_mod_p: {}", x.rem_euclid(p));
    let _ = writeln!(text, "p: {p}");
    let _ = writeln!(text, "offset: {}", x.sub(&a));
    let _ = writeln!(text, "covers: {ok}");
    let _ = writeln!(text, "result: {a} is covered by {x}");
    Ok((text, if ok { 0 } else { NEGATIVE }))
}

fn exist(n: u64, format: Format) -> Outcome {
    if n > MAX_EXIST_N {
        return Err(Failure::new(BUDGET, format!("n must be at most {MAX_EXIST_N}")));
    }
    let adm = admissible_dimension(n);
    let cert = nonexistence_certificate(n);
    let witness = match adm {
        Admissibility::Admissible { base, t } => desk_witness(base, t)?,
        Admissibility::Inadmissible => None,
    };
    let summary = match (&cert.conclusion, &witness) {
        (Conclusion::NoTiling, _) => cert.summary(),
        (_, Some((method, r))) => format!(
            "tiling exists: {method} construction over Z_{}^{n}, {} cells verified",
            r.p, r.cells_total
        ),
        (_, None) => format!("admissible: {}", cert.summary()),
    };
    let text = match format {
        Format::Text => {
            let mut out = String::new();
            match adm {
                Admissibility::Admissible { base, t } => {
                    let _ = writeln!(out, "admissible: yes ({base}^{t} - 1)");
                }
                Admissibility::Inadmissible => {
                    let _ = writeln!(out, "admissible: no");
                }
            }
            out.push_str(&report::render_certificate(&cert, ReportFormat::Text));
            match &witness {
                Some((method, r)) => {
                    let _ = writeln!(out, "witness: {method}");
                    let _ = writeln!(out, "witness_codewords: {}", r.codewords);
                    let _ = writeln!(out, "witness_is_tiling: {}", r.is_tiling);
                }
                None => {
                    let _ = writeln!(out, "witness: none");
                }
            }
            let _ = writeln!(out, "result: {summary}");
            out
        }
        Format::Tree => {
            #[derive(serde::Serialize)]
            struct Doc<'a> {
                admissibility: Admissibility,
                certificate: &'a crosstile::tiling::NonexistenceCertificate,
                witness: Option<&'a crosstile::tiling::VerificationReport>,
                result: &'a str,
            }
            report::tree(&Doc {
                admissibility: adm,
                certificate: &cert,
                witness: witness.as_ref().map(|(_, r)| r),
                result: &summary,
            })
        }
    };
    let code = match cert.conclusion {
        Conclusion::NoTiling => NEGATIVE,
        Conclusion::Inconclusive => 0,
    };
    Ok((text, code))
}

/// Builds and verifies a witness tiling when its window is small enough.
fn desk_witness(
    base: u32,
    t: u32,
) -> Result<Option<(&'static str, crosstile::tiling::VerificationReport)>, Failure> {
    let (method, tiling) = match (base, t) {
        (2, 1..=4) => ("binary", from_binary_perfect(&binary_hamming(t)?)?),
        (3, 1..=2) => ("ternary", from_ternary_perfect(&ternary_hamming(t)?)?),
        _ => return Ok(None),
    };
    if tiling.window_cells()? > WITNESS_CELLS {
        return Ok(None);
    }
    let r = verify_with(
        &tiling,
        &VerifyOptions {
            pair_budget: 0,
            ..VerifyOptions::default()
        },
    )?;
    Ok(Some((method, r)))
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: u64,
    p: u64,
    max_solutions: Option<usize>,
    node_budget: u64,
    no_symmetry_breaking: bool,
    out_dir: Option<&Path>,
    time: bool,
    format: Format,
) -> Outcome {
    let cfg = SearchConfig {
        n: n as usize,
        p,
        max_solutions: max_solutions.unwrap_or(usize::MAX),
        symmetry_breaking: !no_symmetry_breaking,
        node_budget,
    };
    let out = search_tilings(&cfg)?;
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::new(USAGE, format!("cannot create {}: {e}", dir.display())))?;
        for (i, s) in out.solutions.iter().enumerate() {
            write(&dir.join(format!("solution-{:04}.tiling", i + 1)), &write_tiling(s))?;
        }
    }
    let mut text = report::render_search(cfg.n, p, &out, time, format.into());
    let found = out.solutions.len();
    if let Format::Text = format {
        let _ = match out.status {
            SearchStatus::Infeasible => writeln!(text, "result: no tiling, precheck failed"),
            SearchStatus::BudgetExhausted => writeln!(
                text,
                "result: inconclusive, node budget exhausted after {found} solutions"
            ),
            _ if found == 0 => writeln!(text, "result: no tiling of Z_{p}^{n}"),
            _ => writeln!(text, "result: {found} solutions"),
        };
    }
    let code = match out.status {
        _ if found > 0 => 0,
        SearchStatus::BudgetExhausted => BUDGET,
        _ => NEGATIVE,
    };
    Ok((text, code))
}

fn export_svg(path: &Path, out: &Path) -> Outcome {
    let t = load_tiling(path)?;
    if t.dim() != 2 {
        return Err(Failure::new(
            PRECONDITION,
            format!("SVG export needs n = 2, got {}", t.dim()),
        ));
    }
    let r = verify_with(&t, &VerifyOptions::default())?;
    if !r.is_tiling {
        return Err(Failure::new(
            PRECONDITION,
            format!("not a tiling: {}", report::verification_summary(&r)),
        ));
    }
    let svg = render_svg(&t, &r).map_err(|e| Failure::new(PRECONDITION, e.to_string()))?;
    write(out, &svg)?;
    Ok((
        format!(
            "cells: {}\ntiles: {}\nresult: wrote {}\n",
            r.cells_total,
            r.codewords,
            out.display()
        ),
        0,
    ))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::GenCode { base, t, out } => gen_code(base, t, &out),
        Command::BuildTiling { method, code, out } => build_tiling(method, &code, &out),
        Command::Verify {
            tiling,
            audit,
            min_dist,
            format,
            cell_budget,
        } => verify_cmd(&tiling, audit, min_dist, format, cell_budget),
        Command::Locate {
            tiling_method,
            code,
            point,
        } => locate(tiling_method, &code, &point),
        Command::Exist { n, format } => exist(n, format),
        Command::Search {
            n,
            p,
            max_solutions,
            node_budget,
            no_symmetry_breaking,
            out_dir,
            time,
            format,
        } => search(
            n,
            p,
            max_solutions,
            node_budget,
            no_symmetry_breaking,
            out_dir.as_deref(),
            time,
            format,
        ),
        Command::ExportSvg { tiling, out } => export_svg(&tiling, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
