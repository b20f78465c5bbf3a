//! Command-line front end: visibility checks, region descriptions,
//! enclosures, tightened cuts, certificates and the polar laboratory,
//! over JSON instance/point-set files.
//!
//! Exit codes: 0 success; 1 mathematically negative result (empty
//! enclosure, no separating cut, not nonnegative, failed lab check);
//! 2 input error; 3 numerical failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use viscut::certify::{sos_decompose, verify_certificate, CertifyError, Parity};
use viscut::cuts::{compare_cuts, gradient_cut, CutVerdict};
use viscut::formats::{
    parse_instance, parse_point_set, to_csv, to_json, CertificateReport, CheckReport, CutFile,
    CutReport, EnclosureReport, LabFailure, LabRunReport, PointSetFile, RegionReport,
};
use viscut::multipoly::Point;
use viscut::polarlab::{random_point_set, run_check, LabCheck, PolarLabError};
use viscut::tighten::{prune_enclosure, EnclosureStatus, DEFAULT_MAX_DEPTH, DEFAULT_MIN_WIDTH};
use viscut::unipoly::UniPoly;
use viscut::visibility::{in_relaxation, is_visible, region_description, VisibilityError};

#[derive(Parser)]
#[command(
    name = "viscut",
    about = "Tightened cutting planes via visible points",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct IoArgs {
    /// Input file (JSON).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output destination: a path, or "stdout".
    #[arg(long, default_value = "stdout")]
    output: String,
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Suppress diagnostic messages on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct PruneArgs {
    /// Bisection depth (1..=40).
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH, value_parser = clap::value_parser!(usize))]
    depth: usize,
    /// Stop width relative to the initial box.
    #[arg(long, default_value_t = DEFAULT_MIN_WIDTH)]
    min_width: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a surface point is visible from the anchor.
    Check {
        #[command(flatten)]
        io: IoArgs,
        /// Point to test, comma-separated coordinates.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        point: Vec<f64>,
        /// Override the on-surface tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Describe the visible region (half-space or gradient relaxation).
    Region {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Enclose the visible region by branch and prune.
    Tighten {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        prune: PruneArgs,
    },
    /// Generate a gradient cut, optionally over a tightened enclosure.
    Cut {
        #[command(flatten)]
        io: IoArgs,
        /// Also prune an enclosure and cut over it.
        #[arg(long)]
        tighten: bool,
        #[command(flatten)]
        prune: PruneArgs,
        /// Sample count for the dominance comparison.
        #[arg(long, default_value_t = 4096)]
        trials: usize,
    },
    /// Certify nonnegativity of a polynomial on [0, 1].
    Certify {
        #[command(flatten)]
        io: IoArgs,
        /// Coefficients, ascending powers, comma-separated.  May also be
        /// given as {"coeffs": [...]} via --input.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<f64>>,
        /// Acceptable certificate residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run structural checks on finite point sets.
    Lab {
        #[command(flatten)]
        io: IoArgs,
        /// Which check: visible, shadow, smallest-inter, smallest-closed.
        #[arg(long)]
        check: String,
        /// Number of random point sets (0 = use --input).
        #[arg(long, default_value_t = 0)]
        trials: usize,
        /// Seed for the random point sets.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Everything a command can end with, mapped onto exit codes.
enum CmdError {
    Negative(String),
    Input(String),
    Numerical(String),
}

impl CmdError {
    fn code(&self) -> u8 {
        match self {
            CmdError::Negative(_) => 1,
            CmdError::Input(_) => 2,
            CmdError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Negative(m) | CmdError::Input(m) | CmdError::Numerical(m) => m,
        }
    }
}

impl From<viscut::formats::FormatError> for CmdError {
    fn from(err: viscut::formats::FormatError) -> Self {
        CmdError::Input(err.to_string())
    }
}

impl From<VisibilityError> for CmdError {
    fn from(err: VisibilityError) -> Self {
        CmdError::Input(err.to_string())
    }
}

impl From<PolarLabError> for CmdError {
    fn from(err: PolarLabError) -> Self {
        match err {
            PolarLabError::InvalidInput(m) => CmdError::Input(m),
            PolarLabError::Numerical(m) => CmdError::Numerical(m),
        }
    }
}

fn read_input(io: &IoArgs) -> Result<String, CmdError> {
    let path = io
        .input
        .as_ref()
        .ok_or_else(|| CmdError::Input("--input is required".to_string()))?;
    fs::read_to_string(path)
        .map_err(|e| CmdError::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit<T: serde::Serialize>(io: &IoArgs, report: &T) -> Result<(), CmdError> {
    let text = match io.format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => to_csv(report),
    };
    if io.output == "stdout" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(&io.output, text)
            .map_err(|e| CmdError::Input(format!("cannot write {}: {e}", io.output)))
    }
}

fn chatter(io: &IoArgs, msg: &str) {
    if !io.quiet {
        eprintln!("{msg}");
    }
}

fn cmd_check(io: &IoArgs, point: &[f64], tol: Option<f64>) -> Result<(), CmdError> {
    let mut inst = parse_instance(&read_input(io)?)?;
    if let Some(t) = tol {
        if t <= 0.0 {
            return Err(CmdError::Input("--tol must be positive".to_string()));
        }
        inst = inst.with_surface_tol(t);
    }
    if point.len() != inst.domain().dim() {
        return Err(CmdError::Input(format!(
            "--point has {} coordinates, instance has {}",
            point.len(),
            inst.domain().dim()
        )));
    }
    let x = Point::new(point.to_vec());
    let report = CheckReport {
        visible: is_visible(&inst, &x)?,
        relaxed: in_relaxation(&inst, &x)?,
        g_value: inst.g().eval(point),
        p_lambda_coeffs: inst.segment_poly(&x).coeffs().to_vec(),
    };
    chatter(
        io,
        &format!("visible: {}, relaxed: {}", report.visible, report.relaxed),
    );
    emit(io, &report)
}

fn cmd_region(io: &IoArgs) -> Result<(), CmdError> {
    let inst = parse_instance(&read_input(io)?)?;
    emit(io, &RegionReport::from_region(&region_description(&inst)))
}

fn check_prune_args(prune: &PruneArgs) -> Result<(), CmdError> {
    if !(1..=40).contains(&prune.depth) {
        return Err(CmdError::Input(format!(
            "--depth {} out of range 1..=40",
            prune.depth
        )));
    }
    if !(prune.min_width > 0.0) {
        return Err(CmdError::Input("--min-width must be positive".to_string()));
    }
    Ok(())
}

fn cmd_tighten(io: &IoArgs, prune: &PruneArgs) -> Result<(), CmdError> {
    check_prune_args(prune)?;
    let inst = parse_instance(&read_input(io)?)?;
    let enc = prune_enclosure(&region_description(&inst), prune.depth, prune.min_width);
    let empty = enc.status == EnclosureStatus::ProvedEmpty;
    emit(io, &EnclosureReport::from_enclosure(&enc))?;
    if empty {
        Err(CmdError::Negative(
            "no visible points: the enclosure is empty".to_string(),
        ))
    } else {
        Ok(())
    }
}

fn cmd_cut(io: &IoArgs, tighten: bool, prune: &PruneArgs, trials: usize) -> Result<(), CmdError> {
    check_prune_args(prune)?;
    let inst = parse_instance(&read_input(io)?)?;
    let base_box = inst.domain().bounds().clone();
    let cut_over = |b| {
        gradient_cut(inst.g(), b, inst.xbar())
            .map_err(|e| CmdError::Input(e.to_string()))?
            .ok_or_else(|| CmdError::Negative("no separating underestimator".to_string()))
    };
    let base = cut_over(&base_box)?;
    if !tighten {
        return emit(
            io,
            &CutReport {
                cut: CutFile::from_cut(&base),
                untightened_cut: None,
                dominance: None,
                enclosure: None,
            },
        );
    }
    let enc = prune_enclosure(&region_description(&inst), prune.depth, prune.min_width);
    let Some(tight_box) = enc.bounds.clone() else {
        emit(
            io,
            &CutReport {
                cut: CutFile::from_cut(&base),
                untightened_cut: None,
                dominance: None,
                enclosure: Some(EnclosureReport::from_enclosure(&enc)),
            },
        )?;
        return Err(CmdError::Negative(
            "no visible points: the enclosure is empty".to_string(),
        ));
    };
    let tightened = cut_over(&tight_box)?;
    let verdict = match compare_cuts(&tightened, &base, &base_box, trials.max(64)) {
        CutVerdict::C1Dominates => "tightened-dominates",
        CutVerdict::C2Dominates => "untightened-dominates",
        CutVerdict::Incomparable => "incomparable",
    };
    chatter(io, &format!("dominance: {verdict}"));
    emit(
        io,
        &CutReport {
            cut: CutFile::from_cut(&tightened),
            untightened_cut: Some(CutFile::from_cut(&base)),
            dominance: Some(verdict.to_string()),
            enclosure: Some(EnclosureReport::from_enclosure(&enc)),
        },
    )
}

fn cmd_certify(io: &IoArgs, coeffs: &Option<Vec<f64>>, tol: f64) -> Result<(), CmdError> {
    let coeffs: Vec<f64> = match coeffs {
        Some(c) => c.clone(),
        None => {
            #[derive(serde::Deserialize)]
            struct CoeffFile {
                coeffs: Vec<f64>,
            }
            let parsed: CoeffFile = serde_json::from_str(&read_input(io)?)
                .map_err(|e| CmdError::Input(format!("parse error: {e}")))?;
            parsed.coeffs
        }
    };
    let p = UniPoly::new(coeffs);
    let cert = match sos_decompose(&p) {
        Ok(cert) => cert,
        Err(CertifyError::NotNonnegative) => {
            return Err(CmdError::Negative("not nonnegative on [0, 1]".to_string()))
        }
        Err(CertifyError::ZeroPolynomial) => {
            return Err(CmdError::Input(
                "the zero polynomial needs no certificate".to_string(),
            ))
        }
        Err(e) => return Err(CmdError::Numerical(e.to_string())),
    };
    let residual = verify_certificate(&p, &cert);
    if !(residual <= tol) {
        return Err(CmdError::Numerical(format!(
            "certificate residual {residual:e} exceeds --tol {tol:e}"
        )));
    }
    emit(
        io,
        &CertificateReport {
            parity: match cert.parity {
                Parity::Even => "even".to_string(),
                Parity::Odd => "odd".to_string(),
            },
            d: cert.d,
            s1: cert.s1.coeffs().to_vec(),
            s2: cert.s2.coeffs().to_vec(),
            residual,
        },
    )
}

fn lab_check_from_str(s: &str) -> Result<LabCheck, CmdError> {
    match s {
        "visible" => Ok(LabCheck::Visible),
        "shadow" => Ok(LabCheck::Shadow),
        "smallest-inter" => Ok(LabCheck::SmallestInter),
        "smallest-closed" => Ok(LabCheck::SmallestClosed),
        other => Err(CmdError::Input(format!(
            "unknown check {other:?} (expected visible, shadow, smallest-inter or smallest-closed)"
        ))),
    }
}

fn cmd_lab(io: &IoArgs, check: &str, trials: usize, seed: u64) -> Result<(), CmdError> {
    let check = lab_check_from_str(check)?;
    let sets = if trials == 0 {
        vec![parse_point_set(&read_input(io)?)?]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..trials)
            .map(|_| {
                let dim = rng.gen_range(2..=4);
                let len = rng.gen_range(3..=8);
                random_point_set(&mut rng, dim, len)
            })
            .collect()
    };
    let mut passes = 0;
    let mut failures = Vec::new();
    for (k, ps) in sets.iter().enumerate() {
        let result = run_check(ps, check)?;
        if result.pass {
            passes += 1;
        } else {
            let dump = PointSetFile::from_point_set(ps);
            failures.push(LabFailure {
                trial: k,
                xlp: dump.xlp,
                points: dump.points,
                note: result.note,
            });
        }
    }
    let report = LabRunReport {
        check: check.name().to_string(),
        trials: sets.len(),
        passes,
        failures,
    };
    let all_pass = report.passes == report.trials;
    chatter(io, &format!("{} / {} passed", report.passes, report.trials));
    emit(io, &report)?;
    if all_pass {
        Ok(())
    } else {
        Err(CmdError::Negative(format!(
            "{} of {} trials failed",
            report.trials - report.passes,
            report.trials
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (io, result) = match &cli.command {
        Command::Check { io, point, tol } => (io, cmd_check(io, point, *tol)),
        Command::Region { io } => (io, cmd_region(io)),
        Command::Tighten { io, prune } => (io, cmd_tighten(io, prune)),
        Command::Cut {
            io,
            tighten,
            prune,
            trials,
        } => (io, cmd_cut(io, *tighten, prune, *trials)),
        Command::Certify { io, coeffs, tol } => (io, cmd_certify(io, coeffs, *tol)),
        Command::Lab {
            io,
            check,
            trials,
            seed,
        } => (io, cmd_lab(io, check, *trials, *seed)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if !io.quiet || err.code() == 2 {
                eprintln!("viscut: {}", err.message());
            }
            ExitCode::from(err.code())
        }
    }
}
