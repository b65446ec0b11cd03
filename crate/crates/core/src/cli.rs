//! Command-line driver: identity suites, decompositions and the S⁶ checks.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a
//! computation is rejected, 2 for usage, input and I/O errors.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::algebra::{decompose_anti_endo, decompose_three_form, decompose_two_form, Endo, Form};
use crate::error::Error;
use crate::json::{anti_endo_parts_to_json, endo_from_json, three_form_parts_to_json, two_form_parts_to_json, AnyForm};
use crate::report::VerificationReport;
use crate::s6::{
    ambient_basis, verify_cl_identities, verify_gray_with, verify_linearized, verify_linearized_basis, verify_spectral,
    AmbientVector, Chart, Defect, FiniteDiff, SphereDeformation,
};
use crate::scalar::{Mode, Rational, Scalar};
use crate::suite::{algebra_suite, DEFAULT_TRIALS};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "graykit", version)]
#[command(about = "SU(3)-structure algebra, deformations and the nearly Kähler six-sphere")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the randomised identity suite of the pointwise algebra and the
    /// deformation parametrisation.
    VerifyAlgebra(AlgebraArgs),
    /// Decompose a 2-form, 3-form or J-anti-commuting endomorphism read as
    /// JSON from stdin.
    Decompose(DecomposeArgs),
    /// Finite-difference checks on the round six-sphere.
    VerifyS6(S6Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraSuite {
    Algebra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    #[arg(long, value_enum, default_value = "algebra")]
    pub suite: AlgebraSuite,
    /// Random instances per identity.
    #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = parse_trials)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecomposeKind {
    #[value(name = "2form")]
    TwoForm,
    #[value(name = "3form")]
    ThreeForm,
    Endo,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(value_enum)]
    pub kind: DecomposeKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum S6Suite {
    Gray,
    Spectral,
    Linearized,
    Cl,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    Projection,
    Geodesic,
}

impl From<ChartArg> for Chart {
    fn from(c: ChartArg) -> Chart {
        match c {
            ChartArg::Projection => Chart::Projection,
            ChartArg::Geodesic => Chart::Geodesic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DefectArg {
    None,
    /// Evaluate ψ⁻ with the wrong sign in the Gray suite.
    FlipPsiMinus,
    /// Double ψ̇⁺ in the linearised suite.
    ScalePsiPlusDot,
}

#[derive(Debug, Args)]
pub struct S6Args {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: S6Suite,
    /// Seeded sample points on the sphere.
    #[arg(long, default_value_t = 50, value_parser = parse_samples)]
    pub samples: usize,
    /// Finite-difference step, strictly between 1e-7 and 1e-1.
    #[arg(long, default_value_t = FiniteDiff::DEFAULT_STEP, value_parser = parse_step)]
    pub h: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Only the linearised check of one deformation: `a=e7`, `e3` or
    /// seven comma-separated components.
    #[arg(long, value_parser = parse_deform)]
    pub deform: Option<AmbientVector>,
    /// Chart used for finite differences; the Gray suite additionally runs
    /// in the geodesic chart, where its truncation error (and hence the
    /// convergence order) is observable.
    #[arg(long, value_enum, default_value = "projection")]
    pub chart: ChartArg,
    /// Richardson-extrapolate every derivative (expected order 4).
    #[arg(long)]
    pub richardson: bool,
    #[arg(long, value_enum, default_value = "none")]
    pub defect: DefectArg,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_trials(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("trials must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_samples(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("samples must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_step(s: &str) -> Result<f64, String> {
    let h: f64 = s.parse().map_err(|e| format!("{e}"))?;
    FiniteDiff::new(h).map(|fd| fd.h()).map_err(|e| e.to_string())
}

pub fn parse_deform(s: &str) -> Result<AmbientVector, String> {
    let body = s.trim().strip_prefix("a=").unwrap_or(s.trim());
    if let Some(k) = body.strip_prefix('e') {
        return match k.parse::<usize>() {
            Ok(k @ 1..=7) => Ok(ambient_basis(k - 1)),
            _ => Err(format!("`{body}`: basis direction must be e1..e7")),
        };
    }
    let parts: Vec<f64> = body
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    if parts.len() != 7 || parts.iter().any(|x| !x.is_finite()) {
        return Err(format!("`{body}`: expected seven finite components"));
    }
    Ok(AmbientVector::from_column_slice(&parts))
}

/// Runs a parsed command; the return value is the process exit code.
pub fn run(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let outcome = match cli.command {
        Command::VerifyAlgebra(args) => verify_algebra(&args, stdout, stderr),
        Command::Decompose(args) => decompose(&args, stdin, stdout),
        Command::VerifyS6(args) => verify_s6(&args, stdout, stderr),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(stderr, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::DegreeMismatch { .. }
            | Error::MixedDegree { .. }
            | Error::ModeMismatch { .. }
            | Error::StepOutOfRange(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure { code: EXIT_USAGE, message: e.to_string() }
}

fn emit(
    report: &VerificationReport,
    out: Option<&PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8, Failure> {
    let json = report.to_json();
    match out {
        Some(path) => std::fs::write(path, &json)
            .map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })?,
        None => stdout.write_all(json.as_bytes()).map_err(io_failure)?,
    }
    stderr.write_all(report.to_table().as_bytes()).map_err(io_failure)?;
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn verify_algebra(args: &AlgebraArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8, Failure> {
    let report = algebra_suite(args.mode.into(), args.trials, args.seed)?;
    emit(&report, args.out.as_ref(), stdout, stderr)
}

fn decompose(args: &DecomposeArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<u8, Failure> {
    let mut text = String::new();
    stdin.read_to_string(&mut text).map_err(io_failure)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let out = decompose_value(args.kind, &v)?;
    let mut s = out.to_string();
    s.push('\n');
    stdout.write_all(s.as_bytes()).map_err(io_failure)?;
    Ok(EXIT_PASS)
}

/// Decomposition of a JSON form or endomorphism, as emitted by `decompose`.
pub fn decompose_value(kind: DecomposeKind, v: &Value) -> crate::Result<Value> {
    Ok(match kind {
        DecomposeKind::TwoForm => match AnyForm::from_value(v)? {
            AnyForm::Exact(f) => two_form_json::<Rational>(&f)?,
            AnyForm::Float(f) => two_form_json::<f64>(&f)?,
        },
        DecomposeKind::ThreeForm => match AnyForm::from_value(v)? {
            AnyForm::Exact(f) => three_form_json::<Rational>(&f)?,
            AnyForm::Float(f) => three_form_json::<f64>(&f)?,
        },
        DecomposeKind::Endo => {
            let mode: Mode = v
                .get("mode")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("endomorphism needs a string field `mode`".into()))?
                .parse()
                .map_err(Error::Parse)?;
            let m = v.get("endo").ok_or_else(|| Error::Parse("missing field `endo` (36 entries, row-major)".into()))?;
            match mode {
                Mode::Exact => anti_endo_json(&endo_from_json::<Rational>(m)?)?,
                Mode::Float => anti_endo_json(&endo_from_json::<f64>(m)?)?,
            }
        }
    })
}

fn two_form_json<T: Scalar>(f: &Form<T>) -> crate::Result<Value> {
    f.require_degree(2)?;
    let parts = decompose_two_form(f)?;
    Ok(two_form_parts_to_json(&parts, parts.recompose().max_abs_diff(f)))
}

fn three_form_json<T: Scalar>(f: &Form<T>) -> crate::Result<Value> {
    f.require_degree(3)?;
    let parts = decompose_three_form(f)?;
    Ok(three_form_parts_to_json(&parts, parts.recompose().max_abs_diff(f)))
}

fn anti_endo_json<T: Scalar>(m: &Endo<T>) -> crate::Result<Value> {
    let (s, xi) = decompose_anti_endo(m)?;
    let rebuilt = &s + &crate::algebra::psi_plus_endo(&xi);
    Ok(anti_endo_parts_to_json(&s, &xi, rebuilt.max_abs_diff(m)))
}

/// Settings of one `verify-s6` run.
#[derive(Debug, Clone)]
pub struct S6Config {
    pub suite: S6Suite,
    pub samples: usize,
    pub fd: FiniteDiff,
    pub seed: u64,
    pub deform: Option<AmbientVector>,
    pub defect: DefectArg,
}

impl S6Config {
    pub fn new(suite: S6Suite, samples: usize, fd: FiniteDiff, seed: u64) -> Self {
        S6Config { suite, samples, fd, seed, deform: None, defect: DefectArg::None }
    }
}

fn gray_report(cfg: &S6Config) -> crate::Result<VerificationReport> {
    let defect = match cfg.defect {
        DefectArg::FlipPsiMinus => Defect::FlipPsiMinus,
        _ => Defect::None,
    };
    let primary = verify_gray_with(cfg.samples, cfg.fd, cfg.seed, defect)?;
    if cfg.fd.chart() == Chart::Geodesic {
        return Ok(primary);
    }
    let mut geodesic = verify_gray_with(cfg.samples, cfg.fd.with_chart(Chart::Geodesic), cfg.seed, defect)?;
    for c in &mut geodesic.checks {
        c.name = c.name.replacen("gray.", "gray.geodesic.", 1);
    }
    Ok(VerificationReport::merge("gray", vec![primary, geodesic]))
}

fn linearized_report(cfg: &S6Config) -> crate::Result<VerificationReport> {
    let scale = if cfg.defect == DefectArg::ScalePsiPlusDot { 2.0 } else { 1.0 };
    match cfg.deform {
        Some(a) => {
            let def = SphereDeformation::new(a).with_psi_plus_dot_scale(scale);
            verify_linearized(&def, "a", cfg.samples, cfg.fd, cfg.seed)
        }
        None if scale != 1.0 => {
            let mut reports = Vec::new();
            for k in 0..7 {
                let def = SphereDeformation::new(ambient_basis(k)).with_psi_plus_dot_scale(scale);
                reports.push(verify_linearized(&def, &format!("e{}", k + 1), cfg.samples, cfg.fd, cfg.seed)?);
            }
            Ok(VerificationReport::merge("linearized", reports))
        }
        None => verify_linearized_basis(cfg.samples, cfg.fd, cfg.seed),
    }
}

/// The report `verify-s6` prints for `cfg`.
pub fn s6_report(cfg: &S6Config) -> crate::Result<VerificationReport> {
    if cfg.deform.is_some() {
        return linearized_report(cfg);
    }
    Ok(match cfg.suite {
        S6Suite::Gray => gray_report(cfg)?,
        S6Suite::Spectral => verify_spectral(cfg.samples, cfg.fd, cfg.seed)?,
        S6Suite::Linearized => linearized_report(cfg)?,
        S6Suite::Cl => verify_cl_identities(cfg.samples, cfg.fd, cfg.seed)?,
        S6Suite::All => VerificationReport::merge(
            "s6",
            vec![
                gray_report(cfg)?,
                verify_spectral(cfg.samples, cfg.fd, cfg.seed)?,
                linearized_report(cfg)?,
                verify_cl_identities(cfg.samples, cfg.fd, cfg.seed)?,
            ],
        ),
    })
}

fn verify_s6(args: &S6Args, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8, Failure> {
    let fd = FiniteDiff::new(args.h)?.with_chart(args.chart.into()).with_richardson(args.richardson);
    let cfg = S6Config {
        suite: args.suite,
        samples: args.samples,
        fd,
        seed: args.seed,
        deform: args.deform,
        defect: args.defect,
    };
    let report = s6_report(&cfg)?;
    emit(&report, args.out.as_ref(), stdout, stderr)
}
