//! Batch front end: parses specs, runs one mode, and emits a JSON report and
//! optional CSV rows. A breached invariant yields exit code 1, an input or
//! precondition error exit code 2.

mod suite;

pub use suite::{exhaustive_suite, fuzz_suite, AlphaSummary, FuzzSummary, InstanceRow, SuiteSummary};

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dist::{Dist, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::heyde::{
    check_unimodular_on_h_with_tol, decompose, second_proof_reduction_with_tol,
    symmetry_fourier_with_tol, SymmetryContext, SymmetryInstance,
};
use crate::morphism::{enumerate_automorphisms, GroupMap, DEFAULT_MAX_GROUP_ORDER};
use crate::rational::{format_q, parse_q};
use crate::rg::{
    make_remark_family, rg_decompose, rg_positive_definite_check, rg_symmetry_certificate,
    DensityGrid, PositivityReport, RemarkKappa, SymmetryCertificate,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Check,
    Decompose,
    Fuzz,
    Exhaustive,
    Counterexample,
    Transcript,
}

#[derive(Clone, Debug, Parser, Serialize)]
#[command(name = "heyde", version, about = "Conditional-symmetry checks on finite Abelian groups")]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Mode::Check)]
    pub mode: Mode,
    /// Group spec such as `Z3xZ9`.
    #[arg(long)]
    pub group: Option<String>,
    /// Scalar `c` or JSON integer matrix.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// JSON distribution file `{"x": "p/q"}`.
    #[arg(long)]
    pub mu1: Option<PathBuf>,
    #[arg(long)]
    pub mu2: Option<PathBuf>,
    #[arg(long, default_value_t = 6)]
    pub grid_denominator: u32,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV detail path for suite modes.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Admit groups with elements of order 2; theorem checks are skipped.
    #[arg(long)]
    pub allow_even: bool,
    /// Instances drawn in fuzz mode.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value = "2")]
    pub sigma1: String,
    #[arg(long, default_value = "1")]
    pub sigma1p: String,
    /// `boundary` for √(σ'₁/σ₁), or a rational.
    #[arg(long, default_value = "boundary")]
    pub kappa: String,
    #[arg(long, default_value = "-2", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, env = "HEYDE_MAX_GROUP_ORDER", default_value_t = DEFAULT_MAX_GROUP_ORDER)]
    pub max_group_order: usize,
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        RunConfig {
            mode,
            group: None,
            alpha: None,
            mu1: None,
            mu2: None,
            grid_denominator: 6,
            tol: DEFAULT_TOL,
            seed: 0,
            out: None,
            csv: None,
            allow_even: false,
            count: 1000,
            sigma1: "2".into(),
            sigma1p: "1".into(),
            kappa: "boundary".into(),
            a: "-2".into(),
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_denominator < 1 {
            return Err(Error::Config("grid denominator must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        let need = |present: bool, flag: &str| {
            if present {
                Ok(())
            } else {
                Err(Error::Config(format!(
                    "--{flag} is required in {:?} mode",
                    self.mode
                )))
            }
        };
        match self.mode {
            Mode::Check | Mode::Decompose | Mode::Transcript => {
                need(self.group.is_some(), "group")?;
                need(self.alpha.is_some(), "alpha")?;
                need(self.mu1.is_some(), "mu1")?;
                need(self.mu2.is_some(), "mu2")
            }
            Mode::Fuzz | Mode::Exhaustive => need(self.group.is_some(), "group"),
            Mode::Counterexample => Ok(()),
        }
    }

    fn parse_group(&self) -> Result<FinGroup> {
        self.group.as_deref().unwrap_or_default().parse()
    }

    fn parse_alpha(&self, group: &FinGroup) -> Result<Option<GroupMap>> {
        self.alpha
            .as_deref()
            .map(|s| GroupMap::parse(group, s))
            .transpose()
    }

    fn load_instance(&self) -> Result<SymmetryInstance> {
        let group = self.parse_group()?;
        let alpha = self.parse_alpha(&group)?.expect("validated");
        let read = |p: &Option<PathBuf>| -> Result<Dist> {
            let path = p.as_deref().expect("validated");
            Dist::from_json_str(&group, &fs::read_to_string(path)?)
        };
        SymmetryInstance::new(alpha, read(&self.mu1)?, read(&self.mu2)?)
    }

    /// Automorphisms for the suite modes: the given `--alpha`, or all of them.
    fn suite_alphas(&self, group: &FinGroup) -> Result<Vec<GroupMap>> {
        if group.order() > self.max_group_order {
            return Err(Error::BoundExceeded(format!(
                "|G| = {} exceeds the enumeration cap {}",
                group.order(),
                self.max_group_order
            )));
        }
        if group.has_order_two() && !self.allow_even {
            return Err(Error::Precondition(format!(
                "{} has elements of order 2; pass --allow-even to run outside the theorem's hypotheses",
                group.spec()
            )));
        }
        match self.parse_alpha(group)? {
            Some(a) if !a.is_automorphism() => Err(Error::NotAutomorphism(a.to_string())),
            Some(a) => Ok(vec![a]),
            None => enumerate_automorphisms(group, self.max_group_order),
        }
    }
}

/// Result of one run.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub csv: Option<String>,
    pub breach: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.breach)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypotheses {
    pub odd_order: bool,
    pub nonvanishing: bool,
    pub within_theorem: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub group: String,
    pub alpha: String,
    pub symmetric_direct: bool,
    pub symmetric_fourier: bool,
    pub fourier_residual: f64,
    pub agree: bool,
    pub hypotheses: Hypotheses,
    pub unimodular_on_h: Option<bool>,
    pub decomposition: Option<Value>,
    pub decomposition_error: Option<String>,
}

impl CheckReport {
    pub fn breach(&self) -> bool {
        !self.agree
            || (self.hypotheses.within_theorem
                && self.symmetric_direct
                && (self.decomposition.is_none() || self.unimodular_on_h == Some(false)))
    }
}

pub fn cmd_check(config: &RunConfig) -> Result<CheckReport> {
    config.validate()?;
    check_instance(&config.load_instance()?, config.tol)
}

pub fn check_instance(inst: &SymmetryInstance, tol: f64) -> Result<CheckReport> {
    let ctx = SymmetryContext::new(inst.alpha());
    let symmetric_direct = ctx.direct(inst.mu1(), inst.mu2());
    let symmetric_fourier = symmetry_fourier_with_tol(inst, tol);
    let fourier_residual = ctx.fourier_residual(&inst.mu1().fourier(), &inst.mu2().fourier());
    let odd_order = !inst.group().has_order_two();
    let nonvanishing =
        inst.mu1().is_nonvanishing_with_tol(tol) && inst.mu2().is_nonvanishing_with_tol(tol);
    let (decomposition, decomposition_error) = if symmetric_direct {
        match decompose(inst) {
            Ok(d) => (Some(d.to_json()), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let unimodular_on_h = (symmetric_direct && nonvanishing)
        .then(|| check_unimodular_on_h_with_tol(inst, tol));
    Ok(CheckReport {
        group: inst.group().spec(),
        alpha: inst.alpha().to_string(),
        symmetric_direct,
        symmetric_fourier,
        fourier_residual,
        agree: symmetric_direct == symmetric_fourier,
        hypotheses: Hypotheses {
            odd_order,
            nonvanishing,
            within_theorem: odd_order && nonvanishing,
        },
        unimodular_on_h,
        decomposition,
        decomposition_error,
    })
}

pub fn cmd_decompose(config: &RunConfig) -> Result<Value> {
    config.validate()?;
    let inst = config.load_instance()?;
    let d = decompose(&inst)?;
    Ok(json!({
        "group": inst.group().spec(),
        "alpha": inst.alpha().to_string(),
        "decomposition": d.to_json(),
    }))
}

pub fn cmd_transcript(config: &RunConfig) -> Result<crate::heyde::TranscriptReport> {
    config.validate()?;
    second_proof_reduction_with_tol(&config.load_instance()?, config.tol)
}

pub fn cmd_exhaustive(config: &RunConfig) -> Result<(SuiteSummary, Vec<InstanceRow>)> {
    config.validate()?;
    let group = config.parse_group()?;
    let alphas = config.suite_alphas(&group)?;
    exhaustive_suite(&group, &alphas, config.grid_denominator, config.tol)
}

pub fn cmd_fuzz(config: &RunConfig) -> Result<FuzzSummary> {
    config.validate()?;
    let group = config.parse_group()?;
    let alphas = config.suite_alphas(&group)?;
    fuzz_suite(
        &group,
        &alphas,
        config.grid_denominator,
        config.count,
        config.seed,
        config.tol,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub group: String,
    pub sigma1: String,
    pub sigma1p: String,
    pub kappa1: String,
    pub a: String,
    pub sigma2: String,
    pub sigma2p: String,
    pub symmetric: bool,
    pub decomposition: Value,
    pub positivity: [PositivityReport; 2],
    pub confirmed: bool,
    pub certificate: SymmetryCertificate,
}

pub fn parse_kappa(s: &str) -> Result<RemarkKappa> {
    if s.trim().eq_ignore_ascii_case("boundary") {
        Ok(RemarkKappa::Boundary)
    } else {
        parse_q(s).map(RemarkKappa::Rational)
    }
}

pub fn cmd_counterexample(config: &RunConfig) -> Result<CounterexampleReport> {
    config.validate()?;
    let sigma1 = parse_q(&config.sigma1)?;
    let sigma1p = parse_q(&config.sigma1p)?;
    let kappa = parse_kappa(&config.kappa)?;
    let a = parse_q(&config.a)?;
    let inst = make_remark_family(sigma1, sigma1p, kappa, a)?;
    let certificate = rg_symmetry_certificate(&inst);
    let decomposition = rg_decompose(&inst)?;
    let grid = DensityGrid::default();
    let positivity = [
        rg_positive_definite_check(&inst.f1, &grid)?,
        rg_positive_definite_check(&inst.f2, &grid)?,
    ];
    let f2 = inst.f2.terms();
    let confirmed = certificate.symmetric
        && decomposition.is_irreducible()
        && positivity.iter().all(|p| p.passed);
    Ok(CounterexampleReport {
        group: inst.group().spec(),
        sigma1: format_q(&sigma1),
        sigma1p: format_q(&sigma1p),
        kappa1: kappa.describe(),
        a: format_q(&a),
        sigma2: format_q(&-f2[0].quad),
        sigma2p: format_q(&-f2[1].quad),
        symmetric: certificate.symmetric,
        decomposition: decomposition.to_json(),
        positivity,
        confirmed,
        certificate,
    })
}

fn rows_to_csv(rows: &[InstanceRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Runs the configured mode without touching the filesystem beyond inputs.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    match config.mode {
        Mode::Check => {
            let r = cmd_check(config)?;
            Ok(Outcome {
                breach: r.breach(),
                report: to_value(&r),
                csv: None,
            })
        }
        Mode::Decompose => Ok(Outcome {
            report: cmd_decompose(config)?,
            csv: None,
            breach: false,
        }),
        Mode::Transcript => {
            let r = cmd_transcript(config)?;
            Ok(Outcome {
                breach: !r.concluded,
                report: to_value(&r),
                csv: None,
            })
        }
        Mode::Exhaustive => {
            let (s, rows) = cmd_exhaustive(config)?;
            Ok(Outcome {
                breach: s.breach(),
                report: to_value(&s),
                csv: Some(rows_to_csv(&rows)?),
            })
        }
        Mode::Fuzz => {
            let s = cmd_fuzz(config)?;
            Ok(Outcome {
                breach: s.breach(),
                report: to_value(&s),
                csv: None,
            })
        }
        Mode::Counterexample => {
            let r = cmd_counterexample(config)?;
            Ok(Outcome {
                breach: !r.confirmed,
                report: to_value(&r),
                csv: None,
            })
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

/// Writes the report and CSV per the config.
pub fn emit(config: &RunConfig, outcome: &Outcome) -> Result<()> {
    let text = serde_json::to_string_pretty(&outcome.report)? + "\n";
    match &config.out {
        Some(p) => write_text(p, &text)?,
        None => print!("{text}"),
    }
    if let (Some(p), Some(csv)) = (&config.csv, &outcome.csv) {
        write_text(p, csv)?;
    }
    Ok(())
}

/// Full run as the binary performs it; returns the process exit code.
pub fn main_with(config: &RunConfig) -> i32 {
    match run(config).and_then(|o| emit(config, &o).map(|_| o)) {
        Ok(o) => {
            if o.breach {
                eprintln!("invariant breach: see report");
            }
            o.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
