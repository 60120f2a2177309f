//! Job configuration, command dispatch and report output.
//!
//! A [`JobConfig`] is either read from JSON (`--config`) or assembled from
//! command-line flags, then executed by [`run`]. Exit codes:
//!
//! * `0`: every check passed or no violation was found;
//! * `2`: a violation certificate was produced;
//! * `1`: usage, parse or accuracy error, or a failed reproduction claim.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cmnet::{jcm_check, DifferenceCertificate, Verdict, Window};
use crate::counterex::{
    b_grid, delta11_at, family_condition_value, family_scan, hyperbola_condition, threshold_bisect,
    Family,
};
use crate::criteria::{
    classify_21_poly, criteria_report, derivative_inequality_check, Classification, Tristate,
};
use crate::decomp::{
    has_interlacing_signs, partial_fractions, quotient_residue_decompose, Residue,
};
use crate::error::{Error, Result};
use crate::moments::{measure_moment, WeightParams};
use crate::ratpoly::{
    format_rational, int, parse_rational, ratio, serde_rational, FactoredPoly, Rational, TwoVarPoly,
};
use crate::sampling;
use crate::shifts::{
    build_profile, essential_normality_report, norm_z_sq_closed_form, subnormal_contraction_check,
};

/// Environment variable naming the default output directory of `reproduce`.
pub const OUT_DIR_ENV: &str = "JCMNET_OUT_DIR";

const DEFAULT_CRITERIA_GRID: [i64; 8] = [0, 1, 2, 5, 10, 20, 50, 100];
const DEFAULT_T_GRID: [f64; 3] = [0.1, 0.5, 0.9];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    CheckJcm,
    Criteria,
    Decompose,
    VerifyMoments,
    ScanFamily,
    ShiftReport,
    Reproduce,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: CommandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<TwoVarPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    /// Known keys: `moment` (absolute/relative quadrature tolerance),
    /// `bisect` (bracket width).
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub output: OutputFormat,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<u8>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational::option"
    )]
    pub from: Option<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational::option"
    )]
    pub to: Option<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational::option"
    )]
    pub step: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_grid: Option<Vec<f64>>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational::option_vec"
    )]
    pub x_grid: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl JobConfig {
    pub fn new(command: CommandKind) -> Self {
        JobConfig {
            command,
            polynomial: None,
            window: None,
            tolerances: BTreeMap::new(),
            output: OutputFormat::Text,
            seed: 0,
            family: None,
            from: None,
            to: None,
            step: None,
            n: None,
            length: None,
            t_grid: None,
            x_grid: None,
            out_dir: None,
        }
    }

    /// Parses a JSON job; errors carry the line and column of the fault.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("{e} (line {}, column {})", e.line(), e.column())))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn polynomial(&self) -> Result<&TwoVarPoly> {
        self.polynomial
            .as_ref()
            .ok_or_else(|| Error::Config(format!("{:?} needs a polynomial", self.command)))
    }

    fn tolerance(&self, key: &str, default: f64) -> f64 {
        self.tolerances.get(key).copied().unwrap_or(default)
    }
}

/// What a successful run found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    Violation,
    ClaimFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Clean => 0,
            Outcome::Violation => 2,
            Outcome::ClaimFailed => 1,
        }
    }
}

pub fn run(config: &JobConfig, out: &mut dyn Write) -> Result<Outcome> {
    match config.command {
        CommandKind::CheckJcm => run_check_jcm(config, out),
        CommandKind::Criteria => run_criteria(config, out),
        CommandKind::Decompose => run_decompose(config, out),
        CommandKind::VerifyMoments => run_verify_moments(config, out),
        CommandKind::ScanFamily => run_scan_family(config, out),
        CommandKind::ShiftReport => run_shift_report(config, out),
        CommandKind::Reproduce => {
            let dir = config
                .out_dir
                .clone()
                .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("reproduce_out"));
            let claims = reproduce_claims(&dir, config.seed)?;
            match config.output {
                OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&claims)?)?,
                _ => {
                    for c in &claims {
                        writeln!(
                            out,
                            "{:<5} {:<34} {}",
                            if c.pass { "PASS" } else { "FAIL" },
                            c.name,
                            c.detail
                        )?;
                    }
                    writeln!(out, "reports written to {}", dir.display())?;
                }
            }
            Ok(if claims.iter().all(|c| c.pass) {
                Outcome::Clean
            } else {
                Outcome::ClaimFailed
            })
        }
    }
}

fn certificate_outcome(cert: &DifferenceCertificate) -> Outcome {
    match cert.verdict {
        Verdict::Pass => Outcome::Clean,
        Verdict::Violation => Outcome::Violation,
    }
}

fn run_check_jcm(config: &JobConfig, out: &mut dyn Write) -> Result<Outcome> {
    let p = config.polynomial()?;
    let window = config.window.unwrap_or_default();
    let cert = jcm_check(p, window);
    match config.output {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&cert)?)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["alpha_m", "alpha_n", "beta_m", "beta_n", "value"])?;
            for v in &cert.violations {
                w.write_record([
                    v.alpha[0].to_string(),
                    v.alpha[1].to_string(),
                    v.beta[0].to_string(),
                    v.beta[1].to_string(),
                    format_rational(&v.value),
                ])?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            writeln!(out, "p(x, y) = {p}")?;
            writeln!(out, "window  = {window}")?;
            writeln!(out, "verdict = {}", cert.verdict)?;
            if let Some(w) = &cert.witness {
                writeln!(
                    out,
                    "witness: Delta^{:?} at {:?} = {} ({} violations in window)",
                    w.beta,
                    w.alpha,
                    format_rational(&w.value),
                    cert.violation_count
                )?;
            }
        }
    }
    Ok(certificate_outcome(&cert))
}

fn run_criteria(config: &JobConfig, out: &mut dyn Write) -> Result<Outcome> {
    let p = config.polynomial()?;
    let grid = config
        .x_grid
        .clone()
        .unwrap_or_else(|| DEFAULT_CRITERIA_GRID.iter().map(|&x| int(x)).collect());
    let report = criteria_report(p, &grid)?;
    match config.output {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        _ => writeln!(out, "p(x, y) = {p}\n{report}")?,
    }
    Ok(Outcome::Clean)
}

fn residues_json(residues: &[Residue]) -> serde_json::Value {
    serde_json::to_value(residues).expect("residues serialize")
}

fn run_decompose(config: &JobConfig, out: &mut dyn Write) -> Result<Outcome> {
    let p = config.polynomial()?;
    if p.a.degree() + 1 == p.b.degree() {
        let pf = partial_fractions(&p.b, &p.a)?;
        match config.output {
            OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&pf)?)?,
            _ => {
                writeln!(out, "b(x)/a(x) = c0 (x + c + sum_i A_i/(x + a_i))")?;
                writeln!(out, "c0 = {}", format_rational(&pf.c0))?;
                writeln!(out, "c  = {}", format_rational(&pf.c))?;
                for (i, r) in pf.residues.iter().enumerate() {
                    writeln!(
                        out,
                        "A_{} = {}  (pole a_{} = {})",
                        i + 1,
                        format_rational(&r.value),
                        i + 1,
                        format_rational(&r.root)
                    )?;
                }
                writeln!(
                    out,
                    "identity b(x) = c0((x+c)a(x) + sum_i A_i a(x)/(x+a_i)): verified"
                )?;
            }
        }
    } else {
        let qr = quotient_residue_decompose(&p.b, &p.a)?;
        match config.output {
            OutputFormat::Json => {
                let quotient: Vec<String> =
                    qr.quotient.coeffs().iter().map(format_rational).collect();
                let value =
                    json!({ "quotient": quotient, "residues": residues_json(&qr.residues) });
                writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
            }
            _ => {
                writeln!(out, "quotient = {}", qr.quotient)?;
                for r in &qr.residues {
                    writeln!(
                        out,
                        "residue at -{} = {}",
                        format_rational(&r.root),
                        format_rational(&r.value)
                    )?;
                }
                writeln!(
                    out,
                    "identity b(x) = q(x)a(x) + sum_i r_i a(x)/(x+a_i): verified"
                )?;
            }
        }
    }
    Ok(Outcome::Clean)
}

/// One row of the `verify-moments` table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentRow {
    pub pole: String,
    pub residue: String,
    pub t: f64,
    pub m: u64,
    pub target: f64,
    pub computed: f64,
    pub abs_error: f64,
}

fn run_verify_moments(config: &JobConfig, out: &mut dyn Write) -> Result<Outcome> {
    let p = config.polynomial()?;
    let residues = if p.a.degree() + 1 == p.b.degree() {
        partial_fractions(&p.b, &p.a)?.residues
    } else {
        quotient_residue_decompose(&p.b, &p.a)?.residues
    };
    let tol = config.tolerance("moment", 1e-8);
    let t_grid = config
        .t_grid
        .clone()
        .unwrap_or_else(|| DEFAULT_T_GRID.to_vec());
    let max_m = config.window.map_or(10, |w| w.m as u64);

    let mut rows = Vec::new();
    for r in &residues {
        for &t in &t_grid {
            let wp = WeightParams::new(r.value.clone(), r.root.clone(), t)?;
            for m in 0..=max_m {
                let target = wp.moment_target(m);
                let computed = measure_moment(&wp, m, tol)?.value;
                rows.push(MomentRow {
                    pole: format_rational(&r.root),
                    residue: format_rational(&r.value),
                    t,
                    m,
                    target,
                    computed,
                    abs_error: (computed - target).abs(),
                });
            }
        }
    }
    match config.output {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
        _ => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    let worst = rows
        .iter()
        .map(|r| r.abs_error / r.target.abs().max(1.0))
        .fold(0.0, f64::max);
    if worst > tol {
        return Err(Error::Accuracy {
            requested: tol,
            achieved: worst,
            evaluations: 0,
        });
    }
    Ok(Outcome::Clean)
}

fn run_scan_family(config: &JobConfig, out: &mut dyn Write) -> Result<Outcome> {
    let family = Family::from_index(
        config
            .family
            .ok_or_else(|| Error::Config("scan-family needs a family (1 or 2)".into()))?,
    )?;
    let missing = |name| Error::Config(format!("scan-family needs --{name}"));
    let from = config.from.as_ref().ok_or_else(|| missing("from"))?;
    let to = config.to.as_ref().ok_or_else(|| missing("to"))?;
    let step = config.step.as_ref().ok_or_else(|| missing("step"))?;
    let rows = family_scan(family, &b_grid(from, to, step)?, config.window)?;
    match config.output {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
        _ => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["b", "condition_value_sign", "window_verdict"])?;
            for r in &rows {
                let verdict = match r.window_verdict {
                    Some(Verdict::Pass) => "pass",
                    Some(Verdict::Violation) => "violation",
                    None => "",
                };
                w.write_record([
                    format_rational(&r.b),
                    r.sign.to_string(),
                    verdict.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(
        if rows
            .iter()
            .any(|r| r.window_verdict == Some(Verdict::Violation))
        {
            Outcome::Violation
        } else {
            Outcome::Clean
        },
    )
}

fn run_shift_report(config: &JobConfig, out: &mut dyn Write) -> Result<Outcome> {
    let p = config.polynomial()?;
    let n = config.n.unwrap_or(1);
    let length = config.length.unwrap_or(200);
    let profile = build_profile(p, n, length)?;
    let cm_len = config.window.map_or(30, |w| w.m + 1);
    let subnormal = subnormal_contraction_check(&profile, cm_len)?;
    let normality = essential_normality_report(&profile).ok();
    match config.output {
        OutputFormat::Json => {
            let value = json!({
                "profile": profile,
                "norm_z": profile.norm_z(),
                "subnormal": subnormal,
                "essential_normality": normality,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["m", "alpha_sq", "d_m"])?;
            for (m, (a, d)) in profile
                .alpha_sq
                .iter()
                .zip(&profile.commutator_diag)
                .enumerate()
            {
                w.write_record([m.to_string(), format_rational(a), format_rational(d)])?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            writeln!(out, "p(x, y) = {p}, n = {n}, length = {length}")?;
            writeln!(
                out,
                "||z||^2 = {} (||z|| = {:.12})",
                format_rational(&profile.norm_z_sq),
                profile.norm_z()
            )?;
            writeln!(out, "contraction: {}", subnormal.contraction)?;
            writeln!(
                out,
                "moment prefix ({} terms): {}",
                cm_len.min(profile.beta.len()),
                subnormal.moment_certificate.verdict
            )?;
            if let Some(r) = &normality {
                writeln!(
                    out,
                    "self-commutator tail (m >= {}): max |d_m| = {:.3e}, decay exponent = {}",
                    r.tail_start,
                    r.tail_max_abs,
                    r.decay_exponent.map_or("n/a".into(), |e| format!("{e:.3}"))
                )?;
            }
            writeln!(
                out,
                "spectral radius estimate: {:.9}",
                profile.spectral_radius_est
            )?;
        }
    }
    Ok(if subnormal.moment_certificate.is_pass() {
        Outcome::Clean
    } else {
        Outcome::Violation
    })
}

/// Outcome of one reproduced claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub data: serde_json::Value,
}

impl Claim {
    fn new(name: &str, pass: bool, detail: String, data: serde_json::Value) -> Self {
        Claim {
            name: name.to_string(),
            pass,
            detail,
            data,
        }
    }
}

fn within(x: &Rational, lo: (i64, i64), hi: (i64, i64)) -> bool {
    *x >= ratio(lo.0, lo.1) && *x <= ratio(hi.0, hi.1)
}

fn threshold_claim(
    name: &str,
    family: Family,
    bracket: (i64, i64),
    accept: ((i64, i64), (i64, i64)),
) -> Result<Claim> {
    let t = threshold_bisect(family, &int(bracket.0), &int(bracket.1), &ratio(1, 1000))?;
    let pass = within(&t.lo, accept.0, accept.1) && within(&t.hi, accept.0, accept.1);
    Ok(Claim::new(
        name,
        pass,
        format!("root in {t}"),
        serde_json::to_value(&t)?,
    ))
}

fn counterexample_claim() -> Result<Claim> {
    let b = int(9);
    let p = Family::Family2.polynomial(&b)?;
    let cert = jcm_check(&p, Window::new(2, 2)?);
    let diff = delta11_at(&p, 0, 1)?;
    let condition = family_condition_value(Family::Family2, &b)?;
    let hyperbola = hyperbola_condition(&p.b.eval_int(0), &p.b.eval_int(1))?;
    let witness = cert.violation_at(&[0, 1], &[1, 1]).cloned();
    let pass = witness.as_ref().is_some_and(|w| w.value == diff.value)
        && diff.cleared_numerator() == condition
        && condition == int(-61252)
        && hyperbola.holds
        && hyperbola.d2_minus_2d1 == condition;
    Ok(Claim::new(
        "family2_b9_certificate",
        pass,
        format!(
            "Delta_1 Delta_2 (1/p)(0,1) = {}, cleared numerator {}",
            format_rational(&diff.value),
            format_rational(&diff.cleared_numerator())
        ),
        json!({ "certificate": cert, "mixed_difference": diff, "hyperbola": hyperbola }),
    ))
}

fn quadratic_interlacing_claim() -> Result<Claim> {
    let p = TwoVarPoly::monic_int(&[1, 3], &[2]);
    let class = classify_21_poly(&p)?;
    let cert = jcm_check(&p, Window::square(12)?);
    let report = criteria_report(&p, &[int(0), int(1), int(10)])?;
    let pass = class == Classification::Jcm
        && cert.is_pass()
        && !report.necessary.product.holds
        && !report.necessary.sum.holds
        && report.product_necessary == Tristate::NotApplicable
        && report.sum_necessary == Tristate::NotApplicable;
    Ok(Claim::new(
        "quadratic_over_linear_interlacing",
        pass,
        format!(
            "classifier {:?}, window 12x12 {}, product/sum conditions fail and are not applicable",
            class, cert.verdict
        ),
        json!({ "classification": class, "certificate": cert, "criteria": report }),
    ))
}

fn norm_claim() -> Result<Claim> {
    let p = TwoVarPoly::monic_int(&[1, 3], &[2]);
    let profile = build_profile(&p, 1, 10)?;
    let closed = norm_z_sq_closed_form(&p, 1);
    let pass = profile.norm_z_sq == closed && closed == ratio(5, 11);
    Ok(Claim::new(
        "norm_z_closed_form",
        pass,
        format!(
            "||z||^2 = {} (||z|| = {:.9})",
            format_rational(&closed),
            profile.norm_z()
        ),
        json!({ "norm_z_sq": format_rational(&closed), "norm_z": profile.norm_z() }),
    ))
}

fn sufficiency_claim(seed: u64) -> Result<Claim> {
    let mut rng = sampling::rng(seed);
    let window = Window::square(15)?;
    let mut failures = Vec::new();
    let mut cases = Vec::new();
    for _ in 0..10 {
        let k = rng.gen_range(2..=4);
        let p = sampling::interlacing(&mut rng, k);
        let cert = jcm_check(&p, window);
        if !cert.is_pass() {
            failures.push(p.to_string());
        }
        cases.push(json!({ "p": p.to_string(), "verdict": cert.verdict }));
    }
    Ok(Claim::new(
        "interlacing_sufficiency_sample",
        failures.is_empty(),
        format!(
            "10 interlacing instances, window 15x15, {} failures",
            failures.len()
        ),
        json!({ "seed": seed, "cases": cases }),
    ))
}

fn partial_fraction_claim(seed: u64) -> Result<Claim> {
    let mut rng = sampling::rng(seed.wrapping_add(1));
    let mut bad = 0;
    for _ in 0..50 {
        let k = rng.gen_range(2..=5);
        let p = sampling::interlacing(&mut rng, k);
        let pf = partial_fractions(&p.b, &p.a)?;
        let derivative = derivative_inequality_check(&p, &[int(0), int(1), int(7)])?;
        if !has_interlacing_signs(&pf, true) || !derivative.holds_on_grid {
            bad += 1;
        }
    }
    Ok(Claim::new(
        "partial_fraction_signs",
        bad == 0,
        format!("50 interlacing instances, {bad} with c <= 0 or some A_i >= 0"),
        json!({ "seed": seed }),
    ))
}

/// Recomputes every headline number and writes one JSON file per claim plus
/// `summary.csv` into `outdir`.
pub fn reproduce_claims(outdir: &Path, seed: u64) -> Result<Vec<Claim>> {
    std::fs::create_dir_all(outdir)?;
    let claims = vec![
        threshold_claim(
            "family1_threshold",
            Family::Family1,
            (4, 6),
            ((493, 100), (495, 100)),
        )?,
        threshold_claim(
            "family2_threshold",
            Family::Family2,
            (8, 9),
            ((818, 100), (820, 100)),
        )?,
        counterexample_claim()?,
        quadratic_interlacing_claim()?,
        norm_claim()?,
        sufficiency_claim(seed)?,
        partial_fraction_claim(seed)?,
    ];
    let mut summary = csv::Writer::from_path(outdir.join("summary.csv"))?;
    summary.write_record(["claim", "pass", "detail"])?;
    for c in &claims {
        std::fs::write(
            outdir.join(format!("{}.json", c.name)),
            serde_json::to_string_pretty(c)?,
        )?;
        summary.write_record([
            c.name.as_str(),
            if c.pass { "true" } else { "false" },
            &c.detail,
        ])?;
    }
    summary.flush()?;
    Ok(claims)
}

// ---------------------------------------------------------------------------
// Command-line surface

#[derive(Debug, Parser)]
#[command(
    name = "jcmnet",
    version,
    about = "Certified joint complete monotonicity checks for 1/(b(m) + a(m) n)",
    after_help = "CSV columns:\n  \
        check-jcm      alpha_m,alpha_n,beta_m,beta_n,value\n  \
        verify-moments pole,residue,t,m,target,computed,abs_error\n  \
        scan-family    b,condition_value_sign,window_verdict\n  \
        shift-report   m,alpha_sq,d_m\n\n\
        Exit status: 0 clean, 2 violation certificate found, 1 error."
)]
pub struct Cli {
    /// JSON job file; replaces the subcommand and its flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Option<CliCommand>,
}

#[derive(Debug, Args, Default)]
pub struct PolyArgs {
    /// Leading coefficient of b.
    #[arg(long, default_value = "1")]
    pub b_lead: String,
    /// Comma-separated shifts of b, e.g. `1,3` for (x+1)(x+3).
    #[arg(long, value_delimiter = ',')]
    pub b_roots: Vec<String>,
    /// Leading coefficient of a.
    #[arg(long, default_value = "1")]
    pub a_lead: String,
    /// Comma-separated shifts of a.
    #[arg(long, value_delimiter = ',')]
    pub a_roots: Vec<String>,
    /// Whole polynomial as JSON: {"b": {"lead": .., "roots": [..]}, "a": {..}}.
    #[arg(long)]
    pub poly: Option<String>,
}

impl PolyArgs {
    fn build(&self) -> Result<TwoVarPoly> {
        if let Some(json) = &self.poly {
            return serde_json::from_str(json).map_err(|e| {
                Error::Config(format!(
                    "--poly: {e} (line {}, column {})",
                    e.line(),
                    e.column()
                ))
            });
        }
        if self.b_roots.is_empty() {
            return Err(Error::Config("give --b-roots or --poly".into()));
        }
        let parse_all = |v: &[String]| {
            v.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()
        };
        Ok(TwoVarPoly::new_relaxed(
            FactoredPoly::new(parse_rational(&self.b_lead)?, parse_all(&self.b_roots)?)?,
            FactoredPoly::new(parse_rational(&self.a_lead)?, parse_all(&self.a_roots)?)?,
        ))
    }
}

fn parse_window(s: &str) -> std::result::Result<Window, String> {
    let (m, n) = s
        .split_once(['x', 'X', ','])
        .ok_or_else(|| format!("expected MxN, got {s:?}"))?;
    let m = m.trim().parse().map_err(|_| format!("bad extent {m:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad extent {n:?}"))?;
    Window::new(m, n).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Exact window check of (-1)^|beta| Delta^beta (1/p) >= 0.
    CheckJcm {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_parser = parse_window, default_value = "20x20")]
        window: Window,
    },
    /// Interlacing, necessary conditions and the (2,1) classifier.
    Criteria {
        #[command(flatten)]
        poly: PolyArgs,
        /// Points x >= 0 for the a'b <= ab' test.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<String>,
    },
    /// Partial fractions of b/a, verified coefficient by coefficient.
    Decompose {
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Moments of the representing measures against t^{A/(m+a)}.
    VerifyMoments {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_T_GRID)]
        t_grid: Vec<f64>,
        /// Moments m = 0 ..= M for a window MxN.
        #[arg(long, value_parser = parse_window, default_value = "10x1")]
        window: Window,
    },
    /// Sign of the counterexample condition along a family, optionally with
    /// a window check of each net.
    ScanFamily {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        family: u8,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        step: String,
        #[arg(long, value_parser = parse_window)]
        window: Option<Window>,
    },
    /// Weighted shift built from 1/p(m, n) at fixed n.
    ShiftReport {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, default_value_t = 200)]
        length: usize,
    },
    /// Recompute every headline claim into a report directory.
    Reproduce {
        /// Defaults to $JCMNET_OUT_DIR, then ./reproduce_out.
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
}

impl Cli {
    /// Resolves flags (or the `--config` file) into a job.
    pub fn into_config(self) -> Result<JobConfig> {
        let mut config = match (&self.config, self.command) {
            (Some(path), _) => JobConfig::from_json(&std::fs::read_to_string(path)?)?,
            (None, None) => return Err(Error::Config("give a subcommand or --config".into())),
            (None, Some(cmd)) => command_config(cmd)?,
        };
        if let Some(format) = self.format {
            config.output = format;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        Ok(config)
    }
}

fn command_config(cmd: CliCommand) -> Result<JobConfig> {
    let parse_list = |v: &[String]| {
        v.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
    };
    Ok(match cmd {
        CliCommand::CheckJcm { poly, window } => JobConfig {
            polynomial: Some(poly.build()?),
            window: Some(window),
            ..JobConfig::new(CommandKind::CheckJcm)
        },
        CliCommand::Criteria { poly, grid } => JobConfig {
            polynomial: Some(poly.build()?),
            x_grid: (!grid.is_empty()).then(|| parse_list(&grid)).transpose()?,
            ..JobConfig::new(CommandKind::Criteria)
        },
        CliCommand::Decompose { poly } => JobConfig {
            polynomial: Some(poly.build()?),
            ..JobConfig::new(CommandKind::Decompose)
        },
        CliCommand::VerifyMoments {
            poly,
            tol,
            t_grid,
            window,
        } => JobConfig {
            polynomial: Some(poly.build()?),
            tolerances: BTreeMap::from([("moment".to_string(), tol)]),
            t_grid: Some(t_grid),
            window: Some(window),
            ..JobConfig::new(CommandKind::VerifyMoments)
        },
        CliCommand::ScanFamily {
            family,
            from,
            to,
            step,
            window,
        } => JobConfig {
            family: Some(family),
            from: Some(parse_rational(&from)?),
            to: Some(parse_rational(&to)?),
            step: Some(parse_rational(&step)?),
            window,
            output: OutputFormat::Csv,
            ..JobConfig::new(CommandKind::ScanFamily)
        },
        CliCommand::ShiftReport { poly, n, length } => JobConfig {
            polynomial: Some(poly.build()?),
            n: Some(n),
            length: Some(length),
            ..JobConfig::new(CommandKind::ShiftReport)
        },
        CliCommand::Reproduce { outdir } => JobConfig {
            out_dir: outdir,
            ..JobConfig::new(CommandKind::Reproduce)
        },
    })
}

/// Renders a certificate as a short human-readable block.
pub fn describe_certificate(cert: &DifferenceCertificate) -> String {
    let mut s = format!("verdict: {} (window {:?})", cert.verdict, cert.window);
    if let Some(w) = &cert.witness {
        let _ = write!(
            s,
            "\nwitness: Delta^{:?} at {:?} = {}{}",
            w.beta,
            w.alpha,
            format_rational(&w.value),
            if w.signed_value().is_negative() {
                " (wrong sign)"
            } else {
                ""
            }
        );
    }
    s
}
