//! Command-line front end for the `moutard` crate.
//!
//! [`run`] executes a [`RunConfig`] and returns the exit status together with
//! the bytes destined for standard output and standard error, so the binary
//! is a thin shell around it. Exit status 0 is success, 1 a numerical
//! failure (reported as a JSON error record on standard output) or a failed
//! `verify` check, 2 a configuration error (diagnostic on standard error).

pub mod config;
pub mod export;
pub mod parse;
pub mod suite;

use std::io::Write;

use moutard::scattering::{default_radius, estimate};
use moutard::{
    count_deltas, expected_a, fit_scattering, sample_mu, verify_eigenfunction_identity, Complex64, Error, FaddeevParams, NvFlow,
};
use serde::Serialize;

pub use config::{Cli, Command, RunConfig};
pub use export::{export_trajectory, read_trajectory_csv, read_trajectory_json, ExportError, Format, ReIm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Pinned thresholds of the `verify` checks.
pub mod thresholds {
    pub const RESIDUAL: f64 = 1e-6;
    pub const GAUGE: f64 = 1e-10;
    pub const HARMONICITY: f64 = 1e-5;
    pub const SCATTERING_A_REL: f64 = 1e-3;
    pub const SCATTERING_B: f64 = 1e-8;
    pub const FLOW_IDENTITY: f64 = 1e-11;
    pub const FLOW_RESIDUAL: f64 = 1e-6;
    pub const FLOW_DT: f64 = 1e-4;
    pub const FLOW_TIMES: usize = 10;
}

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numerical(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotMonic { .. }
            | Error::ZeroLambda
            | Error::InvalidStep { .. }
            | Error::InvalidStencil { .. }
            | Error::InvalidTimeRange { .. }
            | Error::RadiusTooSmall { .. }
            | Error::InsufficientSamples { .. }
            | Error::InsufficientRoots { .. } => Failure::Config(e.to_string()),
            other => Failure::Numerical(other),
        }
    }
}

impl From<ExportError> for Failure {
    fn from(e: ExportError) -> Self {
        match e {
            ExportError::Io(io) => Failure::Io(io),
            other => Failure::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub command: String,
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Eigen => "eigen",
        Command::Verify => "verify",
        Command::Scatter => "scatter",
        Command::Evolve => "evolve",
        Command::Potential => "potential",
    }
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::from_args(args) {
        Ok(cfg) => run(&cfg),
        Err(msg) => RunOutput {
            code: EXIT_CONFIG,
            stdout: Vec::new(),
            stderr: format!("{}\n", msg.trim_end()).into_bytes(),
        },
    }
}

pub fn run(cfg: &RunConfig) -> RunOutput {
    let result = render(cfg).and_then(|(code, bytes)| match &cfg.out {
        Some(path) => {
            std::fs::write(path, &bytes)?;
            Ok((code, Vec::new()))
        }
        None => Ok((code, bytes)),
    });
    match result {
        Ok((code, stdout)) => RunOutput {
            code,
            stdout,
            stderr: Vec::new(),
        },
        Err(Failure::Config(msg)) => RunOutput {
            code: EXIT_CONFIG,
            stdout: Vec::new(),
            stderr: format!("error: {msg}\n").into_bytes(),
        },
        Err(failure) => {
            let (kind, message) = match &failure {
                Failure::Numerical(e) => (e.kind().to_string(), e.to_string()),
                Failure::Io(e) => ("IoFailure".to_string(), e.to_string()),
                Failure::Config(_) => unreachable!(),
            };
            let record = ErrorRecord {
                command: command_name(cfg.command).into(),
                kind,
                message,
            };
            let mut stdout = serde_json::to_vec_pretty(&serde_json::json!({ "error": record }))
                .expect("error record serializes");
            stdout.push(b'\n');
            RunOutput {
                code: EXIT_NUMERICAL,
                stderr: format!("error: {}\n", record.message).into_bytes(),
                stdout,
            }
        }
    }
}

/// The report bytes and the exit status they carry.
pub fn render(cfg: &RunConfig) -> Result<(i32, Vec<u8>), Failure> {
    match cfg.command {
        Command::Eigen => eigen(cfg).map(|b| (EXIT_OK, b)),
        Command::Scatter => scatter(cfg).map(|b| (EXIT_OK, b)),
        Command::Evolve => evolve(cfg).map(|b| (EXIT_OK, b)),
        Command::Potential => potential(cfg).map(|b| (EXIT_OK, b)),
        Command::Verify => {
            let report = verify_report(cfg)?;
            let code = if report.pass { EXIT_OK } else { EXIT_NUMERICAL };
            Ok((code, emit_verify(&report, cfg.format)?))
        }
    }
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report serializes");
    out.push(b'\n');
    out
}

fn lambda_of(cfg: &RunConfig) -> Result<Complex64, Failure> {
    cfg.require_lambda().map_err(Failure::Config)
}

#[derive(Serialize)]
struct EigenPoint {
    z: ReIm,
    psi: ReIm,
    modulation: ReIm,
}

#[derive(Serialize)]
struct EigenReport {
    command: &'static str,
    lambda: ReIm,
    degree: usize,
    points: Vec<EigenPoint>,
}

fn eigen(cfg: &RunConfig) -> Result<Vec<u8>, Failure> {
    let fp = FaddeevParams::new(cfg.poly.clone(), lambda_of(cfg)?)?;
    let mut points = Vec::with_capacity(cfg.z.len());
    for &z in &cfg.z {
        let psi = moutard::faddeev_psi(&fp, z)?;
        points.push(EigenPoint {
            z: z.into(),
            psi: psi.into(),
            modulation: fp.modulation(z).into(),
        });
    }
    Ok(match cfg.format {
        Format::Json => json_bytes(&EigenReport {
            command: "eigen",
            lambda: fp.lambda().into(),
            degree: fp.degree(),
            points,
        }),
        Format::Csv => {
            let mut out = b"re_z,im_z,re_psi,im_psi,re_mu,im_mu\n".to_vec();
            for p in points {
                writeln!(
                    out,
                    "{:?},{:?},{:?},{:?},{:?},{:?}",
                    p.z.re, p.z.im, p.psi.re, p.psi.im, p.modulation.re, p.modulation.im
                )?;
            }
            out
        }
    })
}

#[derive(Serialize)]
struct ScatterReport {
    command: &'static str,
    lambda: ReIm,
    degree: usize,
    radius: f64,
    samples: usize,
    a: ReIm,
    b: ReIm,
    expected_a: ReIm,
    fit_residual: f64,
    count: usize,
}

fn scatter(cfg: &RunConfig) -> Result<Vec<u8>, Failure> {
    let lambda = lambda_of(cfg)?;
    let fp = FaddeevParams::new(cfg.poly.clone(), lambda)?;
    let radius = cfg.radius.unwrap_or_else(|| default_radius(&fp));
    let est = fit_scattering(&sample_mu(&fp, radius, cfg.samples)?, lambda)?;
    let count = count_deltas(est.a, lambda)?;
    let report = ScatterReport {
        command: "scatter",
        lambda: lambda.into(),
        degree: fp.degree(),
        radius: est.radius,
        samples: est.samples,
        a: est.a.into(),
        b: est.b.into(),
        expected_a: expected_a(fp.degree(), lambda)?.into(),
        fit_residual: est.fit_residual,
        count,
    };
    Ok(match cfg.format {
        Format::Json => json_bytes(&report),
        Format::Csv => {
            let mut out = b"re_a,im_a,re_b,im_b,fit_residual,radius,samples,count\n".to_vec();
            writeln!(
                out,
                "{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?}",
                report.a.re,
                report.a.im,
                report.b.re,
                report.b.im,
                report.fit_residual,
                report.radius,
                report.samples,
                report.count
            )?;
            out
        }
    })
}

fn evolve(cfg: &RunConfig) -> Result<Vec<u8>, Failure> {
    let rt = NvFlow::new(cfg.flow_sign).trajectory(&cfg.poly, cfg.t0, cfg.t1, cfg.steps, cfg.collision_tol())?;
    let mut out = Vec::new();
    export_trajectory(&rt, cfg.format, &mut out)?;
    Ok(out)
}

#[derive(Serialize)]
struct PotentialReport {
    command: &'static str,
    time: f64,
    weight: f64,
    centers: Vec<ReIm>,
}

fn potential(cfg: &RunConfig) -> Result<Vec<u8>, Failure> {
    let u = NvFlow::new(cfg.flow_sign).potential_at(&cfg.poly, cfg.t0)?;
    let report = PotentialReport {
        command: "potential",
        time: cfg.t0,
        weight: u.weight,
        centers: u.centers.iter().map(|&z| z.into()).collect(),
    };
    Ok(match cfg.format {
        Format::Json => json_bytes(&report),
        Format::Csv => {
            let mut out = b"t,re_center,im_center,weight\n".to_vec();
            for c in &report.centers {
                writeln!(out, "{:?},{:?},{:?},{:?}", report.time, c.re, c.im, report.weight)?;
            }
            out
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn below(name: &'static str, value: f64, tolerance: f64) -> Self {
        Check {
            name,
            value,
            tolerance,
            pass: value < tolerance,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScatteringSummary {
    pub a: ReIm,
    pub b: ReIm,
    pub expected_a: ReIm,
    pub count: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub degree: usize,
    pub lambda: ReIm,
    pub roots: Vec<ReIm>,
    pub sample_points: usize,
    pub scattering: ScatteringSummary,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Runs every check on `(P, λ)`; failed checks are reported, not raised.
pub fn verify_report(cfg: &RunConfig) -> Result<VerifyReport, Failure> {
    let lambda = lambda_of(cfg)?;
    let fp = FaddeevParams::new(cfg.poly.clone(), lambda)?;
    let n = fp.degree();
    let mut checks = vec![Check::below("identity", verify_eigenfunction_identity(&fp), cfg.identity_tol())];

    let points = suite::sample_points(&fp, suite::POINT_COUNT);
    let s = suite::summarize(&fp, &points)?;
    checks.push(Check::below("moutard_residual_1", s.max_r1, thresholds::RESIDUAL));
    checks.push(Check::below("moutard_residual_2", s.max_r2, thresholds::RESIDUAL));
    checks.push(Check::below("gauge_change", s.max_gauge_change, thresholds::GAUGE));
    checks.push(Check::below("harmonicity", s.max_harmonicity, thresholds::HARMONICITY));

    let est = match cfg.radius {
        Some(r) => fit_scattering(&sample_mu(&fp, r, cfg.samples)?, lambda)?,
        None => estimate(&fp)?,
    };
    let want = expected_a(n, lambda)?;
    let a_err = if n == 0 {
        est.a.norm()
    } else {
        (est.a - want).norm() / want.norm()
    };
    checks.push(Check::below("scattering_a_rel_error", a_err, thresholds::SCATTERING_A_REL));
    checks.push(Check::below("scattering_b", est.b.norm(), thresholds::SCATTERING_B));
    let count = count_deltas(est.a, lambda).ok();
    checks.push(Check {
        name: "delta_count_error",
        value: count.map_or(f64::INFINITY, |c| c.abs_diff(n) as f64),
        tolerance: 0.0,
        pass: count == Some(n),
    });

    let flow = NvFlow::new(cfg.flow_sign);
    let (mut along, mut flow_res) = (0.0f64, 0.0f64);
    for k in 0..thresholds::FLOW_TIMES {
        let t = cfg.t0 + (cfg.t1 - cfg.t0) * k as f64 / (thresholds::FLOW_TIMES - 1) as f64;
        let pt = flow.evolve(&cfg.poly, t);
        along = along.max(verify_eigenfunction_identity(&FaddeevParams::new(pt, lambda)?));
        flow_res = flow_res.max(flow.verify_flow(&cfg.poly, t, thresholds::FLOW_DT));
    }
    checks.push(Check::below("identity_along_flow", along, thresholds::FLOW_IDENTITY));
    checks.push(Check::below("flow_residual", flow_res, thresholds::FLOW_RESIDUAL));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        command: "verify",
        degree: n,
        lambda: lambda.into(),
        roots: fp.roots().roots.iter().map(|&z| z.into()).collect(),
        sample_points: points.len(),
        scattering: ScatteringSummary {
            a: est.a.into(),
            b: est.b.into(),
            expected_a: want.into(),
            count,
        },
        checks,
        pass,
    })
}

fn emit_verify(report: &VerifyReport, format: Format) -> Result<Vec<u8>, Failure> {
    Ok(match format {
        Format::Json => json_bytes(report),
        Format::Csv => {
            let mut out = b"check,value,tolerance,pass\n".to_vec();
            for c in &report.checks {
                writeln!(out, "{},{:?},{:?},{}", c.name, c.value, c.tolerance, c.pass)?;
            }
            out
        }
    })
}

