use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use moutard::{Complex64, ComplexPoly, FlowSign};

use crate::export::Format;
use crate::parse::{parse_complex, parse_complex_list};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// ψ(z) at each `--z` point.
    Eigen,
    /// Identity, residual, harmonicity, scattering and flow checks.
    Verify,
    /// Fit the scattering coefficients (a, b).
    Scatter,
    /// Root trajectories of the flow over [t0, t1].
    Evolve,
    /// Point potential at time `--t0`.
    Potential,
}

/// Command-line arguments. Complex numbers are `re,im` or `a+bi`; lists
/// separate entries by `;` or whitespace.
#[derive(Debug, Parser)]
#[command(name = "moutard", version, about = "Multi-point delta potentials from the Moutard transformation")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Roots of P.
    #[arg(long, allow_hyphen_values = true)]
    pub roots: Option<String>,
    /// Coefficients of P, constant term first; the last must be 1.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Spectral parameter λ ≠ 0.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Evaluation points for `eigen`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub t1: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Sampling radius for `scatter` (default 10⁴·max(1, max|root|)).
    #[arg(long)]
    pub radius: Option<f64>,
    /// Sample count for `scatter`.
    #[arg(long, default_value_t = moutard::scattering::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Collision tolerance for `evolve`; identity threshold for `verify`.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Sign s in P_t = s·P_zzz (1 or -1).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub flow_sign: i32,
}

pub const DEFAULT_COLLISION_TOL: f64 = 1e-3;
pub const DEFAULT_IDENTITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub poly: ComplexPoly,
    pub lambda: Option<Complex64>,
    pub z: Vec<Complex64>,
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
    pub radius: Option<f64>,
    pub samples: usize,
    pub tol: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub flow_sign: FlowSign,
}

impl RunConfig {
    /// Configuration for `command` on `poly` with every other field at its
    /// default.
    pub fn new(command: Command, poly: ComplexPoly) -> Self {
        RunConfig {
            command,
            poly,
            lambda: None,
            z: Vec::new(),
            t0: 0.0,
            t1: 1.0,
            steps: 100,
            radius: None,
            samples: moutard::scattering::DEFAULT_SAMPLES,
            tol: None,
            format: Format::Json,
            out: None,
            flow_sign: FlowSign::Plus,
        }
    }

    pub fn from_args<I, T>(args: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| e.to_string())?;
        RunConfig::try_from(cli)
    }

    pub fn collision_tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_COLLISION_TOL)
    }

    pub fn identity_tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_IDENTITY_TOL)
    }

    /// λ, which `eigen`, `scatter` and `verify` require to be nonzero.
    pub fn require_lambda(&self) -> Result<Complex64, String> {
        match self.lambda {
            Some(l) if l != Complex64::new(0.0, 0.0) => Ok(l),
            Some(_) => Err("--lambda must be nonzero".into()),
            None => Err(format!("{:?} requires --lambda", self.command).to_lowercase()),
        }
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = String;

    fn try_from(cli: Cli) -> Result<Self, String> {
        let poly = match (&cli.roots, &cli.coeffs) {
            (Some(r), None) => ComplexPoly::from_roots(&parse_complex_list(r).map_err(|e| format!("--roots: {e}"))?),
            (None, Some(c)) => {
                let coeffs = parse_complex_list(c).map_err(|e| format!("--coeffs: {e}"))?;
                ComplexPoly::from_coeffs(coeffs).map_err(|e| format!("--coeffs: {e}"))?
            }
            _ => return Err("exactly one of --roots and --coeffs is required".into()),
        };
        let lambda = cli
            .lambda
            .as_deref()
            .map(parse_complex)
            .transpose()
            .map_err(|e| format!("--lambda: {e}"))?;
        let z = match &cli.z {
            Some(s) => parse_complex_list(s).map_err(|e| format!("--z: {e}"))?,
            None => Vec::new(),
        };
        let flow_sign = FlowSign::try_from(cli.flow_sign).map_err(|v| format!("--flow-sign must be 1 or -1, got {v}"))?;
        if !cli.t0.is_finite() || !cli.t1.is_finite() {
            return Err("--t0 and --t1 must be finite".into());
        }
        if let Some(tol) = cli.tol {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err("--tol must be positive".into());
            }
        }
        if let Some(r) = cli.radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err("--radius must be positive".into());
            }
        }
        let cfg = RunConfig {
            command: cli.command,
            poly,
            lambda,
            z,
            t0: cli.t0,
            t1: cli.t1,
            steps: cli.steps,
            radius: cli.radius,
            samples: cli.samples,
            tol: cli.tol,
            format: cli.format,
            out: cli.out,
            flow_sign,
        };
        if matches!(cfg.command, Command::Eigen | Command::Scatter | Command::Verify) {
            cfg.require_lambda()?;
        }
        if cfg.command == Command::Eigen && cfg.z.is_empty() {
            return Err("eigen requires --z".into());
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, String> {
        RunConfig::from_args(std::iter::once("moutard").chain(args.iter().copied()))
    }

    #[test]
    fn roots_or_coeffs() {
        let a = parse(&["potential", "--roots", "1;-1"]).unwrap();
        let b = parse(&["potential", "--coeffs", "-1 0 1"]).unwrap();
        assert_eq!(a.poly, b.poly);
        assert!(parse(&["potential"]).is_err());
        assert!(parse(&["potential", "--roots", "1", "--coeffs", "1"]).is_err());
        assert!(parse(&["potential", "--coeffs", "1 2"]).is_err());
    }

    #[test]
    fn lambda_rules() {
        assert!(parse(&["scatter", "--roots", "1"]).is_err());
        assert!(parse(&["scatter", "--roots", "1", "--lambda", "0"]).is_err());
        assert!(parse(&["eigen", "--roots", "1", "--lambda", "2"]).is_err());
        let cfg = parse(&["eigen", "--roots", "", "--lambda", "-3i", "--z", "0"]).unwrap();
        assert_eq!(cfg.lambda, Some(Complex64::new(0.0, -3.0)));
        assert_eq!(cfg.poly, ComplexPoly::one());
    }

    #[test]
    fn flags() {
        let cfg = parse(&[
            "evolve", "--roots", "0 0 0", "--t0", "-1", "--t1", "1", "--steps", "40", "--flow-sign", "-1",
            "--format", "csv", "--tol", "1e-4",
        ])
        .unwrap();
        assert_eq!((cfg.t0, cfg.t1, cfg.steps), (-1.0, 1.0, 40));
        assert_eq!(cfg.flow_sign, FlowSign::Minus);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.collision_tol(), 1e-4);
        assert!(parse(&["evolve", "--roots", "1", "--flow-sign", "2"]).is_err());
        assert!(parse(&["evolve", "--roots", "1", "--tol", "-1"]).is_err());
        assert!(parse(&["bogus", "--roots", "1"]).is_err());
    }
}
