//! Faddeev generalized scattering data on the zero energy level.
//!
//! Far from the centers
//!
//! ```text
//! ψ e^{−λz} − 1 = a/z + e^{λ̄z̄ − λz} b/z̄ + o(1/|z|)
//! ```
//!
//! and `(a, b)` are recovered by least squares from samples on a large circle.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::FaddeevParams;

pub const DEFAULT_SAMPLES: usize = 64;
pub const MIN_SAMPLES: usize = 4;
/// Highest Laurent order `1/z^j` carried as a nuisance column in the fit.
pub const MAX_LAURENT_ORDER: usize = 10;

const COLLINEARITY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatteringEstimate {
    pub a: Complex64,
    pub b: Complex64,
    /// RMS of `μ − a/z − b e^{λ̄z̄−λz}/z̄` over the samples.
    pub fit_residual: f64,
    pub radius: f64,
    pub samples: usize,
}

/// `10⁴ · max(1, max|z_k|)`.
pub fn default_radius(fp: &FaddeevParams) -> f64 {
    1e4 * fp.roots().max_modulus().max(1.0)
}

/// `(z, μ(z))` at `count` equally spaced points of `|z| = radius`, with
/// `μ = ψe^{−λz} − 1`.
pub fn sample_mu(fp: &FaddeevParams, radius: f64, count: usize) -> Result<Vec<(Complex64, Complex64)>> {
    let max_root = fp.roots().max_modulus();
    if !(radius > 2.0 * max_root) || !radius.is_finite() {
        return Err(Error::RadiusTooSmall { radius, max_root });
    }
    if count < 2 * MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            count,
            required: 2 * MIN_SAMPLES,
        });
    }
    Ok((0..count)
        .map(|j| {
            let z = Complex64::from_polar(radius, 2.0 * PI * j as f64 / count as f64);
            (z, fp.modulation(z))
        })
        .collect())
}

/// `e^{λ̄z̄ − λz} / z̄`; the exponent is `−2i·Im(λz)`.
pub fn reflection_basis(lambda: Complex64, z: Complex64) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * (lambda * z).im) / z.conj()
}

/// Least-squares fit of `μ ≈ a/z + b e^{λ̄z̄−λz}/z̄`.
///
/// Higher Laurent terms `c_j/z^j`, `2 ≤ j ≤ J`, enter the design as nuisance
/// columns so the holomorphic `O(1/z²)` tail does not leak into `b`. `J` grows
/// with the sample count up to [`MAX_LAURENT_ORDER`]. The reported residual
/// is the misfit of the two-term model alone.
pub fn fit_scattering(samples: &[(Complex64, Complex64)], lambda: Complex64) -> Result<ScatteringEstimate> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroLambda);
    }
    let n = samples.len();
    if n < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            count: n,
            required: MIN_SAMPLES,
        });
    }
    let radius = samples.iter().map(|(z, _)| z.norm()).fold(0.0, f64::max);
    if !(radius > 0.0) {
        return Err(Error::DegenerateDesign);
    }
    let nuisance = ((n - MIN_SAMPLES) / 2).min(MAX_LAURENT_ORDER - 1);

    // Columns scaled by powers of the radius so every entry has modulus ~1.
    let rows: Vec<Vec<Complex64>> = samples
        .iter()
        .map(|&(z, _)| {
            let unit = radius / z;
            let mut row = vec![unit, radius * reflection_basis(lambda, z)];
            let mut power = unit;
            for _ in 0..nuisance {
                power *= unit;
                row.push(power);
            }
            row
        })
        .collect();
    let rhs: Vec<Complex64> = samples.iter().map(|&(_, mu)| radius * mu).collect();

    check_collinear(&rows)?;
    let x = solve_normal_equations(&rows, &rhs)?;
    let (a, b) = (x[0], x[1]);

    let sq: f64 = samples
        .iter()
        .map(|&(z, mu)| (mu - a / z - b * reflection_basis(lambda, z)).norm_sqr())
        .sum();
    Ok(ScatteringEstimate {
        a,
        b,
        fit_residual: (sq / n as f64).sqrt(),
        radius,
        samples: n,
    })
}

fn check_collinear(rows: &[Vec<Complex64>]) -> Result<()> {
    let (mut uu, mut vv, mut uv) = (0.0, 0.0, Complex64::new(0.0, 0.0));
    for row in rows {
        uu += row[0].norm_sqr();
        vv += row[1].norm_sqr();
        uv += row[0].conj() * row[1];
    }
    if uv.norm_sqr() >= (1.0 - COLLINEARITY_TOL) * uu * vv {
        return Err(Error::DegenerateDesign);
    }
    Ok(())
}

/// `(AᴴA) x = Aᴴy` by Gaussian elimination with partial pivoting.
fn solve_normal_equations(rows: &[Vec<Complex64>], rhs: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = rows[0].len();
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); m + 1]; m];
    for (row, &y) in rows.iter().zip(rhs) {
        for i in 0..m {
            let ci = row[i].conj();
            for j in 0..m {
                gram[i][j] += ci * row[j];
            }
            gram[i][m] += ci * y;
        }
    }
    let diag_max = (0..m).map(|i| gram[i][i].norm()).fold(0.0, f64::max);
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&a, &b| gram[a][col].norm().total_cmp(&gram[b][col].norm()))
            .unwrap_or(col);
        if gram[pivot][col].norm() <= 1e-12 * diag_max {
            return Err(Error::DegenerateDesign);
        }
        gram.swap(col, pivot);
        for r in (col + 1)..m {
            let f = gram[r][col] / gram[col][col];
            for k in col..=m {
                let v = gram[col][k];
                gram[r][k] -= f * v;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); m];
    for i in (0..m).rev() {
        let tail: Complex64 = ((i + 1)..m).map(|k| gram[i][k] * x[k]).sum();
        x[i] = (gram[i][m] - tail) / gram[i][i];
    }
    Ok(x)
}

/// `a = −2N/λ`.
pub fn expected_a(n: usize, lambda: Complex64) -> Result<Complex64> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroLambda);
    }
    Ok(-2.0 * n as f64 / lambda)
}

/// Inverts `a = −2N/λ`. Both `|Im(−λa/2)|` and the distance of the real part
/// to the nearest integer must stay within 0.1.
pub fn count_deltas(a: Complex64, lambda: Complex64) -> Result<usize> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroLambda);
    }
    let value = -lambda * a / 2.0;
    let nearest = value.re.round();
    if value.im.abs() > 0.1 || (value.re - nearest).abs() > 0.1 || nearest < 0.0 {
        return Err(Error::InconsistentData { value });
    }
    Ok(nearest as usize)
}

/// Samples on the default circle and fits.
pub fn estimate(fp: &FaddeevParams) -> Result<ScatteringEstimate> {
    let samples = sample_mu(fp, default_radius(fp), DEFAULT_SAMPLES)?;
    fit_scattering(&samples, fp.lambda())
}
