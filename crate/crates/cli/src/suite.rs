//! Pointwise checks shared by `verify` and the acceptance tests.
//!
//! Residuals are normalized by `|e^{λz}|`. Sample points keep a clearance
//! from every root and stay in the half-plane `Re(λz) ≥ 0`, where the
//! normalization does not amplify rounding in `θ` (see `sample_points`).

use moutard::{gauge_shift, harmonicity_check, moutard_residual, Complex64, FaddeevParams, Result, StencilConfig};

pub const POINT_COUNT: usize = 25;
pub const ROOT_CLEARANCE: f64 = 0.5;

const I: Complex64 = Complex64::new(0.0, 1.0);
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

/// Circle stencil for the first-order system. Everything differentiated is
/// holomorphic or antiholomorphic away from the roots, so the only
/// truncation is aliasing `~(h/0.5)^nodes`; the wide circle keeps the
/// rounding floor `u|ωθ|/h` low.
pub fn residual_stencil() -> StencilConfig {
    StencilConfig::with_nodes(0.2, false, 64).expect("valid stencil")
}

pub fn harmonicity_stencil() -> StencilConfig {
    StencilConfig::with_nodes(0.05, false, 32).expect("valid stencil")
}

/// Whether `z` is an admissible sample point for `fp`.
pub fn admissible(fp: &FaddeevParams, z: Complex64) -> bool {
    (fp.lambda() * z).re >= 0.0 && fp.roots().roots.iter().all(|r| (r - z).norm() > ROOT_CLEARANCE)
}

/// Up to `count` deterministic points on a golden-angle spiral filling the
/// disk `|z| ≤ max|root| + 1`, skipping inadmissible ones.
pub fn sample_points(fp: &FaddeevParams, count: usize) -> Vec<Complex64> {
    let radius = fp.roots().max_modulus() + 1.0;
    let candidates = 64 * count.max(1);
    let pool: Vec<Complex64> = (0..candidates)
        .map(|k| {
            let r = radius * ((k as f64 + 0.5) / candidates as f64).sqrt();
            Complex64::from_polar(r, GOLDEN_ANGLE * k as f64)
        })
        .filter(|&z| admissible(fp, z))
        .collect();
    let take = count.min(pool.len());
    (0..take).map(|k| pool[k * pool.len() / take]).collect()
}

fn omega(fp: &FaddeevParams) -> impl Fn(Complex64) -> Complex64 + '_ {
    |w| fp.poly().evaluate(w)
}

fn phi(lambda: Complex64) -> impl Fn(Complex64) -> Complex64 {
    move |w| I * (lambda * w).exp()
}

/// Both Moutard residuals for `θ = ψ + c/P`, normalized by `|e^{λz}|`.
pub fn normalized_residuals(fp: &FaddeevParams, z: Complex64, c: Complex64) -> Result<(Complex64, Complex64)> {
    let theta = gauge_shift(|w| fp.psi_unchecked(w), c, omega(fp));
    let (r1, r2) = moutard_residual(omega(fp), phi(fp.lambda()), theta, z, residual_stencil())?;
    let norm = (fp.lambda() * z).exp().norm();
    Ok((r1 / norm, r2 / norm))
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ResidualSummary {
    /// Largest normalized `|r₁|`, `|r₂|`.
    pub max_r1: f64,
    pub max_r2: f64,
    /// Largest change of either residual under the gauge shifts.
    pub max_gauge_change: f64,
    /// Largest normalized `|Δψ|`.
    pub max_harmonicity: f64,
}

/// Gauge constants with `|c| ∈ {1, 10³}`.
pub const GAUGE_CONSTANTS: [Complex64; 2] = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1e3)];

pub fn summarize(fp: &FaddeevParams, points: &[Complex64]) -> Result<ResidualSummary> {
    let mut s = ResidualSummary::default();
    let zero = Complex64::new(0.0, 0.0);
    for &z in points {
        let (r1, r2) = normalized_residuals(fp, z, zero)?;
        s.max_r1 = s.max_r1.max(r1.norm());
        s.max_r2 = s.max_r2.max(r2.norm());
        for c in GAUGE_CONSTANTS {
            let (g1, g2) = normalized_residuals(fp, z, c)?;
            s.max_gauge_change = s.max_gauge_change.max((g1 - r1).norm()).max((g2 - r2).norm());
        }
        s.max_harmonicity = s.max_harmonicity.max(harmonicity_check(fp, z, harmonicity_stencil())?);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use moutard::ComplexPoly;

    #[test]
    fn points_are_admissible_and_deterministic() {
        let roots = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.5)];
        let fp = FaddeevParams::new(ComplexPoly::from_roots(&roots), Complex64::new(1.0, 1.0)).unwrap();
        let pts = sample_points(&fp, POINT_COUNT);
        assert_eq!(pts.len(), POINT_COUNT);
        assert!(pts.iter().all(|&z| admissible(&fp, z)));
        assert_eq!(pts, sample_points(&fp, POINT_COUNT));
    }

    #[test]
    fn trivial_polynomial_has_clean_residuals() {
        let fp = FaddeevParams::new(ComplexPoly::one(), Complex64::new(2.0, 0.0)).unwrap();
        let s = summarize(&fp, &sample_points(&fp, 5)).unwrap();
        assert!(s.max_r1 < 1e-12 && s.max_r2 < 1e-12 && s.max_harmonicity < 1e-8);
    }
}
