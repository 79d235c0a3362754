//! The Moutard transformation of `H = -4∂̄∂ + U` and the closed-form Faddeev
//! eigenfunctions it produces from the zero potential.
//!
//! For a smooth positive `ω` with `Hω = 0` the transformed potential is
//! `Ũ = U − 8∂̄∂ log ω`. For `ω = P(z)` a monic polynomial the formula is only
//! formal: `log |P|` has logarithmic singularities and the result is the
//! point potential `Ũ = −8π Σ δ(z − z_k)`, which is kept symbolic here as
//! [`DeltaPotential`]. Solutions are transported by the first-order system
//!
//! ```text
//! (ωθ)_z = −iω²(φ/ω)_z,    (ωθ)_z̄ = iω²(φ/ω)_z̄
//! ```
//!
//! which also serves as the regularization of `H̃θ = 0` at the centers. For
//! `N = 1` the equation `H̃ψ = 0` holds formally under the distributional rule
//! `∂̄(e^{λz} z⁻²) = 2π e^{λz} δ(z) / z`; that rule has no executable
//! counterpart in this crate.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cpoly::{ComplexPoly, Poly, RootSet};
use crate::error::{Error, Result};
use crate::wirtinger::{self, StencilConfig};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative pole guard: `|P(z)| < POLE_GUARD · ∏(1 + |z_k|)` is treated as a
/// hit on a center.
pub const POLE_GUARD: f64 = 1e-8;

/// `Ũ = weight · Σ δ(z − z_k)` with `weight = −8π`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaPotential {
    pub centers: Vec<Complex64>,
    pub weight: f64,
    /// Flow time, for potentials produced by the Novikov–Veselov evolution.
    pub time: Option<f64>,
}

impl DeltaPotential {
    pub const WEIGHT: f64 = -8.0 * PI;

    pub fn new(centers: Vec<Complex64>) -> Self {
        DeltaPotential {
            centers,
            weight: Self::WEIGHT,
            time: None,
        }
    }

    pub fn at_time(mut self, t: f64) -> Self {
        self.time = Some(t);
        self
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Integral of `Ũ` over the plane.
    pub fn total_weight(&self) -> f64 {
        self.weight * self.centers.len() as f64
    }
}

/// Moutard transform of `U = 0` by `ω = P`: one `−8π` delta at every root.
pub fn transformed_potential(p: &ComplexPoly) -> Result<DeltaPotential> {
    if p.degree() == 0 {
        return Ok(DeltaPotential::new(Vec::new()));
    }
    Ok(DeltaPotential::new(p.roots()?.roots))
}

/// A regular seed for the numeric form of the transformation. `Hω = 0` is the
/// caller's responsibility.
pub struct SmoothMoutardInput<W, U> {
    pub omega: W,
    pub u: U,
}

impl<W, U> SmoothMoutardInput<W, U>
where
    W: Fn(Complex64) -> f64,
    U: Fn(Complex64) -> Complex64,
{
    pub fn new(omega: W, u: U) -> Self {
        SmoothMoutardInput { omega, u }
    }
}

/// `Ũ(z) = U(z) − 8∂̄∂ log ω(z) = U(z) − 2Δ log ω(z)`.
pub fn smooth_moutard_potential<W, U>(
    input: &SmoothMoutardInput<W, U>,
    z: Complex64,
    cfg: StencilConfig,
) -> Result<Complex64>
where
    W: Fn(Complex64) -> f64,
    U: Fn(Complex64) -> Complex64,
{
    for w in wirtinger::stencil_points(z, cfg) {
        let value = (input.omega)(w);
        if value.is_nan() || value <= 0.0 {
            return Err(Error::NonPositiveOmega { z: w, value });
        }
    }
    let lap = wirtinger::laplacian(|w| Complex64::new((input.omega)(w).ln(), 0.0), z, cfg)?;
    Ok((input.u)(z) - 2.0 * lap)
}

/// The pair `(P, λ)` defining
/// `ψ = e^{λz}(1 + (2/P) Σ_{k=1}^N (−1)^k P^{(k)}(z) / λ^k)`.
#[derive(Clone, Debug)]
pub struct FaddeevParams {
    p: ComplexPoly,
    lambda: Complex64,
    roots: RootSet,
    /// `P', P'', …, P^{(N)}`.
    derivatives: Vec<Poly>,
    pole_scale: f64,
}

impl FaddeevParams {
    pub fn new(p: ComplexPoly, lambda: Complex64) -> Result<Self> {
        let roots = if p.degree() == 0 {
            RootSet { roots: Vec::new() }
        } else {
            p.roots()?
        };
        Self::with_roots(p, lambda, roots)
    }

    /// Skips root finding when the roots are already known.
    pub fn with_roots(p: ComplexPoly, lambda: Complex64, roots: RootSet) -> Result<Self> {
        if lambda == Complex64::new(0.0, 0.0) || !lambda.is_finite() {
            return Err(Error::ZeroLambda);
        }
        let derivatives = (1..=p.degree()).map(|k| p.derivative(k)).collect();
        let pole_scale = roots.roots.iter().map(|r| 1.0 + r.norm()).product();
        Ok(FaddeevParams {
            p,
            lambda,
            roots,
            derivatives,
            pole_scale,
        })
    }

    pub fn poly(&self) -> &ComplexPoly {
        &self.p
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    /// `Σ_{k=1}^N (−1)^k P^{(k)}(z) / λ^k`, Horner in `−1/λ`.
    fn derivative_sum(&self, z: Complex64) -> Complex64 {
        let m = -self.lambda.inv();
        self.derivatives
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, d| (acc + d.evaluate(z)) * m)
    }

    /// `μ(z) = ψ(z)e^{−λz} − 1 = 2S(z)/P(z)`, computed without the exponential.
    pub fn modulation(&self, z: Complex64) -> Complex64 {
        if self.derivatives.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        2.0 * self.derivative_sum(z) / self.p.evaluate(z)
    }

    /// `ψ(z)` without the pole guard; infinite or NaN on a center.
    pub fn psi_unchecked(&self, z: Complex64) -> Complex64 {
        (self.lambda * z).exp() * (1.0 + self.modulation(z))
    }

    pub fn nearest_root(&self, z: Complex64) -> Option<Complex64> {
        self.roots
            .roots
            .iter()
            .copied()
            .min_by(|a, b| (a - z).norm().total_cmp(&(b - z).norm()))
    }

    fn guard(&self, z: Complex64) -> Result<()> {
        if self.p.degree() > 0 && self.p.evaluate(z).norm() < POLE_GUARD * self.pole_scale {
            return Err(Error::NearPole {
                z,
                nearest_root: self.nearest_root(z).unwrap_or(z),
            });
        }
        Ok(())
    }

    /// `Q = P + 2 Σ_{k=1}^N (−1)^k P^{(k)} / λ^k`, so that `Pψ = e^{λz} Q`.
    pub fn numerator(&self) -> Poly {
        let m = -self.lambda.inv();
        let mut q = self.p.as_poly();
        let mut factor = Complex64::new(2.0, 0.0);
        for d in &self.derivatives {
            factor *= m;
            q = &q + &d.scale(factor);
        }
        q
    }
}

/// Closed-form Faddeev eigenfunction at `z`.
pub fn faddeev_psi(fp: &FaddeevParams, z: Complex64) -> Result<Complex64> {
    fp.guard(z)?;
    Ok(fp.psi_unchecked(z))
}

/// Coefficient residual of `Q' + λQ = λP − P'`.
///
/// This is the first Moutard equation for `ω = P`, `φ = ie^{λz}`, `θ = ψ`
/// after dividing out `e^{λz}`; the second equation holds because `Q` is
/// holomorphic. The returned value is the largest coefficient of the
/// difference divided by `max(1, s)`, where `s` is the largest coefficient
/// among the terms that cancel, so it measures the identity against the
/// rounding floor of the arithmetic rather than the size of `P`.
pub fn verify_eigenfunction_identity(fp: &FaddeevParams) -> f64 {
    let lambda = fp.lambda;
    let p = fp.p.as_poly();
    let dp = fp.p.derivative(1);
    let q = fp.numerator();
    let lhs = &q.derivative(1) + &q.scale(lambda);
    let rhs = &p.scale(lambda) - &dp;
    let diff = (&lhs - &rhs).max_abs_coeff();

    let m = -lambda.inv();
    let mut factor = Complex64::new(2.0, 0.0);
    let mut scale = p.scale(lambda).max_abs_coeff().max(dp.max_abs_coeff());
    for d in &fp.derivatives {
        // λ·2m^k·P^{(k)} and its derivative counterpart 2m^k·P^{(k+1)}
        scale = scale.max(d.scale(factor).max_abs_coeff());
        factor *= m;
        scale = scale.max(d.derivative(1).scale(factor).max_abs_coeff());
    }
    diff / scale.max(1.0)
}

/// Residuals of the Moutard system
/// `r₁ = (ωθ)_z + iω²(φ/ω)_z`, `r₂ = (ωθ)_z̄ − iω²(φ/ω)_z̄`.
pub fn moutard_residual<W, P, T>(
    omega: W,
    phi: P,
    theta: T,
    z: Complex64,
    cfg: StencilConfig,
) -> Result<(Complex64, Complex64)>
where
    W: Fn(Complex64) -> Complex64,
    P: Fn(Complex64) -> Complex64,
    T: Fn(Complex64) -> Complex64,
{
    let product = |w| omega(w) * theta(w);
    let quotient = |w| phi(w) / omega(w);
    let w0 = omega(z);
    if !w0.is_finite() {
        return Err(Error::NonFinite { z });
    }
    let w2 = w0 * w0;
    let r1 = wirtinger::d_z(product, z, cfg)? + I * w2 * wirtinger::d_z(quotient, z, cfg)?;
    let r2 = wirtinger::d_zbar(product, z, cfg)? - I * w2 * wirtinger::d_zbar(quotient, z, cfg)?;
    Ok((r1, r2))
}

/// `z ↦ θ(z) + c/ω(z)`: the integration-constant freedom of the Moutard system.
pub fn gauge_shift<T, W>(theta: T, c: Complex64, omega: W) -> impl Fn(Complex64) -> Complex64
where
    T: Fn(Complex64) -> Complex64,
    W: Fn(Complex64) -> Complex64,
{
    move |z| theta(z) + c / omega(z)
}

/// `|Δψ(z)| / (|e^{λz}| (1 + |λ|²))`. Small values certify `−4∂̄∂ψ = 0` away
/// from the centers, where `Ũ` vanishes.
pub fn harmonicity_check(fp: &FaddeevParams, z: Complex64, cfg: StencilConfig) -> Result<f64> {
    if let Some(root) = fp.nearest_root(z) {
        if (root - z).norm() <= 10.0 * cfg.h {
            return Err(Error::NearPole {
                z,
                nearest_root: root,
            });
        }
    }
    let lap = wirtinger::laplacian(|w| fp.psi_unchecked(w), z, cfg)?;
    let lambda = fp.lambda;
    Ok(lap.norm() / ((lambda * z).exp().norm() * (1.0 + lambda.norm_sqr())))
}
