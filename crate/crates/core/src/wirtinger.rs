//! Finite-difference Wirtinger calculus.
//!
//! `∂ = ½(∂x − i∂y)`, `∂̄ = ½(∂x + i∂y)` and `Δ = 4∂̄∂`, estimated from `n`
//! samples on a circle of radius `h` around `z`, with an optional Richardson
//! step (`h` and `h/2`).
//!
//! Writing `c_m` for the `m`-th discrete Fourier coefficient of
//! `θ ↦ f(z + h e^{iθ})`, the estimates are `∂f ≈ c₁/h`, `∂̄f ≈ c₋₁/h` and
//! `Δf ≈ 4(c₀ − f(z))/h²`, each with an `O(h²)` error. With `n = 4` these are
//! exactly the central differences and the five-point Laplacian. For the
//! holomorphic part of `f` the only error is aliasing from modes `±1 + kn`,
//! which decays like `(h/d)ⁿ` with `d` the distance to the nearest
//! singularity, so larger `n` allows a wider circle and less rounding noise.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_NODES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StencilConfig {
    pub h: f64,
    pub richardson: bool,
    /// Sample count on the circle; 4 gives the classical stencil.
    pub nodes: usize,
}

impl StencilConfig {
    pub fn new(h: f64, richardson: bool) -> Result<Self> {
        Self::with_nodes(h, richardson, MIN_NODES)
    }

    pub fn with_nodes(h: f64, richardson: bool, nodes: usize) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidStep { h });
        }
        if nodes < MIN_NODES {
            return Err(Error::InvalidStencil { nodes });
        }
        Ok(StencilConfig { h, richardson, nodes })
    }

    /// `h = 1e-5 · max(1, |z|)` on the classical stencil with Richardson
    /// extrapolation, for first derivatives.
    pub fn adaptive(z: Complex64) -> Self {
        StencilConfig {
            h: 1e-5 * z.norm().max(1.0),
            richardson: true,
            nodes: MIN_NODES,
        }
    }

    /// `h = 1e-3 · max(1, |z|)` on the classical stencil with Richardson
    /// extrapolation. Second differences divide rounding noise by `h²`, so
    /// they need a wider stencil.
    pub fn adaptive_second_order(z: Complex64) -> Self {
        StencilConfig {
            h: 1e-3 * z.norm().max(1.0),
            ..Self::adaptive(z)
        }
    }

    /// Plain central differences, for sweeps.
    pub fn sweep(z: Complex64) -> Self {
        StencilConfig {
            richardson: false,
            ..Self::adaptive(z)
        }
    }

    fn radii(&self) -> &'static [f64] {
        if self.richardson {
            &[1.0, 0.5]
        } else {
            &[1.0]
        }
    }
}

/// `e^{2πik/n}`, exact on quarter turns.
fn unit_roots(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            if (4 * k) % n == 0 {
                match 4 * k / n {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                }
            } else {
                Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
            }
        })
        .collect()
}

/// Every point a derivative at `z` samples (including `z` itself).
pub fn stencil_points(z: Complex64, cfg: StencilConfig) -> Vec<Complex64> {
    let roots = unit_roots(cfg.nodes);
    let mut pts = vec![z];
    for &s in cfg.radii() {
        let h = representable_step(z, cfg.h * s);
        pts.extend(roots.iter().map(|u| z + h * u));
    }
    pts
}

fn sample<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64) -> Result<Complex64> {
    let v = f(z);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { z })
    }
}

/// Fourier coefficients `(c₋₁, c₀ − f(z), c₁)` of `f` on the circle of radius
/// `h`. Samples are taken relative to `center = f(z)`: otherwise the partial
/// sums carry the constant mode, of size `|f|·n/2π`, and their rounding
/// swamps the `O(h|f'|)` first modes.
fn circle_modes<F: Fn(Complex64) -> Complex64>(
    f: &F,
    z: Complex64,
    center: Complex64,
    h: f64,
    roots: &[Complex64],
) -> Result<[Complex64; 3]> {
    let mut modes = [Complex64::new(0.0, 0.0); 3];
    for u in roots {
        let v = sample(f, z + h * u)? - center;
        modes[0] += v * u;
        modes[1] += v;
        modes[2] += v * u.conj();
    }
    let n = roots.len() as f64;
    Ok(modes.map(|m| m / n))
}

/// Nearest step for which `z ± h` and `z ± ih` are exact in floating point,
/// so the realized offsets equal the nominal ones.
fn representable_step(z: Complex64, h: f64) -> f64 {
    let base = z.re.abs().max(z.im.abs());
    let step = (base + h) - base;
    if step > 0.0 {
        step
    } else {
        h
    }
}

fn extrapolate<G>(z: Complex64, cfg: StencilConfig, estimate: G) -> Result<Complex64>
where
    G: Fn(f64) -> Result<Complex64>,
{
    let coarse = estimate(representable_step(z, cfg.h))?;
    if !cfg.richardson {
        return Ok(coarse);
    }
    let fine = estimate(representable_step(z, cfg.h / 2.0))?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `∂f(z) = ½(f_x − i f_y)`.
pub fn d_z<F: Fn(Complex64) -> Complex64>(f: F, z: Complex64, cfg: StencilConfig) -> Result<Complex64> {
    let roots = unit_roots(cfg.nodes);
    let center = sample(&f, z)?;
    extrapolate(z, cfg, |h| Ok(circle_modes(&f, z, center, h, &roots)?[2] / h))
}

/// `∂̄f(z) = ½(f_x + i f_y)`.
pub fn d_zbar<F: Fn(Complex64) -> Complex64>(
    f: F,
    z: Complex64,
    cfg: StencilConfig,
) -> Result<Complex64> {
    let roots = unit_roots(cfg.nodes);
    let center = sample(&f, z)?;
    extrapolate(z, cfg, |h| Ok(circle_modes(&f, z, center, h, &roots)?[0] / h))
}

/// `Δf = f_xx + f_yy`; the five-point formula when `nodes = 4`.
pub fn laplacian<F: Fn(Complex64) -> Complex64>(
    f: F,
    z: Complex64,
    cfg: StencilConfig,
) -> Result<Complex64> {
    let roots = unit_roots(cfg.nodes);
    let center = sample(&f, z)?;
    extrapolate(z, cfg, |h| {
        let offset = circle_modes(&f, z, center, h, &roots)?[1];
        Ok(4.0 * offset / (h * h))
    })
}
