//! Browser bindings for the demo page in `www/`.
//!
//! Roots cross the boundary as flat `[re₀, im₀, re₁, im₁, …]` arrays.

use moutard::flow::NvFlow;
use moutard::scattering::estimate;
use moutard::{count_deltas, expected_a, Complex64, ComplexPoly, FaddeevParams, FlowSign};
use wasm_bindgen::prelude::*;

fn roots_from_flat(flat: &[f64]) -> Result<Vec<Complex64>, JsValue> {
    if flat.len() % 2 != 0 {
        return Err(JsValue::from_str("roots must be re/im pairs"));
    }
    Ok(flat.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect())
}

fn params(roots: &[f64], lambda_re: f64, lambda_im: f64) -> Result<FaddeevParams, JsValue> {
    let roots = roots_from_flat(roots)?;
    FaddeevParams::new(ComplexPoly::from_roots(&roots), Complex64::new(lambda_re, lambda_im))
        .map_err(|e| JsValue::from_str(&e.to_string()))
}

/// `log₁₀|ψ e^{−λz}|` on an `n × n` grid over `[−extent, extent]²`, row by row
/// from the top. Pixels on a center are `NaN`.
#[wasm_bindgen]
pub fn modulus_field(roots: &[f64], lambda_re: f64, lambda_im: f64, extent: f64, n: usize) -> Result<Vec<f64>, JsValue> {
    let fp = params(roots, lambda_re, lambda_im)?;
    let step = 2.0 * extent / (n.max(2) - 1) as f64;
    let mut out = Vec::with_capacity(n * n);
    for row in 0..n {
        let y = extent - row as f64 * step;
        for col in 0..n {
            let z = Complex64::new(-extent + col as f64 * step, y);
            let v = (1.0 + fp.modulation(z)).norm().log10();
            out.push(if v.is_finite() { v } else { f64::NAN });
        }
    }
    Ok(out)
}

/// Root trajectories of the flow `P_t = ±P_zzz`.
#[wasm_bindgen]
pub struct Trajectory {
    degree: usize,
    times: Vec<f64>,
    coords: Vec<f64>,
    event_times: Vec<f64>,
}

#[wasm_bindgen]
impl Trajectory {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    /// Per time, `re, im` of every root in path order.
    pub fn coords(&self) -> Vec<f64> {
        self.coords.clone()
    }

    pub fn event_times(&self) -> Vec<f64> {
        self.event_times.clone()
    }
}

#[wasm_bindgen]
pub fn root_trajectories(roots: &[f64], t0: f64, t1: f64, steps: usize, flow_sign: i32) -> Result<Trajectory, JsValue> {
    let sign = FlowSign::try_from(flow_sign).map_err(|v| JsValue::from_str(&format!("flow sign {v}")))?;
    let p0 = ComplexPoly::from_roots(&roots_from_flat(roots)?);
    let rt = NvFlow::new(sign)
        .trajectory(&p0, t0, t1, steps, 1e-3)
        .map_err(|e| JsValue::from_str(&e.to_string()))?;
    let coords = (0..rt.times.len())
        .flat_map(|i| rt.positions_at(i))
        .flat_map(|z| [z.re, z.im])
        .collect();
    Ok(Trajectory {
        degree: rt.degree(),
        times: rt.times,
        coords,
        event_times: rt.events.iter().map(|e| e.t_approx).collect(),
    })
}

/// `[re a, im a, re b, im b, re(−2N/λ), im(−2N/λ), count]`; the count is
/// `NaN` when `a` is inconsistent with an integer number of centers.
#[wasm_bindgen]
pub fn scattering(roots: &[f64], lambda_re: f64, lambda_im: f64) -> Result<Vec<f64>, JsValue> {
    let fp = params(roots, lambda_re, lambda_im)?;
    let est = estimate(&fp).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let want = expected_a(fp.degree(), fp.lambda()).map_err(|e| JsValue::from_str(&e.to_string()))?;
    let count = count_deltas(est.a, fp.lambda()).map_or(f64::NAN, |n| n as f64);
    Ok(vec![est.a.re, est.a.im, est.b.re, est.b.im, want.re, want.im, count])
}
