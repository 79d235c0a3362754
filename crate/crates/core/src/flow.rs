//! Novikov–Veselov dynamics of the polynomial generating function.
//!
//! For the zero seed `U = V = 0` the time-dependent generator `P(z, t)` obeys
//! `∂P/∂t = ∂³P/∂z³`. Triple differentiation is nilpotent on polynomials, so
//! the flow is the terminating series `P(t) = Σ_m tᵐ/m! (∂³)ᵐ P₀`, evaluated
//! directly on coefficients. The roots of `P(·, t)` carry the moving centers
//! of `Ũ(z, t) = −8π Σ δ(z − z_k(t))`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cpoly::{self, min_root_separation, ComplexPoly, Poly, DEFAULT_MAX_ITER, DEFAULT_ROOT_TOL};
use crate::error::{Error, Result};
use crate::transform::{transformed_potential, DeltaPotential};

/// Sign in front of `∂³P/∂z³`.
///
/// `Plus` is the flow `P_t = P_zzz`. Substituting `A = ∂³ + ∂̄³` into
/// `(∂_t + A)ω = 0` literally gives `P_t = −P_zzz`, available as `Minus`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowSign {
    #[default]
    Plus,
    Minus,
}

impl FlowSign {
    pub fn value(self) -> f64 {
        match self {
            FlowSign::Plus => 1.0,
            FlowSign::Minus => -1.0,
        }
    }
}

impl TryFrom<i32> for FlowSign {
    type Error = i32;

    fn try_from(v: i32) -> std::result::Result<Self, i32> {
        match v {
            1 => Ok(FlowSign::Plus),
            -1 => Ok(FlowSign::Minus),
            other => Err(other),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowState {
    pub poly: ComplexPoly,
    pub t: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollisionEvent {
    pub t_approx: f64,
    /// Path indices (0-based) of the merging roots.
    pub roots_involved: Vec<usize>,
    pub min_separation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootTrajectory {
    pub times: Vec<f64>,
    /// `paths[k][i]` is root `k` at `times[i]`.
    pub paths: Vec<Vec<Complex64>>,
    pub events: Vec<CollisionEvent>,
}

impl RootTrajectory {
    pub fn degree(&self) -> usize {
        self.paths.len()
    }

    /// Root positions at the `i`-th sample time.
    pub fn positions_at(&self, i: usize) -> Vec<Complex64> {
        self.paths.iter().map(|p| p[i]).collect()
    }
}

/// Coefficients of `∂³p`.
pub fn d3_apply(coeffs: &[Complex64]) -> Vec<Complex64> {
    cpoly::derivative_coeffs(coeffs, 3)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NvFlow {
    pub sign: FlowSign,
}

impl NvFlow {
    pub fn new(sign: FlowSign) -> Self {
        NvFlow { sign }
    }

    /// Exact `P(·, t)`; the series stops once `(∂³)ᵐ P₀` vanishes.
    pub fn evolve(&self, p0: &ComplexPoly, t: f64) -> ComplexPoly {
        let s = self.sign.value() * t;
        let mut acc = p0.coeffs().to_vec();
        let mut term = acc.clone();
        let mut m = 0usize;
        loop {
            term = d3_apply(&term);
            if term.is_empty() {
                break;
            }
            m += 1;
            let factor = s / m as f64;
            for (a, c) in acc.iter_mut().zip(term.iter_mut()) {
                *c *= factor;
                *a += *c;
            }
        }
        ComplexPoly::from_poly_unchecked(Poly::new(acc))
    }

    pub fn state(&self, p0: &ComplexPoly, t: f64) -> FlowState {
        FlowState {
            poly: self.evolve(p0, t),
            t,
        }
    }

    /// Largest coefficient of the central time difference minus the flow
    /// right-hand side at `t`.
    pub fn verify_flow(&self, p0: &ComplexPoly, t: f64, dt: f64) -> f64 {
        let ahead = self.evolve(p0, t + dt);
        let behind = self.evolve(p0, t - dt);
        let rhs = d3_apply(self.evolve(p0, t).coeffs());
        let zero = Complex64::new(0.0, 0.0);
        ahead
            .coeffs()
            .iter()
            .zip(behind.coeffs())
            .enumerate()
            .map(|(j, (a, b))| {
                let dpdt = (a - b) / (2.0 * dt);
                (dpdt - self.sign.value() * rhs.get(j).copied().unwrap_or(zero)).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn potential_at(&self, p0: &ComplexPoly, t: f64) -> Result<DeltaPotential> {
        Ok(transformed_potential(&self.evolve(p0, t))?.at_time(t))
    }

    /// Roots of `P(·, t)` on `steps + 1` equally spaced times, matched across
    /// times by greedy nearest-neighbour assignment.
    ///
    /// A time where the minimum root separation drops below `collision_tol`
    /// is flagged; each maximal run of flagged times yields one
    /// [`CollisionEvent`]. Matches into or out of a flagged time are not
    /// checked for ambiguity, and labels may permute across a collision.
    pub fn trajectory(
        &self,
        p0: &ComplexPoly,
        t0: f64,
        t1: f64,
        steps: usize,
        collision_tol: f64,
    ) -> Result<RootTrajectory> {
        if !(t0 < t1) || steps == 0 || !t0.is_finite() || !t1.is_finite() {
            return Err(Error::InvalidTimeRange { t0, t1, steps });
        }
        let n = p0.degree();
        if n == 0 {
            return Err(Error::InsufficientRoots { count: 0 });
        }
        let times: Vec<f64> = (0..=steps)
            .map(|i| t0 + (t1 - t0) * i as f64 / steps as f64)
            .collect();

        let mut paths: Vec<Vec<Complex64>> = vec![Vec::with_capacity(times.len()); n];
        let mut separations = Vec::with_capacity(times.len());
        let mut flagged = Vec::with_capacity(times.len());
        let mut prev: Option<Vec<Complex64>> = None;

        for &t in &times {
            let found = roots_near_collision(&self.evolve(p0, t), collision_tol)?;
            let sep = if n >= 2 { min_root_separation(&found)? } else { f64::INFINITY };
            let flag = sep < collision_tol;
            let ordered = match &prev {
                None => found,
                Some(last) => {
                    let unreliable = flag || flagged.last().copied().unwrap_or(false);
                    let margin = if n >= 2 {
                        0.25 * min_root_separation(last)?
                    } else {
                        0.0
                    };
                    match_roots(last, &found, margin, unreliable)
                        .map_err(|path| Error::AmbiguousMatching { t, path })?
                }
            };
            for (path, z) in paths.iter_mut().zip(&ordered) {
                path.push(*z);
            }
            separations.push(sep);
            flagged.push(flag);
            prev = Some(ordered);
        }

        let mut events = Vec::new();
        let mut i = 0;
        while i < times.len() {
            if !flagged[i] {
                i += 1;
                continue;
            }
            let start = i;
            while i < times.len() && flagged[i] {
                i += 1;
            }
            let best = (start..i)
                .min_by(|&a, &b| separations[a].total_cmp(&separations[b]))
                .unwrap_or(start);
            let positions: Vec<Complex64> = paths.iter().map(|p| p[best]).collect();
            events.push(CollisionEvent {
                t_approx: times[best],
                roots_involved: colliding_cluster(&positions, collision_tol),
                min_separation: separations[best],
            });
        }

        Ok(RootTrajectory { times, paths, events })
    }
}

/// Roots, tolerating non-convergence when the estimates have clustered below
/// `collision_tol` (a near-multiple root), after one retry from a rotated
/// start.
fn roots_near_collision(p: &ComplexPoly, collision_tol: f64) -> Result<Vec<Complex64>> {
    let first = cpoly::aberth(p, &cpoly::initial_guesses(p, 0.0), DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER);
    if first.converged {
        return Ok(first.roots);
    }
    let retry = cpoly::aberth(p, &cpoly::initial_guesses(p, 0.5), DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER);
    if retry.converged {
        return Ok(retry.roots);
    }
    if retry.roots.len() >= 2 && min_root_separation(&retry.roots)? < collision_tol {
        return Ok(retry.roots);
    }
    Err(Error::NonConvergence {
        iterations: retry.iterations,
        worst_residual: retry.worst_residual,
    })
}

/// Greedy global nearest-neighbour matching: pairs are taken in order of
/// increasing distance. Returns `found` reordered so index `k` continues path
/// `k`, or the index of the first path whose runner-up candidate is within
/// `margin` of its chosen match.
fn match_roots(
    prev: &[Complex64],
    found: &[Complex64],
    margin: f64,
    unreliable: bool,
) -> std::result::Result<Vec<Complex64>, usize> {
    let n = prev.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, p) in prev.iter().enumerate() {
        for (j, f) in found.iter().enumerate() {
            pairs.push(((p - f).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut assigned: Vec<Option<usize>> = vec![None; n];
    let mut taken = vec![false; n];
    for &(_, i, j) in &pairs {
        if assigned[i].is_none() && !taken[j] {
            assigned[i] = Some(j);
            taken[j] = true;
        }
    }

    if !unreliable && n >= 2 {
        for i in 0..n {
            let chosen = assigned[i].unwrap_or(i);
            let d1 = (prev[i] - found[chosen]).norm();
            let d2 = found
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != chosen)
                .map(|(_, f)| (prev[i] - f).norm())
                .fold(f64::INFINITY, f64::min);
            if d2 - d1 < margin {
                return Err(i);
            }
        }
    }
    Ok(assigned.iter().enumerate().map(|(i, j)| found[j.unwrap_or(i)]).collect())
}

/// The closest pair plus every root within `tol` of a cluster member.
fn colliding_cluster(positions: &[Complex64], tol: f64) -> Vec<usize> {
    let n = positions.len();
    let mut best = (f64::INFINITY, 0, 0);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (positions[i] - positions[j]).norm();
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    if n < 2 {
        return Vec::new();
    }
    let mut members = vec![best.1, best.2];
    let mut grew = true;
    while grew {
        grew = false;
        for k in 0..n {
            if !members.contains(&k)
                && members.iter().any(|&m| (positions[m] - positions[k]).norm() < tol)
            {
                members.push(k);
                grew = true;
            }
        }
    }
    members.sort_unstable();
    members
}

/// [`NvFlow::evolve`] with the default sign.
pub fn evolve(p0: &ComplexPoly, t: f64) -> ComplexPoly {
    NvFlow::default().evolve(p0, t)
}

/// [`NvFlow::verify_flow`] with the default sign.
pub fn verify_flow(p0: &ComplexPoly, t: f64, dt: f64) -> f64 {
    NvFlow::default().verify_flow(p0, t, dt)
}

/// [`NvFlow::trajectory`] with the default sign.
pub fn trajectory(
    p0: &ComplexPoly,
    t0: f64,
    t1: f64,
    steps: usize,
    collision_tol: f64,
) -> Result<RootTrajectory> {
    NvFlow::default().trajectory(p0, t0, t1, steps, collision_tol)
}

/// [`NvFlow::potential_at`] with the default sign.
pub fn potential_at(p0: &ComplexPoly, t: f64) -> Result<DeltaPotential> {
    NvFlow::default().potential_at(p0, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn monomial(n: usize) -> ComplexPoly {
        ComplexPoly::from_roots(&vec![c(0.0, 0.0); n])
    }

    #[test]
    fn d3_examples() {
        assert_eq!(d3_apply(monomial(3).coeffs()), vec![c(6.0, 0.0)]);
        assert_eq!(d3_apply(monomial(4).coeffs()), vec![c(0.0, 0.0), c(24.0, 0.0)]);
        assert!(d3_apply(&[c(1.0, 2.0), c(3.0, 0.0), c(1.0, 0.0)]).is_empty());
    }

    #[test]
    fn evolve_examples() {
        let t = 0.37;
        let p = evolve(&monomial(3), t);
        assert_eq!(p.coeffs(), &[c(6.0 * t, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);

        let p = evolve(&monomial(4), t);
        assert_eq!(p.coeffs(), &[c(0.0, 0.0), c(24.0 * t, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);

        let quad = ComplexPoly::from_roots(&[c(1.0, 1.0), c(-2.0, 0.5)]);
        assert_eq!(evolve(&quad, 12.5), quad);
    }

    #[test]
    fn minus_sign_reverses_time() {
        let p0 = ComplexPoly::from_roots(&[c(0.1, 0.0), c(0.0, 1.0), c(-1.0, 0.3), c(0.5, -0.5), c(2.0, 0.0)]);
        let minus = NvFlow::new(FlowSign::Minus);
        assert_eq!(minus.evolve(&p0, 0.4), evolve(&p0, -0.4));
        assert!(minus.verify_flow(&p0, 0.2, 1e-4) < 1e-8);
        assert_eq!(FlowSign::try_from(-1), Ok(FlowSign::Minus));
        assert_eq!(FlowSign::try_from(2), Err(2));
    }

    #[test]
    fn verify_flow_examples() {
        assert!(verify_flow(&monomial(3), 0.8, 1e-4) < 1e-8);
        let quad = ComplexPoly::from_roots(&[c(1.0, 1.0), c(-2.0, 0.5)]);
        assert_eq!(verify_flow(&quad, 3.0, 1e-3), 0.0);
    }

    #[test]
    fn trajectory_static_for_degree_two() {
        let quad = ComplexPoly::from_roots(&[c(1.0, 1.0), c(-2.0, 0.5)]);
        let rt = trajectory(&quad, 0.0, 1.0, 10, 1e-6).unwrap();
        assert!(rt.events.is_empty());
        for path in &rt.paths {
            assert!(path.iter().all(|z| (z - path[0]).norm() < 1e-12));
        }
    }

    #[test]
    fn trajectory_cube_collision() {
        let rt = trajectory(&monomial(3), -1.0, 1.0, 400, 1e-3).unwrap();
        assert_eq!(rt.events.len(), 1);
        let event = &rt.events[0];
        assert!(event.t_approx.abs() < 1e-12);
        assert_eq!(event.roots_involved, vec![0, 1, 2]);
    }

    #[test]
    fn trajectory_rejects_bad_ranges() {
        let p = monomial(3);
        assert!(matches!(trajectory(&p, 1.0, 0.0, 10, 1e-6), Err(Error::InvalidTimeRange { .. })));
        assert!(matches!(trajectory(&p, 0.0, 1.0, 0, 1e-6), Err(Error::InvalidTimeRange { .. })));
        assert!(matches!(
            trajectory(&ComplexPoly::one(), 0.0, 1.0, 4, 1e-6),
            Err(Error::InsufficientRoots { count: 0 })
        ));
    }

    #[test]
    fn coarse_steps_are_ambiguous() {
        // Two roots passing close to each other with one giant step.
        let p0 = ComplexPoly::from_roots(&[c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.05), c(3.0, 3.0)]);
        let result = trajectory(&p0, 0.0, 40.0, 2, 1e-9);
        assert!(matches!(result, Err(Error::AmbiguousMatching { .. })), "{result:?}");
    }

    #[test]
    fn matching_reorders_to_nearest() {
        let prev = [c(0.0, 0.0), c(1.0, 0.0)];
        let found = [c(1.01, 0.0), c(0.01, 0.0)];
        assert_eq!(match_roots(&prev, &found, 0.25, false).unwrap(), vec![found[1], found[0]]);
        assert_eq!(match_roots(&prev, &[c(0.5, 0.0), c(0.5, 0.01)], 0.25, false), Err(0));
    }

    #[test]
    fn potential_examples() {
        let u = potential_at(&monomial(3), 1.0).unwrap();
        assert_eq!(u.time, Some(1.0));
        assert_eq!(u.len(), 3);
        for z in &u.centers {
            assert!((z * z * z + 6.0).norm() < 1e-10);
        }
        assert!(potential_at(&ComplexPoly::one(), 5.0).unwrap().is_empty());
        let u = potential_at(&ComplexPoly::from_roots(&[c(5.0, 0.0)]), -3.0).unwrap();
        assert_eq!(u.centers, vec![c(5.0, 0.0)]);
    }
}
