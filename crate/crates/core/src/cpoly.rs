//! Dense complex polynomials in ascending coefficient order.
//!
//! [`Poly`] is a general polynomial (used for derivatives and intermediate
//! sums), [`ComplexPoly`] is the monic polynomial `P(z) = ∏ (z - z_k)` that
//! generates the transformation. Roots are found all at once with the
//! Aberth–Ehrlich iteration.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;

/// Fractional part of the golden ratio; rotates the initial guesses off any
/// symmetry axis of the coefficients.
const GUESS_ROTATION: f64 = 0.618_033_988_749_894_8;

/// A polynomial with complex coefficients, lowest degree first.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has an empty
/// coefficient list.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    pub fn derivative(&self, k: usize) -> Poly {
        Poly::new(derivative_coeffs(&self.coeffs, k))
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(zero)
                        + rhs.coeffs.get(i).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<Complex64> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: Complex64) -> Poly {
        self.scale(rhs)
    }
}

/// Monic polynomial `P(z) = ∏_{k=1}^N (z - z_k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    /// The constant polynomial 1.
    pub fn one() -> Self {
        ComplexPoly {
            coeffs: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            // multiply by (z - r)
            coeffs.push(Complex64::new(0.0, 0.0));
            for i in (0..coeffs.len()).rev() {
                let lower = if i > 0 { coeffs[i - 1] } else { Complex64::new(0.0, 0.0) };
                coeffs[i] = lower - r * coeffs[i];
            }
        }
        ComplexPoly { coeffs }
    }

    /// Ascending coefficients; the last one must be exactly 1. Trailing zeros
    /// above the leading 1 are dropped first.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        let trimmed = Poly::new(coeffs);
        match trimmed.coeffs.last() {
            Some(&c) if c == Complex64::new(1.0, 0.0) => Ok(ComplexPoly {
                coeffs: trimmed.coeffs,
            }),
            Some(&c) => Err(Error::NotMonic { leading: c }),
            None => Err(Error::NotMonic {
                leading: Complex64::new(0.0, 0.0),
            }),
        }
    }

    /// Builds a monic polynomial from a general one whose leading coefficient
    /// is already 1. Used by the flow, which never touches the top coefficient.
    pub(crate) fn from_poly_unchecked(p: Poly) -> Self {
        debug_assert_eq!(p.coeffs.last(), Some(&Complex64::new(1.0, 0.0)));
        ComplexPoly { coeffs: p.coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    pub fn derivative(&self, k: usize) -> Poly {
        Poly::new(derivative_coeffs(&self.coeffs, k))
    }

    pub fn as_poly(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.clone(),
        }
    }

    /// `Σ |c_j| |z|^j`, the magnitude scale of a Horner evaluation at `z`.
    pub fn evaluation_scale(&self, z: Complex64) -> f64 {
        horner_abs(&self.coeffs, z.norm())
    }

    /// All roots with the default tolerance and sweep budget.
    pub fn roots(&self) -> Result<RootSet> {
        self.roots_with(DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER)
    }

    /// All roots by Aberth–Ehrlich iteration.
    ///
    /// A root estimate is accepted once `|p(z)| < tol · max(1, Σ|c_j||z|^j)`.
    pub fn roots_with(&self, tol: f64, max_iter: usize) -> Result<RootSet> {
        let outcome = aberth(self, &initial_guesses(self, 0.0), tol, max_iter);
        if outcome.converged {
            Ok(RootSet {
                roots: outcome.roots,
            })
        } else {
            Err(Error::NonConvergence {
                iterations: outcome.iterations,
                worst_residual: outcome.worst_residual,
            })
        }
    }
}

impl TryFrom<Vec<Complex64>> for ComplexPoly {
    type Error = Error;

    fn try_from(coeffs: Vec<Complex64>) -> Result<Self> {
        ComplexPoly::from_coeffs(coeffs)
    }
}

impl From<ComplexPoly> for Vec<Complex64> {
    fn from(p: ComplexPoly) -> Self {
        p.coeffs
    }
}

/// Roots of a polynomial, repeated according to multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }

    pub fn min_separation(&self) -> Result<f64> {
        min_root_separation(&self.roots)
    }
}

/// Minimum pairwise distance between roots.
pub fn min_root_separation(roots: &[Complex64]) -> Result<f64> {
    if roots.len() < 2 {
        return Err(Error::InsufficientRoots { count: roots.len() });
    }
    let mut best = f64::INFINITY;
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            best = best.min((a - b).norm());
        }
    }
    Ok(best)
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn horner_abs(coeffs: &[Complex64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Coefficients of the `k`-th derivative. The falling factorials are
/// integers, exact in f64 for every degree this crate deals with.
pub(crate) fn derivative_coeffs(coeffs: &[Complex64], k: usize) -> Vec<Complex64> {
    if k >= coeffs.len() {
        return Vec::new();
    }
    (k..coeffs.len())
        .map(|j| {
            let falling: f64 = ((j - k + 1)..=j).map(|m| m as f64).product();
            coeffs[j] * falling
        })
        .collect()
}

pub(crate) struct AberthOutcome {
    pub roots: Vec<Complex64>,
    pub iterations: usize,
    pub worst_residual: f64,
    pub converged: bool,
}

/// Guesses on the circle of radius `1 + max|c_j|`, rotated by an irrational
/// fraction of a turn plus `extra_rotation` radians.
pub(crate) fn initial_guesses(p: &ComplexPoly, extra_rotation: f64) -> Vec<Complex64> {
    let n = p.degree();
    let radius = 1.0 + p.coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let offset = 2.0 * PI * GUESS_ROTATION / n.max(1) as f64 + extra_rotation;
    (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + offset))
        .collect()
}

fn scaled_residual(p: &ComplexPoly, z: Complex64) -> f64 {
    p.evaluate(z).norm() / p.evaluation_scale(z).max(1.0)
}

pub(crate) fn aberth(
    p: &ComplexPoly,
    guesses: &[Complex64],
    tol: f64,
    max_iter: usize,
) -> AberthOutcome {
    let n = p.degree();
    let mut z = guesses.to_vec();
    if n == 0 {
        return AberthOutcome {
            roots: z,
            iterations: 0,
            worst_residual: 0.0,
            converged: true,
        };
    }
    if n == 1 {
        return AberthOutcome {
            roots: vec![-p.coeffs[0]],
            iterations: 0,
            worst_residual: 0.0,
            converged: true,
        };
    }
    let dp = derivative_coeffs(&p.coeffs, 1);
    let mut done = vec![false; n];
    let mut iterations = 0;
    while iterations < max_iter && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let value = p.evaluate(z[i]);
            if scaled_residual(p, z[i]) < tol {
                done[i] = true;
            }
            if value == Complex64::new(0.0, 0.0) {
                done[i] = true;
                continue;
            }
            let ratio = value / horner(&dp, z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == Complex64::new(0.0, 0.0) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
            } else if ratio.is_finite() {
                z[i] -= ratio;
            }
        }
    }
    let worst_residual = z
        .iter()
        .map(|&r| scaled_residual(p, r))
        .fold(0.0, f64::max);
    AberthOutcome {
        converged: worst_residual < tol,
        roots: z,
        iterations,
        worst_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn contains(set: &[Complex64], target: Complex64, tol: f64) -> bool {
        set.iter().any(|r| (r - target).norm() < tol)
    }

    #[test]
    fn from_roots_examples() {
        assert_eq!(ComplexPoly::from_roots(&[]).coeffs(), &[c(1.0, 0.0)]);
        assert_eq!(
            ComplexPoly::from_roots(&[c(0.0, 0.0), c(0.0, 0.0)]).coeffs(),
            &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
        assert_eq!(
            ComplexPoly::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).coeffs(),
            &[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
    }

    #[test]
    fn from_coeffs_requires_monic() {
        assert!(matches!(
            ComplexPoly::from_coeffs(vec![c(1.0, 0.0), c(2.0, 0.0)]),
            Err(Error::NotMonic { .. })
        ));
        assert!(ComplexPoly::from_coeffs(vec![]).is_err());
        let p = ComplexPoly::from_coeffs(vec![c(3.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn evaluate_examples() {
        let p = ComplexPoly::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(p.evaluate(c(2.0, 0.0)), c(3.0, 0.0));
        let z1 = c(0.3, -1.7);
        assert_eq!(ComplexPoly::from_roots(&[z1]).evaluate(z1), c(0.0, 0.0));
    }

    #[test]
    fn derivative_examples() {
        let z3 = ComplexPoly::from_roots(&[c(0.0, 0.0); 3]);
        assert_eq!(z3.derivative(2).coeffs(), &[c(0.0, 0.0), c(6.0, 0.0)]);
        let p = ComplexPoly::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(p.derivative(0), p.as_poly());
        assert!(p.derivative(3).is_zero());
        assert_eq!(p.derivative(3).degree(), None);
    }

    #[test]
    fn roots_of_known_polynomials() {
        let p = ComplexPoly::from_coeffs(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = p.roots().unwrap();
        assert_eq!(r.len(), 2);
        assert!(contains(&r.roots, c(0.0, 1.0), 1e-12));
        assert!(contains(&r.roots, c(0.0, -1.0), 1e-12));

        let p = ComplexPoly::from_coeffs(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        let r = p.roots().unwrap();
        assert!(contains(&r.roots, c(-1.0, 0.0), 1e-12));
        assert!(contains(&r.roots, Complex64::from_polar(1.0, PI / 3.0), 1e-12));
        assert!(contains(&r.roots, Complex64::from_polar(1.0, -PI / 3.0), 1e-12));
    }

    #[test]
    fn roots_are_deterministic() {
        let p = ComplexPoly::from_roots(&[c(0.1, 2.0), c(-1.3, 0.4), c(2.2, -0.7), c(0.0, 0.0)]);
        assert_eq!(p.roots().unwrap(), p.roots().unwrap());
    }

    #[test]
    fn multiple_root_clusters() {
        let p = ComplexPoly::from_roots(&[c(0.0, 0.0); 3]);
        let r = p.roots().unwrap();
        assert!(r.roots.iter().all(|z| z.norm() < 1e-3));
    }

    #[test]
    fn non_convergence_is_reported() {
        let p = ComplexPoly::from_roots(&[c(1.0, 1.0), c(-2.0, 0.5), c(3.0, -1.0)]);
        let err = p.roots_with(1e-12, 1).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { iterations: 1, .. }));
    }

    #[test]
    fn degree_zero_and_one() {
        assert!(ComplexPoly::one().roots().unwrap().is_empty());
        let r = ComplexPoly::from_roots(&[c(5.0, -2.0)]).roots().unwrap();
        assert_eq!(r.roots, vec![c(5.0, -2.0)]);
    }

    #[test]
    fn separation_examples() {
        let r = [c(0.0, 0.0), c(1.0, 0.0), c(5.0, 0.0)];
        assert_eq!(min_root_separation(&r).unwrap(), 1.0);
        assert_eq!(min_root_separation(&[c(0.0, 0.0); 2]).unwrap(), 0.0);
        assert!(matches!(
            min_root_separation(&[c(1.0, 0.0)]),
            Err(Error::InsufficientRoots { count: 1 })
        ));
    }

    #[test]
    fn serde_rejects_non_monic() {
        let json = "[[1.0,0.0],[2.0,0.0]]";
        assert!(serde_json::from_str::<ComplexPoly>(json).is_err());
        let p = ComplexPoly::from_roots(&[c(1.0, 2.0)]);
        let back: ComplexPoly = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
