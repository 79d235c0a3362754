use moutard::wirtinger::{d_z, d_zbar, laplacian, stencil_points};
use moutard::{ComplexPoly, Complex64, StencilConfig};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| c(re, im))
}

/// Smooth, neither holomorphic nor anti-holomorphic.
fn mixed(w: Complex64) -> Complex64 {
    (0.5 * w).exp() * w.conj() * w.conj() + c(w.re.sin() * w.im, 0.0)
}

#[test]
fn laplacian_agrees_with_nested_wirtinger() {
    for z in [c(0.3, -0.2), c(1.5, 1.0), c(-2.0, 0.7)] {
        let cfg = StencilConfig::new(1e-3, true).unwrap();
        let lap = laplacian(mixed, z, cfg).unwrap();
        let nested = d_zbar(|w| d_z(mixed, w, cfg).unwrap(), z, cfg).unwrap();
        // rounding ~ ε|f|/h² plus O(h⁴) truncation on both routes
        assert!((lap - 4.0 * nested).norm() < 1e-6, "{z}: {lap} vs {}", 4.0 * nested);
    }
}

#[test]
fn laplacian_of_mixed_function_matches_hand_calculus() {
    // Δ(e^{z/2} z̄²) = 4∂̄∂(...) = 4 · (1/2) e^{z/2} · 2z̄ = 4 e^{z/2} z̄
    // Δ(sin x · y) = −sin x · y
    let z = c(0.8, -0.4);
    let expected = 4.0 * (0.5 * z).exp() * z.conj() + c(-z.re.sin() * z.im, 0.0);
    let got = laplacian(mixed, z, StencilConfig::adaptive_second_order(z)).unwrap();
    assert!((got - expected).norm() < 1e-7);
}

proptest! {
    #[test]
    fn halving_step_is_stable_for_entire_functions(z in complex_in(3.5), a in complex_in(1.0)) {
        prop_assume!(z.norm() <= 5.0);
        let f = move |w: Complex64| (a * w).exp() + w * w * w;
        let cfg = StencilConfig::adaptive(z);
        let half = StencilConfig { h: cfg.h / 2.0, ..cfg };
        // Evaluation rounding of f: e^{aw} inherits ε|aw| from its argument,
        // w³ carries about 3ε.
        let magnitude = stencil_points(z, cfg)
            .into_iter()
            .map(|w| (a * w).exp().norm() * (1.0 + (a * w).norm()) + 3.0 * w.norm().powi(3))
            .fold(0.0, f64::max);
        // Derivative rounding is ε·|f|/step at the finest step sampled, which
        // with Richardson on the halved config is h/4.
        let finest = half.h / 2.0;
        let bound = 10.0 * f64::EPSILON * magnitude / finest;
        let dz = (d_z(f, z, cfg).unwrap() - d_z(f, z, half).unwrap()).norm();
        let dzb = (d_zbar(f, z, cfg).unwrap() - d_zbar(f, z, half).unwrap()).norm();
        prop_assert!(dz < bound, "d_z moved {dz:e} > {bound:e}");
        prop_assert!(dzb < bound, "d_zbar moved {dzb:e} > {bound:e}");
    }

    #[test]
    fn zbar_derivative_annihilates_polynomials(
        roots in prop::collection::vec(complex_in(2.0), 0..7),
        z in complex_in(2.0),
    ) {
        let p = ComplexPoly::from_roots(&roots);
        let got = d_zbar(|w| p.evaluate(w), z, StencilConfig::adaptive(z)).unwrap();
        let slope = p.derivative(1).evaluate(z).norm();
        prop_assert!(got.norm() < 1e-9 * (1.0 + slope));
    }

    #[test]
    fn z_derivative_of_polynomial_matches_exact(
        roots in prop::collection::vec(complex_in(2.0), 1..7),
        z in complex_in(2.0),
    ) {
        let p = ComplexPoly::from_roots(&roots);
        let got = d_z(|w| p.evaluate(w), z, StencilConfig::adaptive(z)).unwrap();
        let exact = p.derivative(1).evaluate(z);
        // Horner rounding scales with Σ|c_j||w|^j, not |p(w)|
        let scale = 1.0 + stencil_points(z, StencilConfig::adaptive(z)).into_iter().map(|w| p.evaluation_scale(w)).fold(0.0, f64::max);
        prop_assert!((got - exact).norm() < 1e-9 * scale);
    }
}
