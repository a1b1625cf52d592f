use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

use kink_core::dispersion::{
    bifurcation_point, eval_d, imaginary_residual, imaginary_roots, imaginary_roots_with_step,
    zero_state_growth,
};

#[test]
fn c_zero_roots_are_closed_form() {
    let roots = imaginary_roots(0.0, 1.0, 7.0).unwrap();
    let mut want: Vec<f64> = (0..3)
        .flat_map(|n| [n as f64 * PI - PI / 6.0, n as f64 * PI + PI / 6.0])
        .filter(|k| *k > 0.0 && *k <= 7.0)
        .collect();
    want.sort_by(f64::total_cmp);
    assert_eq!(roots.len(), want.len(), "{roots:?}");
    for (a, b) in roots.iter().zip(&want) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn roots_are_zeros_of_the_full_relation() {
    for (c, h) in [(0.0, 1.0), (0.3, 0.8), (0.1, 1.5), (0.9, 0.05)] {
        for k in imaginary_roots(c, h, 20.0).unwrap() {
            let d = eval_d(Complex64::new(0.0, 2.0 * k), c, h);
            assert!(d.norm() < 1e-10, "c={c} h={h} K={k} D={d}");
        }
    }
}

#[test]
fn roots_stable_under_grid_refinement() {
    for (c, h) in [(0.2, 0.7), (0.05, 1.2)] {
        let coarse = imaginary_roots_with_step(c, h, 25.0, 0.01).unwrap();
        let fine = imaginary_roots_with_step(c, h, 25.0, 0.005).unwrap();
        assert_eq!(coarse.len(), fine.len());
        for (a, b) in coarse.iter().zip(&fine) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn bifurcation_curve_is_double_root_along_p() {
    for i in 1..=50 {
        let p = FRAC_PI_2 * i as f64 / 51.0;
        let bp = bifurcation_point(p).unwrap();
        let g = imaginary_residual(p, bp.c, bp.h);
        let dg = (2.0 * p).sin() - 2.0 * bp.c * bp.c * p;
        assert!(g.abs() < 1e-10 && dg.abs() < 1e-10, "P={p}: g={g} g'={dg}");
    }
    let bp = bifurcation_point(0.05).unwrap();
    let ratio = bp.h / bp.h_star_asymptote();
    assert!((0.99..=1.01).contains(&ratio));
}

#[test]
fn long_wave_growth_is_one() {
    for h in [0.1, 0.5, 1.0, 1.9] {
        assert_eq!(zero_state_growth(0.0, h).unwrap(), 1.0);
    }
}

proptest! {
    #[test]
    fn imaginary_residual_is_quarter_of_d(k in 0.0f64..30.0, c in 0.0f64..1.0, h in 0.0f64..2.0) {
        let d = eval_d(Complex64::new(0.0, 2.0 * k), c, h);
        let g = imaginary_residual(k, c, h);
        prop_assert!(d.im.abs() < 1e-12);
        prop_assert!((d.re + 4.0 * g).abs() < 1e-9 * (1.0 + k * k));
    }
}
