//! Linear dispersion of the advance-delay problem near the zero state.
//!
//! `D(Lambda; c, h) = 2 (cosh Lambda - 1) + h^2 - c^2 Lambda^2`. Purely imaginary
//! roots `Lambda = 2iK` solve `sin^2 K = h^2/4 + c^2 K^2`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::{Error, Result};

/// Bracketing grid step in `K` for [`imaginary_roots`].
pub const ROOT_GRID_STEP: f64 = if 0.01 < PI / 64.0 { 0.01 } else { PI / 64.0 };

/// Absolute tolerance on the defining residuals of boundary labels.
pub const BOUNDARY_TOL: f64 = 1e-12;

pub fn eval_d(lambda: Complex64, c: f64, h: f64) -> Complex64 {
    2.0 * (lambda.cosh() - 1.0) + h * h - c * c * lambda * lambda
}

/// `g(K) = sin^2 K - h^2/4 - c^2 K^2`.
pub fn imaginary_residual(k: f64, c: f64, h: f64) -> f64 {
    let s = k.sin();
    s * s - 0.25 * h * h - c * c * k * k
}

fn imaginary_residual_dk(k: f64, c: f64) -> f64 {
    (2.0 * k).sin() - 2.0 * c * c * k
}

/// Non-negative imaginary-axis roots `K <= k_max`, ascending.
///
/// `K = 0` is included when `h = 0` (the double or quadruple zero eigenvalue).
/// Tangential (double) roots are picked up at local extrema of `g` that touch zero.
pub fn imaginary_roots(c: f64, h: f64, k_max: f64) -> Result<Vec<f64>> {
    imaginary_roots_with_step(c, h, k_max, ROOT_GRID_STEP)
}

pub fn imaginary_roots_with_step(c: f64, h: f64, k_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(k_max > 0.0) || !k_max.is_finite() {
        return Err(Error::invalid(format!(
            "k_max must be positive, got {k_max}"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::invalid(format!(
            "grid step must be positive, got {step}"
        )));
    }
    let (c, h) = (c.abs(), h.abs());
    let g = |k: f64| imaginary_residual(k, c, h);
    let n = (k_max / step).ceil() as usize;
    let nodes: Vec<f64> = (0..=n).map(|i| (i as f64 * step).min(k_max)).collect();
    let values: Vec<f64> = nodes.iter().map(|&k| g(k)).collect();

    let mut roots = Vec::new();
    if h == 0.0 {
        roots.push(0.0);
    }
    for i in 0..n {
        let (a, b) = (nodes[i], nodes[i + 1]);
        let (ga, gb) = (values[i], values[i + 1]);
        if i > 0 && ga == 0.0 {
            roots.push(a);
        } else if ga * gb < 0.0 {
            roots.push(bisect(&g, a, b));
        }
        // a tangential touch between nodes shows up as an extremum of g
        if i + 1 < n {
            let gc = values[i + 2];
            let is_max = gb > ga && gb > gc && gb <= 0.0;
            let is_min = gb < ga && gb < gc && gb >= 0.0;
            if is_max || is_min {
                let dg = |k: f64| imaginary_residual_dk(k, c);
                let k_star = bisect(&dg, a, nodes[i + 2]);
                if k_star > 0.0 && g(k_star).abs() < 1e-12 {
                    roots.push(k_star);
                }
            }
        }
    }
    if n > 0 && values[n] == 0.0 && nodes[n] > 0.0 {
        roots.push(nodes[n]);
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    Ok(roots)
}

/// Plain bisection to the floating-point limit; `f(a)` and `f(b)` must differ in sign.
fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let (ga, gb) = (f(a).abs(), f(b).abs());
    if ga <= gb {
        a
    } else {
        b
    }
}

/// A point `(c, h)` on the 1:1 resonance curve `h = h*(c)`, parametrised by the
/// double root `K = P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationPoint {
    pub p: f64,
    pub c: f64,
    pub h: f64,
}

impl BifurcationPoint {
    /// Leading-order asymptote `sqrt(3) (1 - c^2)` of the curve near `(1, 0)`.
    pub fn h_star_asymptote(&self) -> f64 {
        3f64.sqrt() * (1.0 - self.c * self.c)
    }
}

pub fn bifurcation_point(p: f64) -> Result<BifurcationPoint> {
    if !(p > 0.0 && p < FRAC_PI_2) {
        return Err(Error::invalid(format!("P must lie in (0, pi/2), got {p}")));
    }
    let (s, co) = p.sin_cos();
    let c2 = s * co / p;
    let h2 = 4.0 * s * (s - p * co);
    Ok(BifurcationPoint {
        p,
        c: c2.sqrt(),
        h: h2.sqrt(),
    })
}

/// Root configurations of `(1/12) L^4 - gamma L^2 + tau = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuarticLabel {
    FourReal,
    TwoRealTwoImaginary,
    FourImaginary,
    ComplexQuartet,
    DoubleZeroPlusPair,
    DoubleImaginaryPair,
    QuadrupleZero,
}

impl QuarticLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuarticLabel::FourReal => "FourReal",
            QuarticLabel::TwoRealTwoImaginary => "TwoRealTwoImaginary",
            QuarticLabel::FourImaginary => "FourImaginary",
            QuarticLabel::ComplexQuartet => "ComplexQuartet",
            QuarticLabel::DoubleZeroPlusPair => "DoubleZeroPlusPair",
            QuarticLabel::DoubleImaginaryPair => "DoubleImaginaryPair",
            QuarticLabel::QuadrupleZero => "QuadrupleZero",
        }
    }
}

impl std::fmt::Display for QuarticLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Label plus the distinct roots `Lambda_1`. Repeated roots appear once; the
/// label carries their multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticClass {
    pub label: QuarticLabel,
    pub roots: Vec<Complex64>,
}

pub fn quartic_residual(l: Complex64, gamma: f64, tau: f64) -> Complex64 {
    let l2 = l * l;
    l2 * l2 / 12.0 - gamma * l2 + tau
}

pub fn classify_quartic(gamma: f64, tau: f64) -> QuarticClass {
    let pm = |x: Complex64| {
        let r = x.sqrt();
        [r, -r]
    };
    if gamma.abs() < BOUNDARY_TOL && tau.abs() < BOUNDARY_TOL {
        return QuarticClass {
            label: QuarticLabel::QuadrupleZero,
            roots: vec![Complex64::new(0.0, 0.0)],
        };
    }
    if tau.abs() < BOUNDARY_TOL {
        let mut roots = vec![Complex64::new(0.0, 0.0)];
        roots.extend(pm(Complex64::new(12.0 * gamma, 0.0)));
        return QuarticClass {
            label: QuarticLabel::DoubleZeroPlusPair,
            roots,
        };
    }
    if gamma < 0.0 && (tau - 3.0 * gamma * gamma).abs() < BOUNDARY_TOL {
        return QuarticClass {
            label: QuarticLabel::DoubleImaginaryPair,
            roots: pm(Complex64::new(6.0 * gamma, 0.0)).to_vec(),
        };
    }

    // Lambda^2 solves x^2/12 - gamma x + tau = 0
    let disc = gamma * gamma - tau / 3.0;
    if disc < 0.0 {
        let w = Complex64::new(6.0 * gamma, 6.0 * (-disc).sqrt());
        let r = w.sqrt();
        let roots = vec![r, r.conj(), -r, -r.conj()];
        return QuarticClass {
            label: QuarticLabel::ComplexQuartet,
            roots,
        };
    }
    // stable quadratic formula for the two values of Lambda^2
    let sq = disc.sqrt();
    let q = 6.0 * (gamma + gamma.signum() * sq);
    let (x1, x2) = if q == 0.0 {
        (0.0, 0.0)
    } else {
        (q, 12.0 * tau / q)
    };
    let (small, large) = if x1.abs() <= x2.abs() {
        (x1, x2)
    } else {
        (x2, x1)
    };
    let label = match (small > 0.0, large > 0.0) {
        (true, true) => QuarticLabel::FourReal,
        (false, false) => QuarticLabel::FourImaginary,
        _ => QuarticLabel::TwoRealTwoImaginary,
    };
    let mut roots = pm(Complex64::new(small, 0.0)).to_vec();
    if (large - small).abs() > BOUNDARY_TOL * large.abs().max(1.0) {
        roots.extend(pm(Complex64::new(large, 0.0)));
    }
    QuarticClass { label, roots }
}

/// Growth rate squared `lambda^2 = 1 - (4/h^2) sin^2(kappa h / 2)` of lattice
/// waves near the zero state.
pub fn zero_state_growth(kappa: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::invalid(format!("h must be positive, got {h}")));
    }
    let s = (0.5 * kappa * h).sin();
    Ok(1.0 - 4.0 / (h * h) * s * s)
}

/// Smallest `kappa > 0` with zero growth, `(2/h) asin(h/2)`; `None` for `h > 2`
/// where every mode is unstable.
pub fn kappa_star(h: f64) -> Option<f64> {
    (h > 0.0 && h <= 2.0).then(|| 2.0 / h * (0.5 * h).asin())
}
