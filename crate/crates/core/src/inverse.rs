//! Inverse-method nonlinearity with the exact travelling kink `tanh(mu z)`.
//!
//! For `f(u) = u (1 - u^2)(1 + alpha u^2)/(1 - beta u^2)` with
//! `beta = tanh^2 mu`, `h^2 = 2 (tanh^2 mu - s^2 mu^2)` and
//! `alpha = s^2 mu^2 beta / (beta - s^2 mu^2)`, the profile `tanh(mu zeta)`
//! solves `s^2 phi'' = phi(zeta+1) - 2 phi(zeta) + phi(zeta-1) + h^2 f(phi)`
//! exactly. Near `(c, h) = (1, 0)` the same kink survives in the reduced
//! fourth-order equation with an extra `2 mu_s^4 phi^3 (1 - phi^2)` term.

use crate::model::Nonlinearity;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseParams {
    pub s: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub h2: f64,
}

impl InverseParams {
    pub fn nonlinearity(&self) -> Nonlinearity {
        Nonlinearity::Inverse {
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    /// Lattice step `h = sqrt(h^2)`.
    pub fn h(&self) -> f64 {
        self.h2.sqrt()
    }
}

pub fn inverse_params(s: f64, mu: f64) -> Result<InverseParams> {
    if !(s > 0.0) || !(mu > 0.0) || !s.is_finite() || !mu.is_finite() {
        return Err(Error::invalid(format!(
            "inverse method needs s > 0 and mu > 0, got s = {s}, mu = {mu}"
        )));
    }
    let beta = mu.tanh().powi(2);
    let sm2 = s * s * mu * mu;
    let h2 = 2.0 * (beta - sm2);
    if !(h2 > 0.0) {
        return Err(Error::NoRealLattice { s, mu, h2 });
    }
    let alpha = sm2 * beta / (beta - sm2);
    Ok(InverseParams {
        s,
        mu,
        alpha,
        beta,
        h2,
    })
}

/// Positive roots `mu_s` of `(4/3) mu^4 + 2 gamma_s mu^2 + tau = 0`, descending.
/// A double root at the saddle-node `tau = (3/4) gamma_s^2` is listed once.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MuSRoots {
    pub roots: Vec<f64>,
}

impl MuSRoots {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// `(4/3) mu^4 + 2 gamma_s mu^2 + tau`.
pub fn mu_s_residual(gamma_s: f64, tau: f64, mu: f64) -> f64 {
    let m2 = mu * mu;
    4.0 / 3.0 * m2 * m2 + 2.0 * gamma_s * m2 + tau
}

pub fn mu_s_roots(gamma_s: f64, tau: f64) -> MuSRoots {
    // (4/3) x^2 + 2 gamma_s x + tau = 0 with x = mu^2
    let disc = gamma_s * gamma_s - 4.0 / 3.0 * tau;
    let tol = 1e-12 * gamma_s * gamma_s;
    let mut xs = Vec::with_capacity(2);
    if disc.abs() <= tol {
        xs.push(-0.75 * gamma_s);
    } else if disc > 0.0 {
        let sq = disc.sqrt();
        // q = -(b + sign(b) sqrt(b^2 - 4ac)) / 2 with b = 2 gamma_s, a = 4/3
        let q = -(gamma_s + if gamma_s >= 0.0 { sq } else { -sq });
        if q != 0.0 {
            xs.push(0.75 * q);
            xs.push(tau / q);
        } else {
            xs.push(0.0);
        }
    }
    let mut roots: Vec<f64> = xs.into_iter().filter(|&x| x > 0.0).map(f64::sqrt).collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    MuSRoots { roots }
}

/// `tanh(mu z)` and its first four derivatives.
fn tanh_jet(mu: f64, z: f64) -> [f64; 5] {
    let t = (mu * z).tanh();
    let sech2 = 1.0 - t * t;
    let m2 = mu * mu;
    [
        t,
        mu * sech2,
        -2.0 * m2 * t * sech2,
        -2.0 * m2 * mu * sech2 * (1.0 - 3.0 * t * t),
        8.0 * m2 * m2 * t * sech2 * (2.0 - 3.0 * t * t),
    ]
}

/// Max over the grid of
/// `|(1/12) phi'''' - gamma_s phi'' + tau phi (1 - phi^2) + 2 mu^4 phi^3 (1 - phi^2)|`
/// for `phi = tanh(mu z)`.
pub fn normalform_residual(gamma_s: f64, tau: f64, mu: f64, z_grid: &[f64]) -> f64 {
    let m4 = mu.powi(4);
    z_grid
        .iter()
        .map(|&z| {
            let [p, _, p2, _, p4] = tanh_jet(mu, z);
            let cubic = p * (1.0 - p * p);
            (p4 / 12.0 - gamma_s * p2 + tau * cubic + 2.0 * m4 * p * p * cubic).abs()
        })
        .fold(0.0, f64::max)
}

/// Max over the grid of
/// `|s^2 phi''(zeta) - [phi(zeta+1) - 2 phi(zeta) + phi(zeta-1)] - h^2 f(phi(zeta))|`
/// for `phi = tanh(mu zeta)` and the inverse-method `f`.
pub fn advance_delay_residual(s: f64, mu: f64, zeta_grid: &[f64]) -> Result<f64> {
    let p = inverse_params(s, mu)?;
    advance_delay_residual_with(&p, p.h2, zeta_grid)
}

/// As [`advance_delay_residual`] but with an explicit `h^2`, which lets the
/// exact value be perturbed.
pub fn advance_delay_residual_with(p: &InverseParams, h2: f64, zeta_grid: &[f64]) -> Result<f64> {
    let f = p.nonlinearity();
    let mut worst = 0.0f64;
    for &z in zeta_grid {
        let [phi, _, phi2, _, _] = tanh_jet(p.mu, z);
        let ahead = (p.mu * (z + 1.0)).tanh();
        let behind = (p.mu * (z - 1.0)).tanh();
        let onsite = f.eval_f(phi)?;
        let r = p.s * p.s * phi2 - (ahead - 2.0 * phi + behind) - h2 * onsite;
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

/// `n` equally spaced points on `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}
