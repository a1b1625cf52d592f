//! On-site nonlinearities `F(u)` and the `(gamma, tau) -> sigma` normalisation.

use std::f64::consts::PI;

use crate::{Error, Result};

/// On-site nonlinearity `F(u)` with `F(0) = 0`, `F'(0) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Nonlinearity {
    /// `F(u) = u (1 - u^2)`, equilibria `u = +-1`.
    Phi4,
    /// `F(u) = sin u`, equilibria `u = +-pi`.
    SineGordon,
    /// Inverse-method nonlinearity `u (1 - u^2) (1 + alpha u^2) / (1 - beta u^2)`.
    Inverse { alpha: f64, beta: f64 },
}

impl Nonlinearity {
    /// Inverse-method model; requires `0 < beta < 1` so the pole stays outside `[-1, 1]`.
    pub fn inverse(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !(beta > 0.0 && beta < 1.0) {
            return Err(Error::invalid(format!(
                "inverse model needs finite alpha and 0 < beta < 1, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Nonlinearity::Inverse { alpha, beta })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Nonlinearity::Phi4 => "phi4",
            Nonlinearity::SineGordon => "sine-gordon",
            Nonlinearity::Inverse { .. } => "inverse",
        }
    }

    /// Positive equilibrium `u+`.
    pub fn u_plus(&self) -> f64 {
        match self {
            Nonlinearity::SineGordon => PI,
            Nonlinearity::Phi4 | Nonlinearity::Inverse { .. } => 1.0,
        }
    }

    /// Negative equilibrium `u- = -u+`.
    pub fn u_minus(&self) -> f64 {
        -self.u_plus()
    }

    /// `F(u)` without the pole check. Non-finite at the inverse-model pole.
    #[inline]
    pub fn f(&self, u: f64) -> f64 {
        match *self {
            Nonlinearity::Phi4 => u * (1.0 - u * u),
            Nonlinearity::SineGordon => u.sin(),
            Nonlinearity::Inverse { alpha, beta } => {
                let u2 = u * u;
                u * (1.0 - u2) * (1.0 + alpha * u2) / (1.0 - beta * u2)
            }
        }
    }

    /// `F'(u)` without the pole check.
    #[inline]
    pub fn f_prime(&self, u: f64) -> f64 {
        match *self {
            Nonlinearity::Phi4 => 1.0 - 3.0 * u * u,
            Nonlinearity::SineGordon => u.cos(),
            Nonlinearity::Inverse { alpha, beta } => {
                // quotient rule on N(u) / D(u)
                let u2 = u * u;
                let num = u * (1.0 - u2) * (1.0 + alpha * u2);
                let dnum = 1.0 + 3.0 * (alpha - 1.0) * u2 - 5.0 * alpha * u2 * u2;
                let den = 1.0 - beta * u2;
                let dden = -2.0 * beta * u;
                (dnum * den - num * dden) / (den * den)
            }
        }
    }

    fn check_pole(&self, u: f64) -> Result<()> {
        if let Nonlinearity::Inverse { beta, .. } = *self {
            if (1.0 - beta * u * u).abs() <= f64::EPSILON {
                return Err(Error::PoleEvaluation { u });
            }
        }
        Ok(())
    }

    /// `F(u)`, rejecting evaluation at the inverse-model pole `beta u^2 = 1`.
    pub fn eval_f(&self, u: f64) -> Result<f64> {
        self.check_pole(u)?;
        Ok(self.f(u))
    }

    /// `F'(u)`, rejecting evaluation at the inverse-model pole.
    pub fn eval_f_prime(&self, u: f64) -> Result<f64> {
        self.check_pole(u)?;
        Ok(self.f_prime(u))
    }

    /// Closed-form antiderivative `V` with `V' = F`.
    ///
    /// `V(u) = u^2/2 - u^4/4` for phi4 and `V(u) = -cos u` for sine-Gordon.
    pub fn potential(&self, u: f64) -> Result<f64> {
        match self {
            Nonlinearity::Phi4 => {
                let u2 = u * u;
                Ok(0.5 * u2 - 0.25 * u2 * u2)
            }
            Nonlinearity::SineGordon => Ok(-u.cos()),
            Nonlinearity::Inverse { .. } => Err(Error::Unsupported(
                "no closed-form potential for the inverse model",
            )),
        }
    }

    pub fn has_potential(&self) -> bool {
        !matches!(self, Nonlinearity::Inverse { .. })
    }
}

/// `sigma = -sqrt(12) gamma / sqrt(tau)`.
pub fn sigma_from(gamma: f64, tau: f64) -> Result<f64> {
    if !(tau > 0.0) || !gamma.is_finite() || !tau.is_finite() {
        return Err(Error::invalid(format!(
            "sigma needs tau > 0, got tau = {tau}"
        )));
    }
    Ok(-12f64.sqrt() * gamma / tau.sqrt())
}

/// Coefficients of `(1/12) phi'''' - gamma phi'' + tau F(phi) = 0` and the
/// normalised `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalFormParams {
    pub gamma: f64,
    pub tau: f64,
    pub sigma: f64,
}

impl NormalFormParams {
    pub fn new(gamma: f64, tau: f64) -> Result<Self> {
        let sigma = sigma_from(gamma, tau)?;
        Ok(Self { gamma, tau, sigma })
    }

    /// Factor `(12 tau)^{1/4}` with `t = (12 tau)^{1/4} zeta_1`.
    pub fn time_scale(&self) -> f64 {
        (12.0 * self.tau).powf(0.25)
    }

    /// True in the wedge between the double-zero and 1:1 resonance curves.
    pub fn in_kink_domain(&self) -> bool {
        self.gamma < 0.0 && self.tau > 0.0 && self.tau < 3.0 * self.gamma * self.gamma
    }
}
