//! Fixed-step RK4 for the normalised normal form `phi'''' + sigma phi'' + F(phi) = 0`.

use std::ops::{Add, Mul, Sub};

use crate::model::Nonlinearity;
use crate::{Error, Result};

/// Absolute cap on any state component before integration is abandoned.
pub const BLOWUP_LIMIT: f64 = 1e6;

/// Phase point `(phi, phi', phi'', phi''')`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State4 {
    pub phi: f64,
    pub dphi: f64,
    pub d2phi: f64,
    pub d3phi: f64,
}

impl State4 {
    pub const fn new(phi: f64, dphi: f64, d2phi: f64, d3phi: f64) -> Self {
        Self {
            phi,
            dphi,
            d2phi,
            d3phi,
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.phi, self.dphi, self.d2phi, self.d3phi]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    pub fn norm(&self) -> f64 {
        self.to_array().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Image under the reversibility `(phi, -phi', phi'', -phi''')`.
    pub fn reversed(self) -> Self {
        Self::new(self.phi, -self.dphi, self.d2phi, -self.d3phi)
    }

    pub fn is_equilibrium(&self, model: &Nonlinearity) -> bool {
        self.dphi == 0.0 && self.d2phi == 0.0 && self.d3phi == 0.0 && model.f(self.phi) == 0.0
    }
}

impl Add for State4 {
    type Output = State4;
    fn add(self, o: State4) -> State4 {
        State4::new(
            self.phi + o.phi,
            self.dphi + o.dphi,
            self.d2phi + o.d2phi,
            self.d3phi + o.d3phi,
        )
    }
}

impl Sub for State4 {
    type Output = State4;
    fn sub(self, o: State4) -> State4 {
        State4::new(
            self.phi - o.phi,
            self.dphi - o.dphi,
            self.d2phi - o.d2phi,
            self.d3phi - o.d3phi,
        )
    }
}

impl Mul<State4> for f64 {
    type Output = State4;
    fn mul(self, s: State4) -> State4 {
        State4::new(self * s.phi, self * s.dphi, self * s.d2phi, self * s.d3phi)
    }
}

/// The normal-form vector field at fixed `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalForm {
    pub sigma: f64,
    pub model: Nonlinearity,
}

impl NormalForm {
    pub fn new(sigma: f64, model: Nonlinearity) -> Self {
        Self { sigma, model }
    }

    #[inline]
    pub fn rhs(&self, s: State4) -> State4 {
        rhs(s, self.sigma, &self.model)
    }

    pub fn step(&self, s: State4, dt: f64) -> Result<State4> {
        rk4_step(s, dt, self.sigma, &self.model)
    }

    pub fn energy(&self, s: State4) -> Result<f64> {
        energy(s, self.sigma, &self.model)
    }

    /// Blow-up guard: `|phi| > 10 u+` or any component beyond [`BLOWUP_LIMIT`].
    pub fn guard(&self, s: &State4, t: f64) -> Result<()> {
        if !s.is_finite() || s.phi.abs() > 10.0 * self.model.u_plus() || s.max_abs() > BLOWUP_LIMIT
        {
            return Err(Error::BlowUp { t });
        }
        Ok(())
    }
}

/// `(phi', phi'', phi''', -sigma phi'' - F(phi))`.
#[inline]
pub fn rhs(s: State4, sigma: f64, model: &Nonlinearity) -> State4 {
    State4::new(s.dphi, s.d2phi, s.d3phi, -sigma * s.d2phi - model.f(s.phi))
}

/// One classical fourth-order Runge-Kutta step.
pub fn rk4_step(s: State4, dt: f64, sigma: f64, model: &Nonlinearity) -> Result<State4> {
    let k1 = rhs(s, sigma, model);
    let k2 = rhs(s + (0.5 * dt) * k1, sigma, model);
    let k3 = rhs(s + (0.5 * dt) * k2, sigma, model);
    let k4 = rhs(s + dt * k3, sigma, model);
    let next = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if !next.is_finite() {
        return Err(Error::BlowUp { t: f64::NAN });
    }
    Ok(next)
}

/// Integrate `n_steps` fixed steps, returning the final state.
pub fn integrate(form: &NormalForm, mut s: State4, dt: f64, n_steps: usize) -> Result<State4> {
    for k in 0..n_steps {
        s = form.step(s, dt).map_err(|_| Error::BlowUp {
            t: (k + 1) as f64 * dt,
        })?;
        form.guard(&s, (k + 1) as f64 * dt)?;
    }
    Ok(s)
}

/// Rates of the linearisation at a non-zero equilibrium: `+-lambda0` real,
/// `+-i omega0` imaginary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumRates {
    pub lambda0: f64,
    pub omega0: f64,
}

/// Roots of `x^2 + sigma x + F'(u+) = 0` give `lambda0^2` and `-omega0^2`.
pub fn equilibrium_rates(sigma: f64, fprime_at_plus: f64) -> Result<EquilibriumRates> {
    if !(fprime_at_plus < 0.0) || !sigma.is_finite() {
        return Err(Error::invalid(format!(
            "equilibrium must be a saddle-centre (F'(u+) < 0), got F' = {fprime_at_plus}"
        )));
    }
    let root = (sigma * sigma - 4.0 * fprime_at_plus).sqrt();
    // pick the cancellation-free form for each root
    let (lambda_sq, omega_sq) = if sigma >= 0.0 {
        (-2.0 * fprime_at_plus / (sigma + root), 0.5 * (sigma + root))
    } else {
        (0.5 * (root - sigma), -2.0 * fprime_at_plus / (root - sigma))
    };
    Ok(EquilibriumRates {
        lambda0: lambda_sq.sqrt(),
        omega0: omega_sq.sqrt(),
    })
}

/// `(u-, 0, 0, 0) + c0 (1, lambda0, lambda0^2, lambda0^3)`.
pub fn unstable_ic(c0: f64, lambda0: f64, u_minus: f64) -> Result<State4> {
    if !(c0 > 0.0) || !c0.is_finite() {
        return Err(Error::invalid(format!("c0 must be positive, got {c0}")));
    }
    let l2 = lambda0 * lambda0;
    Ok(State4::new(
        u_minus + c0,
        c0 * lambda0,
        c0 * l2,
        c0 * l2 * lambda0,
    ))
}

/// First integral `phi' phi''' - phi''^2/2 + sigma phi'^2/2 + V(phi)`.
pub fn energy(s: State4, sigma: f64, model: &Nonlinearity) -> Result<f64> {
    let v = model.potential(s.phi)?;
    Ok(s.dphi * s.d3phi - 0.5 * s.d2phi * s.d2phi + 0.5 * sigma * s.dphi * s.dphi + v)
}
