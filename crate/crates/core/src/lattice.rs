//! Velocity-Verlet simulation of `u_n'' = (u_{n+1} - 2u_n + u_{n-1})/h^2 + f(u_n)`
//! on a finite chain with clamped ghost cells.

use crate::inverse::inverse_params;
use crate::model::Nonlinearity;
use crate::{Error, Result};

/// Minimum number of sites in a chain.
pub const MIN_SITES: usize = 8;
/// Margin, in sites, the exact kink front must keep from either edge.
pub const EDGE_MARGIN: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub h: f64,
    /// Fixed ghost values `(u_{-1}, u_N)`.
    pub clamps: (f64, f64),
}

impl LatticeState {
    pub fn new(u: Vec<f64>, v: Vec<f64>, h: f64, clamps: (f64, f64)) -> Result<Self> {
        if u.len() != v.len() || u.len() < MIN_SITES {
            return Err(Error::invalid(format!(
                "lattice needs equal-length u and v with at least {MIN_SITES} sites, got {} and {}",
                u.len(),
                v.len()
            )));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::invalid(format!(
                "lattice step h must be positive, got {h}"
            )));
        }
        Ok(Self { u, v, h, clamps })
    }

    pub fn n_sites(&self) -> usize {
        self.u.len()
    }

    /// `sum v^2/2 + sum (u_{n+1} - u_n)^2 / (2 h^2) - sum V(u_n)`, boundary links included.
    pub fn energy(&self, model: &Nonlinearity) -> Result<f64> {
        let kinetic: f64 = self.v.iter().map(|v| 0.5 * v * v).sum();
        let inv_h2 = 1.0 / (self.h * self.h);
        let n = self.u.len();
        let mut coupling = 0.5
            * inv_h2
            * ((self.u[0] - self.clamps.0).powi(2) + (self.clamps.1 - self.u[n - 1]).powi(2));
        coupling += self
            .u
            .windows(2)
            .map(|w| 0.5 * inv_h2 * (w[1] - w[0]).powi(2))
            .sum::<f64>();
        let mut onsite = 0.0;
        for &u in &self.u {
            onsite += model.potential(u)?;
        }
        Ok(kinetic + coupling - onsite)
    }

    /// Space-reflected, negated copy: `u_n -> -u_{N-1-n}`.
    pub fn reflected(&self) -> Self {
        Self {
            u: self.u.iter().rev().map(|x| -x).collect(),
            v: self.v.iter().rev().map(|x| -x).collect(),
            h: self.h,
            clamps: (-self.clamps.1, -self.clamps.0),
        }
    }
}

fn accel_into(state: &LatticeState, model: &Nonlinearity, out: &mut [f64]) {
    let u = &state.u;
    let n = u.len();
    let inv_h2 = 1.0 / (state.h * state.h);
    for i in 0..n {
        let left = if i == 0 { state.clamps.0 } else { u[i - 1] };
        let right = if i + 1 == n { state.clamps.1 } else { u[i + 1] };
        out[i] = (right - 2.0 * u[i] + left) * inv_h2 + model.f(u[i]);
    }
}

pub fn lattice_accel(state: &LatticeState, model: &Nonlinearity) -> Vec<f64> {
    let mut out = vec![0.0; state.n_sites()];
    accel_into(state, model, &mut out);
    out
}

/// A lattice together with its cached acceleration.
#[derive(Debug, Clone)]
pub struct LatticeSim {
    state: LatticeState,
    model: Nonlinearity,
    accel: Vec<f64>,
    t: f64,
}

impl LatticeSim {
    pub fn new(state: LatticeState, model: Nonlinearity) -> Self {
        let accel = lattice_accel(&state, &model);
        Self {
            state,
            model,
            accel,
            t: 0.0,
        }
    }

    pub fn state(&self) -> &LatticeState {
        &self.state
    }

    pub fn into_state(self) -> LatticeState {
        self.state
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// One velocity-Verlet step. Requires `0 < dt < h`.
    pub fn step(&mut self, dt: f64) -> Result<()> {
        if !(dt > 0.0 && dt < self.state.h) {
            return Err(Error::invalid(format!(
                "Verlet step needs 0 < dt < h = {}, got {dt}",
                self.state.h
            )));
        }
        let half = 0.5 * dt;
        for ((u, v), a) in self
            .state
            .u
            .iter_mut()
            .zip(self.state.v.iter_mut())
            .zip(&self.accel)
        {
            *v += half * a;
            *u += dt * *v;
        }
        accel_into(&self.state, &self.model, &mut self.accel);
        for (v, a) in self.state.v.iter_mut().zip(&self.accel) {
            *v += half * a;
        }
        self.t += dt;
        let limit = 10.0 * self.model.u_plus();
        if self
            .state
            .u
            .iter()
            .chain(&self.state.v)
            .any(|x| !x.is_finite())
            || self.state.u.iter().any(|x| x.abs() > limit)
        {
            return Err(Error::BlowUp { t: self.t });
        }
        Ok(())
    }
}

/// One velocity-Verlet step on a bare state.
pub fn verlet_step(state: LatticeState, model: &Nonlinearity, dt: f64) -> Result<LatticeState> {
    let mut sim = LatticeSim::new(state, *model);
    sim.step(dt)?;
    Ok(sim.into_state())
}

/// Max over all steps of `max_n |u_n(t) - tanh(mu (n - center - s t / h))|` for
/// the inverse-method lattice started on its exact kink.
pub fn exact_kink_error(
    s: f64,
    mu: f64,
    t_final: f64,
    dt: f64,
    n_sites: usize,
    center: f64,
) -> Result<f64> {
    let p = inverse_params(s, mu)?;
    if !(t_final >= 0.0) || !(dt > 0.0) {
        return Err(Error::invalid(format!(
            "need t_final >= 0 and dt > 0, got {t_final}, {dt}"
        )));
    }
    let h = p.h();
    let speed = s / h;
    let front_end = center + speed * t_final;
    let margin = EDGE_MARGIN as f64;
    if center < margin || front_end > (n_sites as f64 - 1.0) - margin {
        let t = ((n_sites as f64 - 1.0 - margin - center) / speed).max(0.0);
        return Err(Error::KinkReachesBoundary {
            t,
            margin: EDGE_MARGIN,
        });
    }
    let exact = |n: usize, t: f64| (mu * (n as f64 - center - speed * t)).tanh();
    let u: Vec<f64> = (0..n_sites).map(|n| exact(n, 0.0)).collect();
    let v: Vec<f64> = u.iter().map(|x| -mu * speed * (1.0 - x * x)).collect();
    let state = LatticeState::new(u, v, h, (-1.0, 1.0))?;
    let steps = (t_final / dt).ceil() as usize;
    if steps == 0 {
        return Ok(0.0);
    }
    let dt = t_final / steps as f64;
    let mut sim = LatticeSim::new(state, p.nonlinearity());
    let mut worst = 0.0f64;
    for k in 1..=steps {
        sim.step(dt)?;
        let t = k as f64 * dt;
        let err = sim
            .state()
            .u
            .iter()
            .enumerate()
            .map(|(n, x)| (x - exact(n, t)).abs())
            .fold(0.0, f64::max);
        worst = worst.max(err);
    }
    Ok(worst)
}

/// [`exact_kink_error`] with the front's path centred in the chain.
pub fn simulate_exact_kink(s: f64, mu: f64, t_final: f64, dt: f64, n_sites: usize) -> Result<f64> {
    let p = inverse_params(s, mu)?;
    let travel = s / p.h() * t_final.max(0.0);
    let center = ((n_sites as f64 - 1.0) - travel) / 2.0;
    exact_kink_error(s, mu, t_final, dt, n_sites, center.floor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::zero_state_growth;
    use std::f64::consts::PI;

    const PHI4: Nonlinearity = Nonlinearity::Phi4;

    fn uniform(value: f64, n: usize, h: f64) -> LatticeState {
        LatticeState::new(vec![value; n], vec![0.0; n], h, (value, value)).unwrap()
    }

    #[test]
    fn equilibria_have_no_acceleration() {
        assert!(lattice_accel(&uniform(1.0, 16, 0.5), &PHI4)
            .iter()
            .all(|a| *a == 0.0));
        assert!(lattice_accel(&uniform(0.0, 16, 0.5), &PHI4)
            .iter()
            .all(|a| *a == 0.0));
        let sg = uniform(PI, 16, 0.5);
        assert!(lattice_accel(&sg, &Nonlinearity::SineGordon)
            .iter()
            .all(|a| a.abs() < 1e-15));
        let eq = uniform(1.0, 16, 0.5);
        assert_eq!(verlet_step(eq.clone(), &PHI4, 0.01).unwrap(), eq);
    }

    #[test]
    fn state_validation() {
        assert!(LatticeState::new(vec![0.0; 4], vec![0.0; 4], 1.0, (0.0, 0.0)).is_err());
        assert!(LatticeState::new(vec![0.0; 8], vec![0.0; 9], 1.0, (0.0, 0.0)).is_err());
        assert!(LatticeState::new(vec![0.0; 8], vec![0.0; 8], 0.0, (0.0, 0.0)).is_err());
        assert!(verlet_step(uniform(1.0, 8, 0.5), &PHI4, 0.6).is_err());
    }

    #[test]
    fn exact_profile_accelerates_like_travelling_wave() {
        let (s, mu) = (0.8, 0.5);
        let p = inverse_params(s, mu).unwrap();
        let h = p.h();
        let center = 40.0;
        let u: Vec<f64> = (0..80).map(|n| (mu * (n as f64 - center)).tanh()).collect();
        let state = LatticeState::new(u.clone(), vec![0.0; 80], h, (-1.0, 1.0)).unwrap();
        let acc = lattice_accel(&state, &p.nonlinearity());
        for (n, (a, t)) in acc.iter().zip(&u).enumerate().skip(1).take(78) {
            let phi2 = -2.0 * mu * mu * t * (1.0 - t * t);
            assert!((a - (s / h).powi(2) * phi2).abs() < 1e-10, "site {n}");
        }
    }

    #[test]
    fn plus_state_is_neutrally_stable() {
        let mut state = uniform(1.0, 32, 1.0);
        state.u[16] += 1e-3;
        let mut sim = LatticeSim::new(state, PHI4);
        let mut worst = 0.0f64;
        while sim.t() < 20.0 {
            sim.step(0.01).unwrap();
            worst = worst.max(
                sim.state()
                    .u
                    .iter()
                    .map(|x| (x - 1.0).abs())
                    .fold(0.0, f64::max),
            );
        }
        assert!(worst <= 1.0e-3 * 1.01, "{worst}");
    }

    #[test]
    fn zero_state_grows_at_dispersion_rate() {
        // Dirichlet eigenmode sin(kappa h (n + 1)) of the clamped chain
        let (n, h, mode) = (64usize, 0.5, 3.0);
        let kh = mode * PI / (n as f64 + 1.0);
        let rate = zero_state_growth(kh / h, h).unwrap().sqrt();
        let shape: Vec<f64> = (0..n).map(|i| (kh * (i as f64 + 1.0)).sin()).collect();
        let amp0 = 1e-8;
        let u: Vec<f64> = shape.iter().map(|x| amp0 * x).collect();
        let v: Vec<f64> = u.iter().map(|x| rate * x).collect();
        let mut sim = LatticeSim::new(LatticeState::new(u, v, h, (0.0, 0.0)).unwrap(), PHI4);
        let dt = 0.005;
        for _ in 0..1000 {
            sim.step(dt).unwrap();
        }
        let norm: f64 = shape.iter().map(|x| x * x).sum();
        let amp: f64 = sim
            .state()
            .u
            .iter()
            .zip(&shape)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / norm;
        let measured = (amp / amp0).ln() / sim.t();
        assert!((measured / rate - 1.0).abs() < 0.05, "{measured} vs {rate}");
    }

    #[test]
    fn energy_drift_is_second_order() {
        let drift = |dt: f64| {
            let n = 40;
            let u: Vec<f64> = (0..n)
                .map(|i| (0.4 * (i as f64 - 20.0)).tanh() + 0.05 * (0.7 * i as f64).sin())
                .collect();
            let state = LatticeState::new(u, vec![0.0; n], 0.5, (-1.0, 1.0)).unwrap();
            let e0 = state.energy(&PHI4).unwrap();
            let mut sim = LatticeSim::new(state, PHI4);
            let steps = (10.0 / dt).round() as usize;
            let mut worst = 0.0f64;
            for _ in 0..steps {
                sim.step(dt).unwrap();
                worst = worst.max((sim.state().energy(&PHI4).unwrap() - e0).abs());
            }
            worst
        };
        let coarse = drift(0.02);
        let fine = drift(0.005);
        assert!(coarse < 1e-2, "{coarse}");
        let ratio = coarse / fine;
        assert!((12.0..20.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn reflection_commutes_with_evolution() {
        let n = 30;
        let u: Vec<f64> = (0..n)
            .map(|i| (0.3 * (i as f64 - 12.0)).tanh() + 0.01 * (i as f64).cos())
            .collect();
        let v: Vec<f64> = (0..n).map(|i| 0.02 * (0.5 * i as f64).sin()).collect();
        let state = LatticeState::new(u, v, 0.7, (-1.0, 1.0)).unwrap();
        let mut a = LatticeSim::new(state.clone(), PHI4);
        let mut b = LatticeSim::new(state.reflected(), PHI4);
        for _ in 0..500 {
            a.step(0.01).unwrap();
            b.step(0.01).unwrap();
        }
        let ra = a.state().reflected();
        for (x, y) in ra.u.iter().zip(&b.state().u) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_kink_edge_cases() {
        assert_eq!(simulate_exact_kink(0.8, 0.5, 0.0, 0.01, 100).unwrap(), 0.0);
        assert!(matches!(
            simulate_exact_kink(0.8, 0.5, 100.0, 0.005, 40),
            Err(Error::KinkReachesBoundary { .. })
        ));
        assert!(matches!(
            simulate_exact_kink(1.0, 1.0, 1.0, 0.005, 100),
            Err(Error::NoRealLattice { .. })
        ));
    }

    #[test]
    fn exact_kink_error_is_translation_invariant() {
        let h = inverse_params(0.8, 0.5).unwrap().h();
        let (t_final, dt) = (4.0 * h / 0.8, h / 20.0);
        let a = exact_kink_error(0.8, 0.5, t_final, dt, 120, 50.0).unwrap();
        let b = exact_kink_error(0.8, 0.5, t_final, dt, 120, 57.0).unwrap();
        assert!((a - b).abs() < 1e-12 * a.max(1e-300) + 1e-15, "{a} {b}");
    }
}
