//! Split function `K(sigma)` of the unstable solution leaving `u-`.
//!
//! The unstable solution starts on the linear unstable eigenvector of `u-`,
//! is advanced with fixed-step RK4 until `phi` first reaches a crossing level
//! `L`, and `K = phi''(t0)` is read off at the crossing time `t0`. Zeros of `K`
//! mark solutions that are odd about the crossing point: single kinks for
//! `L = 0`, double kinks for `L = pi` in sine-Gordon, and so on.

use rayon::prelude::*;

use crate::integrator::{equilibrium_rates, unstable_ic, NormalForm, State4};
use crate::model::Nonlinearity;
use crate::{Error, Result};

pub const DEFAULT_C0: f64 = 1e-5;
pub const DEFAULT_DT: f64 = 0.005;
pub const DEFAULT_T_MAX: f64 = 200.0;
/// Upper bound on the shooting offset `c0`.
pub const MAX_C0: f64 = 1e-2;
/// Upper bound on the RK4 step.
pub const MAX_DT: f64 = 0.05;

/// Zero refinement stops once the sigma bracket is this narrow and `|K|` is
/// below [`ZERO_K_TOL`].
pub const ZERO_SIGMA_TOL: f64 = 1e-8;
pub const ZERO_K_TOL: f64 = 1e-10;

/// Parameters of one split-function evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    pub sigma: f64,
    pub c0: f64,
    pub dt: f64,
    /// Crossing level `L`.
    pub level: f64,
    pub t_max: f64,
}

impl ShootingConfig {
    /// Defaults: `c0 = 1e-5`, `dt = 0.005`, `L = 0`, `t_max = 200`.
    pub fn new(sigma: f64) -> Self {
        Self {
            sigma,
            c0: DEFAULT_C0,
            dt: DEFAULT_DT,
            level: 0.0,
            t_max: DEFAULT_T_MAX,
        }
    }

    pub fn with_sigma(self, sigma: f64) -> Self {
        Self { sigma, ..self }
    }

    pub fn with_c0(self, c0: f64) -> Self {
        Self { c0, ..self }
    }

    pub fn with_dt(self, dt: f64) -> Self {
        Self { dt, ..self }
    }

    pub fn with_level(self, level: f64) -> Self {
        Self { level, ..self }
    }

    pub fn with_t_max(self, t_max: f64) -> Self {
        Self { t_max, ..self }
    }

    pub fn validate(&self, model: &Nonlinearity) -> Result<()> {
        if !self.sigma.is_finite() {
            return Err(Error::invalid(format!(
                "sigma must be finite, got {}",
                self.sigma
            )));
        }
        if !(self.c0 > 0.0 && self.c0 < MAX_C0) {
            return Err(Error::invalid(format!(
                "c0 must lie in (0, {MAX_C0}), got {}",
                self.c0
            )));
        }
        if !(self.dt > 0.0 && self.dt <= MAX_DT) {
            return Err(Error::invalid(format!(
                "dt must lie in (0, {MAX_DT}], got {}",
                self.dt
            )));
        }
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return Err(Error::invalid(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        let (lo, hi) = (model.u_minus(), 10.0 * model.u_plus());
        if !(self.level > lo && self.level < hi) {
            return Err(Error::invalid(format!(
                "level must lie in ({lo}, {hi}) for the {} model, got {}",
                model.name(),
                self.level
            )));
        }
        Ok(())
    }
}

/// Outcome of one shot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitResult {
    /// First crossing time.
    pub t0: f64,
    /// `phi''(t0)`.
    pub k: f64,
    /// RK4 steps taken; the crossing lies in the last one.
    pub steps: usize,
}

/// Cubic Hermite interpolant on `[0, 1]` with endpoint values and slopes
/// (slopes already scaled by the step).
#[inline]
fn hermite(y0: f64, m0: f64, y1: f64, m1: f64, s: f64) -> f64 {
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0) * y0
        + (s3 - 2.0 * s2 + s) * m0
        + (-2.0 * s3 + 3.0 * s2) * y1
        + (s3 - s2) * m1
}

/// Fraction `s` of the step where the Hermite interpolant of `phi - level`
/// changes sign. The endpoints must bracket.
fn crossing_fraction(a: &State4, b: &State4, dt: f64, level: f64) -> f64 {
    let p = |s: f64| hermite(a.phi - level, dt * a.dphi, b.phi - level, dt * b.dphi, s);
    let left_negative = a.phi - level < 0.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        let v = p(mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == left_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn initial_state(cfg: &ShootingConfig, model: &Nonlinearity) -> Result<State4> {
    let rates = equilibrium_rates(cfg.sigma, model.f_prime(model.u_minus()))?;
    unstable_ic(cfg.c0, rates.lambda0, model.u_minus())
}

/// Integrate the unstable solution to the first crossing of `cfg.level`.
///
/// The crossing time solves the cubic Hermite interpolant of `phi` built from
/// `(phi, phi')` at the bracketing steps; `K` comes from the Hermite
/// interpolant of `phi''` built from `(phi'', phi''')`.
pub fn integrate_to_crossing(cfg: &ShootingConfig, model: &Nonlinearity) -> Result<SplitResult> {
    cfg.validate(model)?;
    let form = NormalForm::new(cfg.sigma, *model);
    let mut state = initial_state(cfg, model)?;
    let start = state.phi - cfg.level;
    if start == 0.0 {
        return Ok(SplitResult {
            t0: 0.0,
            k: state.d2phi,
            steps: 0,
        });
    }
    let below = start < 0.0;
    let max_steps = (cfg.t_max / cfg.dt).ceil() as usize;
    for step in 1..=max_steps {
        let t = step as f64 * cfg.dt;
        let next = form.step(state, cfg.dt).map_err(|_| Error::BlowUp { t })?;
        form.guard(&next, t)?;
        let d = next.phi - cfg.level;
        if d == 0.0 || (d < 0.0) != below {
            let s = if d == 0.0 {
                1.0
            } else {
                crossing_fraction(&state, &next, cfg.dt, cfg.level)
            };
            let k = hermite(
                state.d2phi,
                cfg.dt * state.d3phi,
                next.d2phi,
                cfg.dt * next.d3phi,
                s,
            );
            let t0 = (step - 1) as f64 * cfg.dt + s * cfg.dt;
            return Ok(SplitResult { t0, k, steps: step });
        }
        state = next;
    }
    Err(Error::NoCrossing {
        level: cfg.level,
        t_max: cfg.t_max,
    })
}

/// `K(sigma; c0, dt)`.
pub fn split_k(cfg: &ShootingConfig, model: &Nonlinearity) -> Result<f64> {
    integrate_to_crossing(cfg, model).map(|r| r.k)
}

/// Fixed-step trajectory of the unstable solution on `[0, n_steps dt]`,
/// including the initial state.
pub fn trajectory(
    cfg: &ShootingConfig,
    model: &Nonlinearity,
    n_steps: usize,
) -> Result<Vec<State4>> {
    cfg.validate(model)?;
    let form = NormalForm::new(cfg.sigma, *model);
    let mut state = initial_state(cfg, model)?;
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push(state);
    for step in 1..=n_steps {
        let t = step as f64 * cfg.dt;
        state = form.step(state, cfg.dt).map_err(|_| Error::BlowUp { t })?;
        form.guard(&state, t)?;
        out.push(state);
    }
    Ok(out)
}

/// Largest departure from the point symmetry `phi(t0 + s) + phi(t0 - s) = 2L`
/// over `|s| <= half_width`.
///
/// The trajectory is recomputed with the step shrunk so that `t0` falls on a
/// grid node, which makes both sides of the reflection grid values.
pub fn odd_symmetry_defect(
    cfg: &ShootingConfig,
    model: &Nonlinearity,
    half_width: f64,
) -> Result<f64> {
    let split = integrate_to_crossing(cfg, model)?;
    if split.t0 < half_width {
        return Err(Error::invalid(format!(
            "crossing time {} is shorter than the symmetry window {half_width}",
            split.t0
        )));
    }
    let n = (split.t0 / cfg.dt).ceil() as usize;
    let dt = split.t0 / n as f64;
    let m = (half_width / dt).round() as usize;
    let traj = trajectory(&cfg.with_dt(dt), model, n + m)?;
    Ok((0..=m)
        .map(|j| (traj[n + j].phi + traj[n - j].phi - 2.0 * cfg.level).abs())
        .fold(0.0, f64::max))
}

/// Map `f` over `0..n`, optionally on a dedicated pool of `threads` workers.
/// Results are in index order either way.
fn map_indexed<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if threads <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
        Err(_) => (0..n).map(f).collect(),
    }
}

/// One sample of a sigma scan; `split` is `None` when the shot failed
/// (no crossing before `t_max`, or blow-up).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub sigma: f64,
    pub split: Option<SplitResult>,
}

impl ScanRow {
    pub fn t0(&self) -> Option<f64> {
        self.split.map(|s| s.t0)
    }

    pub fn k(&self) -> Option<f64> {
        self.split.map(|s| s.k)
    }
}

/// `K` over a sigma grid. Everything except sigma comes from `base`.
pub fn scan(
    sigmas: &[f64],
    base: &ShootingConfig,
    model: &Nonlinearity,
    threads: usize,
) -> Result<Vec<ScanRow>> {
    if sigmas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("sigma grid must be strictly ascending"));
    }
    for &sigma in sigmas {
        base.with_sigma(sigma).validate(model)?;
    }
    let rows = map_indexed(sigmas.len(), threads, |i| {
        let cfg = base.with_sigma(sigmas[i]);
        (sigmas[i], integrate_to_crossing(&cfg, model))
    });
    rows.into_iter()
        .map(|(sigma, res)| match res {
            Ok(split) => Ok(ScanRow {
                sigma,
                split: Some(split),
            }),
            Err(e) if e.is_numerical() => Ok(ScanRow { sigma, split: None }),
            Err(e) => Err(e),
        })
        .collect()
}

/// Uniform grid `lo, lo + step, ...` up to `hi` (inclusive within rounding).
pub fn sigma_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid(format!(
            "bad sigma range [{lo}, {hi}] with step {step}"
        )));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

/// A bisected zero of `K(sigma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub sigma_star: f64,
    /// Scan bracket that contained the sign change.
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// `K(sigma_star)`.
    pub k_residual: f64,
}

/// Bisect a sign change of `K` on `[a, b]`. Returns `None` when the sign change
/// is a jump (the crossing switches branch) rather than a zero.
fn bisect_zero(
    base: &ShootingConfig,
    model: &Nonlinearity,
    mut a: f64,
    mut b: f64,
    mut ka: f64,
) -> Option<(f64, f64)> {
    let k_at = |s: f64| split_k(&base.with_sigma(s), model).ok();
    let mut best = (a, ka);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let km = k_at(mid)?;
        if km.abs() < best.1.abs() {
            best = (mid, km);
        }
        if km == 0.0 || (b - a <= ZERO_SIGMA_TOL && best.1.abs() < ZERO_K_TOL) {
            break;
        }
        if (km < 0.0) == (ka < 0.0) {
            a = mid;
            ka = km;
        } else {
            b = mid;
        }
    }
    (best.1.abs() < ZERO_K_TOL).then_some(best)
}

/// Zeros of `K` on `[lo, hi]`: scan at `step`, then bisect every sign change.
///
/// Sign changes caused by a jump of the first crossing (the trajectory touching
/// the level tangentially) do not converge to `|K| < 1e-10` and are dropped.
pub fn find_sigma_zeros(
    lo: f64,
    hi: f64,
    step: f64,
    base: &ShootingConfig,
    model: &Nonlinearity,
    threads: usize,
) -> Result<Vec<ZeroRecord>> {
    let grid = sigma_grid(lo, hi, step)?;
    let rows = scan(&grid, base, model, threads)?;
    let mut exact = Vec::new();
    let mut brackets = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let Some(ka) = row.k() else { continue };
        if ka == 0.0 {
            exact.push(ZeroRecord {
                sigma_star: row.sigma,
                bracket_lo: row.sigma,
                bracket_hi: row.sigma,
                k_residual: 0.0,
            });
            continue;
        }
        if let Some(kb) = rows.get(i + 1).and_then(|r| r.k()) {
            if ka * kb < 0.0 {
                brackets.push((row.sigma, rows[i + 1].sigma, ka));
            }
        }
    }
    let refined = map_indexed(brackets.len(), threads, |i| {
        let (a, b, ka) = brackets[i];
        bisect_zero(base, model, a, b, ka).map(|(s, k)| ZeroRecord {
            sigma_star: s,
            bracket_lo: a,
            bracket_hi: b,
            k_residual: k,
        })
    });
    let mut zeros: Vec<ZeroRecord> = exact
        .into_iter()
        .chain(refined.into_iter().flatten())
        .collect();
    zeros.sort_by(|x, y| x.sigma_star.total_cmp(&y.sigma_star));
    Ok(zeros)
}

/// Spread of `K` under changes of the shooting offset `c0`.
#[derive(Debug, Clone, PartialEq)]
pub struct C0Sensitivity {
    pub values: Vec<(f64, f64)>,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    /// `std / |mean|`.
    pub rel_error: f64,
    /// `max K - min K`.
    pub amplitude: f64,
}

pub fn c0_sensitivity(
    base: &ShootingConfig,
    c0s: &[f64],
    model: &Nonlinearity,
) -> Result<C0Sensitivity> {
    if c0s.len() < 2 {
        return Err(Error::invalid(
            "c0 sensitivity needs at least two values of c0",
        ));
    }
    let values = c0s
        .iter()
        .map(|&c0| split_k(&base.with_c0(c0), model).map(|k| (c0, k)))
        .collect::<Result<Vec<_>>>()?;
    let n = values.len() as f64;
    let mean = values.iter().map(|v| v.1).sum::<f64>() / n;
    let var = values.iter().map(|v| (v.1 - mean).powi(2)).sum::<f64>() / n;
    let std = var.sqrt();
    let (min, max) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v.1), hi.max(v.1))
        });
    let rel_error = if std == 0.0 { 0.0 } else { std / mean.abs() };
    Ok(C0Sensitivity {
        values,
        mean,
        std,
        rel_error,
        amplitude: max - min,
    })
}

/// `K` for each step size in a strictly decreasing list.
pub fn dt_convergence(
    base: &ShootingConfig,
    dts: &[f64],
    model: &Nonlinearity,
) -> Result<Vec<(f64, f64)>> {
    if dts.is_empty() || dts.windows(2).any(|w| !(w[0] > w[1])) {
        return Err(Error::invalid(
            "dt list must be non-empty and strictly decreasing",
        ));
    }
    dts.iter()
        .map(|&dt| split_k(&base.with_dt(dt), model).map(|k| (dt, k)))
        .collect()
}

/// `|K_i - K_{i+1}|` along a refinement sequence.
pub fn successive_differences(seq: &[(f64, f64)]) -> Vec<f64> {
    seq.windows(2).map(|w| (w[0].1 - w[1].1).abs()).collect()
}

/// `n` points log-spaced between `a` and `b` inclusive.
pub fn log_spaced(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let (la, lb) = (a.ln(), b.ln());
            (0..n)
                .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
                .collect()
        }
    }
}
