use kink_core::integrator::{energy, rk4_step, unstable_ic};
use kink_core::shooting::{integrate_to_crossing, split_k, ShootingConfig};
use kink_core::{Nonlinearity, State4};

type Y = [f64; 4];

fn f(u: f64) -> f64 {
    u - u * u * u
}

fn deriv(y: &Y, sigma: f64) -> Y {
    [y[1], y[2], y[3], -sigma * y[2] - f(y[0])]
}

fn axpy(y: &Y, a: f64, k: &Y) -> Y {
    [
        y[0] + a * k[0],
        y[1] + a * k[1],
        y[2] + a * k[2],
        y[3] + a * k[3],
    ]
}

fn rk4(y: &Y, h: f64, sigma: f64) -> Y {
    let k1 = deriv(y, sigma);
    let k2 = deriv(&axpy(y, h / 2.0, &k1), sigma);
    let k3 = deriv(&axpy(y, h / 2.0, &k2), sigma);
    let k4 = deriv(&axpy(y, h, &k3), sigma);
    let mut out = *y;
    for i in 0..4 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Adaptive step-doubling RK4 up to the first upward crossing of `level`,
/// with the crossing located by bisection on sub-steps from the last accepted state.
fn adaptive_k(sigma: f64, c0: f64, level: f64, tol: f64) -> (f64, f64) {
    // phi'''' + sigma phi'' + F'(-1) phi = 0 with F'(-1) = -2
    let lambda = ((-sigma + (sigma * sigma + 8.0).sqrt()) / 2.0).sqrt();
    let mut y: Y = [
        -1.0 + c0,
        c0 * lambda,
        c0 * lambda * lambda,
        c0 * lambda.powi(3),
    ];
    let (mut t, mut h) = (0.0, 1e-2);
    loop {
        let full = rk4(&y, h, sigma);
        let half = rk4(&rk4(&y, h / 2.0, sigma), h / 2.0, sigma);
        let err = (0..4)
            .map(|i| (half[i] - full[i]).abs() / 15.0)
            .fold(0.0, f64::max);
        let scale = tol * (1.0 + half.iter().map(|v| v.abs()).fold(0.0, f64::max));
        if err > scale {
            h *= 0.5;
            continue;
        }
        if half[0] >= level {
            let (mut lo, mut hi) = (0.0, h);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let yy = rk4(&rk4(&y, mid / 2.0, sigma), mid / 2.0, sigma);
                if yy[0] < level {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let s = 0.5 * (lo + hi);
            let yy = rk4(&rk4(&y, s / 2.0, sigma), s / 2.0, sigma);
            return (t + s, yy[2]);
        }
        y = half;
        t += h;
        if err < scale / 32.0 {
            h *= 2.0;
        }
        assert!(t < 200.0, "oracle never crossed");
    }
}

#[test]
fn split_matches_adaptive_oracle_to_six_digits() {
    let (t_ref, k_ref) = adaptive_k(5.0, 1e-5, 0.0, 1e-12);
    let res = integrate_to_crossing(&ShootingConfig::new(5.0), &Nonlinearity::Phi4).unwrap();
    assert!(
        ((res.k - k_ref) / k_ref).abs() < 1e-6,
        "{} vs {k_ref}",
        res.k
    );
    assert!((res.t0 - t_ref).abs() < 1e-6, "{} vs {t_ref}", res.t0);
}

#[test]
fn crossing_lands_on_the_level() {
    for (model, level, sigma) in [
        (Nonlinearity::Phi4, 0.0, 4.0),
        (Nonlinearity::SineGordon, 0.0, 3.0),
        (Nonlinearity::SineGordon, std::f64::consts::PI, 6.0),
    ] {
        let cfg = ShootingConfig::new(sigma).with_level(level);
        let res = integrate_to_crossing(&cfg, &model).unwrap();
        // re-integrate from the last grid node before t0 by a single partial step
        let mut s = unstable_ic(cfg.c0, lambda0(sigma, &model), model.u_minus()).unwrap();
        let n = (res.t0 / cfg.dt).floor() as usize;
        for _ in 0..n {
            s = rk4_step(s, cfg.dt, sigma, &model).unwrap();
        }
        let tail = res.t0 - n as f64 * cfg.dt;
        let at = rk4_step(s, tail, sigma, &model).unwrap();
        // the partial RK4 step and the Hermite interpolant agree to O(dt^4) local error
        assert!((at.phi - level).abs() < 1e-8, "{}", at.phi - level);
    }
}

fn lambda0(sigma: f64, model: &Nonlinearity) -> f64 {
    kink_core::integrator::equilibrium_rates(sigma, model.f_prime(model.u_plus()))
        .unwrap()
        .lambda0
}

#[test]
fn shifting_c0_along_the_eigenvector_translates_t0() {
    let model = Nonlinearity::Phi4;
    let sigma = 5.0;
    let lam = lambda0(sigma, &model);
    let delta = 0.75;
    let a = integrate_to_crossing(&ShootingConfig::new(sigma).with_c0(1e-6), &model).unwrap();
    let b = integrate_to_crossing(
        &ShootingConfig::new(sigma).with_c0(1e-6 * (lam * delta).exp()),
        &model,
    )
    .unwrap();
    assert!((a.t0 - b.t0 - delta).abs() < 1e-6, "{} {}", a.t0, b.t0);
    assert!(((a.k - b.k) / a.k).abs() < 1e-5);
}

#[test]
fn energy_of_unstable_orbit_stays_near_zero() {
    let model = Nonlinearity::Phi4;
    let sigma = 5.0;
    let s0 = unstable_ic(1e-5, lambda0(sigma, &model), -1.0).unwrap();
    let e0 = energy(s0, sigma, &model).unwrap();
    let t0 = integrate_to_crossing(&ShootingConfig::new(sigma), &model)
        .unwrap()
        .t0;
    let mut s: State4 = s0;
    for _ in 0..(t0 / 0.005) as usize {
        s = rk4_step(s, 0.005, sigma, &model).unwrap();
    }
    assert!((energy(s, sigma, &model).unwrap() - e0).abs() < 1e-9);
    assert!(split_k(&ShootingConfig::new(sigma), &model).unwrap() > 0.0);
}
