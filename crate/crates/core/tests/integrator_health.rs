use kink_core::integrator::{energy, integrate, rk4_step};
use kink_core::{Nonlinearity, NormalForm, State4};

fn max_energy_drift(model: Nonlinearity, sigma: f64, start: State4, dt: f64, t_end: f64) -> f64 {
    let e0 = energy(start, sigma, &model).unwrap();
    let mut s = start;
    let mut worst = 0.0f64;
    for _ in 0..(t_end / dt).round() as usize {
        s = rk4_step(s, dt, sigma, &model).unwrap();
        worst = worst.max((energy(s, sigma, &model).unwrap() - e0).abs());
    }
    worst
}

#[test]
fn first_integral_drift_is_tiny() {
    let start = State4::new(0.2, 0.0, 0.1, 0.0);
    for model in [Nonlinearity::Phi4, Nonlinearity::SineGordon] {
        let drift = max_energy_drift(model, 5.0, start, 0.005, 50.0);
        assert!(drift < 1e-9, "{}: {drift}", model.name());
    }
}

#[test]
fn fourth_order_convergence() {
    let start = State4::new(0.2, 0.0, 0.1, 0.0);
    for model in [Nonlinearity::Phi4, Nonlinearity::SineGordon] {
        let form = NormalForm::new(5.0, model);
        let run = |dt: f64| integrate(&form, start, dt, (5.0 / dt).round() as usize).unwrap();
        let reference = run(0.05 / 16.0);
        let e1 = (run(0.05) - reference).max_abs();
        let e2 = (run(0.025) - reference).max_abs();
        let ratio = e1 / e2;
        assert!((12.0..=20.0).contains(&ratio), "{}: {ratio}", model.name());
    }
}

#[test]
fn reversed_integration_returns_home() {
    let start = State4::new(0.3, -0.1, 0.05, 0.02);
    for model in [Nonlinearity::Phi4, Nonlinearity::SineGordon] {
        let form = NormalForm::new(4.0, model);
        let there = integrate(&form, start, 0.005, 2000).unwrap();
        let back = integrate(&form, there.reversed(), 0.005, 2000)
            .unwrap()
            .reversed();
        assert!((back - start).max_abs() < 1e-9, "{}", model.name());
    }
}
