//! `kink` command-line front end: each subcommand runs one analysis from
//! `kink-core` and writes a CSV table.

pub mod args;
pub mod csv;

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter};
use std::path::Path;

use clap::Parser;
use kink_core::dispersion::{bifurcation_point, classify_quartic, imaginary_roots};
use kink_core::inverse::{
    advance_delay_residual, inverse_params, linspace, mu_s_roots, normalform_residual,
};
use kink_core::lattice::simulate_exact_kink;
use kink_core::shooting::{
    find_sigma_zeros, odd_symmetry_defect, scan, sigma_grid, ShootingConfig,
};
use kink_core::stokes::b_sequence;

use crate::args::{
    BifurcationArgs, Cli, Command, DispersionArgs, FindArgs, InverseArgs, LatticeArgs, QuarticArgs,
    ScanArgs, ShotArgs, StokesArgs,
};
use crate::csv::{write_csv, Cell, Table};

/// Largest `--n` accepted by `stokes`.
pub const STOKES_N_LIMIT: usize = 10_000;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(kink_core::Error),
    Io(io::Error),
}

impl CliError {
    /// 1 for bad input, 2 for numerical or I/O failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) if e.is_numerical() => 2,
            CliError::Core(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<kink_core::Error> for CliError {
    fn from(e: kink_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli).and_then(|table| emit(&table, cli.out.as_deref())) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("kink: {e}");
            e.exit_code()
        }
    }
}

fn emit(table: &Table, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => write_csv(table, &mut BufWriter::new(File::create(path)?))?,
        None => write_csv(table, &mut io::stdout().lock())?,
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> CliResult<Table> {
    let threads = usize::from(cli.threads);
    match &cli.command {
        Command::ScanK(a) => scan_k(a, threads),
        Command::FindKinks(a) => find_kinks(a, threads),
        Command::Bifurcation(a) => bifurcation(a),
        Command::Quartic(a) => Ok(quartic(a)),
        Command::DispersionRoots(a) => dispersion_roots(a),
        Command::Stokes(a) => stokes(a),
        Command::InverseVerify(a) => inverse_verify(a),
        Command::LatticeSim(a) => lattice_sim(a),
    }
}

fn base_config(shot: &ShotArgs, sigma: f64, level: f64) -> ShootingConfig {
    ShootingConfig::new(sigma)
        .with_c0(shot.c0)
        .with_dt(shot.dt)
        .with_t_max(shot.t_max)
        .with_level(level)
}

fn scan_k(a: &ScanArgs, threads: usize) -> CliResult<Table> {
    let model = a.model.nonlinearity();
    let grid = sigma_grid(a.sigma_min, a.sigma_max, a.sigma_step)?;
    let base = base_config(&a.shot, a.sigma_min, a.level);
    let mut table = Table::new(["sigma", "t0", "K"]);
    for row in scan(&grid, &base, &model, threads)? {
        table.push(vec![row.sigma.into(), row.t0().into(), row.k().into()]);
    }
    Ok(table)
}

fn find_kinks(a: &FindArgs, threads: usize) -> CliResult<Table> {
    if !(a.symmetry_window > 0.0) {
        return Err(CliError::Usage(format!(
            "--symmetry-window must be positive, got {}",
            a.symmetry_window
        )));
    }
    let model = a.model.nonlinearity();
    let base = base_config(&a.shot, a.sigma_min, a.level);
    let zeros = find_sigma_zeros(
        a.sigma_min,
        a.sigma_max,
        a.sigma_step,
        &base,
        &model,
        threads,
    )?;
    let mut table = Table::new([
        "sigma_star",
        "bracket_lo",
        "bracket_hi",
        "K_residual",
        "symmetry_defect",
    ]);
    for z in zeros {
        let defect =
            odd_symmetry_defect(&base.with_sigma(z.sigma_star), &model, a.symmetry_window).ok();
        table.push(vec![
            z.sigma_star.into(),
            z.bracket_lo.into(),
            z.bracket_hi.into(),
            z.k_residual.into(),
            defect.into(),
        ]);
    }
    Ok(table)
}

fn bifurcation(a: &BifurcationArgs) -> CliResult<Table> {
    if a.n < 2 {
        return Err(CliError::Usage(format!(
            "--n must be at least 2, got {}",
            a.n
        )));
    }
    let mut table = Table::new(["P", "c", "h", "h_star_asymptote"]);
    for p in linspace(a.p_min, a.p_max, a.n) {
        let bp = bifurcation_point(p)?;
        table.push(vec![
            bp.p.into(),
            bp.c.into(),
            bp.h.into(),
            bp.h_star_asymptote().into(),
        ]);
    }
    Ok(table)
}

fn quartic(a: &QuarticArgs) -> Table {
    let class = classify_quartic(a.gamma, a.tau);
    let mut header = vec!["gamma".to_owned(), "tau".to_owned(), "label".to_owned()];
    for i in 1..=4 {
        header.push(format!("re{i}"));
        header.push(format!("im{i}"));
    }
    let mut table = Table::new(header);
    let mut row = vec![a.gamma.into(), a.tau.into(), class.label.as_str().into()];
    for i in 0..4 {
        match class.roots.get(i) {
            Some(r) => row.extend([r.re.into(), r.im.into()]),
            None => row.extend([Cell::Missing, Cell::Missing]),
        }
    }
    table.push(row);
    table
}

fn dispersion_roots(a: &DispersionArgs) -> CliResult<Table> {
    let mut table = Table::new(["K", "Lambda_im"]);
    for k in imaginary_roots(a.c, a.h, a.k_max)? {
        table.push(vec![k.into(), (2.0 * k).into()]);
    }
    Ok(table)
}

fn stokes(a: &StokesArgs) -> CliResult<Table> {
    if a.n > STOKES_N_LIMIT {
        return Err(CliError::Usage(format!(
            "--n must not exceed {STOKES_N_LIMIT}, got {}",
            a.n
        )));
    }
    let mut table = Table::new(["n", "b_n"]);
    for (n, b) in b_sequence(a.n).values().iter().enumerate() {
        table.push(vec![n.into(), (*b).into()]);
    }
    Ok(table)
}

fn inverse_verify(a: &InverseArgs) -> CliResult<Table> {
    if a.points < 2 || !(a.width > 0.0) {
        return Err(CliError::Usage(
            "--points must be at least 2 and --width positive".to_owned(),
        ));
    }
    let p = inverse_params(a.s, a.mu)?;
    let grid = linspace(-a.width, a.width, a.points);
    let mut table = Table::new(["quantity", "value"]);
    let mut put = |name: &str, v: f64| table.push(vec![name.into(), v.into()]);
    put("s", p.s);
    put("mu", p.mu);
    put("alpha", p.alpha);
    put("beta", p.beta);
    put("h2", p.h2);
    put(
        "advance_delay_residual",
        advance_delay_residual(a.s, a.mu, &grid)?,
    );
    let roots = mu_s_roots(a.gamma_s, a.tau);
    put("gamma_s", a.gamma_s);
    put("tau", a.tau);
    put("mu_s_root_count", roots.len() as f64);
    for (i, &mu) in roots.roots.iter().enumerate() {
        put(&format!("mu_s_{}", i + 1), mu);
        put(
            &format!("normalform_residual_{}", i + 1),
            normalform_residual(a.gamma_s, a.tau, mu, &grid),
        );
    }
    Ok(table)
}

fn lattice_sim(a: &LatticeArgs) -> CliResult<Table> {
    let h = inverse_params(a.s, a.mu)?.h();
    let t_final = a.t_final.unwrap_or(10.0 * h / a.s);
    let dt = a.dt.unwrap_or(h / 50.0);
    if a.halvings > 20 {
        return Err(CliError::Usage(format!(
            "--halvings must not exceed 20, got {}",
            a.halvings
        )));
    }
    let mut table = Table::new(["dt", "t_final", "n_sites", "linf_error"]);
    for i in 0..=a.halvings {
        let dt_i = dt / f64::from(1u32 << i);
        let err = simulate_exact_kink(a.s, a.mu, t_final, dt_i, a.n_sites)?;
        table.push(vec![
            dt_i.into(),
            t_final.into(),
            a.n_sites.into(),
            err.into(),
        ]);
    }
    Ok(table)
}
