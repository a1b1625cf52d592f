//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kink_core::shooting::{DEFAULT_C0, DEFAULT_DT, DEFAULT_T_MAX};
use kink_core::Nonlinearity;

#[derive(Debug, Parser)]
#[command(
    name = "kink",
    version,
    about = "Kink shooting, dispersion, Stokes and lattice analyses as CSV"
)]
pub struct Cli {
    /// Output file; standard output when omitted
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads for sigma scans
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split function K over a sigma grid
    ScanK(ScanArgs),
    /// Bisected zeros of K (double kinks)
    FindKinks(FindArgs),
    /// Sampled 1:1 resonance curve (c(P), h(P))
    Bifurcation(BifurcationArgs),
    /// Root structure of the normal-form quartic
    Quartic(QuarticArgs),
    /// Imaginary roots Lambda = 2iK of the lattice dispersion relation
    DispersionRoots(DispersionArgs),
    /// Diagonal Stokes sequence b_n
    Stokes(StokesArgs),
    /// Residuals of the exact tanh solutions of the inverse construction
    InverseVerify(InverseArgs),
    /// Lattice simulation started on the exact kink
    LatticeSim(LatticeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Phi4,
    SineGordon,
}

impl ModelArg {
    pub fn nonlinearity(self) -> Nonlinearity {
        match self {
            ModelArg::Phi4 => Nonlinearity::Phi4,
            ModelArg::SineGordon => Nonlinearity::SineGordon,
        }
    }
}

/// `zero`, `pi`, `2pi` or a number.
pub fn parse_level(s: &str) -> Result<f64, String> {
    match s.trim() {
        "zero" => Ok(0.0),
        "pi" => Ok(std::f64::consts::PI),
        "2pi" => Ok(std::f64::consts::TAU),
        other => match other.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(format!(
                "expected zero, pi, 2pi or a finite number, got {other:?}"
            )),
        },
    }
}

#[derive(Debug, Clone, Args)]
pub struct ShotArgs {
    /// Offset along the unstable eigenvector
    #[arg(long, default_value_t = DEFAULT_C0)]
    pub c0: f64,
    /// RK4 step
    #[arg(long, default_value_t = DEFAULT_DT)]
    pub dt: f64,
    /// Give up when no crossing occurs before this time
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    pub t_max: f64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Phi4)]
    pub model: ModelArg,
    #[arg(long, default_value_t = 2.5)]
    pub sigma_min: f64,
    #[arg(long, default_value_t = 8.0)]
    pub sigma_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub sigma_step: f64,
    /// Crossing level: zero, pi, 2pi or a number
    #[arg(long, default_value = "zero", value_parser = parse_level)]
    pub level: f64,
    #[command(flatten)]
    pub shot: ShotArgs,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::SineGordon)]
    pub model: ModelArg,
    #[arg(long, default_value_t = 2.0)]
    pub sigma_min: f64,
    #[arg(long, default_value_t = 12.0)]
    pub sigma_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub sigma_step: f64,
    /// Crossing level: zero, pi, 2pi or a number
    #[arg(long, default_value = "pi", value_parser = parse_level)]
    pub level: f64,
    /// Half width of the window for the point-symmetry check
    #[arg(long, default_value_t = 5.0)]
    pub symmetry_window: f64,
    #[command(flatten)]
    pub shot: ShotArgs,
}

#[derive(Debug, Args)]
pub struct BifurcationArgs {
    #[arg(long, default_value_t = 0.01)]
    pub p_min: f64,
    #[arg(long, default_value_t = 1.56)]
    pub p_max: f64,
    /// Number of samples
    #[arg(long, default_value_t = 100)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct QuarticArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: f64,
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    #[arg(long, default_value_t = 0.0)]
    pub c: f64,
    #[arg(long, default_value_t = 1.0)]
    pub h: f64,
    #[arg(long, default_value_t = 20.0)]
    pub k_max: f64,
}

#[derive(Debug, Args)]
pub struct StokesArgs {
    /// Largest index n
    #[arg(long, default_value_t = 100)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct InverseArgs {
    /// Wave speed
    #[arg(long, default_value_t = 0.8)]
    pub s: f64,
    /// Kink steepness
    #[arg(long, default_value_t = 0.5)]
    pub mu: f64,
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    pub gamma_s: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    /// Half width of the evaluation grid
    #[arg(long, default_value_t = 20.0)]
    pub width: f64,
    #[arg(long, default_value_t = 801)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[arg(long, default_value_t = 0.8)]
    pub s: f64,
    #[arg(long, default_value_t = 0.5)]
    pub mu: f64,
    #[arg(long, default_value_t = 400)]
    pub n_sites: usize,
    /// Final time; defaults to the time the front needs to cross 10 sites
    #[arg(long)]
    pub t_final: Option<f64>,
    /// Verlet step; defaults to h/50
    #[arg(long)]
    pub dt: Option<f64>,
    /// Additional runs, each with dt halved
    #[arg(long, default_value_t = 1)]
    pub halvings: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn symbolic_levels() {
        assert_eq!(parse_level("zero").unwrap(), 0.0);
        assert_eq!(parse_level("pi").unwrap(), std::f64::consts::PI);
        assert_eq!(parse_level("2pi").unwrap(), 2.0 * std::f64::consts::PI);
        assert_eq!(parse_level("-0.5").unwrap(), -0.5);
        assert!(parse_level("tau").is_err());
        assert!(parse_level("inf").is_err());
    }
}
