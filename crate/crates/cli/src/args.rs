use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heat_trace::verify::Suite;
use heat_trace::Coupling;

/// Regularized one-loop free energies on S¹, cycle graphs, odd spheres and
/// their finite-N deformations.
#[derive(Debug, Parser)]
#[command(name = "heat-trace", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a single free energy.
    Compute(ComputeArgs),
    /// Sweep the number of sites N for a deformed sphere and print the
    /// distance to the continuum value.
    Sweep(SweepArgs),
    /// Run the reproduction checks and report pass/fail per check.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Circle of radius a: ln(2 sinh πma).
    S1,
    /// Cycle graph C_N with the lattice mass matching S¹.
    Cycle,
    /// Odd sphere S^d.
    Sphere,
    /// Trigonometrically deformed S^d on N sites.
    Deformed,
    /// q-binomial degeneracy variant on S³ (through order 1/N²).
    Qdeformed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CouplingArg {
    Conformal,
    #[value(alias = "pseudo_conformal", alias = "pseudo-conformal")]
    Pc,
}

impl From<CouplingArg> for Coupling {
    fn from(c: CouplingArg) -> Self {
        match c {
            CouplingArg::Conformal => Coupling::Conformal,
            CouplingArg::Pc => Coupling::PseudoConformal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Pick the preferred route for the target.
    Auto,
    /// Convergent series (winding sum, Poisson-resummed trace, η/ζ series).
    Series,
    /// Integral representation.
    Integral,
    /// Zeta-regularized degeneracy polynomial.
    Zeta,
    /// Bessel-function expansion of the lattice trace.
    Bessel,
    /// Exact log-determinant of the lattice operator.
    Logdet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(value_enum)]
    pub target: Target,
    /// Odd sphere dimension (sphere, deformed, qdeformed).
    #[arg(long)]
    pub d: Option<u32>,
    /// Number of sites (cycle, deformed, qdeformed).
    #[arg(long = "N", visible_alias = "n")]
    pub n: Option<u32>,
    #[arg(long, value_enum, default_value = "conformal")]
    pub coupling: CouplingArg,
    /// Mass times radius, m·a.
    #[arg(long)]
    pub ma: Option<f64>,
    /// Pauli–Villars regulator mass times radius (s1 only).
    #[arg(long = "Ma")]
    pub big_ma: Option<f64>,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Absolute tolerance [default: 1e-12, or $HEAT_TRACE_TOL].
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub d: u32,
    /// Range start:stop:step (stop inclusive), or a single N.
    #[arg(long = "N", visible_alias = "n")]
    pub n: NRange,
    #[arg(long, value_enum, default_value = "conformal")]
    pub coupling: CouplingArg,
    /// auto, series (d = 3, 5) or integral.
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Absolute tolerance [default: 1e-12, or $HEAT_TRACE_TOL].
    #[arg(long)]
    pub tol: Option<f64>,
    /// csv or json.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: u32,
    pub stop: u32,
    pub step: u32,
}

impl NRange {
    pub fn values(&self) -> Vec<u32> {
        (self.start..=self.stop)
            .step_by(self.step as usize)
            .collect()
    }
}

impl std::str::FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad integer '{p}': {e}"))
        };
        let (start, stop, step) = match parts.as_slice() {
            [one] => {
                let n = num(one)?;
                (n, n, 1)
            }
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(format!("expected start:stop:step, got '{s}'")),
        };
        if step == 0 || stop < start {
            return Err(format!("empty range '{s}'"));
        }
        Ok(NRange { start, stop, step })
    }
}
