use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ring_ritz::{BasisSpec, Interaction, Parity, QuadratureSpec, RingGeometry};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "ring-ritz", version, about = "Two particles on concentric rings: plane-wave Rayleigh-Ritz solver and Mathieu references")]
pub struct Cli {
    /// Pair interaction
    #[arg(long, value_enum, default_value = "coulomb", global = true)]
    pub interaction: InteractionKind,

    /// Harmonic strength Ω (required with --interaction harmonic)
    #[arg(long, global = true)]
    pub omega: Option<f64>,

    /// Inner ring radius
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r1: Option<f64>,

    /// Outer ring radius
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r2: Option<f64>,

    /// Truncation order N (even); modes run over -N/2..=N/2 on each ring
    #[arg(long, default_value_t = 14, global = true)]
    pub n: u32,

    /// Number of eigenstates to report
    #[arg(long, default_value_t = 1, global = true)]
    pub k: usize,

    /// Starting node count of the periodic trapezoid rule (doubled until converged)
    #[arg(long, default_value_t = 256, global = true)]
    pub quad: usize,

    /// Output format
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,

    /// Output file (or directory when a command emits several tables); standard output if omitted
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InteractionKind {
    Coulomb,
    Harmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Even,
    Odd,
}

impl From<BranchArg> for Parity {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Even => Parity::Even,
            BranchArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Table1,
    Table2,
    Fig1,
    HarmonicEnergies,
    Sweep,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest --k states: energies and plane-wave coefficients (state, energy, k, l, c)
    Solve {
        /// Omit coefficients with |c| below this value
        #[arg(long, default_value_t = 0.0)]
        min_coeff: f64,
    },
    /// Lowest --k levels of the two-ring spectrum with their total angular momentum
    Spectrum,
    /// Mathieu characteristic value a_order(q) or b_order(q), optionally with its profile
    Mathieu {
        /// Mathieu parameter q
        #[arg(long, allow_hyphen_values = true)]
        q: f64,
        /// even: a (cosine series); odd: b (sine series)
        #[arg(long, value_enum)]
        branch: BranchArg,
        /// Even order 2n
        #[arg(long, default_value_t = 0)]
        order: u32,
        /// Also emit the eigenfunction on this many uniform ω points
        #[arg(long)]
        profile: Option<usize>,
    },
    /// One-dimensional relative-angle reference spectrum
    Oracle {
        /// Fourier modes p = -M..=M
        #[arg(long, default_value_t = 64)]
        modes: usize,
        /// Total angular momentum sector; parity labels only exist for sector 0
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        total: i32,
    },
    /// Ground energy against truncation order (N, energy, delta, seconds)
    Sweep {
        /// Comma-separated even truncation orders; defaults to 2, 4, ..., --n
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<u32>,
        /// Write 0 in the seconds column so output is byte-stable
        #[arg(long)]
        no_timing: bool,
    },
    /// Regenerate reference tables and figure data
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        /// Write 0 in the seconds column of sweeps
        #[arg(long)]
        no_timing: bool,
    },
}

/// Validated run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub geometry: Option<RingGeometry>,
    pub interaction: Interaction,
    pub basis: BasisSpec,
    pub quad: QuadratureSpec,
    pub eigen_count: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub action: Action,
}

#[derive(Debug, Clone)]
pub enum Action {
    Solve { min_coeff: f64 },
    Spectrum,
    Mathieu { query: ring_ritz::MathieuQuery, profile: Option<usize> },
    Oracle { modes: usize, total: i32 },
    Sweep { n_list: Vec<u32>, timing: bool },
    Reproduce { target: Target, timing: bool },
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, String> {
        let basis = BasisSpec::new(cli.n).map_err(|e| e.to_string())?;
        let quad = QuadratureSpec::new(cli.quad).map_err(|e| e.to_string())?;
        let interaction = match (cli.interaction, cli.omega) {
            (InteractionKind::Coulomb, None) => Interaction::Coulomb,
            (InteractionKind::Coulomb, Some(_)) => {
                return Err("--omega only applies to --interaction harmonic".into())
            }
            (InteractionKind::Harmonic, Some(w)) => Interaction::harmonic(w).map_err(|e| e.to_string())?,
            (InteractionKind::Harmonic, None) => {
                return Err("--interaction harmonic requires --omega".into())
            }
        };
        let geometry = match (cli.r1, cli.r2) {
            (Some(r1), Some(r2)) => Some(RingGeometry::new(r1, r2).map_err(|e| e.to_string())?),
            (None, None) => None,
            _ => return Err("--r1 and --r2 must be given together".into()),
        };
        if cli.k == 0 {
            return Err("--k must be at least 1".into());
        }

        let needs_geometry = |name: &str| -> Result<(), String> {
            if geometry.is_none() {
                Err(format!("`{name}` requires --r1 and --r2"))
            } else {
                Ok(())
            }
        };

        let action = match &cli.command {
            Command::Solve { min_coeff } => {
                needs_geometry("solve")?;
                if cli.k > basis.dim() {
                    return Err(format!("--k {} exceeds the basis dimension {}", cli.k, basis.dim()));
                }
                if !(min_coeff.is_finite() && *min_coeff >= 0.0) {
                    return Err("--min-coeff must be a nonnegative number".into());
                }
                Action::Solve { min_coeff: *min_coeff }
            }
            Command::Spectrum => {
                needs_geometry("spectrum")?;
                if cli.k > basis.dim() {
                    return Err(format!("--k {} exceeds the basis dimension {}", cli.k, basis.dim()));
                }
                Action::Spectrum
            }
            Command::Mathieu { q, branch, order, profile } => {
                let query = ring_ritz::MathieuQuery::new(*q, (*branch).into(), *order)
                    .map_err(|e| e.to_string())?;
                if let Some(points) = profile {
                    if *points == 0 {
                        return Err("--profile needs at least one point".into());
                    }
                }
                Action::Mathieu { query, profile: *profile }
            }
            Command::Oracle { modes, total } => {
                needs_geometry("oracle")?;
                if *modes < 8 {
                    return Err("--modes must be at least 8".into());
                }
                Action::Oracle { modes: *modes, total: *total }
            }
            Command::Sweep { n_list, no_timing } => {
                needs_geometry("sweep")?;
                let n_list = if n_list.is_empty() {
                    (1..=cli.n / 2).map(|i| 2 * i).collect()
                } else {
                    n_list.clone()
                };
                if n_list.is_empty() {
                    return Err("sweep needs at least one truncation order".into());
                }
                for &n in &n_list {
                    BasisSpec::new(n).map_err(|e| e.to_string())?;
                }
                if n_list.windows(2).any(|w| w[1] < w[0]) {
                    return Err("--n-list must be ascending".into());
                }
                Action::Sweep { n_list, timing: !no_timing }
            }
            Command::Reproduce { target, no_timing } => Action::Reproduce {
                target: *target,
                timing: !no_timing,
            },
        };

        Ok(Self {
            geometry,
            interaction,
            basis,
            quad,
            eigen_count: cli.k,
            format: cli.format,
            out: cli.out.clone(),
            action,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig, String> {
        let cli = Cli::try_parse_from(std::iter::once("ring-ritz").chain(args.iter().copied()))
            .map_err(|e| e.to_string())?;
        RunConfig::from_cli(&cli)
    }

    #[test]
    fn defaults() {
        let c = config(&["solve", "--r1", "1", "--r2", "2"]).unwrap();
        assert_eq!(c.basis.n_trunc(), 14);
        assert_eq!(c.quad.points(), 256);
        assert_eq!(c.eigen_count, 1);
        assert_eq!(c.format, Format::Csv);
        assert!(c.out.is_none());
    }

    #[test]
    fn rejects_invalid_configuration() {
        assert!(config(&["solve", "--r1", "1", "--r2", "2", "--n", "3"]).is_err());
        assert!(config(&["solve", "--r1", "3", "--r2", "2"]).is_err());
        assert!(config(&["solve", "--r1", "1"]).is_err());
        assert!(config(&["solve"]).is_err());
        assert!(config(&["solve", "--r1", "1", "--r2", "2", "--interaction", "harmonic"]).is_err());
        assert!(config(&["solve", "--r1", "1", "--r2", "2", "--omega", "1"]).is_err());
        assert!(config(&["solve", "--r1", "1", "--r2", "2", "--n", "2", "--k", "10"]).is_err());
        assert!(config(&["mathieu", "--q", "1", "--branch", "odd", "--order", "0"]).is_err());
        assert!(config(&["sweep", "--r1", "1", "--r2", "2", "--n-list", "4,2"]).is_err());
        assert!(config(&["solve", "--r1", "1", "--r2", "2", "--quad", "3"]).is_err());
    }

    #[test]
    fn equal_radii_pass_validation() {
        // the singular Coulomb integrand is a computation error, not a usage error
        assert!(config(&["solve", "--r1", "2", "--r2", "2", "--n", "4"]).is_ok());
    }

    #[test]
    fn negative_q_is_accepted() {
        let c = config(&["mathieu", "--q", "-6.4", "--branch", "odd", "--order", "2"]).unwrap();
        match c.action {
            Action::Mathieu { query, .. } => assert_eq!(query.q(), -6.4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sweep_default_list() {
        let c = config(&["sweep", "--r1", "1", "--r2", "2", "--n", "6"]).unwrap();
        match c.action {
            Action::Sweep { n_list, timing } => {
                assert_eq!(n_list, vec![2, 4, 6]);
                assert!(timing);
            }
            other => panic!("{other:?}"),
        }
    }
}
