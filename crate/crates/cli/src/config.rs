//! Command-line configuration and its validation.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use orbitq::quantize::{RuleSpec, Shift, MC_BATCH};
use orbitq::rootsys::{WeightVec, Q};

#[derive(Debug, Parser)]
#[command(name = "orbitq", version, about = "Geometric and Toeplitz quantization checks on coadjoint orbits of SU(n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit data: root split, δ_ξ, Karabegov shift, section dimensions.
    Orbit {
        #[command(subcommand)]
        action: OrbitAction,
    },
    /// Run one verification check across all basis directions and levels.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        quad: QuadArgs,
        /// Absolute tolerance (Euler rule) or multiple of the standard error (Monte Carlo).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = ShiftArg::Karabegov)]
        shift: ShiftArg,
    },
    /// Commutator asymptotics `i·m·[T_f, T_g] → T_{f,g}` across levels.
    Star {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        quad: QuadArgs,
        /// Basis index of the first direction (default: X of the first positive root).
        #[arg(long)]
        u: Option<usize>,
        /// Basis index of the second direction (default: Y of the first positive root).
        #[arg(long)]
        v: Option<usize>,
        /// Slope the log-log fit must reach.
        #[arg(long, default_value_t = -0.8, allow_hyphen_values = true)]
        slope_max: f64,
        /// Limit for the C₁ antisymmetry relative error.
        #[arg(long, default_value_t = 0.15)]
        c1_max: f64,
        /// CSV sidecar path (defaults to the report path with a .csv extension).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrbitAction {
    Info {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Theorem,
    Tuynman,
    Laplacian,
    Schur,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShiftArg {
    Karabegov,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuadKind {
    Euler,
    Mc,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// su2, su3, su4, ... (also su(n)).
    #[arg(long)]
    pub group: String,
    /// Comma-separated fundamental-weight coordinates, e.g. `1,1` or `1/2,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: String,
    /// Levels as a list `1,2,4` or range `1..4`.
    #[arg(long, default_value = "1")]
    pub levels: String,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Include wall-clock timing (makes the report run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    /// Quadrature; defaults to `euler` on SU(2) and `mc` otherwise.
    #[arg(long, value_enum)]
    pub quadrature: Option<QuadKind>,
    /// Euler-rule order (default `2(band + 2)`, exact for the integrands used).
    #[arg(long)]
    pub order: Option<usize>,
    /// Drop the γ angle of the Euler rule (exact for torus-invariant integrands).
    #[arg(long)]
    pub reduced: bool,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Validated configuration, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub group: String,
    pub n: usize,
    pub weight: Vec<String>,
    pub levels: Vec<u32>,
    pub quadrature: Option<QuadratureConfig>,
    pub tolerance: Option<f64>,
    pub shift: Option<String>,
    pub directions: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QuadratureConfig {
    Su2Euler { order: Option<usize>, reduced: bool },
    HaarMc { samples: usize, seed: u64 },
}

impl QuadratureConfig {
    pub fn rule_spec(&self) -> RuleSpec {
        match *self {
            QuadratureConfig::Su2Euler { order, reduced } => RuleSpec::Su2Euler { order, reduced },
            QuadratureConfig::HaarMc { samples, seed } => RuleSpec::HaarMc { samples, seed },
        }
    }

    pub fn is_monte_carlo(&self) -> bool {
        matches!(self, QuadratureConfig::HaarMc { .. })
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            QuadratureConfig::HaarMc { seed, .. } => Some(seed),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

pub fn parse_group(s: &str) -> Result<usize, ConfigError> {
    let t = s.trim().to_ascii_lowercase();
    let digits = t
        .strip_prefix("su(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("su"))
        .ok_or_else(|| ConfigError(format!("unknown group `{s}`; expected su2, su3, ... or su(n)")))?;
    match digits.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => bad(format!("unknown group `{s}`; n must be an integer ≥ 2")),
    }
}

fn parse_rational(s: &str) -> Result<Q, ConfigError> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((p, q)) => match (p.trim().parse::<i64>(), q.trim().parse::<i64>()) {
            (Ok(p), Ok(q)) if q != 0 => Some(Ratio::new(p, q)),
            _ => None,
        },
        None => s.parse::<i64>().ok().map(Ratio::from_integer),
    };
    parsed.ok_or_else(|| ConfigError(format!("weight coordinate `{s}` is not an integer or fraction p/q")))
}

pub fn parse_weight(s: &str, n: usize) -> Result<WeightVec, ConfigError> {
    let coords = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    if coords.len() != n - 1 {
        return bad(format!("SU({n}) weights have {} coordinates, got {} in `{s}`", n - 1, coords.len()));
    }
    Ok(WeightVec::new(coords))
}

pub fn parse_levels(s: &str) -> Result<Vec<u32>, ConfigError> {
    let s = s.trim();
    let levels: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = match (a.trim().parse::<u32>(), b.trim().trim_start_matches('=').parse::<u32>()) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return bad(format!("level range `{s}` must look like 1..4")),
        };
        (a..=b).collect()
    } else {
        s.split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| ConfigError(format!("level `{x}` is not a positive integer"))))
            .collect::<Result<_, _>>()?
    };
    if levels.is_empty() || levels.contains(&0) {
        return bad("levels must be positive integers");
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return bad("levels must be strictly increasing");
    }
    Ok(levels)
}

pub fn quadrature(n: usize, q: &QuadArgs) -> Result<QuadratureConfig, ConfigError> {
    let kind = q.quadrature.unwrap_or(if n == 2 { QuadKind::Euler } else { QuadKind::Mc });
    match kind {
        QuadKind::Euler => {
            if n != 2 {
                return bad("the Euler-angle rule only exists for su2; use --quadrature mc");
            }
            if let Some(o) = q.order {
                if o < 2 {
                    return bad("--order must be at least 2");
                }
            }
            Ok(QuadratureConfig::Su2Euler { order: q.order, reduced: q.reduced })
        }
        QuadKind::Mc => {
            if q.samples < MC_BATCH {
                return bad(format!("--samples must be at least {MC_BATCH}"));
            }
            Ok(QuadratureConfig::HaarMc { samples: q.samples, seed: q.seed })
        }
    }
}

pub fn shift(s: ShiftArg) -> Shift {
    match s {
        ShiftArg::Karabegov => Shift::Karabegov,
        ShiftArg::Plain => Shift::Plain,
    }
}

pub fn check_tolerance(tol: f64) -> Result<f64, ConfigError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        bad(format!("tolerance must be a positive number, got {tol}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        assert_eq!(parse_group("su2"), Ok(2));
        assert_eq!(parse_group("SU(5)"), Ok(5));
        assert!(parse_group("su1").is_err());
        assert!(parse_group("sp4").is_err());
    }

    #[test]
    fn weights() {
        let w = parse_weight("1, 2/3", 3).unwrap();
        assert_eq!(w.coords, vec![Ratio::from_integer(1), Ratio::new(2, 3)]);
        assert!(parse_weight("1", 3).is_err());
        assert!(parse_weight("1/0,1", 3).is_err());
        assert!(parse_weight("x", 2).is_err());
    }

    #[test]
    fn levels() {
        assert_eq!(parse_levels("1..4"), Ok(vec![1, 2, 3, 4]));
        assert_eq!(parse_levels("2,4,8"), Ok(vec![2, 4, 8]));
        assert!(parse_levels("0,1").is_err());
        assert!(parse_levels("4,2").is_err());
        assert!(parse_levels("3..1").is_err());
    }
}
