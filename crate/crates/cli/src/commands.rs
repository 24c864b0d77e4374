//! Running each subcommand into a [`Report`].

use std::time::Instant;

use orbitq::conventions::dim_cap;
use orbitq::orbit::build_orbit;
use orbitq::quantize::{
    verify_laplacian, verify_schur, verify_theorem, verify_tuynman, CheckReport, SectionSpace, Shift,
};
use orbitq::repr::build_lie_basis;
use orbitq::rootsys::{build_root_system, weyl_dim};
use orbitq::star::{c1_antisymmetry_check, commutator_defect};
use orbitq::OrbitSpec;

use crate::config::{self, Check, CommonArgs, ConfigError, QuadArgs, QuadratureConfig, RunConfig, ShiftArg};
use crate::report::{
    weight_strings, CheckEntry, Environment, LevelInfo, OrbitInfo, Report, SeriesInfo, Timing, Tool, SCHEMA_VERSION,
};

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Core(orbitq::Error),
    Io(std::io::Error),
}

impl CliError {
    /// 2 usage or configuration, 3 resource limit, 4 conditioning.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                orbitq::Error::ResourceLimit { .. } => 3,
                orbitq::Error::IllConditioned { .. } => 4,
                _ => 2,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "configuration error: {e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<orbitq::Error> for CliError {
    fn from(e: orbitq::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A finished run: the report plus one human-readable line per check.
pub struct Outcome {
    pub report: Report,
    pub summary: Vec<String>,
    /// Rows for the CSV sidecar, header first.
    pub csv: Option<Vec<String>>,
}

struct Setup {
    n: usize,
    spec: OrbitSpec,
    levels: Vec<u32>,
}

fn setup(common: &CommonArgs) -> CliResult<Setup> {
    let n = config::parse_group(&common.group)?;
    let xi = config::parse_weight(&common.weight, n)?;
    let levels = config::parse_levels(&common.levels)?;
    let rs = build_root_system(n)?;
    let basis = build_lie_basis(n)?;
    let spec = build_orbit(&rs, &basis, &xi)?;
    Ok(Setup { n, spec, levels })
}

fn base_config(command: &str, s: &Setup) -> RunConfig {
    RunConfig {
        command: command.into(),
        group: format!("su{}", s.n),
        n: s.n,
        weight: weight_strings(&s.spec.xi),
        levels: s.levels.clone(),
        quadrature: None,
        tolerance: None,
        shift: None,
        directions: None,
    }
}

fn finish(config: RunConfig, checks: Vec<CheckEntry>, pass: bool, start: Instant, timing: bool) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        tool: Tool::current(),
        environment: Environment { dim_cap: dim_cap(), seed: config.quadrature.as_ref().and_then(|q| q.seed()) },
        config,
        checks,
        pass,
        orbit: None,
        series: None,
        timing: timing.then(|| Timing { seconds: start.elapsed().as_secs_f64() }),
    }
}

pub fn orbit_info(common: &CommonArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let s = setup(common)?;
    let mut levels = Vec::new();
    let mut summary = vec![format!(
        "SU({}) ξ = {}: real dimension {}, δ_ξ = {}, 2δ_ξ = {}, Einstein constant {}",
        s.n,
        s.spec.xi,
        s.spec.real_dim(),
        s.spec.delta,
        s.spec.two_delta(),
        s.spec.einstein_lambda.map_or("none (not Kähler-Einstein)".to_string(), |l| l.to_string())
    )];
    for &m in &s.levels {
        let level = s.spec.at_level(m)?;
        let dim = weyl_dim(&level.rs, &level.xi)?;
        summary
            .push(format!("m = {m}: weight {}, quantized moment {}, dim H = {dim}", level.xi, level.karabegov_shift));
        levels.push(LevelInfo {
            level: m,
            weight: weight_strings(&level.xi),
            shifted_weight: weight_strings(&level.karabegov_shift),
            dim,
        });
    }
    let config = base_config("orbit info", &s);
    let mut report = finish(config, Vec::new(), true, start, common.timing);
    report.orbit = Some(OrbitInfo::new(&s.spec, levels));
    Ok(Outcome { report, summary, csv: None })
}

fn default_tolerance(check: Check, q: Option<&QuadratureConfig>) -> f64 {
    match (check, q) {
        (Check::Laplacian, _) => 1e-12,
        (_, Some(q)) if q.is_monte_carlo() => 5.0,
        (Check::Schur, _) => 1e-10,
        _ => 1e-8,
    }
}

fn summary_line(r: &CheckReport) -> String {
    let unit = if r.rule.starts_with("haar") { " (threshold k·SE per direction)" } else { "" };
    format!(
        "{} m={} dim={} rule={}: max residual {:.3e}, tol {:e}{unit} -> {}",
        r.check,
        r.level,
        r.dim,
        r.rule,
        r.max_residual,
        r.tolerance.value(),
        if r.pass { "PASS" } else { "FAIL" }
    )
}

pub fn verify(
    check: Check,
    common: &CommonArgs,
    quad: &QuadArgs,
    tol: Option<f64>,
    shift: ShiftArg,
) -> CliResult<Outcome> {
    let start = Instant::now();
    let s = setup(common)?;
    let qc = if check == Check::Laplacian { None } else { Some(config::quadrature(s.n, quad)?) };
    let tol = match tol {
        Some(t) => config::check_tolerance(t)?,
        None => default_tolerance(check, qc.as_ref()),
    };
    let shift_value = config::shift(shift);
    if shift_value == Shift::Plain && check != Check::Theorem {
        return Err(ConfigError("--shift plain only applies to the theorem check".into()).into());
    }
    let mut reports = Vec::new();
    for &m in &s.levels {
        let r = match (check, qc.as_ref()) {
            (Check::Laplacian, _) => verify_laplacian(&s.spec.at_level(m)?, tol)?,
            (_, Some(q)) => {
                let band = SectionSpace::new(&s.spec, m)?.band();
                let rule = q.rule_spec().build(s.n, band)?;
                match check {
                    Check::Theorem => verify_theorem(&s.spec, m, &rule, tol, shift_value)?,
                    Check::Tuynman => verify_tuynman(&s.spec, m, &rule, tol)?,
                    _ => verify_schur(&s.spec, m, &rule, tol)?,
                }
            }
            (_, None) => unreachable!("non-Laplacian checks always carry a quadrature"),
        };
        reports.push(r);
    }
    let pass = reports.iter().all(|r| r.pass);
    let summary = reports.iter().map(summary_line).collect();
    let checks = reports.iter().map(CheckEntry::from).collect();
    let mut config = base_config(&format!("verify {}", check_name(check)), &s);
    config.quadrature = qc;
    config.tolerance = Some(tol);
    config.shift = (check == Check::Theorem).then(|| match shift {
        ShiftArg::Karabegov => "karabegov".to_string(),
        ShiftArg::Plain => "plain".to_string(),
    });
    Ok(Outcome { report: finish(config, checks, pass, start, common.timing), summary, csv: None })
}

fn check_name(c: Check) -> &'static str {
    match c {
        Check::Theorem => "theorem",
        Check::Tuynman => "tuynman",
        Check::Laplacian => "laplacian",
        Check::Schur => "schur",
    }
}

pub struct StarArgs {
    pub u: Option<usize>,
    pub v: Option<usize>,
    pub slope_max: f64,
    pub c1_max: f64,
}

pub fn star(common: &CommonArgs, quad: &QuadArgs, a: &StarArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let s = setup(common)?;
    if s.levels.len() < 3 {
        return Err(orbitq::Error::InsufficientData(format!(
            "the slope fit needs at least 3 levels, got {}",
            s.levels.len()
        ))
        .into());
    }
    let qc = config::quadrature(s.n, quad)?;
    let basis = &s.spec.basis;
    let dim = basis.dim();
    // The first positive root's X and Y sit right after the Cartan block.
    let (iu, iv) = (a.u.unwrap_or(s.n - 1), a.v.unwrap_or(s.n));
    if iu >= dim || iv >= dim {
        return Err(ConfigError(format!("direction indices must be below the Lie algebra dimension {dim}")).into());
    }
    let (u, v) = (basis.unit_vector(iu), basis.unit_vector(iv));
    let rule = qc.rule_spec();
    let rule_name = match qc {
        QuadratureConfig::Su2Euler { order: Some(o), reduced } => {
            format!("su2-euler{}(order={o})", if reduced { "-reduced" } else { "" })
        }
        QuadratureConfig::Su2Euler { order: None, reduced } => {
            format!("su2-euler{}(order=auto)", if reduced { "-reduced" } else { "" })
        }
        QuadratureConfig::HaarMc { samples, seed } => format!("haar-mc(N={samples},seed={seed})"),
    };
    let series = commutator_defect(&s.spec, &u, &v, &s.levels, &rule, true)?;
    let c1 = c1_antisymmetry_check(&s.spec, &u, &v, &s.levels, &rule)?;

    let slope_pass = series.degenerate || series.fitted_slope.is_some_and(|x| x <= a.slope_max);
    let c1_pass = c1.relative_error <= a.c1_max;
    let slope_entry = CheckEntry {
        check: "commutator-slope".into(),
        level: *s.levels.last().unwrap(),
        dim: *series.dims.last().unwrap(),
        rule: rule_name.clone(),
        tolerance_kind: "upper-bound".into(),
        tolerance: a.slope_max,
        // A degenerate pair has no defect to fit; its slope is reported as 0.
        max_residual: series.fitted_slope.unwrap_or(0.0),
        pass: slope_pass,
        directions: Vec::new(),
    };
    let c1_entry = CheckEntry {
        check: "c1-antisymmetry".into(),
        level: c1.levels.1,
        dim: *series.dims.last().unwrap(),
        rule: rule_name.clone(),
        tolerance_kind: "relative".into(),
        tolerance: a.c1_max,
        max_residual: c1.relative_error,
        pass: c1_pass,
        directions: Vec::new(),
    };
    let mut summary: Vec<String> = series
        .levels
        .iter()
        .zip(&series.dims)
        .zip(&series.norms)
        .map(|((m, d), x)| format!("m={m} dim={d}: ‖i·m·[T_u,T_v] − T_{{u,v}}‖ = {x:.6e}"))
        .collect();
    summary.push(match series.fitted_slope {
        Some(sl) => format!(
            "fitted log-log slope {sl:.4} (need ≤ {}) -> {}",
            a.slope_max,
            if slope_pass { "PASS" } else { "FAIL" }
        ),
        None => "defect vanishes identically; no slope to fit".into(),
    });
    summary.push(format!(
        "C₁ antisymmetry relative error {:.4} (need ≤ {}) -> {}",
        c1.relative_error,
        a.c1_max,
        if c1_pass { "PASS" } else { "FAIL" }
    ));
    let mut csv = vec!["m,dim,defect".to_string()];
    csv.extend(
        series.levels.iter().zip(&series.dims).zip(&series.norms).map(|((m, d), x)| format!("{m},{d},{x:.16e}")),
    );

    let mut config = base_config("star", &s);
    config.quadrature = Some(qc);
    config.tolerance = Some(a.slope_max);
    config.directions = Some((iu, iv));
    let mut report = finish(config, vec![slope_entry, c1_entry], slope_pass && c1_pass, start, common.timing);
    report.series = Some(SeriesInfo {
        u: basis.label(iu),
        v: basis.label(iv),
        levels: series.levels.clone(),
        dims: series.dims.clone(),
        defects: series.norms.clone(),
        fitted_slope: series.fitted_slope,
        fitted_constant: series.fitted_constant,
        degenerate: series.degenerate,
        c1_relative_error: c1.relative_error,
        c1_levels: c1.levels,
    });
    Ok(Outcome { report, summary, csv: Some(csv) })
}
