//! The theorem, Tuynman, Laplacian and Schur checks, with per-direction
//! records.

use crate::linalg::{frobenius, CMat, C64};
use crate::orbit::{laplacian_of_moment_function, laplacian_on_adjoint, OrbitFunction, OrbitSpec};
use crate::repr::adjoint_rep;
use crate::rootsys::{WeightVec, Q};
use crate::{Error, Result};

use super::quadrature::{build_haar_mc, build_su2_orbit_quadrature, build_su2_quadrature, QuadratureRule};
use super::sections::{accumulate, Accumulation, SectionSpace};

/// Which moment map is quantized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    /// `mξ + 2δ_ξ`.
    Karabegov,
    /// `mξ`, the uncorrected moment map.
    Plain,
}

impl Shift {
    pub fn eta(self, level: &OrbitSpec) -> WeightVec {
        match self {
            Shift::Karabegov => level.karabegov_shift.clone(),
            Shift::Plain => level.xi.clone(),
        }
    }
}

/// Absolute for deterministic rules; a multiple of the standard error for
/// Monte Carlo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Absolute(f64),
    StandardErrors(f64),
}

impl Tolerance {
    pub fn for_rule(rule: &QuadratureRule, tol: f64) -> Self {
        if rule.is_monte_carlo() {
            Tolerance::StandardErrors(tol)
        } else {
            Tolerance::Absolute(tol)
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Tolerance::Absolute(t) | Tolerance::StandardErrors(t) => t,
        }
    }

    fn threshold(&self, se: Option<f64>) -> f64 {
        match *self {
            Tolerance::Absolute(t) => t,
            Tolerance::StandardErrors(k) => k * se.unwrap_or(0.0),
        }
    }
}

/// How to build a rule for a given section space.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleSpec {
    /// Euler product rule on `SU(2)`; `order: None` picks `2(band + 2)`.
    Su2Euler {
        order: Option<usize>,
        reduced: bool,
    },
    HaarMc {
        samples: usize,
        seed: u64,
    },
}

impl RuleSpec {
    pub fn build(&self, n: usize, band: u64) -> Result<QuadratureRule> {
        match *self {
            RuleSpec::Su2Euler { order, reduced } => {
                if n != 2 {
                    return Err(Error::InvalidArgument("the Euler-angle rule is only available for SU(2)".into()));
                }
                let order = order.unwrap_or(2 * (band as usize + 2));
                if reduced {
                    build_su2_orbit_quadrature(order)
                } else {
                    build_su2_quadrature(order)
                }
            }
            RuleSpec::HaarMc { samples, seed } => build_haar_mc(n, samples, seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionRecord {
    pub direction: String,
    pub residual: f64,
    /// `‖β(v)‖_F`, the scale of the identity being tested.
    pub beta_norm: f64,
    pub standard_error: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub n: usize,
    pub xi: WeightVec,
    pub level: u32,
    pub dim: usize,
    pub rule: String,
    pub tolerance: Tolerance,
    pub records: Vec<DirectionRecord>,
    pub max_residual: f64,
    pub pass: bool,
}

impl CheckReport {
    fn new(
        check: &str,
        spec: &OrbitSpec,
        level: u32,
        dim: usize,
        rule: String,
        tolerance: Tolerance,
        records: Vec<DirectionRecord>,
    ) -> Self {
        let max_residual = records.iter().map(|r| r.residual).fold(0.0, f64::max);
        let pass = records.iter().all(|r| r.pass);
        CheckReport {
            check: check.to_string(),
            n: spec.rs.n,
            xi: spec.xi.clone(),
            level,
            dim,
            rule,
            tolerance,
            records,
            max_residual,
            pass,
        }
    }
}

type ToeplitzFn<'a> = dyn Fn(&OrbitFunction) -> Result<CMat> + 'a;

fn direction_records<R>(
    space: &SectionSpace,
    acc: &Accumulation,
    tol: Tolerance,
    residual: R,
) -> Result<Vec<DirectionRecord>>
where
    R: Fn(&ToeplitzFn<'_>, &[f64]) -> Result<CMat>,
{
    let basis = &space.spec.basis;
    (0..basis.dim())
        .map(|i| {
            let v = basis.unit_vector(i);
            let full = |f: &OrbitFunction| acc.toeplitz_matrix(f);
            let r = frobenius(&residual(&full, &v)?);
            let se = acc.batch_standard_error(|b| {
                let part = |f: &OrbitFunction| acc.batch_toeplitz(b, f);
                residual(&part, &v)
            })?;
            let threshold = tol.threshold(se);
            Ok(DirectionRecord {
                direction: basis.label(i),
                residual: r,
                beta_norm: frobenius(&space.beta(&v)?),
                standard_error: se,
                threshold,
                pass: r <= threshold,
            })
        })
        .collect()
}

/// `D(v) = ‖β(v) + i·T(f_{v,η})‖_F` for every basis direction, with `η` the
/// Karabegov shift `mξ + 2δ_ξ` (or `mξ` for the negative control).
pub fn verify_theorem(spec: &OrbitSpec, m: u32, rule: &QuadratureRule, tol: f64, shift: Shift) -> Result<CheckReport> {
    let space = SectionSpace::new(spec, m)?;
    let eta = shift.eta(&space.spec);
    let acc = accumulate(&space, std::slice::from_ref(&eta), rule)?;
    let tol = Tolerance::for_rule(rule, tol);
    let records = direction_records(&space, &acc, tol, |t, v| {
        let f = OrbitFunction::moment(v.to_vec(), eta.clone());
        Ok(space.beta(v)? + t(&f)? * C64::new(0.0, 1.0))
    })?;
    let name = match shift {
        Shift::Karabegov => "theorem",
        Shift::Plain => "theorem-plain",
    };
    Ok(CheckReport::new(name, spec, m, space.dim(), rule.descriptor(), tol, records))
}

fn tuynman_channels(space: &SectionSpace) -> Result<(OrbitFunction, OrbitFunction, Vec<WeightVec>)> {
    let level = &space.spec;
    let f = OrbitFunction::moment(vec![0.0; level.basis.dim()], level.xi.clone());
    let df = laplacian_of_moment_function(level, &f)?;
    let mut channels = vec![level.xi.clone()];
    if !df.eta.is_zero() && df.eta.ratio_to(&level.xi).is_none() {
        channels.push(df.eta.clone());
    }
    Ok((f, df, channels))
}

fn tuynman_matrix(
    space: &SectionSpace,
    t: &ToeplitzFn<'_>,
    f: &OrbitFunction,
    df: &OrbitFunction,
    v: &[f64],
) -> Result<CMat> {
    let fv = OrbitFunction { w: v.to_vec(), ..f.clone() };
    let dfv = OrbitFunction { w: v.to_vec(), ..df.clone() };
    let i = C64::new(0.0, 1.0);
    Ok(space.beta(v)? + t(&fv)? * i - t(&dfv)? * (i * 0.5))
}

/// `‖β(v) + i·T(f_{v,mξ}) − (i/2)·T(Δf_{v,mξ})‖_F` for one direction.
pub fn tuynman_check(space: &SectionSpace, v: &[f64], rule: &QuadratureRule) -> Result<f64> {
    let (f, df, channels) = tuynman_channels(space)?;
    let acc = accumulate(space, &channels, rule)?;
    let t = |g: &OrbitFunction| acc.toeplitz_matrix(g);
    Ok(frobenius(&tuynman_matrix(space, &t, &f, &df, v)?))
}

/// The Tuynman residual across all basis directions.
pub fn verify_tuynman(spec: &OrbitSpec, m: u32, rule: &QuadratureRule, tol: f64) -> Result<CheckReport> {
    let space = SectionSpace::new(spec, m)?;
    let (f, df, channels) = tuynman_channels(&space)?;
    let acc = accumulate(&space, &channels, rule)?;
    let tol = Tolerance::for_rule(rule, tol);
    let records = direction_records(&space, &acc, tol, |t, v| tuynman_matrix(&space, t, &f, &df, v))?;
    Ok(CheckReport::new("tuynman", spec, m, space.dim(), rule.descriptor(), tol, records))
}

/// `‖gram − I/dim‖_F`.
pub fn verify_schur(spec: &OrbitSpec, m: u32, rule: &QuadratureRule, tol: f64) -> Result<CheckReport> {
    let space = SectionSpace::new(spec, m)?;
    let acc = accumulate(&space, &[], rule)?;
    let dim = space.dim();
    let target = CMat::identity(dim, dim) / C64::new(dim as f64, 0.0);
    let residual = frobenius(&(&acc.gram - &target));
    let se = acc.batch_standard_error(|b| Ok(acc.batch_gram(b) - &target))?;
    let tol = Tolerance::for_rule(rule, tol);
    let threshold = tol.threshold(se);
    let rec = DirectionRecord {
        direction: "gram".into(),
        residual,
        beta_norm: frobenius(&target),
        standard_error: se,
        threshold,
        pass: residual <= threshold,
    };
    Ok(CheckReport::new("schur", spec, m, dim, rule.descriptor(), tol, vec![rec]))
}

/// `max |Ω(ξ^∨) + 4δ_ξ^∨|` on the adjoint representation.
pub fn verify_laplacian(spec: &OrbitSpec, tol: f64) -> Result<CheckReport> {
    let ad = adjoint_rep(&spec.rs, &spec.basis);
    let got = laplacian_on_adjoint(spec, &ad, &spec.xi)?;
    let want = spec.basis.dual_of_weight(&spec.delta.scale(Q::from_integer(-4)));
    let residual = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let rec = DirectionRecord {
        direction: "xi".into(),
        residual,
        beta_norm: want.iter().map(|x| x.abs()).fold(0.0, f64::max),
        standard_error: None,
        threshold: tol,
        pass: residual <= tol,
    };
    Ok(CheckReport::new("laplacian", spec, 1, ad.dim, "exact".into(), Tolerance::Absolute(tol), vec![rec]))
}
