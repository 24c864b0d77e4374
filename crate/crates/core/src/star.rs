//! Finite-level Berezin–Toeplitz asymptotics: `i·m·[T_f, T_g] → T_{{f,g}}`
//! and a two-point estimate of the antisymmetrized first-order coefficient.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{commutator, op_norm, CMat, C64};
use crate::orbit::{MomentEvaluator, OrbitFunction, OrbitSpec};
use crate::quantize::{accumulate, haar_sample, RuleSpec, SectionSpace};
use crate::repr::LieBasis;
use crate::rootsys::WeightVec;
use crate::{Error, Result};

/// `{f_{u,η}, f_{v,η}} = f_{[v,u],η}` (see [`crate::conventions`]).
pub fn poisson_bracket_moment(basis: &LieBasis, u: &[f64], v: &[f64], eta: &WeightVec) -> OrbitFunction {
    OrbitFunction::moment(basis.bracket(v, u), eta.clone()).with_descriptor(format!("{{f_u,f_v}}[{eta}]"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticSeries {
    pub levels: Vec<u32>,
    pub dims: Vec<usize>,
    pub norms: Vec<f64>,
    /// Least-squares fit `log d_m ≈ slope·log m + constant`; absent when a
    /// norm is exactly zero.
    pub fitted_slope: Option<f64>,
    pub fitted_constant: Option<f64>,
    /// The bracket vanishes identically (e.g. `u = v`).
    pub degenerate: bool,
    /// Whether the `i·m` normalization was applied.
    pub normalized: bool,
}

fn check_levels(levels: &[u32]) -> Result<()> {
    if levels.len() < 3 {
        return Err(Error::InsufficientData(format!("need at least 3 levels, got {}", levels.len())));
    }
    if levels[0] == 0 || levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("levels must be positive and strictly increasing".into()));
    }
    Ok(())
}

struct LevelData {
    space: SectionSpace,
    tu: CMat,
    tv: CMat,
    tpb: CMat,
}

fn level_data(spec: &OrbitSpec, m: u32, u: &[f64], v: &[f64], rule: &RuleSpec) -> Result<LevelData> {
    let space = SectionSpace::new(spec, m)?;
    let r = rule.build(spec.rs.n, space.band())?;
    let acc = accumulate(&space, std::slice::from_ref(&space.spec.xi), &r)?;
    let fu = OrbitFunction::moment(u.to_vec(), spec.xi.clone());
    let fv = OrbitFunction::moment(v.to_vec(), spec.xi.clone());
    let pb = poisson_bracket_moment(&spec.basis, u, v, &spec.xi);
    Ok(LevelData {
        tu: acc.toeplitz_matrix(&fu)?,
        tv: acc.toeplitz_matrix(&fv)?,
        tpb: acc.toeplitz_matrix(&pb)?,
        space,
    })
}

/// Least-squares line through `(x_i, y_i)`: `(slope, intercept)`.
pub fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// `d_m = ‖i·m·[T_{f_u}, T_{f_v}] − T_{{f_u,f_v}}‖_op` with `f_• = f_{•,ξ}`
/// held fixed across levels, plus a log-log fit. With `normalized = false`
/// the `i·m` factor is dropped.
pub fn commutator_defect(
    spec: &OrbitSpec,
    u: &[f64],
    v: &[f64],
    levels: &[u32],
    rule: &RuleSpec,
    normalized: bool,
) -> Result<AsymptoticSeries> {
    check_levels(levels)?;
    let mut dims = Vec::with_capacity(levels.len());
    let mut norms = Vec::with_capacity(levels.len());
    for &m in levels {
        let d = level_data(spec, m, u, v, rule)?;
        let scale = if normalized { C64::new(0.0, m as f64) } else { C64::new(1.0, 0.0) };
        let defect = commutator(&d.tu, &d.tv) * scale - &d.tpb;
        dims.push(d.space.dim());
        norms.push(op_norm(&defect));
    }
    let degenerate = spec.basis.bracket(u, v).iter().all(|&x| x == 0.0);
    let (fitted_slope, fitted_constant) = if norms.iter().all(|&x| x > 0.0) {
        let lx: Vec<f64> = levels.iter().map(|&m| (m as f64).ln()).collect();
        let ly: Vec<f64> = norms.iter().map(|x| x.ln()).collect();
        let (s, c) = fit_line(&lx, &ly);
        (Some(s), Some(c))
    } else {
        (None, None)
    };
    Ok(AsymptoticSeries { levels: levels.to_vec(), dims, norms, fitted_slope, fitted_constant, degenerate, normalized })
}

#[derive(Debug, Clone, PartialEq)]
pub struct C1Estimate {
    /// `max |Ê − {f_u,f_v}| / max |{f_u,f_v}|` over the probe points.
    pub relative_error: f64,
    /// Extrapolated covariant symbol of `i·m·[T_{f_u}, T_{f_v}]` at each probe.
    pub estimate: Vec<f64>,
    /// `{f_u, f_v}` at each probe.
    pub bracket: Vec<f64>,
    pub levels: (u32, u32),
    pub degenerate: bool,
}

/// Fixed probe points for symbol evaluation.
pub fn probe_points(n: usize, count: usize) -> Vec<CMat> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b17);
    (0..count).map(|_| haar_sample(&mut rng, n)).collect()
}

/// Covariant (Berezin) symbol `x^T A conj(x) / ‖x‖²` with `x = ρ(g)v_λ`.
pub fn covariant_symbol(space: &SectionSpace, a: &CMat, g: &CMat) -> C64 {
    let x = nalgebra::DVector::from_vec(space.section_values(g));
    let xc = x.map(|z| z.conj());
    (x.transpose() * a * &xc)[(0, 0)] / C64::new(x.norm_squared(), 0.0)
}

/// Two-point Richardson estimate of `C₁(f,g) − C₁(g,f)` from the top two
/// levels, read through covariant symbols and compared with `{f, g}`. The
/// product term `T_{fg}` cancels under antisymmetrization.
pub fn c1_antisymmetry_check(
    spec: &OrbitSpec,
    u: &[f64],
    v: &[f64],
    levels: &[u32],
    rule: &RuleSpec,
) -> Result<C1Estimate> {
    check_levels(levels)?;
    let (m1, m2) = (levels[levels.len() - 2], levels[levels.len() - 1]);
    let pb = poisson_bracket_moment(&spec.basis, u, v, &spec.xi);
    let probes = probe_points(spec.rs.n, 16);
    if pb.is_zero() || pb.w.iter().all(|&x| x == 0.0) {
        return Ok(C1Estimate {
            relative_error: 0.0,
            estimate: vec![0.0; probes.len()],
            bracket: vec![0.0; probes.len()],
            levels: (m1, m2),
            degenerate: true,
        });
    }
    let ev = MomentEvaluator::new(&spec.basis);
    let bracket: Vec<f64> = probes.iter().map(|g| pb.eval_components(&ev.components(g))).collect();
    let symbols = |m: u32| -> Result<Vec<f64>> {
        let d = level_data(spec, m, u, v, rule)?;
        let c = commutator(&d.tu, &d.tv) * C64::new(0.0, m as f64);
        Ok(probes.iter().map(|g| covariant_symbol(&d.space, &c, g).re).collect())
    };
    let (e1, e2) = (symbols(m1)?, symbols(m2)?);
    let (a, b) = (m1 as f64, m2 as f64);
    let estimate: Vec<f64> = e1.iter().zip(&e2).map(|(x, y)| (b * y - a * x) / (b - a)).collect();
    let err = estimate.iter().zip(&bracket).map(|(e, p)| (e - p).abs()).fold(0.0, f64::max);
    let scale = bracket.iter().map(|p| p.abs()).fold(0.0, f64::max);
    Ok(C1Estimate { relative_error: err / scale, estimate, bracket, levels: (m1, m2), degenerate: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::expm;
    use crate::orbit::{build_orbit, eval_matrix_coefficient};
    use crate::repr::build_lie_basis;
    use crate::rootsys::build_root_system;

    fn orbit(n: usize, xi: &[i64]) -> OrbitSpec {
        let rs = build_root_system(n).unwrap();
        let b = build_lie_basis(n).unwrap();
        build_orbit(&rs, &b, &WeightVec::from_ints(xi)).unwrap()
    }

    const EXACT: RuleSpec = RuleSpec::Su2Euler { order: None, reduced: true };

    #[test]
    fn bracket_examples() {
        let s = orbit(2, &[1]);
        let b = &s.basis;
        let (x, y) = (b.unit_vector(1), b.unit_vector(2));
        assert!(poisson_bracket_moment(b, &x, &x, &s.xi).w.iter().all(|&c| c == 0.0));
        let pb = poisson_bracket_moment(b, &x, &y, &s.xi);
        // {f_X, f_Y} = f_{[Y,X]} = −f_{iH}
        assert!((pb.w[0] + 1.0).abs() < 1e-14 && pb.w[1].abs() < 1e-14 && pb.w[2].abs() < 1e-14);
    }

    #[test]
    fn jacobi_identity_pointwise() {
        let s = orbit(3, &[2, 1]);
        let b = &s.basis;
        let ev = MomentEvaluator::new(b);
        let (u, v, w) = (b.unit_vector(2), b.unit_vector(5), b.unit_vector(7));
        let cyc = |a: &[f64], c: &[f64], d: &[f64]| {
            let inner = poisson_bracket_moment(b, c, d, &s.xi).w;
            poisson_bracket_moment(b, a, &inner, &s.xi)
        };
        for g in probe_points(3, 20) {
            let comps = ev.components(&g);
            let total = cyc(&u, &v, &w).eval_components(&comps)
                + cyc(&v, &w, &u).eval_components(&comps)
                + cyc(&w, &u, &v).eval_components(&comps);
            assert!(total.abs() < 1e-12);
        }
    }

    #[test]
    fn bracket_is_the_derivative_along_the_hamiltonian_flow() {
        // X_{f_u} integrates to g ↦ exp(tu)g, so {f_u, f_v} = d/dt f_v(exp(tu)g).
        let s = orbit(3, &[1, 2]);
        let b = &s.basis;
        let (u, v) = (b.unit_vector(3), b.unit_vector(6));
        let fv = OrbitFunction::moment(v.clone(), s.xi.clone());
        let pb = poisson_bracket_moment(b, &u, &v, &s.xi);
        let h = 1e-5;
        for g in probe_points(3, 5) {
            let step = |t: f64| expm(&(b.element(&u) * C64::new(t, 0.0))) * &g;
            let fd = (eval_matrix_coefficient(&fv, b, &step(h)).unwrap()
                - eval_matrix_coefficient(&fv, b, &step(-h)).unwrap())
                / (2.0 * h);
            assert!((fd - eval_matrix_coefficient(&pb, b, &g).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn defect_matches_closed_form_on_the_sphere() {
        // T(f_{u,ξ}) = iβ(u)/(m+2) at level m, so d_m = 2‖β_{[u,v]}‖/(m+2)² = 2m/(m+2)².
        let s = orbit(2, &[1]);
        let (x, y) = (s.basis.unit_vector(1), s.basis.unit_vector(2));
        let levels = [2, 4, 8, 16];
        let series = commutator_defect(&s, &x, &y, &levels, &EXACT, true).unwrap();
        for (m, d) in levels.iter().zip(&series.norms) {
            let m = *m as f64;
            assert!((d - 2.0 * m / ((m + 2.0) * (m + 2.0))).abs() < 1e-10);
        }
        assert!(series.norms.windows(2).all(|w| w[1] < w[0] * 1.1));
        assert!(!series.degenerate);
    }

    #[test]
    fn wrong_bracket_sign_does_not_converge() {
        let s = orbit(2, &[1]);
        let (x, y) = (s.basis.unit_vector(1), s.basis.unit_vector(2));
        let d = level_data(&s, 16, &y, &x, &EXACT).unwrap();
        let wrong = commutator(&d.tv, &d.tu) * C64::new(0.0, 16.0) - &d.tpb;
        let right = commutator(&d.tu, &d.tv) * C64::new(0.0, 16.0) - &d.tpb;
        assert!(op_norm(&wrong) > 10.0 * op_norm(&right));
    }

    #[test]
    fn unnormalized_defect_does_not_decay() {
        let s = orbit(2, &[1]);
        let (x, y) = (s.basis.unit_vector(1), s.basis.unit_vector(2));
        let series = commutator_defect(&s, &x, &y, &[2, 4, 8, 16], &EXACT, false).unwrap();
        assert!(series.fitted_slope.unwrap().abs() < 0.35);
    }

    #[test]
    fn equal_directions_are_degenerate() {
        let s = orbit(2, &[1]);
        let x = s.basis.unit_vector(1);
        let series = commutator_defect(&s, &x, &x, &[1, 2, 3], &EXACT, true).unwrap();
        assert!(series.degenerate);
        assert!(series.norms.iter().all(|&d| d < 1e-12));
        let c1 = c1_antisymmetry_check(&s, &x, &x, &[1, 2, 3], &EXACT).unwrap();
        assert!(c1.degenerate);
        assert_eq!(c1.relative_error, 0.0);
    }

    #[test]
    fn level_list_validation() {
        let s = orbit(2, &[1]);
        let x = s.basis.unit_vector(1);
        assert!(matches!(commutator_defect(&s, &x, &x, &[2, 4], &EXACT, true), Err(Error::InsufficientData(_))));
        assert!(matches!(commutator_defect(&s, &x, &x, &[4, 2, 8], &EXACT, true), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn c1_estimate_is_close_and_antisymmetric() {
        let s = orbit(2, &[1]);
        let (x, y) = (s.basis.unit_vector(1), s.basis.unit_vector(2));
        let a = c1_antisymmetry_check(&s, &x, &y, &[2, 4, 8, 16, 32], &EXACT).unwrap();
        assert!(a.relative_error <= 0.15, "{}", a.relative_error);
        let b = c1_antisymmetry_check(&s, &y, &x, &[2, 4, 8, 16, 32], &EXACT).unwrap();
        assert!(a.estimate.iter().zip(&b.estimate).all(|(p, q)| (p + q).abs() < 1e-12));
    }

    #[test]
    fn line_fit() {
        let (s, c) = fit_line(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]);
        assert!((s - 2.0).abs() < 1e-15 && (c - 1.0).abs() < 1e-15);
    }
}
