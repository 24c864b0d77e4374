//! Holomorphic sections as matrix coefficients, and the one-pass quadrature
//! accumulation of their Gram matrix and Toeplitz data.

use crate::linalg::{condition_number, pairwise_sum, CMat, C64};
use crate::orbit::{MomentEvaluator, OrbitFunction, OrbitSpec};
use crate::repr::{build_irrep, drho, Irrep, RepAction};
use crate::rootsys::{weyl_dim, WeightVec, Q};
use crate::{Error, Result};

use super::quadrature::QuadratureRule;

/// Gram matrices above this condition number are rejected.
pub const MAX_GRAM_CONDITION: f64 = 1e8;

/// `H⁰(O_ξ, L^m)` realized as `{ s_w(g) = w^T ρ(g) v_{mξ} }`.
#[derive(Debug, Clone)]
pub struct SectionSpace {
    /// The orbit through `mξ`.
    pub spec: OrbitSpec,
    pub level: u32,
    pub irrep: Irrep,
    pub highest_index: usize,
    action: RepAction,
    evaluator: MomentEvaluator,
    /// Gram matrix under the rule that built the space, if any.
    pub gram: Option<CMat>,
}

impl SectionSpace {
    /// The space without any quadrature data.
    pub fn new(spec: &OrbitSpec, m: u32) -> Result<Self> {
        let level = spec.at_level(m)?;
        let dim = weyl_dim(&level.rs, &level.xi)?;
        let cap = crate::conventions::dim_cap();
        if dim > cap {
            return Err(Error::ResourceLimit { dim, cap });
        }
        let irrep = build_irrep(&level.rs, &level.basis, &level.xi)?;
        let highest_index = irrep.highest_index().expect("GT irrep has a highest pattern");
        let action = irrep.action()?;
        let evaluator = MomentEvaluator::new(&level.basis);
        Ok(SectionSpace { spec: level, level: m, irrep, highest_index, action, evaluator, gram: None })
    }

    pub fn dim(&self) -> usize {
        self.irrep.dim
    }

    /// Degree of `ρ(g)v` as a polynomial in the entries of `g`.
    pub fn band(&self) -> u64 {
        self.spec.xi.coords.iter().map(|c| c.to_integer() as u64).sum()
    }

    /// `x = ρ(g) v_λ`, so that `s_w(g) = w^T x`.
    pub fn section_values(&self, g: &CMat) -> Vec<C64> {
        let mut x = vec![C64::new(0.0, 0.0); self.dim()];
        x[self.highest_index] = C64::new(1.0, 0.0);
        self.action.apply_factored(&crate::repr::givens_factor(g), &mut x);
        x
    }

    /// `β(v) = −dρ(v)^T`, the infinitesimal left-translation action.
    pub fn beta(&self, v: &[f64]) -> Result<CMat> {
        Ok(-drho(&self.irrep, v)?.transpose())
    }

    pub fn basis_dim(&self) -> usize {
        self.spec.basis.dim()
    }
}

pub fn section_space(spec: &OrbitSpec, m: u32, rule: &QuadratureRule) -> Result<SectionSpace> {
    let mut space = SectionSpace::new(spec, m)?;
    let acc = accumulate(&space, &[], rule)?;
    space.gram = Some(acc.gram.clone());
    Ok(space)
}

/// Weighted sums over one batch of points, Hermitian matrices stored as
/// packed upper triangles.
#[derive(Debug, Clone)]
struct Sums {
    mass: f64,
    gram: Vec<C64>,
    /// `[channel][basis element]`.
    a: Vec<Vec<Vec<C64>>>,
}

impl Sums {
    fn zeros(packed: usize, channels: usize, d: usize) -> Self {
        Sums {
            mass: 0.0,
            gram: vec![C64::new(0.0, 0.0); packed],
            a: vec![vec![vec![C64::new(0.0, 0.0); packed]; d]; channels],
        }
    }

    fn add(mut self, o: Sums) -> Sums {
        self.mass += o.mass;
        for (x, y) in self.gram.iter_mut().zip(&o.gram) {
            *x += y;
        }
        for (ca, cb) in self.a.iter_mut().zip(&o.a) {
            for (ma, mb) in ca.iter_mut().zip(cb) {
                for (x, y) in ma.iter_mut().zip(mb) {
                    *x += y;
                }
            }
        }
        self
    }
}

fn unpack(dim: usize, p: &[C64]) -> CMat {
    let mut m = CMat::zeros(dim, dim);
    let mut k = 0;
    for a in 0..dim {
        for b in a..dim {
            m[(a, b)] = p[k];
            m[(b, a)] = p[k].conj();
            k += 1;
        }
    }
    m
}

/// Gram and `A_i^η = ∫ f_{e_i,η} conj(x) x^T` for every basis element and
/// every requested `η`, from a single pass over the rule.
#[derive(Debug, Clone)]
pub struct Accumulation {
    pub dim: usize,
    pub channels: Vec<WeightVec>,
    pub mass: f64,
    pub gram: CMat,
    a: Vec<Vec<CMat>>,
    /// Per-batch `(mass, gram, a)`, kept for Monte Carlo error estimates.
    batches: Vec<(f64, CMat, Vec<Vec<CMat>>)>,
    pub monte_carlo: bool,
    pub rule: String,
}

fn batch_sums(space: &SectionSpace, channels: &[Vec<f64>], rule: &QuadratureRule, b: usize) -> Sums {
    let dim = space.dim();
    let d = space.basis_dim();
    let n = space.spec.basis.n;
    let packed = dim * (dim + 1) / 2;
    let mut s = Sums::zeros(packed, channels.len(), d);
    let mut p = vec![C64::new(0.0, 0.0); packed];
    let mut f = vec![0.0; d];
    rule.for_each_in_batch(b, |g, w| {
        let x = space.section_values(g);
        let mut k = 0;
        for a in 0..dim {
            let ca = x[a].conj() * w;
            for xb in &x[a..] {
                p[k] = ca * xb;
                k += 1;
            }
        }
        s.mass += w;
        for (acc, v) in s.gram.iter_mut().zip(&p) {
            *acc += v;
        }
        if channels.is_empty() {
            return;
        }
        let comps = space.evaluator.components(g);
        for (ci, c) in channels.iter().enumerate() {
            for (i, fi) in f.iter_mut().enumerate() {
                let row = comps.row(i);
                *fi = (0..n).map(|j| c[j] * row[j]).sum();
            }
            for (i, fi) in f.iter().enumerate() {
                for (acc, v) in s.a[ci][i].iter_mut().zip(&p) {
                    *acc += v * fi;
                }
            }
        }
    });
    s
}

#[cfg(feature = "parallel")]
fn map_batches<F: Fn(usize) -> Sums + Sync + Send>(count: usize, f: F) -> Vec<Sums> {
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_batches<F: Fn(usize) -> Sums>(count: usize, f: F) -> Vec<Sums> {
    (0..count).map(f).collect()
}

/// Runs the rule once, producing the Gram matrix and Toeplitz data for
/// moment functions with the given `η`s. Summation order is fixed, so the
/// result does not depend on the number of worker threads.
pub fn accumulate(space: &SectionSpace, channels: &[WeightVec], rule: &QuadratureRule) -> Result<Accumulation> {
    if rule.n != space.spec.basis.n {
        return Err(Error::InvalidArgument(format!(
            "rule is for SU({}) but the orbit lives in SU({})",
            rule.n, space.spec.basis.n
        )));
    }
    let dim = space.dim();
    let eps: Vec<Vec<f64>> = channels.iter().map(|c| c.epsilon_f64()).collect();
    let parts = map_batches(rule.batch_count(), |b| batch_sums(space, &eps, rule, b));
    let to_mats = |s: &Sums| -> (f64, CMat, Vec<Vec<CMat>>) {
        let a = s.a.iter().map(|ch| ch.iter().map(|m| unpack(dim, m)).collect()).collect();
        (s.mass, unpack(dim, &s.gram), a)
    };
    let monte_carlo = rule.is_monte_carlo();
    let batches = if monte_carlo { parts.iter().map(to_mats).collect() } else { Vec::new() };
    let total = pairwise_sum(parts, Sums::add)
        .ok_or_else(|| Error::InsufficientData("quadrature rule has no points".into()))?;
    let (mass, gram, a) = to_mats(&total);
    let cond = condition_number(&gram);
    if cond.is_nan() || cond > MAX_GRAM_CONDITION {
        return Err(Error::IllConditioned { condition: cond });
    }
    Ok(Accumulation { dim, channels: channels.to_vec(), mass, gram, a, batches, monte_carlo, rule: rule.descriptor() })
}

impl Accumulation {
    fn channel_of(&self, eta: &WeightVec) -> Result<(usize, Q)> {
        for (k, c) in self.channels.iter().enumerate() {
            if let Some(t) = eta.ratio_to(c) {
                return Ok((k, t));
            }
        }
        Err(Error::InvalidArgument(format!("no accumulated channel for η = {eta}")))
    }

    fn combine(&self, f: &OrbitFunction, gram: &CMat, a: &[Vec<CMat>]) -> Result<CMat> {
        let mut m = gram * C64::new(f.constant, 0.0);
        if !f.is_constant() {
            let (k, t) = self.channel_of(&f.eta)?;
            let t = crate::rootsys::to_f64(&t);
            for (wi, ai) in f.w.iter().zip(&a[k]) {
                if *wi != 0.0 {
                    m += ai * C64::new(wi * t, 0.0);
                }
            }
        }
        Ok(m)
    }

    /// `∫ f conj(x) x^T`.
    pub fn moment_matrix(&self, f: &OrbitFunction) -> Result<CMat> {
        self.combine(f, &self.gram, &self.a)
    }

    /// `gram⁻¹ A(f)`.
    pub fn toeplitz_matrix(&self, f: &OrbitFunction) -> Result<CMat> {
        let a = self.moment_matrix(f)?;
        Ok(self.gram.clone().lu().solve(&a).expect("gram is well conditioned"))
    }

    pub fn batch_count(&self) -> usize {
        self.batches.len()
    }

    /// Normalized Gram matrix of batch `b` (Monte Carlo only).
    pub fn batch_gram(&self, b: usize) -> CMat {
        let (mass, g, _) = &self.batches[b];
        g / C64::new(*mass, 0.0)
    }

    /// Toeplitz matrix from batch `b` alone (Monte Carlo only).
    pub fn batch_toeplitz(&self, b: usize, f: &OrbitFunction) -> Result<CMat> {
        let (_, g, a) = &self.batches[b];
        let am = self.combine(f, g, a)?;
        g.clone().lu().solve(&am).ok_or(Error::IllConditioned { condition: f64::INFINITY })
    }

    /// Batch-means standard error of a matrix-valued statistic, in Frobenius
    /// norm: `sqrt(Σ_b ‖R_b − R̄‖² / (B(B−1)))`.
    pub fn batch_standard_error<F>(&self, stat: F) -> Result<Option<f64>>
    where
        F: Fn(usize) -> Result<CMat>,
    {
        let nb = self.batches.len();
        if !self.monte_carlo || nb < 2 {
            return Ok(None);
        }
        let r: Vec<CMat> = (0..nb).map(stat).collect::<Result<_>>()?;
        let mean = pairwise_sum(r.clone(), |a, b| a + b).unwrap() / C64::new(nb as f64, 0.0);
        let ss: Vec<f64> = r.iter().map(|x| (x - &mean).norm_squared()).collect();
        let ss = pairwise_sum(ss, |a, b| a + b).unwrap();
        Ok(Some((ss / (nb as f64 * (nb as f64 - 1.0))).sqrt()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius, hermitian_defect};
    use crate::orbit::build_orbit;
    use crate::quantize::quadrature::{build_haar_mc, build_su2_orbit_quadrature, build_su2_quadrature};
    use crate::repr::build_lie_basis;
    use crate::rootsys::build_root_system;

    fn orbit(n: usize, xi: &[i64]) -> OrbitSpec {
        let rs = build_root_system(n).unwrap();
        let b = build_lie_basis(n).unwrap();
        build_orbit(&rs, &b, &WeightVec::from_ints(xi)).unwrap()
    }

    #[test]
    fn section_dimensions() {
        for k in 1..=3 {
            for m in 1..=4 {
                let s = SectionSpace::new(&orbit(2, &[k]), m).unwrap();
                assert_eq!(s.dim() as i64, m as i64 * k + 1);
            }
        }
        assert_eq!(SectionSpace::new(&orbit(3, &[1, 1]), 1).unwrap().dim(), 8);
    }

    #[test]
    fn gram_is_schur_orthogonal_for_euler_rules() {
        for (k, m) in [(1, 1), (2, 3), (3, 2)] {
            let spec = orbit(2, &[k]);
            let band = (m * k) as usize;
            for rule in [build_su2_quadrature(band + 2).unwrap(), build_su2_orbit_quadrature(band + 2).unwrap()] {
                let s = section_space(&spec, m as u32, &rule).unwrap();
                let g = s.gram.unwrap();
                let want = CMat::identity(s.irrep.dim, s.irrep.dim) / C64::new(s.irrep.dim as f64, 0.0);
                assert!(frobenius(&(g - want)) < 1e-12);
            }
        }
    }

    #[test]
    fn toeplitz_of_constant_is_identity() {
        let spec = orbit(2, &[2]);
        let s = SectionSpace::new(&spec, 2).unwrap();
        let acc = accumulate(&s, std::slice::from_ref(&spec.xi), &build_su2_quadrature(8).unwrap()).unwrap();
        let one = OrbitFunction::constant(1.0, 3, 1);
        let t = acc.toeplitz_matrix(&one).unwrap();
        assert!(frobenius(&(t - CMat::identity(5, 5))) < 1e-12);
        let f = OrbitFunction::moment(vec![0.3, -1.0, 0.4], spec.xi.clone());
        assert!(hermitian_defect(&acc.toeplitz_matrix(&f).unwrap()) < 1e-12);
    }

    #[test]
    fn accumulation_is_reproducible() {
        let spec = orbit(3, &[1, 0]);
        let s = SectionSpace::new(&spec, 1).unwrap();
        let rule = build_haar_mc(3, 20_000, 5).unwrap();
        let a = accumulate(&s, std::slice::from_ref(&spec.karabegov_shift), &rule).unwrap();
        let b = accumulate(&s, std::slice::from_ref(&spec.karabegov_shift), &rule).unwrap();
        assert_eq!(a.gram, b.gram);
        let f = OrbitFunction::moment(s.spec.basis.unit_vector(3), spec.karabegov_shift.clone());
        assert_eq!(a.toeplitz_matrix(&f).unwrap(), b.toeplitz_matrix(&f).unwrap());
        assert_eq!(a.batch_count(), 2);
        assert!(a.batch_standard_error(|b| Ok(a.batch_gram(b))).unwrap().unwrap() > 0.0);
        assert!(accumulate(&s, &[], &build_su2_quadrature(4).unwrap()).is_err());
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let spec = orbit(3, &[3, 3]);
        assert!(matches!(SectionSpace::new(&spec, 2), Err(Error::ResourceLimit { .. })));
    }
}
