//! Coadjoint-orbit data at the identity coset: KKS and Ricci forms, moment
//! functions and the homogeneous Laplacian `Ω`.

use std::fmt;

use crate::linalg::{unitarity_defect, CMat, C64};
use crate::repr::{BasisLabels, Irrep, LieBasis};
use crate::rootsys::{delta_xi, einstein_constant, is_integral, stabilizer_split, RootSystem, RootVec, WeightVec, Q};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct OrbitSpec {
    pub rs: RootSystem,
    pub basis: LieBasis,
    pub xi: WeightVec,
    pub stabilizer_roots: Vec<RootVec>,
    pub complementary_roots: Vec<RootVec>,
    /// `(X_α, Y_α)` basis indices for `α ∈ R^c_{ξ,+}`.
    pub tangent_basis: Vec<(usize, usize)>,
    /// `a_α = ⟨ξ, H_α⟩` per tangent pair.
    pub metric_diag: Vec<Q>,
    pub delta: WeightVec,
    pub karabegov_shift: WeightVec,
    pub einstein_lambda: Option<Q>,
}

pub fn build_orbit(rs: &RootSystem, basis: &LieBasis, xi: &WeightVec) -> Result<OrbitSpec> {
    let (stab, comp) = stabilizer_split(rs, xi)?;
    if !is_integral(xi) {
        return Err(Error::NotIntegral(xi.to_string()));
    }
    let mut tangent_basis = Vec::with_capacity(comp.len());
    let mut metric_diag = Vec::with_capacity(comp.len());
    for alpha in &comp {
        let t = basis
            .triples
            .iter()
            .find(|t| &t.root == alpha)
            .ok_or_else(|| Error::InvalidArgument("basis does not match the root system".into()))?;
        tangent_basis.push((t.x, t.y));
        metric_diag.push(rs.coroot(alpha)?.pair(rs, xi));
    }
    let delta = delta_xi(rs, xi)?;
    let karabegov_shift = xi.add(&delta.scale(Q::from_integer(2)));
    Ok(OrbitSpec {
        rs: rs.clone(),
        basis: basis.clone(),
        xi: xi.clone(),
        stabilizer_roots: stab,
        complementary_roots: comp,
        tangent_basis,
        metric_diag,
        delta,
        karabegov_shift,
        einstein_lambda: einstein_constant(rs, xi)?,
    })
}

impl OrbitSpec {
    pub fn real_dim(&self) -> usize {
        2 * self.complementary_roots.len()
    }

    /// The orbit through `mξ`; it shares `δ_ξ` and the root split.
    pub fn at_level(&self, m: u32) -> Result<OrbitSpec> {
        if m == 0 {
            return Err(Error::InvalidArgument("level must be at least 1".into()));
        }
        build_orbit(&self.rs, &self.basis, &self.xi.scale(Q::from_integer(m as i64)))
    }

    /// `2δ_ξ = Σ_{α ∈ R^c_{ξ,+}} α`.
    pub fn two_delta(&self) -> WeightVec {
        self.delta.scale(Q::from_integer(2))
    }

    fn tangent_indices(&self) -> Vec<usize> {
        self.tangent_basis.iter().flat_map(|&(x, y)| [x, y]).collect()
    }

    /// Projects onto the span of the tangent basis; the flag reports whether
    /// anything was removed.
    pub fn project_tangent(&self, u: &[f64]) -> (Vec<f64>, bool) {
        let keep = self.tangent_indices();
        let mut out = vec![0.0; u.len()];
        let mut dropped = false;
        for (i, &c) in u.iter().enumerate() {
            if keep.contains(&i) {
                out[i] = c;
            } else if c != 0.0 {
                dropped = true;
            }
        }
        (out, dropped)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormValue {
    pub value: f64,
    /// The inputs had components outside the tangent span.
    pub projected: bool,
}

fn bracket_pairing(spec: &OrbitSpec, eta: &WeightVec, u: &[f64], v: &[f64]) -> Result<FormValue> {
    let d = spec.basis.dim();
    if u.len() != d || v.len() != d {
        return Err(Error::InvalidArgument(format!("tangent vectors must have length {d}")));
    }
    let (pu, fu) = spec.project_tangent(u);
    let (pv, fv) = spec.project_tangent(v);
    let value = spec.basis.pair(eta, &spec.basis.bracket(&pu, &pv));
    Ok(FormValue { value, projected: fu || fv })
}

/// `ω_ξ(u, v) = ⟨ξ, [u, v]⟩`.
pub fn kks_form_at_identity(spec: &OrbitSpec, u: &[f64], v: &[f64]) -> Result<FormValue> {
    bracket_pairing(spec, &spec.xi, u, v)
}

/// `Ric(u, v) = ⟨2δ_ξ, [u, v]⟩`.
pub fn ricci_form_at_identity(spec: &OrbitSpec, u: &[f64], v: &[f64]) -> Result<FormValue> {
    bracket_pairing(spec, &spec.two_delta(), u, v)
}

/// `g ↦ c + ⟨Ad*(g)η, w⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitFunction {
    pub w: Vec<f64>,
    pub eta: WeightVec,
    pub constant: f64,
    pub descriptor: String,
}

impl OrbitFunction {
    pub fn moment(w: Vec<f64>, eta: WeightVec) -> Self {
        let descriptor = format!("f[w,{eta}]");
        OrbitFunction { w, eta, constant: 0.0, descriptor }
    }

    pub fn constant(c: f64, dim: usize, rank: usize) -> Self {
        OrbitFunction { w: vec![0.0; dim], eta: WeightVec::zero(rank), constant: c, descriptor: format!("const {c}") }
    }

    pub fn with_descriptor(mut self, d: impl Into<String>) -> Self {
        self.descriptor = d.into();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0.0 && (self.eta.is_zero() || self.w.iter().all(|&x| x == 0.0))
    }

    pub fn is_constant(&self) -> bool {
        self.eta.is_zero() || self.w.iter().all(|&x| x == 0.0)
    }

    /// Value from precomputed components `M[i][j] = Im (g†e_i g)_jj`.
    pub fn eval_components(&self, comps: &MomentComponents) -> f64 {
        let c = self.eta.epsilon_f64();
        let mut s = self.constant;
        for (i, wi) in self.w.iter().enumerate() {
            if *wi == 0.0 {
                continue;
            }
            let row = comps.row(i);
            s += wi * c.iter().zip(row).map(|(a, b)| a * b).sum::<f64>();
        }
        s
    }
}

impl fmt::Display for OrbitFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor)
    }
}

/// `⟨η, proj_𝔱 Ad(g⁻¹)w⟩` through the Lie-basis decomposition.
pub fn eval_matrix_coefficient(f: &OrbitFunction, basis: &LieBasis, g: &CMat) -> Result<f64> {
    if g.nrows() != basis.n || g.ncols() != basis.n {
        return Err(Error::InvalidArgument(format!("group element must be {0}×{0}", basis.n)));
    }
    if unitarity_defect(g) > 1e-12 || (crate::linalg::det(g) - C64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::InvalidArgument("group element is not special unitary".into()));
    }
    let z = g.adjoint() * basis.element(&f.w) * g;
    Ok(f.constant + basis.pair(&f.eta, &basis.coords(&z)))
}

/// `M[i][j] = Im (g† e_i g)_jj` for every basis element, the raw data from
/// which every moment function is a linear combination.
#[derive(Debug, Clone)]
pub struct MomentComponents {
    n: usize,
    data: Vec<f64>,
}

impl MomentComponents {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

/// Sparse copies of the basis matrices for fast moment evaluation.
#[derive(Debug, Clone)]
pub struct MomentEvaluator {
    n: usize,
    entries: Vec<Vec<(usize, usize, C64)>>,
}

impl MomentEvaluator {
    pub fn new(basis: &LieBasis) -> Self {
        let entries = basis
            .elements
            .iter()
            .map(|e| {
                let mut v = Vec::new();
                for a in 0..basis.n {
                    for b in 0..basis.n {
                        if e[(a, b)].norm() > 0.0 {
                            v.push((a, b, e[(a, b)]));
                        }
                    }
                }
                v
            })
            .collect();
        MomentEvaluator { n: basis.n, entries }
    }

    pub fn components(&self, g: &CMat) -> MomentComponents {
        let n = self.n;
        let mut data = vec![0.0; self.entries.len() * n];
        for (i, ent) in self.entries.iter().enumerate() {
            for j in 0..n {
                let mut s = C64::new(0.0, 0.0);
                for &(a, b, z) in ent {
                    s += g[(a, j)].conj() * z * g[(b, j)];
                }
                data[i * n + j] = s.im;
            }
        }
        MomentComponents { n, data }
    }
}

/// `Ω = Σ_{α ∈ R^c_{ξ,+}} a_α⁻¹ (dρ(X_α)² + dρ(Y_α)²)`.
pub fn laplace_operator(spec: &OrbitSpec, rho: &Irrep) -> CMat {
    let mut omega = CMat::zeros(rho.dim, rho.dim);
    for (&(x, y), a) in spec.tangent_basis.iter().zip(&spec.metric_diag) {
        let (gx, gy) = (&rho.gen[x], &rho.gen[y]);
        let s = C64::new(1.0 / crate::rootsys::to_f64(a), 0.0);
        omega += (gx * gx + gy * gy) * s;
    }
    omega
}

/// `Ω·η^∨` computed on the adjoint representation, returned as Lie-basis
/// coordinates.
pub fn laplacian_on_adjoint(spec: &OrbitSpec, ad: &Irrep, eta: &WeightVec) -> Result<Vec<f64>> {
    let BasisLabels::Adjoint(s) = &ad.basis_labels else {
        return Err(Error::InvalidArgument("expected the adjoint representation".into()));
    };
    let s_inv = s.clone().try_inverse().expect("orthonormalizing map is invertible");
    let u = nalgebra::DVector::from_vec(spec.basis.dual_of_weight(eta));
    let y = (&s_inv * u).map(|x| C64::new(x, 0.0));
    let out = laplace_operator(spec, ad) * y;
    Ok((s * out.map(|z| z.re)).iter().copied().collect())
}

/// `Ω·η` in exact arithmetic: `−2 Σ_{α ∈ R^c_{ξ,+}} (⟨η, H_α⟩ / a_α)·α`.
pub fn omega_on_weight(spec: &OrbitSpec, eta: &WeightVec) -> Result<WeightVec> {
    let mut acc = WeightVec::zero(spec.rs.rank);
    for (alpha, a) in spec.complementary_roots.iter().zip(&spec.metric_diag) {
        let t = spec.rs.coroot(alpha)?.pair(&spec.rs, eta) / *a;
        acc = acc.add(&spec.rs.root_weight(alpha).scale(t));
    }
    Ok(acc.scale(Q::from_integer(-2)))
}

/// `Δf_{w,η} = f_{w,Ω·η}` for `η ∈ ℚ·ξ`.
pub fn laplacian_of_moment_function(spec: &OrbitSpec, f: &OrbitFunction) -> Result<OrbitFunction> {
    if !f.eta.is_zero() && f.eta.ratio_to(&spec.xi).is_none() {
        return Err(Error::Unsupported(format!("Δ is only implemented for η ∝ ξ, got η = {}", f.eta)));
    }
    let eta = omega_on_weight(spec, &f.eta)?;
    let descriptor = format!("Δ({})", f.descriptor);
    Ok(OrbitFunction { w: f.w.clone(), eta, constant: 0.0, descriptor })
}
