//! Unitary irreducible representations of `su(n)` with explicit generators.

mod action;
mod basis;
mod gt;

use nalgebra::DMatrix;

pub use action::{givens_factor, givens_rebuild, GivensFactorization, GivensStep, RepAction};
pub use basis::{build_lie_basis, dual_matrix, trace_form, LieBasis, Sl2Triple};
pub use gt::{all_units, enumerate_patterns, raising_operators, GtPattern};

use crate::conventions::dim_cap;
use crate::linalg::{CMat, C64};
use crate::rootsys::{weyl_dim, RootSystem, WeightVec, Q};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub enum BasisLabels {
    GelfandTsetlin(Vec<GtPattern>),
    /// Form-orthonormalized Lie basis; column `k` holds the LieBasis
    /// coordinates of basis vector `k`.
    Adjoint(DMatrix<f64>),
}

#[derive(Debug, Clone)]
pub struct Irrep {
    pub highest_weight: WeightVec,
    pub dim: usize,
    /// `gen[i] = dρ(e_i)`.
    pub gen: Vec<CMat>,
    pub basis_labels: BasisLabels,
    pub weight_of_basis_vector: Vec<WeightVec>,
    /// `gl(n)` weights of the GT basis (`λ_n = 0`); empty for the adjoint.
    gl_weights: Vec<Vec<i64>>,
    /// `ρ(E_{k,k+1})` in the GT basis.
    raising: Vec<DMatrix<f64>>,
}

fn weight_from_gl(mu: &[i64]) -> WeightVec {
    WeightVec::from_ints(&mu.windows(2).map(|w| w[0] - w[1]).collect::<Vec<_>>())
}

pub fn build_irrep(rs: &RootSystem, basis: &LieBasis, lambda: &WeightVec) -> Result<Irrep> {
    build_irrep_with_cap(rs, basis, lambda, dim_cap())
}

pub fn build_irrep_with_cap(rs: &RootSystem, basis: &LieBasis, lambda: &WeightVec, cap: u64) -> Result<Irrep> {
    rs.check_weight(lambda)?;
    if basis.n != rs.n {
        return Err(Error::InvalidArgument(format!("basis is for su({}), root system for su({})", basis.n, rs.n)));
    }
    if !lambda.is_dominant() {
        return Err(Error::InvalidArgument(format!("highest weight {lambda} is not dominant")));
    }
    let ints = lambda.to_ints().ok_or_else(|| Error::NotIntegral(lambda.to_string()))?;
    let dim = weyl_dim(rs, lambda)?;
    if dim > cap {
        return Err(Error::ResourceLimit { dim, cap });
    }
    let n = rs.n;
    let mut top = vec![0i64; n];
    for j in (0..n - 1).rev() {
        top[j] = top[j + 1] + ints[j];
    }
    let patterns = enumerate_patterns(&top);
    debug_assert_eq!(patterns.len() as u64, dim);
    let gl_weights: Vec<Vec<i64>> = patterns.iter().map(GtPattern::gl_weight).collect();
    let raising = raising_operators(&patterns);
    let units = all_units(&gl_weights, &raising);
    let gen = basis
        .elements
        .iter()
        .map(|e| {
            let mut m = CMat::zeros(patterns.len(), patterns.len());
            for a in 0..n {
                for b in 0..n {
                    let z = e[(a, b)];
                    if z != C64::new(0.0, 0.0) {
                        m += units[a][b].map(|x| z * x);
                    }
                }
            }
            m
        })
        .collect();
    Ok(Irrep {
        highest_weight: lambda.clone(),
        dim: patterns.len(),
        gen,
        weight_of_basis_vector: gl_weights.iter().map(|w| weight_from_gl(w)).collect(),
        basis_labels: BasisLabels::GelfandTsetlin(patterns),
        gl_weights,
        raising,
    })
}

/// The adjoint representation on the form-orthonormalized Lie basis.
pub fn adjoint_rep(rs: &RootSystem, basis: &LieBasis) -> Irrep {
    let d = basis.dim();
    let eig = basis.gram().clone().symmetric_eigen();
    let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| 1.0 / x.sqrt()));
    let s = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose();
    let s_inv = s.clone().try_inverse().expect("invertible");
    let gen = (0..d)
        .map(|i| {
            let ad = DMatrix::from_fn(d, d, |k, j| basis.structure_constants[i][j][k]);
            (&s_inv * ad * &s).map(|x| C64::new(x, 0.0))
        })
        .collect();
    let theta = rs.root_weight(&rs.highest_root());
    Irrep {
        highest_weight: theta,
        dim: d,
        gen,
        basis_labels: BasisLabels::Adjoint(s),
        weight_of_basis_vector: Vec::new(),
        gl_weights: Vec::new(),
        raising: Vec::new(),
    }
}

impl Irrep {
    pub fn is_gelfand_tsetlin(&self) -> bool {
        matches!(self.basis_labels, BasisLabels::GelfandTsetlin(_))
    }

    /// Index of the highest-weight GT pattern.
    pub fn highest_index(&self) -> Option<usize> {
        match &self.basis_labels {
            BasisLabels::GelfandTsetlin(p) => {
                let top = p[0].rows.last().unwrap().clone();
                let hw = GtPattern::highest(&top);
                p.iter().position(|q| *q == hw)
            }
            BasisLabels::Adjoint(_) => None,
        }
    }

    pub fn highest_weight_vector(&self) -> Option<Vec<C64>> {
        let k = self.highest_index()?;
        let mut v = vec![C64::new(0.0, 0.0); self.dim];
        v[k] = C64::new(1.0, 0.0);
        Some(v)
    }

    pub fn gl_weights(&self) -> &[Vec<i64>] {
        &self.gl_weights
    }

    pub fn raising(&self) -> &[DMatrix<f64>] {
        &self.raising
    }

    /// `dρ(e_i)dρ(e_i)` contracted with the inverse Gram matrix.
    pub fn casimir(&self, basis: &LieBasis) -> CMat {
        let ginv = basis.gram().clone().try_inverse().expect("invertible");
        let mut c = CMat::zeros(self.dim, self.dim);
        for i in 0..self.gen.len() {
            for j in 0..self.gen.len() {
                if ginv[(i, j)].abs() > 1e-15 {
                    c += (&self.gen[i] * &self.gen[j]) * C64::new(ginv[(i, j)], 0.0);
                }
            }
        }
        c
    }

    /// Multiplicity of each weight in the GT basis.
    pub fn weight_multiplicities(&self) -> Vec<(WeightVec, usize)> {
        let mut out: Vec<(WeightVec, usize)> = Vec::new();
        for w in &self.weight_of_basis_vector {
            match out.iter_mut().find(|(x, _)| x == w) {
                Some((_, c)) => *c += 1,
                None => out.push((w.clone(), 1)),
            }
        }
        out
    }

    /// Exact rational Casimir eigenvalue `(λ, λ + 2ρ)` for comparison.
    pub fn casimir_eigenvalue(&self, rs: &RootSystem) -> Q {
        let two_rho = rs.rho().scale(Q::from_integer(2));
        rs.form(&self.highest_weight, &self.highest_weight.add(&two_rho))
    }

    pub fn action(&self) -> Result<RepAction> {
        RepAction::new(self)
    }
}

/// `Σ v_i·gen[i]`.
pub fn drho(irrep: &Irrep, v: &[f64]) -> Result<CMat> {
    if v.len() != irrep.gen.len() {
        return Err(Error::InvalidArgument(format!(
            "coefficient vector has length {}, basis has {}",
            v.len(),
            irrep.gen.len()
        )));
    }
    let mut m = CMat::zeros(irrep.dim, irrep.dim);
    for (c, g) in v.iter().zip(&irrep.gen) {
        if *c != 0.0 {
            m += g * C64::new(*c, 0.0);
        }
    }
    Ok(m)
}
