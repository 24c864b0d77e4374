//! The Hilbert-space side: quadrature, section spaces, Toeplitz operators,
//! the action `β` and the verification checks.

mod quadrature;
mod sections;
mod verify;

pub use quadrature::{
    build_haar_mc, build_su2_orbit_quadrature, build_su2_quadrature, gauss_legendre, haar_sample, su2_euler,
    QuadratureRule, RuleKind, MC_BATCH,
};
pub use sections::{accumulate, section_space, Accumulation, SectionSpace, MAX_GRAM_CONDITION};
pub use verify::{
    tuynman_check, verify_laplacian, verify_schur, verify_theorem, verify_tuynman, CheckReport, DirectionRecord,
    RuleSpec, Shift, Tolerance,
};

use crate::linalg::CMat;
use crate::orbit::OrbitFunction;
use crate::Result;

#[derive(Debug, Clone)]
pub struct ToeplitzOp {
    pub function: String,
    pub matrix: CMat,
    pub rule: String,
    /// Batch-means standard error (Frobenius) for Monte Carlo rules.
    pub error_estimate: Option<f64>,
}

/// `T_f = Π∘M_f` in the section basis, `gram⁻¹·A(f)`.
pub fn toeplitz(space: &SectionSpace, f: &OrbitFunction, rule: &QuadratureRule) -> Result<ToeplitzOp> {
    let channels = if f.is_constant() { Vec::new() } else { vec![f.eta.clone()] };
    let acc = accumulate(space, &channels, rule)?;
    let matrix = acc.toeplitz_matrix(f)?;
    let error_estimate = acc.batch_standard_error(|b| acc.batch_toeplitz(b, f))?;
    Ok(ToeplitzOp { function: f.descriptor.clone(), matrix, rule: rule.descriptor(), error_estimate })
}

/// `β(v)`, the derivative of the left-translation action on sections.
pub fn geom_rep_beta(space: &SectionSpace, v: &[f64]) -> Result<CMat> {
    space.beta(v)
}

#[cfg(test)]
mod tests;
