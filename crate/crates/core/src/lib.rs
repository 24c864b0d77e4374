//! Geometric and Berezin–Toeplitz quantization of integral coadjoint orbits
//! of `SU(n)`, with numerical certificates for the identity
//! `β = −i·T∘μ̃*` relating the Lie-algebra action on holomorphic sections to
//! the Toeplitz quantization of the Karabegov moment map.
//!
//! The crate is layered bottom-up:
//!
//! * [`rootsys`] exact type-`A` root and weight arithmetic,
//! * [`repr`] the Lie basis of `su(n)`, Gelfand–Tsetlin irreps and the
//!   adjoint representation,
//! * [`orbit`] orbit data at the identity coset (KKS, Ricci, Laplacian),
//! * [`quantize`] quadrature, section spaces, Toeplitz operators and the
//!   verification reports,
//! * [`star`] finite-level Berezin–Toeplitz commutator asymptotics.
//!
//! Sign and `i` bookkeeping is collected in [`conventions`].

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod conventions;
mod error;
pub mod linalg;
pub mod orbit;
pub mod quantize;
pub mod repr;
pub mod rootsys;
pub mod star;

pub use error::{Error, Result};
pub use orbit::{OrbitFunction, OrbitSpec};
pub use quantize::{QuadratureRule, SectionSpace, ToeplitzOp};
pub use repr::{Irrep, LieBasis};
pub use rootsys::{RootSystem, RootVec, WeightVec};
