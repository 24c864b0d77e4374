//! Sign, normalization and `i` bookkeeping used throughout the crate.
//!
//! All of these are fixed once here; every other module follows them.
//!
//! # Real coordinates
//!
//! Roots and weights are stored as *real* functionals. A weight `η` is
//! recorded in fundamental-weight coordinates `η_j = ⟨η, H_{α_j}⟩`, and it
//! acts on a Cartan element `h = i·diag(d)` of `su(n)` by
//!
//! ```text
//! ⟨η, h⟩ = Σ_j c_j d_j,    c_j = Σ_{i ≥ j} η_i   (ε-coordinates)
//! ```
//!
//! so `⟨η, iH_α⟩ = ⟨η, H_α⟩`. A representation with highest weight `λ`
//! satisfies `dρ(h) v_λ = i⟨λ, h⟩ v_λ`. The factor of `i` that places roots
//! in `i𝔱*` is absorbed here and nowhere else.
//!
//! # Invariant form
//!
//! The form on `su(n)` is `(A, B) = −tr(AB)`. Roots then have squared length
//! 2, and the dual of a weight is `η^∨ = i·diag(c − mean(c))`. The literal
//! Killing form is a positive multiple of this and is never materialized.
//!
//! # sl₂-triples
//!
//! For the positive root `α = ε_a − ε_b` (`a < b`):
//!
//! ```text
//! iH_α = i(E_aa − E_bb),  X_α = (E_ab − E_ba)/√2,  Y_α = i(E_ab + E_ba)/√2
//! [iH_α, X_α] = 2Y_α,  [iH_α, Y_α] = −2X_α,  [X_α, Y_α] = σ·iH_α
//! ```
//!
//! with `σ = `[`SL2_TRIPLE_SIGN`]` = +1`. Any other sign would make
//! `ad(X_α)² + ad(Y_α)²` fail to be negative semidefinite on the Cartan
//! subalgebra, so `σ = +1` is the only choice compatible with
//! `Ω(ξ) = −4δ_ξ`.
//!
//! # Sections and the group action
//!
//! Holomorphic sections of `L^m` over `O_ξ` are the matrix coefficients
//! `s_w(g) = w^T ρ(g) v_λ` of `V_λ`, `λ = mξ`, with `w` in the dual of `V_λ`
//! and `v_λ` the highest-weight Gelfand–Tsetlin vector. `G` acts by
//! `(h·s)(g) = s(h⁻¹g)`, so `β(v) = −dρ(v)^T` on coefficient vectors.
//!
//! # Moment functions
//!
//! `f_{w,η}(g) = ⟨Ad*(g)η, w⟩ = ⟨η, proj_𝔱 Ad(g⁻¹)w⟩`. The Karabegov moment
//! map at level `m` is `f_{w, mξ + 2δ_ξ}`.
//!
//! # Poisson bracket
//!
//! With `ι_{X_f}ω = df`, `{f, g} = ω(X_g, X_f)` and the KKS form
//! `ω(u^#, v^#) = ⟨μ, [u, v]⟩`, the Hamiltonian vector field of `f_{u,ξ}` is
//! the fundamental field `u^#`, and
//!
//! ```text
//! {f_{u,ξ}, f_{v,ξ}} = f_{[v,u],ξ} = −f_{[u,v],ξ}.
//! ```
//!
//! With this sign the Berezin–Toeplitz law `i·m·[T_f, T_g] → T_{{f,g}}`
//! and the exact identity `β = −i·T∘μ̃*` hold together.

/// `σ` in `[X_α, Y_α] = σ·iH_α`.
pub const SL2_TRIPLE_SIGN: f64 = 1.0;

/// Default cap on representation dimensions.
pub const DEFAULT_DIM_CAP: u64 = 200;

/// Environment variable overriding [`DEFAULT_DIM_CAP`].
pub const DIM_CAP_ENV: &str = "ORBITQ_CAP";

/// The dimension cap in effect: `ORBITQ_CAP` if set and parseable, else the
/// default.
pub fn dim_cap() -> u64 {
    std::env::var(DIM_CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_DIM_CAP)
}
