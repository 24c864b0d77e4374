//! Fast evaluation of `ρ(g)v` for group elements in the defining representation.
//!
//! `g` is reduced to the identity by Givens rotations in adjacent planes,
//! `g = Π_t (T_t⁻¹ R_{p_t}(−θ_t)) · D`, with `T_t`, `D` diagonal in `U(n)`.
//! Torus factors act on GT vectors by phases computed from the `gl(n)`
//! weights; each plane rotation acts block-diagonally through a precomputed
//! eigendecomposition of `i·ρ(E_{p,p+1} − E_{p+1,p})`.

use nalgebra::DMatrix;

use super::Irrep;
use crate::linalg::{CMat, C64};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GivensStep {
    pub plane: usize,
    pub theta: f64,
    pub phase_x: f64,
    pub phase_y: f64,
}

/// `g = Π_t (T_t⁻¹ R_{p_t}(−θ_t)) · diag(e^{i·diag_phases})`.
#[derive(Debug, Clone, PartialEq)]
pub struct GivensFactorization {
    pub steps: Vec<GivensStep>,
    pub diag_phases: Vec<f64>,
}

pub fn givens_factor(g: &CMat) -> GivensFactorization {
    let n = g.nrows();
    let mut u = g.clone();
    let mut steps = Vec::with_capacity(n * (n - 1) / 2);
    for c in 0..n.saturating_sub(1) {
        for r in (c + 1..n).rev() {
            let p = r - 1;
            let (x, y) = (u[(p, c)], u[(r, c)]);
            let (phase_x, phase_y) = (x.arg(), y.arg());
            let theta = y.norm().atan2(x.norm());
            let (ex, ey) = (C64::from_polar(1.0, -phase_x), C64::from_polar(1.0, -phase_y));
            let (cs, sn) = (theta.cos(), theta.sin());
            for k in 0..n {
                let a = u[(p, k)] * ex;
                let b = u[(r, k)] * ey;
                u[(p, k)] = a * cs + b * sn;
                u[(r, k)] = b * cs - a * sn;
            }
            steps.push(GivensStep { plane: p, theta, phase_x, phase_y });
        }
    }
    GivensFactorization { steps, diag_phases: (0..n).map(|k| u[(k, k)].arg()).collect() }
}

/// Rebuilds `g` from its factorization (defining representation).
pub fn givens_rebuild(f: &GivensFactorization, n: usize) -> CMat {
    let mut g = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        f.diag_phases.iter().map(|&t| C64::from_polar(1.0, t)),
    ));
    for s in f.steps.iter().rev() {
        let (p, q) = (s.plane, s.plane + 1);
        let (cs, sn) = (s.theta.cos(), s.theta.sin());
        let (ex, ey) = (C64::from_polar(1.0, s.phase_x), C64::from_polar(1.0, s.phase_y));
        for k in 0..n {
            let a = g[(p, k)];
            let b = g[(q, k)];
            g[(p, k)] = (a * cs - b * sn) * ex;
            g[(q, k)] = (a * sn + b * cs) * ey;
        }
    }
    g
}

#[derive(Debug, Clone)]
struct Block {
    idx: Vec<usize>,
    /// Row-major eigenvector matrix `P`.
    vecs: Vec<C64>,
    /// Eigenvalues are sl₂ weights, hence integers.
    vals: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct RepAction {
    n: usize,
    dim: usize,
    /// Row-major `dim × n` table of `gl(n)` weights.
    weights: Vec<usize>,
    max_weight: usize,
    /// Largest |eigenvalue| over all plane blocks.
    max_spin: usize,
    planes: Vec<Vec<Block>>,
}

fn components(m: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let d = m.nrows();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..d {
        for j in 0..d {
            if m[(i, j)] != 0.0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![usize::MAX; d];
    for i in 0..d {
        let r = find(&mut parent, i);
        if root_of[r] == usize::MAX {
            root_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_of[r]].push(i);
    }
    groups.into_iter().filter(|g| g.len() > 1).collect()
}

impl RepAction {
    pub fn new(irrep: &Irrep) -> Result<Self> {
        if !irrep.is_gelfand_tsetlin() {
            return Err(Error::Unsupported("group action needs a Gelfand-Tsetlin irrep".into()));
        }
        let dim = irrep.dim;
        let gl = irrep.gl_weights();
        let n = gl[0].len();
        let weights: Vec<usize> = gl.iter().flat_map(|w| w.iter().map(|&x| x as usize)).collect();
        let max_weight = weights.iter().copied().max().unwrap_or(0);
        let planes: Vec<Vec<Block>> = irrep
            .raising()
            .iter()
            .map(|r| {
                let a = r - r.transpose();
                components(&a)
                    .into_iter()
                    .map(|idx| {
                        let m = idx.len();
                        let h = CMat::from_fn(m, m, |i, j| C64::new(0.0, a[(idx[i], idx[j])]));
                        let eig = h.symmetric_eigen();
                        let mut vecs = Vec::with_capacity(m * m);
                        for i in 0..m {
                            for j in 0..m {
                                vecs.push(eig.eigenvectors[(i, j)]);
                            }
                        }
                        Block { idx, vecs, vals: eig.eigenvalues.iter().map(|x| x.round() as i64).collect() }
                    })
                    .collect()
            })
            .collect();
        let max_spin = planes
            .iter()
            .flat_map(|p| p.iter().flat_map(|b| b.vals.iter().map(|v| v.unsigned_abs() as usize)))
            .max()
            .unwrap_or(0);
        Ok(RepAction { n, dim, weights, max_weight, max_spin, planes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn powers(&self, phase: f64, out: &mut [C64]) {
        let z = C64::from_polar(1.0, phase);
        out[0] = C64::new(1.0, 0.0);
        for k in 1..out.len() {
            out[k] = out[k - 1] * z;
        }
    }

    /// `y ← ρ(g) y` in place.
    pub fn apply_factored(&self, f: &GivensFactorization, y: &mut [C64]) {
        let n = self.n;
        let w = self.max_weight + 1;
        let mut pw = vec![C64::new(0.0, 0.0); n * w];
        for j in 0..n {
            self.powers(f.diag_phases[j], &mut pw[j * w..(j + 1) * w]);
        }
        for (k, yk) in y.iter_mut().enumerate() {
            let mut ph = C64::new(1.0, 0.0);
            for j in 0..n {
                ph *= pw[j * w + self.weights[k * n + j]];
            }
            *yk *= ph;
        }
        let mut loc = Vec::new();
        let mut coef = Vec::new();
        let spin = self.max_spin;
        let mut rot = vec![C64::new(0.0, 0.0); 2 * spin + 1];
        for s in f.steps.iter().rev() {
            // rot[spin + ν] = e^{iθν}
            self.powers(s.theta, &mut rot[spin..]);
            for k in 1..=spin {
                rot[spin - k] = rot[spin + k].conj();
            }
            for b in &self.planes[s.plane] {
                let m = b.idx.len();
                loc.clear();
                loc.extend(b.idx.iter().map(|&i| y[i]));
                coef.clear();
                coef.resize(m, C64::new(0.0, 0.0));
                for (i, li) in loc.iter().enumerate() {
                    if *li == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let row = &b.vecs[i * m..(i + 1) * m];
                    for (c, p) in coef.iter_mut().zip(row) {
                        *c += p.conj() * li;
                    }
                }
                for (c, v) in coef.iter_mut().zip(&b.vals) {
                    *c *= rot[(spin as i64 + v) as usize];
                }
                for (i, &target) in b.idx.iter().enumerate() {
                    let row = &b.vecs[i * m..(i + 1) * m];
                    let mut acc = C64::new(0.0, 0.0);
                    for (p, c) in row.iter().zip(&coef) {
                        acc += p * c;
                    }
                    y[target] = acc;
                }
            }
            self.powers(s.phase_x, &mut pw[..w]);
            self.powers(s.phase_y, &mut pw[w..2 * w]);
            let p = s.plane;
            for (k, yk) in y.iter_mut().enumerate() {
                *yk *= pw[self.weights[k * n + p]] * pw[w + self.weights[k * n + p + 1]];
            }
        }
    }

    pub fn apply(&self, g: &CMat, v: &[C64]) -> Vec<C64> {
        let f = givens_factor(g);
        let mut y = v.to_vec();
        self.apply_factored(&f, &mut y);
        y
    }

    /// The full matrix `ρ(g)`.
    pub fn matrix(&self, g: &CMat) -> CMat {
        let f = givens_factor(g);
        let mut out = CMat::zeros(self.dim, self.dim);
        let mut y = vec![C64::new(0.0, 0.0); self.dim];
        for c in 0..self.dim {
            y.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
            y[c] = C64::new(1.0, 0.0);
            self.apply_factored(&f, &mut y);
            for (r, v) in y.iter().enumerate() {
                out[(r, c)] = *v;
            }
        }
        out
    }
}
