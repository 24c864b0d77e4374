//! A fixed real basis of `su(n)` built from sl₂-triples.

use nalgebra::DMatrix;

use crate::conventions::SL2_TRIPLE_SIGN;
use crate::linalg::{CMat, C64};
use crate::rootsys::{build_root_system, to_f64, RootVec, WeightVec};
use crate::Result;

/// Indices of `(X_α, Y_α)` inside the basis, for one positive root.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Triple {
    pub root: RootVec,
    /// `α = ε_a − ε_b`.
    pub plane: (usize, usize),
    pub x: usize,
    pub y: usize,
}

/// The basis `{iH_{α_1}, …, iH_{α_r}} ∪ {X_α, Y_α : α > 0}` of `su(n)`.
#[derive(Debug, Clone)]
pub struct LieBasis {
    pub n: usize,
    pub elements: Vec<CMat>,
    pub triples: Vec<Sl2Triple>,
    /// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
    pub structure_constants: Vec<Vec<Vec<f64>>>,
    gram: DMatrix<f64>,
    gram_inv: DMatrix<f64>,
}

fn unit(n: usize, a: usize, b: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(a, b)] = C64::new(1.0, 0.0);
    m
}

/// `(A, B) = −Re tr(AB)`.
pub fn trace_form(a: &CMat, b: &CMat) -> f64 {
    -(a * b).trace().re
}

pub fn build_lie_basis(n: usize) -> Result<LieBasis> {
    let rs = build_root_system(n)?;
    let i = C64::new(0.0, 1.0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut elements = Vec::with_capacity(n * n - 1);
    for j in 0..rs.rank {
        elements.push((unit(n, j, j) - unit(n, j + 1, j + 1)) * i);
    }
    let mut triples = Vec::with_capacity(rs.positive_roots.len());
    for root in &rs.positive_roots {
        let (a, b) = root.epsilon_pair().expect("positive root");
        let x = (unit(n, a, b) - unit(n, b, a)) * C64::new(s, 0.0);
        let y = (unit(n, a, b) + unit(n, b, a)) * (i * s * SL2_TRIPLE_SIGN);
        triples.push(Sl2Triple { root: root.clone(), plane: (a, b), x: elements.len(), y: elements.len() + 1 });
        elements.push(x);
        elements.push(y);
    }
    let d = elements.len();
    let gram = DMatrix::from_fn(d, d, |r, c| trace_form(&elements[r], &elements[c]));
    let gram_inv = gram.clone().try_inverse().expect("trace form is nondegenerate on su(n)");
    let mut basis = LieBasis { n, elements, triples, structure_constants: Vec::new(), gram, gram_inv };
    let mut sc = vec![vec![vec![0.0; d]; d]; d];
    for a in 0..d {
        for b in 0..d {
            let br = &basis.elements[a] * &basis.elements[b] - &basis.elements[b] * &basis.elements[a];
            sc[a][b] = basis.coords(&br);
        }
    }
    basis.structure_constants = sc;
    Ok(basis)
}

impl LieBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn is_cartan(&self, idx: usize) -> bool {
        idx < self.rank()
    }

    /// Gram matrix of the trace form on the basis.
    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn label(&self, idx: usize) -> String {
        if self.is_cartan(idx) {
            return format!("iH[a{}]", idx + 1);
        }
        let t = &self.triples[(idx - self.rank()) / 2];
        let kind = if idx == t.x { "X" } else { "Y" };
        format!("{kind}[{}]", t.root)
    }

    /// `Σ v_i e_i` as an `n×n` matrix.
    pub fn element(&self, v: &[f64]) -> CMat {
        let mut m = CMat::zeros(self.n, self.n);
        for (c, e) in v.iter().zip(&self.elements) {
            if *c != 0.0 {
                m += e * C64::new(*c, 0.0);
            }
        }
        m
    }

    /// Coordinates of an element of `su(n)` (anti-Hermitian parts of
    /// anything else are silently dropped by the trace form).
    pub fn coords(&self, z: &CMat) -> Vec<f64> {
        let rhs: Vec<f64> = self.elements.iter().map(|e| trace_form(e, z)).collect();
        (0..self.dim()).map(|r| (0..self.dim()).map(|c| self.gram_inv[(r, c)] * rhs[c]).sum()).collect()
    }

    pub fn unit_vector(&self, idx: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.dim()];
        v[idx] = 1.0;
        v
    }

    /// `[u, v]` in coordinates, via structure constants.
    pub fn bracket(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d];
        for a in 0..d {
            if u[a] == 0.0 {
                continue;
            }
            for b in 0..d {
                let s = u[a] * v[b];
                if s == 0.0 {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(&self.structure_constants[a][b]) {
                    *o += s * c;
                }
            }
        }
        out
    }

    /// `⟨η, Z⟩`: reads off the Cartan components of `Z`.
    pub fn pair(&self, eta: &WeightVec, z: &[f64]) -> f64 {
        eta.coords.iter().zip(z).map(|(e, c)| to_f64(e) * c).sum()
    }

    /// Coordinates of `η^∨ = i·diag(c − mean c)`.
    pub fn dual_of_weight(&self, eta: &WeightVec) -> Vec<f64> {
        self.coords(&dual_matrix(eta))
    }
}

/// `η^∨` as a diagonal matrix.
pub fn dual_matrix(eta: &WeightVec) -> CMat {
    let c = eta.epsilon_f64();
    let mean = c.iter().sum::<f64>() / c.len() as f64;
    let n = c.len();
    let mut m = CMat::zeros(n, n);
    for (k, ck) in c.iter().enumerate() {
        m[(k, k)] = C64::new(0.0, ck - mean);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{anti_hermitian_defect, commutator, frobenius};

    #[test]
    fn counts_and_shape() {
        assert_eq!(build_lie_basis(2).unwrap().dim(), 3);
        let b3 = build_lie_basis(3).unwrap();
        assert_eq!(b3.dim(), 8);
        assert_eq!(b3.triples.len(), 3);
        for e in &b3.elements {
            assert!(e.trace().norm() < 1e-14);
            assert!(anti_hermitian_defect(e) < 1e-14);
        }
    }

    #[test]
    fn su2_is_the_pauli_triple() {
        let b = build_lie_basis(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // iσ_z, iσ_y/√2, iσ_x/√2
        assert!((b.elements[0][(0, 0)] - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((b.elements[1][(0, 1)] - C64::new(s, 0.0)).norm() < 1e-15);
        assert!((b.elements[2][(1, 0)] - C64::new(0.0, s)).norm() < 1e-15);
    }

    #[test]
    fn sl2_triple_relations() {
        for n in 2..=5 {
            let b = build_lie_basis(n).unwrap();
            for t in &b.triples {
                let (p, q) = t.plane;
                let ih = (unit(n, p, p) - unit(n, q, q)) * C64::new(0.0, 1.0);
                let (x, y) = (&b.elements[t.x], &b.elements[t.y]);
                assert!(frobenius(&(commutator(&ih, x) - y * C64::new(2.0, 0.0))) < 1e-13);
                assert!(frobenius(&(commutator(&ih, y) + x * C64::new(2.0, 0.0))) < 1e-13);
                assert!(frobenius(&(commutator(x, y) - &ih * C64::new(SL2_TRIPLE_SIGN, 0.0))) < 1e-13);
            }
        }
    }

    #[test]
    fn root_brackets_close() {
        // [X_{α1}, X_{α2}] ∝ X_{α1+α2}
        let b = build_lie_basis(3).unwrap();
        let (x1, x2, x12) = (b.triples[0].x, b.triples[1].x, b.triples[2].x);
        let br = b.bracket(&b.unit_vector(x1), &b.unit_vector(x2));
        for (k, c) in br.iter().enumerate() {
            if k == x12 {
                assert!((c.abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-13);
            } else {
                assert!(c.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn structure_constants_reproduce_matrix_commutators() {
        let b = build_lie_basis(4).unwrap();
        let u: Vec<f64> = (0..b.dim()).map(|k| (k as f64 * 0.37).sin()).collect();
        let v: Vec<f64> = (0..b.dim()).map(|k| (k as f64 * 1.3 + 0.2).cos()).collect();
        let lhs = b.element(&b.bracket(&u, &v));
        let rhs = commutator(&b.element(&u), &b.element(&v));
        assert!(frobenius(&(lhs - rhs)) < 1e-12);
        let back = b.coords(&b.element(&u));
        assert!(back.iter().zip(&u).all(|(a, c)| (a - c).abs() < 1e-13));
    }

    #[test]
    fn weight_pairing_reads_cartan_coordinates() {
        let b = build_lie_basis(3).unwrap();
        let eta = WeightVec::from_ints(&[2, 5]);
        assert!((b.pair(&eta, &b.unit_vector(0)) - 2.0).abs() < 1e-15);
        assert!((b.pair(&eta, &b.unit_vector(1)) - 5.0).abs() < 1e-15);
        assert_eq!(b.pair(&eta, &b.unit_vector(4)), 0.0);
        // ⟨η, η'^∨⟩ = (η, η') with the normalized form.
        let rs = build_root_system(3).unwrap();
        let other = WeightVec::from_ints(&[1, -1]);
        let expected = to_f64(&rs.form(&eta, &other));
        assert!((b.pair(&eta, &b.dual_of_weight(&other)) - expected).abs() < 1e-13);
    }
}
