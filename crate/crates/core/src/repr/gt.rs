//! Gelfand–Tsetlin bases for irreducible `gl(n)` modules.

use std::collections::HashMap;

use nalgebra::DMatrix;

/// A Gelfand–Tsetlin pattern; `rows[k]` has `k + 1` entries and the last row
/// is the highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GtPattern {
    pub rows: Vec<Vec<i64>>,
}

impl GtPattern {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn highest(top: &[i64]) -> Self {
        let n = top.len();
        GtPattern { rows: (1..=n).map(|k| top[..k].to_vec()).collect() }
    }

    /// `gl(n)` weight: `μ_k = Σ row_k − Σ row_{k−1}`.
    pub fn gl_weight(&self) -> Vec<i64> {
        let mut prev = 0;
        self.rows
            .iter()
            .map(|r| {
                let s: i64 = r.iter().sum();
                let w = s - prev;
                prev = s;
                w
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        (1..self.n()).all(|k| {
            let (up, low) = (&self.rows[k], &self.rows[k - 1]);
            (0..k).all(|i| up[i] >= low[i] && low[i] >= up[i + 1])
        })
    }
}

/// All patterns with top row `top` (which must be non-increasing).
pub fn enumerate_patterns(top: &[i64]) -> Vec<GtPattern> {
    let n = top.len();
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); n];
    rows[n - 1] = top.to_vec();
    fill(&mut rows, n - 1, &mut out);
    out.sort();
    out
}

fn fill(rows: &mut Vec<Vec<i64>>, k: usize, out: &mut Vec<GtPattern>) {
    if k == 0 {
        out.push(GtPattern { rows: rows.clone() });
        return;
    }
    let up = rows[k].clone();
    let mut cur = vec![0; k];
    choose(&up, 0, &mut cur, rows, k, out);
}

fn choose(up: &[i64], i: usize, cur: &mut Vec<i64>, rows: &mut Vec<Vec<i64>>, k: usize, out: &mut Vec<GtPattern>) {
    if i == cur.len() {
        rows[k - 1] = cur.clone();
        fill(rows, k - 1, out);
        return;
    }
    for v in up[i + 1]..=up[i] {
        cur[i] = v;
        choose(up, i + 1, cur, rows, k, out);
    }
}

fn l(row: &[i64], i: usize) -> i128 {
    (row[i] - i as i64) as i128
}

/// Orthonormal-basis matrices of `E_{k,k+1}` for `k = 0..n−1`.
pub fn raising_operators(patterns: &[GtPattern]) -> Vec<DMatrix<f64>> {
    let dim = patterns.len();
    let n = patterns[0].n();
    let index: HashMap<&GtPattern, usize> = patterns.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut ops = Vec::with_capacity(n - 1);
    for k in 1..n {
        // row k−1 (k entries) changes; rows k and k−2 are its neighbours.
        let mut m = DMatrix::zeros(dim, dim);
        for (src, p) in patterns.iter().enumerate() {
            let row = &p.rows[k - 1];
            let upper = &p.rows[k];
            for i in 0..k {
                let mut q = p.clone();
                q.rows[k - 1][i] += 1;
                let Some(&dst) = index.get(&q) else { continue };
                let mut num_a: i128 = -1;
                for j in 0..=k {
                    num_a *= l(row, i) - l(upper, j);
                }
                let mut den_a: i128 = 1;
                for j in (0..k).filter(|&j| j != i) {
                    den_a *= l(row, i) - l(row, j);
                }
                let new_row = &q.rows[k - 1];
                let mut num_b: i128 = 1;
                if k >= 2 {
                    let lower = &p.rows[k - 2];
                    for j in 0..k - 1 {
                        num_b *= l(new_row, i) - l(lower, j);
                    }
                }
                let mut den_b: i128 = 1;
                for j in (0..k).filter(|&j| j != i) {
                    den_b *= l(new_row, i) - l(new_row, j);
                }
                let a = num_a as f64 / den_a as f64;
                let b = num_b as f64 / den_b as f64;
                m[(dst, src)] = a.signum() * (a * b).abs().sqrt();
            }
        }
        ops.push(m);
    }
    ops
}

/// `ρ(E_ab)` for all `a, b`, from the simple raising operators.
pub fn all_units(weights: &[Vec<i64>], raising: &[DMatrix<f64>]) -> Vec<Vec<DMatrix<f64>>> {
    let dim = weights.len();
    let n = raising.len() + 1;
    let mut e = vec![vec![DMatrix::<f64>::zeros(dim, dim); n]; n];
    for a in 0..n {
        for (s, w) in weights.iter().enumerate() {
            e[a][a][(s, s)] = w[a] as f64;
        }
    }
    for a in 0..n - 1 {
        e[a][a + 1] = raising[a].clone();
    }
    for gap in 2..n {
        for a in 0..n - gap {
            let b = a + gap;
            e[a][b] = &e[a][a + 1] * &e[a + 1][b] - &e[a + 1][b] * &e[a][a + 1];
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            e[b][a] = e[a][b].transpose();
        }
    }
    e
}
