//! Quadrature on `SU(n)`: a product rule in Euler angles for `SU(2)` and
//! seeded Haar Monte Carlo for general `n`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{det, CMat, C64};
use crate::{Error, Result};

/// Samples per Monte Carlo batch; batch means give the standard error.
pub const MC_BATCH: usize = 10_000;
/// Euler-rule points per work chunk.
const EULER_CHUNK: usize = 4_096;

#[derive(Debug, Clone, PartialEq)]
pub enum RuleKind {
    /// `order` points in `α` and `cos β`, `2·order` in `γ`; with `reduced`
    /// the `γ` integral is dropped, which is exact for integrands invariant
    /// under the right action of the maximal torus.
    Su2Euler {
        order: usize,
        reduced: bool,
    },
    HaarMc {
        samples: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub n: usize,
    /// Explicit points for deterministic rules; Monte Carlo samples are
    /// regenerated per batch from `(seed, batch)`.
    points: Vec<(CMat, f64)>,
    pub reported_mass: f64,
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let prev = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - prev) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// `e^{iσ_z a/2} e^{iσ_y b/2} e^{iσ_z c/2}`.
pub fn su2_euler(a: f64, b: f64, c: f64) -> CMat {
    let (cb, sb) = ((b / 2.0).cos(), (b / 2.0).sin());
    let ep = |t: f64| C64::from_polar(1.0, t / 2.0);
    CMat::from_row_slice(2, 2, &[ep(a + c) * cb, ep(a - c) * sb, -ep(c - a) * sb, ep(-a - c) * cb])
}

fn build_euler(order: usize, reduced: bool) -> Result<QuadratureRule> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!("Euler rule order must be at least 2, got {order}")));
    }
    let (nodes, gl_w) = gauss_legendre(order);
    let n_gamma = if reduced { 1 } else { 2 * order };
    let mut points = Vec::with_capacity(order * order * n_gamma);
    for ia in 0..order {
        let a = 2.0 * PI * ia as f64 / order as f64;
        for (z, wz) in nodes.iter().zip(&gl_w) {
            let b = z.acos();
            for ic in 0..n_gamma {
                let c = 4.0 * PI * ic as f64 / n_gamma as f64;
                let w = wz / 2.0 / order as f64 / n_gamma as f64;
                points.push((su2_euler(a, b, c), w));
            }
        }
    }
    let mass = crate::linalg::pairwise_sum(points.iter().map(|p| p.1).collect(), |x, y| x + y).unwrap_or(0.0);
    let rule = QuadratureRule { kind: RuleKind::Su2Euler { order, reduced }, n: 2, points, reported_mass: mass };
    rule.self_test()?;
    Ok(rule)
}

/// Full Euler-angle product rule on `SU(2)`.
pub fn build_su2_quadrature(order: usize) -> Result<QuadratureRule> {
    build_euler(order, false)
}

/// Euler rule without the `γ` integral, for right-torus-invariant integrands.
pub fn build_su2_orbit_quadrature(order: usize) -> Result<QuadratureRule> {
    build_euler(order, true)
}

pub fn build_haar_mc(n: usize, samples: usize, seed: u64) -> Result<QuadratureRule> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("SU(n) needs n ≥ 2, got {n}")));
    }
    if samples < MC_BATCH {
        return Err(Error::InvalidArgument(format!("Monte Carlo needs at least {MC_BATCH} samples, got {samples}")));
    }
    Ok(QuadratureRule { kind: RuleKind::HaarMc { samples, seed }, n, points: Vec::new(), reported_mass: 1.0 })
}

/// One Haar-distributed element of `SU(n)`: QR of a complex Ginibre matrix,
/// phases of `R` moved into `Q`, then the determinant divided out.
pub fn haar_sample<R: rand::Rng>(rng: &mut R, n: usize) -> CMat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re * s, im * s)
    });
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    let phase = det(&q).arg();
    q * C64::from_polar(1.0, -phase / n as f64)
}

impl QuadratureRule {
    pub fn is_monte_carlo(&self) -> bool {
        matches!(self.kind, RuleKind::HaarMc { .. })
    }

    pub fn len(&self) -> usize {
        match self.kind {
            RuleKind::HaarMc { samples, .. } => samples,
            _ => self.points.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn batch_count(&self) -> usize {
        match self.kind {
            RuleKind::HaarMc { samples, .. } => samples.div_ceil(MC_BATCH),
            _ => self.points.len().div_ceil(EULER_CHUNK),
        }
    }

    /// Points of batch `b`, with their weights.
    pub fn batch(&self, b: usize) -> Vec<(CMat, f64)> {
        match self.kind {
            RuleKind::HaarMc { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(b as u64);
                let count = MC_BATCH.min(samples - b * MC_BATCH);
                let w = 1.0 / samples as f64;
                (0..count).map(|_| (haar_sample(&mut rng, self.n), w)).collect()
            }
            _ => {
                let hi = ((b + 1) * EULER_CHUNK).min(self.points.len());
                self.points[b * EULER_CHUNK..hi].to_vec()
            }
        }
    }

    /// Calls `f` on every point of batch `b` without materializing the batch.
    pub fn for_each_in_batch<F: FnMut(&CMat, f64)>(&self, b: usize, mut f: F) {
        match self.kind {
            RuleKind::HaarMc { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(b as u64);
                let count = MC_BATCH.min(samples - b * MC_BATCH);
                let w = 1.0 / samples as f64;
                for _ in 0..count {
                    f(&haar_sample(&mut rng, self.n), w);
                }
            }
            _ => {
                let hi = ((b + 1) * EULER_CHUNK).min(self.points.len());
                for (g, w) in &self.points[b * EULER_CHUNK..hi] {
                    f(g, *w);
                }
            }
        }
    }

    /// All points; Monte Carlo samples are generated on the fly.
    pub fn samples(&self) -> Vec<(CMat, f64)> {
        (0..self.batch_count()).flat_map(|b| self.batch(b)).collect()
    }

    pub fn descriptor(&self) -> String {
        match self.kind {
            RuleKind::Su2Euler { order, reduced: false } => format!("su2-euler(order={order})"),
            RuleKind::Su2Euler { order, reduced: true } => format!("su2-euler-reduced(order={order})"),
            RuleKind::HaarMc { samples, seed } => format!("haar-mc(N={samples},seed={seed})"),
        }
    }

    /// Mass and low-spin orthogonality checks on deterministic rules.
    fn self_test(&self) -> Result<()> {
        let fail = |what: &str, err: f64| {
            Err(Error::InvalidArgument(format!("quadrature self-test failed: {what} off by {err:.3e}")))
        };
        if (self.reported_mass - 1.0).abs() > 1e-12 {
            return fail("total mass", (self.reported_mass - 1.0).abs());
        }
        // |g_00|² integrates to 1/2 on SU(2).
        let mut acc = Vec::with_capacity(self.points.len());
        for (g, w) in &self.points {
            acc.push(w * g[(0, 0)].norm_sqr());
        }
        let v = crate::linalg::pairwise_sum(acc, |a, b| a + b).unwrap_or(0.0);
        if (v - 0.5).abs() > 1e-12 {
            return fail("∫|g₀₀|²", (v - 0.5).abs());
        }
        Ok(())
    }
}
