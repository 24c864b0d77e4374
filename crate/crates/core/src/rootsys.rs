//! Exact root-system and weight-lattice arithmetic for type `A_{n−1}`.
//!
//! Everything here is rational; no floating point enters until a weight is
//! handed to a representation. Weights live in fundamental-weight
//! coordinates, roots in simple-root coordinates, and the invariant form is
//! normalized so that every root has squared length 2.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Q = Ratio<i64>;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// A root in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVec {
    pub coords: Vec<i64>,
}

impl RootVec {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|c| -c).collect())
    }

    /// `(a, b)` with `α = ε_a − ε_b` for a positive root `α`.
    pub fn epsilon_pair(&self) -> Option<(usize, usize)> {
        if !self.is_positive() {
            return None;
        }
        let a = self.coords.iter().position(|&c| c != 0)?;
        let last = self.coords.iter().rposition(|&c| c != 0)?;
        Some((a, last + 1))
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A weight in fundamental-weight coordinates: `coords[i] = ⟨λ, H_{α_i}⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVec {
    pub coords: Vec<Q>,
}

impl WeightVec {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![Q::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: Q) -> Self {
        Self::new(self.coords.iter().map(|c| c * s).collect())
    }

    /// `ε`-coordinates `c_1..c_n` with `c_n = 0`.
    pub fn epsilon(&self) -> Vec<Q> {
        let r = self.rank();
        let mut out = vec![Q::zero(); r + 1];
        for j in (0..r).rev() {
            out[j] = out[j + 1] + self.coords[j];
        }
        out
    }

    pub fn epsilon_f64(&self) -> Vec<f64> {
        self.epsilon().iter().map(to_f64).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(to_f64).collect()
    }

    /// Integer coordinates, if integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// `Some(t)` with `self = t·other`, if the two are proportional and
    /// `other` is nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<Q> {
        let pivot = other.coords.iter().position(|c| !c.is_zero())?;
        let t = self.coords[pivot] / other.coords[pivot];
        (*self == other.scale(t)).then_some(t)
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `true` iff every coordinate is an integer.
pub fn is_integral(xi: &WeightVec) -> bool {
    xi.coords.iter().all(Ratio::is_integer)
}

/// A coroot `H_α`, acting on weights by the pairing `⟨λ, H_α⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorootElem {
    pub root: RootVec,
}

/// The root system of `SU(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem {
    pub n: usize,
    pub rank: usize,
    pub simple_roots: Vec<RootVec>,
    pub positive_roots: Vec<RootVec>,
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Gram matrix of the form on the fundamental-weight basis (the inverse
    /// Cartan matrix for a simply-laced system with roots of length² 2).
    pub form: Vec<Vec<Q>>,
}

pub fn build_root_system(n: usize) -> Result<RootSystem> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("SU(n) needs n >= 2, got {n}")));
    }
    let rank = n - 1;
    let unit = |i: usize| {
        let mut c = vec![0; rank];
        c[i] = 1;
        RootVec::new(c)
    };
    let simple_roots: Vec<RootVec> = (0..rank).map(unit).collect();
    // ε_a − ε_b = α_a + … + α_{b−1}, ordered by height then by start.
    let mut positive_roots = Vec::with_capacity(n * rank / 2);
    for height in 1..=rank {
        for start in 0..=(rank - height) {
            let mut c = vec![0; rank];
            c[start..start + height].fill(1);
            positive_roots.push(RootVec::new(c));
        }
    }
    let cartan_matrix: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let nn = n as i64;
    let form = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    let (a, b) = ((i.min(j) + 1) as i64, (i.max(j) + 1) as i64);
                    Q::new(a * (nn - b), nn)
                })
                .collect()
        })
        .collect();
    Ok(RootSystem { n, rank, simple_roots, positive_roots, cartan_matrix, form })
}

impl RootSystem {
    /// Fundamental-weight coordinates of a root: `⟨α, H_{α_j}⟩`.
    pub fn root_weight(&self, alpha: &RootVec) -> WeightVec {
        let coords = (0..self.rank)
            .map(|j| q((0..self.rank).map(|i| alpha.coords[i] * self.cartan_matrix[i][j]).sum()))
            .collect();
        WeightVec::new(coords)
    }

    pub fn is_root(&self, alpha: &RootVec) -> bool {
        alpha.coords.len() == self.rank && self.positive_roots.iter().any(|p| *p == *alpha || p.neg() == *alpha)
    }

    /// The invariant form on weights.
    pub fn form(&self, a: &WeightVec, b: &WeightVec) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += a.coords[i] * self.form[i][j] * b.coords[j];
            }
        }
        acc
    }

    /// Half-sum of all positive roots (all ones in fundamental coordinates).
    pub fn rho(&self) -> WeightVec {
        WeightVec::new(vec![Q::one(); self.rank])
    }

    pub fn coroot(&self, alpha: &RootVec) -> Result<CorootElem> {
        if !self.is_root(alpha) {
            return Err(Error::InvalidArgument(format!("{alpha} is not a root of A{}", self.rank)));
        }
        Ok(CorootElem { root: alpha.clone() })
    }

    /// Highest root `ε_1 − ε_n`.
    pub fn highest_root(&self) -> RootVec {
        RootVec::new(vec![1; self.rank])
    }

    pub fn check_weight(&self, w: &WeightVec) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::InvalidArgument(format!(
                "weight {w} has {} coordinates, expected {}",
                w.rank(),
                self.rank
            )));
        }
        Ok(())
    }
}

impl CorootElem {
    /// `⟨λ, H_α⟩ = 2(λ, α)/(α, α)`.
    pub fn pair(&self, rs: &RootSystem, lambda: &WeightVec) -> Q {
        let a = rs.root_weight(&self.root);
        q(2) * rs.form(lambda, &a) / rs.form(&a, &a)
    }
}

pub fn pair_weight_coroot(rs: &RootSystem, lambda: &WeightVec, alpha: &RootVec) -> Result<Q> {
    rs.check_weight(lambda)?;
    Ok(rs.coroot(alpha)?.pair(rs, lambda))
}

fn check_orbit_weight(rs: &RootSystem, xi: &WeightVec) -> Result<()> {
    rs.check_weight(xi)?;
    if xi.is_zero() {
        return Err(Error::DegenerateOrbit);
    }
    if !xi.is_dominant() {
        return Err(Error::InvalidArgument(format!("{xi} is not dominant")));
    }
    Ok(())
}

/// Splits the positive roots into `R_{ξ,+}` (orthogonal to `ξ`) and the
/// complementary `R^c_{ξ,+}`.
pub fn stabilizer_split(rs: &RootSystem, xi: &WeightVec) -> Result<(Vec<RootVec>, Vec<RootVec>)> {
    check_orbit_weight(rs, xi)?;
    let mut stab = Vec::new();
    let mut comp = Vec::new();
    for alpha in &rs.positive_roots {
        if rs.coroot(alpha)?.pair(rs, xi).is_zero() {
            stab.push(alpha.clone());
        } else {
            comp.push(alpha.clone());
        }
    }
    Ok((stab, comp))
}

/// `δ_ξ`: half the sum of the complementary positive roots.
pub fn delta_xi(rs: &RootSystem, xi: &WeightVec) -> Result<WeightVec> {
    let (_, comp) = stabilizer_split(rs, xi)?;
    let sum = comp.iter().fold(WeightVec::zero(rs.rank), |acc, a| acc.add(&rs.root_weight(a)));
    Ok(sum.scale(Q::new(1, 2)))
}

/// `λ` with `ξ = (2/λ)·δ_ξ`, when the orbit is Kähler–Einstein.
pub fn einstein_constant(rs: &RootSystem, xi: &WeightVec) -> Result<Option<Q>> {
    let delta = delta_xi(rs, xi)?;
    Ok(delta.ratio_to(xi).map(|t| q(2) * t))
}

/// Weyl dimension formula `Π_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩`.
pub fn weyl_dim(rs: &RootSystem, lambda: &WeightVec) -> Result<u64> {
    rs.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::InvalidArgument(format!("{lambda} is not dominant")));
    }
    if !is_integral(lambda) {
        return Err(Error::NotIntegral(lambda.to_string()));
    }
    let shifted = lambda.add(&rs.rho());
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for alpha in &rs.positive_roots {
        let c = rs.coroot(alpha)?;
        let top = c.pair(rs, &shifted);
        let bottom = c.pair(rs, &rs.rho());
        num = num.checked_mul(top.to_integer() as i128).ok_or(Error::ResourceLimit { dim: u64::MAX, cap: u64::MAX })?;
        den *= bottom.to_integer() as i128;
    }
    Ok((num / den) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> WeightVec {
        WeightVec::from_ints(c)
    }

    #[test]
    fn small_systems() {
        assert!(build_root_system(1).is_err());
        let a1 = build_root_system(2).unwrap();
        assert_eq!(a1.positive_roots, vec![RootVec::new(vec![1])]);
        assert_eq!(a1.cartan_matrix, vec![vec![2]]);
        let a2 = build_root_system(3).unwrap();
        assert_eq!(
            a2.positive_roots,
            vec![RootVec::new(vec![1, 0]), RootVec::new(vec![0, 1]), RootVec::new(vec![1, 1])]
        );
        assert_eq!(build_root_system(4).unwrap().positive_roots.len(), 6);
    }

    #[test]
    fn cartan_entries_match_coroot_pairings() {
        for n in 2..=6 {
            let rs = build_root_system(n).unwrap();
            for i in 0..rs.rank {
                for j in 0..rs.rank {
                    let aw = rs.root_weight(&rs.simple_roots[i]);
                    let p = pair_weight_coroot(&rs, &aw, &rs.simple_roots[j]).unwrap();
                    assert_eq!(p, q(rs.cartan_matrix[i][j]));
                }
            }
            for a in &rs.positive_roots {
                let aw = rs.root_weight(a);
                assert_eq!(rs.form(&aw, &aw), q(2));
                assert_eq!(pair_weight_coroot(&rs, &aw, a).unwrap(), q(2));
            }
        }
    }

    #[test]
    fn coroot_pairings() {
        let rs = build_root_system(3).unwrap();
        let (a1, a2, a12) = (&rs.positive_roots[0], &rs.positive_roots[1], &rs.positive_roots[2]);
        assert_eq!(pair_weight_coroot(&rs, &w(&[1, 0]), a2).unwrap(), q(0));
        assert_eq!(pair_weight_coroot(&rs, &w(&[1, 0]), a1).unwrap(), q(1));
        // α₁ = (2, −1) in fundamental coordinates.
        let alpha1 = rs.root_weight(a1);
        assert_eq!(alpha1, w(&[2, -1]));
        assert_eq!(pair_weight_coroot(&rs, &alpha1, a12).unwrap(), q(1));
        assert!(pair_weight_coroot(&rs, &alpha1, &RootVec::new(vec![1, -1])).is_err());
    }

    #[test]
    fn stabilizer_and_delta() {
        let rs = build_root_system(3).unwrap();
        let (s, c) = stabilizer_split(&rs, &w(&[1, 1])).unwrap();
        assert!(s.is_empty());
        assert_eq!(c.len(), 3);
        let (s, c) = stabilizer_split(&rs, &w(&[4, 0])).unwrap();
        assert_eq!(s, vec![RootVec::new(vec![0, 1])]);
        assert_eq!(c, vec![RootVec::new(vec![1, 0]), RootVec::new(vec![1, 1])]);
        assert_eq!(stabilizer_split(&rs, &w(&[0, 0])), Err(Error::DegenerateOrbit));

        assert_eq!(delta_xi(&rs, &w(&[1, 1])).unwrap(), w(&[1, 1]));
        let d = delta_xi(&rs, &w(&[2, 0])).unwrap();
        assert_eq!(d, WeightVec::new(vec![Q::new(3, 2), q(0)]));
        assert_eq!(d.scale(q(2)), w(&[3, 0]));

        let a1 = build_root_system(2).unwrap();
        assert!(stabilizer_split(&a1, &w(&[5])).unwrap().0.is_empty());
        assert_eq!(delta_xi(&a1, &w(&[5])).unwrap(), w(&[1]));
    }

    #[test]
    fn integrality() {
        assert!(is_integral(&w(&[3, 0])));
        assert!(!is_integral(&WeightVec::new(vec![Q::new(1, 2)])));
        assert!(is_integral(&w(&[2, 5])));
    }

    #[test]
    fn einstein_constants() {
        let a1 = build_root_system(2).unwrap();
        for k in 1..6 {
            assert_eq!(einstein_constant(&a1, &w(&[k])).unwrap(), Some(Q::new(2, k)));
        }
        let a2 = build_root_system(3).unwrap();
        assert_eq!(einstein_constant(&a2, &w(&[1, 1])).unwrap(), Some(q(2)));
        assert_eq!(einstein_constant(&a2, &w(&[2, 2])).unwrap(), Some(q(1)));
        for k in 1..5 {
            assert_eq!(einstein_constant(&a2, &w(&[k, 0])).unwrap(), Some(Q::new(3, k)));
        }
        assert_eq!(einstein_constant(&a2, &w(&[2, 1])).unwrap(), None);
    }

    #[test]
    fn weyl_dimensions() {
        let a1 = build_root_system(2).unwrap();
        for m in 0..10 {
            assert_eq!(weyl_dim(&a1, &w(&[m])).unwrap(), m as u64 + 1);
        }
        let a2 = build_root_system(3).unwrap();
        assert_eq!(weyl_dim(&a2, &w(&[1, 0])).unwrap(), 3);
        assert_eq!(weyl_dim(&a2, &w(&[1, 1])).unwrap(), 8);
        assert_eq!(weyl_dim(&a2, &w(&[2, 2])).unwrap(), 27);
        assert!(weyl_dim(&a2, &w(&[-1, 2])).is_err());
        for n in 2..=5 {
            let rs = build_root_system(n).unwrap();
            let np = rs.positive_roots.len() as u32;
            assert_eq!(weyl_dim(&rs, &rs.rho()).unwrap(), 2u64.pow(np));
        }
    }

    #[test]
    fn epsilon_coordinates() {
        assert_eq!(w(&[2, 1]).epsilon(), vec![q(3), q(1), q(0)]);
        assert_eq!(RootVec::new(vec![0, 1, 1]).epsilon_pair(), Some((1, 3)));
    }
}
