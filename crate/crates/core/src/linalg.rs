//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, Schur, SVD};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const I: C64 = C64::new(0.0, 1.0);

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn frobenius(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value.
pub fn op_norm(a: &CMat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    SVD::new(a.clone(), false, false).singular_values.iter().cloned().fold(0.0, f64::max)
}

/// Ratio of extreme singular values; `inf` for a singular matrix.
pub fn condition_number(a: &CMat) -> f64 {
    let sv = SVD::new(a.clone(), false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// `‖a + a†‖_F`, zero for an anti-Hermitian matrix.
pub fn anti_hermitian_defect(a: &CMat) -> f64 {
    frobenius(&(a + a.adjoint()))
}

pub fn hermitian_defect(a: &CMat) -> f64 {
    frobenius(&(a - a.adjoint()))
}

/// `‖u†u − 1‖_F`.
pub fn unitarity_defect(u: &CMat) -> f64 {
    let n = u.nrows();
    frobenius(&(u.adjoint() * u - CMat::identity(n, n)))
}

/// Matrix exponential (scaling and squaring with a Padé approximant).
pub fn expm(a: &CMat) -> CMat {
    a.exp()
}

/// Principal logarithm of a special unitary matrix, adjusted to be
/// traceless so the result lies in `su(n)`.
///
/// `u` is normal, so its Schur form is diagonal up to rounding and the
/// logarithm is read off the diagonal.
pub fn su_log(u: &CMat) -> CMat {
    let n = u.nrows();
    let (q, t) = Schur::new(u.clone()).unpack();
    let mut angles: Vec<f64> = (0..n).map(|k| t[(k, k)].arg()).collect();
    // det = 1 forces Σθ ∈ 2πZ; move the excess onto the extreme angles.
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut excess = (angles.iter().sum::<f64>() / two_pi).round() as i64;
    while excess != 0 {
        let pick = if excess > 0 {
            (0..n).max_by(|&a, &b| angles[a].total_cmp(&angles[b])).unwrap()
        } else {
            (0..n).min_by(|&a, &b| angles[a].total_cmp(&angles[b])).unwrap()
        };
        angles[pick] -= two_pi * excess.signum() as f64;
        excess -= excess.signum();
    }
    let d = CMat::from_diagonal(&CVec::from_iterator(n, angles.iter().map(|&th| C64::new(0.0, th))));
    &q * d * q.adjoint()
}

pub fn det(a: &CMat) -> C64 {
    a.clone().determinant()
}

/// Sum in a fixed binary-tree order, so the result does not depend on how
/// the inputs were produced.
pub fn pairwise_sum<T, F>(mut items: Vec<T>, add: F) -> Option<T>
where
    F: Fn(T, T) -> T,
{
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(add(a, b)),
                None => next.push(a),
            }
        }
        items = next;
    }
    items.pop()
}
