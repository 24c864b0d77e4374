//! Property checks shared by the standalone property suite and the
//! acceptance run.

#![allow(dead_code)]

use orbitq::linalg::{anti_hermitian_defect, commutator, frobenius, hermitian_defect, CMat, C64};
use orbitq::orbit::build_orbit;
use orbitq::quantize::{accumulate, build_haar_mc, build_su2_orbit_quadrature, SectionSpace};
use orbitq::repr::{build_irrep, build_lie_basis, drho};
use orbitq::rootsys::build_root_system;
use orbitq::{OrbitFunction, WeightVec};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};

pub type PropResult = Result<(), TestError<String>>;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn coeffs(d: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0f64..1.0, d)
}

/// `(n, λ)` with `λ` dominant and small.
fn small_weight() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (2usize..=4).prop_flat_map(|n| (Just(n), proptest::collection::vec(0i64..=(if n == 4 { 1 } else { 2 }), n - 1)))
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

pub fn representation_homomorphism() -> PropResult {
    let strat = small_weight().prop_flat_map(|(n, l)| {
        let d = n * n - 1;
        (Just(n), Just(l), coeffs(d), coeffs(d))
    });
    runner(48)
        .run(&strat, |(n, l, u, w)| {
            let rs = build_root_system(n).unwrap();
            let b = build_lie_basis(n).unwrap();
            let r = build_irrep(&rs, &b, &WeightVec::from_ints(&l)).unwrap();
            let du = drho(&r, &u).unwrap();
            let dw = drho(&r, &w).unwrap();
            let err = frobenius(&(commutator(&du, &dw) - drho(&r, &b.bracket(&u, &w)).unwrap()));
            if err > 1e-12 * r.dim as f64 * 8.0 {
                return Err(fail(format!("homomorphism defect {err:.3e} for {l:?}")));
            }
            if anti_hermitian_defect(&du) > 1e-12 {
                return Err(fail("dρ(u) is not anti-Hermitian".into()));
            }
            Ok(())
        })
        .map_err(|e| e.map_reason_to_string())
}

trait MapReason {
    fn map_reason_to_string(self) -> TestError<String>;
}

impl<T: std::fmt::Debug> MapReason for TestError<T> {
    fn map_reason_to_string(self) -> TestError<String> {
        match self {
            TestError::Abort(r) => TestError::Abort(r),
            TestError::Fail(r, v) => TestError::Fail(r, format!("{v:?}")),
        }
    }
}

fn orbit_case() -> impl Strategy<Value = (usize, Vec<i64>, u32)> {
    prop_oneof![
        (1i64..=3, 1u32..=3).prop_map(|(k, m)| (2, vec![k], m)),
        (0i64..=1, 0i64..=1, 1u32..=2).prop_filter("nonzero", |(a, b, _)| a + b > 0).prop_map(|(a, b, m)| (
            3,
            vec![a, b],
            m
        )),
    ]
}

pub fn beta_homomorphism() -> PropResult {
    let strat = orbit_case().prop_flat_map(|(n, xi, m)| {
        let d = n * n - 1;
        (Just(n), Just(xi), Just(m), coeffs(d), coeffs(d))
    });
    runner(32)
        .run(&strat, |(n, xi, m, u, v)| {
            let rs = build_root_system(n).unwrap();
            let b = build_lie_basis(n).unwrap();
            let spec = build_orbit(&rs, &b, &WeightVec::from_ints(&xi)).unwrap();
            let space = SectionSpace::new(&spec, m).unwrap();
            let bu = space.beta(&u).unwrap();
            let bv = space.beta(&v).unwrap();
            let err = frobenius(&(commutator(&bu, &bv) - space.beta(&b.bracket(&u, &v)).unwrap()));
            if err > 1e-11 {
                return Err(fail(format!("β homomorphism defect {err:.3e}")));
            }
            if anti_hermitian_defect(&bu) > 1e-12 {
                return Err(fail("β(u) is not anti-Hermitian".into()));
            }
            Ok(())
        })
        .map_err(|e| e.map_reason_to_string())
}

pub fn toeplitz_hermitian_linear() -> PropResult {
    let strat = (1i64..=3, 1u32..=4, coeffs(3), coeffs(3), -2.0f64..2.0, -2.0f64..2.0);
    runner(24)
        .run(&strat, |(k, m, w1, w2, a, c)| {
            let rs = build_root_system(2).unwrap();
            let b = build_lie_basis(2).unwrap();
            let spec = build_orbit(&rs, &b, &WeightVec::from_ints(&[k])).unwrap();
            let space = SectionSpace::new(&spec, m).unwrap();
            let rule = build_su2_orbit_quadrature(2 * (m as usize * k as usize + 2)).unwrap();
            let eta = space.spec.karabegov_shift.clone();
            let acc = accumulate(&space, std::slice::from_ref(&eta), &rule).unwrap();
            let f = OrbitFunction::moment(w1.clone(), eta.clone());
            let g = OrbitFunction::moment(w2.clone(), eta.clone());
            let lin: Vec<f64> = w1.iter().zip(&w2).map(|(x, y)| a * x + c * y).collect();
            let h = OrbitFunction::moment(lin, eta.clone());
            let tf = acc.toeplitz_matrix(&f).unwrap();
            let tg = acc.toeplitz_matrix(&g).unwrap();
            let th = acc.toeplitz_matrix(&h).unwrap();
            let err = frobenius(&(th - (&tf * C64::new(a, 0.0) + &tg * C64::new(c, 0.0))));
            if err > 1e-11 {
                return Err(fail(format!("linearity defect {err:.3e}")));
            }
            if hermitian_defect(&tf) > 1e-11 {
                return Err(fail("T_f is not Hermitian".into()));
            }
            let one = acc.toeplitz_matrix(&OrbitFunction::constant(1.0, 3, 1)).unwrap();
            if frobenius(&(one - CMat::identity(space.dim(), space.dim()))) > 1e-11 {
                return Err(fail("T_1 ≠ I".into()));
            }
            Ok(())
        })
        .map_err(|e| e.map_reason_to_string())
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

pub fn quadrature_determinism() -> PropResult {
    let strat = (any::<u64>(), 2usize..=3);
    runner(6)
        .run(&strat, |(seed, n)| {
            let rule = build_haar_mc(n, 30_000, seed).unwrap();
            let again = build_haar_mc(n, 30_000, seed).unwrap();
            for bi in 0..rule.batch_count() {
                let (x, y) = (rule.batch(bi), again.batch(bi));
                if x.iter().zip(&y).any(|(p, q)| p.0 != q.0 || p.1 != q.1) {
                    return Err(fail("sample lists differ".into()));
                }
            }
            let rs = build_root_system(n).unwrap();
            let b = build_lie_basis(n).unwrap();
            let xi = if n == 2 { vec![2] } else { vec![1, 1] };
            let spec = build_orbit(&rs, &b, &WeightVec::from_ints(&xi)).unwrap();
            let space = SectionSpace::new(&spec, 1).unwrap();
            let eta = spec.karabegov_shift.clone();
            let f = OrbitFunction::moment(b.unit_vector(0), eta.clone());
            let run = |threads: usize| {
                pool(threads).install(|| {
                    let acc = accumulate(&space, std::slice::from_ref(&eta), &rule).unwrap();
                    (acc.gram.clone(), acc.toeplitz_matrix(&f).unwrap())
                })
            };
            let (g1, t1) = run(1);
            let (g3, t3) = run(3);
            if g1 != g3 || t1 != t3 {
                return Err(fail("accumulation depends on the worker count".into()));
            }
            Ok(())
        })
        .map_err(|e| e.map_reason_to_string())
}
