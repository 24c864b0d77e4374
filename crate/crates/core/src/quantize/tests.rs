use super::*;
use crate::linalg::{anti_hermitian_defect, commutator, expm, frobenius, hermitian_defect, C64};
use crate::orbit::{build_orbit, OrbitSpec};
use crate::repr::build_lie_basis;
use crate::rootsys::{build_root_system, WeightVec};

fn orbit(n: usize, xi: &[i64]) -> OrbitSpec {
    let rs = build_root_system(n).unwrap();
    let b = build_lie_basis(n).unwrap();
    build_orbit(&rs, &b, &WeightVec::from_ints(xi)).unwrap()
}

const I: C64 = C64::new(0.0, 1.0);

#[test]
fn rank_one_toeplitz_is_proportional_to_beta() {
    for k in 1..=3i64 {
        for m in 1..=3u32 {
            let spec = orbit(2, &[k]);
            let space = SectionSpace::new(&spec, m).unwrap();
            let rule = build_su2_quadrature((2 * (m as i64 * k + 2)) as usize).unwrap();
            let level_xi = space.spec.xi.clone();
            let acc = accumulate(&space, std::slice::from_ref(&level_xi), &rule).unwrap();
            let mk = (m as i64 * k) as f64;
            for i in 0..3 {
                let v = space.spec.basis.unit_vector(i);
                let t = acc.toeplitz_matrix(&OrbitFunction::moment(v.clone(), level_xi.clone())).unwrap();
                let want = space.beta(&v).unwrap() * (I * (mk / (mk + 2.0)));
                assert!(frobenius(&(t - want)) < 1e-10, "k={k} m={m} i={i}");
            }
        }
    }
}

#[test]
fn theorem_holds_on_the_sphere() {
    let spec = orbit(2, &[1]);
    let rule = build_su2_quadrature(12).unwrap();
    let r = verify_theorem(&spec, 1, &rule, 1e-8, Shift::Karabegov).unwrap();
    assert!(r.pass);
    assert!(r.max_residual <= 1e-8);
    assert_eq!(r.records.len(), 3);
    assert!(r.records.iter().all(|d| d.standard_error.is_none()));
}

#[test]
fn plain_moment_map_misses_by_the_predicted_ratio() {
    for (k, m) in [(1, 1), (2, 1), (1, 3)] {
        let spec = orbit(2, &[k]);
        let rule = build_su2_quadrature(2 * (k as usize * m as usize + 2)).unwrap();
        let r = verify_theorem(&spec, m, &rule, 1e-8, Shift::Plain).unwrap();
        assert!(!r.pass);
        let want = 2.0 / (k as f64 * m as f64 + 2.0);
        for d in &r.records {
            assert!((d.residual / d.beta_norm - want).abs() < 1e-8);
        }
    }
}

#[test]
fn beta_is_an_antihermitian_homomorphism() {
    let spec = orbit(3, &[1, 1]);
    let space = SectionSpace::new(&spec, 1).unwrap();
    let b = &space.spec.basis;
    assert_eq!(frobenius(&geom_rep_beta(&space, &[0.0; 8]).unwrap()), 0.0);
    for i in 0..b.dim() {
        let bi = space.beta(&b.unit_vector(i)).unwrap();
        assert!(anti_hermitian_defect(&bi) < 1e-12);
        for j in 0..b.dim() {
            let bj = space.beta(&b.unit_vector(j)).unwrap();
            let lhs = commutator(&bi, &bj);
            let rhs = space.beta(&b.bracket(&b.unit_vector(i), &b.unit_vector(j))).unwrap();
            assert!(frobenius(&(lhs - rhs)) < 1e-12);
        }
    }
}

#[test]
fn beta_matches_finite_difference_of_the_group_action() {
    let spec = orbit(3, &[2, 1]);
    let space = SectionSpace::new(&spec, 1).unwrap();
    let action = space.irrep.action().unwrap();
    let b = &space.spec.basis;
    let t = 1e-6;
    for i in [0, 2, 5, 7] {
        let v = b.unit_vector(i);
        let x = b.element(&v);
        // Coefficients transform by w ↦ ρ(h⁻¹)^T w under (h·s)(g) = s(h⁻¹g).
        let fwd = action.matrix(&expm(&(&x * C64::new(-t, 0.0)))).transpose();
        let bwd = action.matrix(&expm(&(&x * C64::new(t, 0.0)))).transpose();
        let fd = (fwd - bwd) / C64::new(2.0 * t, 0.0);
        assert!(frobenius(&(fd - space.beta(&v).unwrap())) <= 1e-5);
    }
}

#[test]
fn toeplitz_is_linear_and_hermitian() {
    let spec = orbit(2, &[2]);
    let space = SectionSpace::new(&spec, 2).unwrap();
    let rule = build_su2_quadrature(12).unwrap();
    let eta = space.spec.karabegov_shift.clone();
    let acc = accumulate(&space, std::slice::from_ref(&eta), &rule).unwrap();
    let f = OrbitFunction::moment(vec![1.0, 0.5, -0.25], eta.clone());
    let g = OrbitFunction::moment(vec![-0.3, 2.0, 0.7], eta.clone());
    let fg = OrbitFunction::moment(vec![1.0 * 2.0 - 0.3, 0.5 * 2.0 + 2.0, -0.5 + 0.7], eta.clone());
    let tf = acc.toeplitz_matrix(&f).unwrap();
    let tg = acc.toeplitz_matrix(&g).unwrap();
    assert!(frobenius(&(acc.toeplitz_matrix(&fg).unwrap() - (&tf * C64::new(2.0, 0.0) + &tg))) < 1e-12);
    assert!(hermitian_defect(&tf) < 1e-12);
    let one = toeplitz(&space, &OrbitFunction::constant(1.0, 3, 1), &rule).unwrap();
    assert!(frobenius(&(one.matrix - CMat::identity(5, 5))) < 1e-12);
    // A rational multiple of an accumulated η is served from the same channel.
    let half = OrbitFunction::moment(vec![1.0, 0.5, -0.25], eta.scale(crate::rootsys::Q::new(1, 2)));
    assert!(frobenius(&(acc.toeplitz_matrix(&half).unwrap() - &tf * C64::new(0.5, 0.0))) < 1e-13);
}

#[test]
fn tuynman_residual_on_the_sphere() {
    for k in 1..=3 {
        let spec = orbit(2, &[k]);
        let rule = build_su2_quadrature(2 * (k as usize + 2)).unwrap();
        let r = verify_tuynman(&spec, 1, &rule, 1e-8).unwrap();
        assert!(r.pass, "{}", r.max_residual);
        let space = SectionSpace::new(&spec, 1).unwrap();
        assert_eq!(tuynman_check(&space, &[0.0; 3], &rule).unwrap(), 0.0);
    }
}

#[test]
fn reduced_rule_agrees_with_the_full_rule() {
    let spec = orbit(2, &[3]);
    let full = verify_theorem(&spec, 2, &build_su2_quadrature(16).unwrap(), 1e-8, Shift::Karabegov).unwrap();
    let red = verify_theorem(&spec, 2, &build_su2_orbit_quadrature(16).unwrap(), 1e-8, Shift::Karabegov).unwrap();
    assert!(full.pass && red.pass);
}

#[test]
fn monte_carlo_theorem_on_projective_plane() {
    let spec = orbit(3, &[1, 0]);
    let rule = build_haar_mc(3, 40_000, 3).unwrap();
    let r = verify_theorem(&spec, 1, &rule, 5.0, Shift::Karabegov).unwrap();
    assert!(r.pass, "{r:?}");
    assert!(r.records.iter().all(|d| d.standard_error.unwrap() > 0.0));
    let s = verify_schur(&spec, 1, &rule, 5.0).unwrap();
    assert!(s.pass, "{s:?}");
}

#[test]
fn laplacian_check_report() {
    let r = verify_laplacian(&orbit(3, &[2, 0]), 1e-12).unwrap();
    assert!(r.pass);
    assert_eq!(r.dim, 8);
}

#[test]
fn rule_spec_builds() {
    let r = RuleSpec::Su2Euler { order: None, reduced: false }.build(2, 3).unwrap();
    assert_eq!(r.kind, RuleKind::Su2Euler { order: 10, reduced: false });
    assert!(RuleSpec::Su2Euler { order: None, reduced: false }.build(3, 3).is_err());
    assert!(RuleSpec::HaarMc { samples: 10_000, seed: 1 }.build(3, 0).unwrap().is_monte_carlo());
}
