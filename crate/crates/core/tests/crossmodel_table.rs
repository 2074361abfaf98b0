use crossgeo::crossmodel::{
    center_of_h, table1_checks, verify_bracket_laws, CrossModel, SpaceFamily, SpaceId,
};
use crossgeo::ToleranceConfig;

fn all_table_spaces() -> Vec<SpaceId> {
    let mut v = Vec::new();
    for n in 2..=6 {
        v.push(SpaceId::sphere(n).unwrap());
        v.push(SpaceId::real_projective(n).unwrap());
    }
    for n in 2..=4 {
        v.push(SpaceId::complex_projective(n).unwrap());
    }
    for n in 1..=3 {
        v.push(SpaceId::quaternionic_projective(n).unwrap());
    }
    v.push(SpaceId::cayley_plane());
    v
}

#[test]
fn table_one_reproduced() {
    let tol = ToleranceConfig::default();
    for s in all_table_spaces() {
        let m = CrossModel::build(s, &tol).unwrap();
        for c in table1_checks(&m) {
            assert!(c.passed, "{s}: {c:?}");
        }
        for c in m.verify_frame(&tol) {
            assert!(c.passed, "{s}: {c:?}");
        }
        for c in m.pair.verify(&tol) {
            assert!(c.passed, "{s}: {c:?}");
        }
    }
}

#[test]
fn bracket_laws_all_families() {
    let tol = ToleranceConfig::default();
    for s in [
        SpaceId::sphere(5).unwrap(),
        SpaceId::complex_projective(3).unwrap(),
        SpaceId::quaternionic_projective(1).unwrap(),
        SpaceId::quaternionic_projective(2).unwrap(),
        SpaceId::cayley_plane(),
    ] {
        let m = CrossModel::build(s, &tol).unwrap();
        for c in verify_bracket_laws(&m.frame, &tol) {
            assert!(c.passed, "{s}: {c:?}");
        }
    }
}

#[test]
fn spectrum_is_rank_one() {
    let tol = ToleranceConfig::default();
    for s in SpaceId::representatives() {
        let m = CrossModel::build(s, &tol).unwrap();
        for v in m.frame.spectrum_m.iter().chain(m.frame.spectrum_k.iter()) {
            let near = [0.0, 1.0, 0.25].iter().any(|c| (v - c).abs() < 1e-9);
            assert!(near, "{s}: eigenvalue {v}");
        }
        if matches!(s.family, SpaceFamily::Sphere | SpaceFamily::RealProjective) {
            assert!(m.frame.spectrum_m.iter().all(|v| (v - 0.25).abs() > 1e-3));
        }
    }
}

#[test]
fn cayley_dimensions() {
    let m = CrossModel::build(SpaceId::cayley_plane(), &ToleranceConfig::default()).unwrap();
    assert_eq!(m.pair.m_basis.len(), 16);
    assert_eq!(m.pair.k_basis.len(), 36);
    assert_eq!(m.frame.nbar, 31);
}

#[test]
fn centers_of_isotropy() {
    let tol = ToleranceConfig::default();
    for n in 2..=4 {
        let m = CrossModel::build(SpaceId::complex_projective(n).unwrap(), &tol).unwrap();
        assert_eq!(center_of_h(&m.frame, &tol).len(), 1, "CP^{n}");
    }
    let m = CrossModel::build(SpaceId::cayley_plane(), &tol).unwrap();
    assert_eq!(center_of_h(&m.frame, &tol).len(), 0);
    // h = sp(1) ⊕ sp(n−1) has no center: the sp(1) factor is an ideal, not abelian.
    for n in 2..=3 {
        let m = CrossModel::build(SpaceId::quaternionic_projective(n).unwrap(), &tol).unwrap();
        assert_eq!(center_of_h(&m.frame, &tol).len(), 0, "HP^{n}");
    }
    // HP¹: h = sp(1), still centerless.
    let m = CrossModel::build(SpaceId::quaternionic_projective(1).unwrap(), &tol).unwrap();
    assert_eq!(m.frame.h_dim, 3);
    assert_eq!(center_of_h(&m.frame, &tol).len(), 0);
}
