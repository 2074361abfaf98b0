use crossgeo::contact::{
    axiom_residual, classify, nijenhuis, phi_q_structure, rectified_structure, standard_structure, tashiro_suite,
    theorem_main_structure, uniqueness_scan, AlmostContactStructure, PhiQMode, StructureClass,
};
use crossgeo::crossmodel::{CrossModel, RestrictedFrame, SpaceId};
use crossgeo::homgeo::{log_uniform_params, MetricParams};
use crossgeo::{Matrix, ToleranceConfig, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn frame(s: SpaceId) -> RestrictedFrame {
    CrossModel::build(s, &ToleranceConfig::default()).unwrap().frame
}

fn frames() -> Vec<RestrictedFrame> {
    SpaceId::representatives().into_iter().map(frame).collect()
}

fn monotone(c: &StructureClass) -> bool {
    (!c.flags.sasakian || c.flags.k_contact) && (!c.flags.k_contact || c.flags.contact_metric)
}

#[test]
fn axioms_hold_on_constructed_structures() {
    for f in frames() {
        for r in [0.25, 0.5, 1.0, 2.0] {
            let list = [
                standard_structure(&f, r).unwrap(),
                rectified_structure(&f, r).unwrap(),
                theorem_main_structure(&f, r, 3.0).unwrap(),
                phi_q_structure(&f, r, 0.3 * r, 1.7, MetricParams::new(0.8, 1.2, 0.6, 1.0, 1.0).unwrap(), PhiQMode::Induced)
                    .unwrap(),
            ];
            for s in &list {
                assert!(axiom_residual(s) < 1e-9, "{}: {}", f.space, axiom_residual(s));
            }
        }
    }
}

#[test]
fn sasakian_checks_agree_and_flags_are_monotone() {
    let tol = ToleranceConfig::default();
    for f in frames() {
        for r in [0.5, 1.0, 2.0] {
            for kappa in [0.5, 1.0, 3.0] {
                let c = classify(&theorem_main_structure(&f, r, kappa).unwrap(), &f, &tol);
                assert!(c.flags.sasakian && c.checks_agree(), "{} r={r} κ={kappa}: {c:?}", f.space);
                assert!(c.residuals.nijenhuis < 1e-8 && c.residuals.nabla_phi < 1e-8);
                assert!(monotone(&c));
            }
            for s in [standard_structure(&f, r).unwrap(), rectified_structure(&f, r).unwrap()] {
                let c = classify(&s, &f, &tol);
                assert!(c.checks_agree(), "{} r={r}: {c:?}", f.space);
                assert!(monotone(&c));
            }
        }
    }
}

// Structures off the Sasakian locus: both tests must reject them together.
#[test]
fn sasakian_checks_agree_on_random_structures() {
    let tol = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for f in frames() {
        for p in log_uniform_params(43, 12) {
            let (qe, qh) = (10f64.powf(rng.random_range(-0.5..0.5)), 10f64.powf(rng.random_range(-0.5..0.5)));
            let s = phi_q_structure(&f, 1.0, qe, qh, p, PhiQMode::Induced).unwrap();
            let c = classify(&s, &f, &tol);
            assert!(c.checks_agree(), "{} {p:?}: {c:?}", f.space);
            assert!(monotone(&c));
        }
    }
}

#[test]
fn theorem_classification_independent_of_radius() {
    let tol = ToleranceConfig::default();
    for f in frames() {
        let flags: Vec<_> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&r| classify(&theorem_main_structure(&f, r, 1.0).unwrap(), &f, &tol).flags)
            .collect();
        assert!(flags.windows(2).all(|w| w[0] == w[1]));
    }
}

// Contact ⇔ a_λ = a·λ_ℝ(r)/(2r·q_λ), with λ_ℝ(r)/(2r) = 1/2 for ε and 1/4 for ε/2.
#[test]
fn contact_criterion_both_directions() {
    let tol = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for f in frames() {
        let half = f.m_half > 0;
        let mut hits = 0;
        for (k, mut p) in log_uniform_params(103, 40).into_iter().enumerate() {
            let r = 10f64.powf(rng.random_range(-1.0..1.0));
            let (qe, qh) = (10f64.powf(rng.random_range(-1.0..1.0)), 10f64.powf(rng.random_range(-1.0..1.0)));
            if k % 2 == 0 {
                p.a_eps = p.a / (2.0 * qe);
                p.a_half = p.a / (4.0 * qh);
            } else if k % 4 == 1 {
                p.a_eps = p.a / (2.0 * qe);
            }
            let s = phi_q_structure(&f, r, qe, qh, p, PhiQMode::Induced).unwrap();
            let rel = |x: f64, y: f64| (x - y).abs() <= 1e-9 * y.abs().max(1.0);
            let expected = rel(p.a_eps, p.a / (2.0 * qe)) && (!half || rel(p.a_half, p.a / (4.0 * qh)));
            let c = classify(&s, &f, &tol);
            assert_eq!(c.flags.contact_metric, expected, "{} {p:?} q=({qe},{qh})", f.space);
            if expected {
                hits += 1;
            }
        }
        assert!(hits >= 20);
    }
}

#[test]
fn k_contact_iff_q_is_one() {
    let tol = ToleranceConfig::default();
    for f in frames() {
        let half = f.m_half > 0;
        for (qe, qh) in [(1.0, 1.0), (1.0, 2.0), (0.5, 1.0), (3.0, 0.2)] {
            let a = 1.3;
            let p = MetricParams::new(a, a / (2.0 * qe), a / (4.0 * qh), 1.0, 1.0).unwrap();
            let s = phi_q_structure(&f, 0.8, qe, qh, p, PhiQMode::Induced).unwrap();
            let c = classify(&s, &f, &tol);
            assert!(c.flags.contact_metric);
            let expected = qe == 1.0 && (!half || qh == 1.0);
            assert_eq!(c.flags.k_contact, expected, "{} q=({qe},{qh})", f.space);
        }
    }
}

#[test]
fn uniqueness_scans() {
    let tol = ToleranceConfig::default();
    for s in [SpaceId::complex_projective(2).unwrap(), SpaceId::quaternionic_projective(1).unwrap(), SpaceId::sphere(3).unwrap()]
    {
        let f = frame(s);
        for kappa in [0.5, 1.0] {
            let scan = uniqueness_scan(&f, 1.0, kappa, 5, &tol).unwrap();
            let expected = if f.m_half > 0 { 625 } else { 25 };
            assert_eq!(scan.points.len(), expected);
            assert!(scan.unique(), "{s} κ={kappa}");
            assert!(scan.min_failing_residual() > 1e-3);
        }
    }
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    Vector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
}

// φ² = −I + η⊗char turns the full definition into the origin formula
// −[u,v] + [φu,φv] − φ[φu,v] − φ[u,φv].
#[test]
fn nijenhuis_origin_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for f in frames() {
        let structures: Vec<AlmostContactStructure> =
            vec![standard_structure(&f, 0.7).unwrap(), theorem_main_structure(&f, 1.0, 2.0).unwrap(), rectified_structure(&f, 3.0).unwrap()];
        for s in &structures {
            for _ in 0..5 {
                let (u, v) = (random_vec(&mut rng, f.nbar), random_vec(&mut rng, f.nbar));
                let p = |w: &Vector| &s.phi * w;
                let b = |x: &Vector, y: &Vector| f.bracket_mbar(x, y);
                let origin = -b(&u, &v) + b(&p(&u), &p(&v)) - p(&b(&p(&u), &v)) - p(&b(&u, &p(&v)));
                let n = nijenhuis(&f, s, &u, &v);
                assert!((&n - &origin).amax() < 1e-10);
                assert!((n + nijenhuis(&f, s, &v, &u)).amax() < 1e-12);
                assert!(nijenhuis(&f, s, &u, &u).amax() < 1e-12);
            }
        }
    }
}

#[test]
fn theorem_nijenhuis_vanishes_on_axis() {
    for f in frames() {
        let s = theorem_main_structure(&f, 2.0, 0.5).unwrap();
        let x = f.unit(0).rows(0, f.nbar).into_owned();
        for i in 0..f.nbar {
            let e = f.unit(i).rows(0, f.nbar).into_owned();
            assert!(nijenhuis(&f, &s, &x, &e).amax() < 1e-12);
        }
    }
}

#[test]
fn tashiro_suite_passes() {
    let tol = ToleranceConfig::default();
    for f in frames() {
        for c in tashiro_suite(&f, &[0.25, 0.5, 1.0, 2.0], &tol).unwrap() {
            assert!(c.passed, "{}: {c:?}", f.space);
        }
    }
    let f = frame(SpaceId::sphere(3).unwrap());
    let c = classify(&rectified_structure(&f, 1.0).unwrap(), &f, &tol);
    assert!(c.flags.sasakian);
}

#[test]
fn sphere_theorem_metric_is_quarter_sasaki() {
    for n in [2, 3, 5] {
        let f = frame(SpaceId::sphere(n).unwrap());
        let th = theorem_main_structure(&f, 1.0, 0.5).unwrap();
        let st = standard_structure(&f, 1.0).unwrap();
        assert!((&th.metric.gram - &st.metric.gram * 0.25).amax() < 1e-12);
    }
}

#[test]
fn theorem_params_instantiated() {
    let f = frame(SpaceId::complex_projective(3).unwrap());
    let s = theorem_main_structure(&f, 2.0, 3.0).unwrap();
    assert_eq!(s.params().as_array(), [3.0, 1.5, 0.75, 1.5, 0.75]);
    assert_eq!((s.q_eps, s.q_half), (1.0, 1.0));
    let mut char = Vector::zeros(f.nbar);
    char[0] = 1.0 / 3.0;
    assert_eq!(s.char, char);
    // The contact condition a_λ = κλ_ℝ(r)/(2r) holds at every radius.
    for r in [0.3, 1.0, 4.0] {
        let s = theorem_main_structure(&f, r, 3.0).unwrap();
        assert!(classify(&s, &f, &ToleranceConfig::default()).flags.contact_metric);
    }
}

#[test]
fn phi_q_one_swaps_xi_and_zeta() {
    let f = frame(SpaceId::quaternionic_projective(2).unwrap());
    let s = phi_q_structure(&f, 1.0, 1.0, 1.0, MetricParams::unit(), PhiQMode::Given).unwrap();
    let t = theorem_main_structure(&f, 1.0, 1.0).unwrap();
    assert_eq!(s.phi, t.phi);
    let sq = &s.phi * &s.phi;
    let mut expected = -Matrix::identity(f.nbar, f.nbar);
    expected[(0, 0)] = 0.0;
    assert_eq!(sq, expected);
    let st = standard_structure(&f, 0.9).unwrap();
    let q = phi_q_structure(&f, 0.9, 0.9, 0.45, MetricParams::standard(0.9).unwrap(), PhiQMode::Given).unwrap();
    assert_eq!(st.phi, q.phi);
}
