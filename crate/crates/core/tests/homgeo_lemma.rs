use crossgeo::crossmodel::{Block, CrossModel, RestrictedFrame, SpaceId};
use crossgeo::homgeo::{
    is_killing, levi_civita_alpha, log_uniform_params, metric_from_params, u_closed_form, u_map, InvariantMetric,
    MetricParams,
};
use crossgeo::{ToleranceConfig, Vector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn frame(s: SpaceId) -> RestrictedFrame {
    CrossModel::build(s, &ToleranceConfig::default()).unwrap().frame
}

fn e(f: &RestrictedFrame, i: usize) -> Vector {
    f.unit(i).rows(0, f.nbar).into_owned()
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    Vector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
}

#[test]
fn closed_forms_match_linear_solve() {
    for s in [SpaceId::complex_projective(3).unwrap(), SpaceId::quaternionic_projective(2).unwrap()] {
        let f = frame(s);
        let n = f.nbar;
        let mut tabulated = 0;
        for p in log_uniform_params(11, 60) {
            let g = metric_from_params(&f, p).unwrap();
            for i in 0..n {
                for j in 0..n {
                    if let Some(c) = u_closed_form(&f, &p, i, j) {
                        let u = u_map(&f, &g, &e(&f, i), &e(&f, j)).unwrap();
                        let err = (&u - &c).amax();
                        assert!(err < 1e-9, "{s} {p:?} ({i},{j}): {err:e}");
                        tabulated += 1;
                    }
                }
            }
        }
        assert!(tabulated > 60 * n);
    }
}

// The X-coefficients of 𝔘(ξ_ε, ζ_ε) and 𝔘(ξ_½, ζ_½) carry g(X,X) = a², not a.
#[test]
fn axis_coefficients_scale_with_a_squared() {
    let f = frame(SpaceId::complex_projective(2).unwrap());
    let (xe, ze) = (f.xi_eps_index(0), f.zeta_eps_index(0));
    let (xh, zh) = (f.xi_half_index(0), f.zeta_half_index(0));
    for a in [0.3, 1.0, 2.5] {
        let p = MetricParams::new(a, 1.7, 0.6, 0.9, 2.2).unwrap();
        let g = metric_from_params(&f, p).unwrap();
        let u = u_map(&f, &g, &e(&f, xe), &e(&f, ze)).unwrap();
        assert!((u[0] - (p.a_eps - p.b_eps) / (2.0 * a * a)).abs() < 1e-12);
        let u = u_map(&f, &g, &e(&f, xh), &e(&f, zh)).unwrap();
        assert!((u[0] - (p.a_half - p.b_half) / (4.0 * a * a)).abs() < 1e-12);
    }
}

#[test]
fn u_is_symmetric_and_satisfies_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for s in SpaceId::representatives() {
        let f = frame(s);
        for p in log_uniform_params(5, 10) {
            let g = metric_from_params(&f, p).unwrap();
            for _ in 0..5 {
                let (u, v, w) = (random_vec(&mut rng, f.nbar), random_vec(&mut rng, f.nbar), random_vec(&mut rng, f.nbar));
                let uv = u_map(&f, &g, &u, &v).unwrap();
                let vu = u_map(&f, &g, &v, &u).unwrap();
                assert!((&uv - &vu).amax() < 1e-10, "{s}");
                // 2g(𝔘(u,v),w) + g([u,w]_m̄, v) + g([v,w]_m̄, u) = 0
                let lhs = 2.0 * g.inner(&uv, &w) + g.inner(&f.bracket_mbar(&u, &w), &v) + g.inner(&f.bracket_mbar(&v, &w), &u);
                assert!(lhs.abs() < 1e-10, "{s}: {lhs:e}");
            }
        }
    }
}

#[test]
fn levi_civita_is_metric_and_torsion_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let f = frame(SpaceId::quaternionic_projective(2).unwrap());
    let p = MetricParams::new(0.8, 1.9, 0.3, 2.4, 0.7).unwrap();
    let g = metric_from_params(&f, p).unwrap();
    for _ in 0..10 {
        let (u, v, w) = (random_vec(&mut rng, f.nbar), random_vec(&mut rng, f.nbar), random_vec(&mut rng, f.nbar));
        let auv = levi_civita_alpha(&f, &g, &u, &v).unwrap();
        let avu = levi_civita_alpha(&f, &g, &v, &u).unwrap();
        assert!((&auv - &avu - f.bracket_mbar(&u, &v)).amax() < 1e-10);
        // α(w, ·) is g-skew.
        let awu = levi_civita_alpha(&f, &g, &w, &u).unwrap();
        let awv = levi_civita_alpha(&f, &g, &w, &v).unwrap();
        let skew = g.inner(&awu, &v) + g.inner(&u, &awv);
        assert!(skew.abs() < 1e-10, "{skew:e}");
    }
}

fn killing_of_x(f: &RestrictedFrame, g: &InvariantMetric) -> bool {
    is_killing(f, g, &e(f, 0), &ToleranceConfig::default()).0
}

#[test]
fn x_killing_iff_a_equals_b() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for s in SpaceId::representatives() {
        let f = frame(s);
        let half = f.m_half > 0;
        for (k, mut p) in log_uniform_params(29, 60).into_iter().enumerate() {
            // A third of the samples are forced onto the Killing locus, a third
            // onto it in the ε block only.
            match k % 3 {
                0 => {
                    p.b_eps = p.a_eps;
                    p.b_half = p.a_half;
                }
                1 => p.b_eps = p.a_eps,
                _ => {}
            }
            if rng.random_bool(0.1) {
                p.b_half = p.a_half;
            }
            let expected = p.a_eps == p.b_eps && (!half || p.a_half == p.b_half);
            let g = metric_from_params(&f, p).unwrap();
            assert_eq!(killing_of_x(&f, &g), expected, "{s} {p:?}");
        }
    }
}

#[test]
fn block_weights() {
    let f = frame(SpaceId::cayley_plane());
    let p = MetricParams::new(2.0, 3.0, 5.0, 7.0, 11.0).unwrap();
    let g = metric_from_params(&f, p).unwrap();
    for (b, w) in [(Block::A, 4.0), (Block::MEps, 3.0), (Block::MHalf, 5.0), (Block::KEps, 7.0), (Block::KHalf, 11.0)] {
        for i in f.block(b) {
            assert_eq!(g.weight(i), w);
        }
    }
    assert_eq!((&g.gram - g.gram.transpose()).amax(), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn u_map_bilinear(seed in any::<u64>(), s in 0.1f64..5.0) {
        let f = frame(SpaceId::complex_projective(2).unwrap());
        let p = log_uniform_params(seed, 1)[0];
        let g = metric_from_params(&f, p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = (random_vec(&mut rng, f.nbar), random_vec(&mut rng, f.nbar), random_vec(&mut rng, f.nbar));
        let lhs = u_map(&f, &g, &(&u * s + &w), &v).unwrap();
        let rhs = u_map(&f, &g, &u, &v).unwrap() * s + u_map(&f, &g, &w, &v).unwrap();
        prop_assert!((lhs - rhs).amax() < 1e-9);
    }

    #[test]
    fn unit_multiple_is_naturally_reductive(c in 0.1f64..10.0) {
        let f = frame(SpaceId::sphere(4).unwrap());
        let p = MetricParams::new(c.sqrt(), c, c, c, c).unwrap();
        let g = metric_from_params(&f, p).unwrap();
        prop_assert!(crossgeo::homgeo::is_naturally_reductive(&f, &g, &ToleranceConfig::default()));
    }
}
