use crossgeo::crossmodel::{SpaceFamily, SpaceId};
use crossgeo::report::VerificationReport;
use crossgeo::suites::{run, RunConfig, Suite};
use proptest::prelude::*;

fn report_with_threads(config: &RunConfig, threads: usize) -> VerificationReport {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| run(config).unwrap())
}

#[test]
fn reports_independent_of_thread_count() {
    let mut c = RunConfig::new(SpaceId::complex_projective(2).unwrap(), Suite::All);
    c.radius = 0.5;
    let a = report_with_threads(&c, 1);
    let b = report_with_threads(&c, 4);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.all_passed());
}

#[test]
fn all_is_the_concatenation_of_suites() {
    let space = SpaceId::sphere(4).unwrap();
    let all = run(&RunConfig::new(space, Suite::All)).unwrap();
    let parts: Vec<String> = Suite::EACH
        .iter()
        .flat_map(|&s| run(&RunConfig::new(space, s)).unwrap().checks.into_iter().map(|c| c.name))
        .collect();
    let names: Vec<String> = all.checks.into_iter().map(|c| c.name).collect();
    assert_eq!(names, parts);
}

#[test]
fn invalid_configs_rejected() {
    let ok = RunConfig::new(SpaceId::cayley_plane(), Suite::Table1);
    for bad in [
        RunConfig { radius: 0.0, ..ok.clone() },
        RunConfig { kappa: -1.0, ..ok.clone() },
        RunConfig { tol: f64::NAN, ..ok.clone() },
        RunConfig { grid: 2, ..ok.clone() },
        RunConfig { space: SpaceId { family: SpaceFamily::ComplexProjective, n: 1 }, ..ok.clone() },
    ] {
        assert!(run(&bad).is_err(), "{bad:?}");
    }
    assert!("table1".parse::<Suite>().is_ok());
    assert!("TASHIRO".parse::<Suite>().is_ok());
    assert!("bogus".parse::<Suite>().is_err());
}

#[test]
fn sasakian_suite_fails_off_theorem_kappa_never() {
    for kappa in [0.25, 4.0] {
        let mut c = RunConfig::new(SpaceId::quaternionic_projective(2).unwrap(), Suite::Sasakian);
        c.kappa = kappa;
        c.radius = 3.0;
        assert!(run(&c).unwrap().all_passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn json_round_trip(r in 0.1f64..4.0, k in 0.1f64..4.0, fam in 0usize..5) {
        let space = SpaceId::representatives()[fam];
        let mut c = RunConfig::new(space, Suite::Metrics);
        c.radius = r;
        c.kappa = k;
        let rep = run(&c).unwrap();
        let text = serde_json::to_string(&rep).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, rep.clone());
        prop_assert_eq!(rep.summary.total, rep.summary.passed + rep.summary.failed);
        prop_assert!(rep.all_passed());
    }
}
