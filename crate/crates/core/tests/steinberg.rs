use mwgenus::cremona::{parse_allcurves_str, ConductorStatus};
use mwgenus::data::load_bundle;
use mwgenus::modular::{genus_zero_levels, primes_below, steinberg_witness, steinberg_survey, x0_genus, WitnessOutcome};
use mwgenus::Execution;

#[test]
fn every_prime_below_1000_has_a_witness() {
    let db = load_bundle("cremona-25000").unwrap().curves().unwrap().clone();
    let report = steinberg_survey(1000, &db, Execution::Parallel);
    assert_eq!(report.primes, 168);
    assert_eq!(report.witnesses, 168);
    assert!(report.pass && report.absent.is_empty() && report.insufficient_data.is_empty());
    let levels = genus_zero_levels(1000);
    for (r, p) in report.results.iter().zip(primes_below(1000)) {
        assert_eq!(r.p, p);
        let w = r.outcome.witness().unwrap();
        assert!(!(w.n % p == 0));
        assert!(levels.contains(&w.n));
        assert_eq!(x0_genus(w.n).unwrap().genus, 0);
        assert_eq!(w.certificate, x0_genus(w.n).unwrap());
        assert_eq!(w.conductor, p * w.n);
        assert_eq!(w.curve.conductor, w.conductor);
        assert!(matches!(db.has_conductor(w.conductor), ConductorStatus::Present(_)));
        // No smaller admissible level has a curve.
        for &n in levels.iter().filter(|&&n| n < w.n && n % p != 0) {
            assert_eq!(db.has_conductor(p * n), ConductorStatus::AbsentInCoverage, "p = {p}, N = {n}");
        }
    }
    assert_eq!(steinberg_survey(1000, &db, Execution::Sequential), report);
}

#[test]
fn named_primes() {
    let db = load_bundle("cremona-25000").unwrap().curves().unwrap().clone();
    let n = |p| steinberg_witness(p, &db).unwrap().witness().unwrap().n;
    assert_eq!(n(37), 1);
    assert_eq!(n(13), 2);
    assert_eq!(n(11), 1);
    assert_eq!(n(2), 7);
    assert!(steinberg_witness(15, &db).is_err());
    assert!(steinberg_survey(100, &db, Execution::Parallel).pass);
}

#[test]
fn thin_data_is_insufficient_not_absent() {
    let db = parse_allcurves_str("11 a 1 0 -1 1 -10 -20 0 5\n").unwrap();
    let report = steinberg_survey(3, &db, Execution::Parallel);
    assert!(!report.pass);
    assert_eq!(report.insufficient_data, vec![2]);
    assert!(matches!(steinberg_witness(2, &db).unwrap(), WitnessOutcome::InsufficientData { .. }));
    let declared = parse_allcurves_str("# coverage: 1 100\n11 a 1 0 -1 1 -10 -20 0 5\n").unwrap();
    assert_eq!(steinberg_witness(2, &declared).unwrap(), WitnessOutcome::Absent);
}
