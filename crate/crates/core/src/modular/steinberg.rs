use serde::Serialize;

use super::{genus_zero_levels, is_prime_u64, primes_below, x0_genus, ModularError, X0Genus};
use crate::cremona::{ConductorStatus, CurveDatabase, EllipticCurveRecord};
use crate::par::{self, Execution};

/// Search bound for genus-zero levels; every one of them is at most 25.
const GENUS_ZERO_SEARCH: u64 = 100;

/// A curve of conductor `pN` with `gcd(N, p) = 1` and `X_0(N)` of genus zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinbergWitness {
    pub p: u64,
    pub n: u64,
    pub conductor: u64,
    pub curve: EllipticCurveRecord,
    pub certificate: X0Genus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum WitnessOutcome {
    Found(SteinbergWitness),
    /// Every candidate conductor is covered and none has a curve.
    Absent,
    /// No witness among covered conductors; these conductors are not covered.
    InsufficientData { uncovered: Vec<u64> },
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&SteinbergWitness> {
        match self {
            WitnessOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Scans genus-zero levels `N` coprime to `p` in increasing order and returns
/// the first with a curve of conductor `pN` in `db`. Uncovered conductors are
/// skipped, so the witness is the smallest among covered ones.
pub fn steinberg_witness(p: u64, db: &CurveDatabase) -> Result<WitnessOutcome, ModularError> {
    if !is_prime_u64(p) {
        return Err(ModularError::NotPrime(p));
    }
    let mut uncovered = Vec::new();
    for n in genus_zero_levels(GENUS_ZERO_SEARCH) {
        if n % p == 0 {
            continue;
        }
        let conductor = p * n;
        match db.has_conductor(conductor) {
            ConductorStatus::Present(_) => {
                let curve = db.lookup(conductor)[0].clone();
                let certificate = x0_genus(n)?;
                return Ok(WitnessOutcome::Found(SteinbergWitness { p, n, conductor, curve, certificate }));
            }
            ConductorStatus::AbsentInCoverage => {}
            ConductorStatus::OutsideCoverage => uncovered.push(conductor),
        }
    }
    Ok(if uncovered.is_empty() { WitnessOutcome::Absent } else { WitnessOutcome::InsufficientData { uncovered } })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeOutcome {
    pub p: u64,
    pub outcome: WitnessOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub bound: u64,
    pub primes: usize,
    pub witnesses: usize,
    pub pass: bool,
    /// Primes with no witness although every candidate conductor is covered.
    pub absent: Vec<u64>,
    /// Primes whose outcome depends on uncovered conductors.
    pub insufficient_data: Vec<u64>,
    pub coverage: Option<(u64, u64)>,
    pub results: Vec<PrimeOutcome>,
}

/// Looks for a witness for every prime `p < bound`.
pub fn steinberg_survey(bound: u64, db: &CurveDatabase, exec: Execution) -> SurveyReport {
    let primes = primes_below(bound);
    let results = par::map_slice(exec, &primes, |&p| PrimeOutcome {
        p,
        outcome: steinberg_witness(p, db).expect("sieved primes are prime"),
    });
    let witnesses = results.iter().filter(|r| r.outcome.witness().is_some()).count();
    let absent = results.iter().filter(|r| r.outcome == WitnessOutcome::Absent).map(|r| r.p).collect();
    let insufficient_data =
        results.iter().filter(|r| matches!(r.outcome, WitnessOutcome::InsufficientData { .. })).map(|r| r.p).collect();
    SurveyReport {
        bound,
        primes: primes.len(),
        witnesses,
        pass: witnesses == primes.len(),
        absent,
        insufficient_data,
        coverage: db.coverage(),
        results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cremona::parse_allcurves_str;

    #[test]
    fn only_conductor_eleven() {
        let db = parse_allcurves_str("11 a 1 0 -1 1 -10 -20 0 5\n").unwrap();
        let r = steinberg_survey(3, &db, Execution::Sequential);
        assert!(!r.pass);
        assert_eq!(r.insufficient_data, vec![2]);
        let w = steinberg_witness(11, &db).unwrap();
        assert_eq!(w.witness().unwrap().n, 1);
    }
}
