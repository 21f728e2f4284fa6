//! Congruence subgroup indices, the genus of `X_0(N)`, and Steinberg witnesses.
//!
//! Index conventions are those of matrix groups: `[SL_2(Z) : Gamma(m)]` is the
//! order of `SL_2(Z/mZ)` for every `m >= 1`, with no quotient by `-I`.

mod arith;
mod steinberg;

pub use arith::{factorize, is_prime_u64, kronecker_small, legendre, prime_factors_u64, primes_below, SpfSieve};
pub use steinberg::{steinberg_witness, steinberg_survey, SurveyReport, PrimeOutcome, SteinbergWitness, WitnessOutcome};

use serde::Serialize;
use thiserror::Error;

use crate::par::{self, Execution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModularError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("level must be positive")]
    ZeroLevel,
}

/// `|SL_2(Z/mZ)| = m^3 prod_{p | m} (1 - p^-2)`.
pub fn sl2_order(m: u64) -> u128 {
    let m128 = m as u128;
    prime_factors_u64(m).into_iter().fold(m128 * m128 * m128, |acc, p| {
        let p = p as u128;
        acc / (p * p) * (p * p - 1)
    })
}

/// `[SL_2(Z) : Gamma_0(n)] = n prod_{p | n} (1 + 1/p)`.
pub fn index_gamma0(n: u64) -> u128 {
    prime_factors_u64(n).into_iter().fold(n as u128, |acc, p| acc / p as u128 * (p as u128 + 1))
}

/// `[SL_2(Z) : Gamma(m)]`, equal to `|SL_2(Z/mZ)|` because reduction mod `m`
/// is onto.
pub fn index_gamma(m: u64) -> u128 {
    sl2_order(m)
}

/// A pair of levels for `Gamma_{m,n} = Gamma(m) ∩ Gamma_0(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LevelPair {
    pub m: u64,
    pub n: u64,
}

impl LevelPair {
    pub fn new(m: u64, n: u64) -> Result<Self, ModularError> {
        if m == 0 || n == 0 {
            return Err(ModularError::ZeroLevel);
        }
        Ok(LevelPair { m, n })
    }

    pub fn coprime(&self) -> bool {
        num_integer::gcd(self.m, self.n) == 1
    }

    /// `[SL_2(Z) : Gamma_{m,n}]`, computed prime by prime: at each prime
    /// power `q` exactly dividing `lcm(m, n)` the local index is
    /// `|SL_2(Z/q)|` divided by the number of matrices mod `q` that are the
    /// identity mod the `m`-part and lower-left zero mod the `n`-part. Each
    /// local count is a direct enumeration.
    pub fn index(&self) -> u128 {
        let l = num_integer::lcm(self.m, self.n);
        factorize(l)
            .into_iter()
            .map(|(p, e)| {
                let q = p.pow(e);
                let pm = p.pow(valuation(self.m, p));
                let pn = p.pow(valuation(self.n, p));
                local_count(q, 1, 1) / local_count(q, pm, pn)
            })
            .product()
    }
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Number of `(a, b, c, d)` mod `q` with `ad - bc = 1`, `(a, b, c, d) = I` mod
/// `pm`, and `c = 0` mod `pn` (`pm`, `pn` dividing `q`).
fn local_count(q: u64, pm: u64, pn: u64) -> u128 {
    let step_c = num_integer::lcm(pm, pn);
    let mut count: u128 = 0;
    for a in (1 % pm..q).step_by(pm as usize) {
        let g = num_integer::gcd(a, q);
        for b in (0..q).step_by(pm as usize) {
            for c in (0..q).step_by(step_c as usize) {
                // a d = 1 + b c (mod q), d = 1 (mod pm)
                let t = (1 + b * c) % q;
                if pm == 1 {
                    if t.is_multiple_of(g) {
                        count += g as u128;
                    }
                } else {
                    let d = t * inverse_mod(a, q) % q;
                    if d % pm == 1 % pm {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Inverse of a unit `a` modulo `q`.
fn inverse_mod(a: u64, q: u64) -> u64 {
    let e = num_integer::Integer::extended_gcd(&(a as i64), &(q as i64));
    e.x.rem_euclid(q as i64) as u64
}

/// Genus of `X_0(N)` with the data of the classical formula
/// `g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct X0Genus {
    pub n: u64,
    pub genus: i64,
    pub mu: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub nu_inf: u64,
}

impl X0Genus {
    /// `12 (g - 1) + 3 nu2 + 4 nu3 + 6 nu_inf - mu`, zero when the data are consistent.
    pub fn defect(&self) -> i64 {
        12 * (self.genus - 1) + 3 * self.nu2 as i64 + 4 * self.nu3 as i64 + 6 * self.nu_inf as i64 - self.mu as i64
    }
}

fn x0_from_factors(n: u64, factors: &[(u64, u32)]) -> X0Genus {
    let mut mu: u64 = n;
    let mut nu2: u64 = 1;
    let mut nu3: u64 = 1;
    let mut nu_inf: u64 = 1;
    for &(p, e) in factors {
        mu = mu / p * (p + 1);
        nu2 *= if p == 2 {
            if e >= 2 {
                0
            } else {
                1
            }
        } else {
            (1 + legendre(p - 1, p)) as u64
        };
        nu3 *= if p == 3 {
            if e >= 2 {
                0
            } else {
                1
            }
        } else {
            (1 + kronecker_small(-3, p)) as u64
        };
        nu_inf *= (0..=e).map(|k| {
            let m = k.min(e - k);
            if m == 0 {
                1
            } else {
                p.pow(m - 1) * (p - 1)
            }
        }).sum::<u64>();
    }
    let twelve_g = 12 + mu as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * nu_inf as i64;
    debug_assert_eq!(twelve_g % 12, 0);
    X0Genus { n, genus: twelve_g.div_euclid(12), mu, nu2, nu3, nu_inf }
}

pub fn x0_genus(n: u64) -> Result<X0Genus, ModularError> {
    if n == 0 {
        return Err(ModularError::ZeroLevel);
    }
    Ok(x0_from_factors(n, &factorize(n)))
}

/// `x0_genus` for every `N` in `1..=bound`, factoring with a sieve.
pub fn x0_genus_table(bound: u64, exec: Execution) -> Vec<X0Genus> {
    let sieve = SpfSieve::new(bound);
    par::map_indexed(exec, bound as usize, |i| {
        let n = i as u64 + 1;
        x0_from_factors(n, &sieve.factorize(n))
    })
}

/// All `N <= bound` with `X_0(N)` of genus zero.
pub fn genus_zero_levels(bound: u64) -> Vec<u64> {
    x0_genus_table(bound, Execution::default()).into_iter().filter(|x| x.genus == 0).map(|x| x.n).collect()
}

/// Dimension of the Steinberg representation of `SL_2(F_p)`:
/// `[SL_2(F_p) : P] - 1` with `P` the upper triangular subgroup of order `p(p-1)`.
pub fn steinberg_dim(p: u64) -> Result<u64, ModularError> {
    if !is_prime_u64(p) {
        return Err(ModularError::NotPrime(p));
    }
    let borel = (p as u128) * (p as u128 - 1);
    Ok((sl2_order(p) / borel - 1) as u64)
}
