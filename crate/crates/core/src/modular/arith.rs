/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_factors_u64(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime_u64(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut r: u128 = 1 % m;
    let mut b128 = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m;
        }
        b128 = b128 * b128 % m;
        e >>= 1;
    }
    r as u64
}

/// Legendre symbol `(a | p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre(a: u64, p: u64) -> i64 {
    debug_assert!(p > 2);
    match pow_mod(a % p, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Kronecker symbol `(a | p)` for a prime `p`.
pub fn kronecker_small(a: i64, p: u64) -> i64 {
    if p == 2 {
        return match a.rem_euclid(8) {
            0 | 2 | 4 | 6 => 0,
            1 | 7 => 1,
            _ => -1,
        };
    }
    legendre(a.rem_euclid(p as i64) as u64, p)
}

/// Primes `p < bound`.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Smallest-prime-factor sieve for fast factorization of `1..=bound`.
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(bound: u64) -> Self {
        let n = bound as usize + 1;
        let mut spf = vec![0u32; n.max(2)];
        for i in 2..n {
            if spf[i] == 0 {
                let mut j = i;
                while j < n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SpfSieve { spf }
    }

    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            n /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}
