//! Integer primitives: sieving, deterministic primality, 64-bit
//! factorization, modular arithmetic and primitive roots.
//!
//! Everything here is total over its stated domain and deterministic, so
//! results can be shared freely across worker threads.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default cap on sieve table entries (smallest-prime-factor array size).
pub const DEFAULT_SIEVE_CAP: u64 = 100_000_000;

/// Limit of the shared trial-division prime table used by `factorize`.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// `a * b mod n` with a widening multiply; no intermediate overflow.
pub fn mod_mul(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `a^e mod n` by binary exponentiation. `n = 1` yields 0; `e = 0` yields
/// `1 mod n`.
pub fn mod_pow(a: u64, mut e: u64, n: u64) -> u64 {
    debug_assert!(n >= 1);
    if n == 1 {
        return 0;
    }
    let mut base = a % n;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, base, n);
        }
        base = mod_mul(base, base, n);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
///
/// The seven-witness set below is known to classify every n < 2^64
/// correctly.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A positive integer with its full prime-power decomposition.
///
/// Invariants: factors are (prime, exponent) pairs with strictly increasing
/// primes, exponents >= 1, and the recomposed product equals `n` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// (prime, exponent) pairs in ascending prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Euler's totient of `n`.
    pub fn phi(&self) -> u64 {
        let mut phi = 1u64;
        for &(p, e) in &self.factors {
            phi *= p.pow(e - 1) * (p - 1);
        }
        phi
    }

    /// Largest squarefree divisor of `n`.
    pub fn radical(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// All positive divisors of `n`, in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let prev_len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..prev_len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    pub fn recompose(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
            .max(1)
    }
}

/// Primes up to a limit plus (when in cap) a smallest-prime-factor array
/// for O(log n) factorization of any n <= limit.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    spf: Vec<u32>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn count(&self) -> usize {
        self.primes.len()
    }

    /// Smallest prime factor of `n`, for 2 <= n <= limit.
    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        debug_assert!(2 <= n && n <= self.limit);
        self.spf[n as usize] as u64
    }

    /// Factorize `n <= limit` by repeated smallest-prime-factor division.
    pub fn factorize(&self, n: u64) -> Factorization {
        debug_assert!(1 <= n && n <= self.limit);
        let mut factors = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        Factorization { n, factors }
    }
}

/// Sieve all primes up to `x` with the default table cap.
pub fn sieve_primes(x: u64) -> Result<PrimeTable> {
    sieve_primes_with_cap(x, DEFAULT_SIEVE_CAP)
}

/// Sieve all primes up to `x`; errors when the table would exceed `cap`
/// entries.
pub fn sieve_primes_with_cap(x: u64, cap: u64) -> Result<PrimeTable> {
    if x < 2 {
        return Err(Error::domain(format!("sieve limit must be >= 2, got {x}")));
    }
    if x > cap {
        return Err(Error::capacity(format!(
            "sieve limit {x} exceeds configured cap {cap}"
        )));
    }
    let n = x as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u64);
        }
        // Linear sieve: each composite is crossed off exactly once, by its
        // smallest prime factor.
        for &p in &primes {
            let ip = i as u64 * p;
            if ip > x || p > spf[i] as u64 {
                break;
            }
            spf[ip as usize] = p as u32;
        }
    }
    Ok(PrimeTable {
        limit: x,
        primes,
        spf,
    })
}

fn trial_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        sieve_primes(TRIAL_DIVISION_LIMIT)
            .expect("trial division sieve fits default cap")
            .primes
    })
}

/// Pollard rho (Floyd cycle detection) for an odd composite with no prime
/// factor below the trial-division limit. Deterministic: the polynomial
/// increment steps through c = 1, 2, 3, ... until a split is found.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n & 1 == 1);
    for c in 1u64.. {
        let f = |x: u64| (mod_mul(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("rho split loop is infinite")
}

fn factor_recursive(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_recursive(d, out);
    factor_recursive(n / d, out);
}

/// Exact prime-power decomposition of any positive 64-bit integer.
///
/// Trial division by sieved primes up to 10^6 removes small factors; any
/// remaining cofactor is split by Pollard rho with deterministic
/// Miller-Rabin primality tests.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize is defined for positive integers");
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    for &p in trial_primes() {
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if m > 1 {
        let mut rest = Vec::new();
        factor_recursive(m, &mut rest);
        rest.sort_unstable();
        let mut i = 0;
        while i < rest.len() {
            let p = rest[i];
            let mut e = 0u32;
            while i < rest.len() && rest[i] == p {
                e += 1;
                i += 1;
            }
            factors.push((p, e));
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Factorization { n, factors }
}

/// Least primitive root modulo the prime `p`, given the factorization of
/// p-1. A candidate g qualifies when g^((p-1)/q) != 1 (mod p) for every
/// prime q | p-1.
pub fn primitive_root(p: u64, fact_pm1: &Factorization) -> u64 {
    debug_assert!(is_prime(p));
    debug_assert_eq!(fact_pm1.n(), p - 1);
    if p == 2 {
        return 1;
    }
    'candidate: for g in 2..p {
        for q in fact_pm1.primes() {
            if mod_pow(g, (p - 1) / q, p) == 1 {
                continue 'candidate;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}
