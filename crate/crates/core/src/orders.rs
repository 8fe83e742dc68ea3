//! Multiplicative orders modulo primes, Carmichael's lambda function, the
//! primary cyclic decomposition of (Z/nZ)*, and lambda-primitive-root
//! counting.

use crate::arith::{self, gcd, is_prime, lcm, mod_mul, mod_pow, Factorization};
use crate::error::{Error, Result};

pub mod cache;

/// Least e >= 1 with a^e = 1 (mod p), for gcd(a, p) = 1.
///
/// Starts at p-1 and strips one prime factor at a time while the power
/// stays 1.
pub fn mult_order(a: u64, p: u64, fact_pm1: &Factorization) -> Result<u64> {
    debug_assert!(is_prime(p));
    debug_assert_eq!(fact_pm1.n(), p - 1);
    if a % p == 0 {
        return Err(Error::domain(format!(
            "order of {a} mod {p} undefined: {p} divides {a}"
        )));
    }
    let mut e = p - 1;
    for q in fact_pm1.primes() {
        while e % q == 0 && mod_pow(a, e / q, p) == 1 {
            e /= q;
        }
    }
    Ok(e)
}

/// Orders of every nonzero residue modulo a prime `p`.
///
/// Built in O(p) multiplications from a primitive root g: the residue g^k
/// has order (p-1)/gcd(k, p-1). Index 0 is unused.
#[derive(Debug, Clone)]
pub struct OrderTable {
    p: u64,
    ord: Vec<u32>,
}

impl OrderTable {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Order of the residue r, 1 <= r <= p-1.
    pub fn ord(&self, r: u64) -> u64 {
        debug_assert!(1 <= r && r < self.p);
        self.ord[r as usize] as u64
    }

    /// Raw table; entry r holds the order of r (entry 0 is 0).
    pub fn raw(&self) -> &[u32] {
        &self.ord
    }
}

pub fn order_table(p: u64) -> OrderTable {
    debug_assert!(is_prime(p));
    let m = p - 1;
    let fact = arith::factorize(m);
    let g = arith::primitive_root(p, &fact);
    let mut ord = vec![0u32; p as usize];
    let mut r = 1u64;
    ord[1] = 1;
    for k in 1..m {
        r = mod_mul(r, g, p);
        ord[r as usize] = (m / gcd(k, m)) as u32;
    }
    OrderTable { p, ord }
}

/// Carmichael's lambda of a prime power: phi(p^e) for odd p, and 1, 2,
/// 2^(e-2) for 2, 4, 2^e (e >= 3).
fn lambda_prime_power(p: u64, e: u32) -> u64 {
    if p == 2 {
        match e {
            1 => 1,
            2 => 2,
            _ => 1u64 << (e - 2),
        }
    } else {
        p.pow(e - 1) * (p - 1)
    }
}

/// Carmichael's lambda function: the exponent of the group (Z/nZ)*.
pub fn carmichael_lambda(fact: &Factorization) -> u64 {
    fact.factors()
        .iter()
        .fold(1u64, |acc, &(p, e)| lcm(acc, lambda_prime_power(p, e)))
}

/// lambda(n) for every n <= x; entry 0 is unused, entry 1 is 1.
pub fn lambda_sieve(x: u64) -> Result<Vec<u64>> {
    lambda_sieve_with_cap(x, arith::DEFAULT_SIEVE_CAP)
}

pub fn lambda_sieve_with_cap(x: u64, cap: u64) -> Result<Vec<u64>> {
    if x > cap {
        return Err(Error::capacity(format!(
            "lambda sieve limit {x} exceeds configured cap {cap}"
        )));
    }
    let table = arith::sieve_primes_with_cap(x.max(2), cap)?;
    let mut lam = vec![1u64; x as usize + 1];
    for n in 2..=x {
        let p = table.smallest_prime_factor(n);
        let mut m = n;
        let mut e = 0u32;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        lam[n as usize] = lcm(lambda_prime_power(p, e), lam[m as usize]);
    }
    Ok(lam)
}

/// One primary cyclic factor C_{q^v} of (Z/nZ)*, with a generator of that
/// exact order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimaryFactor {
    pub q: u64,
    pub v: u32,
    /// q^v.
    pub order: u64,
    /// Residue of order exactly q^v modulo n.
    pub generator: u64,
}

/// The primary cyclic decomposition of (Z/nZ)*.
///
/// The basis generators have pairwise coprime-power orders within each
/// prime q and their direct product is the whole unit group: the product
/// of the factor orders is phi(n) and their lcm is lambda(n).
#[derive(Debug, Clone)]
pub struct UnitGroupStructure {
    n: u64,
    phi: u64,
    lambda: u64,
    factors: Vec<PrimaryFactor>,
    /// Coarse decomposition before the prime-power split: one cyclic factor
    /// per odd prime-power component (plus the <-1> x <5> pair at 2^e).
    cyclic: Vec<(u64, u64)>,
    lambda_fact: Factorization,
    phi_fact: Factorization,
}

/// CRT lift: the residue mod n that is g mod m and 1 mod n/m (gcd(m, n/m) = 1).
fn crt_lift_generator(g: u64, m: u64, n: u64) -> u64 {
    let rest = n / m;
    if rest == 1 {
        return g % n;
    }
    // x = g + m*t with t = (1 - g) * m^{-1} mod rest; x < m*rest = n.
    let m_inv = mod_inverse(m % rest, rest);
    let diff = (1 + rest - g % rest) % rest;
    let t = mod_mul(diff, m_inv, rest);
    (g as u128 + m as u128 * t as u128) as u64
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // Extended Euclid; gcd(a, m) = 1 assumed.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    (old_s.rem_euclid(m as i128)) as u64
}

impl UnitGroupStructure {
    /// Assemble the primary decomposition from the canonical structure of
    /// each (Z/p^e Z)*: cyclic for odd p, and <-1> x <5> for 2^e with
    /// e >= 3. Generators are lifted to modulus n by CRT and then split
    /// into prime-power components.
    pub fn new(fact: &Factorization) -> Self {
        let n = fact.n();
        let mut cyclic: Vec<(u64, u64)> = Vec::new(); // (generator mod n, order)
        for &(p, e) in fact.factors() {
            let pe = p.pow(e);
            if p == 2 {
                match e {
                    1 => {}
                    2 => cyclic.push((crt_lift_generator(3, 4, n), 2)),
                    _ => {
                        cyclic.push((crt_lift_generator(pe - 1, pe, n), 2));
                        cyclic.push((crt_lift_generator(5, pe, n), 1u64 << (e - 2)));
                    }
                }
            } else {
                let fact_pm1 = arith::factorize(p - 1);
                let mut g = arith::primitive_root(p, &fact_pm1);
                if e >= 2 && mod_pow(g, p - 1, p * p) == 1 {
                    g += p;
                }
                cyclic.push((crt_lift_generator(g, pe, n), lambda_prime_power(p, e)));
            }
        }

        let mut factors = Vec::new();
        for &(g, m) in &cyclic {
            for (q, v) in arith::factorize(m).factors() {
                let qv = q.pow(*v);
                factors.push(PrimaryFactor {
                    q: *q,
                    v: *v,
                    order: qv,
                    generator: mod_pow(g, m / qv, n),
                });
            }
        }
        factors.sort_unstable_by_key(|f| (f.q, f.v, f.generator));

        let phi = fact.phi();
        let lambda = carmichael_lambda(fact);
        debug_assert_eq!(factors.iter().map(|f| f.order).product::<u64>().max(1), phi);
        debug_assert_eq!(
            factors.iter().fold(1u64, |acc, f| lcm(acc, f.order)),
            lambda
        );
        UnitGroupStructure {
            n,
            phi,
            lambda,
            factors,
            cyclic,
            lambda_fact: arith::factorize(lambda),
            phi_fact: arith::factorize(phi),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn lambda_factorization(&self) -> &Factorization {
        &self.lambda_fact
    }

    pub fn phi_factorization(&self) -> &Factorization {
        &self.phi_fact
    }

    /// Primary cyclic factors, sorted by (q, v, generator).
    pub fn primary_factors(&self) -> &[PrimaryFactor] {
        &self.factors
    }

    /// Orders q^v of the primary factors.
    pub fn primary_orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }

    /// Basis (generator, order) pairs of the primary direct-product
    /// decomposition.
    pub fn basis(&self) -> Vec<(u64, u64)> {
        self.factors.iter().map(|f| (f.generator, f.order)).collect()
    }

    /// The coarse cyclic basis: one generator per (Z/p^e Z)* component.
    /// For prime n this is a single primitive root of order n-1. Its direct
    /// product is the whole unit group, like `basis`, but without the
    /// prime-power split.
    pub fn cyclic_basis(&self) -> &[(u64, u64)] {
        &self.cyclic
    }

    /// Number of primary cyclic factors whose order is the exact q-part of
    /// lambda(n), i.e. q^v with q^v || lambda(n).
    pub fn delta_q(&self, q: u64) -> Result<u32> {
        if q < 2 || self.phi % q != 0 {
            return Err(Error::domain(format!(
                "delta_q needs a prime divisor of phi(n); {q} does not divide phi({}) = {}",
                self.n, self.phi
            )));
        }
        let vmax = self
            .factors
            .iter()
            .filter(|f| f.q == q)
            .map(|f| f.v)
            .max()
            .expect("q | phi(n) implies a primary q-factor exists");
        Ok(self
            .factors
            .iter()
            .filter(|f| f.q == q && f.v == vmax)
            .count() as u32)
    }

    /// Exact count of lambda-primitive roots modulo n:
    /// phi(n) * prod over q | phi(n) of (1 - q^(-delta_q)).
    pub fn count_lambda_primitive_roots(&self) -> u64 {
        let mut numer = 1u64;
        let mut denom = 1u64;
        for q in self.phi_fact.primes() {
            let d = self.delta_q(q).expect("q ranges over divisors of phi");
            let qd = q.pow(d);
            numer *= qd - 1;
            denom *= qd;
        }
        // Each q^delta_q divides the q-part of phi(n), so this is exact.
        self.phi / denom * numer
    }

    /// Number of elementary characters mod n of order h, for squarefree
    /// h | phi(n): prod over q | h of (q^delta_q - 1).
    pub fn rho(&self, h: u64) -> Result<u64> {
        if h == 0 || self.phi % h != 0 {
            return Err(Error::domain(format!(
                "rho_n needs a divisor of phi(n); got h = {h}, phi = {}",
                self.phi
            )));
        }
        let h_fact = arith::factorize(h);
        if !h_fact.is_squarefree() {
            return Err(Error::domain(format!("rho_n needs squarefree h, got {h}")));
        }
        let mut out = 1u64;
        for q in h_fact.primes() {
            out *= q.pow(self.delta_q(q)?) - 1;
        }
        Ok(out)
    }

    /// True iff the order of a modulo n equals lambda(n), tested by
    /// a^(lambda/q) != 1 for every prime q | lambda.
    pub fn is_lambda_primitive_root(&self, a: u64) -> Result<bool> {
        if self.n == 1 {
            return Ok(true);
        }
        if gcd(a % self.n, self.n) != 1 {
            return Err(Error::domain(format!(
                "{a} is not a unit mod {}; order undefined",
                self.n
            )));
        }
        for q in self.lambda_fact.primes() {
            if mod_pow(a, self.lambda / q, self.n) == 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Visit every unit residue together with its lambda-primitive-root
    /// flag, by mixed-radix enumeration of basis exponent tuples.
    ///
    /// An element g_1^{k_1}...g_r^{k_r} attains order lambda(n) iff for
    /// every prime q | lambda some factor of maximal q-power order has
    /// q not dividing its exponent.
    pub fn for_each_unit_with_lpr_flag(&self, mut visit: impl FnMut(u64, bool)) {
        if self.n == 1 {
            visit(0, true);
            return;
        }
        // maxsets[j] = indices of primary factors whose order is the exact
        // q_j-part of lambda.
        let qs: Vec<u64> = self.lambda_fact.primes().collect();
        let maxsets: Vec<Vec<usize>> = qs
            .iter()
            .map(|&q| {
                let vmax = self
                    .factors
                    .iter()
                    .filter(|f| f.q == q)
                    .map(|f| f.v)
                    .max()
                    .unwrap();
                self.factors
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.q == q && f.v == vmax)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();

        let radices: Vec<u64> = self.factors.iter().map(|f| f.order).collect();
        // Carry multiplier into position i: g_i * prod_{j<i} g_j (since
        // g_j^{-(m_j - 1)} = g_j).
        let carry: Vec<u64> = (0..self.factors.len())
            .map(|i| {
                let mut c = self.factors[i].generator;
                for f in &self.factors[..i] {
                    c = mod_mul(c, f.generator, self.n);
                }
                c
            })
            .collect();

        let mut k = vec![0u64; radices.len()];
        let mut residue = 1 % self.n;
        loop {
            // Vacuously true when lambda = 1 (every unit has order 1).
            let is_lpr = qs
                .iter()
                .enumerate()
                .all(|(j, &q)| maxsets[j].iter().any(|&i| k[i] % q != 0));
            visit(residue, is_lpr);

            // Mixed-radix increment.
            let mut pos = 0;
            loop {
                if pos == radices.len() {
                    return;
                }
                k[pos] += 1;
                if k[pos] < radices[pos] {
                    residue = mod_mul(residue, carry[pos], self.n);
                    break;
                }
                k[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Residues of all lambda-primitive roots mod n, ascending.
    pub fn lambda_primitive_roots(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.for_each_unit_with_lpr_flag(|r, is_lpr| {
            if is_lpr {
                out.push(r);
            }
        });
        out.sort_unstable();
        out
    }
}

/// Convenience constructor matching the factorize-then-build flow.
pub fn unit_group_structure(fact: &Factorization) -> UnitGroupStructure {
    UnitGroupStructure::new(fact)
}
