//! Explicit Dirichlet character groups with exact discrete-log tables,
//! order-class coefficients c_w, elementary characters with their c / c-bar
//! coefficients, and the character sums S4 and S10 evaluated exactly at
//! desk scale.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{factorize, gcd, lcm, mod_mul, Factorization};
use crate::error::{Error, Result};
use crate::orders::{OrderTable, UnitGroupStructure};
use crate::util::CompensatedSum;

/// Largest modulus for which a full discrete-log table is built.
pub const CHARACTER_GROUP_CAP: u64 = 1_000_000;

/// Guards for the character-sum evaluations.
pub const S4_X_CAP: u64 = 5_000;
pub const S4_N_CAP: u64 = 100_000;
pub const S10_X_CAP: u64 = 300;
pub const S10_N_CAP: u64 = 10_000;

const NON_UNIT: u32 = u32::MAX;

/// The character group of (Z/nZ)*, realized by a fixed primary basis and a
/// precomputed discrete-log table mapping every unit to its exponent tuple.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    structure: UnitGroupStructure,
    /// (generator, order) per basis position.
    basis: Vec<(u64, u64)>,
    /// Common root-of-unity denominator: lcm of the basis orders.
    exponent: u64,
    /// residue -> unit index (NON_UNIT for non-units); length n.
    unit_index: Vec<u32>,
    /// Flat [phi(n) x basis.len()] exponent tuples.
    tuples: Vec<u32>,
    /// roots[j] = exp(2 pi i j / exponent).
    roots: Vec<Complex64>,
    /// Residues of the lambda-primitive roots, ascending.
    lpr_residues: Vec<u64>,
}

impl CharacterGroup {
    pub fn new(n: u64) -> Result<CharacterGroup> {
        if n < 2 {
            return Err(Error::domain(format!("character group needs n >= 2, got {n}")));
        }
        if n > CHARACTER_GROUP_CAP {
            return Err(Error::capacity(format!(
                "character group modulus {n} exceeds cap {CHARACTER_GROUP_CAP}"
            )));
        }
        Ok(Self::from_structure(UnitGroupStructure::new(&factorize(n))))
    }

    pub fn from_structure(structure: UnitGroupStructure) -> CharacterGroup {
        let n = structure.n();
        // The coarse cyclic basis keeps a single primitive root for prime
        // moduli, which the S4/S10 transforms rely on.
        let basis = structure.cyclic_basis().to_vec();
        let rank = basis.len();
        let exponent = structure.lambda();

        let mut unit_index = vec![NON_UNIT; n as usize];
        let mut tuples = vec![0u32; structure.phi() as usize * rank];

        // Enumerate exponent tuples in mixed-radix order, position 0
        // cycling fastest, with the residue updated incrementally.
        let carry: Vec<u64> = (0..rank)
            .map(|i| {
                let mut c = basis[i].0;
                for &(g, _) in &basis[..i] {
                    c = mod_mul(c, g, n);
                }
                c
            })
            .collect();
        let mut k = vec![0u64; rank];
        let mut residue = 1 % n;
        let mut idx = 0u32;
        loop {
            unit_index[residue as usize] = idx;
            for (i, &ki) in k.iter().enumerate() {
                tuples[idx as usize * rank + i] = ki as u32;
            }
            idx += 1;
            let mut pos = 0;
            loop {
                if pos == rank {
                    let roots = (0..exponent)
                        .map(|j| {
                            Complex64::from_polar(
                                1.0,
                                2.0 * std::f64::consts::PI * j as f64 / exponent as f64,
                            )
                        })
                        .collect();
                    let lpr_residues = structure.lambda_primitive_roots();
                    return CharacterGroup {
                        structure,
                        basis,
                        exponent,
                        unit_index,
                        tuples,
                        roots,
                        lpr_residues,
                    };
                }
                k[pos] += 1;
                if k[pos] < basis[pos].1 {
                    residue = mod_mul(residue, carry[pos], n);
                    break;
                }
                k[pos] = 0;
                pos += 1;
            }
        }
    }

    pub fn n(&self) -> u64 {
        self.structure.n()
    }

    pub fn phi(&self) -> u64 {
        self.structure.phi()
    }

    pub fn structure(&self) -> &UnitGroupStructure {
        &self.structure
    }

    pub fn basis(&self) -> &[(u64, u64)] {
        &self.basis
    }

    /// Exponent tuple of a unit residue, or None when gcd(a, n) > 1.
    pub fn dlog(&self, a: u64) -> Option<&[u32]> {
        let r = (a % self.n()) as usize;
        let idx = self.unit_index[r];
        if idx == NON_UNIT {
            return None;
        }
        let rank = self.basis.len();
        Some(&self.tuples[idx as usize * rank..(idx as usize + 1) * rank])
    }

    /// Reconstruct the residue from an exponent tuple (test hook for the
    /// dlog bijection).
    pub fn from_dlog(&self, tuple: &[u32]) -> u64 {
        let n = self.n();
        let mut r = 1 % n;
        for (&(g, _), &k) in self.basis.iter().zip(tuple) {
            r = mod_mul(r, crate::arith::mod_pow(g, k as u64, n), n);
        }
        r
    }

    /// The principal character.
    pub fn principal(&self) -> Character<'_> {
        Character {
            group: self,
            exponents: vec![0; self.basis.len()],
        }
    }

    /// Build the character with the given exponent tuple.
    pub fn character(&self, exponents: Vec<u32>) -> Character<'_> {
        assert_eq!(exponents.len(), self.basis.len());
        for (t, &(_, m)) in exponents.iter().zip(&self.basis) {
            assert!((*t as u64) < m, "character exponent out of range");
        }
        Character {
            group: self,
            exponents,
        }
    }

    /// All phi(n) characters, principal first, in mixed-radix order.
    pub fn characters(&self) -> impl Iterator<Item = Character<'_>> + '_ {
        let radices: Vec<u64> = self.basis.iter().map(|&(_, m)| m).collect();
        let mut t = vec![0u32; radices.len()];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Character {
                group: self,
                exponents: t.clone(),
            };
            let mut pos = 0;
            loop {
                if pos == radices.len() {
                    done = true;
                    break;
                }
                t[pos] += 1;
                if (t[pos] as u64) < radices[pos] {
                    break;
                }
                t[pos] = 0;
                pos += 1;
            }
            Some(out)
        })
    }

    /// Lambda-primitive-root residues (the support of c(chi)).
    pub fn lambda_primitive_roots(&self) -> &[u64] {
        &self.lpr_residues
    }
}

/// A Dirichlet character mod n given by exponents against the group basis.
#[derive(Debug, Clone)]
pub struct Character<'g> {
    group: &'g CharacterGroup,
    exponents: Vec<u32>,
}

impl<'g> Character<'g> {
    pub fn group(&self) -> &'g CharacterGroup {
        self.group
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&t| t == 0)
    }

    /// Order of the character: lcm of m_i / gcd(t_i, m_i).
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.group.basis)
            .fold(1u64, |acc, (&t, &(_, m))| lcm(acc, m / gcd(t as u64, m)))
    }

    /// chi(a): exp(2 pi i sum t_i k_i / m_i) for units, 0 otherwise.
    pub fn eval(&self, a: u64) -> Complex64 {
        match self.group.dlog(a) {
            None => Complex64::new(0.0, 0.0),
            Some(tuple) => {
                let ex = self.group.exponent;
                let mut num = 0u64;
                for ((&t, &k), &(_, m)) in
                    self.exponents.iter().zip(tuple).zip(&self.group.basis)
                {
                    num += (t as u64 * k as u64) % m * (ex / m);
                }
                self.group.roots[(num % ex) as usize]
            }
        }
    }

    /// True iff the character is trivial on E(n), the subgroup of units
    /// whose order divides lambda(n)/rad(lambda(n)). Tested on generators
    /// of E(n): for each basis factor, chi(g_i^{s_i}) = 1 with
    /// s_i = m_i / gcd(m_i, lambda/rad(lambda)).
    pub fn is_elementary(&self) -> bool {
        let s = &self.group.structure;
        let rad = s.lambda_factorization().radical();
        let e_exp = s.lambda() / rad;
        self.exponents
            .iter()
            .zip(&self.group.basis)
            .all(|(&t, &(_, m))| {
                let step = m / gcd(m, e_exp);
                (t as u64 * step) % m == 0
            })
    }

    /// c(chi): the mean of chi over lambda-primitive roots in [1, n],
    /// normalized by phi(n).
    pub fn lpr_mean(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &b in &self.group.lpr_residues {
            acc += self.eval(b);
        }
        acc / self.group.phi() as f64
    }

    /// c-bar(chi): 1/rho_n(ord chi) for elementary characters, else 0.
    pub fn lpr_mean_bound(&self) -> f64 {
        if !self.is_elementary() {
            return 0.0;
        }
        let rho = self
            .group
            .structure
            .rho(self.order())
            .expect("elementary characters have squarefree order dividing phi");
        1.0 / rho as f64
    }
}

/// c_w(chi): (p-1)^{-1} sum of chi(a) over the residues a of order
/// (p-1)/w modulo p. Requires w | p-1.
pub fn c_w(chi: &Character<'_>, table: &OrderTable, w: u64) -> Result<Complex64> {
    let p = table.p();
    debug_assert_eq!(chi.group().n(), p);
    if w == 0 || (p - 1) % w != 0 {
        return Err(Error::domain(format!("w = {w} does not divide p-1 = {}", p - 1)));
    }
    let target = (p - 1) / w;
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 1..p {
        if table.ord(r) == target {
            acc += chi.eval(r);
        }
    }
    Ok(acc / (p - 1) as f64)
}

/// Exact rational value of c_w at the principal character:
/// phi((p-1)/w) / (p-1), reduced.
pub fn c_w_principal_exact(fact_pm1: &Factorization, w: u64) -> Result<(u64, u64)> {
    let m = fact_pm1.n();
    if w == 0 || m % w != 0 {
        return Err(Error::domain(format!("w = {w} does not divide p-1 = {m}")));
    }
    let num = factorize(m / w).phi();
    let g = gcd(num, m);
    Ok((num / g, m / g))
}

/// Occupancy count of a <= limit with a = r (mod modulus), for 1 <= r < modulus.
fn occupancy(r: u64, modulus: u64, limit: u64) -> u64 {
    if r > limit {
        0
    } else {
        (limit - r) / modulus + 1
    }
}

/// S4: over primes p <= x and non-principal characters mod p (all of which
/// are primitive), the sum of |sum_{a<=N} chi(a)| / ord(chi).
///
/// The inner sums use residue occupancy counts: one pass builds the count
/// of each residue class, and each character is evaluated in O(p) from the
/// discrete-log table. Per-prime subtotals are reduced in ascending prime
/// order, so the result does not depend on the worker count.
pub fn s4(x: u64, n_limit: u64) -> Result<f64> {
    if x > S4_X_CAP || n_limit > S4_N_CAP {
        return Err(Error::capacity(format!(
            "S4 guard: need x <= {S4_X_CAP} and N <= {S4_N_CAP}, got ({x}, {n_limit})"
        )));
    }
    if x < 2 {
        return Ok(0.0);
    }
    let primes = crate::arith::sieve_primes(x.max(2))?;
    let per_prime: Vec<f64> = primes
        .primes()
        .par_iter()
        .map(|&p| s4_prime_term(p, n_limit))
        .collect();
    let mut acc = CompensatedSum::new();
    for t in per_prime {
        acc.add(t);
    }
    Ok(acc.total())
}

fn s4_prime_term(p: u64, n_limit: u64) -> f64 {
    if p == 2 {
        return 0.0; // only the principal character exists mod 2
    }
    let m = (p - 1) as usize;
    let group = CharacterGroup::new(p).expect("prime within group cap");
    // v[k] = #\{a <= N : a = g^k (mod p)\}
    let mut v = vec![0.0f64; m];
    for r in 1..p {
        let k = group.dlog(r).expect("nonzero residue mod prime")[0] as usize;
        v[k] = occupancy(r, p, n_limit) as f64;
    }
    let roots = &group.roots;
    let mut acc = CompensatedSum::new();
    for t in 1..m {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut idx = 0usize;
        for &vk in &v {
            sum += roots[idx].scale(vk);
            idx += t;
            if idx >= m {
                idx -= m;
            }
        }
        // 1/ord(chi_t) = gcd(t, p-1)/(p-1)
        acc.add(sum.norm() * gcd(t as u64, p - 1) as f64 / (p - 1) as f64);
    }
    acc.total()
}

/// S10: over ordered pairs of distinct primes p, q <= x and primitive
/// characters mod pq (both components non-principal), the sum of
/// |sum_{a<=N} chi(a)| / ord(chi).
pub fn s10(x: u64, n_limit: u64) -> Result<f64> {
    if x > S10_X_CAP || n_limit > S10_N_CAP {
        return Err(Error::capacity(format!(
            "S10 guard: need x <= {S10_X_CAP} and N <= {S10_N_CAP}, got ({x}, {n_limit})"
        )));
    }
    if x < 3 {
        return Ok(0.0);
    }
    let primes = crate::arith::sieve_primes(x.max(2))?;
    // Pairs containing 2 contribute nothing: mod 2 only the principal
    // character exists, so no character mod 2q has both components
    // non-principal.
    let odd: Vec<u64> = primes.primes().iter().copied().filter(|&p| p > 2).collect();
    let groups: Vec<CharacterGroup> = odd
        .par_iter()
        .map(|&p| CharacterGroup::new(p).expect("prime within group cap"))
        .collect();

    let mut pairs = Vec::new();
    for i in 0..odd.len() {
        for j in 0..odd.len() {
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    let per_pair: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| s10_pair_term(&groups[i], &groups[j], n_limit))
        .collect();
    let mut acc = CompensatedSum::new();
    for t in per_pair {
        acc.add(t);
    }
    Ok(acc.total())
}

fn s10_pair_term(gp: &CharacterGroup, gq: &CharacterGroup, n_limit: u64) -> f64 {
    let (p, q) = (gp.n(), gq.n());
    let (mp, mq) = ((p - 1) as usize, (q - 1) as usize);
    let modulus = p * q;

    // Occupancy matrix over discrete-log coordinates: m[i][j] sums the
    // counts of a <= N whose residue has dlog i mod p and j mod q.
    let mut m = vec![0.0f64; mp * mq];
    for r in 1..modulus {
        if r % p == 0 || r % q == 0 {
            continue;
        }
        let cnt = occupancy(r, modulus, n_limit);
        if cnt == 0 {
            continue;
        }
        let i = gp.dlog(r % p).unwrap()[0] as usize;
        let j = gq.dlog(r % q).unwrap()[0] as usize;
        m[i * mq + j] += cnt as f64;
    }

    // Two-stage transform: rows first (over the p component), then columns.
    // This regroups the same occupancy sums, so each character sum is still
    // exact up to rounding.
    let wp = &gp.roots;
    let wq = &gq.roots;
    let mut acc = CompensatedSum::new();
    let mut row = vec![Complex64::new(0.0, 0.0); mq];
    for s in 1..mp {
        for c in row.iter_mut() {
            *c = Complex64::new(0.0, 0.0);
        }
        let mut idx = 0usize;
        for i in 0..mp {
            let w = wp[idx];
            let base = i * mq;
            for (j, c) in row.iter_mut().enumerate() {
                *c += w.scale(m[base + j]);
            }
            idx += s;
            if idx >= mp {
                idx -= mp;
            }
        }
        let ord_p = (mp as u64) / gcd(s as u64, mp as u64);
        for t in 1..mq {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut jdx = 0usize;
            for &c in &row {
                sum += c * wq[jdx];
                jdx += t;
                if jdx >= mq {
                    jdx -= mq;
                }
            }
            let ord_q = (mq as u64) / gcd(t as u64, mq as u64);
            acc.add(sum.norm() / lcm(ord_p, ord_q) as f64);
        }
    }
    acc.total()
}
