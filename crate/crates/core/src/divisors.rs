//! Ordered-factorization counts tau_r, their partial sums with the
//! classical bounds, and the bounded-factor variant tau'_r verified by
//! exhaustive tuple enumeration.

use std::collections::HashMap;

use crate::arith::{self, Factorization};
use crate::error::{Error, Result};

/// One checked inequality: an exact integer left-hand side against a real
/// bound. All logarithms are natural.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TauSumCheck {
    pub n_limit: u64,
    pub r: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    pub lhs: u128,
    pub bound: f64,
    pub holds: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        // Exact at every step: the partial product is C(n, i+1).
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// tau_r(a): the number of ways to write a as an ordered product of r
/// positive integers; multiplicative with
/// tau_r(p^e) = binom(e + r - 1, r - 1).
pub fn tau_r(fact: &Factorization, r: u32) -> u64 {
    assert!(r >= 1);
    fact.factors()
        .iter()
        .map(|&(_, e)| binomial(e as u64 + r as u64 - 1, r as u64 - 1))
        .product()
}

fn factorial(r: u32) -> f64 {
    (1..=r as u64).map(|i| i as f64).product::<f64>().max(1.0)
}

/// Exact sum of tau_r(a) for a <= N via a smallest-prime-factor sieve,
/// together with the bound N (log N + r - 1)^(r-1) / (r-1)!. The bound is
/// asserted to hold.
pub fn sum_tau_r(n_limit: u64, r: u32) -> Result<TauSumCheck> {
    if n_limit < 1 || r < 1 {
        return Err(Error::domain("sum_tau_r needs N >= 1 and r >= 1".to_string()));
    }
    let table = arith::sieve_primes(n_limit.max(2))?;
    let mut lhs: u128 = 1; // a = 1
    for a in 2..=n_limit {
        lhs += tau_r(&table.factorize(a), r) as u128;
    }
    let ln_n = (n_limit as f64).ln();
    let bound = (ln_n + r as f64 - 1.0).powi(r as i32 - 1) * n_limit as f64 / factorial(r - 1);
    let holds = lhs as f64 <= bound;
    assert!(holds, "tau_r sum bound violated at N = {n_limit}, r = {r}");
    Ok(TauSumCheck {
        n_limit,
        r,
        c: None,
        lhs,
        bound,
        holds,
    })
}

/// The c-parameterized form of the bound: for r - 1 <= c log N,
/// sum tau_r(a) <= (1+c)^(r-1) N (log N)^(r-1) / (r-1)!.
pub fn check_tau_sum_c_form(n_limit: u64, r: u32, c: f64) -> Result<TauSumCheck> {
    if n_limit < 1 || r < 1 || c <= 0.0 {
        return Err(Error::domain(
            "c-form check needs N >= 1, r >= 1, c > 0".to_string(),
        ));
    }
    let ln_n = (n_limit as f64).ln();
    if r as f64 - 1.0 > c * ln_n {
        return Err(Error::domain(format!(
            "precondition r - 1 <= c log N fails: r = {r}, c = {c}, N = {n_limit}"
        )));
    }
    let lhs = sum_tau_r(n_limit, r)?.lhs;
    let bound = (1.0 + c).powi(r as i32 - 1) * n_limit as f64 * ln_n.powi(r as i32 - 1)
        / factorial(r - 1);
    Ok(TauSumCheck {
        n_limit,
        r,
        c: Some(c),
        lhs,
        bound,
        holds: lhs as f64 <= bound,
    })
}

/// Enumeration guards for the tau'_r square sum.
fn tau_prime_guard(n_limit: u64, r: u32) -> Result<()> {
    let ok = match r {
        1 => n_limit <= 1_000_000,
        2 => n_limit <= 40,
        3 => n_limit <= 15,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::capacity(format!(
            "tau'_r square sum enumerates N^r tuples; (N, r) = ({n_limit}, {r}) exceeds guards"
        )))
    }
}

/// Sum over a <= N^r of tau'_r(a)^2, where tau'_r counts ordered
/// factorizations into r parts each <= N. Computed by brute-force tuple
/// enumeration: the sum equals the number of 2r-tuples with equal products.
/// The bound (sum_{a<=N} tau_r(a))^r is asserted.
pub fn tau_prime_square_sum(n_limit: u64, r: u32) -> Result<TauSumCheck> {
    if n_limit < 1 || r < 1 {
        return Err(Error::domain("need N >= 1 and r >= 1".to_string()));
    }
    tau_prime_guard(n_limit, r)?;
    let mut products: HashMap<u64, u64> = HashMap::new();
    let mut stack = vec![(1u64, 0u32)];
    while let Some((prod, depth)) = stack.pop() {
        if depth == r {
            *products.entry(prod).or_insert(0) += 1;
            continue;
        }
        for part in 1..=n_limit {
            stack.push((prod * part, depth + 1));
        }
    }
    let lhs: u128 = products.values().map(|&c| c as u128 * c as u128).sum();
    let tau_sum = sum_tau_r(n_limit, r)?.lhs;
    let bound = (tau_sum as f64).powi(r as i32);
    let holds = lhs as f64 <= bound;
    assert!(holds, "tau'_r square bound violated at N = {n_limit}, r = {r}");
    Ok(TauSumCheck {
        n_limit,
        r,
        c: None,
        lhs,
        bound,
        holds,
    })
}
