//! Exact desk-scale evaluation of the averaged order statistics: mean and
//! variance of ord_a(p)/(p-1), primitive-root counts against Artin's
//! constant, subgroup-membership pair counts, and the lambda-primitive-root
//! average against sum R(n)/n.

use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{self, factorize, gcd};
use crate::constants::{artin_constant, li, stephens_constant};
use crate::error::{Error, Result};
use crate::orders::{order_table, UnitGroupStructure};
use crate::util::CompensatedSum;

/// Guards: statistics refuse parameter combinations beyond these sizes.
pub const AVG_ORDER_X_CAP: u64 = 1_000_000;
pub const VARIANCE_X_CAP: u64 = 100_000;
pub const VARIANCE_N_CAP: u64 = 10_000;
pub const POWER_DIVISOR_X_CAP: u64 = 100_000;
pub const POWER_DIVISOR_N_CAP: u64 = 10_000;
pub const POWER_VARIANCE_X_CAP: u64 = 20_000;
pub const POWER_VARIANCE_N_CAP: u64 = 1_000;
pub const LAMBDA_X_CAP: u64 = 100_000;
pub const LAMBDA_Y_CAP: u64 = 100_000;

/// Euler products behind main terms are evaluated at this cutoff; the
/// quadrature tolerance for Li is fixed at 1e-9 inside `constants::li`.
pub const MAIN_TERM_CUTOFF: u64 = 10_000_000;

/// Fixed prime-chunk size for the per-a variance accumulations. Partial
/// sums are reduced in chunk order, so results depend on this constant but
/// never on the worker count.
const VARIANCE_CHUNK: usize = 512;

/// One statistics experiment: exact left-hand side, its main term, and
/// their comparison. For variance statistics `main_term` is the squared
/// normalizer, so `ratio` is the normalized variance.
#[derive(Debug, Clone, Serialize)]
pub struct StatReport {
    pub tag: String,
    pub x: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<u64>,
    pub lhs: f64,
    pub main_term: f64,
    pub diff: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    pub runtime_ms: u128,
    pub workers: usize,
}

/// Cumulative (lhs, main term) after processing everything up to `at`
/// (a prime, or a modulus for the lambda statistic).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PartialRow {
    pub at: u64,
    pub lhs: f64,
    pub main_term: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

fn finish(tag: &str, x: u64, n: Option<u64>, y: Option<u64>, lhs: f64, main: f64, t0: Instant) -> StatReport {
    StatReport {
        tag: tag.to_string(),
        x,
        n,
        y,
        lhs,
        main_term: main,
        diff: lhs - main,
        ratio: (main != 0.0).then(|| lhs / main),
        runtime_ms: t0.elapsed().as_millis(),
        workers: rayon::current_num_threads(),
    }
}

/// Stephens' constant at the main-term cutoff, computed once.
pub fn stephens_c() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| {
        stephens_constant(MAIN_TERM_CUTOFF)
            .expect("main-term cutoff within sieve cap")
            .value
    })
}

/// Artin's constant at the main-term cutoff, computed once.
pub fn artin_a() -> f64 {
    static A: OnceLock<f64> = OnceLock::new();
    *A.get_or_init(|| {
        artin_constant(MAIN_TERM_CUTOFF)
            .expect("main-term cutoff within sieve cap")
            .value
    })
}

/// Number of a <= limit congruent to r mod m, for 1 <= r < m.
fn occupancy(r: u64, m: u64, limit: u64) -> u64 {
    if r > limit {
        0
    } else {
        (limit - r) / m + 1
    }
}

/// Per-prime term of the order-average statistic:
/// (1/N) * sum over a <= N, p not dividing a, of ord_a(p)/(p-1).
/// Multiples of p contribute zero.
pub fn avg_order_prime_term(p: u64, n_limit: u64) -> f64 {
    let table = order_table(p);
    let mut weighted: u128 = 0;
    for r in 1..p {
        weighted += occupancy(r, p, n_limit) as u128 * table.ord(r) as u128;
    }
    weighted as f64 / (p - 1) as f64 / n_limit as f64
}

fn check_guard(cond: bool, msg: String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::capacity(msg))
    }
}

/// Mean of sum_{p<=x} ord_a(p)/(p-1) over a <= N, against C*Li(x).
pub fn avg_order_stat(n_limit: u64, x: u64) -> Result<StatReport> {
    Ok(avg_order_stat_with_partials(n_limit, x, false)?.0)
}

pub fn avg_order_stat_with_partials(
    n_limit: u64,
    x: u64,
    want_partials: bool,
) -> Result<(StatReport, Vec<PartialRow>)> {
    check_guard(
        x <= AVG_ORDER_X_CAP && n_limit >= 1 && x >= 2,
        format!("avg-order guard: need 2 <= x <= {AVG_ORDER_X_CAP} and N >= 1, got ({n_limit}, {x})"),
    )?;
    let t0 = Instant::now();
    let primes = arith::sieve_primes(x)?;
    let terms: Vec<(u64, f64)> = primes
        .primes()
        .par_iter()
        .map(|&p| (p, avg_order_prime_term(p, n_limit)))
        .collect();
    let c = stephens_c();
    let (lhs, partials) = accumulate(&terms, want_partials, |p| c * li(p as f64).unwrap());
    let main = c * li(x as f64)?;
    Ok((
        finish("avg_order", x, Some(n_limit), None, lhs, main, t0),
        partials,
    ))
}

/// Kahan-sum the ordered per-key terms; optionally record cumulative rows
/// with a main-term curve evaluated at each key.
fn accumulate(
    terms: &[(u64, f64)],
    want_partials: bool,
    main_at: impl Fn(u64) -> f64,
) -> (f64, Vec<PartialRow>) {
    let mut acc = CompensatedSum::new();
    let mut partials = Vec::new();
    for &(key, term) in terms {
        acc.add(term);
        if want_partials {
            let main = main_at(key);
            partials.push(PartialRow {
                at: key,
                lhs: acc.total(),
                main_term: main,
                ratio: (main != 0.0).then(|| acc.total() / main),
            });
        }
    }
    (acc.total(), partials)
}

/// Mean count of primes p <= x for which a is a primitive root, over
/// a <= N, against A*pi(x).
pub fn primitive_root_stat(n_limit: u64, x: u64) -> Result<StatReport> {
    Ok(primitive_root_stat_with_partials(n_limit, x, false)?.0)
}

pub fn primitive_root_stat_with_partials(
    n_limit: u64,
    x: u64,
    want_partials: bool,
) -> Result<(StatReport, Vec<PartialRow>)> {
    check_guard(
        x <= AVG_ORDER_X_CAP && n_limit >= 1 && x >= 2,
        format!("primroot guard: need 2 <= x <= {AVG_ORDER_X_CAP} and N >= 1, got ({n_limit}, {x})"),
    )?;
    let t0 = Instant::now();
    let primes = arith::sieve_primes(x)?;
    let counts: Vec<(u64, u128)> = primes
        .primes()
        .par_iter()
        .map(|&p| {
            let table = order_table(p);
            let mut count: u128 = 0;
            for r in 1..p {
                if table.ord(r) == p - 1 {
                    count += occupancy(r, p, n_limit) as u128;
                }
            }
            (p, count)
        })
        .collect();
    let a_const = artin_a();
    // Exact integer total; a single division at the end.
    let mut running: u128 = 0;
    let mut partials = Vec::new();
    for (i, &(p, c)) in counts.iter().enumerate() {
        running += c;
        if want_partials {
            let main = a_const * (i + 1) as f64;
            let lhs = running as f64 / n_limit as f64;
            partials.push(PartialRow {
                at: p,
                lhs,
                main_term: main,
                ratio: (main != 0.0).then(|| lhs / main),
            });
        }
    }
    let lhs = running as f64 / n_limit as f64;
    let main = a_const * primes.count() as f64;
    Ok((
        finish("primitive_root", x, Some(n_limit), None, lhs, main, t0),
        partials,
    ))
}

/// Exact per-prime count of pairs (a, b) in [1, N]^2 with b in the subgroup
/// generated by a mod p (both multiples of p count; mixed pairs do not).
pub fn power_divisor_prime_pairs(p: u64, n_limit: u64) -> u128 {
    let table = order_table(p);
    let divs = factorize(p - 1).divisors();
    let mut count_by_order = vec![0u128; divs.len()];
    for r in 1..p {
        let d = table.ord(r);
        let i = divs.binary_search(&d).expect("order divides p-1");
        count_by_order[i] += occupancy(r, p, n_limit) as u128;
    }
    let both_multiples = (n_limit / p) as u128;
    let mut pairs = both_multiples * both_multiples;
    for (j, &dj) in divs.iter().enumerate() {
        if count_by_order[j] == 0 {
            continue;
        }
        let mut reachable: u128 = 0;
        for (i, &di) in divs.iter().enumerate() {
            if dj % di == 0 {
                reachable += count_by_order[i];
            }
        }
        pairs += count_by_order[j] * reachable;
    }
    pairs
}

/// N^{-2} sum over (a, b) of the count of p <= x with b in <a> mod p,
/// against C*Li(x).
pub fn power_divisor_stat(n_limit: u64, x: u64) -> Result<StatReport> {
    Ok(power_divisor_stat_with_partials(n_limit, x, false)?.0)
}

pub fn power_divisor_stat_with_partials(
    n_limit: u64,
    x: u64,
    want_partials: bool,
) -> Result<(StatReport, Vec<PartialRow>)> {
    check_guard(
        x <= POWER_DIVISOR_X_CAP && n_limit <= POWER_DIVISOR_N_CAP && n_limit >= 1 && x >= 2,
        format!(
            "divides guard: need 2 <= x <= {POWER_DIVISOR_X_CAP} and 1 <= N <= {POWER_DIVISOR_N_CAP}, got ({n_limit}, {x})"
        ),
    )?;
    let t0 = Instant::now();
    let primes = arith::sieve_primes(x)?;
    let counts: Vec<(u64, u128)> = primes
        .primes()
        .par_iter()
        .map(|&p| (p, power_divisor_prime_pairs(p, n_limit)))
        .collect();
    let c = stephens_c();
    let scale = (n_limit as f64) * (n_limit as f64);
    let mut running: u128 = 0;
    let mut partials = Vec::new();
    for &(p, cnt) in &counts {
        running += cnt;
        if want_partials {
            let main = c * li(p as f64)?;
            let lhs = running as f64 / scale;
            partials.push(PartialRow {
                at: p,
                lhs,
                main_term: main,
                ratio: (main != 0.0).then(|| lhs / main),
            });
        }
    }
    let lhs = running as f64 / scale;
    let main = c * li(x as f64)?;
    Ok((
        finish("power_divisor", x, Some(n_limit), None, lhs, main, t0),
        partials,
    ))
}

/// Per-a inner sums S(a) = sum_{p<=x} ord_a(p)/(p-1), accumulated over
/// fixed-size prime chunks and reduced in chunk order.
fn per_a_order_sums(primes: &[u64], n_limit: u64) -> Vec<f64> {
    let chunk_sums: Vec<Vec<f64>> = primes
        .par_chunks(VARIANCE_CHUNK)
        .map(|chunk| {
            let mut s = vec![0.0f64; n_limit as usize + 1];
            for &p in chunk {
                let table = order_table(p);
                let inv = 1.0 / (p - 1) as f64;
                let term: Vec<f64> = table.raw().iter().map(|&o| o as f64 * inv).collect();
                for a in 1..=n_limit {
                    s[a as usize] += term[(a % p) as usize];
                }
            }
            s
        })
        .collect();
    let mut out = vec![0.0f64; n_limit as usize + 1];
    for a in 1..=n_limit as usize {
        let mut acc = CompensatedSum::new();
        for chunk in &chunk_sums {
            acc.add(chunk[a]);
        }
        out[a] = acc.total();
    }
    out
}

/// Mean of (sum_{p<=x} ord_a(p)/(p-1) - C*Li(x))^2 over a <= N. The report's
/// main term is (C*Li(x))^2, making `ratio` the normalized variance.
pub fn variance_stat(n_limit: u64, x: u64) -> Result<StatReport> {
    check_guard(
        x <= VARIANCE_X_CAP && n_limit <= VARIANCE_N_CAP && n_limit >= 1 && x >= 2,
        format!(
            "variance guard: need 2 <= x <= {VARIANCE_X_CAP} and 1 <= N <= {VARIANCE_N_CAP}, got ({n_limit}, {x})"
        ),
    )?;
    let t0 = Instant::now();
    let primes = arith::sieve_primes(x)?;
    let sums = per_a_order_sums(primes.primes(), n_limit);
    let m = stephens_c() * li(x as f64)?;
    let mut acc = CompensatedSum::new();
    for a in 1..=n_limit as usize {
        let d = sums[a] - m;
        acc.add(d * d);
    }
    let lhs = acc.total() / n_limit as f64;
    Ok(finish("variance_order", x, Some(n_limit), None, lhs, m * m, t0))
}

/// Mean of (P_a(x) - A*pi(x))^2 over a <= N, where P_a(x) counts primes for
/// which a is a primitive root. Main term (A*pi(x))^2 as normalizer.
pub fn variance_primitive_root_stat(n_limit: u64, x: u64) -> Result<StatReport> {
    check_guard(
        x <= VARIANCE_X_CAP && n_limit <= VARIANCE_N_CAP && n_limit >= 1 && x >= 2,
        format!(
            "primroot-var guard: need 2 <= x <= {VARIANCE_X_CAP} and 1 <= N <= {VARIANCE_N_CAP}, got ({n_limit}, {x})"
        ),
    )?;
    let t0 = Instant::now();
    let primes = arith::sieve_primes(x)?;
    // Integer counts per a: order-free and exact under any chunking.
    let chunk_counts: Vec<Vec<u32>> = primes
        .primes()
        .par_chunks(VARIANCE_CHUNK)
        .map(|chunk| {
            let mut counts = vec![0u32; n_limit as usize + 1];
            for &p in chunk {
                let table = order_table(p);
                let is_pr: Vec<bool> = table.raw().iter().map(|&o| o as u64 == p - 1).collect();
                for a in 1..=n_limit {
                    if is_pr[(a % p) as usize] {
                        counts[a as usize] += 1;
                    }
                }
            }
            counts
        })
        .collect();
    let m = artin_a() * primes.count() as f64;
    let mut acc = CompensatedSum::new();
    for a in 1..=n_limit as usize {
        let total: u64 = chunk_counts.iter().map(|c| c[a] as u64).sum();
        let d = total as f64 - m;
        acc.add(d * d);
    }
    let lhs = acc.total() / n_limit as f64;
    Ok(finish(
        "variance_primitive_root",
        x,
        Some(n_limit),
        None,
        lhs,
        m * m,
        t0,
    ))
}

/// Mean of (#\{p <= x : b in <a> mod p\} - C*Li(x))^2 over pairs (a, b) in
/// [1, N]^2, with exact per-pair integer counts.
pub fn variance_power_divisor_stat(n_limit: u64, x: u64) -> Result<StatReport> {
    check_guard(
        x <= POWER_VARIANCE_X_CAP && n_limit <= POWER_VARIANCE_N_CAP && n_limit >= 1 && x >= 2,
        format!(
            "divides-var guard: need 2 <= x <= {POWER_VARIANCE_X_CAP} and 1 <= N <= {POWER_VARIANCE_N_CAP}, got ({n_limit}, {x})"
        ),
    )?;
    let t0 = Instant::now();
    let primes = arith::sieve_primes(x)?;
    let n = n_limit as usize;
    // Integer pair-count matrices per chunk; exact sum afterwards.
    let chunk_counts: Vec<Vec<u32>> = primes
        .primes()
        .par_chunks(VARIANCE_CHUNK)
        .map(|chunk| {
            let mut counts = vec![0u32; n * n];
            for &p in chunk {
                let table = order_table(p);
                let ord_of = table.raw();
                for a in 1..=n_limit {
                    let ra = (a % p) as usize;
                    let row = &mut counts[(a as usize - 1) * n..a as usize * n];
                    if ra == 0 {
                        // p | a: only pairs with p | b succeed.
                        let mut b = p;
                        while b <= n_limit {
                            row[b as usize - 1] += 1;
                            b += p;
                        }
                    } else {
                        let oa = ord_of[ra] as u64;
                        for b in 1..=n_limit {
                            let rb = (b % p) as usize;
                            if rb != 0 && oa % ord_of[rb] as u64 == 0 {
                                row[b as usize - 1] += 1;
                            }
                        }
                    }
                }
            }
            counts
        })
        .collect();
    let m = stephens_c() * li(x as f64)?;
    let mut acc = CompensatedSum::new();
    for idx in 0..n * n {
        let total: u64 = chunk_counts.iter().map(|c| c[idx] as u64).sum();
        let d = total as f64 - m;
        acc.add(d * d);
    }
    let lhs = acc.total() / (n as f64 * n as f64);
    Ok(finish(
        "variance_power_divisor",
        x,
        Some(n_limit),
        None,
        lhs,
        m * m,
        t0,
    ))
}

/// A reduced fraction with exact equality; used for the per-prime identity
/// between the order-table average and its divisor-sum form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactRatio {
    pub num: u128,
    pub den: u128,
}

impl ExactRatio {
    pub fn new(num: u128, den: u128) -> ExactRatio {
        assert!(den != 0);
        let g = gcd_u128(num, den);
        ExactRatio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Both exact forms of the local order average at p:
/// the table side (p-1)^{-2} sum over residues of ord_r(p), and the
/// divisor-sum side sum over w | p-1 of phi((p-1)/w) / (w (p-1)).
/// The two must be equal as reduced fractions.
pub fn local_order_average(p: u64) -> (ExactRatio, ExactRatio) {
    let m = p - 1;
    let table = order_table(p);
    let table_num: u128 = (1..p).map(|r| table.ord(r) as u128).sum();
    let table_side = ExactRatio::new(table_num, m as u128 * m as u128);

    // sum_w phi((p-1)/w)/(w(p-1)) over the common denominator (p-1)^2.
    let mut formula_num: u128 = 0;
    for w in factorize(m).divisors() {
        let mw = m / w;
        formula_num += factorize(mw).phi() as u128 * mw as u128;
    }
    let formula_side = ExactRatio::new(formula_num, m as u128 * m as u128);
    (table_side, formula_side)
}

/// N_a(x): the number of n <= x for which a is a lambda-primitive root.
pub fn n_a(a: u64, x: u64) -> Result<u64> {
    check_guard(
        x <= LAMBDA_X_CAP && a >= 1,
        format!("N_a guard: need a >= 1 and x <= {LAMBDA_X_CAP}, got a = {a}, x = {x}"),
    )?;
    let mut count = 0u64;
    for n in 1..=x {
        if n == 1 {
            count += 1;
            continue;
        }
        if gcd(a % n, n) != 1 {
            continue;
        }
        let s = UnitGroupStructure::new(&factorize(n));
        if s.is_lambda_primitive_root(a)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Mean of N_a(x) over a <= y, against sum_{n<=x} R(n)/n.
pub fn lambda_stat(y: u64, x: u64) -> Result<StatReport> {
    Ok(lambda_stat_with_partials(y, x, false)?.0)
}

pub fn lambda_stat_with_partials(
    y: u64,
    x: u64,
    want_partials: bool,
) -> Result<(StatReport, Vec<PartialRow>)> {
    check_guard(
        x <= LAMBDA_X_CAP && y <= LAMBDA_Y_CAP && x >= 1 && y >= 1,
        format!("lambda guard: need x <= {LAMBDA_X_CAP} and y <= {LAMBDA_Y_CAP}, got (y={y}, x={x})"),
    )?;
    let t0 = Instant::now();
    let table = arith::sieve_primes(x.max(2))?;
    // Per modulus: the count of a <= y that are lambda-primitive roots
    // mod n (via residue occupancy), and the main-term summand R(n)/n.
    let rows: Vec<(u64, u64, f64)> = (1..=x)
        .into_par_iter()
        .map(|n| {
            if n == 1 {
                return (1, y, 1.0);
            }
            let s = UnitGroupStructure::new(&table.factorize(n));
            let mut hits = 0u64;
            s.for_each_unit_with_lpr_flag(|r, is_lpr| {
                if is_lpr {
                    hits += occupancy(r, n, y);
                }
            });
            let r_n = s.count_lambda_primitive_roots();
            (n, hits, r_n as f64 / n as f64)
        })
        .collect();
    let mut total_hits: u128 = 0;
    let mut main_acc = CompensatedSum::new();
    let mut partials = Vec::new();
    for &(n, hits, summand) in &rows {
        total_hits += hits as u128;
        main_acc.add(summand);
        if want_partials {
            let lhs = total_hits as f64 / y as f64;
            let main = main_acc.total();
            partials.push(PartialRow {
                at: n,
                lhs,
                main_term: main,
                ratio: (main != 0.0).then(|| lhs / main),
            });
        }
    }
    let lhs = total_hits as f64 / y as f64;
    let main = main_acc.total();
    Ok((finish("lambda_average", x, None, Some(y), lhs, main, t0), partials))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn avg_order_hand_example() {
        // x = 3, N = 2: ord_1(2)=1; a=2 is a multiple of 2 (term 0);
        // ord_1(3)=1, ord_2(3)=2. lhs = (1 + 0 + 1/2 + 1)/2 = 1.25.
        let report = avg_order_stat(2, 3).unwrap();
        assert!((report.lhs - 1.25).abs() < 1e-15);
        assert_eq!(report.tag, "avg_order");
        assert!((report.diff - (report.lhs - report.main_term)).abs() < 1e-15);
    }

    #[test]
    fn avg_order_guard() {
        assert!(avg_order_stat(10, AVG_ORDER_X_CAP + 1).unwrap_err().is_capacity());
    }

    #[test]
    fn avg_order_full_occupancy_matches_local_average() {
        // With N a multiple of p, the per-prime term is exactly
        // (p-1)/p times the local order average.
        for &p in arith::sieve_primes(100).unwrap().primes() {
            let n_limit = 60 * p;
            let term = avg_order_prime_term(p, n_limit);
            let (local, _) = local_order_average(p);
            let expect = local.as_f64() * (p - 1) as f64 / p as f64;
            assert!((term - expect).abs() < 1e-12, "p = {p}");
            assert!((term - local.as_f64()).abs() <= local.as_f64() / p as f64 + 1e-12);
        }
    }

    #[test]
    fn local_average_examples() {
        let (lhs, rhs) = local_order_average(3);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, ExactRatio::new(3, 4));
        let (lhs2, rhs2) = local_order_average(2);
        assert_eq!(lhs2, rhs2);
        assert_eq!(lhs2, ExactRatio::new(1, 1));
        let (lhs13, rhs13) = local_order_average(13);
        assert_eq!(lhs13, rhs13);
    }

    #[test]
    fn variance_hand_example() {
        // x = 3, N = 2: S(1) = 1 + 1/2, S(2) = 0 + 1.
        let m = stephens_c() * li(3.0).unwrap();
        let expect = ((1.5 - m).powi(2) + (1.0 - m).powi(2)) / 2.0;
        let report = variance_stat(2, 3).unwrap();
        assert!((report.lhs - expect).abs() < 1e-12);
    }

    #[test]
    fn variance_single_a_is_square_of_diff() {
        let x = 1000;
        let report = variance_stat(1, x).unwrap();
        // a = 1 has order 1 everywhere: S(1) = sum 1/(p-1).
        let mut s = 0.0;
        for &p in arith::sieve_primes(x).unwrap().primes() {
            s += 1.0 / (p - 1) as f64;
        }
        let m = stephens_c() * li(x as f64).unwrap();
        assert!((report.lhs - (s - m) * (s - m)).abs() < 1e-9);
    }

    #[test]
    fn primroot_hand_example() {
        // x = 7, N = 6: brute-force double loop.
        let mut total = 0u64;
        for a in 1..=6u64 {
            for &p in &[2u64, 3, 5, 7] {
                if a % p == 0 {
                    continue;
                }
                let t = order_table(p);
                if t.ord(a % p) == p - 1 {
                    total += 1;
                }
            }
        }
        let report = primitive_root_stat(6, 7).unwrap();
        assert!((report.lhs - total as f64 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn primroot_class_sizes() {
        // Per prime, the number of primitive-root residues is phi(p-1).
        for &p in arith::sieve_primes(300).unwrap().primes() {
            let t = order_table(p);
            let count = (1..p).filter(|&r| t.ord(r) == p - 1).count() as u64;
            assert_eq!(count, factorize(p - 1).phi(), "p = {p}");
        }
    }

    #[test]
    fn primroot_variance_n1() {
        // a = 1 is a primitive root only mod 2.
        let x = 100;
        let report = variance_primitive_root_stat(1, x).unwrap();
        let pi = arith::sieve_primes(x).unwrap().count() as f64;
        let expect = (1.0 - artin_a() * pi).powi(2);
        assert!((report.lhs - expect).abs() < 1e-9);
    }

    #[test]
    fn power_divisor_hand_example() {
        // x = 5, N = 2, enumerated by hand: p=2 counts \{(1,1),(2,2)\},
        // p=3 counts \{(1,1),(2,1),(2,2)\}, p=5 the same: total 8 pairs.
        let report = power_divisor_stat(2, 5).unwrap();
        assert!((report.lhs - 8.0 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn power_divisor_b_equal_one_always_counted() {
        // For b = 1 and p not dividing a, 1 is in <a>; check via the
        // per-prime pair count at N = 1: the only pair is (1,1).
        for &p in &[3u64, 5, 7, 11] {
            assert_eq!(power_divisor_prime_pairs(p, 1), 1);
        }
    }

    #[test]
    fn power_divisor_full_occupancy_closed_form() {
        // With N = p, the per-prime pair count is 1 + sum over d | p-1 of
        // phi(d) * d (each order class against its subgroup).
        for &p in arith::sieve_primes(200).unwrap().primes() {
            let pairs = power_divisor_prime_pairs(p, p);
            let closed: u128 = 1 + factorize(p - 1)
                .divisors()
                .iter()
                .map(|&d| factorize(d).phi() as u128 * d as u128)
                .sum::<u128>();
            assert_eq!(pairs, closed, "p = {p}");
        }
    }

    #[test]
    fn power_divisor_brute_force_small() {
        // Full brute force over (a, b) and p for x = 20, N = 7.
        let (x, n_limit) = (20u64, 7u64);
        let mut total = 0u64;
        for &p in arith::sieve_primes(x).unwrap().primes() {
            let t = order_table(p);
            for a in 1..=n_limit {
                for b in 1..=n_limit {
                    let (ra, rb) = (a % p, b % p);
                    let hit = if ra == 0 {
                        rb == 0
                    } else if rb == 0 {
                        false
                    } else {
                        t.ord(ra) % t.ord(rb) == 0
                    };
                    if hit {
                        total += 1;
                    }
                }
            }
        }
        let report = power_divisor_stat(n_limit, x).unwrap();
        let expect = total as f64 / (n_limit * n_limit) as f64;
        assert!((report.lhs - expect).abs() < 1e-12);
    }

    #[test]
    fn power_divisor_variance_n1() {
        let x = 50;
        let report = variance_power_divisor_stat(1, x).unwrap();
        let pi = arith::sieve_primes(x).unwrap().count() as f64;
        let m = stephens_c() * li(x as f64).unwrap();
        assert!((report.lhs - (pi - m) * (pi - m)).abs() < 1e-9);
    }

    #[test]
    fn power_divisor_variance_matches_direct_small() {
        // Cross-check the chunked accumulation against a direct per-pair
        // count at small scale.
        let (x, n_limit) = (30u64, 5u64);
        let report = variance_power_divisor_stat(n_limit, x).unwrap();
        let m = stephens_c() * li(x as f64).unwrap();
        let mut acc = 0.0;
        for a in 1..=n_limit {
            for b in 1..=n_limit {
                let mut count = 0u64;
                for &p in arith::sieve_primes(x).unwrap().primes() {
                    let t = order_table(p);
                    let (ra, rb) = (a % p, b % p);
                    let hit = if ra == 0 {
                        rb == 0
                    } else if rb == 0 {
                        false
                    } else {
                        t.ord(ra) % t.ord(rb) == 0
                    };
                    if hit {
                        count += 1;
                    }
                }
                acc += (count as f64 - m) * (count as f64 - m);
            }
        }
        let expect = acc / (n_limit * n_limit) as f64;
        assert!((report.lhs - expect).abs() < 1e-9);
    }

    #[test]
    fn lambda_stat_tiny_main_term() {
        // x = 2: R(1)/1 + R(2)/2 = 1.5.
        let (report, _) = lambda_stat_with_partials(10, 2, false).unwrap();
        assert!((report.main_term - 1.5).abs() < 1e-15);
    }

    #[test]
    fn lambda_stat_y1_counts_lambda_one_moduli() {
        // y = 1: lhs = N_1(x) = #\{n <= x : lambda(n) = 1\} = 2.
        let report = lambda_stat(1, 50).unwrap();
        assert!((report.lhs - 2.0).abs() < 1e-15);
        assert_eq!(n_a(1, 50).unwrap(), 2);
    }

    #[test]
    fn lambda_stat_matches_n_a_sum() {
        // Direct check of the double counting: sum over a <= y of N_a(x).
        let (y, x) = (20u64, 60u64);
        let mut total = 0u64;
        for a in 1..=y {
            total += n_a(a, x).unwrap();
        }
        let report = lambda_stat(y, x).unwrap();
        assert!((report.lhs - total as f64 / y as f64).abs() < 1e-12);
    }

    #[test]
    fn reports_are_deterministic() {
        let r1 = avg_order_stat(500, 2000).unwrap();
        let r2 = avg_order_stat(500, 2000).unwrap();
        assert_eq!(r1.lhs.to_bits(), r2.lhs.to_bits());
        assert_eq!(r1.main_term.to_bits(), r2.main_term.to_bits());
        let v1 = variance_stat(100, 2000).unwrap();
        let v2 = variance_stat(100, 2000).unwrap();
        assert_eq!(v1.lhs.to_bits(), v2.lhs.to_bits());
    }
}
