//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Run with `cargo test -p orderstats-cli --test acceptance --
//! --nocapture` to see every line.

use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use orderstats::arith::{factorize, gcd, mod_mul, sieve_primes};
use orderstats::characters::{c_w, c_w_principal_exact, s10, s4, CharacterGroup};
use orderstats::constants::{
    artin_constant, f1, f1_plus_quarter, sign_conditions, standard_roots, stephens_constant,
};
use orderstats::divisors::{sum_tau_r, tau_prime_square_sum, tau_r};
use orderstats::orders::{order_table, UnitGroupStructure};
use orderstats::statistics::{
    avg_order_stat, lambda_stat, local_order_average, power_divisor_stat, primitive_root_stat,
};

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orderstats"))
}

#[test]
fn c01_roots_reproduce_reference_digits_under_1s() {
    let t0 = Instant::now();
    let out = bin()
        .args(["roots", "--tol", "1e-12", "--no-meta"])
        .output()
        .expect("spawn orderstats");
    let elapsed = t0.elapsed();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let roots = doc["results"]["roots"].as_array().unwrap();
    let expected = [
        ("f1_zero", 3.41990570065660),
        ("f1_shifted_zero", 4.17980309602625),
        ("f2_zero", 4.83647702390563),
    ];
    let mut max_err: f64 = 0.0;
    for (entry, (name, reference)) in roots.iter().zip(expected) {
        assert_eq!(entry["name"].as_str().unwrap(), name);
        let err = (entry["value"].as_f64().unwrap() - reference).abs();
        max_err = max_err.max(err);
    }
    verdict(
        "01 (roots)",
        max_err <= 1e-9 && elapsed.as_secs_f64() < 1.0,
        &format!("max |root - reference| = {max_err:.3e}, runtime = {elapsed:?} (< 1 s)"),
    );
}

#[test]
fn c02_sign_conditions_hold() {
    let conditions = sign_conditions();
    let all = conditions.iter().all(|c| c.satisfied);
    let detail: Vec<String> = conditions
        .iter()
        .map(|c| format!("{} = {:.3e}", c.name, c.value))
        .collect();
    verdict("02 (sign conditions)", conditions.len() == 4 && all, &detail.join("; "));
}

#[test]
fn c03_simplification_identity_and_monotonicity() {
    let mut max_gap: f64 = 0.0;
    let mut prev = f64::INFINITY;
    let mut monotone = true;
    for i in 0..200 {
        let k = 0.5 + i as f64 * (50.0 - 0.5) / 199.0;
        let direct = f1(k).unwrap() + k / 4.0;
        let simplified = f1_plus_quarter(k).unwrap();
        max_gap = max_gap.max((direct - simplified).abs());
        if simplified >= prev {
            monotone = false;
        }
        prev = simplified;
    }
    verdict(
        "03 (simplification identity)",
        max_gap <= 1e-12 && monotone,
        &format!("max |f1(K)+K/4 - (ln(K^2/2+1)+1)/K| = {max_gap:.3e} on 200-point grid, strictly decreasing = {monotone}"),
    );
}

#[test]
fn c04_euler_products_within_bounds_of_refined_oracle() {
    let t0 = Instant::now();
    let c6 = stephens_constant(1_000_000).unwrap();
    let c7 = stephens_constant(10_000_000).unwrap();
    let a6 = artin_constant(1_000_000).unwrap();
    let a7 = artin_constant(10_000_000).unwrap();
    let elapsed = t0.elapsed();
    let c_ok = (c6.value - c7.value).abs() <= c6.error_bound;
    let a_ok = (a6.value - a7.value).abs() <= a6.error_bound;
    verdict(
        "04 (Euler products)",
        c_ok && a_ok && elapsed.as_secs() < 30,
        &format!(
            "|C(1e6)-C(1e7)| = {:.3e} <= {:.3e}; |A(1e6)-A(1e7)| = {:.3e} <= {:.3e}; runtime = {elapsed:?} (< 30 s)",
            (c6.value - c7.value).abs(),
            c6.error_bound,
            (a6.value - a7.value).abs(),
            a6.error_bound
        ),
    );
}

#[test]
fn c05_exact_identity_suites() {
    // Local order average as exact rationals, p <= 1e4.
    let primes4 = sieve_primes(10_000).unwrap();
    let avg_bad: u64 = primes4
        .primes()
        .par_iter()
        .map(|&p| {
            let (lhs, rhs) = local_order_average(p);
            u64::from(lhs != rhs)
        })
        .sum();
    // Order-class counts, p <= 1e3.
    let class_bad: u64 = sieve_primes(1000)
        .unwrap()
        .primes()
        .par_iter()
        .map(|&p| {
            let table = order_table(p);
            let mut bad = 0u64;
            for d in factorize(p - 1).divisors() {
                let count = (1..p).filter(|&r| table.ord(r) == d).count() as u64;
                if count != factorize(d).phi() {
                    bad += 1;
                }
            }
            bad
        })
        .sum();
    // Totient divisor sum, n <= 1e5.
    let limit = 100_000u64;
    let table = sieve_primes(limit).unwrap();
    let mut phi = vec![0u64; limit as usize + 1];
    phi[1] = 1;
    for n in 2..=limit {
        let p = table.smallest_prime_factor(n);
        let m = n / p;
        phi[n as usize] = phi[m as usize] * if m % p == 0 { p } else { p - 1 };
    }
    let phi_ref = &phi;
    let tot_bad: u64 = (1..=limit)
        .into_par_iter()
        .map(|n| {
            let s: u64 = table
                .factorize(n)
                .divisors()
                .iter()
                .map(|&d| phi_ref[d as usize])
                .sum();
            u64::from(s != n)
        })
        .sum();
    verdict(
        "05 (exact identities)",
        avg_bad == 0 && class_bad == 0 && tot_bad == 0,
        &format!(
            "local-average mismatches = {avg_bad} (p <= 1e4), order-class mismatches = {class_bad} (p <= 1e3), totient-sum mismatches = {tot_bad} (n <= 1e5)"
        ),
    );
}

#[test]
fn c06_r_n_matches_brute_force_to_5000_under_60s() {
    let t0 = Instant::now();
    let bad: u64 = (1u64..=5000)
        .into_par_iter()
        .map(|n| {
            let s = UnitGroupStructure::new(&factorize(n));
            if n <= 2 {
                return u64::from(s.count_lambda_primitive_roots() != 1);
            }
            let mut lambda = 1u64;
            let mut orders = Vec::new();
            for a in (1..n).filter(|&a| gcd(a, n) == 1) {
                let mut x = a;
                let mut e = 1u64;
                while x != 1 {
                    x = mod_mul(x, a, n);
                    e += 1;
                }
                lambda = lambda.max(e);
                orders.push(e);
            }
            let brute = orders.iter().filter(|&&o| o == lambda).count() as u64;
            u64::from(brute != s.count_lambda_primitive_roots() || lambda != s.lambda())
        })
        .sum();
    let elapsed = t0.elapsed();
    verdict(
        "06 (R(n) product formula)",
        bad == 0 && elapsed.as_secs() < 60,
        &format!("mismatches = {bad} over n <= 5000, runtime = {elapsed:?} (< 60 s)"),
    );
}

#[test]
fn c07_character_suite() {
    const EPS: f64 = 1e-10;
    // Multiplicativity: exhaustive pairs for n <= 100, fixed samples to 500.
    let mult_bad: u64 = (2u64..=500)
        .into_par_iter()
        .map(|n| {
            let group = CharacterGroup::new(n).unwrap();
            let units: Vec<u64> = (1..n).filter(|&a| gcd(a, n) == 1).collect();
            let pairs: Vec<(u64, u64)> = if n <= 100 {
                units
                    .iter()
                    .flat_map(|&a| units.iter().map(move |&b| (a, b)))
                    .collect()
            } else {
                let mut state = 0x9e3779b97f4a7c15u64 ^ n;
                let mut next = || {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    (state >> 33) as usize
                };
                (0..24)
                    .map(|_| (units[next() % units.len()], units[next() % units.len()]))
                    .collect()
            };
            let mut bad = 0u64;
            for chi in group.characters() {
                for &(a, b) in &pairs {
                    if (chi.eval(a * b % n) - chi.eval(a) * chi.eval(b)).norm() >= EPS {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();
    // Orthogonality reconstruction of order-class indicators, p <= 100.
    let mut orth_bad = 0u64;
    for &p in sieve_primes(100).unwrap().primes() {
        let group = CharacterGroup::new(p).unwrap();
        let table = order_table(p);
        let chars: Vec<_> = group.characters().collect();
        for w in factorize(p - 1).divisors() {
            let coeffs: Vec<Complex64> =
                chars.iter().map(|chi| c_w(chi, &table, w).unwrap()).collect();
            for a in 1..p {
                let mut s = Complex64::new(0.0, 0.0);
                for (chi, c) in chars.iter().zip(&coeffs) {
                    s += c * chi.eval(a).conj();
                }
                let expect = if table.ord(a) == (p - 1) / w { 1.0 } else { 0.0 };
                if (s - Complex64::new(expect, 0.0)).norm() >= EPS {
                    orth_bad += 1;
                }
            }
        }
    }
    // Exact rational c_w at the principal character, p <= 500.
    let mut cw_bad = 0u64;
    for &p in sieve_primes(500).unwrap().primes() {
        let fact = factorize(p - 1);
        for w in fact.divisors() {
            let (num, den) = c_w_principal_exact(&fact, w).unwrap();
            let phi = factorize((p - 1) / w).phi();
            let g = gcd(phi, p - 1);
            if (num, den) != (phi / g, (p - 1) / g) {
                cw_bad += 1;
            }
        }
    }
    // |c(chi)| <= c_bar(chi) for all characters mod all n <= 2000.
    let cbar_bad: u64 = (2u64..=2000)
        .into_par_iter()
        .map(|n| {
            let group = CharacterGroup::new(n).unwrap();
            group
                .characters()
                .filter(|chi| chi.lpr_mean().norm() > chi.lpr_mean_bound() + 1e-12)
                .count() as u64
        })
        .sum();
    verdict(
        "07 (character suite)",
        mult_bad == 0 && orth_bad == 0 && cw_bad == 0 && cbar_bad == 0,
        &format!(
            "multiplicativity failures = {mult_bad}, orthogonality failures = {orth_bad}, c_w(principal) failures = {cw_bad}, |c| <= c_bar failures = {cbar_bad}"
        ),
    );
}

#[test]
fn c08_character_sums_match_naive_oracles() {
    // Naive S4 oracle at (100, 50): direct double loop through eval.
    let mut s4_naive = 0.0;
    for &p in sieve_primes(100).unwrap().primes() {
        if p == 2 {
            continue;
        }
        let group = CharacterGroup::new(p).unwrap();
        for chi in group.characters() {
            if chi.is_principal() {
                continue;
            }
            let mut inner = Complex64::new(0.0, 0.0);
            for a in 1..=50u64 {
                inner += chi.eval(a);
            }
            s4_naive += inner.norm() / chi.order() as f64;
        }
    }
    let s4_fast = s4(100, 50).unwrap();
    let s4_rel = (s4_fast - s4_naive).abs() / s4_naive.abs();

    // Naive S10 oracle at (50, 100): whole character group mod pq.
    let primes: Vec<u64> = sieve_primes(50).unwrap().primes().to_vec();
    let mut s10_naive = 0.0;
    for &p in &primes {
        for &q in &primes {
            if p == q || p == 2 || q == 2 {
                continue;
            }
            let group = CharacterGroup::new(p * q).unwrap();
            for chi in group.characters() {
                if chi.exponents().iter().any(|&t| t == 0) {
                    continue;
                }
                let mut inner = Complex64::new(0.0, 0.0);
                for a in 1..=100u64 {
                    inner += chi.eval(a);
                }
                s10_naive += inner.norm() / chi.order() as f64;
            }
        }
    }
    let s10_fast = s10(50, 100).unwrap();
    let s10_rel = (s10_fast - s10_naive).abs() / s10_naive.abs();
    verdict(
        "08 (S4/S10 oracles)",
        s4_rel <= 1e-9 && s10_rel <= 1e-9,
        &format!("S4(100,50) rel err = {s4_rel:.3e}, S10(50,100) rel err = {s10_rel:.3e}"),
    );
}

#[test]
fn c09_divisor_bounds() {
    let mut grid_ok = true;
    for n_limit in [10u64, 100, 1000, 10_000] {
        for r in 1..=6u32 {
            grid_ok &= sum_tau_r(n_limit, r).unwrap().holds;
        }
    }
    let mut square_ok = true;
    for n_limit in 1..=40u64 {
        square_ok &= tau_prime_square_sum(n_limit, 2).unwrap().holds;
    }
    for n_limit in 1..=15u64 {
        square_ok &= tau_prime_square_sum(n_limit, 3).unwrap().holds;
    }
    let tau2_sum = sum_tau_r(10, 2).unwrap().lhs;
    let tau2_direct: u64 = (1..=10u64).map(|a| tau_r(&factorize(a), 2)).sum();
    verdict(
        "09 (divisor bounds)",
        grid_ok && square_ok && tau2_sum == 27 && tau2_direct == 27,
        &format!(
            "bound grid holds = {grid_ok}, square-sum bounds hold = {square_ok}, sum tau_2(a <= 10) = {tau2_sum} (expect 27)"
        ),
    );
}

#[test]
fn c10_statistical_convergence_windows() {
    let runs: [(&str, Box<dyn Fn() -> orderstats::Result<orderstats::statistics::StatReport>>); 4] = [
        ("avg-order (N=1e4, x=1e5)", Box::new(|| avg_order_stat(10_000, 100_000))),
        ("primroot-avg (N=1e4, x=1e5)", Box::new(|| primitive_root_stat(10_000, 100_000))),
        ("divides (N=1e4, x=1e5)", Box::new(|| power_divisor_stat(10_000, 100_000))),
        ("lambda-avg (y=1e4, x=2e4)", Box::new(|| lambda_stat(10_000, 20_000))),
    ];
    let mut all = true;
    let mut details = Vec::new();
    for (name, run) in &runs {
        let t0 = Instant::now();
        let report = run().unwrap();
        let elapsed = t0.elapsed();
        let ratio = report.ratio.unwrap();
        let ok = (0.9..=1.1).contains(&ratio) && elapsed.as_secs() < 600;
        all &= ok;
        details.push(format!("{name}: ratio = {ratio:.6} in [0.9, 1.1], {elapsed:?}"));
    }
    verdict("10 (statistical windows)", all, &details.join("; "));
}

#[test]
fn c11_byte_identical_reports() {
    let cases: [&[&str]; 3] = [
        &["roots", "--tol", "1e-11", "--no-meta"],
        &["avg-order", "--x", "2000", "--N", "100", "--no-meta"],
        &["tau-check", "--grid", "--no-meta", "--format", "csv"],
    ];
    let mut all = true;
    for args in cases {
        let a = bin().args(args).output().unwrap();
        let b = bin().args(args).output().unwrap();
        assert!(a.status.success() && b.status.success());
        all &= a.stdout == b.stdout && !a.stdout.is_empty();
    }
    verdict(
        "11 (determinism)",
        all,
        "repeated runs of roots / avg-order / tau-check produced identical bytes with --no-meta",
    );
}
