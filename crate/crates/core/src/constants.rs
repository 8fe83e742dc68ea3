//! Euler-product constants with certified tail bounds, the logarithmic
//! integral, and the exponent functions f1/f2 whose roots fix the admissible
//! growth rates in the averaged order statistics.

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::util::CompensatedSum;

/// A real value carrying a rigorous error bound. For Euler products the
/// bound covers the omitted tail beyond `cutoff`; for roots it is the final
/// bracket half-width (and `cutoff` is absent).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConstantValue {
    pub value: f64,
    pub error_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u64>,
}

/// Partial Euler product over primes <= cutoff, as the exponential of a
/// compensated sum of logs, with `log_tail_bound` a proven upper bound on
/// the omitted |sum of log factors|.
fn euler_product(
    cutoff: u64,
    factor: impl Fn(u64) -> f64,
    log_tail_bound: f64,
) -> Result<ConstantValue> {
    let primes = arith::sieve_primes(cutoff.max(2))?;
    let mut log_sum = CompensatedSum::new();
    for &p in primes.primes() {
        log_sum.add(factor(p).ln());
    }
    let value = log_sum.total().exp();
    // All omitted factors lie in [exp(-log_tail_bound), 1], so the true
    // value sits in [value * exp(-bound), value].
    let error_bound = value * (1.0 - (-log_tail_bound).exp());
    Ok(ConstantValue {
        value,
        error_bound,
        cutoff: Some(cutoff),
    })
}

/// prod over primes of (1 - p/(p^3 - 1)).
///
/// Tail: each term satisfies p/(p^3-1) < 2/p^2, so the omitted log-sum is
/// below 2 * sum_{n > cutoff} 2/n^2 < 4/cutoff (using -ln(1-t) <= 2t for
/// t <= 1/2).
pub fn stephens_constant(cutoff: u64) -> Result<ConstantValue> {
    if cutoff < 2 {
        return Err(Error::domain("Euler product cutoff must be >= 2".to_string()));
    }
    euler_product(
        cutoff,
        |p| {
            let p = p as f64;
            1.0 - p / (p * p * p - 1.0)
        },
        4.0 / cutoff as f64,
    )
}

/// prod over primes of (1 - 1/(p(p-1))).
///
/// Tail: sum_{p > cutoff} 1/(p(p-1)) < sum_{n > cutoff} 1/(n(n-1)) =
/// 1/cutoff < 1/(cutoff-1); doubled for the log as above.
pub fn artin_constant(cutoff: u64) -> Result<ConstantValue> {
    if cutoff < 2 {
        return Err(Error::domain("Euler product cutoff must be >= 2".to_string()));
    }
    euler_product(
        cutoff,
        |p| {
            let p = p as f64;
            1.0 - 1.0 / (p * (p - 1.0))
        },
        2.0 / (cutoff as f64 - 1.0),
    )
}

fn integrand(t: f64) -> f64 {
    1.0 / t.ln()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = integrand(lm);
    let frm = integrand(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
        + adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
}

/// Logarithmic integral with the offset-at-2 convention:
/// Li(x) = integral from 2 to x of dt/ln t, by adaptive Simpson quadrature
/// with absolute error target 1e-9 * (1 + |result|).
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::domain(format!("Li(x) needs x >= 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let (a, b) = (2.0, x);
    let fa = integrand(a);
    let fb = integrand(b);
    let fm = integrand(0.5 * (a + b));
    let whole = simpson(a, b, fa, fm, fb);
    // Scale the tolerance by a first coarse estimate of the result.
    let eps = 1e-9 * (1.0 + whole.abs());
    Ok(adaptive_simpson(a, b, fa, fm, fb, whole, eps, 48))
}

/// f1(K) = -K/4 + (1/K) ln(1 + 2/K^2) - (ln 2)/K + 1/K + 2 ln K / K.
pub fn f1(k: f64) -> Result<f64> {
    if k <= 0.0 {
        return Err(Error::domain(format!("f1 needs K > 0, got {k}")));
    }
    Ok(-k / 4.0 + (1.0 + 2.0 / (k * k)).ln() / k - 2f64.ln() / k + 1.0 / k + 2.0 * k.ln() / k)
}

/// f2(K) = -K/4 + (2/K) ln(1 + 4/K^2) - (2/K) ln 4 + 2/K + 4 ln K / K.
pub fn f2(k: f64) -> Result<f64> {
    if k <= 0.0 {
        return Err(Error::domain(format!("f2 needs K > 0, got {k}")));
    }
    Ok(-k / 4.0 + 2.0 * (1.0 + 4.0 / (k * k)).ln() / k - 2.0 * 4f64.ln() / k + 2.0 / k
        + 4.0 * k.ln() / k)
}

/// The closed simplification of f1(K) + K/4: (1/K)(ln(K^2/2 + 1) + 1).
/// Strictly decreasing for K > 0.
pub fn f1_plus_quarter(k: f64) -> Result<f64> {
    if k <= 0.0 {
        return Err(Error::domain(format!("needs K > 0, got {k}")));
    }
    Ok(((k * k / 2.0 + 1.0).ln() + 1.0) / k)
}

/// The three functions whose positive roots are extracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootTarget {
    /// f1(K)
    F1,
    /// f2(K)
    F2,
    /// -3K/16 + f1(K) + K/4
    F1Shifted,
}

impl RootTarget {
    pub fn eval(self, k: f64) -> Result<f64> {
        match self {
            RootTarget::F1 => f1(k),
            RootTarget::F2 => f2(k),
            RootTarget::F1Shifted => Ok(f1_plus_quarter(k)? - 3.0 * k / 16.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RootTarget::F1 => "f1_zero",
            RootTarget::F2 => "f2_zero",
            RootTarget::F1Shifted => "f1_shifted_zero",
        }
    }
}

/// Bisection on [lo, hi] down to an interval of length <= tol; returns the
/// midpoint with the half-width as the error bound. The bracket must change
/// sign.
pub fn solve_root(target: RootTarget, lo: f64, hi: f64, tol: f64) -> Result<ConstantValue> {
    if !(tol > 0.0) || !(lo < hi) {
        return Err(Error::domain("bisection needs lo < hi and tol > 0".to_string()));
    }
    let mut a = lo;
    let mut b = hi;
    let fa = target.eval(a)?;
    let fb = target.eval(b)?;
    if fa == 0.0 {
        return Ok(ConstantValue { value: a, error_bound: 0.0, cutoff: None });
    }
    if fb == 0.0 {
        return Ok(ConstantValue { value: b, error_bound: 0.0, cutoff: None });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::domain(format!(
            "no sign change on [{lo}, {hi}] for {}",
            target.name()
        )));
    }
    let mut fa = fa;
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break; // interval at floating-point resolution
        }
        let fm = target.eval(m)?;
        if fm == 0.0 {
            return Ok(ConstantValue { value: m, error_bound: 0.0, cutoff: None });
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(ConstantValue {
        value: 0.5 * (a + b),
        error_bound: 0.5 * (b - a),
        cutoff: None,
    })
}

/// Standard brackets for the three roots; each pair straddles exactly one
/// sign change.
pub fn root_bracket(target: RootTarget) -> (f64, f64) {
    match target {
        RootTarget::F1 => (3.0, 4.0),
        RootTarget::F2 => (4.0, 5.5),
        RootTarget::F1Shifted => (3.5, 5.0),
    }
}

/// All three roots at the given tolerance.
pub fn standard_roots(tol: f64) -> Result<[(RootTarget, ConstantValue); 3]> {
    let mut out = Vec::with_capacity(3);
    for target in [RootTarget::F1, RootTarget::F1Shifted, RootTarget::F2] {
        let (lo, hi) = root_bracket(target);
        out.push((target, solve_root(target, lo, hi, tol)?));
    }
    Ok(out.try_into().expect("exactly three roots"))
}

/// One evaluated sign condition.
#[derive(Debug, Clone, Serialize)]
pub struct SignCondition {
    pub name: String,
    pub value: f64,
    pub satisfied: bool,
}

/// The four negativity conditions the growth-rate thresholds rest on.
pub fn sign_conditions() -> Vec<SignCondition> {
    let f1_342 = f1(3.42).unwrap();
    let f2_48365 = f2(4.8365).unwrap();
    let shifted_42 = -3.0 / 16.0 * 4.2 + f1(4.18).unwrap() + 4.18 / 4.0;
    let near_root = -3.419907 / 4.0 + f1(3.419906).unwrap() + 3.419906 / 4.0;
    let make = |name: &str, value: f64| SignCondition {
        name: name.to_string(),
        value,
        satisfied: value < 0.0,
    };
    vec![
        make("f1(3.42) < 0", f1_342),
        make("f2(4.8365) < 0", f2_48365),
        make("-(3/16)*4.2 + f1(4.18) + 4.18/4 < 0", shifted_42),
        make("-3.419907/4 + f1(3.419906) + 3.419906/4 < 0", near_root),
    ]
}
