//! One-tenth-scale pilots for the statistical acceptance windows.
//!
//! Ignored by default; run with `cargo test -p orderstats --test pilot --
//! --ignored --nocapture` to print the observed ratios before touching any
//! frozen window.

use orderstats::statistics::{
    avg_order_stat, lambda_stat, power_divisor_stat, primitive_root_stat, variance_power_divisor_stat,
    variance_primitive_root_stat, variance_stat,
};

#[test]
#[ignore]
fn pilot_ratio_report() {
    let avg = avg_order_stat(1_000, 10_000).unwrap();
    println!(
        "avg_order      (N=1e3, x=1e4): lhs = {:.4}, main = {:.4}, ratio = {:.6}",
        avg.lhs,
        avg.main_term,
        avg.ratio.unwrap()
    );
    let pr = primitive_root_stat(1_000, 10_000).unwrap();
    println!(
        "primitive_root (N=1e3, x=1e4): lhs = {:.4}, main = {:.4}, ratio = {:.6}",
        pr.lhs,
        pr.main_term,
        pr.ratio.unwrap()
    );
    let dv = power_divisor_stat(1_000, 10_000).unwrap();
    println!(
        "power_divisor  (N=1e3, x=1e4): lhs = {:.4}, main = {:.4}, ratio = {:.6}",
        dv.lhs,
        dv.main_term,
        dv.ratio.unwrap()
    );
    let lm = lambda_stat(1_000, 2_000).unwrap();
    println!(
        "lambda_average (y=1e3, x=2e3): lhs = {:.4}, main = {:.4}, ratio = {:.6}",
        lm.lhs,
        lm.main_term,
        lm.ratio.unwrap()
    );
    let var = variance_stat(1_000, 10_000).unwrap();
    println!(
        "variance_order (N=1e3, x=1e4): lhs = {:.4}, normalized = {:.6}",
        var.lhs,
        var.ratio.unwrap()
    );
    let prv = variance_primitive_root_stat(1_000, 10_000).unwrap();
    println!(
        "variance_pr    (N=1e3, x=1e4): lhs = {:.4}, normalized = {:.6}",
        prv.lhs,
        prv.ratio.unwrap()
    );
    let dvv = variance_power_divisor_stat(100, 2_000).unwrap();
    println!(
        "variance_div   (N=100, x=2e3): lhs = {:.4}, normalized = {:.6}",
        dvv.lhs,
        dvv.ratio.unwrap()
    );
}
