//! Convergence of the scaled level-2n gap towards its limit.
//!
//! `cargo run --release --example rate_table -- 3 3`  (d, n)

use brownsig::rate::{limit_constant, rate_table};
use brownsig::{Rational, Scalar};

fn main() -> brownsig::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: usize = args.next().map_or(2, |s| s.parse().expect("d"));
    let n: usize = args.next().map_or(3, |s| s.parse().expect("n"));
    let t = Rational::from_ratio(1, 1);

    let limit = limit_constant(d, n, &t)?;
    println!("d={d} n={n} T=1, limit {limit} ({:.6})", limit.to_f64());
    let ms = [1, 2, 4, 8, 16, 32, 64];
    let mut prev: Option<f64> = None;
    for row in rate_table(d, n, &t, &ms, 2 * n)? {
        let err = row.abs_error.to_f64();
        let ratio = prev.map_or(String::new(), |p| format!("  x{:.3}", p / err));
        println!("M={:<3} scaled={:.8} err={err:.3e}{ratio}", row.m, row.scaled.to_f64());
        prev = Some(err);
    }
    Ok(())
}
