//! Monte Carlo estimate of the piecewise-linear expected signature compared
//! with the exact values.
//!
//! `cargo run --release --example monte_carlo -- 200000 7`  (samples, seed)

use brownsig::monte_carlo::estimate_expected_signature;
use brownsig::{Rational, Scalar};

fn main() -> brownsig::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples: usize = args.next().map_or(50_000, |s| s.parse().expect("samples"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed"));

    let est = estimate_expected_signature(2, &Rational::from_ratio(1, 1), 2, 4, samples, seed)?;
    println!("{:>6}  {:>8}  {:>10}  {:>9}  {:>6}", "word", "exact", "mean", "stderr", "z");
    for e in est.entries().iter().filter(|e| e.exact_f64 != 0.0 && !e.word.is_empty()) {
        println!(
            "{:>6}  {:>8}  {:>10.6}  {:>9.6}  {:>6.2}",
            e.word,
            e.exact,
            e.mean,
            e.stderr,
            e.zscore.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
