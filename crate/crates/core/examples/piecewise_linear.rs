//! Piecewise-linear expected signature against the split-sum oracle and the
//! Brownian limit.

use brownsig::expected::coefficient_by_decomposition;
use brownsig::{brownian_expected_signature, pwl_expected_signature, Rational, Scalar, Word};

fn main() -> brownsig::Result<()> {
    let d = 2;
    let t = Rational::from_ratio(1, 1);
    let phi = brownian_expected_signature(d, &t, 4)?;
    let words: Vec<Word> = ["11", "1122", "1111", "1212", "1221"].iter().map(|s| s.parse().unwrap()).collect();

    println!("{:>3}  {:>6}  {:>10}  {:>10}  {:>10}", "M", "word", "power", "oracle", "Brownian");
    for m in [1u64, 2, 4, 8] {
        let phi_m = pwl_expected_signature(d, &t, m, 4)?;
        for w in &words {
            let oracle = coefficient_by_decomposition(w, d, &t, m)?;
            assert_eq!(&oracle, phi_m.coeff(w));
            println!("{m:>3}  {:>6}  {:>10}  {:>10}  {:>10}", w.to_string(), phi_m.coeff(w).to_string(), oracle.to_string(), phi.coeff(w).to_string());
        }
    }
    Ok(())
}
