//! The weight lambda_w for every even word of length 2n, and the resulting
//! one-segment coefficients.

use brownsig::expected::{lambda, one_step_expected_signature};
use brownsig::words::{enumerate, WordClass};
use brownsig::{Rational, Scalar};

fn main() -> brownsig::Result<()> {
    let (d, n) = (2, 3);
    let t = Rational::from_ratio(1, 1);
    let phi1 = one_step_expected_signature(d, &t, 2 * n)?;

    let mut total = Rational::from_ratio(0, 1);
    for w in enumerate(WordClass::Even, d, n)? {
        let l = lambda(&w, d)?;
        println!("{w}  lambda = {l:<6}  C = {}", phi1.coeff(&w));
        total += l;
    }
    // the weights sum to d^n
    println!("sum of lambda = {total}");
    Ok(())
}
