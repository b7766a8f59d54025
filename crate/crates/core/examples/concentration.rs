//! How the level-2n gap on square words splits between the leading words
//! and the rest.

use brownsig::rate::{concentration_report, leading_sum_asymptote};
use brownsig::{Rational, Scalar};

fn main() -> brownsig::Result<()> {
    let (d, n) = (2, 3);
    let t = Rational::from_ratio(1, 1);
    for m in [4u64, 8, 16, 32, 64] {
        let r = concentration_report(d, n, &t, m, 2 * n)?;
        let m2 = Rational::from_integer((m * m).into());
        println!(
            "M={m:<3} gap={:.6} leading={:.6} (first order {:.6}) remainder*M^2={:.5} fraction={:.4}",
            r.square_gap.to_f64(),
            r.leading_sum.to_f64(),
            leading_sum_asymptote(d, n, &t, m)?.to_f64(),
            (&r.remainder_sum * m2).to_f64(),
            r.concentration_fraction().to_f64(),
        );
    }
    let r = concentration_report(d, n, &t, 8, 2 * n)?;
    println!("{}", serde_json::to_string_pretty(&r.to_doc()?).unwrap());
    Ok(())
}
