//! Writing a series to JSON and reading it back, in exact and float form.

use brownsig::{pwl_expected_signature, Rational, Scalar, TensorSeries};

fn main() -> brownsig::Result<()> {
    let phi_m = pwl_expected_signature(2, &Rational::from_ratio(3, 2), 3, 4)?;

    let text = phi_m.to_json_string()?;
    println!("{text}");
    let back = TensorSeries::<Rational>::from_json_str(&text)?;
    assert_eq!(back, phi_m);

    let approx = phi_m.to_float();
    let back = TensorSeries::<f64>::from_json_str(&approx.to_json_string()?)?;
    assert_eq!(back, approx);

    // a float document is rejected where an exact one is expected
    assert!(TensorSeries::<Rational>::from_json_str(&approx.to_json_string()?).is_err());
    Ok(())
}
