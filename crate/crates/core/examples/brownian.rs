//! Expected signature of Brownian motion up to level 4.
//!
//! `cargo run --example brownian -- 3 3/2`

use brownsig::{brownian_expected_signature, parse_rational};

fn main() -> brownsig::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: usize = args.next().map_or(2, |s| s.parse().expect("d"));
    let t = parse_rational(&args.next().unwrap_or_else(|| "1".into()))?;

    let phi = brownian_expected_signature(d, &t, 4)?;
    for (word, c) in phi.terms() {
        println!("{:>6}  {c}", if word.is_empty() { "()".to_string() } else { word.to_string() });
    }
    Ok(())
}
