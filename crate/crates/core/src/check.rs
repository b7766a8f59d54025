//! Built-in exact identity suite behind `esig check`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::expected::{brownian_expected_signature, pwl_expected_signature};
use crate::rate::{diff_norm_of, limit_constant, symmetry_sides};
use crate::scalar::{format_rational, Rational};
use crate::word::Word;
use crate::words::is_square;
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub m: u64,
    pub passed: bool,
    pub detail: String,
}

fn int(k: u64) -> Rational {
    Rational::from_integer(k.into())
}

/// `(1/n!) (dT/2)^n`
pub fn level_norm(d: usize, n: usize, t: &Rational) -> Rational {
    let fact = (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k);
    num_traits::pow(int(d as u64) * t / int(2), n) / Rational::from_integer(fact.into())
}

/// Runs every exact identity for levels up to `2n` and each `M`.
pub fn run_identity_checks(d: usize, n: usize, t: &Rational, ms: &[u64]) -> Result<Vec<CheckOutcome>> {
    let n = n.max(2);
    let level = 2 * n;
    let phi = brownian_expected_signature(d, t, level)?;
    let mut out = Vec::new();
    for &m in ms {
        let phi_m = pwl_expected_signature(d, t, m, level)?;
        let mut push = |name: &'static str, passed: bool, detail: String| {
            out.push(CheckOutcome { name, m, passed, detail });
        };

        push(
            "level-2 blocks agree",
            phi.block(2) == phi_m.block(2),
            String::new(),
        );

        let odd_clean = (1..=level).step_by(2).all(|k| {
            phi.block(k).unwrap().iter().all(Zero::is_zero)
                && phi_m.block(k).unwrap().iter().all(Zero::is_zero)
        });
        push("odd levels vanish", odd_clean, format!("levels 1..={level}"));

        for k in 1..=n {
            let expected = level_norm(d, k, t);
            let a = phi.projective_norm(2 * k)?;
            let b = phi_m.projective_norm(2 * k)?;
            push(
                "level norms agree",
                a == expected && b == expected,
                format!("level {}: {} / {} / {}", 2 * k, format_rational(&a), format_rational(&b), format_rational(&expected)),
            );
        }

        for k in 2..=n {
            let (lhs, rhs) = symmetry_sides(&phi, &phi_m, k)?;
            push(
                "symmetry identity",
                lhs == rhs,
                format!("level {}: {} vs {}", 2 * k, format_rational(&lhs), format_rational(&rhs)),
            );
        }

        let dominated = (1..=n).all(|k| {
            let (a, b) = (phi.block(2 * k).unwrap(), phi_m.block(2 * k).unwrap());
            (0..a.len()).all(|i| !is_square(&Word::from_index(i, 2 * k, d)) || b[i] <= a[i])
        });
        push("square words dominated", dominated, String::new());

        let scaled = diff_norm_of(&phi, &phi_m, 2)? * int(m) / t;
        let limit = limit_constant(d, 2, t)?;
        push(
            "level-4 rate is exact",
            scaled == limit,
            format!("{} vs {}", format_rational(&scaled), format_rational(&limit)),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn all_identities_hold() {
        let t = Rational::from_ratio(3, 2);
        let outcomes = run_identity_checks(2, 3, &t, &[1, 3, 8]).unwrap();
        assert!(!outcomes.is_empty());
        for o in &outcomes {
            assert!(o.passed, "{} failed at M = {}: {}", o.name, o.m, o.detail);
        }
    }

    #[test]
    fn level_norm_values() {
        assert_eq!(level_norm(2, 1, &Rational::one()), Rational::one());
        assert_eq!(level_norm(2, 2, &Rational::one()), Rational::from_ratio(1, 2));
    }
}
