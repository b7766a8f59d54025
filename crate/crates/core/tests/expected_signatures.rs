use brownsig::expected::lambda_from_half_counts;
use brownsig::words::{enumerate, letter_counts, WordClass};
use brownsig::{
    brownian_expected_signature, coefficient_by_decomposition, lambda, one_step_expected_signature,
    pwl_expected_signature, Rational, Scalar, TensorSeries, Word,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn q(n: i64, d: u64) -> Rational {
    Rational::from_ratio(n, d)
}

fn int(k: u64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

fn factorial(n: u64) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k))
}

fn double_factorial_odd(i: u64) -> Rational {
    // (2i - 1)!!
    (1..=i).fold(Rational::one(), |acc, k| acc * int(2 * k - 1))
}

/// `C^w(phi^1(t))` from Gaussian moments: a straight segment has
/// `C^w = prod_j x_(i_j) / k!`, and `E[X^(2i)] = (2i - 1)!! t^i` for
/// `X ~ N(0, t)`.
fn gaussian_moment_coefficient(w: &Word, d: usize, t: &Rational) -> Rational {
    let counts = letter_counts(w, d).unwrap();
    if counts.iter().any(|c| c % 2 == 1) {
        return Rational::zero();
    }
    let moments = counts.iter().fold(Rational::one(), |acc, &c| {
        let i = (c / 2) as u64;
        acc * double_factorial_odd(i) * num_traits::pow(t.clone(), i as usize)
    });
    moments / factorial(w.len() as u64)
}

fn words_up_to(d: usize, max_len: usize) -> Vec<Word> {
    (0..=max_len)
        .flat_map(|len| (0..d.pow(len as u32)).map(move |i| Word::from_index(i, len, d)))
        .collect()
}

#[test]
fn one_step_matches_gaussian_moments() {
    for d in 2..=3 {
        for t in [q(1, 1), q(3, 7), q(5, 2)] {
            let phi1 = one_step_expected_signature(d, &t, 6).unwrap();
            for w in words_up_to(d, 6) {
                assert_eq!(phi1.coeff(&w), &gaussian_moment_coefficient(&w, d, &t), "{w}");
            }
        }
    }
}

#[test]
fn brownian_matches_closed_form() {
    for d in 2..=3 {
        let t = q(3, 2);
        let phi = brownian_expected_signature(d, &t, 8).unwrap();
        let square: std::collections::BTreeSet<Word> =
            (0..=4).flat_map(|n| enumerate(WordClass::Square, d, n).unwrap()).collect();
        for w in words_up_to(d, 8) {
            let expected = if square.contains(&w) {
                let n = w.len() / 2;
                num_traits::pow(&t / int(2), n) / factorial(n as u64)
            } else {
                Rational::zero()
            };
            assert_eq!(phi.coeff(&w), &expected, "{w}");
        }
    }
}

#[test]
fn decomposition_oracle_matches_power() {
    for d in 2..=3 {
        for t in [q(1, 1), q(3, 2)] {
            for m in 1..=4u64 {
                let phi_m = pwl_expected_signature(d, &t, m, 6).unwrap();
                for w in words_up_to(d, 6) {
                    let oracle = coefficient_by_decomposition(&w, d, &t, m).unwrap();
                    assert_eq!(phi_m.coeff(&w), &oracle, "{w}, d = {d}, M = {m}");
                }
            }
        }
    }
}

#[test]
fn two_piece_product_against_oracle() {
    let dt = q(1, 3);
    let phi1 = one_step_expected_signature(2, &dt, 4).unwrap();
    let two = phi1.product(&phi1).unwrap();
    let w: Word = "1122".parse().unwrap();
    assert_eq!(two.coeff(&w), &coefficient_by_decomposition(&w, 2, &q(2, 3), 2).unwrap());
    // whole word in either piece, or the squares split across the pieces
    let quarter = num_traits::pow(&dt / int(2), 2);
    assert_eq!(two.coeff(&w), &(quarter * (q(2, 6) + q(1, 1))));
}

#[test]
fn power_of_half_step_equals_naive_product() {
    let t = q(1, 1);
    let half = one_step_expected_signature(2, &(&t / int(2)), 6).unwrap();
    assert_eq!(half.power(2), half.product(&half).unwrap());
    assert_eq!(pwl_expected_signature(2, &t, 2, 6).unwrap(), half.product(&half).unwrap());
}

#[test]
fn level_two_equal_and_odd_levels_vanish() {
    for d in 2..=3 {
        for m in [1u64, 2, 3, 7, 16] {
            let t = q(5, 4);
            let phi = brownian_expected_signature(d, &t, 7).unwrap();
            let phi_m = pwl_expected_signature(d, &t, m, 7).unwrap();
            assert_eq!(phi.block(2), phi_m.block(2));
            for k in [1, 3, 5, 7] {
                assert!(phi.block(k).unwrap().iter().all(Zero::is_zero));
                assert!(phi_m.block(k).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}

#[test]
fn square_words_are_dominated() {
    for d in 2..=3 {
        let t = q(1, 1);
        let phi = brownian_expected_signature(d, &t, 6).unwrap();
        for m in [1u64, 2, 5, 16] {
            let phi_m = pwl_expected_signature(d, &t, m, 6).unwrap();
            for n in 1..=3 {
                for w in enumerate(WordClass::Square, d, n).unwrap() {
                    assert!(phi_m.coeff(&w) <= phi.coeff(&w), "{w}");
                }
            }
        }
    }
}

#[test]
fn level_norms_are_equal() {
    for d in 2..=3usize {
        let t = q(2, 3);
        let phi = brownian_expected_signature(d, &t, 8).unwrap();
        for m in [1u64, 3, 8, 16] {
            let phi_m = pwl_expected_signature(d, &t, m, 8).unwrap();
            for n in 0..=4usize {
                let expected = num_traits::pow(int(d as u64) * &t / int(2), n) / factorial(n as u64);
                assert_eq!(phi.projective_norm(2 * n).unwrap(), expected);
                assert_eq!(phi_m.projective_norm(2 * n).unwrap(), expected);
            }
        }
    }
}

#[test]
fn lambda_sums_to_d_to_the_n() {
    for d in 2..=3usize {
        for n in 0..=4usize {
            let total: Rational = enumerate(WordClass::Even, d, n)
                .unwrap()
                .iter()
                .map(|w| lambda(w, d).unwrap())
                .sum();
            assert_eq!(total, int(d.pow(n as u32) as u64));
        }
    }
}

#[test]
fn lambda_is_at_most_one_and_one_only_for_single_letters() {
    for d in 2..=3usize {
        for n in 1..=4usize {
            for w in enumerate(WordClass::Even, d, n).unwrap() {
                let l = lambda(&w, d).unwrap();
                assert!(l > Rational::zero() && l <= Rational::one());
                let distinct = letter_counts(&w, d).unwrap().iter().filter(|&&c| c > 0).count();
                assert_eq!(l == Rational::one(), distinct == 1, "{w}");
            }
        }
    }
    assert_eq!(lambda_from_half_counts(&[1, 1]), q(1, 3));
}

#[test]
fn square_coefficients_increase_towards_brownian() {
    let t = q(1, 1);
    let phi = brownian_expected_signature(2, &t, 6).unwrap();
    let series: Vec<TensorSeries<Rational>> = [1u64, 2, 4, 8, 16]
        .iter()
        .map(|&m| pwl_expected_signature(2, &t, m, 6).unwrap())
        .collect();
    for n in 1..=3 {
        for w in enumerate(WordClass::Square, 2, n).unwrap() {
            for pair in series.windows(2) {
                assert!(pair[0].coeff(&w) <= pair[1].coeff(&w), "{w}");
            }
            assert!(series.last().unwrap().coeff(&w) <= phi.coeff(&w));
        }
    }
    let w: Word = "1122".parse().unwrap();
    assert!(series[0].coeff(&w) < series[4].coeff(&w));
}

#[test]
fn hilbert_schmidt_norm_drops_under_interpolation() {
    let t = q(1, 1);
    let phi = brownian_expected_signature(2, &t, 4).unwrap();
    assert!((phi.hs_norm(2).unwrap() - 2f64.sqrt() / 2.0).abs() < 1e-15);
    for m in [1u64, 2, 4, 8] {
        let phi_m = pwl_expected_signature(2, &t, m, 4).unwrap();
        assert!(phi.hs_norm(4).unwrap() > phi_m.hs_norm(4).unwrap());
    }
}
