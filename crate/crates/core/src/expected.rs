//! Exact expected signatures.
//!
//! * Brownian motion on `[0, T]`: `exp((T/2) sum_j e_j e_j)`.
//! * One linear segment driven by a Gaussian increment with covariance
//!   `t I`: the coefficient of an even-count word of length `2n` is
//!   `lambda_w / n! (t/2)^n`, everything else vanishes.
//! * `M` equal segments: the `M`-th tensor power of the one-segment series
//!   at `t = T/M`, since the increments are independent.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Rational, Scalar};
use crate::tensor::TensorSeries;
use crate::word::{check_dim, Word};
use crate::words::letter_counts;
use crate::{Error, Result};

/// Longest word [`coefficient_by_decomposition`] accepts.
pub const DECOMPOSITION_MAX_LEN: usize = 8;
/// Largest piece count [`coefficient_by_decomposition`] accepts.
pub const DECOMPOSITION_MAX_PIECES: u64 = 64;

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

fn check_positive(t: &Rational, what: &str) -> Result<()> {
    if t.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} must be positive, got {t}")))
    }
}

/// `lambda` from half letter counts `(i_1, ..., i_d)`:
/// `(n; i_1..i_d) / (2n; 2i_1..2i_d)` with `n = sum i_k`.
pub fn lambda_from_half_counts(half: &[usize]) -> Rational {
    let n: usize = half.iter().sum();
    let mut num = factorial(n);
    let mut den = factorial(2 * n);
    for &i in half {
        num /= factorial(i);
        den /= factorial(2 * i);
    }
    Rational::new(num.into(), den.into())
}

/// The multinomial ratio `lambda_w` of an even-count word. It depends on `w`
/// only through its letter counts and lies in `(0, 1]`.
pub fn lambda(w: &Word, d: usize) -> Result<Rational> {
    let counts = letter_counts(w, d)?;
    if let Some(pos) = counts.iter().position(|c| c % 2 != 0) {
        return Err(Error::OddLetterCount { letter: pos as u8 + 1 });
    }
    let half: Vec<usize> = counts.iter().map(|c| c / 2).collect();
    Ok(lambda_from_half_counts(&half))
}

fn half_power(t: &Rational, n: usize) -> Rational {
    num_traits::pow(t / Rational::from_ratio(2, 1), n)
}

/// Expected signature of Brownian motion on `[0, T]`, built as the tensor
/// exponential of `(T/2) sum_j e_j e_j`.
pub fn brownian_expected_signature(d: usize, t: &Rational, level: usize) -> Result<TensorSeries<Rational>> {
    check_positive(t, "T")?;
    let half = t / Rational::from_ratio(2, 1);
    let generator = TensorSeries::from_terms(
        d,
        level.max(2),
        (1..=d as u8).map(|i| (Word::from_letters_unchecked(vec![i, i]), half.clone())),
    )?;
    let sig = generator.exp()?;
    if level < 2 {
        sig.truncate(level)
    } else {
        Ok(sig)
    }
}

/// Expected signature of a single linear segment over a time step `t`.
pub fn one_step_expected_signature(d: usize, t: &Rational, level: usize) -> Result<TensorSeries<Rational>> {
    check_dim(d)?;
    check_positive(t, "t")?;
    let mut cache: HashMap<Vec<usize>, Rational> = HashMap::new();
    let mut blocks = Vec::with_capacity(level + 1);
    for len in 0..=level {
        let size = d.pow(len as u32);
        if len % 2 == 1 {
            blocks.push(vec![Rational::zero(); size]);
            continue;
        }
        let n = len / 2;
        let scale = half_power(t, n) / Rational::from_integer(factorial(n).into());
        let mut block = Vec::with_capacity(size);
        let mut counts = vec![0usize; d];
        for idx in 0..size {
            counts.iter_mut().for_each(|c| *c = 0);
            let mut rest = idx;
            for _ in 0..len {
                counts[rest % d] += 1;
                rest /= d;
            }
            if counts.iter().any(|c| c % 2 != 0) {
                block.push(Rational::zero());
                continue;
            }
            let half: Vec<usize> = counts.iter().map(|c| c / 2).collect();
            let lam = cache
                .entry(half)
                .or_insert_with_key(|h| lambda_from_half_counts(h));
            block.push(&*lam * &scale);
        }
        blocks.push(block);
    }
    TensorSeries::from_blocks(d, blocks)
}

/// Expected signature of the `M`-piece piecewise-linear interpolation of
/// Brownian motion on `[0, T]`.
pub fn pwl_expected_signature(d: usize, t: &Rational, m: u64, level: usize) -> Result<TensorSeries<Rational>> {
    if m == 0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    check_positive(t, "T")?;
    let step = t / Rational::from_integer(m.into());
    Ok(one_step_expected_signature(d, &step, level)?.power(m))
}

fn segment_coefficient(letters: &[u8], d: usize, step: &Rational) -> Rational {
    let mut counts = vec![0usize; d];
    for &l in letters {
        counts[l as usize - 1] += 1;
    }
    if counts.iter().any(|c| c % 2 != 0) {
        return Rational::zero();
    }
    let half: Vec<usize> = counts.iter().map(|c| c / 2).collect();
    let n = letters.len() / 2;
    lambda_from_half_counts(&half) * half_power(step, n) / Rational::from_integer(factorial(n).into())
}

fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc.into())
}

/// `C^w(phi^M(T))` by summing over every ordered split `w = v_1 ... v_M`
/// into possibly empty factors, each weighted by its one-segment
/// coefficient. Splits are grouped by their nonempty factors: a split
/// into `j` nonempty factors occurs in `C(M, j)` placements.
pub fn coefficient_by_decomposition(w: &Word, d: usize, t: &Rational, m: u64) -> Result<Rational> {
    w.validate(d)?;
    check_positive(t, "T")?;
    if w.len() > DECOMPOSITION_MAX_LEN {
        return Err(Error::BoundExceeded(format!(
            "word length {} > {DECOMPOSITION_MAX_LEN}",
            w.len()
        )));
    }
    if m == 0 || m > DECOMPOSITION_MAX_PIECES {
        return Err(Error::BoundExceeded(format!("M = {m} outside 1..={DECOMPOSITION_MAX_PIECES}")));
    }
    if w.is_empty() {
        return Ok(Rational::one());
    }
    let step = t / Rational::from_integer(m.into());
    let letters = w.letters();
    let gaps = letters.len() - 1;
    let mut total = Rational::zero();
    for cuts in 0u32..(1 << gaps) {
        let pieces = cuts.count_ones() as u64 + 1;
        if pieces > m {
            continue;
        }
        let mut product = Rational::one();
        let mut start = 0;
        for end in 1..=letters.len() {
            if end == letters.len() || cuts & (1 << (end - 1)) != 0 {
                product *= segment_coefficient(&letters[start..end], d, &step);
                if product.is_zero() {
                    break;
                }
                start = end;
            }
        }
        if !product.is_zero() {
            total += product * binomial(m, pieces);
        }
    }
    Ok(total)
}

/// Parameters of an expected-signature computation. `pieces = None` means
/// Brownian motion itself.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedSignatureSpec {
    pub d: usize,
    pub horizon: Rational,
    pub pieces: Option<u64>,
    pub level: usize,
}

impl ExpectedSignatureSpec {
    pub fn brownian(d: usize, horizon: Rational, level: usize) -> Self {
        ExpectedSignatureSpec { d, horizon, pieces: None, level }
    }

    pub fn piecewise_linear(d: usize, horizon: Rational, pieces: u64, level: usize) -> Self {
        ExpectedSignatureSpec { d, horizon, pieces: Some(pieces), level }
    }

    /// `T / M`, or `None` for Brownian motion.
    pub fn mesh(&self) -> Option<Rational> {
        self.pieces
            .map(|m| &self.horizon / Rational::from_integer(m.into()))
    }

    pub fn build(&self) -> Result<TensorSeries<Rational>> {
        match self.pieces {
            None => brownian_expected_signature(self.d, &self.horizon, self.level),
            Some(m) => pwl_expected_signature(self.d, &self.horizon, m, self.level),
        }
    }
}
