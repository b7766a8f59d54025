//! Projective-norm gap between `phi(T)` and `phi^M(T)` at level `2n`, its
//! split over word classes, and its first-order decay in `1/M`.
//!
//! Everything here is exact; rendering to CSV/JSON adds `f64` columns next
//! to the `"p/q"` values.

use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::expected::{brownian_expected_signature, pwl_expected_signature};
use crate::scalar::{format_rational, ratio_to_f64, Rational};
use crate::tensor::TensorSeries;
use crate::word::Word;
use crate::words::{is_even, is_square, leading_offset, nonsquare_pair_count};
use crate::{Error, Result};

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n as u64).fold(BigUint::one(), |acc, k| acc * k).into())
}

fn int(m: u64) -> Rational {
    Rational::from_integer(m.into())
}

fn check_level(n: usize, level: usize) -> Result<()> {
    if level < 2 * n {
        return Err(Error::InvalidParameter(format!("level {level} is below 2n = {}", 2 * n)));
    }
    Ok(())
}

/// `(d - 1) / (3 (n-2)!) (dT/2)^(n-1)`: the limit of `(M/T)` times the
/// level-`2n` gap as `M -> infinity`.
pub fn limit_constant(d: usize, n: usize, t: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("the rate constant needs n >= 2, got {n}")));
    }
    let base = int(d as u64) * t / int(2);
    Ok(int(d as u64 - 1) / (int(3) * factorial(n - 2)) * num_traits::pow(base, n - 1))
}

/// First-order prediction for the leading-class mass:
/// `(d - 1) T / (6 M (n-2)!) (dT/2)^(n-1)`.
pub fn leading_sum_asymptote(d: usize, n: usize, t: &Rational, m: u64) -> Result<Rational> {
    Ok(limit_constant(d, n, t)? * t / (int(2) * int(m)))
}

/// Both series at level exactly `2n`.
pub fn build_pair(
    d: usize,
    n: usize,
    t: &Rational,
    m: u64,
) -> Result<(TensorSeries<Rational>, TensorSeries<Rational>)> {
    Ok((
        brownian_expected_signature(d, t, 2 * n)?,
        pwl_expected_signature(d, t, m, 2 * n)?,
    ))
}

/// `||pi_2n(phi) - pi_2n(phi_m)||` for prebuilt series.
pub fn diff_norm_of(phi: &TensorSeries<Rational>, phi_m: &TensorSeries<Rational>, n: usize) -> Result<Rational> {
    let a = phi.block(2 * n).ok_or(Error::LevelOutOfRange { requested: 2 * n, level: phi.level() })?;
    let b = phi_m.block(2 * n).ok_or(Error::LevelOutOfRange { requested: 2 * n, level: phi_m.level() })?;
    if a.len() != b.len() {
        return Err(Error::Mismatch("series have different dimensions".into()));
    }
    Ok(a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + (x - y).abs()))
}

pub fn diff_norm(d: usize, n: usize, t: &Rational, m: u64, level: usize) -> Result<Rational> {
    check_level(n, level)?;
    let (phi, phi_m) = build_pair(d, n, t, m)?;
    diff_norm_of(&phi, &phi_m, n)
}

/// `(lhs, rhs)` of the symmetry identity
/// `||pi_2n(phi - phi_m)|| = 2 sum_{w in K \ S} C^w(phi_m)`, each side
/// computed on its own.
pub fn symmetry_sides(
    phi: &TensorSeries<Rational>,
    phi_m: &TensorSeries<Rational>,
    n: usize,
) -> Result<(Rational, Rational)> {
    let lhs = diff_norm_of(phi, phi_m, n)?;
    let d = phi_m.d();
    let block = phi_m.block(2 * n).expect("checked by diff_norm_of");
    let mut rhs = Rational::zero();
    for (idx, c) in block.iter().enumerate() {
        let w = Word::from_index(idx, 2 * n, d);
        if is_even(&w) && !is_square(&w) {
            rhs += c;
        }
    }
    Ok((lhs, rhs * int(2)))
}

pub fn symmetry_identity_check(
    d: usize,
    n: usize,
    t: &Rational,
    m: u64,
    level: usize,
) -> Result<(Rational, Rational)> {
    check_level(n, level)?;
    let (phi, phi_m) = build_pair(d, n, t, m)?;
    symmetry_sides(&phi, &phi_m, n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConcentrationReport {
    pub d: usize,
    pub n: usize,
    pub horizon: Rational,
    pub m: u64,
    /// `sum_{S_2n} [C^w(phi) - C^w(phi_m)]`
    pub square_gap: Rational,
    /// `sum_{W_2n} C^w(phi_m)`
    pub leading_sum: Rational,
    /// `sum_{K_2n \ (S_2n u W_2n)} C^w(phi_m)`
    pub remainder_sum: Rational,
    /// `sum_{P^k_2n} C^w(phi_m)` for `k = 0..=n`
    pub pair_sums: Vec<Rational>,
}

impl ConcentrationReport {
    /// Share of the non-square mass carried by the leading class.
    pub fn concentration_fraction(&self) -> Rational {
        let total = &self.leading_sum + &self.remainder_sum;
        if total.is_zero() {
            Rational::one()
        } else {
            &self.leading_sum / total
        }
    }

    pub fn to_doc(&self) -> Result<ConcentrationDoc> {
        let asymptote = leading_sum_asymptote(self.d, self.n, &self.horizon, self.m)?;
        Ok(ConcentrationDoc {
            d: self.d,
            n: self.n,
            t: format_rational(&self.horizon),
            m: self.m,
            square_gap: ExactValue::from(&self.square_gap),
            leading_sum: ExactValue::from(&self.leading_sum),
            remainder_sum: ExactValue::from(&self.remainder_sum),
            leading_asymptote: ExactValue::from(&asymptote),
            concentration_fraction: ExactValue::from(&self.concentration_fraction()),
            pair_sums: self.pair_sums.iter().map(ExactValue::from).collect(),
        })
    }
}

pub fn concentration_of(
    phi: &TensorSeries<Rational>,
    phi_m: &TensorSeries<Rational>,
    n: usize,
    horizon: &Rational,
    m: u64,
) -> Result<ConcentrationReport> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("concentration needs n >= 2, got {n}")));
    }
    let d = phi_m.d();
    let exact = phi.block(2 * n).ok_or(Error::LevelOutOfRange { requested: 2 * n, level: phi.level() })?;
    let approx = phi_m.block(2 * n).ok_or(Error::LevelOutOfRange { requested: 2 * n, level: phi_m.level() })?;
    let mut square_gap = Rational::zero();
    let mut leading_sum = Rational::zero();
    let mut remainder_sum = Rational::zero();
    let mut pair_sums = vec![Rational::zero(); n + 1];
    for (idx, (c_phi, c_m)) in exact.iter().zip(approx).enumerate() {
        let w = Word::from_index(idx, 2 * n, d);
        if !is_even(&w) {
            continue;
        }
        pair_sums[nonsquare_pair_count(&w)?] += c_m;
        if is_square(&w) {
            square_gap += c_phi - c_m;
        } else if leading_offset(&w).is_some() {
            leading_sum += c_m;
        } else {
            remainder_sum += c_m;
        }
    }
    Ok(ConcentrationReport {
        d,
        n,
        horizon: horizon.clone(),
        m,
        square_gap,
        leading_sum,
        remainder_sum,
        pair_sums,
    })
}

pub fn concentration_report(
    d: usize,
    n: usize,
    t: &Rational,
    m: u64,
    level: usize,
) -> Result<ConcentrationReport> {
    check_level(n, level)?;
    let (phi, phi_m) = build_pair(d, n, t, m)?;
    concentration_of(&phi, &phi_m, n, t, m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateRow {
    pub m: u64,
    pub diff_norm: Rational,
    /// `M * diff_norm / T`
    pub scaled: Rational,
    pub limit: Rational,
    pub abs_error: Rational,
}

fn check_m_list(ms: &[u64]) -> Result<()> {
    if ms.is_empty() {
        return Err(Error::InvalidParameter("the M list is empty".into()));
    }
    if ms[0] == 0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    if ms.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidParameter("the M list must be strictly ascending".into()));
    }
    Ok(())
}

/// One row per `M`, in input order. Rows are computed concurrently.
pub fn rate_table(d: usize, n: usize, t: &Rational, ms: &[u64], level: usize) -> Result<Vec<RateRow>> {
    check_level(n, level)?;
    check_m_list(ms)?;
    let limit = limit_constant(d, n, t)?;
    let phi = brownian_expected_signature(d, t, 2 * n)?;
    ms.par_iter()
        .map(|&m| {
            let phi_m = pwl_expected_signature(d, t, m, 2 * n)?;
            let diff = diff_norm_of(&phi, &phi_m, n)?;
            let scaled = &diff * int(m) / t;
            let abs_error = (&scaled - &limit).abs();
            Ok(RateRow { m, diff_norm: diff, scaled, limit: limit.clone(), abs_error })
        })
        .collect()
}

/// `max_{w in P^k} C^w(phi_m) M^floor((k+1)/2) / T^n` for one `(k, M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PkBoundRow {
    pub k: usize,
    pub m: u64,
    pub class_size: usize,
    pub exponent: u32,
    /// `None` when `P^k` is empty.
    pub scaled_max: Option<Rational>,
}

pub fn pk_bound_audit(d: usize, n: usize, t: &Rational, ms: &[u64], level: usize) -> Result<Vec<PkBoundRow>> {
    check_level(n, level)?;
    check_m_list(ms)?;
    let t_pow = num_traits::pow(t.clone(), n);
    let len = 2 * n;
    let classes: Vec<Option<usize>> = (0..d.pow(len as u32))
        .map(|idx| {
            let w = Word::from_index(idx, len, d);
            is_even(&w).then(|| nonsquare_pair_count(&w).expect("even length"))
        })
        .collect();
    let per_m: Vec<Vec<PkBoundRow>> = ms
        .par_iter()
        .map(|&m| -> Result<Vec<PkBoundRow>> {
            let phi_m = pwl_expected_signature(d, t, m, len)?;
            let block = phi_m.block(len).expect("built at level 2n");
            let mut sizes = vec![0usize; n + 1];
            let mut maxima: Vec<Option<Rational>> = vec![None; n + 1];
            for (c, class) in block.iter().zip(&classes) {
                if let Some(k) = *class {
                    sizes[k] += 1;
                    match &maxima[k] {
                        Some(best) if best >= c => {}
                        _ => maxima[k] = Some(c.clone()),
                    }
                }
            }
            Ok((0..=n)
                .map(|k| {
                    let exponent = k.div_ceil(2) as u32;
                    let scale = num_traits::pow(int(m), exponent as usize) / &t_pow;
                    PkBoundRow {
                        k,
                        m,
                        class_size: sizes[k],
                        exponent,
                        scaled_max: maxima[k].as_ref().map(|c| c * &scale),
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<PkBoundRow> = per_m.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.k, r.m));
    Ok(rows)
}

/// A rational rendered both exactly and as `f64`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ExactValue {
    pub exact: String,
    pub approx: f64,
}

impl From<&Rational> for ExactValue {
    fn from(q: &Rational) -> Self {
        ExactValue { exact: format_rational(q), approx: ratio_to_f64(q) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcentrationDoc {
    pub d: usize,
    pub n: usize,
    #[serde(rename = "T")]
    pub t: String,
    #[serde(rename = "M")]
    pub m: u64,
    pub square_gap: ExactValue,
    pub leading_sum: ExactValue,
    pub remainder_sum: ExactValue,
    pub leading_asymptote: ExactValue,
    pub concentration_fraction: ExactValue,
    pub pair_sums: Vec<ExactValue>,
}

/// One rendered rate-table row; CSV and JSON share this record.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RateRecord {
    #[serde(rename = "M")]
    pub m: u64,
    pub diff_norm: String,
    pub diff_norm_f64: f64,
    pub scaled: String,
    pub scaled_f64: f64,
    pub limit: String,
    pub limit_f64: f64,
    pub abs_error_f64: f64,
}

impl From<&RateRow> for RateRecord {
    fn from(r: &RateRow) -> Self {
        RateRecord {
            m: r.m,
            diff_norm: format_rational(&r.diff_norm),
            diff_norm_f64: ratio_to_f64(&r.diff_norm),
            scaled: format_rational(&r.scaled),
            scaled_f64: ratio_to_f64(&r.scaled),
            limit: format_rational(&r.limit),
            limit_f64: ratio_to_f64(&r.limit),
            abs_error_f64: ratio_to_f64(&r.abs_error),
        }
    }
}

pub fn write_rate_csv<W: Write>(rows: &[RateRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(RateRecord::from(row))?;
    }
    writer.flush()?;
    Ok(())
}

pub fn rate_json(rows: &[RateRow]) -> Result<String> {
    let records: Vec<RateRecord> = rows.iter().map(RateRecord::from).collect();
    Ok(serde_json::to_string_pretty(&records)?)
}
