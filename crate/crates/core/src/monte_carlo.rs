//! Monte Carlo check of `phi^M(T)`.
//!
//! Each sample draws `M` independent Gaussian increments with covariance
//! `(T/M) I`, turns every increment into its segment signature (the tensor
//! exponential of a level-1 element) and multiplies the segments in order.
//! Sample `i` uses the ChaCha8 stream `i` under `master_seed`, so results
//! do not depend on how samples are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::expected::pwl_expected_signature;
use crate::scalar::{format_rational, ratio_to_f64, Rational, Scalar};
use crate::tensor::TensorSeries;
use crate::word::{check_dim, Word};
use crate::{Error, Result};

/// Samples per accumulation chunk. Fixed so that the merge tree, and hence
/// every floating-point result, is independent of the worker count.
const CHUNK: usize = 1024;

/// Signature of the straight segment with the given increment:
/// the level-`k` block is `v^(x)k / k!`.
pub fn segment_signature(d: usize, level: usize, increment: &[f64]) -> Result<TensorSeries<f64>> {
    check_dim(d)?;
    if increment.len() != d {
        return Err(Error::Mismatch(format!("increment has {} components, expected {d}", increment.len())));
    }
    let mut blocks = Vec::with_capacity(level + 1);
    blocks.push(vec![1.0]);
    for k in 1..=level {
        let prev: &Vec<f64> = &blocks[k - 1];
        let mut next = Vec::with_capacity(prev.len() * d);
        for &p in prev {
            next.extend(increment.iter().map(|&v| p * v / k as f64));
        }
        blocks.push(next);
    }
    TensorSeries::from_blocks(d, blocks)
}

/// Chen product of the segment signatures, in path order.
pub fn signature_of_increments(d: usize, level: usize, increments: &[Vec<f64>]) -> Result<TensorSeries<f64>> {
    increments
        .iter()
        .try_fold(TensorSeries::unit(d, level)?, |acc, inc| {
            acc.product(&segment_signature(d, level, inc)?)
        })
}

/// The `M` increments of sample `sample_index`.
pub fn sample_increments(d: usize, step: f64, m: u64, sample_index: u64, master_seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(sample_index);
    let sd = step.sqrt();
    (0..m)
        .map(|_| {
            (0..d)
                .map(|_| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    sd * z
                })
                .collect::<Vec<f64>>()
        })
        .collect()
}

/// Pathwise signature of one sampled piecewise-linear Brownian path.
pub fn sample_pwl_signature(
    d: usize,
    t: &Rational,
    m: u64,
    level: usize,
    sample_index: u64,
    master_seed: u64,
) -> Result<TensorSeries<f64>> {
    if m == 0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    let step = ratio_to_f64(t) / m as f64;
    let increments = sample_increments(d, step, m, sample_index, master_seed);
    signature_of_increments(d, level, &increments)
}

/// Streaming per-slot mean and sum of squared deviations.
#[derive(Clone, Debug)]
struct Moments {
    count: u64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(slots: usize) -> Self {
        Moments { count: 0, mean: vec![0.0; slots], m2: vec![0.0; slots] }
    }

    fn push(&mut self, x: impl Iterator<Item = f64>) {
        self.count += 1;
        let n = self.count as f64;
        for ((mean, m2), v) in self.mean.iter_mut().zip(self.m2.iter_mut()).zip(x) {
            let delta = v - *mean;
            *mean += delta / n;
            *m2 += delta * (v - *mean);
        }
    }

    fn merge(mut self, other: &Moments) -> Moments {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other.clone();
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        for i in 0..self.mean.len() {
            let delta = other.mean[i] - self.mean[i];
            self.mean[i] += delta * nb / n;
            self.m2[i] += other.m2[i] + delta * delta * na * nb / n;
        }
        self.count += other.count;
        self
    }
}

#[derive(Clone, Debug)]
pub struct McEstimate {
    pub d: usize,
    pub horizon: Rational,
    pub pieces: u64,
    pub level: usize,
    pub samples: usize,
    pub seed: u64,
    pub exact: TensorSeries<Rational>,
    pub mean: TensorSeries<f64>,
    pub stderr: TensorSeries<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct McEntry {
    pub word: String,
    pub exact: String,
    pub exact_f64: f64,
    pub mean: f64,
    pub stderr: f64,
    /// `None` where the coefficient is deterministic.
    pub zscore: Option<f64>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ZSummary {
    pub count: usize,
    pub median: f64,
    pub q90: f64,
    pub q95: f64,
    pub q99: f64,
    pub max: f64,
}

impl McEstimate {
    /// One entry per slot, level by level.
    pub fn entries(&self) -> Vec<McEntry> {
        let d = self.d;
        let mut out = Vec::new();
        for n in 0..=self.level {
            let exact = self.exact.block(n).expect("level in range");
            let mean = self.mean.block(n).expect("level in range");
            let stderr = self.stderr.block(n).expect("level in range");
            for i in 0..exact.len() {
                let exact_f64 = exact[i].to_f64();
                let zscore = (stderr[i] > 0.0).then(|| (mean[i] - exact_f64) / stderr[i]);
                out.push(McEntry {
                    word: Word::from_index(i, n, d).to_string(),
                    exact: format_rational(&exact[i]),
                    exact_f64,
                    mean: mean[i],
                    stderr: stderr[i],
                    zscore,
                });
            }
        }
        out
    }

    pub fn entry(&self, w: &Word) -> Option<McEntry> {
        let key = w.to_string();
        self.entries().into_iter().find(|e| e.word == key)
    }

    /// Quantiles of `|z|` over `entries` with a defined z-score.
    pub fn z_summary(entries: &[McEntry]) -> Option<ZSummary> {
        let mut zs: Vec<f64> = entries.iter().filter_map(|e| e.zscore.map(f64::abs)).collect();
        if zs.is_empty() {
            return None;
        }
        zs.sort_by(|a, b| a.total_cmp(b));
        let q = |p: f64| zs[((p * (zs.len() - 1) as f64).round() as usize).min(zs.len() - 1)];
        Some(ZSummary {
            count: zs.len(),
            median: q(0.5),
            q90: q(0.9),
            q95: q(0.95),
            q99: q(0.99),
            max: *zs.last().unwrap(),
        })
    }

    pub fn to_doc(&self) -> McDoc {
        let entries = self.entries();
        let nonzero: Vec<McEntry> = entries.iter().filter(|e| e.exact_f64 != 0.0).cloned().collect();
        McDoc {
            d: self.d,
            t: format_rational(&self.horizon),
            m: self.pieces,
            level: self.level,
            samples: self.samples,
            seed: self.seed,
            summary: Self::z_summary(&entries),
            nonzero_target_summary: Self::z_summary(&nonzero),
            entries,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct McDoc {
    pub d: usize,
    #[serde(rename = "T")]
    pub t: String,
    #[serde(rename = "M")]
    pub m: u64,
    pub level: usize,
    pub samples: usize,
    pub seed: u64,
    pub summary: Option<ZSummary>,
    pub nonzero_target_summary: Option<ZSummary>,
    pub entries: Vec<McEntry>,
}

/// Empirical mean and standard error of `N` sampled signatures, with
/// z-scores against the exact `phi^M(T)`.
pub fn estimate_expected_signature(
    d: usize,
    t: &Rational,
    m: u64,
    level: usize,
    samples: usize,
    master_seed: u64,
) -> Result<McEstimate> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples, got {samples}")));
    }
    let exact = pwl_expected_signature(d, t, m, level)?;
    let slots: usize = (0..=level).map(|k| d.pow(k as u32)).sum();
    let chunks: Vec<Moments> = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| -> Result<Moments> {
            let mut acc = Moments::new(slots);
            for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let sig = sample_pwl_signature(d, t, m, level, i as u64, master_seed)?;
                acc.push(sig.blocks().iter().flatten().copied());
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let total = chunks.iter().fold(Moments::new(slots), |acc, c| acc.merge(c));

    let n = total.count as f64;
    let mut mean_blocks = Vec::with_capacity(level + 1);
    let mut se_blocks = Vec::with_capacity(level + 1);
    let mut offset = 0;
    for k in 0..=level {
        let size = d.pow(k as u32);
        let range = offset..offset + size;
        mean_blocks.push(total.mean[range.clone()].to_vec());
        se_blocks.push(
            total.m2[range]
                .iter()
                .map(|&m2| (m2.max(0.0) / (n - 1.0) / n).sqrt())
                .collect(),
        );
        offset += size;
    }
    Ok(McEstimate {
        d,
        horizon: t.clone(),
        pieces: m,
        level,
        samples,
        seed: master_seed,
        exact,
        mean: TensorSeries::from_blocks(d, mean_blocks)?,
        stderr: TensorSeries::from_blocks(d, se_blocks)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn zero_increments_give_unit() {
        let sig = signature_of_increments(2, 4, &[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(sig, TensorSeries::unit(2, 4).unwrap());
    }

    #[test]
    fn single_segment_diagonal() {
        let sig = segment_signature(2, 3, &[0.3, -1.2]).unwrap();
        assert!((sig.coeff(&w("11")) - 0.045).abs() < 1e-15);
        assert!((sig.coeff(&w("22")) - 0.72).abs() < 1e-15);
        assert!((sig.coeff(&w("122")) - 0.3 * 1.44 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn segment_signature_matches_generic_exp() {
        let v = [0.7, -0.2, 1.1];
        let gen = TensorSeries::from_level_one(3, 4, &v).unwrap();
        let a = gen.exp().unwrap();
        let b = segment_signature(3, 4, &v).unwrap();
        for (x, y) in a.blocks().iter().flatten().zip(b.blocks().iter().flatten()) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn level_one_is_total_increment() {
        let t = Rational::from_ratio(1, 1);
        let incs = sample_increments(3, 0.25, 4, 7, 99);
        let sig = sample_pwl_signature(3, &t, 4, 2, 7, 99).unwrap();
        for i in 0..3 {
            let total: f64 = incs.iter().map(|v| v[i]).sum();
            assert!((sig.block(1).unwrap()[i] - total).abs() < 1e-12);
        }
    }

    #[test]
    fn samples_are_reproducible_per_index() {
        let t = Rational::from_ratio(1, 1);
        let a = sample_pwl_signature(2, &t, 3, 4, 11, 5).unwrap();
        let b = sample_pwl_signature(2, &t, 3, 4, 11, 5).unwrap();
        let c = sample_pwl_signature(2, &t, 3, 4, 12, 5).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn welford_merge_matches_single_pass() {
        let data: Vec<f64> = (0..37).map(|i| ((i * 7919) % 101) as f64 / 10.0).collect();
        let mut whole = Moments::new(1);
        data.iter().for_each(|&x| whole.push(std::iter::once(x)));
        let mut left = Moments::new(1);
        let mut right = Moments::new(1);
        data[..13].iter().for_each(|&x| left.push(std::iter::once(x)));
        data[13..].iter().for_each(|&x| right.push(std::iter::once(x)));
        let merged = left.merge(&right);
        assert_eq!(merged.count, whole.count);
        assert!((merged.mean[0] - whole.mean[0]).abs() < 1e-12);
        assert!((merged.m2[0] - whole.m2[0]).abs() < 1e-9);
    }

    #[test]
    fn needs_two_samples() {
        let t = Rational::from_ratio(1, 1);
        assert!(estimate_expected_signature(2, &t, 2, 2, 1, 0).is_err());
    }

    #[test]
    fn level_zero_has_no_zscore() {
        let t = Rational::from_ratio(1, 1);
        let est = estimate_expected_signature(2, &t, 2, 2, 200, 3).unwrap();
        let e = est.entry(&Word::empty()).unwrap();
        assert_eq!(e.mean, 1.0);
        assert_eq!(e.zscore, None);
        assert!(est.entry(&w("11")).unwrap().zscore.is_some());
    }
}
