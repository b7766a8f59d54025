//! Level-truncated free tensor algebra `T^(L)(R^d)`.
//!
//! A [`TensorSeries`] stores one dense block per level; the level-`n` block
//! has `d^n` slots and slot `i` holds the coefficient of the word whose
//! base-`d` index is `i` (see [`Word::index`]). Everything above the
//! truncation level `L` is discarded by every operation.

use num_traits::Zero;
use rayon::prelude::*;

use crate::scalar::Scalar;
use crate::word::{check_dim, Word};
use crate::{Error, Result};

/// Output blocks at least this large are filled in parallel.
const PAR_BLOCK: usize = 512;

#[derive(Clone, Debug, PartialEq)]
pub struct TensorSeries<S> {
    d: usize,
    level: usize,
    blocks: Vec<Vec<S>>,
}

impl<S: Scalar> TensorSeries<S> {
    pub fn zero(d: usize, level: usize) -> Result<Self> {
        check_dim(d)?;
        let blocks = (0..=level).map(|n| vec![S::zero(); d.pow(n as u32)]).collect();
        Ok(TensorSeries { d, level, blocks })
    }

    /// The multiplicative identity: `1` on the empty word, zero elsewhere.
    pub fn unit(d: usize, level: usize) -> Result<Self> {
        let mut s = Self::zero(d, level)?;
        s.blocks[0][0] = S::one();
        Ok(s)
    }

    /// Builds a series from dense blocks, one per level `0..=level`.
    pub fn from_blocks(d: usize, blocks: Vec<Vec<S>>) -> Result<Self> {
        check_dim(d)?;
        if blocks.is_empty() {
            return Err(Error::Mismatch("a series needs at least the level-0 block".into()));
        }
        for (n, b) in blocks.iter().enumerate() {
            if b.len() != d.pow(n as u32) {
                return Err(Error::Mismatch(format!(
                    "level {n} block has {} slots, expected {}",
                    b.len(),
                    d.pow(n as u32)
                )));
            }
        }
        Ok(TensorSeries { d, level: blocks.len() - 1, blocks })
    }

    /// Builds a series from `(word, coefficient)` pairs; repeated words add up.
    pub fn from_terms<I>(d: usize, level: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, S)>,
    {
        let mut s = Self::zero(d, level)?;
        for (w, c) in terms {
            w.validate(d)?;
            if w.len() > level {
                return Err(Error::LevelOutOfRange { requested: w.len(), level });
            }
            s.blocks[w.len()][w.index(d)] += c;
        }
        Ok(s)
    }

    /// `sum_i v_i e_i` placed at level 1.
    pub fn from_level_one(d: usize, level: usize, v: &[S]) -> Result<Self> {
        if v.len() != d {
            return Err(Error::Mismatch(format!("expected {d} components, got {}", v.len())));
        }
        let mut s = Self::zero(d, level)?;
        if level >= 1 {
            s.blocks[1].clone_from_slice(v);
        }
        Ok(s)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn block(&self, n: usize) -> Option<&[S]> {
        self.blocks.get(n).map(Vec::as_slice)
    }

    pub fn blocks(&self) -> &[Vec<S>] {
        &self.blocks
    }

    /// Coefficient `C^w`, or `None` when `|w|` exceeds the truncation level
    /// or a letter is out of range.
    pub fn get(&self, w: &Word) -> Option<&S> {
        if w.validate(self.d).is_err() {
            return None;
        }
        self.blocks.get(w.len()).map(|b| &b[w.index(self.d)])
    }

    /// Like [`TensorSeries::get`] but panics on a bad word.
    pub fn coeff(&self, w: &Word) -> &S {
        self.get(w)
            .unwrap_or_else(|| panic!("word {w} is not addressable at d = {}, level = {}", self.d, self.level))
    }

    /// Nonzero coefficients in level-then-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Word, &S)> + '_ {
        let d = self.d;
        self.blocks.iter().enumerate().flat_map(move |(n, block)| {
            block
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (Word::from_index(i, n, d), c))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Zero::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::Mismatch(format!("dimension {} vs {}", self.d, other.d)));
        }
        if self.level != other.level {
            return Err(Error::Mismatch(format!("level {} vs {}", self.level, other.level)));
        }
        Ok(())
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n > self.level {
            Err(Error::LevelOutOfRange { requested: n, level: self.level })
        } else {
            Ok(())
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        self.check_compatible(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            .collect();
        Ok(TensorSeries { d: self.d, level: self.level, blocks })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x.clone() + y.clone())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x.clone() - y.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TensorSeries<T> {
        TensorSeries {
            d: self.d,
            level: self.level,
            blocks: self.blocks.iter().map(|b| b.iter().map(&f).collect()).collect(),
        }
    }

    pub fn to_float(&self) -> TensorSeries<f64> {
        self.map(Scalar::to_f64)
    }

    /// Drops every level above `level`.
    pub fn truncate(&self, level: usize) -> Result<Self> {
        self.check_level(level)?;
        Ok(TensorSeries {
            d: self.d,
            level,
            blocks: self.blocks[..=level].to_vec(),
        })
    }

    /// Truncated concatenation product:
    /// `pi_n(a (x) b) = sum_k pi_k(a) (x) pi_(n-k)(b)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.d;
        let pows: Vec<usize> = (0..=self.level).map(|k| d.pow(k as u32)).collect();
        let blocks = (0..=self.level)
            .map(|n| {
                let slot = |idx: usize| -> S {
                    let mut acc = S::zero();
                    for k in 0..=n {
                        let tail = pows[n - k];
                        let a = &self.blocks[k][idx / tail];
                        if a.is_zero() {
                            continue;
                        }
                        let b = &other.blocks[n - k][idx % tail];
                        if b.is_zero() {
                            continue;
                        }
                        acc += a.mul_ref(b);
                    }
                    acc
                };
                if pows[n] >= PAR_BLOCK {
                    (0..pows[n]).into_par_iter().map(slot).collect()
                } else {
                    (0..pows[n]).map(slot).collect()
                }
            })
            .collect();
        Ok(TensorSeries { d, level: self.level, blocks })
    }

    /// `a^(x)M` by repeated squaring; `M = 0` gives the unit.
    pub fn power(&self, m: u64) -> Self {
        let mut result = Self::unit(self.d, self.level).expect("dimension already validated");
        let mut base = self.clone();
        let mut m = m;
        while m > 0 {
            if m & 1 == 1 {
                result = result.product(&base).expect("same shape");
            }
            m >>= 1;
            if m > 0 {
                base = base.product(&base).expect("same shape");
            }
        }
        result
    }

    /// `sum_{k=0}^{L} a^(x)k / k!`. The constant term of `a` must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.blocks[0][0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut result = Self::unit(self.d, self.level)?;
        let mut term = result.clone();
        for k in 1..=self.level as u64 {
            term = term.product(self)?.map(|c| c.div_int(k));
            if term.is_zero() {
                break;
            }
            result = result.try_add(&term)?;
        }
        Ok(result)
    }

    /// `pi_n`: keeps the level-`n` block and zeroes the others.
    pub fn projection(&self, n: usize) -> Result<Self> {
        self.check_level(n)?;
        let mut out = Self::zero(self.d, self.level)?;
        out.blocks[n] = self.blocks[n].clone();
        Ok(out)
    }

    /// Projective norm of `pi_n` with `l1` on `R^d`: the sum of absolute
    /// level-`n` coefficients.
    pub fn projective_norm(&self, n: usize) -> Result<S> {
        self.check_level(n)?;
        Ok(self.blocks[n]
            .iter()
            .fold(S::zero(), |acc, c| acc + c.abs_val()))
    }

    /// Hilbert-Schmidt norm of `pi_n`, always in `f64`.
    pub fn hs_norm(&self, n: usize) -> Result<f64> {
        self.check_level(n)?;
        Ok(self.blocks[n]
            .iter()
            .map(|c| {
                let x = c.to_f64();
                x * x
            })
            .sum::<f64>()
            .sqrt())
    }
}
