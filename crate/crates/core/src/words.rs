//! Word classes at length `2n` over the alphabet `{1..d}`.
//!
//! * `S`   concatenations of `n` squares `e_i e_i`.
//! * `K`   every letter occurs an even number of times.
//! * `E`   the length-4 words `ijij` and `ijji` with `i != j`.
//! * `W^k` a square prefix of length `2k`, one `E` block, a square suffix.
//! * `W`   the union of `W^k` over `0 <= k <= n - 2`.
//! * `P^k` words of `K` with exactly `k` non-square pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::word::{check_dim, Word};
use crate::{Error, Result};

/// Largest `d^(2n)` a full scan will walk.
pub const MAX_SCAN: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordClass {
    /// `S_2n`
    Square,
    /// `K_2n`
    Even,
    /// `E`
    Exchange,
    /// `W^k_2n`
    LeadingAt(usize),
    /// `W_2n`
    Leading,
    /// `P^k_2n`
    Pairs(usize),
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordClass::Square => write!(f, "S"),
            WordClass::Even => write!(f, "K"),
            WordClass::Exchange => write!(f, "E"),
            WordClass::LeadingAt(k) => write!(f, "W{k}"),
            WordClass::Leading => write!(f, "W"),
            WordClass::Pairs(k) => write!(f, "P{k}"),
        }
    }
}

impl FromStr for WordClass {
    type Err = Error;

    /// Accepts `S`, `K`, `E`, `W`, `W<k>`, `W^<k>`, `P<k>`, `P^<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown word class `{s}`"));
        let (head, rest) = s.split_at(s.len().min(1));
        let index = || -> Result<usize> { rest.trim_start_matches('^').parse().map_err(|_| bad()) };
        match (head, rest.is_empty()) {
            ("S", true) => Ok(WordClass::Square),
            ("K", true) => Ok(WordClass::Even),
            ("E", true) => Ok(WordClass::Exchange),
            ("W", true) => Ok(WordClass::Leading),
            ("W", false) => Ok(WordClass::LeadingAt(index()?)),
            ("P", false) => Ok(WordClass::Pairs(index()?)),
            _ => Err(bad()),
        }
    }
}

/// `(N_1(w), ..., N_d(w))`.
pub fn letter_counts(w: &Word, d: usize) -> Result<Vec<usize>> {
    w.validate(d)?;
    let mut counts = vec![0; d];
    for &l in w.letters() {
        counts[l as usize - 1] += 1;
    }
    Ok(counts)
}

/// `p(w)`: the number of pairs `(i_(2k-1), i_(2k))` with distinct letters.
pub fn nonsquare_pair_count(w: &Word) -> Result<usize> {
    if !w.len().is_multiple_of(2) {
        return Err(Error::OddLength(w.len()));
    }
    Ok(pairs_differing(w.letters()))
}

fn pairs_differing(letters: &[u8]) -> usize {
    letters.chunks_exact(2).filter(|p| p[0] != p[1]).count()
}

fn is_exchange_block(b: &[u8]) -> bool {
    b.len() == 4 && b[0] != b[1] && ((b[2] == b[0] && b[3] == b[1]) || (b[2] == b[1] && b[3] == b[0]))
}

pub fn is_even(w: &Word) -> bool {
    even_counts(w.letters())
}

fn even_counts(letters: &[u8]) -> bool {
    letters.iter().fold(0u16, |parity, &l| parity ^ (1 << l)) == 0
}

pub fn is_square(w: &Word) -> bool {
    w.len().is_multiple_of(2) && pairs_differing(w.letters()) == 0
}

/// The `k` for which `w` lies in `W^k`, if any. The classes `W^k` are
/// disjoint, so the answer is unique.
pub fn leading_offset(w: &Word) -> Option<usize> {
    let letters = w.letters();
    if letters.len() < 4 || !letters.len().is_multiple_of(2) {
        return None;
    }
    let first = letters.chunks_exact(2).position(|p| p[0] != p[1])?;
    let start = 2 * first;
    let block = letters.get(start..start + 4)?;
    if is_exchange_block(block) && pairs_differing(&letters[start + 4..]) == 0 {
        Some(first)
    } else {
        None
    }
}

/// Every class label that applies to `w`. Odd-length words carry none.
pub fn classify(w: &Word, d: usize) -> Result<BTreeSet<WordClass>> {
    w.validate(d)?;
    let mut labels = BTreeSet::new();
    if !w.len().is_multiple_of(2) || !is_even(w) {
        return Ok(labels);
    }
    labels.insert(WordClass::Even);
    let p = pairs_differing(w.letters());
    labels.insert(WordClass::Pairs(p));
    if p == 0 {
        labels.insert(WordClass::Square);
    }
    if is_exchange_block(w.letters()) {
        labels.insert(WordClass::Exchange);
    }
    if let Some(k) = leading_offset(w) {
        labels.insert(WordClass::LeadingAt(k));
        labels.insert(WordClass::Leading);
    }
    Ok(labels)
}

/// All words of length `len` over `1..=d` in lexicographic order.
fn all_words(d: usize, len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..d.pow(len as u32)).map(move |mut idx| {
        let mut letters = vec![0u8; len];
        for slot in letters.iter_mut().rev() {
            *slot = (idx % d) as u8 + 1;
            idx /= d;
        }
        letters
    })
}

fn squares(d: usize, n: usize) -> impl Iterator<Item = Vec<u8>> {
    all_words(d, n).map(|ls| ls.iter().flat_map(|&l| [l, l]).collect())
}

fn exchange_blocks(d: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(2 * d * (d - 1));
    for i in 1..=d as u8 {
        for j in 1..=d as u8 {
            if i != j {
                out.push(vec![i, j, i, j]);
                out.push(vec![i, j, j, i]);
            }
        }
    }
    out.sort();
    out
}

fn leading_at(d: usize, n: usize, k: usize) -> Vec<Vec<u8>> {
    let blocks = exchange_blocks(d);
    let mut out = Vec::new();
    for prefix in squares(d, k) {
        for block in &blocks {
            for suffix in squares(d, n - 2 - k) {
                let mut w = prefix.clone();
                w.extend_from_slice(block);
                w.extend_from_slice(&suffix);
                out.push(w);
            }
        }
    }
    out
}

fn scan(d: usize, len: usize, keep: impl Fn(&[u8]) -> bool) -> Result<Vec<Vec<u8>>> {
    let total = (d as u128).pow(len as u32);
    if total > MAX_SCAN as u128 {
        return Err(Error::BoundExceeded(format!("scan of {d}^{len} words")));
    }
    Ok(all_words(d, len).filter(|w| keep(w)).collect())
}

/// Words of `class` at length `2n`, lexicographically sorted and
/// duplicate-free. `S`, `E` and `W^k` are generated from their
/// factorisations; `K` and `P^k` come from a full scan.
pub fn enumerate(class: WordClass, d: usize, n: usize) -> Result<Vec<Word>> {
    check_dim(d)?;
    let need_two = |what: &str| {
        if n < 2 {
            Err(Error::InvalidParameter(format!("{what} needs n >= 2, got {n}")))
        } else {
            Ok(())
        }
    };
    let mut raw = match class {
        WordClass::Square => squares(d, n).collect(),
        WordClass::Even => scan(d, 2 * n, even_counts)?,
        WordClass::Exchange => {
            if n != 2 {
                return Err(Error::InvalidParameter(format!("E consists of length-4 words, got n = {n}")));
            }
            exchange_blocks(d)
        }
        WordClass::LeadingAt(k) => {
            need_two("W^k")?;
            if k > n - 2 {
                return Err(Error::InvalidParameter(format!("W^{k} needs k <= n - 2 = {}", n - 2)));
            }
            leading_at(d, n, k)
        }
        WordClass::Leading => {
            need_two("W")?;
            (0..=n - 2).flat_map(|k| leading_at(d, n, k)).collect()
        }
        WordClass::Pairs(k) => {
            if k > n {
                return Err(Error::InvalidParameter(format!("P^{k} needs k <= n = {n}")));
            }
            scan(d, 2 * n, |w| {
                even_counts(w) && pairs_differing(w) == k
            })?
        }
    };
    raw.sort();
    raw.dedup();
    Ok(raw.into_iter().map(Word::from_letters_unchecked).collect())
}

/// Cardinalities of every class at fixed `(d, n)`, from one full scan.
#[derive(Debug, Clone)]
pub struct WordClassReport {
    pub d: usize,
    pub n: usize,
    pub cardinalities: BTreeMap<WordClass, usize>,
}

impl WordClassReport {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        check_dim(d)?;
        let mut cardinalities = BTreeMap::new();
        cardinalities.insert(WordClass::Square, 0);
        cardinalities.insert(WordClass::Even, 0);
        if n == 2 {
            cardinalities.insert(WordClass::Exchange, 0);
        }
        if n >= 2 {
            cardinalities.insert(WordClass::Leading, 0);
            for k in 0..=n - 2 {
                cardinalities.insert(WordClass::LeadingAt(k), 0);
            }
        }
        for k in 0..=n {
            cardinalities.insert(WordClass::Pairs(k), 0);
        }
        for letters in scan(d, 2 * n, |_| true)? {
            for label in classify(&Word::from_letters_unchecked(letters), d)? {
                *cardinalities.entry(label).or_insert(0) += 1;
            }
        }
        Ok(WordClassReport { d, n, cardinalities })
    }

    pub fn count(&self, class: WordClass) -> usize {
        self.cardinalities.get(&class).copied().unwrap_or(0)
    }

    pub fn labels(&self, w: &Word) -> Result<BTreeSet<WordClass>> {
        classify(w, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn labels(s: &str, d: usize) -> BTreeSet<WordClass> {
        classify(&w(s), d).unwrap()
    }

    #[test]
    fn counts_letters() {
        assert_eq!(letter_counts(&w("1212"), 2).unwrap(), vec![2, 2]);
        assert_eq!(letter_counts(&Word::empty(), 3).unwrap(), vec![0, 0, 0]);
        assert_eq!(letter_counts(&w("1133"), 3).unwrap(), vec![2, 0, 2]);
        assert!(letter_counts(&w("13"), 2).is_err());
    }

    #[test]
    fn counts_nonsquare_pairs() {
        assert_eq!(nonsquare_pair_count(&w("1122")).unwrap(), 0);
        assert_eq!(nonsquare_pair_count(&w("1221")).unwrap(), 2);
        assert_eq!(nonsquare_pair_count(&w("121122")).unwrap(), 1);
        assert!(matches!(nonsquare_pair_count(&w("121")), Err(Error::OddLength(3))));
    }

    #[test]
    fn classify_examples() {
        use WordClass::*;
        assert_eq!(labels("1122", 2), [Square, Even, Pairs(0)].into());
        assert_eq!(
            labels("1212", 2),
            [Even, Pairs(2), LeadingAt(0), Leading, Exchange].into()
        );
        assert_eq!(labels("111221", 2), [Even, Pairs(2), LeadingAt(1), Leading].into());
        assert!(labels("121", 2).is_empty());
        assert!(labels("1213", 3).is_empty());
    }

    #[test]
    fn pairs_class_without_leading_block() {
        use WordClass::*;
        // non-square pairs separated by a square: in P^2 but not in W
        assert_eq!(labels("121121", 2), [Even, Pairs(2)].into());
    }

    #[test]
    fn enumerate_exchange() {
        let e: Vec<String> = enumerate(WordClass::Exchange, 2, 2)
            .unwrap()
            .iter()
            .map(Word::to_string)
            .collect();
        assert_eq!(e, ["1212", "1221", "2112", "2121"]);
    }

    #[test]
    fn enumerate_guards() {
        assert!(enumerate(WordClass::Leading, 2, 1).is_err());
        assert!(enumerate(WordClass::LeadingAt(2), 2, 3).is_err());
        assert!(enumerate(WordClass::Pairs(4), 2, 3).is_err());
        assert!(enumerate(WordClass::Exchange, 2, 3).is_err());
        assert!(enumerate(WordClass::Even, 9, 9).is_err());
    }

    #[test]
    fn leading_cardinality() {
        assert_eq!(enumerate(WordClass::Leading, 3, 3).unwrap().len(), 72);
        assert_eq!(enumerate(WordClass::Leading, 2, 3).unwrap().len(), 16);
    }

    #[test]
    fn parses_class_names() {
        assert_eq!("W^1".parse::<WordClass>().unwrap(), WordClass::LeadingAt(1));
        assert_eq!("P3".parse::<WordClass>().unwrap(), WordClass::Pairs(3));
        assert_eq!("K".parse::<WordClass>().unwrap(), WordClass::Even);
        assert!("Q".parse::<WordClass>().is_err());
        assert!("S1".parse::<WordClass>().is_err());
        for c in [WordClass::Square, WordClass::LeadingAt(2), WordClass::Pairs(0)] {
            assert_eq!(c.to_string().parse::<WordClass>().unwrap(), c);
        }
    }
}
