use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 9;

pub(crate) fn check_dim(d: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&d) {
        Ok(())
    } else {
        Err(Error::Dimension(d))
    }
}

/// A word `e_{i_1} ... e_{i_n}` stored as its letters `i_1, ..., i_n`,
/// each in `1..=d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>, d: usize) -> Result<Self> {
        check_dim(d)?;
        if let Some(&letter) = letters.iter().find(|&&l| l == 0 || l as usize > d) {
            return Err(Error::LetterOutOfRange { letter, d });
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks every letter against `d`.
    pub fn validate(&self, d: usize) -> Result<()> {
        check_dim(d)?;
        match self.0.iter().find(|&&l| l == 0 || l as usize > d) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, d }),
            None => Ok(()),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Base-`d` index of the word inside its level block:
    /// `sum_j (i_j - 1) d^(n-j)`.
    pub fn index(&self, d: usize) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &l| acc * d + (l as usize - 1))
    }

    /// Inverse of [`Word::index`] for a word of length `len`.
    pub fn from_index(mut index: usize, len: usize, d: usize) -> Word {
        let mut letters = vec![0u8; len];
        for slot in letters.iter_mut().rev() {
            *slot = (index % d) as u8 + 1;
            index /= d;
        }
        Word(letters)
    }

    /// Parses a digit string such as `"1122"` and validates it against `d`.
    pub fn parse(s: &str, d: usize) -> Result<Word> {
        let w: Word = s.parse()?;
        w.validate(d)?;
        Ok(w)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_digit(10) {
                Some(v) if v >= 1 => Ok(v as u8),
                _ => Err(Error::Format(format!("`{s}` is not a word of digits 1..9"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
