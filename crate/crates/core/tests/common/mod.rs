//! Brute-force word-class oracles shared by the integration tests.

#![allow(dead_code)]

use brownsig::words::WordClass;
use brownsig::Word;

pub fn all_words(d: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=d).map(move |l| {
                    let mut next = w.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
    }
    out
}

pub fn brute_square(w: &[u8]) -> bool {
    (0..w.len() / 2).all(|k| w[2 * k] == w[2 * k + 1])
}

pub fn brute_even(w: &[u8], d: u8) -> bool {
    (1..=d).all(|l| w.iter().filter(|&&x| x == l).count() % 2 == 0)
}

pub fn brute_exchange(w: &[u8], d: u8) -> bool {
    if w.len() != 4 {
        return false;
    }
    (1..=d).any(|i| {
        (1..=d).any(|j| i != j && (w == [i, j, i, j] || w == [i, j, j, i]))
    })
}

pub fn brute_leading_at(w: &[u8], d: u8, k: usize) -> bool {
    let n = w.len() / 2;
    n >= 2
        && k <= n - 2
        && brute_square(&w[..2 * k])
        && brute_exchange(&w[2 * k..2 * k + 4], d)
        && brute_square(&w[2 * k + 4..])
}

pub fn brute_pairs(w: &[u8]) -> usize {
    (0..w.len() / 2).filter(|&k| w[2 * k] != w[2 * k + 1]).count()
}

pub fn brute_members(class: WordClass, d: u8, n: usize) -> Vec<Word> {
    all_words(d, 2 * n)
        .into_iter()
        .filter(|w| match class {
            WordClass::Square => brute_square(w),
            WordClass::Even => brute_even(w, d),
            WordClass::Exchange => brute_exchange(w, d),
            WordClass::LeadingAt(k) => brute_leading_at(w, d, k),
            WordClass::Leading => (0..=n.saturating_sub(2)).any(|k| brute_leading_at(w, d, k)),
            WordClass::Pairs(k) => brute_even(w, d) && brute_pairs(w) == k,
        })
        .map(|w| Word::new(w, d as usize).unwrap())
        .collect()
}

pub fn classes(n: usize) -> Vec<WordClass> {
    let mut out = vec![WordClass::Square, WordClass::Even];
    if n == 2 {
        out.push(WordClass::Exchange);
    }
    if n >= 2 {
        out.push(WordClass::Leading);
        out.extend((0..=n - 2).map(WordClass::LeadingAt));
    }
    out.extend((0..=n).map(WordClass::Pairs));
    out
}
