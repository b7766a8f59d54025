//! Exhaustive checks of the word classes against a brute-force scan, for
//! `d <= 3` and `n <= 4`.

use std::collections::BTreeSet;

use brownsig::words::{classify, enumerate, letter_counts, nonsquare_pair_count, WordClass};
use brownsig::{Word, WordClassReport};

mod common;
use common::*;

#[test]
fn enumerate_matches_brute_force() {
    for d in 2..=3u8 {
        for n in 0..=4 {
            for class in classes(n) {
                let listed = enumerate(class, d as usize, n).unwrap();
                assert_eq!(listed, brute_members(class, d, n), "{class} at d = {d}, n = {n}");
            }
        }
    }
}

#[test]
fn classify_agrees_with_enumerate() {
    for d in 2..=3u8 {
        for n in 0..=4 {
            let members: Vec<(WordClass, BTreeSet<Word>)> = classes(n)
                .into_iter()
                .map(|c| (c, enumerate(c, d as usize, n).unwrap().into_iter().collect()))
                .collect();
            for letters in all_words(d, 2 * n) {
                let w = Word::new(letters, d as usize).unwrap();
                let labels = classify(&w, d as usize).unwrap();
                for (c, set) in &members {
                    assert_eq!(labels.contains(c), set.contains(&w), "{w} / {c}");
                }
                // no label outside the listed classes
                assert!(labels.iter().all(|l| members.iter().any(|(c, _)| c == l)), "{w}: {labels:?}");
            }
        }
    }
}

#[test]
fn cardinality_formulas() {
    for d in 2..=3usize {
        for n in 2..=4usize {
            let report = WordClassReport::new(d, n).unwrap();
            assert_eq!(report.count(WordClass::Square), d.pow(n as u32));
            for k in 0..=n - 2 {
                assert_eq!(report.count(WordClass::LeadingAt(k)), 2 * d * (d - 1) * d.pow(n as u32 - 2));
            }
            assert_eq!(
                report.count(WordClass::Leading),
                (n - 1) * 2 * d * (d - 1) * d.pow(n as u32 - 2)
            );
            let partition: usize = (0..=n).map(|k| report.count(WordClass::Pairs(k))).sum();
            assert_eq!(partition, report.count(WordClass::Even));
            assert_eq!(report.count(WordClass::Pairs(0)), report.count(WordClass::Square));
            assert_eq!(report.count(WordClass::Pairs(1)), 0);
            let brute_k = all_words(d as u8, 2 * n).iter().filter(|w| brute_even(w, d as u8)).count();
            assert_eq!(report.count(WordClass::Even), brute_k);
        }
        assert_eq!(WordClassReport::new(d, 2).unwrap().count(WordClass::Exchange), 2 * d * (d - 1));
    }
}

#[test]
fn even_minus_square_at_length_four_is_exchange() {
    for d in 2..=3usize {
        let k: BTreeSet<Word> = enumerate(WordClass::Even, d, 2).unwrap().into_iter().collect();
        let s: BTreeSet<Word> = enumerate(WordClass::Square, d, 2).unwrap().into_iter().collect();
        let e: BTreeSet<Word> = enumerate(WordClass::Exchange, d, 2).unwrap().into_iter().collect();
        assert_eq!(k.difference(&s).cloned().collect::<BTreeSet<_>>(), e);
    }
    assert_eq!(enumerate(WordClass::Even, 2, 2).unwrap().len(), 8);
}

#[test]
fn leading_words_have_two_nonsquare_pairs_and_disjoint_offsets() {
    for d in 2..=3usize {
        for n in 2..=4usize {
            let mut seen = BTreeSet::new();
            for k in 0..=n - 2 {
                for w in enumerate(WordClass::LeadingAt(k), d, n).unwrap() {
                    assert_eq!(nonsquare_pair_count(&w).unwrap(), 2);
                    assert!(seen.insert(w), "W^k classes overlap");
                }
            }
        }
    }
}

#[test]
fn letter_counts_sum_to_length() {
    for letters in all_words(3, 5) {
        let w = Word::new(letters, 3).unwrap();
        assert_eq!(letter_counts(&w, 3).unwrap().iter().sum::<usize>(), w.len());
    }
}
