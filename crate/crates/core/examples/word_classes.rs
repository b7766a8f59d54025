//! Sizes of the word classes used in the rate analysis, and the labels of a
//! few sample words.

use brownsig::words::{enumerate, WordClass};
use brownsig::{Word, WordClassReport};

fn main() -> brownsig::Result<()> {
    for (d, n) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        let report = WordClassReport::new(d, n)?;
        let sizes: Vec<String> = report.cardinalities.iter().map(|(c, k)| format!("{c}={k}")).collect();
        println!("d={d} n={n}: {}", sizes.join(" "));
    }

    println!("E at d=2: {:?}", enumerate(WordClass::Exchange, 2, 2)?.iter().map(Word::to_string).collect::<Vec<_>>());

    let report = WordClassReport::new(3, 3)?;
    for s in ["112233", "121233", "111212", "122113", "123123"] {
        let w = Word::parse(s, 3)?;
        let labels: Vec<String> = report.labels(&w)?.iter().map(ToString::to_string).collect();
        if labels.is_empty() {
            println!("{s}: no class (odd letter counts)");
        } else {
            println!("{s}: {}", labels.join(", "));
        }
    }
    Ok(())
}
