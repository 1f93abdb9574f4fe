//! Replays a transcript without word checks and prints every word formed,
//! one per line, sorted and deduplicated.
//!
//!     cargo run -p pegbluff --example formed_words -- data/puzzle.gcg

use std::collections::BTreeSet;

use pegbluff::gcg::{parse_gcg, replay_unchecked};
use pegbluff::TileDistribution;

fn main() {
    let path = std::env::args().nth(1).expect("usage: formed_words <file.gcg>");
    let text = std::fs::read_to_string(&path).expect("readable transcript");
    let doc = parse_gcg(&text).expect("valid transcript");
    let r = replay_unchecked(&doc, &TileDistribution::standard()).expect("legal transcript");
    let words: BTreeSet<String> = r
        .audit
        .iter()
        .flat_map(|a| a.words.iter().map(|w| w.to_ascii_uppercase()))
        .collect();
    for w in words {
        println!("{w}");
    }
    eprintln!("final {:?}, {} score mismatches", r.position.scores, r.mismatches());
}
