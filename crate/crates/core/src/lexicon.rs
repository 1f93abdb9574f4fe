//! Word lists: membership, anagram lookup and bingo search.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use thiserror::Error;

use crate::tiles::{Tile, TileSet};

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("word list is empty")]
    Empty,
    #[error("line {line}: {word:?} is not a word of 2-15 letters A-Z")]
    InvalidWord { line: usize, word: String },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Letter counts of a word, used as the anagram key.
pub type LetterKey = [u8; 26];

pub fn letter_key(word: &str) -> LetterKey {
    let mut key = [0u8; 26];
    for b in word.bytes() {
        key[(b.to_ascii_uppercase() - b'A') as usize] += 1;
    }
    key
}

fn tiles_key(tiles: &TileSet) -> LetterKey {
    let mut key = [0u8; 26];
    key.copy_from_slice(&tiles.counts()[..26]);
    key
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct TrieNode {
    children: [u32; 26],
    terminal: bool,
}

const NO_CHILD: u32 = u32::MAX;

/// Prefix tree over the word set; node 0 is the root.
#[derive(Debug, Clone)]
pub(crate) struct Trie {
    nodes: Vec<TrieNode>,
}

impl Trie {
    fn new() -> Trie {
        Trie {
            nodes: vec![TrieNode {
                children: [NO_CHILD; 26],
                terminal: false,
            }],
        }
    }

    fn insert(&mut self, word: &str) {
        let mut node = 0usize;
        for b in word.bytes() {
            let i = (b - b'A') as usize;
            let next = self.nodes[node].children[i];
            node = if next == NO_CHILD {
                self.nodes.push(TrieNode {
                    children: [NO_CHILD; 26],
                    terminal: false,
                });
                let id = self.nodes.len() - 1;
                self.nodes[node].children[i] = id as u32;
                id
            } else {
                next as usize
            };
        }
        self.nodes[node].terminal = true;
    }

    pub(crate) fn root(&self) -> usize {
        0
    }

    pub(crate) fn child(&self, node: usize, letter: u8) -> Option<usize> {
        let c = self.nodes[node].children[letter as usize];
        (c != NO_CHILD).then_some(c as usize)
    }

    pub(crate) fn is_terminal(&self, node: usize) -> bool {
        self.nodes[node].terminal
    }
}

/// An immutable word list.
#[derive(Debug, Clone)]
pub struct Lexicon {
    name: String,
    words: BTreeSet<String>,
    anagrams: HashMap<LetterKey, Vec<String>>,
    trie: Trie,
}

impl Lexicon {
    /// Parses a newline-delimited word list. Blank lines and lines starting
    /// with `#` are skipped; words are uppercased.
    pub fn parse(text: &str, name: &str) -> Result<Lexicon, LexiconError> {
        let mut words = BTreeSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let valid = (2..=15).contains(&line.len()) && line.bytes().all(|b| b.is_ascii_alphabetic());
            if !valid {
                return Err(LexiconError::InvalidWord {
                    line: n + 1,
                    word: line.to_string(),
                });
            }
            words.insert(line.to_ascii_uppercase());
        }
        if words.is_empty() {
            return Err(LexiconError::Empty);
        }
        Ok(Lexicon::from_words(words, name))
    }

    pub fn from_words<I: IntoIterator<Item = String>>(words: I, name: &str) -> Lexicon {
        let words: BTreeSet<String> = words.into_iter().map(|w| w.to_ascii_uppercase()).collect();
        let mut anagrams: HashMap<LetterKey, Vec<String>> = HashMap::new();
        let mut trie = Trie::new();
        for w in &words {
            anagrams.entry(letter_key(w)).or_default().push(w.clone());
            trie.insert(w);
        }
        Lexicon {
            name: name.to_string(),
            words,
            anagrams,
            trie,
        }
    }

    pub fn load(path: &Path) -> Result<Lexicon, LexiconError> {
        let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("lexicon");
        Lexicon::parse(&text, name)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        !word.is_empty() && self.words.contains(&word.to_ascii_uppercase())
    }

    /// Words in alphabetical order.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(|s| s.as_str())
    }

    pub(crate) fn trie(&self) -> &Trie {
        &self.trie
    }

    /// Exact anagrams of `tiles` (no blanks), sorted.
    pub fn anagrams(&self, tiles: &TileSet) -> Vec<String> {
        if tiles.count(Tile::BLANK) > 0 {
            return Vec::new();
        }
        let mut v = self.anagrams.get(&tiles_key(tiles)).cloned().unwrap_or_default();
        v.sort();
        v
    }

    /// Seven-letter words spelled by exactly the rack's tiles.
    pub fn bingos_from(&self, rack: &TileSet) -> Vec<String> {
        if rack.len() != 7 {
            return Vec::new();
        }
        self.anagrams(rack)
    }

    /// For every possible `draws`-tile draw from `pool`, the seven-letter
    /// words spelled by `rack - played + draw`. Draw combinations with no
    /// bingo map to an empty list.
    pub fn reachable_bingos(&self, rack: &TileSet, played: &TileSet, pool: &TileSet, draws: usize) -> BTreeMap<TileSet, Vec<String>> {
        let mut out = BTreeMap::new();
        let Ok(leave) = rack.difference(played) else {
            return out;
        };
        for draw in pool.submultisets(draws) {
            out.insert(draw, self.bingos_from(&leave.union(&draw)));
        }
        out
    }
}
