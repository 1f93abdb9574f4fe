//! Tiles, tile multisets and the tile distribution.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Index of the blank in a [`TileSet`] count array.
pub const BLANK: u8 = 26;

/// Largest number of tiles a rack can hold.
pub const RACK_SIZE: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("invalid tile character {0:?}")]
    InvalidChar(char),
    #[error("rack would hold {0} tiles (limit 7)")]
    RackOverflow(usize),
    #[error("tiles {missing} are not available in {from}")]
    Missing { missing: String, from: String },
    #[error("distribution file line {line}: {reason}")]
    Distribution { line: usize, reason: String },
}

/// A tile as it sits on a rack or in the bag: a letter `A`..`Z` or an
/// undesignated blank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile(u8);

impl Tile {
    pub const BLANK: Tile = Tile(BLANK);

    pub fn letter(index: u8) -> Tile {
        assert!(index < 26, "letter index out of range: {index}");
        Tile(index)
    }

    pub fn from_char(c: char) -> Result<Tile, TileError> {
        match c {
            'A'..='Z' => Ok(Tile(c as u8 - b'A')),
            '?' => Ok(Tile::BLANK),
            _ => Err(TileError::InvalidChar(c)),
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn is_blank(self) -> bool {
        self.0 == BLANK
    }

    pub fn to_char(self) -> char {
        if self.is_blank() {
            '?'
        } else {
            (b'A' + self.0) as char
        }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A tile on the board. A played blank always carries its designated letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlacedTile {
    pub letter: u8,
    pub blank: bool,
}

impl PlacedTile {
    pub fn new(letter: u8, blank: bool) -> PlacedTile {
        assert!(letter < 26);
        PlacedTile { letter, blank }
    }

    /// Parses board notation: uppercase is a letter tile, lowercase a blank.
    pub fn from_char(c: char) -> Result<PlacedTile, TileError> {
        match c {
            'A'..='Z' => Ok(PlacedTile::new(c as u8 - b'A', false)),
            'a'..='z' => Ok(PlacedTile::new(c as u8 - b'a', true)),
            _ => Err(TileError::InvalidChar(c)),
        }
    }

    /// The rack tile this placement consumes.
    pub fn source(self) -> Tile {
        if self.blank {
            Tile::BLANK
        } else {
            Tile(self.letter)
        }
    }

    pub fn to_char(self) -> char {
        let c = (b'A' + self.letter) as char;
        if self.blank {
            c.to_ascii_lowercase()
        } else {
            c
        }
    }

    pub fn upper(self) -> char {
        (b'A' + self.letter) as char
    }
}

/// Multiset of tiles. Used for racks, the bag and unseen pools.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TileSet {
    counts: [u8; 27],
}

impl TileSet {
    pub fn new() -> TileSet {
        TileSet::default()
    }

    pub fn from_counts(counts: [u8; 27]) -> TileSet {
        TileSet { counts }
    }

    pub fn from_tiles<I: IntoIterator<Item = Tile>>(tiles: I) -> TileSet {
        let mut set = TileSet::new();
        for t in tiles {
            set.insert(t);
        }
        set
    }

    pub fn counts(&self) -> &[u8; 27] {
        &self.counts
    }

    pub fn count(&self, tile: Tile) -> u8 {
        self.counts[tile.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn insert(&mut self, tile: Tile) {
        self.counts[tile.0 as usize] += 1;
    }

    /// Removes one copy of `tile`; returns false if absent.
    pub fn remove(&mut self, tile: Tile) -> bool {
        let c = &mut self.counts[tile.0 as usize];
        if *c == 0 {
            false
        } else {
            *c -= 1;
            true
        }
    }

    pub fn contains_all(&self, other: &TileSet) -> bool {
        self.counts.iter().zip(other.counts.iter()).all(|(a, b)| a >= b)
    }

    pub fn union(&self, other: &TileSet) -> TileSet {
        let mut out = *self;
        for (a, b) in out.counts.iter_mut().zip(other.counts.iter()) {
            *a += *b;
        }
        out
    }

    pub fn difference(&self, other: &TileSet) -> Result<TileSet, TileError> {
        if !self.contains_all(other) {
            let mut missing = TileSet::new();
            for i in 0..27 {
                let need = other.counts[i].saturating_sub(self.counts[i]);
                missing.counts[i] = need;
            }
            return Err(TileError::Missing {
                missing: missing.to_string(),
                from: self.to_string(),
            });
        }
        let mut out = *self;
        for (a, b) in out.counts.iter_mut().zip(other.counts.iter()) {
            *a -= *b;
        }
        Ok(out)
    }

    /// Tiles in ascending order (letters, then blanks).
    pub fn tiles(&self) -> Vec<Tile> {
        let mut v = Vec::with_capacity(self.len());
        for (i, &c) in self.counts.iter().enumerate() {
            for _ in 0..c {
                v.push(Tile(i as u8));
            }
        }
        v
    }

    /// Distinct tiles present, ascending.
    pub fn distinct(&self) -> impl Iterator<Item = Tile> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| Tile(i as u8))
    }

    /// Sum of tile face values.
    pub fn value(&self, dist: &TileDistribution) -> u32 {
        self.distinct()
            .map(|t| dist.tile_value(t) * self.count(t) as u32)
            .sum()
    }

    /// Every sub-multiset of exactly `k` tiles, in lexicographic order.
    pub fn submultisets(&self, k: usize) -> Vec<TileSet> {
        fn rec(src: &TileSet, idx: usize, left: usize, cur: &mut TileSet, out: &mut Vec<TileSet>) {
            if left == 0 {
                out.push(*cur);
                return;
            }
            if idx == 27 {
                return;
            }
            let have = src.counts[idx] as usize;
            for take in (0..=have.min(left)).rev() {
                cur.counts[idx] = take as u8;
                rec(src, idx + 1, left - take, cur, out);
            }
            cur.counts[idx] = 0;
        }
        let mut out = Vec::new();
        if k <= self.len() {
            rec(self, 0, k, &mut TileSet::new(), &mut out);
        }
        out
    }
}

impl FromStr for TileSet {
    type Err = TileError;

    /// Parses a tile string such as `DEFJLLLQW`; `?` is a blank and `-` or
    /// the empty string is the empty set.
    fn from_str(s: &str) -> Result<TileSet, TileError> {
        let s = s.trim();
        if s == "-" {
            return Ok(TileSet::new());
        }
        let mut set = TileSet::new();
        for c in s.chars() {
            set.insert(Tile::from_char(c.to_ascii_uppercase())?);
        }
        Ok(set)
    }
}

impl fmt::Display for TileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.tiles() {
            write!(f, "{}", t.to_char())?;
        }
        Ok(())
    }
}

impl serde::Serialize for TileSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for TileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TileSet({self})")
    }
}

/// A rack: a multiset of at most seven tiles.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rack(TileSet);

impl Rack {
    pub fn new(tiles: TileSet) -> Result<Rack, TileError> {
        let n = tiles.len();
        if n > RACK_SIZE {
            return Err(TileError::RackOverflow(n));
        }
        Ok(Rack(tiles))
    }

    pub fn empty() -> Rack {
        Rack(TileSet::new())
    }

    pub fn tiles(&self) -> &TileSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for Rack {
    type Err = TileError;

    fn from_str(s: &str) -> Result<Rack, TileError> {
        Rack::new(s.parse()?)
    }
}

impl fmt::Display for Rack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl serde::Serialize for Rack {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Rack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rack({})", self.0)
    }
}

/// Tile counts and point values. [`TileDistribution::standard`] is the
/// 100-tile English set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileDistribution {
    counts: [u8; 27],
    values: [u8; 27],
}

const STANDARD: [(char, u8, u8); 27] = [
    ('A', 9, 1),
    ('B', 2, 3),
    ('C', 2, 3),
    ('D', 4, 2),
    ('E', 12, 1),
    ('F', 2, 4),
    ('G', 3, 2),
    ('H', 2, 4),
    ('I', 9, 1),
    ('J', 1, 8),
    ('K', 1, 5),
    ('L', 4, 1),
    ('M', 2, 3),
    ('N', 6, 1),
    ('O', 8, 1),
    ('P', 2, 3),
    ('Q', 1, 10),
    ('R', 6, 1),
    ('S', 4, 1),
    ('T', 6, 1),
    ('U', 4, 1),
    ('V', 2, 4),
    ('W', 2, 4),
    ('X', 1, 8),
    ('Y', 2, 4),
    ('Z', 1, 10),
    ('?', 2, 0),
];

impl Default for TileDistribution {
    fn default() -> Self {
        TileDistribution::standard()
    }
}

impl TileDistribution {
    pub fn standard() -> TileDistribution {
        let mut counts = [0; 27];
        let mut values = [0; 27];
        for (i, &(_, c, v)) in STANDARD.iter().enumerate() {
            counts[i] = c;
            values[i] = v;
        }
        TileDistribution { counts, values }
    }

    /// Reads an override file: one `<tile> <count> <value>` triple per line,
    /// `#` comments allowed. Tiles not listed keep their standard entry.
    pub fn parse(text: &str) -> Result<TileDistribution, TileError> {
        let mut dist = TileDistribution::standard();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: &str| TileError::Distribution {
                line: n + 1,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err("expected `<tile> <count> <value>`"));
            }
            let mut chars = fields[0].chars();
            let tile = match (chars.next(), chars.next()) {
                (Some(c), None) => Tile::from_char(c).map_err(|_| err("bad tile"))?,
                _ => return Err(err("bad tile")),
            };
            let count: u8 = fields[1].parse().map_err(|_| err("bad count"))?;
            let value: u8 = fields[2].parse().map_err(|_| err("bad value"))?;
            if tile.is_blank() && value != 0 {
                return Err(err("blank must be worth 0"));
            }
            dist.counts[tile.index() as usize] = count;
            dist.values[tile.index() as usize] = value;
        }
        Ok(dist)
    }

    pub fn tile_value(&self, tile: Tile) -> u32 {
        self.values[tile.index() as usize] as u32
    }

    /// Face value of a board tile; blanks are worth nothing.
    pub fn placed_value(&self, tile: PlacedTile) -> u32 {
        if tile.blank {
            0
        } else {
            self.values[tile.letter as usize] as u32
        }
    }

    pub fn letter_value(&self, letter: u8) -> u32 {
        self.values[letter as usize] as u32
    }

    pub fn full_set(&self) -> TileSet {
        TileSet::from_counts(self.counts)
    }

    pub fn total(&self) -> usize {
        self.full_set().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_set_has_100_tiles() {
        let d = TileDistribution::standard();
        assert_eq!(d.total(), 100);
        assert_eq!(d.tile_value(Tile::from_char('Z').unwrap()), 10);
        assert_eq!(d.tile_value(Tile::BLANK), 0);
    }

    #[test]
    fn face_value_of_fllqw() {
        let d = TileDistribution::standard();
        let s: TileSet = "FLLQW".parse().unwrap();
        assert_eq!(s.value(&d), 4 + 1 + 1 + 10 + 4);
    }

    #[test]
    fn difference_reports_missing() {
        let bag: TileSet = "D".parse().unwrap();
        let draw: TileSet = "DE".parse().unwrap();
        assert!(matches!(bag.difference(&draw), Err(TileError::Missing { .. })));
    }

    #[test]
    fn rack_limit() {
        assert!("ABCDEFGH".parse::<Rack>().is_err());
        assert_eq!("MKNOSYZ".parse::<Rack>().unwrap().to_string(), "KMNOSYZ");
    }

    #[test]
    fn submultisets_of_pool() {
        let pool: TileSet = "DEFJLLLQW".parse().unwrap();
        // 9 labelled tiles, 3 identical L's: distinct pairs are C(6,2) + 6 + 1.
        assert_eq!(pool.submultisets(2).len(), 15 + 6 + 1);
        assert_eq!(pool.submultisets(0), vec![TileSet::new()]);
    }

    #[test]
    fn override_file() {
        let d = TileDistribution::parse("# test\nZ 1 11\n").unwrap();
        assert_eq!(d.tile_value(Tile::from_char('Z').unwrap()), 11);
        assert!(TileDistribution::parse("? 2 3").is_err());
    }
}
