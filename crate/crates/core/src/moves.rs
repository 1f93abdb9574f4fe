//! Moves, placement geometry and scoring.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::board::{premium, Board, Coordinate, CoordinateError, Direction, Square, CENTER};
use crate::tiles::{PlacedTile, TileDistribution, TileSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlayError {
    #[error("placement has no tiles")]
    NoTiles,
    #[error("square {0} is already occupied")]
    Occupied(String),
    #[error("square {0} used twice")]
    Duplicate(String),
    #[error("tiles are not in a single line")]
    NotInLine,
    #[error("gap at {0} splits the play")]
    Gap(String),
    #[error("play does not touch existing tiles")]
    Disconnected,
    #[error("first play must cover the center square")]
    MissesCenter,
    #[error("play forms no word of two or more letters")]
    TooShort,
    #[error("pattern {pattern:?} at {coord}: {reason}")]
    Pattern {
        coord: String,
        pattern: String,
        reason: String,
    },
    #[error(transparent)]
    Coordinate(#[from] CoordinateError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WordScore {
    pub word: String,
    pub score: u32,
}

/// Points for a placement, kept per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ScoreBreakdown {
    pub main: WordScore,
    pub cross: Vec<WordScore>,
    pub bingo: u32,
}

impl ScoreBreakdown {
    pub fn total(&self) -> u32 {
        self.main.score + self.cross.iter().map(|w| w.score).sum::<u32>() + self.bingo
    }
}

/// Newly placed tiles together with the words they form and their score.
///
/// `coord` is the first square of the main word (which may be an existing
/// tile). A single-tile play is oriented along whichever line gives a word
/// of two or more letters, horizontal when both do.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    pub coord: Coordinate,
    pub word: String,
    pub tiles: Vec<(Square, PlacedTile)>,
    pub score: ScoreBreakdown,
}

pub const BINGO_BONUS: u32 = 50;

fn read_run(board: &Board, placed: &[(Square, PlacedTile)], start: Square, dir: Direction) -> Vec<(Square, PlacedTile, bool)> {
    let lookup = |sq: Square| -> Option<(PlacedTile, bool)> {
        if let Some(t) = board.get(sq) {
            return Some((t, false));
        }
        placed.iter().find(|(s, _)| *s == sq).map(|(_, t)| (*t, true))
    };
    let mut first = start;
    while let Some(prev) = first.offset(dir, -1) {
        if lookup(prev).is_none() {
            break;
        }
        first = prev;
    }
    let mut out = Vec::new();
    let mut cur = Some(first);
    while let Some(sq) = cur {
        match lookup(sq) {
            Some((t, new)) => out.push((sq, t, new)),
            None => break,
        }
        cur = sq.offset(dir, 1);
    }
    out
}

fn score_run(run: &[(Square, PlacedTile, bool)], dist: &TileDistribution) -> u32 {
    let mut sum = 0;
    let mut mult = 1;
    for &(sq, t, new) in run {
        let v = dist.placed_value(t);
        if new {
            let p = premium(sq);
            sum += v * p.letter_multiplier();
            mult *= p.word_multiplier();
        } else {
            sum += v;
        }
    }
    sum * mult
}

fn run_word(run: &[(Square, PlacedTile, bool)]) -> String {
    run.iter().map(|(_, t, _)| t.to_char()).collect()
}

impl Placement {
    /// Validates placement geometry and scores it. The direction comes from
    /// the line through the tiles.
    pub fn new(board: &Board, mut tiles: Vec<(Square, PlacedTile)>, dist: &TileDistribution) -> Result<Placement, PlayError> {
        if tiles.is_empty() {
            return Err(PlayError::NoTiles);
        }
        tiles.sort();
        for w in tiles.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(PlayError::Duplicate(w[0].0.name()));
            }
        }
        for (sq, _) in &tiles {
            if !board.is_empty_at(*sq) {
                return Err(PlayError::Occupied(sq.name()));
            }
        }
        let first = tiles[0].0;
        let dir = if tiles.len() == 1 {
            let h = read_run(board, &tiles, first, Direction::Horizontal).len();
            let v = read_run(board, &tiles, first, Direction::Vertical).len();
            if h >= 2 {
                Direction::Horizontal
            } else if v >= 2 {
                Direction::Vertical
            } else if board.is_empty() {
                return Err(PlayError::TooShort);
            } else {
                return Err(PlayError::Disconnected);
            }
        } else if tiles.iter().all(|(s, _)| s.row == first.row) {
            Direction::Horizontal
        } else if tiles.iter().all(|(s, _)| s.col == first.col) {
            Direction::Vertical
        } else {
            return Err(PlayError::NotInLine);
        };

        let main_run = read_run(board, &tiles, first, dir);
        let last = tiles[tiles.len() - 1].0;
        if !main_run.iter().any(|(s, _, _)| *s == last) {
            // the run stopped at an empty square before reaching the last tile
            let gap = main_run
                .last()
                .and_then(|(s, _, _)| s.offset(dir, 1))
                .map(|s| s.name())
                .unwrap_or_default();
            return Err(PlayError::Gap(gap));
        }
        if main_run.len() < 2 {
            return Err(PlayError::TooShort);
        }
        if board.is_empty() {
            if !tiles.iter().any(|(s, _)| *s == CENTER) {
                return Err(PlayError::MissesCenter);
            }
        } else if !tiles.iter().any(|(s, _)| board.has_neighbor(*s)) {
            return Err(PlayError::Disconnected);
        }

        let main = WordScore {
            word: run_word(&main_run),
            score: score_run(&main_run, dist),
        };
        let mut cross = Vec::new();
        for &(sq, _) in &tiles {
            let run = read_run(board, &tiles, sq, dir.other());
            if run.len() >= 2 {
                cross.push(WordScore {
                    word: run_word(&run),
                    score: score_run(&run, dist),
                });
            }
        }
        let bingo = if tiles.len() == 7 { BINGO_BONUS } else { 0 };
        Ok(Placement {
            coord: Coordinate::new(main_run[0].0, dir),
            word: main.word.clone(),
            tiles,
            score: ScoreBreakdown { main, cross, bingo },
        })
    }

    /// Builds a placement from notation such as `8K DITZ` or `4F bA.TERIA`.
    /// Dots stand for tiles already on the board; letters over occupied
    /// squares must match them. Lowercase letters on empty squares are blanks.
    pub fn from_notation(board: &Board, coord: &str, pattern: &str, dist: &TileDistribution) -> Result<Placement, PlayError> {
        let c: Coordinate = coord.parse()?;
        let perr = |reason: String| PlayError::Pattern {
            coord: coord.to_string(),
            pattern: pattern.to_string(),
            reason,
        };
        if pattern.is_empty() {
            return Err(perr("empty word".into()));
        }
        if c.square.offset(c.dir, -1).is_some_and(|s| !board.is_empty_at(s)) {
            return Err(perr("word does not start at the coordinate".into()));
        }
        let mut tiles = Vec::new();
        let mut sq = Some(c.square);
        for ch in pattern.chars() {
            let here = sq.ok_or_else(|| perr("runs off the board".into()))?;
            match (board.get(here), ch) {
                (Some(_), '.') => {}
                (None, '.') => return Err(perr(format!("dot over empty square {}", here.name()))),
                (Some(t), ch) => {
                    if !ch.is_ascii_alphabetic() || t.upper() != ch.to_ascii_uppercase() {
                        return Err(perr(format!("{} holds {}, not {ch}", here.name(), t.to_char())));
                    }
                }
                (None, ch) => {
                    let t = PlacedTile::from_char(ch).map_err(|e| perr(e.to_string()))?;
                    tiles.push((here, t));
                }
            }
            sq = here.offset(c.dir, 1);
        }
        if sq.is_some_and(|s| !board.is_empty_at(s)) {
            return Err(perr("word continues past the pattern".into()));
        }
        if tiles.is_empty() {
            return Err(perr("places no tiles".into()));
        }
        let p = Placement::new(board, tiles, dist)?;
        Ok(p)
    }

    /// Rack tiles consumed (blanks as `?`).
    pub fn rack_tiles(&self) -> TileSet {
        TileSet::from_tiles(self.tiles.iter().map(|(_, t)| t.source()))
    }

    /// Main word with dots for squares that were already occupied.
    pub fn gcg_word(&self) -> String {
        let mut sq = Some(self.coord.square);
        let mut out = String::new();
        for ch in self.word.chars() {
            let here = sq.expect("word fits on board");
            if self.tiles.iter().any(|(s, _)| *s == here) {
                out.push(ch);
            } else {
                out.push('.');
            }
            sq = here.offset(self.coord.dir, 1);
        }
        out
    }

    /// Every word formed, main word first.
    pub fn words(&self) -> Vec<&str> {
        std::iter::once(self.score.main.word.as_str())
            .chain(self.score.cross.iter().map(|w| w.word.as_str()))
            .collect()
    }

    pub fn total(&self) -> u32 {
        self.score.total()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    Pass,
    Place(Placement),
}

impl Move {
    pub fn score(&self) -> u32 {
        match self {
            Move::Pass => 0,
            Move::Place(p) => p.total(),
        }
    }

    pub fn tiles_used(&self) -> usize {
        match self {
            Move::Pass => 0,
            Move::Place(p) => p.tiles.len(),
        }
    }

    pub fn placement(&self) -> Option<&Placement> {
        match self {
            Move::Pass => None,
            Move::Place(p) => Some(p),
        }
    }

    /// Short notation: `8K DITZ` or `pass`.
    pub fn notation(&self) -> String {
        match self {
            Move::Pass => "pass".to_string(),
            Move::Place(p) => format!("{} {}", p.coord, p.word),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Pass => write!(f, "pass"),
            Move::Place(p) => write!(f, "{} {} {}", p.coord, p.word, p.total()),
        }
    }
}

/// Scores a placement against `board`, validating its geometry.
pub fn score_play(board: &Board, tiles: Vec<(Square, PlacedTile)>, dist: &TileDistribution) -> Result<ScoreBreakdown, PlayError> {
    Placement::new(board, tiles, dist).map(|p| p.score)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn place_word(board: &mut Board, coord: &str, word: &str) -> Placement {
        let d = TileDistribution::standard();
        let p = Placement::from_notation(board, coord, word, &d).unwrap();
        for (s, t) in &p.tiles {
            board.set(*s, *t);
        }
        p
    }

    #[test]
    fn opening_play_doubles() {
        let mut b = Board::new();
        let p = place_word(&mut b, "H4", "CABER");
        // C on the H4 double letter, H8 is the double-word center.
        assert_eq!(p.total(), (6 + 1 + 3 + 1 + 1) * 2);
        assert_eq!(p.coord.to_string(), "H4");
    }

    #[test]
    fn blank_scores_zero_and_lowercase() {
        let mut b = Board::new();
        place_word(&mut b, "H4", "CABER");
        let p = place_word(&mut b, "4F", "bA.TERIA");
        assert_eq!(p.word, "bACTERIA");
        assert_eq!(p.gcg_word(), "bA.TERIA");
        assert_eq!(p.tiles.len(), 7);
        assert_eq!(p.score.bingo, 50);
    }

    #[test]
    fn geometry_errors() {
        let d = TileDistribution::standard();
        let mut b = Board::new();
        let a = PlacedTile::from_char('A').unwrap();
        assert_eq!(
            Placement::new(&b, vec![(Square::new(0, 0), a), (Square::new(0, 1), a)], &d),
            Err(PlayError::MissesCenter)
        );
        place_word(&mut b, "8G", "AB");
        assert_eq!(
            Placement::new(&b, vec![(Square::new(0, 0), a), (Square::new(0, 1), a)], &d),
            Err(PlayError::Disconnected)
        );
        assert!(matches!(
            Placement::new(&b, vec![(Square::new(7, 6), a)], &d),
            Err(PlayError::Occupied(_))
        ));
        assert!(matches!(
            Placement::new(&b, vec![(Square::new(8, 6), a), (Square::new(8, 9), a)], &d),
            Err(PlayError::Gap(_))
        ));
        assert_eq!(
            Placement::new(&b, vec![(Square::new(8, 6), a), (Square::new(9, 7), a)], &d),
            Err(PlayError::NotInLine)
        );
    }

    #[test]
    fn single_tile_orientation() {
        let d = TileDistribution::standard();
        let mut b = Board::new();
        place_word(&mut b, "8G", "AB");
        // a tile under B forms only a vertical word
        let p = Placement::new(&b, vec![(Square::new(8, 7), PlacedTile::from_char('E').unwrap())], &d).unwrap();
        assert_eq!(p.coord.dir, Direction::Vertical);
        assert_eq!(p.word, "BE");
        assert!(p.score.cross.is_empty());
    }

    #[test]
    fn pattern_mismatch() {
        let d = TileDistribution::standard();
        let mut b = Board::new();
        place_word(&mut b, "8G", "AB");
        assert!(Placement::from_notation(&b, "8G", "XBE", &d).is_err());
        assert!(Placement::from_notation(&b, "8H", "BE", &d).is_err()); // starts mid-word
        assert!(Placement::from_notation(&b, "8G", "A", &d).is_err()); // word continues
        assert!(Placement::from_notation(&b, "8G", "ABE", &d).is_ok());
    }
}
