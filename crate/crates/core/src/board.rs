//! Board geometry, premium squares and coordinate notation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tiles::PlacedTile;

pub const BOARD_SIZE: usize = 15;
pub const CENTER: Square = Square { row: 7, col: 7 };

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad coordinate {token:?}: {reason}")]
pub struct CoordinateError {
    pub token: String,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl Direction {
    pub fn other(self) -> Direction {
        match self {
            Direction::Horizontal => Direction::Vertical,
            Direction::Vertical => Direction::Horizontal,
        }
    }

    /// (row, col) step along this direction.
    pub fn step(self) -> (isize, isize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
        }
    }
}

/// Zero-based board square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub row: u8,
    pub col: u8,
}

impl Square {
    pub fn new(row: usize, col: usize) -> Square {
        assert!(row < BOARD_SIZE && col < BOARD_SIZE);
        Square {
            row: row as u8,
            col: col as u8,
        }
    }

    /// The square `n` steps away along `dir`, if on the board.
    pub fn offset(self, dir: Direction, n: isize) -> Option<Square> {
        let (dr, dc) = dir.step();
        let r = self.row as isize + dr * n;
        let c = self.col as isize + dc * n;
        if (0..BOARD_SIZE as isize).contains(&r) && (0..BOARD_SIZE as isize).contains(&c) {
            Some(Square::new(r as usize, c as usize))
        } else {
            None
        }
    }

    /// Square name in `<col><row>` form, e.g. `N8`.
    pub fn name(self) -> String {
        format!("{}{}", (b'A' + self.col) as char, self.row + 1)
    }
}

/// Start square plus direction of a play. Horizontal plays are written
/// row-first (`8K`), vertical plays column-first (`H11`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coordinate {
    pub square: Square,
    pub dir: Direction,
}

impl Coordinate {
    pub fn new(square: Square, dir: Direction) -> Coordinate {
        Coordinate { square, dir }
    }
}

impl FromStr for Coordinate {
    type Err = CoordinateError;

    fn from_str(text: &str) -> Result<Coordinate, CoordinateError> {
        let err = |reason| CoordinateError {
            token: text.to_string(),
            reason,
        };
        let first = text.chars().next().ok_or_else(|| err("empty"))?;
        let (dir, col_part, row_part) = if first.is_ascii_digit() {
            let split = text
                .find(|c: char| !c.is_ascii_digit())
                .ok_or_else(|| err("missing column letter"))?;
            (Direction::Horizontal, &text[split..], &text[..split])
        } else {
            (Direction::Vertical, &text[..1], &text[1..])
        };
        let mut cols = col_part.chars();
        let col_char = match (cols.next(), cols.next()) {
            (Some(c), None) => c,
            _ => return Err(err("expected a single column letter")),
        };
        if !('A'..='O').contains(&col_char) {
            return Err(err("column must be A-O"));
        }
        if row_part.is_empty() || !row_part.chars().all(|c| c.is_ascii_digit()) || row_part.starts_with('0') {
            return Err(err("row must be 1-15"));
        }
        let row: usize = row_part.parse().map_err(|_| err("row must be 1-15"))?;
        if !(1..=BOARD_SIZE).contains(&row) {
            return Err(err("row must be 1-15"));
        }
        Ok(Coordinate {
            square: Square::new(row - 1, (col_char as u8 - b'A') as usize),
            dir,
        })
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let col = (b'A' + self.square.col) as char;
        let row = self.square.row + 1;
        match self.dir {
            Direction::Horizontal => write!(f, "{row}{col}"),
            Direction::Vertical => write!(f, "{col}{row}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Premium {
    None,
    DoubleLetter,
    TripleLetter,
    DoubleWord,
    TripleWord,
}

impl Premium {
    pub fn letter_multiplier(self) -> u32 {
        match self {
            Premium::DoubleLetter => 2,
            Premium::TripleLetter => 3,
            _ => 1,
        }
    }

    pub fn word_multiplier(self) -> u32 {
        match self {
            Premium::DoubleWord => 2,
            Premium::TripleWord => 3,
            _ => 1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Premium::None => '.',
            Premium::DoubleLetter => '\'',
            Premium::TripleLetter => '"',
            Premium::DoubleWord => '-',
            Premium::TripleWord => '=',
        }
    }
}

// T = triple word, D = double word, t = triple letter, d = double letter.
const LAYOUT: [&str; BOARD_SIZE] = [
    "T..d...T...d..T",
    ".D...t...t...D.",
    "..D...d.d...D..",
    "d..D...d...D..d",
    "....D.....D....",
    ".t...t...t...t.",
    "..d...d.d...d..",
    "T..d...D...d..T",
    "..d...d.d...d..",
    ".t...t...t...t.",
    "....D.....D....",
    "d..D...d...D..d",
    "..D...d.d...D..",
    ".D...t...t...D.",
    "T..d...T...d..T",
];

pub fn premium(sq: Square) -> Premium {
    match LAYOUT[sq.row as usize].as_bytes()[sq.col as usize] {
        b'T' => Premium::TripleWord,
        b'D' => Premium::DoubleWord,
        b't' => Premium::TripleLetter,
        b'd' => Premium::DoubleLetter,
        _ => Premium::None,
    }
}

/// 15x15 grid of cells, each empty or holding a placed tile.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Board {
    cells: [[Option<PlacedTile>; BOARD_SIZE]; BOARD_SIZE],
}

impl Default for Board {
    fn default() -> Self {
        Board::new()
    }
}

impl Board {
    pub fn new() -> Board {
        Board {
            cells: [[None; BOARD_SIZE]; BOARD_SIZE],
        }
    }

    pub fn get(&self, sq: Square) -> Option<PlacedTile> {
        self.cells[sq.row as usize][sq.col as usize]
    }

    pub fn is_empty_at(&self, sq: Square) -> bool {
        self.get(sq).is_none()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(|r| r.iter().all(|c| c.is_none()))
    }

    pub(crate) fn set(&mut self, sq: Square, tile: PlacedTile) {
        debug_assert!(self.is_empty_at(sq));
        self.cells[sq.row as usize][sq.col as usize] = Some(tile);
    }

    pub fn squares() -> impl Iterator<Item = Square> {
        (0..BOARD_SIZE).flat_map(|r| (0..BOARD_SIZE).map(move |c| Square::new(r, c)))
    }

    /// All occupied squares with their tiles, row-major.
    pub fn tiles(&self) -> impl Iterator<Item = (Square, PlacedTile)> + '_ {
        Board::squares().filter_map(move |sq| self.get(sq).map(|t| (sq, t)))
    }

    pub fn has_neighbor(&self, sq: Square) -> bool {
        [Direction::Horizontal, Direction::Vertical].iter().any(|&d| {
            [-1, 1]
                .iter()
                .any(|&n| sq.offset(d, n).is_some_and(|s| !self.is_empty_at(s)))
        })
    }

    /// First square of the maximal occupied run through `sq` along `dir`,
    /// treating `sq` itself as occupied.
    pub fn run_start(&self, sq: Square, dir: Direction) -> Square {
        let mut cur = sq;
        while let Some(prev) = cur.offset(dir, -1) {
            if self.is_empty_at(prev) {
                break;
            }
            cur = prev;
        }
        cur
    }

    /// ASCII rendering: a column header then fifteen labelled rows. Empty
    /// squares show their premium (`=` TW, `-` DW, `"` TL, `'` DL), blanks
    /// are lowercase.
    pub fn render(&self) -> String {
        let mut out = String::from("   ");
        for c in 0..BOARD_SIZE {
            out.push(' ');
            out.push((b'A' + c as u8) as char);
        }
        out.push('\n');
        for r in 0..BOARD_SIZE {
            out.push_str(&format!("{:>2} ", r + 1));
            for c in 0..BOARD_SIZE {
                let sq = Square::new(r, c);
                out.push(' ');
                out.push(match self.get(sq) {
                    Some(t) => t.to_char(),
                    None => premium(sq).symbol(),
                });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
