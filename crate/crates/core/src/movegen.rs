//! Legal-move generation.
//!
//! Anchor-based generation: every legal placement touches an anchor (an
//! empty square next to a tile, or the center on an empty board). For each
//! line we grow left parts over the empty non-anchor squares before an
//! anchor, then extend right through the anchor while the trie allows,
//! checking each newly covered square against its cross-check set.

use std::collections::HashSet;

use thiserror::Error;

use crate::board::{Board, Direction, Square, BOARD_SIZE, CENTER};
use crate::lexicon::{Lexicon, Trie};
use crate::moves::{Move, Placement};
use crate::position::Position;
use crate::tiles::{PlacedTile, TileDistribution, TileSet, BLANK};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MovegenError {
    #[error("threat {0} is not legal on this board")]
    IllegalThreat(String),
}

const ALL_LETTERS: u32 = (1 << 26) - 1;

/// For each empty square and play direction, the letters whose
/// perpendicular word is valid. A square with no perpendicular neighbours
/// allows every letter.
#[derive(Debug, Clone)]
pub struct CrossCheckTable {
    masks: [[[u32; BOARD_SIZE]; BOARD_SIZE]; 2],
}

fn dir_index(d: Direction) -> usize {
    match d {
        Direction::Horizontal => 0,
        Direction::Vertical => 1,
    }
}

/// Letters of the occupied run starting `n=1` steps from `sq` going `step`
/// (+1 or -1) along `dir`, in board order.
fn adjacent_run(board: &Board, sq: Square, dir: Direction, step: isize) -> Vec<u8> {
    let mut out = Vec::new();
    let mut n = step;
    while let Some(s) = sq.offset(dir, n) {
        match board.get(s) {
            Some(t) => out.push(t.letter),
            None => break,
        }
        n += step;
    }
    if step < 0 {
        out.reverse();
    }
    out
}

/// Letters `l` for which `before + l + after` is a word.
fn cross_mask(trie: &Trie, before: &[u8], after: &[u8]) -> u32 {
    let mut node = trie.root();
    for &b in before {
        match trie.child(node, b) {
            Some(n) => node = n,
            None => return 0,
        }
    }
    let mut mask = 0;
    'letters: for l in 0..26u8 {
        let Some(mut n) = trie.child(node, l) else {
            continue;
        };
        for &a in after {
            match trie.child(n, a) {
                Some(next) => n = next,
                None => continue 'letters,
            }
        }
        if trie.is_terminal(n) {
            mask |= 1 << l;
        }
    }
    mask
}

impl CrossCheckTable {
    pub fn new(board: &Board, lexicon: &Lexicon) -> CrossCheckTable {
        let mut masks = [[[0u32; BOARD_SIZE]; BOARD_SIZE]; 2];
        for play in [Direction::Horizontal, Direction::Vertical] {
            let perp = play.other();
            for sq in Board::squares() {
                if !board.is_empty_at(sq) {
                    continue;
                }
                let occupied = |n: isize| sq.offset(perp, n).is_some_and(|s| !board.is_empty_at(s));
                let mask = if !occupied(-1) && !occupied(1) {
                    ALL_LETTERS
                } else {
                    cross_mask(lexicon.trie(), &adjacent_run(board, sq, perp, -1), &adjacent_run(board, sq, perp, 1))
                };
                masks[dir_index(play)][sq.row as usize][sq.col as usize] = mask;
            }
        }
        CrossCheckTable { masks }
    }

    /// Whether `letter` may be placed at `sq` in a play along `play`.
    pub fn allows(&self, sq: Square, play: Direction, letter: u8) -> bool {
        self.masks[dir_index(play)][sq.row as usize][sq.col as usize] & (1 << letter) != 0
    }

    pub fn mask(&self, sq: Square, play: Direction) -> u32 {
        self.masks[dir_index(play)][sq.row as usize][sq.col as usize]
    }
}

fn line_square(dir: Direction, line: usize, pos: usize) -> Square {
    match dir {
        Direction::Horizontal => Square::new(line, pos),
        Direction::Vertical => Square::new(pos, line),
    }
}

fn is_anchor(board: &Board, sq: Square) -> bool {
    board.is_empty_at(sq) && if board.is_empty() { sq == CENTER } else { board.has_neighbor(sq) }
}

struct Generator<'a> {
    board: &'a Board,
    trie: &'a Trie,
    checks: &'a CrossCheckTable,
    dir: Direction,
    line: usize,
    rack: [u8; 27],
    placed: Vec<(Square, PlacedTile)>,
    found: Vec<Vec<(Square, PlacedTile)>>,
}

impl Generator<'_> {
    fn cell(&self, pos: usize) -> Option<PlacedTile> {
        self.board.get(line_square(self.dir, self.line, pos))
    }

    /// Letters the rack can supply, counting a blank as any letter.
    fn playable(&self) -> u32 {
        if self.rack[BLANK as usize] > 0 {
            return ALL_LETTERS;
        }
        (0..26).filter(|&l| self.rack[l] > 0).fold(0, |m, l| m | 1 << l)
    }

    /// Candidate tiles for `letter`: the letter tile and/or a blank.
    fn sources(&self, letter: u8) -> impl Iterator<Item = (usize, PlacedTile)> {
        let mut v = [None, None];
        if self.rack[letter as usize] > 0 {
            v[0] = Some((letter as usize, PlacedTile::new(letter, false)));
        }
        if self.rack[BLANK as usize] > 0 {
            v[1] = Some((BLANK as usize, PlacedTile::new(letter, true)));
        }
        v.into_iter().flatten()
    }

    fn extend_right(&mut self, node: usize, pos: usize, anchor: usize) {
        if pos >= BOARD_SIZE {
            if pos > anchor && self.trie.is_terminal(node) {
                self.found.push(self.placed.clone());
            }
            return;
        }
        match self.cell(pos) {
            Some(t) => {
                if let Some(next) = self.trie.child(node, t.letter) {
                    self.extend_right(next, pos + 1, anchor);
                }
            }
            None => {
                if pos > anchor && self.trie.is_terminal(node) {
                    self.found.push(self.placed.clone());
                }
                let sq = line_square(self.dir, self.line, pos);
                let mask = self.checks.mask(sq, self.dir) & self.playable();
                for letter in 0..26u8 {
                    if mask & (1 << letter) == 0 {
                        continue;
                    }
                    let Some(next) = self.trie.child(node, letter) else {
                        continue;
                    };
                    let sources: Vec<_> = self.sources(letter).collect();
                    for (idx, tile) in sources {
                        self.rack[idx] -= 1;
                        self.placed.push((sq, tile));
                        self.extend_right(next, pos + 1, anchor);
                        self.placed.pop();
                        self.rack[idx] += 1;
                    }
                }
            }
        }
    }
}

/// Enumerates placement tile-sets for one direction.
fn generate_dir(board: &Board, lexicon: &Lexicon, checks: &CrossCheckTable, rack: &TileSet, dir: Direction) -> Vec<Vec<(Square, PlacedTile)>> {
    let mut out = Vec::new();
    for line in 0..BOARD_SIZE {
        let mut g = Generator {
            board,
            trie: lexicon.trie(),
            checks,
            dir,
            line,
            rack: *rack.counts(),
            placed: Vec::new(),
            found: Vec::new(),
        };
        for anchor in 0..BOARD_SIZE {
            if !is_anchor(board, line_square(dir, line, anchor)) {
                continue;
            }
            if anchor > 0 && g.cell(anchor - 1).is_some() {
                // left part is the existing run ending before the anchor
                let mut start = anchor - 1;
                while start > 0 && g.cell(start - 1).is_some() {
                    start -= 1;
                }
                let mut node = Some(g.trie.root());
                for pos in start..anchor {
                    let l = g.cell(pos).expect("occupied").letter;
                    node = node.and_then(|n| g.trie.child(n, l));
                }
                if let Some(n) = node {
                    g.extend_right(n, anchor, anchor);
                }
            } else {
                // empty non-anchor squares available to the left
                let mut limit = 0;
                while limit < anchor
                    && limit < rack.len().saturating_sub(1)
                    && !is_anchor(board, line_square(dir, line, anchor - limit - 1))
                    && g.cell(anchor - limit - 1).is_none()
                {
                    limit += 1;
                }
                let root = g.trie.root();
                for len in 0..=limit {
                    left_prefixes(&mut g, root, anchor, anchor - len);
                }
            }
        }
        out.append(&mut g.found);
    }
    out
}

/// Places tiles on `pos..anchor` walking the trie, then extends right.
fn left_prefixes(g: &mut Generator<'_>, node: usize, anchor: usize, pos: usize) {
    if pos == anchor {
        g.extend_right(node, anchor, anchor);
        return;
    }
    let sq = line_square(g.dir, g.line, pos);
    let mask = g.playable();
    for letter in 0..26u8 {
        if mask & (1 << letter) == 0 {
            continue;
        }
        let Some(next) = g.trie.child(node, letter) else {
            continue;
        };
        let sources: Vec<_> = g.sources(letter).collect();
        for (idx, tile) in sources {
            g.rack[idx] -= 1;
            g.placed.push((sq, tile));
            left_prefixes(g, next, anchor, pos + 1);
            g.placed.pop();
            g.rack[idx] += 1;
        }
    }
}

/// Deterministic move order: score descending, then word, then coordinate,
/// then tiles.
pub fn move_order(a: &Move, b: &Move) -> std::cmp::Ordering {
    match (a, b) {
        (Move::Pass, Move::Pass) => std::cmp::Ordering::Equal,
        (Move::Pass, _) => std::cmp::Ordering::Greater,
        (_, Move::Pass) => std::cmp::Ordering::Less,
        (Move::Place(x), Move::Place(y)) => y
            .total()
            .cmp(&x.total())
            .then_with(|| x.word.cmp(&y.word))
            .then_with(|| x.coord.cmp(&y.coord))
            .then_with(|| x.tiles.cmp(&y.tiles)),
    }
}

/// Every legal placement of `rack` tiles on `board`, scored and ordered by
/// [`move_order`], followed by a pass.
pub fn generate_placements(board: &Board, rack: &TileSet, lexicon: &Lexicon, dist: &TileDistribution) -> Vec<Move> {
    let mut moves = Vec::new();
    if rack.is_empty() {
        moves.push(Move::Pass);
        return moves;
    }
    let checks = CrossCheckTable::new(board, lexicon);
    let mut seen = HashSet::new();
    for dir in [Direction::Horizontal, Direction::Vertical] {
        for tiles in generate_dir(board, lexicon, &checks, rack, dir) {
            let mut key = tiles.clone();
            key.sort();
            if !seen.insert(key) {
                continue;
            }
            let p = Placement::new(board, tiles, dist).expect("generator yields legal geometry");
            moves.push(Move::Place(p));
        }
    }
    moves.sort_by(move_order);
    moves.push(Move::Pass);
    moves
}

/// Moves for the player to move in `position` holding `rack`.
pub fn generate_moves(position: &Position, rack: &TileSet, lexicon: &Lexicon, dist: &TileDistribution) -> Vec<Move> {
    generate_placements(&position.board, rack, lexicon, dist)
}

/// The first move in generation order (a pass when nothing plays).
pub fn highest_scoring(position: &Position, rack: &TileSet, lexicon: &Lexicon, dist: &TileDistribution) -> Move {
    generate_moves(position, rack, lexicon, dist)
        .into_iter()
        .next()
        .unwrap_or(Move::Pass)
}

/// Whether `placement` is a legal play on `board`: valid geometry and every
/// formed word in the lexicon. Rack contents are not considered.
pub fn is_legal_on(board: &Board, placement: &Placement, lexicon: &Lexicon, dist: &TileDistribution) -> bool {
    match Placement::new(board, placement.tiles.clone(), dist) {
        Ok(p) => p.words().iter().all(|w| lexicon.contains(w)),
        Err(_) => false,
    }
}

/// Moves of `rack` after which `threat` can no longer be played.
pub fn blocking_moves(
    position: &Position,
    rack: &TileSet,
    lexicon: &Lexicon,
    dist: &TileDistribution,
    threat: &Placement,
) -> Result<Vec<Move>, MovegenError> {
    if !is_legal_on(&position.board, threat, lexicon, dist) {
        return Err(MovegenError::IllegalThreat(format!("{} {}", threat.coord, threat.word)));
    }
    Ok(generate_moves(position, rack, lexicon, dist)
        .into_iter()
        .filter(|m| match m {
            Move::Pass => false,
            Move::Place(p) => {
                let mut b = position.board.clone();
                for (sq, t) in &p.tiles {
                    b.set(*sq, *t);
                }
                !is_legal_on(&b, threat, lexicon, dist)
            }
        })
        .collect())
}
