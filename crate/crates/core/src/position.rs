//! Game state: board, racks, bag, scores and the turn.

use serde::Serialize;
use thiserror::Error;

use crate::board::Board;
use crate::moves::{Move, Placement, PlayError};
use crate::tiles::{Rack, TileDistribution, TileError, TileSet, RACK_SIZE};

/// Consecutive scoreless turns that end the game.
pub const SCORELESS_LIMIT: u8 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PositionError {
    #[error("tiles {tiles} are not on player {player}'s rack {rack}")]
    NotOnRack { player: usize, tiles: String, rack: String },
    #[error(transparent)]
    Play(#[from] PlayError),
    #[error("draw {drawn} is not available in bag {bag}")]
    NotInBag { drawn: String, bag: String },
    #[error("player {player} must draw {expected} tiles, not {got}")]
    DrawCount { player: usize, expected: usize, got: usize },
    #[error("player {0}'s rack is hidden")]
    HiddenRack(usize),
    #[error("the game is not over: {0}")]
    NotTerminal(&'static str),
    #[error("placement {0} does not match this board")]
    StalePlacement(String),
    #[error("tile conservation violated: {0}")]
    Conservation(String),
    #[error(transparent)]
    Tiles(#[from] TileError),
}

/// What is known about a player's rack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RackView {
    Known(Rack),
    /// Only the number of tiles is known; the tiles are part of the pool.
    Hidden(usize),
}

impl RackView {
    pub fn len(&self) -> usize {
        match self {
            RackView::Known(r) => r.len(),
            RackView::Hidden(n) => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn known(&self) -> Option<&Rack> {
        match self {
            RackView::Known(r) => Some(r),
            RackView::Hidden(_) => None,
        }
    }
}

/// +1 win, 0 tie, -1 loss for a designated player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Outcome {
    Loss = -1,
    Tie = 0,
    Win = 1,
}

impl Outcome {
    pub fn from_spread(spread: i32) -> Outcome {
        match spread.signum() {
            1 => Outcome::Win,
            0 => Outcome::Tie,
            _ => Outcome::Loss,
        }
    }

    pub fn value(self) -> i8 {
        self as i8
    }

    pub fn from_value(v: i8) -> Outcome {
        match v {
            1 => Outcome::Win,
            0 => Outcome::Tie,
            -1 => Outcome::Loss,
            _ => panic!("game value out of range: {v}"),
        }
    }

    pub fn negate(self) -> Outcome {
        Outcome::from_value(-self.value())
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Win => "WIN",
            Outcome::Tie => "TIE",
            Outcome::Loss => "LOSS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ending {
    /// The player who just moved emptied their rack with the bag empty.
    Out,
    /// The scoreless-turn limit was reached.
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FinalResult {
    pub scores: [i32; 2],
    pub outcome: Outcome,
}

/// A game state.
///
/// `pool` holds every tile that is neither on the board nor on a known
/// rack: with both racks known it is exactly the bag, otherwise it also
/// contains the hidden racks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    pub board: Board,
    pub racks: [RackView; 2],
    pub pool: TileSet,
    pub scores: [i32; 2],
    pub to_move: usize,
    pub scoreless_turns: u8,
}

impl Position {
    /// Fresh game: empty board, both racks hidden and empty, full bag.
    pub fn new(dist: &TileDistribution) -> Position {
        Position {
            board: Board::new(),
            racks: [RackView::Hidden(0), RackView::Hidden(0)],
            pool: dist.full_set(),
            scores: [0, 0],
            to_move: 0,
            scoreless_turns: 0,
        }
    }

    pub fn bag_size(&self) -> usize {
        let hidden: usize = self
            .racks
            .iter()
            .map(|r| match r {
                RackView::Hidden(n) => *n,
                RackView::Known(_) => 0,
            })
            .sum();
        self.pool.len() - hidden
    }

    /// The bag contents, when both racks are known.
    pub fn bag(&self) -> Option<&TileSet> {
        if self.racks.iter().all(|r| r.known().is_some()) {
            Some(&self.pool)
        } else {
            None
        }
    }

    pub fn rack(&self, player: usize) -> Option<&Rack> {
        self.racks[player].known()
    }

    pub fn board_tiles(&self) -> TileSet {
        TileSet::from_tiles(self.board.tiles().map(|(_, t)| t.source()))
    }

    /// Reveals a hidden rack, taking its tiles out of the pool.
    pub fn with_rack(&self, player: usize, rack: Rack) -> Result<Position, PositionError> {
        let mut next = self.clone();
        let mut pool = self.pool;
        if let RackView::Known(old) = self.racks[player] {
            pool = pool.union(old.tiles());
        }
        next.pool = pool.difference(rack.tiles())?;
        next.racks[player] = RackView::Known(rack);
        Ok(next)
    }

    /// Hides a rack of `len` tiles, returning its tiles to the pool.
    pub fn with_hidden_rack(&self, player: usize) -> Position {
        let mut next = self.clone();
        if let RackView::Known(r) = self.racks[player] {
            next.pool = self.pool.union(r.tiles());
            next.racks[player] = RackView::Hidden(r.len());
        }
        next
    }

    /// Board + known racks + pool must equal the full distribution.
    pub fn check_conservation(&self, dist: &TileDistribution) -> Result<(), PositionError> {
        let mut all = self.board_tiles().union(&self.pool);
        for r in &self.racks {
            if let RackView::Known(r) = r {
                all = all.union(r.tiles());
            }
        }
        if all != dist.full_set() {
            return Err(PositionError::Conservation(format!("have {all}")));
        }
        Ok(())
    }

    /// Plays `mv` for the player to move. Tiles leave the mover's rack (or
    /// the pool, for a hidden rack); drawing is a separate step. The
    /// placement is re-validated and re-scored against this board.
    pub fn apply_play(&self, mv: &Move, dist: &TileDistribution) -> Result<Position, PositionError> {
        if let Move::Place(pl) = mv {
            let checked = Placement::new(&self.board, pl.tiles.clone(), dist)?;
            if checked != *pl {
                return Err(PositionError::StalePlacement(mv.notation()));
            }
        }
        self.apply_trusted(mv)
    }

    /// [`Position::apply_play`] without re-validating geometry, for moves
    /// generated against this exact board.
    pub(crate) fn apply_trusted(&self, mv: &Move) -> Result<Position, PositionError> {
        let mut next = self.clone();
        let p = self.to_move;
        match mv {
            Move::Pass => {
                next.scoreless_turns += 1;
            }
            Move::Place(pl) => {
                let used = pl.rack_tiles();
                match self.racks[p] {
                    RackView::Known(r) => {
                        let left = r.tiles().difference(&used).map_err(|_| PositionError::NotOnRack {
                            player: p,
                            tiles: used.to_string(),
                            rack: r.to_string(),
                        })?;
                        next.racks[p] = RackView::Known(Rack::new(left)?);
                    }
                    RackView::Hidden(n) => {
                        if used.len() > n || !self.pool.contains_all(&used) {
                            return Err(PositionError::NotOnRack {
                                player: p,
                                tiles: used.to_string(),
                                rack: format!("<hidden {n}>"),
                            });
                        }
                        next.pool = self.pool.difference(&used)?;
                        next.racks[p] = RackView::Hidden(n - used.len());
                    }
                }
                for (sq, t) in &pl.tiles {
                    if !next.board.is_empty_at(*sq) {
                        return Err(PlayError::Occupied(sq.name()).into());
                    }
                    next.board.set(*sq, *t);
                }
                let score = pl.total();
                next.scores[p] += score as i32;
                if score > 0 {
                    next.scoreless_turns = 0;
                } else {
                    next.scoreless_turns += 1;
                }
            }
        }
        next.to_move = 1 - p;
        Ok(next)
    }

    /// Moves `drawn` from the bag onto `player`'s rack. The draw must refill
    /// the rack to seven tiles or empty the bag, whichever comes first.
    pub fn draw_tiles(&self, player: usize, drawn: &TileSet) -> Result<Position, PositionError> {
        let have = self.racks[player].len();
        let expected = (RACK_SIZE - have).min(self.bag_size());
        if drawn.len() != expected {
            return Err(PositionError::DrawCount {
                player,
                expected,
                got: drawn.len(),
            });
        }
        let mut next = self.clone();
        match self.racks[player] {
            RackView::Known(r) => {
                let bag = self.bag().ok_or(PositionError::HiddenRack(1 - player))?;
                if !bag.contains_all(drawn) {
                    return Err(PositionError::NotInBag {
                        drawn: drawn.to_string(),
                        bag: bag.to_string(),
                    });
                }
                next.pool = self.pool.difference(drawn)?;
                next.racks[player] = RackView::Known(Rack::new(r.tiles().union(drawn))?);
            }
            RackView::Hidden(n) => {
                if !self.pool.contains_all(drawn) {
                    return Err(PositionError::NotInBag {
                        drawn: drawn.to_string(),
                        bag: self.pool.to_string(),
                    });
                }
                next.racks[player] = RackView::Hidden(n + drawn.len());
            }
        }
        Ok(next)
    }

    /// Draws an unknown refill for a hidden rack.
    pub fn draw_hidden(&self, player: usize) -> Position {
        let mut next = self.clone();
        if let RackView::Hidden(n) = self.racks[player] {
            let k = (RACK_SIZE - n).min(self.bag_size());
            next.racks[player] = RackView::Hidden(n + k);
        }
        next
    }

    /// True when the player who just moved went out, or the scoreless
    /// limit was hit.
    pub fn ending(&self) -> Option<Ending> {
        let last = 1 - self.to_move;
        if self.bag_size() == 0 && self.racks[last].is_empty() && !self.board.is_empty() {
            Some(Ending::Out)
        } else if self.scoreless_turns >= SCORELESS_LIMIT {
            Some(Ending::Exhausted)
        } else {
            None
        }
    }

    /// Applies end-of-game rack adjustments and reports the result for
    /// `hero`.
    pub fn finalize_game(&self, ending: Ending, hero: usize, dist: &TileDistribution) -> Result<FinalResult, PositionError> {
        let mut scores = self.scores;
        match ending {
            Ending::Out => {
                let outgoing = 1 - self.to_move;
                if !self.racks[outgoing].is_empty() {
                    return Err(PositionError::NotTerminal("outgoing player still holds tiles"));
                }
                if self.bag_size() != 0 {
                    return Err(PositionError::NotTerminal("bag is not empty"));
                }
                let other = 1 - outgoing;
                let left = self.racks[other].known().ok_or(PositionError::HiddenRack(other))?;
                scores[outgoing] += 2 * left.tiles().value(dist) as i32;
            }
            Ending::Exhausted => {
                if self.scoreless_turns < SCORELESS_LIMIT {
                    return Err(PositionError::NotTerminal("scoreless-turn limit not reached"));
                }
                for p in 0..2 {
                    let r = self.racks[p].known().ok_or(PositionError::HiddenRack(p))?;
                    scores[p] -= r.tiles().value(dist) as i32;
                }
            }
        }
        Ok(FinalResult {
            scores,
            outcome: Outcome::from_spread(scores[hero] - scores[1 - hero]),
        })
    }
}
