//! Exact endgame solver for empty-bag positions with both racks known.
//!
//! Negamax over game values {-1, 0, +1} with alpha-beta and a
//! transposition table. Spread is never optimised; the principal variation
//! picks, at each ply, the first move in generation order that keeps the
//! optimal value.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::lexicon::Lexicon;
use crate::movegen::generate_placements;
use crate::moves::Move;
use crate::position::{Outcome, Position, PositionError};
use crate::tiles::{PlacedTile, TileDistribution, TileSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EndgameError {
    #[error("bag still holds {0} tiles")]
    BagNotEmpty(usize),
    #[error("player {0}'s rack is not known")]
    HiddenRack(usize),
    #[error(transparent)]
    Position(#[from] PositionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndgameResult {
    /// Value for the player to move at the root.
    pub value: Outcome,
    /// Final scores at the end of the principal variation.
    pub final_scores: [i32; 2],
    #[serde(serialize_with = "serialize_moves")]
    pub pv: Vec<Move>,
    pub root_player: usize,
}

fn serialize_moves<S: serde::Serializer>(moves: &[Move], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(moves.iter().map(|m| m.to_string()))
}

impl EndgameResult {
    pub fn value_for(&self, player: usize) -> Outcome {
        if player == self.root_player {
            self.value
        } else {
            self.value.negate()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Bound {
    Exact,
    Lower,
    Upper,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    placed: Vec<(u8, PlacedTile)>,
    racks: [TileSet; 2],
    to_move: u8,
    scoreless: u8,
    diff: i32,
}

/// Tiles placed since the root, plus the rack of the player to move.
type BoardRack = (Vec<(u8, PlacedTile)>, TileSet);

/// Search context: lexicon, distribution and a transposition table for
/// positions descending from one root board.
pub struct Solver<'a> {
    lexicon: &'a Lexicon,
    dist: &'a TileDistribution,
    root_board: crate::board::Board,
    table: HashMap<Key, (i8, Bound)>,
    moves: HashMap<BoardRack, std::sync::Arc<Vec<Move>>>,
    order: HashMap<BoardRack, std::sync::Arc<Vec<usize>>>,
    nodes: u64,
}

fn racks_of(pos: &Position) -> Result<[TileSet; 2], EndgameError> {
    let r0 = pos.rack(0).ok_or(EndgameError::HiddenRack(0))?;
    let r1 = pos.rack(1).ok_or(EndgameError::HiddenRack(1))?;
    Ok([*r0.tiles(), *r1.tiles()])
}

impl<'a> Solver<'a> {
    pub fn new(root: &Position, lexicon: &'a Lexicon, dist: &'a TileDistribution) -> Solver<'a> {
        Solver {
            lexicon,
            dist,
            root_board: root.board.clone(),
            table: HashMap::new(),
            moves: HashMap::new(),
            order: HashMap::new(),
            nodes: 0,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Distinct (board, rack) pairs for which moves were generated.
    pub fn generations(&self) -> usize {
        self.moves.len()
    }

    fn placed_since_root(&self, pos: &Position) -> Vec<(u8, PlacedTile)> {
        pos.board
            .tiles()
            .filter(|(sq, _)| self.root_board.is_empty_at(*sq))
            .map(|(sq, t)| (sq.row * 15 + sq.col, t))
            .collect()
    }

    fn key(&self, pos: &Position, placed: Vec<(u8, PlacedTile)>, racks: [TileSet; 2]) -> Key {
        let me = pos.to_move;
        Key {
            placed,
            racks,
            to_move: me as u8,
            scoreless: pos.scoreless_turns,
            diff: pos.scores[me] - pos.scores[1 - me],
        }
    }

    /// Legal moves for the player to move, in generation order.
    pub fn moves(&mut self, pos: &Position) -> std::sync::Arc<Vec<Move>> {
        let placed = self.placed_since_root(pos);
        self.moves_at(pos, placed)
    }

    fn moves_at(&mut self, pos: &Position, placed: Vec<(u8, PlacedTile)>) -> std::sync::Arc<Vec<Move>> {
        let rack = *pos.rack(pos.to_move).expect("known rack").tiles();
        let k = (placed, rack);
        if let Some(m) = self.moves.get(&k) {
            return m.clone();
        }
        let m = std::sync::Arc::new(generate_placements(&pos.board, &rack, self.lexicon, self.dist));
        self.moves.insert(k, m.clone());
        m
    }

    /// Search order: plays that empty the rack first, then higher scores.
    fn search_order(&mut self, pos: &Position, placed: Vec<(u8, PlacedTile)>, moves: &[Move]) -> std::sync::Arc<Vec<usize>> {
        let rack = *pos.rack(pos.to_move).expect("known rack").tiles();
        let k = (placed, rack);
        if let Some(o) = self.order.get(&k) {
            return o.clone();
        }
        let mut idx: Vec<usize> = (0..moves.len()).collect();
        idx.sort_by_key(|&i| (moves[i].tiles_used() != rack.len(), std::cmp::Reverse(moves[i].score())));
        let o = std::sync::Arc::new(idx);
        self.order.insert(k, o.clone());
        o
    }

    /// Value of a finished game for the player to move, if it is over.
    fn terminal_value(&self, pos: &Position) -> Option<i8> {
        let end = pos.ending()?;
        let r = pos.finalize_game(end, pos.to_move, self.dist).expect("terminal position");
        Some(r.outcome.value())
    }

    /// Game value for the player to move.
    pub fn value(&mut self, pos: &Position) -> i8 {
        self.negamax(pos, -1, 1)
    }

    fn negamax(&mut self, pos: &Position, mut alpha: i8, mut beta: i8) -> i8 {
        self.nodes += 1;
        if let Some(v) = self.terminal_value(pos) {
            return v;
        }
        let racks = racks_of(pos).expect("known racks");
        let placed = self.placed_since_root(pos);
        let key = self.key(pos, placed.clone(), racks);
        let alpha0 = alpha;
        if let Some(&(v, bound)) = self.table.get(&key) {
            match bound {
                Bound::Exact => return v,
                Bound::Lower => alpha = alpha.max(v),
                Bound::Upper => beta = beta.min(v),
            }
            if alpha >= beta {
                return v;
            }
        }
        let moves = self.moves_at(pos, placed.clone());
        let order = self.search_order(pos, placed, &moves);
        let mut best = -2;
        for mv in order.iter().map(|&i| &moves[i]) {
            let child = pos.apply_trusted(mv).expect("generated move applies");
            let v = -self.negamax(&child, -beta, -alpha);
            if v > best {
                best = v;
            }
            if best > alpha {
                alpha = best;
            }
            if alpha >= beta {
                break;
            }
        }
        let bound = if best <= alpha0 {
            Bound::Upper
        } else if best >= beta {
            Bound::Lower
        } else {
            Bound::Exact
        };
        self.table.insert(key, (best, bound));
        best
    }

    /// Principal variation from `pos` given its exact value.
    fn principal_variation(&mut self, pos: &Position, value: i8) -> Result<(Vec<Move>, [i32; 2]), EndgameError> {
        let mut line = Vec::new();
        let mut cur = pos.clone();
        let mut v = value;
        loop {
            if let Some(end) = cur.ending() {
                let r = cur.finalize_game(end, 0, self.dist)?;
                return Ok((line, r.scores));
            }
            let moves = self.moves(&cur);
            let mut chosen = None;
            for mv in moves.iter() {
                let child = cur.apply_trusted(mv)?;
                if -self.value(&child) == v {
                    chosen = Some((mv.clone(), child));
                    break;
                }
            }
            let (mv, child) = chosen.expect("some move attains the node value");
            line.push(mv);
            cur = child;
            v = -v;
        }
    }
}

fn check_root(pos: &Position) -> Result<(), EndgameError> {
    racks_of(pos)?;
    if pos.bag_size() > 0 {
        return Err(EndgameError::BagNotEmpty(pos.bag_size()));
    }
    Ok(())
}

/// Solves `pos` exactly on one thread.
pub fn solve_endgame(pos: &Position, lexicon: &Lexicon, dist: &TileDistribution) -> Result<EndgameResult, EndgameError> {
    check_root(pos)?;
    let mut solver = Solver::new(pos, lexicon, dist);
    let value = solver.value(pos);
    let (pv, final_scores) = solver.principal_variation(pos, value)?;
    Ok(EndgameResult {
        value: Outcome::from_value(value),
        final_scores,
        pv,
        root_player: pos.to_move,
    })
}

/// Solves `pos` with root moves split over `workers` threads. Each worker
/// keeps its own table and every root child is solved exactly, so the
/// result equals [`solve_endgame`] for any worker count.
pub fn solve_endgame_parallel(pos: &Position, lexicon: &Lexicon, dist: &TileDistribution, workers: usize) -> Result<EndgameResult, EndgameError> {
    check_root(pos)?;
    if workers <= 1 {
        return solve_endgame(pos, lexicon, dist);
    }
    if let Some(end) = pos.ending() {
        let r = pos.finalize_game(end, pos.to_move, dist)?;
        return Ok(EndgameResult {
            value: r.outcome,
            final_scores: r.scores,
            pv: Vec::new(),
            root_player: pos.to_move,
        });
    }
    let moves = Solver::new(pos, lexicon, dist).moves(pos);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let values: Vec<i8> = pool.install(|| {
        moves
            .par_iter()
            .map(|mv| {
                let child = pos.apply_trusted(mv).expect("generated move applies");
                let mut s = Solver::new(pos, lexicon, dist);
                -s.value(&child)
            })
            .collect()
    });
    let best = *values.iter().max().expect("pass is always generated");
    let idx = values.iter().position(|&v| v == best).expect("max exists");
    let child = pos.apply_trusted(&moves[idx])?;
    let mut solver = Solver::new(pos, lexicon, dist);
    let (mut rest, final_scores) = solver.principal_variation(&child, -best)?;
    let mut pv = vec![moves[idx].clone()];
    pv.append(&mut rest);
    Ok(EndgameResult {
        value: Outcome::from_value(best),
        final_scores,
        pv,
        root_player: pos.to_move,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LineError {
    #[error("step at script line {line} ({step}): {reason}")]
    Step { line: usize, step: String, reason: String },
    #[error("line ends before the game is over; add a solve step")]
    Unfinished,
}

/// One executed script step. Scores are (hero, opponent) after the step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepAudit {
    pub line: usize,
    pub step: String,
    pub score: Option<u32>,
    pub scores: [i32; 2],
}

/// An expectation from the script compared with what happened.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineCheck {
    pub what: String,
    pub expected: String,
    pub actual: String,
}

impl LineCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineReport {
    pub name: String,
    pub steps: Vec<StepAudit>,
    /// Continuation found by the solver when the script ends with `solve`.
    pub solved: Option<EndgameResult>,
    /// Final scores (hero, opponent).
    pub final_scores: [i32; 2],
    /// Result for the hero.
    pub value: Outcome,
    pub checks: Vec<LineCheck>,
}

impl LineReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LineCheck::passed)
    }
}

fn hero_first(scores: [i32; 2], hero: usize) -> [i32; 2] {
    [scores[hero], scores[1 - hero]]
}

fn pair(s: [i32; 2]) -> String {
    format!("{}-{}", s[0], s[1])
}

/// Plays `script` from `start` with `hero` as the hero's player index.
/// Every play is checked against the lexicon and the actor's rack; a
/// trailing `solve` step hands the position to the endgame solver.
pub fn evaluate_line(
    start: &Position,
    hero: usize,
    script: &crate::script::ScenarioScript,
    lexicon: &Lexicon,
    dist: &TileDistribution,
    workers: usize,
) -> Result<LineReport, LineError> {
    use crate::script::ScriptStep;
    let mut pos = start.clone();
    let mut steps = Vec::new();
    let mut checks = Vec::new();
    let mut solved = None;
    for (line, step) in &script.steps {
        let fail = |text: &str, reason: String| LineError::Step {
            line: *line,
            step: text.to_string(),
            reason,
        };
        let check_turn = |pos: &Position, player: usize, text: &str| {
            if pos.to_move != player {
                Err(fail(text, "not this player's turn".into()))
            } else {
                Ok(())
            }
        };
        let mut score = None;
        let text = match step {
            ScriptStep::Rack { actor, rack } => {
                let text = format!("rack {} {rack}", actor_name(*actor));
                pos = pos.with_rack(actor.player(hero), *rack).map_err(|e| fail(&text, e.to_string()))?;
                text
            }
            ScriptStep::Play { actor, coord, word, score: expected } => {
                let text = format!("{} {coord} {word}", actor_name(*actor));
                let player = actor.player(hero);
                check_turn(&pos, player, &text)?;
                let pl = crate::moves::Placement::from_notation(&pos.board, coord, word, dist).map_err(|e| fail(&text, e.to_string()))?;
                if let Some(bad) = pl.words().into_iter().find(|w| !lexicon.contains(w)) {
                    return Err(fail(&text, format!("{bad} is not in the lexicon")));
                }
                let got = pl.total();
                pos = pos.apply_play(&Move::Place(pl), dist).map_err(|e| fail(&text, e.to_string()))?;
                if let Some(e) = expected {
                    checks.push(LineCheck {
                        what: format!("score of {text}"),
                        expected: e.to_string(),
                        actual: got.to_string(),
                    });
                }
                score = Some(got);
                text
            }
            ScriptStep::Pass { actor } => {
                let text = format!("{} pass", actor_name(*actor));
                check_turn(&pos, actor.player(hero), &text)?;
                pos = pos.apply_play(&Move::Pass, dist).map_err(|e| fail(&text, e.to_string()))?;
                text
            }
            ScriptStep::Draw { actor, tiles } => {
                let text = format!("{} draws {tiles}", actor_name(*actor));
                pos = pos.draw_tiles(actor.player(hero), tiles).map_err(|e| fail(&text, e.to_string()))?;
                text
            }
            ScriptStep::Scores(expected) => {
                checks.push(LineCheck {
                    what: format!("scores at script line {line}"),
                    expected: pair(*expected),
                    actual: pair(hero_first(pos.scores, hero)),
                });
                continue;
            }
            ScriptStep::Solve => {
                let text = "solve".to_string();
                let r = solve_endgame_parallel(&pos, lexicon, dist, workers).map_err(|e| fail(&text, e.to_string()))?;
                solved = Some(r);
                text
            }
        };
        steps.push(StepAudit {
            line: *line,
            step: text,
            score,
            scores: hero_first(pos.scores, hero),
        });
    }
    let (final_scores, value) = match &solved {
        Some(r) => (hero_first(r.final_scores, hero), r.value_for(hero)),
        None => {
            let end = pos.ending().ok_or(LineError::Unfinished)?;
            let r = pos.finalize_game(end, hero, dist).map_err(|_| LineError::Unfinished)?;
            (hero_first(r.scores, hero), r.outcome)
        }
    };
    if let Some(e) = script.final_scores {
        checks.push(LineCheck {
            what: "final scores".into(),
            expected: pair(e),
            actual: pair(final_scores),
        });
    }
    if let Some(e) = script.margin {
        checks.push(LineCheck {
            what: "final margin".into(),
            expected: e.to_string(),
            actual: (final_scores[0] - final_scores[1]).to_string(),
        });
    }
    if let Some(e) = script.result {
        checks.push(LineCheck {
            what: "result".into(),
            expected: e.label().into(),
            actual: value.label().into(),
        });
    }
    Ok(LineReport {
        name: script.name.clone(),
        steps,
        solved,
        final_scores,
        value,
        checks,
    })
}

fn actor_name(a: crate::script::Actor) -> &'static str {
    match a {
        crate::script::Actor::Hero => "hero",
        crate::script::Actor::Opponent => "opponent",
    }
}
