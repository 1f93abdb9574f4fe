//! Crossword-game engine and exact equilibrium toolkit for analysing
//! pre-endgame bluffs.
//!
//! The engine half replays transcripts, generates and scores plays and
//! solves perfect-information endgames. The analysis half builds restricted
//! one-sided-information games from engine-evaluated lines and solves them
//! exactly over the rationals.

pub mod board;
pub mod endgame;
pub mod gametheory;
pub mod gcg;
pub mod lexicon;
pub mod movegen;
pub mod moves;
pub mod peg;
pub mod position;
pub mod script;
pub mod tiles;

pub use board::{Board, Coordinate, Direction, Square};
pub use lexicon::Lexicon;
pub use moves::{Move, Placement, ScoreBreakdown};
pub use position::{Ending, FinalResult, Outcome, Position, RackView};
pub use tiles::{PlacedTile, Rack, Tile, TileDistribution, TileSet};
