//! Scripted lines of play: a fixed sequence of plays, passes and draws with
//! score checkpoints, optionally finished by an exact endgame solve.
//!
//! Text format, one directive per line, `#` starts a comment:
//!
//! ```text
//! name zedonks-ell
//! start puzzle.gcg          # transcript giving the starting position
//! lexicon mini_nwl.txt
//! hero Player_2             # transcript id of the hero
//! rack hero DEKNOSZ         # reveal a rack
//! rack opponent FJLLLQW
//! play hero 15A ZEDONKS 124 # expected score is optional
//! scores 468 476            # hero, opponent
//! draw hero LL
//! pass opponent
//! solve                     # finish with the endgame solver
//! final 533 537             # hero, opponent
//! margin -4                 # hero minus opponent
//! result LOSS
//! ```
//!
//! Paths are relative to the script file.

use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::position::Outcome;
use crate::tiles::{Rack, TileSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("script line {line}: {reason}")]
pub struct ScriptError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Actor {
    Hero,
    Opponent,
}

impl Actor {
    pub fn player(self, hero: usize) -> usize {
        match self {
            Actor::Hero => hero,
            Actor::Opponent => 1 - hero,
        }
    }
}

impl FromStr for Actor {
    type Err = String;
    fn from_str(s: &str) -> Result<Actor, String> {
        match s {
            "hero" => Ok(Actor::Hero),
            "opponent" => Ok(Actor::Opponent),
            _ => Err(format!("actor must be hero or opponent, not {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptStep {
    Rack { actor: Actor, rack: Rack },
    Play { actor: Actor, coord: String, word: String, score: Option<u32> },
    Pass { actor: Actor },
    Draw { actor: Actor, tiles: TileSet },
    /// Checkpoint on the running scores (hero, opponent).
    Scores([i32; 2]),
    Solve,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioScript {
    pub name: String,
    pub start: Option<String>,
    pub lexicon: Option<String>,
    /// Transcript id of the hero.
    pub hero: Option<String>,
    pub steps: Vec<(usize, ScriptStep)>,
    /// Expected final scores (hero, opponent).
    pub final_scores: Option<[i32; 2]>,
    /// Expected final hero score minus opponent score.
    pub margin: Option<i32>,
    pub result: Option<Outcome>,
}

fn parse_outcome(s: &str) -> Option<Outcome> {
    match s {
        "WIN" => Some(Outcome::Win),
        "TIE" => Some(Outcome::Tie),
        "LOSS" => Some(Outcome::Loss),
        _ => None,
    }
}

fn parse_pair(args: &[&str]) -> Result<[i32; 2], String> {
    match args {
        [a, b] => Ok([
            a.parse().map_err(|_| format!("bad score {a:?}"))?,
            b.parse().map_err(|_| format!("bad score {b:?}"))?,
        ]),
        _ => Err("expected two scores".into()),
    }
}

impl ScenarioScript {
    pub fn parse(text: &str) -> Result<ScenarioScript, ScriptError> {
        let mut script = ScenarioScript {
            name: String::new(),
            start: None,
            lexicon: None,
            hero: None,
            steps: Vec::new(),
            final_scores: None,
            margin: None,
            result: None,
        };
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            let err = |reason: String| ScriptError { line, reason };
            let actor = |i: usize| -> Result<Actor, ScriptError> {
                fields
                    .get(i)
                    .ok_or_else(|| err("missing actor".into()))?
                    .parse()
                    .map_err(err)
            };
            match (fields[0], &fields[1..]) {
                ("name", [v]) => script.name = v.to_string(),
                ("start", [v]) => script.start = Some(v.to_string()),
                ("lexicon", [v]) => script.lexicon = Some(v.to_string()),
                ("hero", [v]) => script.hero = Some(v.to_string()),
                ("rack", [_, r]) => {
                    let rack = r.parse().map_err(|e| err(format!("{e}")))?;
                    script.steps.push((line, ScriptStep::Rack { actor: actor(1)?, rack }));
                }
                ("play", [_, coord, word, rest @ ..]) => {
                    let score = match rest {
                        [] => None,
                        [s] => Some(s.parse().map_err(|_| err(format!("bad score {s:?}")))?),
                        _ => return Err(err("play takes actor, coordinate, word and an optional score".into())),
                    };
                    script.steps.push((
                        line,
                        ScriptStep::Play {
                            actor: actor(1)?,
                            coord: coord.to_string(),
                            word: word.to_string(),
                            score,
                        },
                    ));
                }
                ("pass", [_]) => script.steps.push((line, ScriptStep::Pass { actor: actor(1)? })),
                ("draw", [_, t]) => {
                    let tiles = t.parse().map_err(|e| err(format!("{e}")))?;
                    script.steps.push((line, ScriptStep::Draw { actor: actor(1)?, tiles }));
                }
                ("scores", args) => script.steps.push((line, ScriptStep::Scores(parse_pair(args).map_err(err)?))),
                ("solve", []) => script.steps.push((line, ScriptStep::Solve)),
                ("final", args) => script.final_scores = Some(parse_pair(args).map_err(err)?),
                ("margin", [v]) => script.margin = Some(v.parse().map_err(|_| err(format!("bad margin {v:?}")))?),
                ("result", [v]) => script.result = Some(parse_outcome(v).ok_or_else(|| err(format!("unknown result {v:?}")))?),
                (d, _) => return Err(err(format!("malformed {d:?} directive"))),
            }
        }
        if let Some(i) = script.steps.iter().position(|(_, s)| *s == ScriptStep::Solve) {
            if i + 1 != script.steps.len() {
                return Err(ScriptError {
                    line: script.steps[i].0,
                    reason: "solve must be the last step".into(),
                });
            }
        }
        Ok(script)
    }
}
