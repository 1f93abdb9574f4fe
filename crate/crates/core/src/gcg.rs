//! `.gcg` transcripts: parsing, printing and audited replay.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::lexicon::Lexicon;
use crate::moves::{Move, Placement, PlayError};
use crate::position::{Position, PositionError, RackView};
use crate::tiles::{TileDistribution, TileSet, RACK_SIZE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GcgError {
    #[error("line {line}: malformed {field}: {text:?}")]
    Malformed { line: usize, field: &'static str, text: String },
    #[error("line {line}: unknown player {player:?}")]
    UnknownPlayer { line: usize, player: String },
    #[error("line {line}: {reason}")]
    Unsupported { line: usize, reason: String },
    #[error("line {line}: illegal play {play}: {source}")]
    Illegal {
        line: usize,
        play: String,
        #[source]
        source: PlayError,
    },
    #[error("line {line}: {play} forms {word}, which is not in the lexicon")]
    InvalidWord { line: usize, play: String, word: String },
    #[error("line {line}: {source}")]
    Position {
        line: usize,
        #[source]
        source: PositionError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EventKind {
    Play { coord: String, word: String },
    /// Any other notation (pass, exchange, challenge...), kept verbatim.
    Other { fields: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GcgEvent {
    pub line: usize,
    pub player: String,
    pub rack: String,
    pub kind: EventKind,
    pub delta: i32,
    pub total: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct GcgDocument {
    /// `(name, value)` pairs in file order, unknown pragmas included.
    pub pragmas: Vec<(String, String)>,
    pub players: Vec<String>,
    pub events: Vec<GcgEvent>,
}

impl GcgDocument {
    pub fn pragma(&self, name: &str) -> Option<&str> {
        self.pragmas.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }

    pub fn player_index(&self, id: &str) -> Option<usize> {
        self.players.iter().position(|p| p == id)
    }
}

fn parse_signed(s: &str) -> Option<i32> {
    let body = s.strip_prefix('+').unwrap_or(s);
    if body.is_empty() {
        return None;
    }
    body.parse().ok()
}

/// Parses transcript text. Player ids come from `#player1`/`#player2`.
pub fn parse_gcg(text: &str) -> Result<GcgDocument, GcgError> {
    let mut doc = GcgDocument::default();
    let mut player_slots: [Option<String>; 2] = [None, None];
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim_end();
        if trimmed.trim().is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            let (name, value) = rest.split_once(' ').unwrap_or((rest, ""));
            if name.is_empty() {
                return Err(GcgError::Malformed {
                    line,
                    field: "pragma",
                    text: trimmed.to_string(),
                });
            }
            let slot = match name {
                "player1" => Some(0),
                "player2" => Some(1),
                _ => None,
            };
            if let Some(i) = slot {
                let id = value.split_whitespace().next().ok_or_else(|| GcgError::Malformed {
                    line,
                    field: "player id",
                    text: trimmed.to_string(),
                })?;
                player_slots[i] = Some(id.to_string());
            }
            doc.pragmas.push((name.to_string(), value.to_string()));
            continue;
        }
        let Some(rest) = trimmed.strip_prefix('>') else {
            return Err(GcgError::Malformed {
                line,
                field: "line prefix",
                text: trimmed.to_string(),
            });
        };
        let (player, body) = rest.split_once(':').ok_or_else(|| GcgError::Malformed {
            line,
            field: "player",
            text: trimmed.to_string(),
        })?;
        if !player_slots.iter().flatten().any(|p| p == player) {
            return Err(GcgError::UnknownPlayer {
                line,
                player: player.to_string(),
            });
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() < 3 {
            return Err(GcgError::Malformed {
                line,
                field: "event",
                text: trimmed.to_string(),
            });
        }
        let total = parse_signed(fields[fields.len() - 1]).ok_or_else(|| GcgError::Malformed {
            line,
            field: "running total",
            text: fields[fields.len() - 1].to_string(),
        })?;
        let delta_text = fields[fields.len() - 2];
        if !(delta_text.starts_with('+') || delta_text.starts_with('-')) {
            return Err(GcgError::Malformed {
                line,
                field: "score",
                text: delta_text.to_string(),
            });
        }
        let delta = parse_signed(delta_text).ok_or_else(|| GcgError::Malformed {
            line,
            field: "score",
            text: delta_text.to_string(),
        })?;
        let rack = fields[0].to_string();
        if !rack.chars().all(|c| c.is_ascii_uppercase() || c == '?') {
            return Err(GcgError::Malformed {
                line,
                field: "rack",
                text: rack,
            });
        }
        let middle = &fields[1..fields.len() - 2];
        let kind = match middle {
            [coord, word] if coord.parse::<crate::board::Coordinate>().is_ok() => {
                if !word.chars().all(|c| c.is_ascii_alphabetic() || c == '.') {
                    return Err(GcgError::Malformed {
                        line,
                        field: "word",
                        text: word.to_string(),
                    });
                }
                EventKind::Play {
                    coord: coord.to_string(),
                    word: word.to_string(),
                }
            }
            _ => EventKind::Other {
                fields: middle.iter().map(|s| s.to_string()).collect(),
            },
        };
        doc.events.push(GcgEvent {
            line,
            player: player.to_string(),
            rack,
            kind,
            delta,
            total,
        });
    }
    doc.players = player_slots.into_iter().flatten().collect();
    Ok(doc)
}

fn format_delta(d: i32) -> String {
    if d >= 0 {
        format!("+{d}")
    } else {
        d.to_string()
    }
}

pub fn format_event(e: &GcgEvent) -> String {
    let middle = match &e.kind {
        EventKind::Play { coord, word } => format!("{coord} {word}"),
        EventKind::Other { fields } => fields.join(" "),
    };
    if middle.is_empty() {
        format!(">{}: {} {} {}", e.player, e.rack, format_delta(e.delta), e.total)
    } else {
        format!(">{}: {} {} {} {}", e.player, e.rack, middle, format_delta(e.delta), e.total)
    }
}

/// Prints pragmas then events, one per line.
pub fn print_gcg(doc: &GcgDocument) -> String {
    let mut out = String::new();
    for (name, value) in &doc.pragmas {
        if value.is_empty() {
            let _ = writeln!(out, "#{name}");
        } else {
            let _ = writeln!(out, "#{name} {value}");
        }
    }
    for e in &doc.events {
        let _ = writeln!(out, "{}", format_event(e));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub line: usize,
    pub player: String,
    pub play: String,
    pub words: Vec<String>,
    pub file_score: i32,
    pub computed_score: i32,
    pub file_total: i32,
    pub computed_total: i32,
}

impl AuditEntry {
    pub fn matches(&self) -> bool {
        self.file_score == self.computed_score && self.file_total == self.computed_total
    }
}

#[derive(Debug, Clone)]
pub struct Replay {
    /// Final position: both racks hidden (seven tiles each unless the bag
    /// ran dry), pool derived by conservation, the next player to move.
    pub position: Position,
    pub audit: Vec<AuditEntry>,
}

impl Replay {
    pub fn mismatches(&self) -> usize {
        self.audit.iter().filter(|a| !a.matches()).count()
    }
}

/// Replays every play, checking geometry and words and auditing scores.
/// Score mismatches are recorded, not fatal.
pub fn replay(doc: &GcgDocument, lexicon: &Lexicon, dist: &TileDistribution) -> Result<Replay, GcgError> {
    replay_inner(doc, Some(lexicon), dist)
}

/// Replays without word checks; each audit entry lists the words formed.
/// Used to derive a word list from a transcript.
pub fn replay_unchecked(doc: &GcgDocument, dist: &TileDistribution) -> Result<Replay, GcgError> {
    replay_inner(doc, None, dist)
}

fn replay_inner(doc: &GcgDocument, lexicon: Option<&Lexicon>, dist: &TileDistribution) -> Result<Replay, GcgError> {
    let mut pos = Position::new(dist);
    // both players start with a hidden seven
    pos = pos.draw_hidden(0).draw_hidden(1);
    let mut audit = Vec::new();
    for e in &doc.events {
        let line = e.line;
        let player = doc.player_index(&e.player).ok_or_else(|| GcgError::UnknownPlayer {
            line,
            player: e.player.clone(),
        })?;
        let EventKind::Play { coord, word } = &e.kind else {
            return Err(GcgError::Unsupported {
                line,
                reason: "only tile placements can be replayed".into(),
            });
        };
        let play = format!("{coord} {word}");
        let placement = Placement::from_notation(&pos.board, coord, word, dist).map_err(|source| GcgError::Illegal {
            line,
            play: play.clone(),
            source,
        })?;
        for w in placement.words() {
            if lexicon.is_some_and(|l| !l.contains(w)) {
                return Err(GcgError::InvalidWord {
                    line,
                    play,
                    word: w.to_ascii_uppercase(),
                });
            }
        }
        if e.rack.len() == RACK_SIZE {
            let declared: TileSet = e.rack.parse().map_err(|_| GcgError::Malformed {
                line,
                field: "rack",
                text: e.rack.clone(),
            })?;
            if !declared.contains_all(&placement.rack_tiles()) {
                return Err(GcgError::Position {
                    line,
                    source: PositionError::NotOnRack {
                        player,
                        tiles: placement.rack_tiles().to_string(),
                        rack: e.rack.clone(),
                    },
                });
            }
        }
        pos.to_move = player;
        let words = placement.words().iter().map(|w| w.to_string()).collect();
        let computed = placement.total() as i32;
        pos = pos
            .apply_play(&Move::Place(placement), dist)
            .map(|p| p.draw_hidden(player))
            .map_err(|source| GcgError::Position { line, source })?;
        audit.push(AuditEntry {
            line,
            player: e.player.clone(),
            play,
            words,
            file_score: e.delta,
            computed_score: computed,
            file_total: e.total,
            computed_total: pos.scores[player],
        });
    }
    debug_assert!(pos.racks.iter().all(|r| matches!(r, RackView::Hidden(_))));
    Ok(Replay { position: pos, audit })
}
