//! Pre-endgame analysis: the unseen-tile chance model, inference about the
//! hero's rack, and the restricted bluffing game whose payoffs come from
//! exact endgame solves.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::endgame::{evaluate_line, solve_endgame, EndgameError, LineError, LineReport};
use crate::gametheory::{
    best_response_value, check_profile, solve_signaling, Behavioral, Equilibrium, Fixed, GameError, HeroType, MixedStrategy, ProfileCheck, Rational,
    SignalingGame,
};
use crate::gcg::{parse_gcg, replay, GcgError};
use crate::lexicon::{Lexicon, LexiconError};
use crate::moves::{Move, Placement};
use crate::position::{Outcome, Position, PositionError};
use crate::script::{ScenarioScript, ScriptError};
use crate::tiles::{Rack, TileDistribution, TileSet};

#[derive(Debug, Error)]
pub enum PegError {
    #[error("bag of {bag} plus rack of {rack} does not match a pool of {pool}")]
    Model { pool: usize, bag: usize, rack: usize },
    #[error("cannot draw {k} tiles from a bag of {bag}")]
    Overdraw { k: usize, bag: usize },
    #[error("every rack hypothesis was filtered out")]
    NoHypotheses,
    #[error("{0}")]
    Spec(String),
    #[error("{context}: {source}")]
    Position {
        context: String,
        #[source]
        source: PositionError,
    },
    #[error("{context}: {source}")]
    Endgame {
        context: String,
        #[source]
        source: EndgameError,
    },
    #[error("scenario line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Gcg(#[from] GcgError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("{path}: {source}")]
    Script {
        path: String,
        #[source]
        source: ScriptError,
    },
    #[error("{name}: {source}")]
    Line {
        name: String,
        #[source]
        source: LineError,
    },
    #[error(transparent)]
    Game(#[from] GameError),
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// Ways to pick `part` out of `whole` when equal letters are told apart.
fn labeled_ways(whole: &TileSet, part: &TileSet) -> i64 {
    whole
        .distinct()
        .map(|t| binomial(whole.count(t) as usize, part.count(t) as usize))
        .product()
}

/// The tiles a player cannot see, split between the opponent's rack and
/// the bag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnseenModel {
    pub pool: TileSet,
    pub bag_size: usize,
    pub rack_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Split {
    pub rack: TileSet,
    pub bag: TileSet,
    pub probability: Rational,
}

impl UnseenModel {
    pub fn new(pool: TileSet, bag_size: usize, rack_size: usize) -> Result<UnseenModel, PegError> {
        if bag_size + rack_size != pool.len() {
            return Err(PegError::Model {
                pool: pool.len(),
                bag: bag_size,
                rack: rack_size,
            });
        }
        Ok(UnseenModel { pool, bag_size, rack_size })
    }

    /// Every distinguishable (rack, bag) split with its probability under
    /// uniformly random tiles.
    pub fn enumerate_splits(&self) -> Vec<Split> {
        let total = binomial(self.pool.len(), self.bag_size);
        self.pool
            .submultisets(self.bag_size)
            .into_iter()
            .map(|bag| Split {
                rack: self.pool.difference(&bag).expect("bag is drawn from the pool"),
                probability: Rational::new(labeled_ways(&self.pool, &bag), total),
                bag,
            })
            .collect()
    }
}

/// Distribution of a uniformly random `k`-tile draw from `bag`.
pub fn draw_distribution(bag: &TileSet, k: usize) -> Result<Vec<(TileSet, Rational)>, PegError> {
    if k > bag.len() {
        return Err(PegError::Overdraw { k, bag: bag.len() });
    }
    let total = binomial(bag.len(), k);
    Ok(bag
        .submultisets(k)
        .into_iter()
        .map(|d| {
            let p = Rational::new(labeled_ways(bag, &d), total);
            (d, p)
        })
        .collect())
}

/// A named predicate that removes rack hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RackFilter {
    pub kind: FilterKind,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "tiles", rename_all = "kebab-case")]
pub enum FilterKind {
    /// Drop racks holding all of these tiles.
    DropContaining(TileSet),
    /// Drop exactly this rack.
    DropRack(TileSet),
}

impl RackFilter {
    pub fn name(&self) -> String {
        match &self.kind {
            FilterKind::DropContaining(t) => format!("drop-containing {t}"),
            FilterKind::DropRack(t) => format!("drop-rack {t}"),
        }
    }

    pub fn keeps(&self, rack: &TileSet) -> bool {
        match &self.kind {
            FilterKind::DropContaining(t) => !rack.contains_all(t),
            FilterKind::DropRack(t) => rack != t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RackHypothesis {
    pub rack: TileSet,
    pub weight: Rational,
}

/// Racks the hero could have held before playing `played`: the played
/// tiles plus `rack_size - |played|` more from `pool` (everything unseen by
/// the observer), weighted by how many ways the draw could happen, then
/// filtered and renormalized.
pub fn hero_rack_hypotheses(pool: &TileSet, rack_size: usize, played: &TileSet, filters: &[RackFilter]) -> Result<Vec<RackHypothesis>, PegError> {
    let rest = pool
        .difference(played)
        .map_err(|_| PegError::Spec(format!("played tiles {played} are not in the unseen pool {pool}")))?;
    let k = rack_size
        .checked_sub(played.len())
        .ok_or_else(|| PegError::Spec("more tiles played than fit on a rack".into()))?;
    let candidates: Vec<(TileSet, i64)> = rest
        .submultisets(k)
        .into_iter()
        .map(|others| (others.union(played), labeled_ways(&rest, &others)))
        .filter(|(rack, _)| filters.iter().all(|f| f.keeps(rack)))
        .collect();
    let total: i64 = candidates.iter().map(|(_, w)| w).sum();
    if total == 0 {
        return Err(PegError::NoHypotheses);
    }
    Ok(candidates
        .into_iter()
        .map(|(rack, w)| RackHypothesis {
            rack,
            weight: Rational::new(w, total),
        })
        .collect())
}

/// Bingos reachable from `rack` by playing 0 to `max_play` of its tiles and
/// drawing as many from `pool`.
pub fn reachable_bingo_words(lexicon: &Lexicon, rack: &TileSet, pool: &TileSet, max_play: usize) -> Vec<String> {
    let mut out = std::collections::BTreeSet::new();
    for k in 0..=max_play.min(pool.len()) {
        for played in rack.submultisets(k) {
            for words in lexicon.reachable_bingos(rack, &played, pool, k).into_values() {
                out.extend(words);
            }
        }
    }
    out.into_iter().collect()
}

/// Which chance outcomes after the hero's play are analyzed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "tiles", rename_all = "kebab-case")]
pub enum Condition {
    /// Every draw, weighted by its probability.
    None,
    /// Only draws that leave exactly one tile in the bag, and that tile is
    /// one of these.
    BagLeftOneOf(TileSet),
}

impl Condition {
    pub fn name(&self) -> String {
        match self {
            Condition::None => "none".into(),
            Condition::BagLeftOneOf(t) => format!("bag-left-one-of {t}"),
        }
    }

    pub fn holds(&self, _draw: &TileSet, rest: &TileSet) -> bool {
        match self {
            Condition::None => true,
            Condition::BagLeftOneOf(t) => rest.len() == 1 && t.contains_all(rest),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeSpec {
    pub name: String,
    pub rack: Rack,
    pub prior: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateMove {
    /// `None` means every type may make the move.
    pub only_for: Option<String>,
    pub coord: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateResponse {
    /// Coordinate of the hero move this answers.
    pub observation: String,
    pub coord: String,
    pub word: String,
}

/// The restricted pre-endgame game: hero types, candidate moves on both
/// sides, the chance conditioning rule and the inference filters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictedGameSpec {
    pub name: String,
    pub opponent_rack: Rack,
    pub types: Vec<TypeSpec>,
    pub moves: Vec<CandidateMove>,
    pub responses: Vec<CandidateResponse>,
    pub condition: Condition,
    pub filters: Vec<RackFilter>,
    /// Tiles the observed hero move put on the board, for rack inference.
    pub observed_tiles: Option<TileSet>,
    /// The type the hero actually is, for the chance summary.
    pub actual: Option<String>,
}

/// A scenario file: the game spec plus where the position and scripted
/// lines come from.
///
/// ```text
/// name puzzle
/// start puzzle.gcg
/// lexicon mini_nwl.txt
/// hero Player_2
/// opponent-rack FJLLLQW
/// type M MKNOSYZ 1/2           # name, rack, prior
/// type D DKNOSYZ 1/2
/// actual M
/// move * 8K DITZ               # * = every type, or a type name
/// response 8K N2 JELL          # observed move coordinate, reply
/// condition bag-left-one-of DM # or: condition none
/// observed Z                   # tiles the observed move placed
/// filter drop-containing DM : reason text
/// filter drop-rack EKNOSYZ : reason text
/// script lines/dream.script
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioFile {
    pub spec: RestrictedGameSpec,
    pub start: String,
    pub lexicon: String,
    pub hero: String,
    pub scripts: Vec<String>,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<ScenarioFile, PegError> {
        let mut spec = RestrictedGameSpec {
            name: String::new(),
            opponent_rack: Rack::empty(),
            types: Vec::new(),
            moves: Vec::new(),
            responses: Vec::new(),
            condition: Condition::None,
            filters: Vec::new(),
            observed_tiles: None,
            actual: None,
        };
        let (mut start, mut lexicon, mut hero) = (None, None, None);
        let mut opp = None;
        let mut scripts = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |reason: String| PegError::Parse { line, reason };
            let (head, reason) = match body.split_once(" : ") {
                Some((h, r)) => (h.trim(), Some(r.trim().to_string())),
                None => (body, None),
            };
            let f: Vec<&str> = head.split_whitespace().collect();
            let tiles = |s: &str| s.parse::<TileSet>().map_err(|e| err(e.to_string()));
            match (f[0], &f[1..]) {
                ("name", [v]) => spec.name = v.to_string(),
                ("start", [v]) => start = Some(v.to_string()),
                ("lexicon", [v]) => lexicon = Some(v.to_string()),
                ("hero", [v]) => hero = Some(v.to_string()),
                ("opponent-rack", [v]) => opp = Some(v.parse::<Rack>().map_err(|e| err(e.to_string()))?),
                ("type", [name, rack, prior]) => spec.types.push(TypeSpec {
                    name: name.to_string(),
                    rack: rack.parse().map_err(|e: crate::tiles::TileError| err(e.to_string()))?,
                    prior: prior.parse().map_err(err)?,
                }),
                ("actual", [v]) => spec.actual = Some(v.to_string()),
                ("move", [who, coord, word]) => spec.moves.push(CandidateMove {
                    only_for: (*who != "*").then(|| who.to_string()),
                    coord: coord.to_string(),
                    word: word.to_string(),
                }),
                ("response", [obs, coord, word]) => spec.responses.push(CandidateResponse {
                    observation: obs.to_string(),
                    coord: coord.to_string(),
                    word: word.to_string(),
                }),
                ("condition", ["none"]) => spec.condition = Condition::None,
                ("condition", ["bag-left-one-of", t]) => spec.condition = Condition::BagLeftOneOf(tiles(t)?),
                ("observed", [t]) => spec.observed_tiles = Some(tiles(t)?),
                ("filter", [kind, t]) => {
                    let kind = match *kind {
                        "drop-containing" => FilterKind::DropContaining(tiles(t)?),
                        "drop-rack" => FilterKind::DropRack(tiles(t)?),
                        other => return Err(err(format!("unknown filter {other:?}"))),
                    };
                    spec.filters.push(RackFilter {
                        kind,
                        reason: reason.unwrap_or_default(),
                    });
                }
                ("script", [p]) => scripts.push(p.to_string()),
                (d, _) => return Err(err(format!("malformed {d:?} directive"))),
            }
        }
        let missing = |what: &str| PegError::Parse {
            line: text.lines().count(),
            reason: format!("missing {what} directive"),
        };
        spec.opponent_rack = opp.ok_or_else(|| missing("opponent-rack"))?;
        Ok(ScenarioFile {
            spec,
            start: start.ok_or_else(|| missing("start"))?,
            lexicon: lexicon.ok_or_else(|| missing("lexicon"))?,
            hero: hero.ok_or_else(|| missing("hero"))?,
            scripts,
        })
    }
}

fn read(path: &Path) -> Result<String, PegError> {
    std::fs::read_to_string(path).map_err(|source| PegError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A replayed starting position with its lexicon and hero.
#[derive(Debug, Clone)]
pub struct Start {
    pub position: Position,
    pub hero: usize,
    pub lexicon: Lexicon,
}

/// Replays `gcg` with `lexicon` and locates the hero by transcript id.
pub fn load_start(gcg: &Path, lexicon: &Path, hero: &str, dist: &TileDistribution) -> Result<Start, PegError> {
    let lexicon = Lexicon::load(lexicon)?;
    let doc = parse_gcg(&read(gcg)?)?;
    let hero = doc
        .player_index(hero)
        .ok_or_else(|| PegError::Spec(format!("{hero} is not a player in {}", gcg.display())))?;
    let position = replay(&doc, &lexicon, dist)?.position;
    Ok(Start { position, hero, lexicon })
}

fn relative(base: &Path, p: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(p)
}

/// A script file together with its resolved starting position.
pub struct LoadedScript {
    pub path: PathBuf,
    pub script: ScenarioScript,
    pub start: Start,
}

pub fn load_script(path: &Path, dist: &TileDistribution) -> Result<LoadedScript, PegError> {
    let script = ScenarioScript::parse(&read(path)?).map_err(|source| PegError::Script {
        path: path.display().to_string(),
        source,
    })?;
    let need = |v: &Option<String>, what: &str| {
        v.clone().ok_or_else(|| PegError::Spec(format!("{}: missing {what} directive", path.display())))
    };
    let start = load_start(
        &relative(path, &need(&script.start, "start")?),
        &relative(path, &need(&script.lexicon, "lexicon")?),
        &need(&script.hero, "hero")?,
        dist,
    )?;
    Ok(LoadedScript {
        path: path.to_path_buf(),
        script,
        start,
    })
}

pub fn run_script(loaded: &LoadedScript, dist: &TileDistribution, workers: usize) -> Result<LineReport, PegError> {
    evaluate_line(&loaded.start.position, loaded.start.hero, &loaded.script, &loaded.start.lexicon, dist, workers).map_err(|source| PegError::Line {
        name: loaded.script.name.clone(),
        source,
    })
}

/// A scenario file with its position and scripts loaded.
pub struct LoadedScenario {
    pub path: PathBuf,
    pub file: ScenarioFile,
    pub start: Start,
    pub scripts: Vec<LoadedScript>,
}

pub fn load_scenario(path: &Path, dist: &TileDistribution) -> Result<LoadedScenario, PegError> {
    let file = ScenarioFile::parse(&read(path)?)?;
    let start = load_start(&relative(path, &file.start), &relative(path, &file.lexicon), &file.hero, dist)?;
    let scripts = file
        .scripts
        .iter()
        .map(|s| load_script(&relative(path, s), dist))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LoadedScenario {
        path: path.to_path_buf(),
        file,
        start,
        scripts,
    })
}

/// Where one payoff-table contribution came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub hero_type: String,
    pub action: String,
    pub response: String,
    pub hero_draw: TileSet,
    pub opponent_draw: TileSet,
    /// Probability of this chance path given the type, move and response.
    pub probability: Rational,
    /// Final scores (hero, opponent) of the solved endgame.
    pub final_scores: [i32; 2],
    pub outcome: Outcome,
    pub pv: Vec<String>,
}

fn placement(pos: &Position, coord: &str, word: &str, lexicon: &Lexicon, dist: &TileDistribution, who: &str) -> Result<Move, PegError> {
    let pl = Placement::from_notation(&pos.board, coord, word, dist).map_err(|e| PegError::Spec(format!("{who} {coord} {word}: {e}")))?;
    if let Some(bad) = pl.words().into_iter().find(|w| !lexicon.contains(w)) {
        return Err(PegError::Spec(format!("{who} {coord} {word}: {bad} is not in the lexicon")));
    }
    Ok(Move::Place(pl))
}

fn apply(pos: &Position, mv: &Move, dist: &TileDistribution, context: &str) -> Result<Position, PegError> {
    pos.apply_play(mv, dist).map_err(|source| PegError::Position {
        context: context.to_string(),
        source,
    })
}

fn draw(pos: &Position, player: usize, tiles: &TileSet, context: &str) -> Result<Position, PegError> {
    pos.draw_tiles(player, tiles).map_err(|source| PegError::Position {
        context: context.to_string(),
        source,
    })
}

struct Leaf {
    ty: usize,
    action: String,
    response: String,
    hero_draw: TileSet,
    opponent_draw: TileSet,
    probability: Rational,
    position: Position,
}

impl RestrictedGameSpec {
    fn moves_for(&self, ty: &str) -> Vec<&CandidateMove> {
        self.moves
            .iter()
            .filter(|m| m.only_for.as_deref().is_none_or(|t| t == ty))
            .collect()
    }

    fn observations(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for t in &self.types {
            for m in self.moves_for(&t.name) {
                if !out.contains(&m.coord) {
                    out.push(m.coord.clone());
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<(), PegError> {
        if self.types.is_empty() {
            return Err(PegError::Spec("no hero types".into()));
        }
        for m in &self.moves {
            if let Some(t) = &m.only_for {
                if !self.types.iter().any(|x| &x.name == t) {
                    return Err(PegError::Spec(format!("move {} {} names unknown type {t}", m.coord, m.word)));
                }
            }
        }
        for obs in self.observations() {
            let words: Vec<&str> = self.moves.iter().filter(|m| m.coord == obs).map(|m| m.word.as_str()).collect();
            if words.windows(2).any(|w| w[0] != w[1]) {
                return Err(PegError::Spec(format!("moves at {obs} must spell the same word to look alike")));
            }
            if !self.responses.iter().any(|r| r.observation == obs) {
                return Err(PegError::Spec(format!("no responses listed for {obs}")));
            }
        }
        if let Some(r) = self.responses.iter().find(|r| !self.observations().contains(&r.observation)) {
            return Err(PegError::Spec(format!("response {} {} answers no candidate move", r.coord, r.word)));
        }
        Ok(())
    }
}

/// The signaling game built from `spec`, plus the engine result behind
/// every payoff entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuiltGame {
    pub game: SignalingGame,
    pub provenance: Vec<Provenance>,
}

/// Builds the signaling game: for every type, candidate move and reply, the
/// hero's draw (restricted by the condition), the opponent's draw, and an
/// exact endgame solve. Payoffs are expected game values for the hero.
pub fn build_signaling_game(spec: &RestrictedGameSpec, start: &Start, dist: &TileDistribution, workers: usize) -> Result<BuiltGame, PegError> {
    spec.validate()?;
    let hero = start.hero;
    let opp = 1 - hero;
    let lex = &start.lexicon;
    let mut leaves = Vec::new();
    for (ti, t) in spec.types.iter().enumerate() {
        let ctx = format!("type {} rack {}", t.name, t.rack);
        let pos = start
            .position
            .with_rack(hero, t.rack)
            .and_then(|p| p.with_rack(opp, spec.opponent_rack))
            .map_err(|source| PegError::Position { context: ctx.clone(), source })?;
        for m in spec.moves_for(&t.name) {
            let mv = placement(&pos, &m.coord, &m.word, lex, dist, &format!("{ctx}: move"))?;
            let after = apply(&pos, &mv, dist, &format!("{ctx}: {} {}", m.coord, m.word))?;
            let bag = *after.bag().expect("both racks known");
            let k = mv.tiles_used().min(bag.len());
            let draws: Vec<(TileSet, TileSet, Rational)> = draw_distribution(&bag, k)?
                .into_iter()
                .map(|(d, p)| {
                    let rest = bag.difference(&d).expect("draw is from the bag");
                    (d, rest, p)
                })
                .filter(|(d, rest, _)| spec.condition.holds(d, rest))
                .collect();
            let kept = Rational::sum(draws.iter().map(|(_, _, p)| p));
            if kept.is_zero() {
                return Err(PegError::Spec(format!("{ctx}: condition {} never holds after {} {}", spec.condition.name(), m.coord, m.word)));
            }
            for (hd, _, p) in &draws {
                let drawn = draw(&after, hero, hd, &ctx)?;
                for r in spec.responses.iter().filter(|r| r.observation == m.coord) {
                    let rctx = format!("{ctx}: {} then {} {}", m.coord, r.coord, r.word);
                    let reply = placement(&drawn, &r.coord, &r.word, lex, dist, &rctx)?;
                    let answered = apply(&drawn, &reply, dist, &rctx)?;
                    let bag2 = *answered.bag().expect("both racks known");
                    let k2 = reply.tiles_used().min(bag2.len());
                    for (od, p2) in draw_distribution(&bag2, k2)? {
                        leaves.push(Leaf {
                            ty: ti,
                            action: m.coord.clone(),
                            response: r.coord.clone(),
                            hero_draw: *hd,
                            opponent_draw: od,
                            probability: &(p / &kept) * &p2,
                            position: draw(&answered, opp, &od, &rctx)?,
                        });
                    }
                }
            }
        }
    }
    let solve = |leaf: &Leaf| {
        solve_endgame(&leaf.position, lex, dist).map_err(|source| PegError::Endgame {
            context: format!("{} {} {}", spec.types[leaf.ty].name, leaf.action, leaf.response),
            source,
        })
    };
    // different types can reach the same position (one draws the tile the
    // other started with), so each distinct position is solved once
    let mut first_seen: HashMap<&Position, usize> = HashMap::new();
    let mut unique: Vec<&Leaf> = Vec::new();
    let slot: Vec<usize> = leaves
        .iter()
        .map(|l| {
            *first_seen.entry(&l.position).or_insert_with(|| {
                unique.push(l);
                unique.len() - 1
            })
        })
        .collect();
    let results: Vec<Result<_, PegError>> = if workers > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool")
            .install(|| unique.par_iter().map(|l| solve(l)).collect())
    } else {
        unique.iter().map(|l| solve(l)).collect()
    };
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut provenance = Vec::new();
    for (leaf, &i) in leaves.iter().zip(&slot) {
        let res = &results[i];
        provenance.push(Provenance {
            hero_type: spec.types[leaf.ty].name.clone(),
            action: leaf.action.clone(),
            response: leaf.response.clone(),
            hero_draw: leaf.hero_draw,
            opponent_draw: leaf.opponent_draw,
            probability: leaf.probability.clone(),
            final_scores: [res.final_scores[hero], res.final_scores[opp]],
            outcome: res.value_for(hero),
            pv: res.pv.iter().map(|m| m.to_string()).collect(),
        });
    }
    let observations = spec.observations();
    let responses: Vec<(String, Vec<String>)> = observations
        .iter()
        .map(|o| {
            let mut rs: Vec<String> = Vec::new();
            for r in spec.responses.iter().filter(|r| &r.observation == o) {
                if !rs.contains(&r.coord) {
                    rs.push(r.coord.clone());
                }
            }
            (o.clone(), rs)
        })
        .collect();
    let types = spec
        .types
        .iter()
        .map(|t| HeroType {
            name: t.name.clone(),
            prior: t.prior.clone(),
            actions: spec.moves_for(&t.name).iter().map(|m| m.coord.clone()).collect(),
        })
        .collect();
    let game = SignalingGame::new(types, responses, |t, a, r| {
        let cells: Vec<&Provenance> = provenance
            .iter()
            .filter(|p| p.hero_type == t && p.action == a && p.response == r)
            .collect();
        if cells.is_empty() {
            return None;
        }
        let mut v = Rational::zero();
        for c in cells {
            v += &(&c.probability * &Rational::from_integer(c.outcome.value() as i64));
        }
        Some(v)
    })?;
    Ok(BuiltGame { game, provenance })
}

/// Role labels derived from the payoffs: a type's setup is the move with the
/// best possible outcome for it, any other move is a bluff; after an
/// observed setup, the block is the reply worst for the types it sets up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Roles {
    /// (type, action, role)
    pub hero: Vec<(String, String, String)>,
    /// (observation, response, role)
    pub observer: Vec<(String, String, String)>,
}

pub fn derive_roles(sg: &SignalingGame) -> Roles {
    let mut setup_of = Vec::new();
    let mut hero = Vec::new();
    for (ti, t) in sg.types.iter().enumerate() {
        let best = |ai: usize| sg.payoffs[ti][ai].iter().max().expect("responses").clone();
        let setup = (0..t.actions.len())
            .fold(None::<(usize, Rational)>, |acc, ai| match acc {
                Some((_, ref b)) if best(ai) <= *b => acc,
                _ => Some((ai, best(ai))),
            })
            .expect("actions")
            .0;
        setup_of.push(t.actions[setup].clone());
        for (ai, a) in t.actions.iter().enumerate() {
            hero.push((t.name.clone(), a.clone(), if ai == setup { "setup" } else { "bluff" }.to_string()));
        }
    }
    let mut observer = Vec::new();
    for (obs, rs) in &sg.responses {
        let setters: Vec<usize> = (0..sg.types.len()).filter(|&t| &setup_of[t] == obs).collect();
        let harm = |r: &str| {
            let mut v = Rational::zero();
            for &t in &setters {
                v += &(&sg.types[t].prior * sg.payoff(t, obs, r).expect("complete game"));
            }
            v
        };
        let block = if setters.is_empty() {
            None
        } else {
            rs.iter().fold(None::<(&String, Rational)>, |acc, r| match acc {
                Some((_, ref b)) if harm(r) >= *b => acc,
                _ => Some((r, harm(r))),
            })
        };
        for r in rs {
            let role = match block {
                Some((b, _)) if b == r => "block",
                Some(_) => "second-guess",
                None => "other",
            };
            observer.push((obs.clone(), r.clone(), role.to_string()));
        }
    }
    Roles { hero, observer }
}

impl Roles {
    pub fn hero_role(&self, t: &str, a: &str) -> &str {
        self.hero.iter().find(|(x, y, _)| x == t && y == a).map(|(_, _, r)| r.as_str()).unwrap_or("other")
    }

    pub fn observer_role(&self, o: &str, r: &str) -> &str {
        self.observer.iter().find(|(x, y, _)| x == o && y == r).map(|(_, _, r)| r.as_str()).unwrap_or("other")
    }

    /// Hero strategy playing `role` for every type (uniform over ties).
    pub fn hero_strategy(&self, sg: &SignalingGame, role: &str) -> Option<Behavioral> {
        sg.types
            .iter()
            .map(|t| {
                let picks: Vec<&String> = t.actions.iter().filter(|a| self.hero_role(&t.name, a) == role).collect();
                if picks.is_empty() {
                    return None;
                }
                let p = Rational::new(1, picks.len() as i64);
                let entries = t
                    .actions
                    .iter()
                    .map(|a| (a.clone(), if picks.contains(&a) { p.clone() } else { Rational::zero() }))
                    .collect();
                Some((t.name.clone(), MixedStrategy { entries }))
            })
            .collect()
    }

    /// Observer strategy playing `role` after every observation.
    pub fn observer_strategy(&self, sg: &SignalingGame, role: &str) -> Option<Behavioral> {
        sg.responses
            .iter()
            .map(|(o, rs)| {
                let picks: Vec<&String> = rs.iter().filter(|r| self.observer_role(o, r) == role).collect();
                if picks.is_empty() {
                    return None;
                }
                let p = Rational::new(1, picks.len() as i64);
                let entries = rs
                    .iter()
                    .map(|r| (r.clone(), if picks.contains(&r) { p.clone() } else { Rational::zero() }))
                    .collect();
                Some((o.clone(), MixedStrategy { entries }))
            })
            .collect()
    }
}

/// Probability of each (hero role, observer role) pair under a profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutcomeCell {
    pub hero_role: String,
    pub observer_role: String,
    pub probability: Rational,
    /// Hero's expected value within the cell.
    pub value: Rational,
    /// Set when every path in the cell ends the same way.
    pub outcome: Option<Outcome>,
}

pub fn outcome_distribution(sg: &SignalingGame, roles: &Roles, hero: &Behavioral, observer: &Behavioral) -> Vec<OutcomeCell> {
    let mut cells: Vec<(String, String, Rational, Rational, Vec<Rational>)> = Vec::new();
    for (ti, t) in sg.types.iter().enumerate() {
        for a in &t.actions {
            let pa = &t.prior * &hero[ti].1.get(a);
            let resp = &observer.iter().find(|(o, _)| o == a).expect("observer covers every action").1;
            for r in &sg.responses.iter().find(|(o, _)| o == a).expect("responses").1 {
                let p = &pa * &resp.get(r);
                let v = sg.payoff(ti, a, r).expect("complete").clone();
                let key = (roles.hero_role(&t.name, a).to_string(), roles.observer_role(a, r).to_string());
                let idx = match cells.iter().position(|c| c.0 == key.0 && c.1 == key.1) {
                    Some(i) => i,
                    None => {
                        cells.push((key.0, key.1, Rational::zero(), Rational::zero(), Vec::new()));
                        cells.len() - 1
                    }
                };
                let c = &mut cells[idx];
                c.2 += &p;
                c.3 += &(&p * &v);
                if p.is_positive() {
                    c.4.push(v);
                }
            }
        }
    }
    let order = |r: &str| ["bluff", "setup", "block", "second-guess"].iter().position(|x| *x == r).unwrap_or(9);
    cells.sort_by_key(|c| (order(&c.0), order(&c.1)));
    cells
        .into_iter()
        .map(|(h, o, p, ev, vals)| {
            let uniform = vals.first().filter(|v0| vals.iter().all(|v| v == *v0)).cloned();
            let outcome = uniform.and_then(|v| match v.to_string().as_str() {
                "1" => Some(Outcome::Win),
                "0" => Some(Outcome::Tie),
                "-1" => Some(Outcome::Loss),
                _ => None,
            });
            let value = if p.is_zero() { Rational::zero() } else { &ev / &p };
            OutcomeCell {
                hero_role: h,
                observer_role: o,
                probability: p,
                value,
                outcome,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub name: String,
    /// Side that deviates: "observer" or "hero".
    pub deviator: String,
    /// The deviator's payoff against the other side's equilibrium strategy.
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaiveCheck {
    pub hero: String,
    pub observer: String,
    pub check: ProfileCheck,
    pub is_equilibrium: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChanceSummary {
    pub hero_type: String,
    /// Tiles unseen by the hero, split between opponent rack and bag.
    pub model: UnseenModel,
    /// Bags left beside the assumed opponent rack in which the analyzed draw
    /// can happen, with their probability.
    pub bags: Vec<(TileSet, Rational)>,
    /// Probability of the analyzed draw given each such bag.
    pub draw_given_bag: Vec<(TileSet, Rational)>,
    /// Unconditional probability that the opponent holds the assumed rack
    /// and the analyzed draw happens.
    pub probability: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaiveLine {
    pub hero_type: String,
    pub action: String,
    pub response: String,
    pub outcome: Option<Outcome>,
    /// Unconditional probability of reaching this line's endgame.
    pub probability: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisSummary {
    pub observed: TileSet,
    pub candidates: usize,
    pub filters: Vec<(String, String)>,
    pub remaining: Vec<RackHypothesis>,
    /// Union of bingos reachable from the remaining racks by playing one or
    /// two tiles (or none) and drawing as many.
    pub reachable_bingos: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScriptSummary {
    pub name: String,
    pub final_scores: [i32; 2],
    pub value: Outcome,
    pub passed: bool,
    pub report: LineReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PuzzleReport {
    pub name: String,
    pub lexicon: String,
    pub start_scores: [i32; 2],
    pub spec: RestrictedGameSpec,
    pub provenance: Vec<Provenance>,
    pub game: SignalingGame,
    pub equilibrium: Equilibrium,
    pub roles: Roles,
    pub outcomes: Vec<OutcomeCell>,
    pub deviations: Vec<Deviation>,
    pub naive: Option<NaiveCheck>,
    pub chance: Option<ChanceSummary>,
    pub naive_line: Option<NaiveLine>,
    pub hypotheses: Option<HypothesisSummary>,
    pub scripts: Vec<ScriptSummary>,
}

impl PuzzleReport {
    /// Probability a type bluffs in equilibrium.
    pub fn role_probability(&self, hero_type: &str, role: &str) -> Rational {
        let mix = &self.equilibrium.hero.iter().find(|(t, _)| t == hero_type).expect("known type").1;
        let mut p = Rational::zero();
        for (t, a, r) in &self.roles.hero {
            if t == hero_type && r == role {
                p += &mix.get(a);
            }
        }
        p
    }

    pub fn response_probability(&self, observation: &str, role: &str) -> Rational {
        let mix = &self.equilibrium.observer.iter().find(|(o, _)| o == observation).expect("known observation").1;
        let mut p = Rational::zero();
        for (o, r, x) in &self.roles.observer {
            if o == observation && x == role {
                p += &mix.get(r);
            }
        }
        p
    }

    /// One-line summary, e.g. "hero: bluff 2/3, setup 1/3; ...".
    pub fn summary(&self) -> String {
        let uniform = |vals: Vec<Rational>| vals.windows(2).all(|w| w[0] == w[1]).then(|| vals[0].clone());
        let types: Vec<&str> = self.game.types.iter().map(|t| t.name.as_str()).collect();
        let obs: Vec<String> = self.game.responses.iter().map(|(o, _)| o.clone()).collect();
        let bluff = uniform(types.iter().map(|t| self.role_probability(t, "bluff")).collect());
        let setup = uniform(types.iter().map(|t| self.role_probability(t, "setup")).collect());
        let block = uniform(obs.iter().map(|o| self.response_probability(o, "block")).collect());
        let guess = uniform(obs.iter().map(|o| self.response_probability(o, "second-guess")).collect());
        let show = |p: Option<Rational>| p.map_or("varies".to_string(), |p| p.to_string());
        format!(
            "hero: bluff {}, setup {}; opponent: block {}, second-guess {}; value {}",
            show(bluff),
            show(setup),
            show(block),
            show(guess),
            self.equilibrium.value
        )
    }
}

fn chance_summary(spec: &RestrictedGameSpec, start: &Start, dist: &TileDistribution, actual: &TypeSpec) -> Result<ChanceSummary, PegError> {
    let pos = start.position.with_rack(start.hero, actual.rack).map_err(|source| PegError::Position {
        context: format!("actual rack {}", actual.rack),
        source,
    })?;
    let opp_size = pos.racks[1 - start.hero].len();
    let unseen = pos.pool;
    let model = UnseenModel::new(unseen, unseen.len() - opp_size, opp_size)?;
    // The hero's draw size is that of the first candidate move.
    let k = spec
        .moves_for(&actual.name)
        .first()
        .map(|m| {
            let board = &pos.board;
            Placement::from_notation(board, &m.coord, &m.word, dist).map(|p| p.tiles.len())
        })
        .transpose()
        .map_err(|e| PegError::Spec(e.to_string()))?
        .unwrap_or(0)
        .min(model.bag_size);
    let mut bags = Vec::new();
    let mut given = Vec::new();
    let mut total = Rational::zero();
    for split in model.enumerate_splits() {
        let mut p_draw = Rational::zero();
        for (d, p) in draw_distribution(&split.bag, k)? {
            let rest = split.bag.difference(&d).expect("draw from bag");
            if spec.condition.holds(&d, &rest) {
                p_draw += &p;
            }
        }
        if split.rack == *spec.opponent_rack.tiles() && p_draw.is_positive() {
            total += &(&split.probability * &p_draw);
            bags.push((split.bag, split.probability.clone()));
            given.push((split.bag, p_draw));
        }
    }
    Ok(ChanceSummary {
        hero_type: actual.name.clone(),
        model,
        bags,
        draw_given_bag: given,
        probability: total,
    })
}

/// Full analysis of a scenario: the engine-built game, its equilibrium,
/// deviation checks, chance summary, rack inference and scripted lines.
pub fn analyze_puzzle(scenario: &LoadedScenario, dist: &TileDistribution, workers: usize) -> Result<PuzzleReport, PegError> {
    let spec = &scenario.file.spec;
    let start = &scenario.start;
    let built = build_signaling_game(spec, start, dist, workers)?;
    let sg = &built.game;
    let eq = solve_signaling(sg);
    let roles = derive_roles(sg);
    let outcomes = outcome_distribution(sg, &roles, &eq.hero, &eq.observer);

    let mut deviations = Vec::new();
    let observer_value = |h: &Behavioral, o: &Behavioral| sg.profile_value(h, o).map(|v| -v);
    for role in ["block", "second-guess"] {
        if let Some(o) = roles.observer_strategy(sg, role) {
            deviations.push(Deviation {
                name: format!("always {role}"),
                deviator: "observer".into(),
                value: observer_value(&eq.hero, &o)?,
            });
        }
    }
    if let (Some(b), Some(g)) = (roles.observer_strategy(sg, "block"), roles.observer_strategy(sg, "second-guess")) {
        let half = Rational::new(1, 2);
        let mixed: Behavioral = b
            .iter()
            .zip(&g)
            .map(|((o, mb), (_, mg))| {
                let entries = mb
                    .entries
                    .iter()
                    .zip(&mg.entries)
                    .map(|((l, p), (_, q))| (l.clone(), &(p + q) * &half))
                    .collect();
                (o.clone(), MixedStrategy { entries })
            })
            .collect();
        deviations.push(Deviation {
            name: "block or second-guess evenly".into(),
            deviator: "observer".into(),
            value: observer_value(&eq.hero, &mixed)?,
        });
    }
    deviations.push(Deviation {
        name: "best response".into(),
        deviator: "observer".into(),
        value: best_response_value(sg, &Fixed::Hero(eq.hero.clone()))?.value,
    });
    for role in ["bluff", "setup"] {
        if let Some(h) = roles.hero_strategy(sg, role) {
            deviations.push(Deviation {
                name: format!("always {role}"),
                deviator: "hero".into(),
                value: sg.profile_value(&h, &eq.observer)?,
            });
        }
    }
    let uniform_hero: Behavioral = sg
        .types
        .iter()
        .map(|t| (t.name.clone(), MixedStrategy::uniform(&t.actions)))
        .collect();
    deviations.push(Deviation {
        name: "uniform over moves".into(),
        deviator: "hero".into(),
        value: sg.profile_value(&uniform_hero, &eq.observer)?,
    });
    deviations.push(Deviation {
        name: "best response".into(),
        deviator: "hero".into(),
        value: best_response_value(sg, &Fixed::Observer(eq.observer.clone()))?.value,
    });

    let naive = match (roles.hero_strategy(sg, "bluff"), roles.observer_strategy(sg, "block")) {
        (Some(h), Some(o)) => {
            let check = check_profile(sg, &h, &o)?;
            Some(NaiveCheck {
                hero: "always bluff".into(),
                observer: "always block".into(),
                is_equilibrium: check.is_equilibrium(),
                check,
            })
        }
        _ => None,
    };

    let actual = match &spec.actual {
        Some(name) => Some(
            spec.types
                .iter()
                .find(|t| &t.name == name)
                .ok_or_else(|| PegError::Spec(format!("actual type {name} is not declared")))?,
        ),
        None => None,
    };
    let chance = actual.map(|a| chance_summary(spec, start, dist, a)).transpose()?;
    let naive_line = match (actual, &chance) {
        (Some(a), Some(c)) => {
            let ti = sg.types.iter().position(|t| t.name == a.name).expect("declared type");
            let action = sg.types[ti].actions.iter().find(|x| roles.hero_role(&a.name, x) == "bluff").cloned();
            let response = action.as_ref().and_then(|x| {
                sg.responses
                    .iter()
                    .find(|(o, _)| o == x)
                    .and_then(|(_, rs)| rs.iter().find(|r| roles.observer_role(x, r) == "block").cloned())
            });
            match (action, response) {
                (Some(action), Some(response)) => {
                    let v = sg.payoff(ti, &action, &response).expect("complete").to_string();
                    Some(NaiveLine {
                        hero_type: a.name.clone(),
                        outcome: match v.as_str() {
                            "1" => Some(Outcome::Win),
                            "0" => Some(Outcome::Tie),
                            "-1" => Some(Outcome::Loss),
                            _ => None,
                        },
                        action,
                        response,
                        probability: c.probability.clone(),
                    })
                }
                _ => None,
            }
        }
        _ => None,
    };

    let hypotheses = match &spec.observed_tiles {
        Some(observed) => {
            let unseen = start
                .position
                .with_rack(1 - start.hero, spec.opponent_rack)
                .map_err(|source| PegError::Position {
                    context: "opponent rack".into(),
                    source,
                })?
                .pool;
            let all = hero_rack_hypotheses(&unseen, crate::tiles::RACK_SIZE, observed, &[])?;
            let remaining = hero_rack_hypotheses(&unseen, crate::tiles::RACK_SIZE, observed, &spec.filters)?;
            let mut bingos = std::collections::BTreeSet::new();
            let hero_pool_base = start.position.pool;
            for h in &remaining {
                let pool = hero_pool_base.difference(&h.rack).map_err(|e| PegError::Spec(e.to_string()))?;
                bingos.extend(reachable_bingo_words(&start.lexicon, &h.rack, &pool, 2));
            }
            Some(HypothesisSummary {
                observed: *observed,
                candidates: all.len(),
                filters: spec.filters.iter().map(|f| (f.name(), f.reason.clone())).collect(),
                remaining,
                reachable_bingos: bingos.into_iter().collect(),
            })
        }
        None => None,
    };

    let mut scripts = Vec::new();
    for s in &scenario.scripts {
        let report = run_script(s, dist, workers)?;
        scripts.push(ScriptSummary {
            name: report.name.clone(),
            final_scores: report.final_scores,
            value: report.value,
            passed: report.passed(),
            report,
        });
    }

    Ok(PuzzleReport {
        name: spec.name.clone(),
        lexicon: start.lexicon.name().to_string(),
        start_scores: [start.position.scores[start.hero], start.position.scores[1 - start.hero]],
        spec: spec.clone(),
        provenance: built.provenance,
        game: built.game.clone(),
        equilibrium: eq,
        roles,
        outcomes,
        deviations,
        naive,
        chance,
        naive_line,
        hypotheses,
        scripts,
    })
}

/// Whether `word` spells with both `a` and `b` but without `c`.
pub fn violates_letter_rule(word: &str, a: char, b: char, c: char) -> bool {
    word.contains(a) && word.contains(b) && !word.contains(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(s: &str) -> TileSet {
        s.parse().unwrap()
    }

    #[test]
    fn splits_sum_to_one() {
        let m = UnseenModel::new(ts("DEFJLLLQW"), 2, 7).unwrap();
        let splits = m.enumerate_splits();
        assert_eq!(Rational::sum(splits.iter().map(|s| &s.probability)), Rational::one());
        let de = splits.iter().find(|s| s.bag == ts("DE")).unwrap();
        assert_eq!(de.probability, Rational::new(1, 36));
        let ll = splits.iter().find(|s| s.bag == ts("LL")).unwrap();
        assert_eq!(ll.probability, Rational::new(1, 12));
        assert!(UnseenModel::new(ts("DE"), 2, 7).is_err());
        let empty = UnseenModel::new(ts("DEFJLLL"), 0, 7).unwrap().enumerate_splits();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].probability, Rational::one());
    }

    #[test]
    fn draws() {
        let d = draw_distribution(&ts("DE"), 1).unwrap();
        assert_eq!(d, vec![(ts("D"), Rational::new(1, 2)), (ts("E"), Rational::new(1, 2))]);
        assert_eq!(draw_distribution(&ts("LL"), 1).unwrap(), vec![(ts("L"), Rational::one())]);
        assert_eq!(draw_distribution(&ts("DE"), 2).unwrap(), vec![(ts("DE"), Rational::one())]);
        assert!(draw_distribution(&ts("D"), 2).is_err());
    }

    #[test]
    fn hypotheses_and_filters() {
        let pool = ts("DEKMNOSYZ");
        let all = hero_rack_hypotheses(&pool, 7, &ts("Z"), &[]).unwrap();
        assert_eq!(all.len(), 28);
        assert!(all.iter().all(|h| h.weight == Rational::new(1, 28)));
        let filters = vec![
            RackFilter {
                kind: FilterKind::DropContaining(ts("DM")),
                reason: String::new(),
            },
            RackFilter {
                kind: FilterKind::DropRack(ts("EKNOSYZ")),
                reason: String::new(),
            },
        ];
        let kept = hero_rack_hypotheses(&pool, 7, &ts("Z"), &filters).unwrap();
        assert_eq!(kept.len(), 12);
        assert!(kept.iter().all(|h| h.weight == Rational::new(1, 12)));
        let everything = vec![RackFilter {
            kind: FilterKind::DropContaining(ts("Z")),
            reason: String::new(),
        }];
        assert!(matches!(hero_rack_hypotheses(&pool, 7, &ts("Z"), &everything), Err(PegError::NoHypotheses)));
    }

    #[test]
    fn condition_predicate() {
        let c = Condition::BagLeftOneOf(ts("DM"));
        assert!(c.holds(&ts("E"), &ts("D")));
        assert!(c.holds(&ts("E"), &ts("M")));
        assert!(!c.holds(&ts("D"), &ts("E")));
        assert!(!c.holds(&ts(""), &ts("DE")));
        assert!(Condition::None.holds(&ts("D"), &ts("E")));
    }

    #[test]
    fn scenario_parse_errors() {
        let e = ScenarioFile::parse("name x\nfilter drop-all DM\n").unwrap_err();
        assert!(matches!(e, PegError::Parse { line: 2, .. }));
        let e = ScenarioFile::parse("name x\n").unwrap_err();
        assert!(matches!(e, PegError::Parse { .. }));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 2), 36);
        assert_eq!(binomial(3, 2), 3);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(labeled_ways(&ts("LLLD"), &ts("LL")), 3);
    }

    #[test]
    fn letter_rule() {
        assert!(violates_letter_rule("MODEM", 'D', 'M', 'L'));
        assert!(!violates_letter_rule("DOLMENS", 'D', 'M', 'L'));
        assert!(!violates_letter_rule("MONKEYS", 'D', 'M', 'L'));
    }
}
