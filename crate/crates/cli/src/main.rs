//! `pegbluff`: replay transcripts, generate plays, solve endgames and
//! games, and run the bluffing pre-endgame analysis.
//!
//! Exit codes: 0 success, 1 a verification mismatch, 2 a usage, input or
//! I/O error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pegbluff::endgame::{solve_endgame_parallel, LineReport};
use pegbluff::gametheory::{parse_game, solve_matrix, solve_signaling, Behavioral, GameFile, Rational};
use pegbluff::gcg::{parse_gcg, replay, replay_unchecked, Replay};
use pegbluff::movegen::generate_moves;
use pegbluff::peg::{analyze_puzzle, load_scenario, load_script, reachable_bingo_words, run_script, PuzzleReport};
use pegbluff::{Lexicon, Rack, TileDistribution, TileSet};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "pegbluff", version, about = "Crossword-game engine and exact pre-endgame bluff analysis")]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Threads for endgame solves; results are identical for any value.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Also show decimal approximations of fractions in text output.
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a transcript and audit every score and running total.
    Replay {
        gcg: PathBuf,
        /// Word list for checking formed words; words are not checked without it.
        lexicon: Option<PathBuf>,
        /// Print the final board.
        #[arg(long)]
        render: bool,
        /// List this player's score first in the final line.
        #[arg(long)]
        hero: Option<String>,
    },
    /// Print the board at the end of a transcript.
    Render { gcg: PathBuf },
    /// List plays for a rack on the board at the end of a transcript.
    Moves {
        gcg: PathBuf,
        lexicon: PathBuf,
        #[arg(long)]
        rack: String,
        /// Show at most this many plays.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Seven-letter words from a rack, or reachable by playing and drawing.
    Bingos {
        lexicon: PathBuf,
        rack: String,
        /// Tiles that could be drawn; enables play-and-draw search.
        #[arg(long)]
        pool: Option<String>,
        /// Most tiles played before drawing.
        #[arg(long, default_value_t = 2)]
        max_play: usize,
    },
    /// Solve the endgame at the end of a transcript once both racks are given.
    Endgame {
        gcg: PathBuf,
        lexicon: PathBuf,
        /// A player's rack as ID=TILES; give one per player.
        #[arg(long = "rack", required = true)]
        racks: Vec<String>,
    },
    /// Solve a matrix or signaling game file exactly.
    Solve { game: PathBuf },
    /// Play a scripted line and check its expectations.
    Line { script: PathBuf },
    /// Build and solve the bluffing game described by a scenario file.
    Puzzle { scenario: PathBuf },
}

enum Failure {
    /// Something ran but disagreed with an expectation.
    Mismatch(String),
    /// Bad input, unreadable file or an engine error.
    Input(String),
}

type Outcome = Result<(), Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T) -> Outcome {
    println!("{}", serde_json::to_string_pretty(value).map_err(input)?);
    Ok(())
}

struct Fmt {
    approx: bool,
}

impl Fmt {
    fn q(&self, r: &Rational) -> String {
        if self.approx && !r.denom().to_string().eq("1") {
            format!("{r} (~{:.4})", r.to_f64())
        } else {
            r.to_string()
        }
    }

    fn behavioral(&self, b: &Behavioral) -> String {
        b.iter()
            .map(|(who, mix)| {
                let parts: Vec<String> = mix.entries.iter().map(|(l, p)| format!("{l} {}", self.q(p))).collect();
                format!("  {who}: {}", parts.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn load_replay(gcg: &Path, lexicon: Option<&Lexicon>, dist: &TileDistribution) -> Result<Replay, Failure> {
    let doc = parse_gcg(&read(gcg)?).map_err(|e| Failure::Input(format!("{}: {e}", gcg.display())))?;
    let r = match lexicon {
        Some(lex) => replay(&doc, lex, dist),
        None => replay_unchecked(&doc, dist),
    };
    r.map_err(|e| Failure::Input(format!("{}: {e}", gcg.display())))
}

fn load_lexicon(path: &Path) -> Result<Lexicon, Failure> {
    Lexicon::load(path).map_err(input)
}

fn tiles(s: &str) -> Result<TileSet, Failure> {
    s.parse().map_err(|e| Failure::Input(format!("{s:?}: {e}")))
}

fn cmd_replay(cli: &Cli, gcg: &Path, lexicon: Option<&Path>, render: bool, hero: Option<&str>) -> Outcome {
    let dist = TileDistribution::standard();
    let lex = lexicon.map(load_lexicon).transpose()?;
    let r = load_replay(gcg, lex.as_ref(), &dist)?;
    let first = match hero {
        Some(id) => parse_gcg(&read(gcg)?)
            .map_err(input)?
            .player_index(id)
            .ok_or_else(|| Failure::Input(format!("{id} is not a player in {}", gcg.display())))?,
        None => 0,
    };
    let scores = [r.position.scores[first], r.position.scores[1 - first]];
    if cli.json {
        #[derive(Serialize)]
        struct Out<'a> {
            audit: &'a [pegbluff::gcg::AuditEntry],
            scores: [i32; 2],
            mismatches: usize,
            words_checked: bool,
            board: Option<String>,
        }
        emit(&Out {
            audit: &r.audit,
            scores,
            mismatches: r.mismatches(),
            words_checked: lex.is_some(),
            board: render.then(|| r.position.board.render()),
        })?;
    } else {
        for a in &r.audit {
            let flag = if a.matches() { "" } else { "  MISMATCH" };
            println!(
                "line {:>3} {:<10} {:<16} {:>4} ({:>4}) total {:>4} ({:>4}){flag}",
                a.line, a.player, a.play, a.computed_score, a.file_score, a.computed_total, a.file_total
            );
        }
        if lex.is_none() {
            println!("words not checked: no lexicon given");
        }
        if render {
            print!("{}", r.position.board.render());
        }
        println!("{} {}", scores[0], scores[1]);
    }
    match r.mismatches() {
        0 => Ok(()),
        n => Err(Failure::Mismatch(format!("{n} score mismatches"))),
    }
}

fn cmd_render(gcg: &Path) -> Outcome {
    let r = load_replay(gcg, None, &TileDistribution::standard())?;
    print!("{}", r.position.board.render());
    Ok(())
}

fn cmd_moves(cli: &Cli, gcg: &Path, lexicon: &Path, rack: &str, limit: usize) -> Outcome {
    let dist = TileDistribution::standard();
    let lex = load_lexicon(lexicon)?;
    let r = load_replay(gcg, Some(&lex), &dist)?;
    let rack: Rack = rack.parse().map_err(input)?;
    let moves = generate_moves(&r.position, rack.tiles(), &lex, &dist);
    let shown: Vec<(String, u32, usize)> = moves.iter().take(limit).map(|m| (m.notation(), m.score(), m.tiles_used())).collect();
    if cli.json {
        #[derive(Serialize)]
        struct Play {
            play: String,
            score: u32,
            tiles: usize,
        }
        #[derive(Serialize)]
        struct Out {
            total: usize,
            plays: Vec<Play>,
        }
        return emit(&Out {
            total: moves.len(),
            plays: shown.into_iter().map(|(play, score, tiles)| Play { play, score, tiles }).collect(),
        });
    }
    println!("{} plays for {rack}", moves.len());
    for (play, score, _) in shown {
        println!("{score:>4}  {play}");
    }
    Ok(())
}

fn cmd_bingos(cli: &Cli, lexicon: &Path, rack: &str, pool: Option<&str>, max_play: usize) -> Outcome {
    let lex = load_lexicon(lexicon)?;
    let rack = tiles(rack)?;
    let words = match pool {
        Some(p) => reachable_bingo_words(&lex, &rack, &tiles(p)?, max_play),
        None => lex.bingos_from(&rack),
    };
    if cli.json {
        return emit(&words);
    }
    for w in &words {
        println!("{w}");
    }
    Ok(())
}

fn cmd_endgame(cli: &Cli, gcg: &Path, lexicon: &Path, racks: &[String]) -> Outcome {
    let dist = TileDistribution::standard();
    let lex = load_lexicon(lexicon)?;
    let text = read(gcg)?;
    let doc = parse_gcg(&text).map_err(input)?;
    let mut pos = replay(&doc, &lex, &dist).map_err(input)?.position;
    for spec in racks {
        let (id, r) = spec
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("rack {spec:?} must look like ID=TILES")))?;
        let player = doc
            .player_index(id)
            .ok_or_else(|| Failure::Input(format!("{id} is not a player in {}", gcg.display())))?;
        pos = pos.with_rack(player, r.parse().map_err(input)?).map_err(input)?;
    }
    let res = solve_endgame_parallel(&pos, &lex, &dist, cli.workers).map_err(input)?;
    if cli.json {
        return emit(&res);
    }
    let mover = &doc.players[res.root_player];
    println!("{mover} to move: {}", res.value.label());
    for m in &res.pv {
        println!("  {m}");
    }
    println!("final {}-{}", res.final_scores[0], res.final_scores[1]);
    Ok(())
}

fn cmd_solve(cli: &Cli, game: &Path) -> Outcome {
    let f = Fmt { approx: cli.approx };
    let parsed = parse_game(&read(game)?).map_err(|e| Failure::Input(format!("{}: {e}", game.display())))?;
    match parsed {
        GameFile::Matrix(g) => {
            let s = solve_matrix(&g);
            if cli.json {
                emit(&s)?;
            } else {
                println!("value {}", f.q(&s.value));
                let show = |m: &pegbluff::gametheory::MixedStrategy| m.entries.iter().map(|(l, p)| format!("{l} {}", f.q(p))).collect::<Vec<_>>().join(", ");
                println!("rows: {}", show(&s.row));
                println!("cols: {}", show(&s.col));
                println!("certificate {}", if s.certificate.holds() { "holds" } else { "FAILS" });
            }
            if !s.certificate.holds() {
                return Err(Failure::Mismatch("certificate fails".into()));
            }
        }
        GameFile::Signaling(g) => {
            let eq = solve_signaling(&g);
            if cli.json {
                emit(&eq)?;
            } else {
                println!("value {}", f.q(&eq.value));
                println!("hero:\n{}", f.behavioral(&eq.hero));
                println!("observer:\n{}", f.behavioral(&eq.observer));
                println!("beliefs:");
                for p in &eq.posteriors {
                    let b: Vec<String> = p.beliefs.entries.iter().map(|(l, q)| format!("{l} {}", f.q(q))).collect();
                    let tag = if p.on_path { "" } else { " (off path)" };
                    println!("  after {}: {}{tag}", p.observation, b.join(", "));
                }
                println!("certificate {}", if eq.matrix.certificate.holds() { "holds" } else { "FAILS" });
            }
        }
    }
    Ok(())
}

fn line_text(r: &LineReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", r.name);
    for s in &r.steps {
        let score = s.score.map(|v| format!(" for {v}")).unwrap_or_default();
        let _ = writeln!(out, "  {}{score}  [{}-{}]", s.step, s.scores[0], s.scores[1]);
    }
    if let Some(sol) = &r.solved {
        for m in &sol.pv {
            let _ = writeln!(out, "  solver: {m}");
        }
    }
    for c in r.checks.iter().filter(|c| !c.passed()) {
        let _ = writeln!(out, "  MISMATCH {}: expected {}, got {}", c.what, c.expected, c.actual);
    }
    let _ = writeln!(out, "final {}-{} {}", r.final_scores[0], r.final_scores[1], r.value.label());
    out
}

fn cmd_line(cli: &Cli, script: &Path) -> Outcome {
    let dist = TileDistribution::standard();
    let loaded = load_script(script, &dist).map_err(input)?;
    let report = run_script(&loaded, &dist, cli.workers).map_err(input)?;
    if cli.json {
        emit(&report)?;
    } else {
        print!("{}", line_text(&report));
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{} disagrees with its expectations", report.name)))
    }
}

fn puzzle_text(r: &PuzzleReport, f: &Fmt) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", r.summary());
    let _ = writeln!(out);
    let _ = writeln!(out, "payoffs (hero result, final scores hero-opponent):");
    for p in &r.provenance {
        let _ = writeln!(
            out,
            "  {} {:<4} vs {:<4} draws {}/{} p {}: {} {}-{}",
            p.hero_type,
            p.action,
            p.response,
            p.hero_draw,
            if p.opponent_draw.is_empty() { "-".to_string() } else { p.opponent_draw.to_string() },
            f.q(&p.probability),
            p.outcome.label(),
            p.final_scores[0],
            p.final_scores[1]
        );
    }
    let _ = writeln!(out, "hero strategy:\n{}", f.behavioral(&r.equilibrium.hero));
    let _ = writeln!(out, "opponent strategy:\n{}", f.behavioral(&r.equilibrium.observer));
    let _ = writeln!(out, "roles:");
    for (t, a, role) in &r.roles.hero {
        let _ = writeln!(out, "  type {t} at {a}: {role}");
    }
    for (o, resp, role) in &r.roles.observer {
        let _ = writeln!(out, "  after {o}, {resp}: {role}");
    }
    let _ = writeln!(out, "outcomes:");
    for c in &r.outcomes {
        let label = c.outcome.map_or("mixed", |o| o.label());
        let _ = writeln!(out, "  {} / {}: {} with probability {}", c.hero_role, c.observer_role, label, f.q(&c.probability));
    }
    let _ = writeln!(out, "deviations against the equilibrium:");
    for d in &r.deviations {
        let _ = writeln!(out, "  {} {}: {}", d.deviator, d.name, f.q(&d.value));
    }
    if let Some(n) = &r.naive {
        let _ = writeln!(
            out,
            "{} vs {}: value {}, opponent can get {}, {}",
            n.hero,
            n.observer,
            f.q(&n.check.value),
            f.q(&n.check.observer_best),
            if n.is_equilibrium { "an equilibrium" } else { "not an equilibrium" }
        );
    }
    let _ = writeln!(out, "beliefs:");
    for p in &r.equilibrium.posteriors {
        let b: Vec<String> = p.beliefs.entries.iter().map(|(l, q)| format!("{l} {}", f.q(q))).collect();
        let _ = writeln!(out, "  after {}: {}", p.observation, b.join(", "));
    }
    if let Some(c) = &r.chance {
        for ((bag, p), (_, d)) in c.bags.iter().zip(&c.draw_given_bag) {
            let _ = writeln!(out, "chance: bag {bag} {}, analyzed draw given it {}", f.q(p), f.q(d));
        }
        let _ = writeln!(out, "chance: analyzed position arises with probability {}", f.q(&c.probability));
    }
    if let Some(l) = &r.naive_line {
        let label = l.outcome.map_or("mixed", |o| o.label());
        let _ = writeln!(out, "type {} plays {} and meets {}: {} with probability {}", l.hero_type, l.action, l.response, label, f.q(&l.probability));
    }
    if let Some(h) = &r.hypotheses {
        let racks: Vec<String> = h.remaining.iter().map(|x| x.rack.to_string()).collect();
        let _ = writeln!(out, "racks consistent with playing {}: {} before filters, {} after", h.observed, h.candidates, racks.len());
        for (name, reason) in &h.filters {
            let _ = writeln!(out, "  {name}: {reason}");
        }
        let _ = writeln!(out, "  {}", racks.join(" "));
        let _ = writeln!(out, "  reachable bingos: {}", h.reachable_bingos.join(" "));
    }
    for s in &r.scripts {
        let _ = writeln!(
            out,
            "line {}: final {}-{} {}{}",
            s.name,
            s.final_scores[0],
            s.final_scores[1],
            s.value.label(),
            if s.passed { "" } else { " MISMATCH" }
        );
    }
    out
}

fn cmd_puzzle(cli: &Cli, scenario: &Path) -> Outcome {
    let dist = TileDistribution::standard();
    let loaded = load_scenario(scenario, &dist).map_err(input)?;
    let report = analyze_puzzle(&loaded, &dist, cli.workers).map_err(input)?;
    if cli.json {
        emit(&report)?;
    } else {
        print!("{}", puzzle_text(&report, &Fmt { approx: cli.approx }));
    }
    let failed: Vec<&str> = report.scripts.iter().filter(|s| !s.passed).map(|s| s.name.as_str()).collect();
    if !failed.is_empty() {
        return Err(Failure::Mismatch(format!("lines disagree with expectations: {}", failed.join(", "))));
    }
    if !report.equilibrium.matrix.certificate.holds() {
        return Err(Failure::Mismatch("equilibrium certificate fails".into()));
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Replay { gcg, lexicon, render, hero } => cmd_replay(cli, gcg, lexicon.as_deref(), *render, hero.as_deref()),
        Command::Render { gcg } => cmd_render(gcg),
        Command::Moves { gcg, lexicon, rack, limit } => cmd_moves(cli, gcg, lexicon, rack, *limit),
        Command::Bingos { lexicon, rack, pool, max_play } => cmd_bingos(cli, lexicon, rack, pool.as_deref(), *max_play),
        Command::Endgame { gcg, lexicon, racks } => cmd_endgame(cli, gcg, lexicon, racks),
        Command::Solve { game } => cmd_solve(cli, game),
        Command::Line { script } => cmd_line(cli, script),
        Command::Puzzle { scenario } => cmd_puzzle(cli, scenario),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("pegbluff: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("pegbluff: {m}");
            ExitCode::from(2)
        }
    }
}
