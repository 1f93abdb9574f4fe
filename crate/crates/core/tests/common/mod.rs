//! Independent oracles and fixtures shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use pegbluff::board::{premium, BOARD_SIZE, CENTER};
use pegbluff::gametheory::{MatrixGame, Rational};
use pegbluff::gcg::{parse_gcg, replay, GcgDocument};
use pegbluff::movegen::generate_moves;
use pegbluff::{Board, Direction, Lexicon, PlacedTile, Position, Square, Tile, TileDistribution, TileSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn dist() -> TileDistribution {
    TileDistribution::standard()
}

pub fn lexicon() -> Lexicon {
    Lexicon::load(&data_dir().join("mini_nwl.txt")).expect("mini lexicon")
}

pub fn puzzle_doc() -> GcgDocument {
    parse_gcg(&std::fs::read_to_string(data_dir().join("puzzle.gcg")).unwrap()).unwrap()
}

/// The puzzle position with both racks hidden.
pub fn puzzle_position(lex: &Lexicon) -> Position {
    replay(&puzzle_doc(), lex, &dist()).unwrap().position
}

pub fn ts(s: &str) -> TileSet {
    s.parse().unwrap()
}

// ---------------------------------------------------------------- movegen

fn line_square(dir: Direction, line: usize, i: usize) -> Square {
    match dir {
        Direction::Horizontal => Square::new(line, i),
        Direction::Vertical => Square::new(i, line),
    }
}

/// Reads the maximal run through `sq` along `dir` with `new` tiles laid
/// down; each cell carries (tile, is_new).
fn run_through(board: &Board, new: &BTreeMap<Square, PlacedTile>, sq: Square, dir: Direction) -> Vec<(Square, PlacedTile, bool)> {
    let at = |s: Square| board.get(s).map(|t| (t, false)).or_else(|| new.get(&s).map(|t| (*t, true)));
    let mut first = sq;
    while let Some(p) = first.offset(dir, -1) {
        if at(p).is_none() {
            break;
        }
        first = p;
    }
    let mut out = Vec::new();
    let mut cur = Some(first);
    while let Some(s) = cur {
        match at(s) {
            Some((t, n)) => out.push((s, t, n)),
            None => break,
        }
        cur = s.offset(dir, 1);
    }
    out
}

fn value_of(t: PlacedTile, dist: &TileDistribution) -> u32 {
    if t.to_char().is_ascii_lowercase() {
        0
    } else {
        dist.tile_value(Tile::from_char(t.to_char()).unwrap())
    }
}

fn word_score(run: &[(Square, PlacedTile, bool)], dist: &TileDistribution) -> u32 {
    let mut sum = 0;
    let mut mult = 1;
    for &(sq, t, new) in run {
        let v = value_of(t, dist);
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

/// Scores `new` tiles on `board` if every word formed is in `lex`.
fn judge(board: &Board, new: &BTreeMap<Square, PlacedTile>, dir: Direction, lex: &Lexicon, dist: &TileDistribution) -> Option<u32> {
    let first = *new.keys().next().unwrap();
    let spell = |run: &[(Square, PlacedTile, bool)]| run.iter().map(|(_, t, _)| t.to_char().to_ascii_uppercase()).collect::<String>();
    let mut total = 0;
    let mut words = 0;
    let main = run_through(board, new, first, dir);
    if main.len() >= 2 {
        if !lex.contains(&spell(&main)) {
            return None;
        }
        total += word_score(&main, dist);
        words += 1;
    }
    for &sq in new.keys() {
        let cross = run_through(board, new, sq, dir.other());
        if cross.len() >= 2 {
            if !lex.contains(&spell(&cross)) {
                return None;
            }
            total += word_score(&cross, dist);
            words += 1;
        }
    }
    if words == 0 {
        return None;
    }
    if new.len() == 7 {
        total += 50;
    }
    Some(total)
}

/// Every way to supply `letters` for the empty slots from `rack`, using a
/// real tile or a blank for each.
fn supplies(letters: &[char], rack: &TileSet) -> Vec<Vec<PlacedTile>> {
    fn go(i: usize, letters: &[char], rack: &mut TileSet, cur: &mut Vec<PlacedTile>, out: &mut Vec<Vec<PlacedTile>>) {
        if i == letters.len() {
            out.push(cur.clone());
            return;
        }
        let real = Tile::from_char(letters[i]).unwrap();
        if rack.remove(real) {
            cur.push(PlacedTile::from_char(letters[i]).unwrap());
            go(i + 1, letters, rack, cur, out);
            cur.pop();
            rack.insert(real);
        }
        if rack.remove(Tile::BLANK) {
            cur.push(PlacedTile::from_char(letters[i].to_ascii_lowercase()).unwrap());
            go(i + 1, letters, rack, cur, out);
            cur.pop();
            rack.insert(Tile::BLANK);
        }
    }
    let mut out = Vec::new();
    go(0, letters, &mut rack.clone(), &mut Vec::new(), &mut out);
    out
}

/// All placements by exhaustive search over spans and lexicon words:
/// sorted tile lists mapped to scores.
pub fn brute_force_moves(board: &Board, rack: &TileSet, lex: &Lexicon, dist: &TileDistribution) -> BTreeMap<Vec<(Square, PlacedTile)>, u32> {
    let mut out = BTreeMap::new();
    let alphabet: Vec<char> = ('A'..='Z').collect();
    for dir in [Direction::Horizontal, Direction::Vertical] {
        for line in 0..BOARD_SIZE {
            for start in 0..BOARD_SIZE {
                for end in start..BOARD_SIZE {
                    let sqs: Vec<Square> = (start..=end).map(|i| line_square(dir, line, i)).collect();
                    let before = sqs[0].offset(dir, -1);
                    let after = sqs[sqs.len() - 1].offset(dir, 1);
                    if before.is_some_and(|s| board.get(s).is_some()) || after.is_some_and(|s| board.get(s).is_some()) {
                        continue;
                    }
                    let empties: Vec<usize> = (0..sqs.len()).filter(|&i| board.get(sqs[i]).is_none()).collect();
                    if empties.is_empty() || empties.len() > rack.len() {
                        continue;
                    }
                    let touches = if board.is_empty() {
                        sqs.contains(&CENTER)
                    } else {
                        sqs.iter().any(|s| board.get(*s).is_some()) || empties.iter().any(|&i| board.has_neighbor(sqs[i]))
                    };
                    if !touches {
                        continue;
                    }
                    // candidate spellings of the span
                    let patterns: Vec<Vec<char>> = if sqs.len() == 1 {
                        alphabet.iter().map(|c| vec![*c]).collect()
                    } else {
                        lex.words()
                            .filter(|w| w.len() == sqs.len())
                            .filter(|w| {
                                w.chars()
                                    .zip(&sqs)
                                    .all(|(c, s)| board.get(*s).is_none_or(|t| t.to_char().to_ascii_uppercase() == c))
                            })
                            .map(|w| w.chars().collect())
                            .collect()
                    };
                    for pat in patterns {
                        let letters: Vec<char> = empties.iter().map(|&i| pat[i]).collect();
                        for supply in supplies(&letters, rack) {
                            let new: BTreeMap<Square, PlacedTile> = empties.iter().map(|&i| sqs[i]).zip(supply).collect();
                            if let Some(score) = judge(board, &new, dir, lex, dist) {
                                out.insert(new.into_iter().collect::<Vec<_>>(), score);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// The engine's placements in the same shape as [`brute_force_moves`].
pub fn engine_moves(position: &Position, rack: &TileSet, lex: &Lexicon, dist: &TileDistribution) -> BTreeMap<Vec<(Square, PlacedTile)>, u32> {
    let mut out = BTreeMap::new();
    for m in generate_moves(position, rack, lex, dist) {
        if let Some(p) = m.placement() {
            let mut key = p.tiles.clone();
            key.sort();
            let dup = out.insert(key, p.total());
            assert!(dup.is_none(), "duplicate placement {m}");
        }
    }
    out
}

/// A board built from a few random legal plays from an empty start.
pub fn random_board(seed: u64, lex: &Lexicon, dist: &TileDistribution) -> Position {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos = Position::new(dist);
    let plays = rng.gen_range(2..=6);
    for _ in 0..plays {
        let mut bag = pos.pool.tiles();
        bag.retain(|t| !t.is_blank());
        bag.shuffle(&mut rng);
        let rack = TileSet::from_tiles(bag.into_iter().take(7));
        let moves: Vec<_> = generate_moves(&pos, &rack, lex, dist).into_iter().filter(|m| m.placement().is_some()).collect();
        let Some(m) = moves.choose(&mut rng) else { continue };
        let mut next = pos.with_rack(pos.to_move, rack.to_string().parse().unwrap()).unwrap();
        next = next.apply_play(m, dist).unwrap();
        next.check_conservation(dist).expect("plays conserve tiles");
        next.racks = [pegbluff::RackView::Hidden(0), pegbluff::RackView::Hidden(0)];
        next.pool = dist.full_set().difference(&next.board_tiles()).unwrap();
        pos = next;
    }
    pos
}

/// A random rack of up to seven tiles from the unseen pool, sometimes with
/// a blank.
pub fn random_rack(rng: &mut ChaCha8Rng, pool: &TileSet, size: usize, blank: bool) -> TileSet {
    let mut tiles = pool.tiles();
    tiles.retain(|t| !t.is_blank());
    tiles.shuffle(rng);
    let mut rack = TileSet::from_tiles(tiles.into_iter().take(size));
    if blank {
        if let Some(t) = rack.tiles().first() {
            rack.remove(*t);
        }
        rack.insert(Tile::BLANK);
    }
    rack
}

// ---------------------------------------------------------------- matrix games

/// Solves `a x = b` exactly; `None` when singular.
fn gauss(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let d = &f * &a[c][k];
                    a[r][k] = &a[r][k] - &d;
                }
                let d = &f * &b[c];
                b[r] = &b[r] - &d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Game value by enumerating every vertex of the row player's LP: each pair
/// of equal-size row and column supports gives a candidate mix making the
/// chosen columns pay the same; the best guaranteed payoff among feasible
/// candidates is the value.
pub fn vertex_value(g: &MatrixGame) -> Rational {
    let m = g.rows.len();
    let n = g.cols.len();
    let mut best: Option<Rational> = None;
    for rmask in 1u32..(1 << m) {
        let rs: Vec<usize> = (0..m).filter(|i| rmask >> i & 1 == 1).collect();
        for cmask in 1u32..(1 << n) {
            let cs: Vec<usize> = (0..n).filter(|j| cmask >> j & 1 == 1).collect();
            if cs.len() != rs.len() {
                continue;
            }
            // unknowns: x over rs, then v
            let k = rs.len();
            let mut a = Vec::new();
            let mut b = Vec::new();
            for &j in &cs {
                let mut row: Vec<Rational> = rs.iter().map(|&i| g.payoffs[i][j].clone()).collect();
                row.push(Rational::from_integer(-1));
                a.push(row);
                b.push(Rational::zero());
            }
            let mut sum: Vec<Rational> = vec![Rational::one(); k];
            sum.push(Rational::zero());
            a.push(sum);
            b.push(Rational::one());
            let Some(sol) = gauss(a, b) else { continue };
            if sol[..k].iter().any(|x| x.is_negative()) {
                continue;
            }
            let guarantee = (0..n)
                .map(|j| {
                    let mut s = Rational::zero();
                    for (t, &i) in rs.iter().enumerate() {
                        s += &(&sol[t] * &g.payoffs[i][j]);
                    }
                    s
                })
                .min()
                .unwrap();
            if best.as_ref().is_none_or(|b| guarantee > *b) {
                best = Some(guarantee);
            }
        }
    }
    best.expect("some vertex is feasible")
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> MatrixGame {
    let m = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=4);
    let payoffs: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    MatrixGame::from_integers(&payoffs).unwrap()
}

// ---------------------------------------------------------------- endgames

/// Full-width negamax without pruning: value for the player to move.
/// Positions are memoized, so every child of every node is still scored.
pub fn negamax(pos: &Position, lex: &Lexicon, dist: &TileDistribution) -> i8 {
    fn go(pos: &Position, lex: &Lexicon, dist: &TileDistribution, memo: &mut std::collections::HashMap<Position, i8>) -> i8 {
        if let Some(v) = memo.get(pos) {
            return *v;
        }
        let v = match pos.ending() {
            Some(end) => pos.finalize_game(end, pos.to_move, dist).unwrap().outcome.value(),
            None => {
                let rack = *pos.rack(pos.to_move).unwrap().tiles();
                generate_moves(pos, &rack, lex, dist)
                    .iter()
                    .map(|m| -go(&pos.apply_play(m, dist).unwrap(), lex, dist, memo))
                    .max()
                    .unwrap()
            }
        };
        memo.insert(pos.clone(), v);
        v
    }
    go(pos, lex, dist, &mut std::collections::HashMap::new())
}

/// Empty-bag positions on the puzzle board with racks of one to three
/// tiles; the tiles left over are set aside.
pub fn small_endgames(lex: &Lexicon, count: usize, seed: u64) -> Vec<Position> {
    let base = puzzle_position(lex);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut unseen = base.pool.tiles();
            unseen.shuffle(&mut rng);
            let a = rng.gen_range(1..=3);
            let b = rng.gen_range(1..=3);
            let r0 = TileSet::from_tiles(unseen[..a].iter().copied());
            let r1 = TileSet::from_tiles(unseen[a..a + b].iter().copied());
            let mut pos = base.clone();
            pos.racks = [
                pegbluff::RackView::Known(r0.to_string().parse().unwrap()),
                pegbluff::RackView::Known(r1.to_string().parse().unwrap()),
            ];
            pos.pool = TileSet::new();
            pos.scores = [rng.gen_range(300..400), rng.gen_range(300..400)];
            pos.to_move = rng.gen_range(0..2);
            pos
        })
        .collect()
}
