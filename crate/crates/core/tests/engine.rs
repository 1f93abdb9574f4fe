mod common;

use common::*;
use pegbluff::gcg::{parse_gcg, print_gcg, replay};
use pegbluff::{Coordinate, Move, Placement, Position, RackView, TileSet};
use proptest::prelude::*;

fn score_on_puzzle_board(coord: &str, word: &str) -> u32 {
    let lex = lexicon();
    let pos = puzzle_position(&lex);
    let p = Placement::from_notation(&pos.board, coord, word, &dist()).unwrap();
    for w in p.words() {
        assert!(lex.contains(w), "{w} formed by {coord} {word}");
    }
    p.total()
}

#[test]
fn transcript_replays_to_the_puzzle_scores() {
    let lex = lexicon();
    let doc = puzzle_doc();
    let r = replay(&doc, &lex, &dist()).unwrap();
    assert_eq!(r.mismatches(), 0);
    assert_eq!(r.audit.len(), 27);
    let hero = doc.player_index("Player_2").unwrap();
    assert_eq!([r.position.scores[hero], r.position.scores[1 - hero]], [344, 476]);
    let last_two: Vec<(&str, i32)> = r.audit[25..].iter().map(|a| (a.play.as_str(), a.computed_score)).collect();
    assert_eq!(last_two, vec![("A1 GROGSH.P", 203), ("1D UNUSUAL", 78)]);
    r.position.check_conservation(&dist()).unwrap();
    assert_eq!(r.position.pool, ts("DEFJKLLLMNOQSWYZ"));
}

#[test]
fn puzzle_board_scores() {
    assert_eq!(score_on_puzzle_board("8K", "DITZY"), 54);
    assert_eq!(score_on_puzzle_board("H11", "DITZY"), 54);
    assert_eq!(score_on_puzzle_board("N8", "ZONK"), 45);
    assert_eq!(score_on_puzzle_board("N8", "ZONKEYS"), 126);
    assert_eq!(score_on_puzzle_board("9I", "MI"), 14);
    assert_eq!(score_on_puzzle_board("F6", "JIVY"), 61);
    assert_eq!(score_on_puzzle_board("8K", "DITZ"), 14);
    assert_eq!(score_on_puzzle_board("H11", "DITZ"), 14);
}

#[test]
fn render_has_header_and_fifteen_rows() {
    let lex = lexicon();
    let text = puzzle_position(&lex).board.render();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 16);
    assert_eq!(lines[0].split_whitespace().collect::<String>(), "ABCDEFGHIJKLMNO");
    assert!(lines[1].starts_with(" 1  G"));
    // the two blanks in the transcript render lowercase
    assert_eq!(text.chars().filter(|c| c.is_ascii_lowercase()).count(), 2);
}

#[test]
fn gcg_round_trip() {
    let text = std::fs::read_to_string(data_dir().join("puzzle.gcg")).unwrap();
    let doc = parse_gcg(&text).unwrap();
    let again = parse_gcg(&print_gcg(&doc)).unwrap();
    assert_eq!(doc.players, again.players);
    assert_eq!(doc.pragmas, again.pragmas);
    let strip = |d: &pegbluff::gcg::GcgDocument| d.events.iter().map(|e| (e.player.clone(), e.rack.clone(), e.kind.clone(), e.delta, e.total)).collect::<Vec<_>>();
    assert_eq!(strip(&doc), strip(&again));
}

#[test]
fn bad_transcripts_report_lines() {
    let lex = lexicon();
    let text = "#player1 a A\n#player2 b B\n>a: ABC 8H CAB +14 14\n>b: XYZ 9A ZZZZ +10 10\n";
    let doc = parse_gcg(text).unwrap();
    let err = replay(&doc, &lex, &dist()).unwrap_err().to_string();
    assert!(err.starts_with("line 3"), "{err}");
}

#[test]
fn illegal_plays_are_rejected() {
    let lex = lexicon();
    let pos = puzzle_position(&lex).with_rack(1, "MKNOSYZ".parse().unwrap()).unwrap();
    let d = dist();
    let p = Move::Place(Placement::from_notation(&pos.board, "8K", "DITZY", &d).unwrap());
    assert!(pos.apply_play(&p, &d).is_ok());
    // the opponent does not hold Z or Y
    let mut theirs = pos.with_rack(0, "FJLLLQW".parse().unwrap()).unwrap();
    theirs.to_move = 0;
    assert!(theirs.apply_play(&p, &d).is_err());
    // floating play
    assert!(Placement::from_notation(&pos.board, "15K", "ZONK", &d).is_err());
}

fn coord_strategy() -> impl Strategy<Value = (usize, usize, bool)> {
    (0usize..15, 0usize..15, any::<bool>())
}

proptest! {
    #[test]
    fn coordinates_round_trip((row, col, across) in coord_strategy()) {
        let dir = if across { pegbluff::Direction::Horizontal } else { pegbluff::Direction::Vertical };
        let c = Coordinate::new(pegbluff::Square::new(row, col), dir);
        let text = c.to_string();
        prop_assert_eq!(text.parse::<Coordinate>().unwrap(), c);
        prop_assert_eq!(text.chars().next().unwrap().is_ascii_digit(), across);
    }

    #[test]
    fn tile_sets_round_trip(s in "[A-Z?]{0,12}") {
        let t: TileSet = s.parse().unwrap();
        prop_assert_eq!(t.len(), s.len());
        prop_assert_eq!(t.to_string().parse::<TileSet>().unwrap(), t);
    }

    #[test]
    fn plays_conserve_tiles(seed in 0u64..1000) {
        let lex = lexicon();
        let d = dist();
        let pos = random_board(seed, &lex, &d);
        pos.check_conservation(&d).unwrap();
        prop_assert_eq!(pos.board_tiles().union(&pos.pool), d.full_set());
    }
}

#[test]
fn draws_and_passes_conserve_tiles() {
    let lex = lexicon();
    let d = dist();
    let mut pos: Position = puzzle_position(&lex).with_rack(1, "MKNOSYZ".parse().unwrap()).unwrap();
    pos = pos.with_rack(0, "FJLLLQW".parse().unwrap()).unwrap();
    assert_eq!(pos.bag().copied(), Some(ts("DE")));
    pos.to_move = 1;
    let ditz = Move::Place(Placement::from_notation(&pos.board, "8K", "DITZ", &d).unwrap());
    let after = pos.apply_play(&ditz, &d).unwrap();
    after.check_conservation(&d).unwrap();
    let drawn = after.draw_tiles(1, &ts("E")).unwrap();
    drawn.check_conservation(&d).unwrap();
    assert_eq!(drawn.bag().copied(), Some(ts("D")));
    assert!(after.draw_tiles(1, &ts("Q")).is_err());
    let passed = drawn.apply_play(&Move::Pass, &d).unwrap();
    assert_eq!(passed.scoreless_turns, 1);
    assert!(matches!(passed.racks[1], RackView::Known(_)));
}
