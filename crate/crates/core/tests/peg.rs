mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use common::*;
use pegbluff::gametheory::{parse_game, GameFile, Rational};
use pegbluff::peg::*;
use pegbluff::Outcome;

fn scenario() -> LoadedScenario {
    load_scenario(&data_dir().join("puzzle_nwl.scenario"), &dist()).unwrap()
}

/// One engine analysis shared by every test in this file.
fn report() -> &'static PuzzleReport {
    static REPORT: OnceLock<PuzzleReport> = OnceLock::new();
    REPORT.get_or_init(|| analyze_puzzle(&scenario(), &dist(), 1).unwrap())
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Probability of each distinct `k`-subset by giving every tile its own
/// label and counting subsets of labels.
fn labeled_subsets(tiles: &str, k: usize) -> BTreeMap<String, Rational> {
    let chars: Vec<char> = tiles.chars().collect();
    let mut counts: BTreeMap<String, i64> = BTreeMap::new();
    let mut total = 0;
    for mask in 0u32..(1 << chars.len()) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let picked: String = chars.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| *c).collect();
        *counts.entry(ts(&picked).to_string()).or_default() += 1;
        total += 1;
    }
    counts.into_iter().map(|(s, c)| (s, r(c, total))).collect()
}

#[test]
fn splits_match_labeled_enumeration() {
    let model = UnseenModel::new(ts("DEFJLLLQW"), 2, 7).unwrap();
    let splits = model.enumerate_splits();
    let got: BTreeMap<String, Rational> = splits.iter().map(|s| (s.bag.to_string(), s.probability.clone())).collect();
    assert_eq!(got, labeled_subsets("DEFJLLLQW", 2));
    for s in &splits {
        assert_eq!(s.rack.union(&s.bag), ts("DEFJLLLQW"));
    }
    assert_eq!(got["DE"], r(1, 36));
    assert_eq!(got["LL"], r(3, 36));
    assert!(UnseenModel::new(ts("DEF"), 2, 2).is_err());
}

#[test]
fn draws_match_labeled_enumeration() {
    for (bag, k) in [("DE", 1), ("LLLQ", 2), ("AE??", 2), ("EEEIO", 3), ("Q", 0)] {
        let got: BTreeMap<String, Rational> = draw_distribution(&ts(bag), k).unwrap().into_iter().map(|(d, p)| (d.to_string(), p)).collect();
        assert_eq!(got, labeled_subsets(bag, k), "{bag} draw {k}");
    }
    assert!(draw_distribution(&ts("DE"), 3).is_err());
}

/// Racks the hero might hold after playing Z, enumerated letter by letter
/// from what the opponent cannot see.
fn independent_hypotheses(keep: impl Fn(&str) -> bool) -> Vec<String> {
    let unseen: Vec<char> = "DEKMNOSYZ".chars().collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << unseen.len()) {
        let rack: String = unseen.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| *c).collect();
        if rack.len() == 7 && rack.contains('Z') && keep(&rack) {
            out.push(rack);
        }
    }
    out.sort();
    out
}

#[test]
fn rack_hypotheses_after_the_z_play() {
    let unseen = ts("DEKMNOSYZ");
    let all = hero_rack_hypotheses(&unseen, 7, &ts("Z"), &[]).unwrap();
    let names = |h: &[RackHypothesis]| {
        let mut v: Vec<String> = h.iter().map(|x| x.rack.to_string()).collect();
        v.sort();
        v
    };
    assert_eq!(names(&all), independent_hypotheses(|_| true));
    assert_eq!(all.len(), 28);

    let filters = scenario().file.spec.filters;
    let kept = hero_rack_hypotheses(&unseen, 7, &ts("Z"), &filters).unwrap();
    let expected = independent_hypotheses(|rack| !(rack.contains('D') && rack.contains('M')) && rack != "EKNOSYZ");
    assert_eq!(names(&kept), expected);
    let listed = [
        "DEKNOSZ", "DEKNOYZ", "DEKNSYZ", "DEKOSYZ", "DENOSYZ", "DKNOSYZ", "EKMNOSZ", "EKMNOYZ", "EKMNSYZ", "EKMOSYZ", "EMNOSYZ", "KMNOSYZ",
    ];
    assert_eq!(expected, listed);
    assert!(kept.iter().all(|h| h.weight == r(1, 12)));

    let everything = RackFilter {
        kind: FilterKind::DropContaining(ts("Z")),
        reason: String::new(),
    };
    assert!(matches!(hero_rack_hypotheses(&unseen, 7, &ts("Z"), &[everything]), Err(PegError::NoHypotheses)));
}

#[test]
fn bingos_with_both_d_and_m_need_an_l() {
    let lex = lexicon();
    let bingos: Vec<&str> = lex.words().filter(|w| w.len() == 7).collect();
    assert!(bingos.len() >= 10);
    let offenders: Vec<&&str> = bingos.iter().filter(|w| violates_letter_rule(w, 'D', 'M', 'L')).collect();
    assert!(offenders.is_empty(), "{offenders:?}");
    // the rule is about bingos only: shorter words break it
    assert!(lex.contains("MODEM") && violates_letter_rule("MODEM", 'D', 'M', 'L'));
}

#[test]
fn racks_with_both_d_and_m_have_no_bingo_to_fish_for() {
    let lex = lexicon();
    let dm = independent_hypotheses(|rack| rack.contains('D') && rack.contains('M'));
    assert_eq!(dm.len(), 15);
    // after playing only the Z the hero keeps D and M and draws one tile
    let fish = |rack: &str| -> Vec<String> {
        let keep = ts(rack).difference(&ts("Z")).unwrap();
        let bag = ts("DEKMNOSYZ").difference(&ts(rack)).unwrap();
        bag.submultisets(1).iter().flat_map(|t| lex.bingos_from(&keep.union(t))).collect()
    };
    for rack in &dm {
        assert!(fish(rack).is_empty(), "{rack}: {:?}", fish(rack));
    }
    assert_eq!(fish("KMNOSYZ"), vec!["MONKEYS".to_string()]);
}

#[test]
fn engine_payoffs_match_the_hand_typed_table() {
    let text = std::fs::read_to_string(data_dir().join("games/ditz.game")).unwrap();
    let GameFile::Signaling(hand) = parse_game(&text).unwrap() else {
        panic!("signaling game expected")
    };
    let rep = report();
    assert_eq!(rep.game.payoffs, hand.payoffs);
    assert_eq!(rep.game.responses, hand.responses);
    assert_eq!(rep.start_scores, [344, 476]);

    let cell = |t: &str, a: &str, resp: &str| rep.provenance.iter().find(|p| p.hero_type == t && p.action == a && p.response == resp).unwrap();
    assert_eq!(cell("M", "H11", "14B").final_scores, [511, 511]);
    assert_eq!(cell("D", "8K", "N2").final_scores, [508, 508]);
    assert_eq!(cell("M", "8K", "14B").outcome, Outcome::Win);
    // the condition leaves one draw per hero play, then the last tile
    assert_eq!(rep.provenance.len(), 8);
    assert!(rep.provenance.iter().all(|p| p.probability == Rational::one()));
}

#[test]
fn equilibrium_bluffs_two_thirds_of_the_time() {
    let rep = report();
    assert_eq!(rep.equilibrium.value, r(-1, 3));
    assert_eq!(rep.role_probability("M", "bluff"), r(2, 3));
    assert_eq!(rep.role_probability("D", "bluff"), r(2, 3));
    assert_eq!(rep.response_probability("8K", "block"), r(2, 3));
    assert_eq!(rep.response_probability("H11", "block"), r(2, 3));
    assert_eq!(rep.roles.hero_role("M", "H11"), "bluff");
    assert_eq!(rep.roles.hero_role("D", "8K"), "bluff");
    assert_eq!(rep.roles.observer_role("8K", "N2"), "block");
    assert_eq!(rep.roles.observer_role("H11", "14B"), "block");
    let outcome = |h: &str, o: &str| rep.outcomes.iter().find(|c| c.hero_role == h && c.observer_role == o).unwrap().probability.clone();
    assert_eq!(outcome("bluff", "block"), r(4, 9));
    assert_eq!(outcome("bluff", "second-guess"), r(2, 9));
    assert_eq!(outcome("setup", "block"), r(2, 9));
    assert_eq!(outcome("setup", "second-guess"), r(1, 9));
    for d in &rep.deviations {
        let expect = if d.deviator == "observer" { r(1, 3) } else { r(-1, 3) };
        assert_eq!(d.value, expect, "{}", d.name);
    }
    let naive = rep.naive.as_ref().unwrap();
    assert!(!naive.is_equilibrium);
    assert_eq!(naive.check.value, Rational::zero());
    assert_eq!(naive.check.observer_best, Rational::one());
}

#[test]
fn chance_and_inference_summaries() {
    let rep = report();
    let chance = rep.chance.as_ref().unwrap();
    assert_eq!(chance.bags, vec![(ts("DE"), r(1, 36))]);
    assert_eq!(chance.draw_given_bag, vec![(ts("DE"), r(1, 2))]);
    assert_eq!(chance.probability, r(1, 72));
    let line = rep.naive_line.as_ref().unwrap();
    assert_eq!((line.action.as_str(), line.response.as_str(), line.outcome), ("H11", "14B", Some(Outcome::Tie)));
    let hyp = rep.hypotheses.as_ref().unwrap();
    assert_eq!((hyp.candidates, hyp.remaining.len()), (28, 12));
    let expected = ["DOLMENS", "DONKEYS", "DONZELS", "ENFOLDS", "FONDLES", "KNOLLED", "MENFOLK", "MONKEYS", "ZEDONKS", "ZONKEYS"];
    assert_eq!(hyp.reachable_bingos, expected);
    // formable from the unseen letters, but not from any critical rack
    let lex = lexicon();
    for w in ["FELLOWS", "MELLOWS", "YELLOWS"] {
        assert!(lex.contains(w) && !hyp.reachable_bingos.contains(&w.to_string()), "{w}");
    }
    assert_eq!(rep.scripts.len(), 11);
    assert!(rep.scripts.iter().all(|s| s.passed), "{:?}", rep.scripts.iter().filter(|s| !s.passed).map(|s| &s.name).collect::<Vec<_>>());
}

/// Every draw and either JELL reply leaves the D-and-M rack losing.
fn loses_to_either_jell(rack: &str, spot: &str) {
    let sc = scenario();
    let mut spec = sc.file.spec.clone();
    spec.types = vec![TypeSpec {
        name: rack.into(),
        rack: rack.parse().unwrap(),
        prior: Rational::one(),
    }];
    spec.moves.retain(|m| m.coord == spot);
    spec.responses.retain(|x| x.observation == spot);
    spec.condition = Condition::None;
    spec.actual = None;
    let built = build_signaling_game(&spec, &sc.start, &dist(), 1).unwrap();
    assert_eq!(built.provenance.len(), 4);
    for p in &built.provenance {
        assert_eq!(p.outcome, Outcome::Loss, "{rack} {spot} then {} drawing {}", p.response, p.hero_draw);
    }
}

#[test]
fn racks_with_both_d_and_m_lose_to_either_jell() {
    loses_to_either_jell("DKMNOSZ", "H11");
}

#[test]
#[ignore = "about 50 s; run with --ignored"]
fn more_racks_with_both_d_and_m_lose_to_either_jell() {
    loses_to_either_jell("DEKMNOZ", "8K");
    loses_to_either_jell("DMNOSYZ", "8K");
}

#[test]
fn bad_specs_are_reported() {
    let sc = scenario();
    let d = dist();
    let build = |f: &dyn Fn(&mut RestrictedGameSpec)| {
        let mut spec = sc.file.spec.clone();
        f(&mut spec);
        build_signaling_game(&spec, &sc.start, &d, 1).unwrap_err().to_string()
    };
    let err = build(&|s| s.moves[0].word = "ZITD".into());
    assert!(err.contains("8K ZITD"), "{err}");
    let err = build(&|s| s.condition = Condition::BagLeftOneOf(ts("Q")));
    assert!(err.contains("never holds"), "{err}");
    let err = build(&|s| s.responses.retain(|x| x.observation != "H11"));
    assert!(err.contains("no responses listed for H11"), "{err}");
    let err = build(&|s| {
        s.moves.push(CandidateMove {
            only_for: Some("D".into()),
            coord: "8K".into(),
            word: "DITZY".into(),
        })
    });
    assert!(err.contains("same word"), "{err}");
    let err = build(&|s| s.opponent_rack = "FJLLLQZ".parse().unwrap());
    assert!(err.contains("opponent") || err.contains("rack"), "{err}");
}

#[test]
fn scenario_errors_name_the_line() {
    let err = ScenarioFile::parse("name x\nstart a.gcg\nfrobnicate 3\n").unwrap_err().to_string();
    assert!(err.starts_with("scenario line 3"), "{err}");
    let err = ScenarioFile::parse("name x\ntype M MKNOSYZ half\n").unwrap_err().to_string();
    assert!(err.starts_with("scenario line 2"), "{err}");
    let text = std::fs::read_to_string(data_dir().join("puzzle_nwl.scenario")).unwrap();
    let file = ScenarioFile::parse(&text).unwrap();
    assert_eq!(file.scripts.len(), 11);
    assert_eq!(file.spec.observed_tiles, Some(ts("Z")));
}
