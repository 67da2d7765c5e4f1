mod common;

use common::{game, kind_from, mechanism_from};
use pawngame::format::{canonicalize, parse_game, parse_tbgame, serialize_game, serialize_tbgame};
use pawngame::gen::random::{random_turnbased, rng};
use pawngame::Error;
use rand::seq::SliceRandom;
use rand::Rng;

const G1: &str = include_str!("../data/g1.pawn");
const G2: &str = include_str!("../data/g2.pawn");

#[test]
fn round_trip_random_games() {
    let mut r = rng(7);
    for i in 0..200 {
        let n = r.gen_range(1..=7);
        let d = r.gen_range(1..=5);
        let (g, c) = game(n, d, kind_from(i % 3), mechanism_from((i / 3) % 4, r.gen_range(0..=3)), r.gen());
        let text = serialize_game(&g, &c);
        let (g2, c2) = parse_game(&text).unwrap();
        let (cg, cc) = canonicalize(&g, &c);
        assert_eq!(g2, cg, "{text}");
        assert_eq!(c2, cc);
        assert_eq!(serialize_game(&g2, &c2), text);
    }
}

#[test]
fn g1_text_is_stable() {
    let (g, c) = parse_game(G1).unwrap();
    let a = serialize_game(&g, &c);
    let (g, c) = parse_game(&a).unwrap();
    assert_eq!(serialize_game(&g, &c), a);
    assert!(a.starts_with("pawngame g1\n"));
}

#[test]
fn g2_round_trip() {
    let (g, c) = parse_game(G2).unwrap();
    let (g2, c2) = parse_game(&serialize_game(&g, &c)).unwrap();
    assert_eq!(canonicalize(&g, &c), (g2, c2));
    assert_eq!(g.vertex_count(), 5);
}

#[test]
fn shuffled_input_gives_same_text() {
    let (g, c) = parse_game(G2).unwrap();
    let reference = serialize_game(&g, &c);
    let mut lines: Vec<&str> = G2.lines().filter(|l| l.starts_with("vertex") || l.starts_with("edge")).collect();
    let head: Vec<&str> = G2.lines().filter(|l| l.starts_with("pawngame") || l.starts_with("mechanism") || l.starts_with("pawns")).collect();
    let init = G2.lines().find(|l| l.starts_with("init")).unwrap();
    let mut r = rng(3);
    for _ in 0..20 {
        lines.shuffle(&mut r);
        let text = [head.clone(), lines.clone(), vec![init]].concat().join("\n");
        let (g, c) = parse_game(&text).unwrap();
        assert_eq!(serialize_game(&g, &c), reference);
    }
}

#[test]
fn validation_errors() {
    let missing = G1.replace("vertex s owners=2", "vertex s");
    assert!(matches!(parse_game(&missing), Err(Error::Invalid(m)) if m.contains("no owner")));
    let dead = G1.replace("edge s s\n", "");
    assert!(parse_game(&dead).is_err());
    let range = G1.replace("owners=3", "owners=9");
    assert!(parse_game(&range).is_err());
    let syntax = G1.replace("edge v0 v1", "edge v0");
    let e = parse_game(&syntax).unwrap_err().to_string();
    assert!(e.contains("line"), "{e}");
}

#[test]
fn tbgame_round_trip() {
    let mut r = rng(11);
    for _ in 0..50 {
        let n = r.gen_range(1..=8);
        let (tb, _) = random_turnbased(n, &mut r);
        let text = serialize_tbgame(&tb, None);
        assert_eq!(parse_tbgame(&text).unwrap(), tb, "{text}");
    }
}
