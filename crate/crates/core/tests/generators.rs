use pawngame::explicit::solve_explicit;
use pawngame::format::serialize_game;
use pawngame::gen::random::{random_atm, random_qbf, random_setcover, rng};
use pawngame::gen::{
    atm_accepts_bruteforce, evaluate_qbf, gen_atm_lockkey, gen_random_pawngame, gen_setcover, gen_tqbf, has_cover,
    parse_atm, parse_qbf, RandomParams, SetCover,
};
use pawngame::kgrab_dfs::solve_kgrab_dfs;
use pawngame::lockkey::solve_lockkey;
use pawngame::{Mechanism, OwnershipKind, Player};

fn p1_if(b: bool) -> Player {
    if b {
        Player::One
    } else {
        Player::Two
    }
}

#[test]
fn setcover_three_sets() {
    for (k, expected) in [(2, Player::One), (1, Player::Two)] {
        let sc = SetCover::parse(3, "1;1,2;2,3", k).unwrap();
        assert_eq!(has_cover(&sc), expected == Player::One);
        let (g, c) = gen_setcover(&sc).unwrap();
        assert_eq!(g.classify(), OwnershipKind::Mvpp);
        assert_eq!(solve_kgrab_dfs(&g, &c).unwrap().winner, expected, "k={k}");
        assert_eq!(solve_explicit(&g, &c).unwrap().winner, expected, "k={k}");
    }
}

#[test]
fn setcover_display() {
    let sc = SetCover::parse(3, "1;1,2;2,3", 2).unwrap();
    assert_eq!(sc.to_string(), "--universe 3 --sets \"1;1,2;2,3\" --k 2");
}

#[test]
fn setcover_random_instances() {
    let mut r = rng(5);
    for _ in 0..100 {
        let sc = random_setcover(5, 5, &mut r);
        let (g, c) = gen_setcover(&sc).unwrap();
        assert_eq!(solve_kgrab_dfs(&g, &c).unwrap().winner, p1_if(has_cover(&sc)), "{sc}");
    }
}

#[test]
fn tqbf_one_variable() {
    for (f, expected) in [("Ex1.(x1)", Player::One), ("Ax1.(x1)", Player::Two)] {
        let q = parse_qbf(f).unwrap();
        let (g, c) = gen_tqbf(&q).unwrap();
        assert_eq!(solve_kgrab_dfs(&g, &c).unwrap().winner, expected, "{f}");
        assert_eq!(solve_explicit(&g, &c).unwrap().winner, expected, "{f}");
    }
}

#[test]
fn tqbf_random_formulas() {
    let mut r = rng(6);
    for _ in 0..100 {
        let q = random_qbf(4, 4, &mut r);
        assert_eq!(parse_qbf(&q.to_string()).unwrap(), q);
        let (g, c) = gen_tqbf(&q).unwrap();
        assert_eq!(solve_kgrab_dfs(&g, &c).unwrap().winner, p1_if(evaluate_qbf(&q)), "{q}");
    }
}

#[test]
fn atm_flip_machine() {
    let atm = parse_atm(include_str!("../data/flip.atm")).unwrap().with_word("aa").unwrap();
    assert!(atm_accepts_bruteforce(&atm).unwrap());
    let (lk, c) = gen_atm_lockkey(&atm).unwrap();
    assert_eq!(solve_lockkey(&lk, &c).unwrap(), Player::One);
    let rejected = atm.clone().with_word("ab").unwrap();
    assert!(!atm_accepts_bruteforce(&rejected).unwrap());
    let (lk, c) = gen_atm_lockkey(&rejected).unwrap();
    assert_eq!(solve_lockkey(&lk, &c).unwrap(), Player::Two);
}

#[test]
fn atm_random_machines() {
    let mut r = rng(8);
    for _ in 0..50 {
        let atm = random_atm(3, 2, 2, &mut r);
        let text = atm.to_string();
        let word = text.lines().last().unwrap().trim_start_matches("# word ").replace(',', "");
        assert_eq!(parse_atm(&text).unwrap().with_word(&word).unwrap(), atm, "{text}");
        let (lk, c) = gen_atm_lockkey(&atm).unwrap();
        assert_eq!(solve_lockkey(&lk, &c).unwrap(), p1_if(atm_accepts_bruteforce(&atm).unwrap()), "{text}");
    }
}

#[test]
fn random_games_are_seed_stable() {
    for (kind, d) in [(OwnershipKind::Ovpp, 6), (OwnershipKind::Mvpp, 3), (OwnershipKind::Omvpp, 4)] {
        for seed in 0..20 {
            let p = RandomParams::new(6, d, kind, Mechanism::KGrabbing(2));
            let (g, c) = gen_random_pawngame(&p, seed).unwrap();
            let (g2, c2) = gen_random_pawngame(&p, seed).unwrap();
            assert_eq!(serialize_game(&g, &c), serialize_game(&g2, &c2));
            assert_eq!(g.classify(), kind);
            assert!((0..g.vertex_count()).all(|v| !g.succ(v).is_empty()));
        }
    }
    let bad = RandomParams::new(5, 3, OwnershipKind::Ovpp, Mechanism::OptionalGrabbing);
    assert!(gen_random_pawngame(&bad, 0).is_err());
}
