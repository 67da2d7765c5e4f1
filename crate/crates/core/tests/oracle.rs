mod common;

use common::{game, kind_from, mechanism_from, BruteForce};
use pawngame::explicit::{expand, solve_all, solve_explicit_with, Engine, ExplicitOptions, Node, DEFAULT_BUDGET};
use pawngame::gen::random::{random_pawn_set, rng};
use pawngame::solve::specialized_solver;
use pawngame::{solve_game, Algo, Configuration, Error, Mechanism, PawnSet, Player, SolveOptions};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn both_engines_match_reference(n in 1usize..=5, d in 1usize..=4, kind in 0u8..3, mech in 0u8..4, k in 0usize..=2, seed: u64) {
        let (g, c) = game(n, d, kind_from(kind), mechanism_from(mech, k), seed);
        let reference = BruteForce::solve(&g);
        for engine in [Engine::Dense, Engine::Materialized] {
            let out = solve_explicit_with(&g, &c, ExplicitOptions { budget: DEFAULT_BUDGET, engine }).unwrap();
            prop_assert_eq!(out.winner, reference.winner(&c), "{:?}\n{}", engine, pawngame::format::serialize_game(&g, &c));
        }
    }

    #[test]
    fn dense_region_matches_reference_everywhere(n in 1usize..=4, d in 1usize..=4, kind in 0u8..3, mech in 0u8..4, seed: u64) {
        let (g, _) = game(n, d, kind_from(kind), mechanism_from(mech, 1), seed);
        let reference = BruteForce::solve(&g);
        let sol = solve_all(&g).unwrap();
        let layers = g.mechanism().grab_budget().map(|k| k + 1);
        for v in 0..n {
            for m in 0..1u64 << g.pawn_count() {
                let p = PawnSet::from_mask(m);
                let c = match layers {
                    Some(l) => Configuration::with_grabs(v, p, m as usize % l),
                    None => Configuration::new(v, p),
                };
                prop_assert_eq!(sol.winner(&c), reference.winner(&c));
            }
        }
    }

    #[test]
    fn winner_invariant_under_relabeling(n in 1usize..=5, d in 1usize..=4, kind in 0u8..3, mech in 0u8..4, seed: u64) {
        let (g, c) = game(n, d, kind_from(kind), mechanism_from(mech, 2), seed);
        let mut r = rng(seed ^ 0x5eed);
        let mut vperm: Vec<usize> = (0..n).collect();
        let mut pperm: Vec<usize> = (0..g.pawn_count()).collect();
        use rand::seq::SliceRandom;
        vperm.shuffle(&mut r);
        pperm.shuffle(&mut r);
        let h = g.permuted(&vperm, &pperm);
        let c2 = Configuration {
            vertex: vperm[c.vertex],
            p1: c.p1.iter().map(|p| pperm[p]).collect(),
            grabs_left: c.grabs_left,
        };
        let a = solve_game(&g, &c, SolveOptions { algo: Algo::Explicit, ..SolveOptions::default() }).unwrap();
        let b = solve_game(&h, &c2, SolveOptions { algo: Algo::Explicit, ..SolveOptions::default() }).unwrap();
        prop_assert_eq!(a.winner, b.winner);
    }
}

#[test]
fn auto_dispatch_agrees_with_explicit() {
    let mut r = rng(77);
    let mut dispatched = 0;
    for i in 0..200u64 {
        let kind = kind_from(r.gen_range(0..3));
        let mech = [Mechanism::OptionalGrabbing, Mechanism::AlwaysGrabOrGive, Mechanism::KGrabbing(r.gen_range(0..3))][i as usize % 3];
        let (g, c) = game(r.gen_range(1..=6), r.gen_range(1..=5), kind, mech, r.gen());
        let auto = solve_game(&g, &c, SolveOptions::default()).unwrap();
        let exp = solve_game(&g, &c, SolveOptions { algo: Algo::Explicit, ..SolveOptions::default() }).unwrap();
        assert_eq!(auto.winner, exp.winner, "{}", pawngame::format::serialize_game(&g, &c));
        assert_eq!(auto.fallback, specialized_solver(&g).is_none());
        if !auto.fallback {
            dispatched += 1;
        }
    }
    assert!(dispatched > 100);
}

#[test]
fn specialized_refuses_mvpp_optional() {
    let (g, c) = game(4, 2, pawngame::OwnershipKind::Mvpp, Mechanism::OptionalGrabbing, 3);
    let e = solve_game(&g, &c, SolveOptions { algo: Algo::Specialized, ..SolveOptions::default() }).unwrap_err();
    assert!(matches!(e, Error::Precondition(ref m) if m.contains("EXPTIME")), "{e}");
}

#[test]
fn expansion_shape() {
    // Every configuration of the expansion keeps k-grabbing counters in range
    // and intermediate vertices point at real edges.
    let (g, c) = game(5, 3, pawngame::OwnershipKind::Omvpp, Mechanism::KGrabbing(2), 11);
    let e = expand(&g, &c, DEFAULT_BUDGET).unwrap();
    for node in &e.nodes {
        match node {
            Node::Config(cfg) => assert!(cfg.grabs_left.unwrap() <= 2),
            Node::Inter { to, from } => assert!(g.succ(from.vertex).contains(to)),
        }
    }
    for (i, node) in e.nodes.iter().enumerate() {
        assert_eq!(e.tb.is_target(i), matches!(node, Node::Config(c) if g.is_target(c.vertex)));
    }
}

#[test]
fn budget_is_reported() {
    let (g, c) = game(6, 6, pawngame::OwnershipKind::Mvpp, Mechanism::OptionalGrabbing, 5);
    let e = solve_explicit_with(&g, &c, ExplicitOptions { budget: 10, engine: Engine::Auto }).unwrap_err();
    assert!(matches!(e, Error::Budget { budget: 10, .. }));
}

#[test]
fn play_out_reaches_target_for_winner() {
    let mut r = rng(9);
    for _ in 0..100 {
        let (g, _) = game(5, 4, pawngame::OwnershipKind::Mvpp, Mechanism::OptionalGrabbing, r.gen());
        let c = Configuration::new(r.gen_range(0..5), random_pawn_set(g.pawn_count(), &mut r));
        let out = solve_explicit_with(&g, &c, ExplicitOptions::default()).unwrap();
        let mut pick = rng(r.gen());
        let play = out.solution.play_out(&c, 10_000, |_, s| s[pick.gen_range(0..s.len())].clone());
        let last = play.last().unwrap();
        let at_target = matches!(last, Node::Config(c) if g.is_target(c.vertex));
        assert_eq!(at_target, out.winner == Player::One);
    }
}
