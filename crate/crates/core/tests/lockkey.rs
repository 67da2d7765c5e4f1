use pawngame::gen::random::{random_lockkey, random_turnbased, rng};
use pawngame::lockkey::gadgets::GadgetKind;
use pawngame::lockkey::{
    expand_lockkey, expand_lockkey_with, lockkey_to_optional, parse_lockkey, serialize_lockkey, solve_lockkey,
    split_labels, tb_to_optional, LkEdge, LockConfig, LockKeyGame,
};
use pawngame::explicit::solve_explicit;
use pawngame::turnbased::solve_turnbased;
use pawngame::{Error, OwnershipKind, Player};
use rand::Rng;

#[test]
fn split_labels_preserves_winner() {
    let mut r = rng(41);
    for _ in 0..1000 {
        let n = r.gen_range(2..=6);
        let locks = r.gen_range(1..=3);
        let (lk, c) = random_lockkey(n, locks, &mut r);
        let split = split_labels(&lk);
        assert!(split.edges.iter().all(|e| e.label_count() <= 1));
        assert_eq!(&split.names[..n], &lk.names[..]);
        assert_eq!(
            solve_lockkey(&lk, &c).unwrap(),
            solve_lockkey(&split, &c).unwrap(),
            "{}",
            serialize_lockkey(&lk, Some(&c))
        );
    }
}

#[test]
fn toggle_semantics() {
    // a -key0-> b -lock0-> t: the key opens the lock only if it was closed.
    let lk = LockKeyGame::new(
        "toggle",
        vec!["a".into(), "b".into(), "t".into(), "x".into()],
        vec![Player::One; 4],
        vec![false, false, true, false],
        1,
        vec![
            LkEdge::labeled(0, 1, &[], &[0]),
            LkEdge::labeled(1, 2, &[0], &[]),
            LkEdge::plain(2, 2),
            LkEdge::plain(3, 3),
        ],
    )
    .unwrap();
    assert_eq!(solve_lockkey(&lk, &LockConfig::new(0, [0])).unwrap(), Player::One);
    assert_eq!(solve_lockkey(&lk, &LockConfig::new(0, [])).unwrap(), Player::Two);
    // Stuck at b with the lock closed: a self-loop, so Player 1 loses there.
    let e = expand_lockkey(&lk).unwrap();
    let stuck = e.id(&LockConfig::new(1, [0]));
    assert_eq!(e.tb.succ(stuck), &[stuck]);
    assert_eq!(e.tb.vertex_count(), 4 * 2);
    assert_eq!(e.config(stuck), LockConfig::new(1, [0]));
}

#[test]
fn lock_budget() {
    let (lk, _) = random_lockkey(3, 5, &mut rng(1));
    assert!(matches!(expand_lockkey_with(&lk, 4), Err(Error::Budget { .. })));
    assert!(expand_lockkey_with(&lk, 5).is_ok());
}

#[test]
fn file_round_trip() {
    let mut r = rng(8);
    for _ in 0..50 {
        let (lk, c) = random_lockkey(r.gen_range(1..=6), r.gen_range(0..=3), &mut r);
        let text = serialize_lockkey(&lk, Some(&c));
        let (lk2, c2) = parse_lockkey(&text).unwrap();
        assert_eq!(serialize_lockkey(&lk2, c2.as_ref()), text);
        assert_eq!(c2, Some(c));
    }
    let (lk, c) = parse_lockkey(include_str!("../data/door.lk")).unwrap();
    assert_eq!(solve_lockkey(&lk, &c.unwrap()).unwrap(), Player::One);
    let err = parse_lockkey("lockkeygame x\nlocks 1\nvertex a player=3\n").unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err}");
}

#[test]
fn pipeline_realizes_lock_states() {
    let mut r = rng(5);
    for _ in 0..30 {
        let (lk, c) = random_lockkey(r.gen_range(1..=5), r.gen_range(1..=3), &mut r);
        let p = lockkey_to_optional(&lk, &c).unwrap();
        // Gadget pawns own several vertices but no vertex has two owners.
        assert_ne!(p.game.classify(), OwnershipKind::Omvpp);
        for (e, chain) in lk.edges.iter().zip(&p.chains) {
            assert_eq!(chain.len(), e.locks.len() + e.keys.len());
            for (i, &gi) in chain.iter().enumerate() {
                let want = if i < e.locks.len() { GadgetKind::Lock } else { GadgetKind::Key };
                assert_eq!(p.gadgets[gi].kind, want);
            }
        }
        for j in 0..lk.locks {
            if p.spec.pawns[j].is_some() {
                let open = !c.is_closed(j);
                assert_eq!(p.spec.lock_open(j, &p.config.p1), open);
                assert_eq!(p.spec.key_open(j, &p.config.p1), open);
                assert_eq!(p.spec.lock_closed(j, &p.config.p1), !open);
            }
        }
    }
}

#[test]
fn turn_based_to_optional_small() {
    let mut r = rng(4);
    for _ in 0..60 {
        let (tb, v0) = random_turnbased(r.gen_range(1..=5), &mut r);
        let (g, c) = tb_to_optional(&tb, v0).unwrap();
        assert_eq!(g.classify(), OwnershipKind::Ovpp);
        assert_eq!(g.vertex_count(), 2 * tb.vertex_count() + 2);
        assert_eq!(solve_explicit(&g, &c).unwrap().winner, solve_turnbased(&tb).winner(v0));
    }
}
