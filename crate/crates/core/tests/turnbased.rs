use pawngame::gen::random::{random_turnbased, rng};
use pawngame::turnbased::{attractor_levels, solve_turnbased, TurnBasedGame};
use pawngame::Player;
use rand::Rng;

/// AND-OR search over simple paths: a repeated vertex ends the play without
/// reaching a target.
fn search(tb: &TurnBasedGame, v: usize, seen: u32, memo: &mut Vec<Option<bool>>) -> bool {
    if tb.is_target(v) {
        return true;
    }
    if seen >> v & 1 == 1 {
        return false;
    }
    let key = (seen as usize) * tb.vertex_count() + v;
    if let Some(b) = memo[key] {
        return b;
    }
    let next = seen | 1 << v;
    let mut it = tb.succ(v).iter();
    let b = match tb.player(v) {
        Player::One => it.any(|&u| search(tb, u, next, memo)),
        Player::Two => it.all(|&u| search(tb, u, next, memo)),
    };
    memo[key] = Some(b);
    b
}

#[test]
fn single_target() {
    let tb = TurnBasedGame::new(vec![Player::One], &[(0, 0)], &[0]).unwrap();
    assert_eq!(attractor_levels(&tb), vec![vec![0]]);
}

#[test]
fn forced_chain() {
    // v2 (Player 2) → v1 (Player 1) → t
    let tb = TurnBasedGame::new(vec![Player::Two, Player::One, Player::One], &[(0, 1), (1, 2), (2, 2)], &[2]).unwrap();
    let r = solve_turnbased(&tb);
    assert_eq!(r.region(), vec![0, 1, 2]);
    assert_eq!(r.levels(), vec![vec![2], vec![1, 2], vec![0, 1, 2]]);
}

#[test]
fn random_games_match_search_and_strategies_hold() {
    let mut r = rng(12);
    for _ in 0..500 {
        let n = r.gen_range(1..=9);
        let (tb, _) = random_turnbased(n, &mut r);
        let res = solve_turnbased(&tb);
        let mut memo = vec![None; n << n];
        for v in 0..n {
            assert_eq!(res.wins(v), search(&tb, v, 0, &mut memo), "v{v} {tb:?}");
        }
        for v in 0..n {
            if tb.is_target(v) {
                continue;
            }
            match (res.level[v], tb.player(v)) {
                (Some(l), Player::One) => {
                    let u = res.p1_strategy[v].unwrap();
                    assert!(tb.succ(v).contains(&u));
                    assert!(res.level[u].is_some_and(|lu| lu < l));
                }
                (Some(l), Player::Two) => {
                    assert!(tb.succ(v).iter().all(|&u| res.level[u].is_some_and(|lu| lu < l)));
                }
                (None, Player::Two) => {
                    let u = res.p2_strategy[v].unwrap();
                    assert!(tb.succ(v).contains(&u) && !res.wins(u));
                }
                (None, Player::One) => assert!(tb.succ(v).iter().all(|&u| !res.wins(u))),
            }
        }
        // Replaying the strategy against every Player 2 choice reaches T within |V| steps.
        for v in res.region() {
            let mut frontier = vec![v];
            for _ in 0..n {
                frontier = frontier
                    .into_iter()
                    .filter(|&x| !tb.is_target(x))
                    .flat_map(|x| match tb.player(x) {
                        Player::One => vec![res.p1_strategy[x].unwrap()],
                        Player::Two => tb.succ(x).to_vec(),
                    })
                    .collect();
            }
            assert!(frontier.iter().all(|&x| tb.is_target(x)));
        }
    }
}
