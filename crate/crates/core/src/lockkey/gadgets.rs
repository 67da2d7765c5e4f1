//! Lock and key gadgets for optional-grabbing games.
//!
//! Lock j is represented by two shared pawns: blue_j owns v1 of every lock
//! copy and green_j owns v2. A key copy also uses red_j. The lock is open
//! when Player 1 holds green_j but neither blue_j nor red_j, and closed when
//! he holds blue_j and red_j but not green_j.
//!
//! Harness games wrap one or two gadgets between an entry vertex and an exit
//! vertex so the gadget claims can be checked on the explicit oracle.

use crate::error::Result;
use crate::explicit::{expand, Node, DEFAULT_BUDGET};
use crate::game::{Configuration, GameBuilder, Mechanism, PawnGame, Player};
use crate::pawnset::PawnSet;
use crate::turnbased::{solve_turnbased, TurnBasedGame};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SharedPawns {
    pub blue: usize,
    pub green: usize,
    /// Only allocated once a key copy of the lock exists.
    pub red: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    Lock,
    Key,
}

/// Global sink and target the gadgets' punishment arcs point to.
#[derive(Debug, Clone, Copy)]
pub struct SinkPorts {
    pub sink: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetPorts {
    pub kind: GadgetKind,
    pub lock: usize,
    pub input: usize,
    pub output: usize,
    /// v_in, v1, v2, ..., v_out.
    pub vertices: Vec<usize>,
    /// Pawns created for this copy alone.
    pub fresh_pawns: Vec<usize>,
}

/// Hands out the shared pawns of each lock and numbers gadget copies.
#[derive(Debug, Clone, Default)]
pub struct GadgetRegistry {
    shared: Vec<Option<SharedPawns>>,
    copies: usize,
}

impl GadgetRegistry {
    pub fn new(locks: usize) -> Self {
        Self {
            shared: vec![None; locks],
            copies: 0,
        }
    }

    fn ensure(&mut self, j: usize) {
        if self.shared.len() <= j {
            self.shared.resize(j + 1, None);
        }
    }

    pub fn shared(&mut self, b: &mut GameBuilder, j: usize) -> SharedPawns {
        self.ensure(j);
        *self.shared[j].get_or_insert_with(|| SharedPawns {
            blue: b.pawn(),
            green: b.pawn(),
            red: None,
        })
    }

    fn red(&mut self, b: &mut GameBuilder, j: usize) -> usize {
        self.shared(b, j);
        let s = self.shared[j].as_mut().unwrap();
        *s.red.get_or_insert_with(|| b.pawn())
    }

    pub fn get(&self, j: usize) -> Option<SharedPawns> {
        self.shared.get(j).copied().flatten()
    }

    pub fn state_spec(&self) -> GadgetStateSpec {
        GadgetStateSpec {
            pawns: self.shared.clone(),
        }
    }

    fn next_copy(&mut self) -> usize {
        self.copies += 1;
        self.copies - 1
    }
}

/// Pawn-set predicates describing lock states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetStateSpec {
    pub pawns: Vec<Option<SharedPawns>>,
}

impl GadgetStateSpec {
    fn get(&self, j: usize) -> SharedPawns {
        self.pawns[j].expect("lock has no gadget pawns")
    }

    /// P^ℓ_O: green ∈ P, blue ∉ P.
    pub fn lock_open(&self, j: usize, p: &PawnSet) -> bool {
        let s = self.get(j);
        p.contains(s.green) && !p.contains(s.blue)
    }

    /// P^ℓ_C: blue ∈ P, green ∉ P.
    pub fn lock_closed(&self, j: usize, p: &PawnSet) -> bool {
        let s = self.get(j);
        p.contains(s.blue) && !p.contains(s.green)
    }

    /// P^k_O: additionally red ∉ P.
    pub fn key_open(&self, j: usize, p: &PawnSet) -> bool {
        self.lock_open(j, p) && self.get(j).red.is_none_or(|r| !p.contains(r))
    }

    /// P^k_C: additionally red ∈ P.
    pub fn key_closed(&self, j: usize, p: &PawnSet) -> bool {
        self.lock_closed(j, p) && self.get(j).red.is_none_or(|r| p.contains(r))
    }

    /// Sets the shared pawns of lock j so that P lies in P^k_O or P^k_C.
    pub fn realize(&self, j: usize, open: bool, p: &mut PawnSet) {
        let s = self.get(j);
        let (add, drop) = if open { (true, false) } else { (false, true) };
        set(p, s.green, add);
        set(p, s.blue, drop);
        if let Some(r) = s.red {
            set(p, r, drop);
        }
    }
}

fn set(p: &mut PawnSet, x: usize, on: bool) {
    if on {
        p.insert(x);
    } else {
        p.remove(x);
    }
}

fn fresh(b: &mut GameBuilder, name: String, pawns: &mut Vec<usize>) -> usize {
    let (v, p) = b.solo_vertex(name);
    pawns.push(p);
    v
}

/// The out vertex gets a fresh pawn unless `out_owner` names one.
fn out_vertex(b: &mut GameBuilder, name: String, pawns: &mut Vec<usize>, out_owner: Option<usize>) -> usize {
    match out_owner {
        Some(p) => b.vertex(name, [p]),
        None => fresh(b, name, pawns),
    }
}

/// Lock copy: v_in → v1, v2; v1 → v3 → {v_out, s}; v2 → v4 → {v_out, t}.
pub fn build_lock_gadget(
    b: &mut GameBuilder,
    reg: &mut GadgetRegistry,
    j: usize,
    ports: SinkPorts,
) -> GadgetPorts {
    lock_gadget(b, reg, j, ports, None)
}

fn lock_gadget(
    b: &mut GameBuilder,
    reg: &mut GadgetRegistry,
    j: usize,
    ports: SinkPorts,
    out_owner: Option<usize>,
) -> GadgetPorts {
    let sh = reg.shared(b, j);
    let c = reg.next_copy();
    let nm = |part: &str| format!("lock{j}_{c}_{part}");
    let mut fp = Vec::new();
    let vin = fresh(b, nm("in"), &mut fp);
    let v1 = b.vertex(nm("v1"), [sh.blue]);
    let v2 = b.vertex(nm("v2"), [sh.green]);
    let v3 = fresh(b, nm("v3"), &mut fp);
    let v4 = fresh(b, nm("v4"), &mut fp);
    let out = out_vertex(b, nm("out"), &mut fp, out_owner);
    for (x, y) in [
        (vin, v1),
        (vin, v2),
        (v1, v3),
        (v2, v4),
        (v3, out),
        (v4, out),
        (v3, ports.sink),
        (v4, ports.target),
    ] {
        b.edge(x, y);
    }
    GadgetPorts {
        kind: GadgetKind::Lock,
        lock: j,
        input: vin,
        output: out,
        vertices: vec![vin, v1, v2, v3, v4, out],
        fresh_pawns: fp,
    }
}

/// Key copy. v_in, v4, v5, v6 belong to red; v1 to blue; v2, v7, v8 to green.
pub fn build_key_gadget(
    b: &mut GameBuilder,
    reg: &mut GadgetRegistry,
    j: usize,
    ports: SinkPorts,
) -> GadgetPorts {
    key_gadget(b, reg, j, ports, None)
}

fn key_gadget(
    b: &mut GameBuilder,
    reg: &mut GadgetRegistry,
    j: usize,
    ports: SinkPorts,
    out_owner: Option<usize>,
) -> GadgetPorts {
    let sh = reg.shared(b, j);
    let red = reg.red(b, j);
    let c = reg.next_copy();
    let nm = |part: &str| format!("key{j}_{c}_{part}");
    let mut fp = Vec::new();
    let vin = b.vertex(nm("in"), [red]);
    let v1 = b.vertex(nm("v1"), [sh.blue]);
    let v2 = b.vertex(nm("v2"), [sh.green]);
    let v3 = fresh(b, nm("v3"), &mut fp);
    let v4 = b.vertex(nm("v4"), [red]);
    let v5 = b.vertex(nm("v5"), [red]);
    let v6 = b.vertex(nm("v6"), [red]);
    let v7 = b.vertex(nm("v7"), [sh.green]);
    let v8 = b.vertex(nm("v8"), [sh.green]);
    let out = out_vertex(b, nm("out"), &mut fp, out_owner);
    let (s, t) = (ports.sink, ports.target);
    for (x, y) in [
        (vin, v1),
        (v1, v2),
        (v2, v3),
        (v3, s),
        (v3, t),
        (v1, v4),
        (v4, v5),
        (v4, v6),
        (v5, v7),
        (v6, v8),
        (v7, out),
        (v8, out),
        (v7, t),
        (v8, s),
        (v5, s),
        (v6, t),
    ] {
        b.edge(x, y);
    }
    GadgetPorts {
        kind: GadgetKind::Key,
        lock: j,
        input: vin,
        output: out,
        vertices: vec![vin, v1, v2, v3, v4, v5, v6, v7, v8, out],
        fresh_pawns: fp,
    }
}

/// A chain of gadgets of lock 0 between an entry vertex `a` and an exit
/// vertex `z`.
///
/// One environment pawn owns `a`, the sink, the target, `z`, the connector
/// `m_i` in front of every later gadget and the out vertex of the last
/// gadget. Whoever holds it at the start enters the first gadget, and unless
/// it is grabbed on the way, also the later ones, the way a skeleton vertex
/// sits in front of a lock in the full reduction. The last out vertex leads
/// straight into the absorbing `z`, so giving it the shared pawn keeps
/// two-gadget chains within ten pawns.
#[derive(Debug, Clone)]
pub struct Harness {
    pub game: PawnGame,
    pub entry: usize,
    pub exit: usize,
    pub sink: usize,
    pub target: usize,
    pub env: usize,
    pub gadgets: Vec<GadgetPorts>,
    pub spec: GadgetStateSpec,
}

pub fn harness(kinds: &[GadgetKind]) -> Result<Harness> {
    let mut b = GameBuilder::new("harness");
    let env = b.pawn();
    let entry = b.vertex("a", [env]);
    let sink = b.vertex("s", [env]);
    let target = b.vertex("t", [env]);
    let exit = b.vertex("z", [env]);
    b.edge(sink, sink);
    b.edge(target, target);
    b.edge(exit, exit);
    b.target(target);
    let ports = SinkPorts { sink, target };
    let mut reg = GadgetRegistry::new(1);
    let mut gadgets = Vec::new();
    let mut prev = entry;
    for (i, kind) in kinds.iter().enumerate() {
        if i > 0 {
            let m = b.vertex(format!("m{i}"), [env]);
            b.edge(prev, m);
            prev = m;
        }
        let out_owner = (i + 1 == kinds.len()).then_some(env);
        let gp = match kind {
            GadgetKind::Lock => lock_gadget(&mut b, &mut reg, 0, ports, out_owner),
            GadgetKind::Key => key_gadget(&mut b, &mut reg, 0, ports, out_owner),
        };
        b.edge(prev, gp.input);
        prev = gp.output;
        gadgets.push(gp);
    }
    b.edge(prev, exit);
    Ok(Harness {
        game: b.build(Mechanism::OptionalGrabbing)?,
        entry,
        exit,
        sink,
        target,
        env,
        gadgets,
        spec: reg.state_spec(),
    })
}

impl Harness {
    /// Every initial pawn set with the environment pawn given to `enterer`,
    /// lock 0 realized open or closed, and the fresh gadget pawns arbitrary.
    pub fn initial_sets(&self, enterer: Player, open: bool) -> Vec<PawnSet> {
        let fresh: Vec<usize> = self.gadgets.iter().flat_map(|g| g.fresh_pawns.clone()).collect();
        let mut out = Vec::with_capacity(1 << fresh.len());
        for bits in 0u32..1 << fresh.len() {
            let mut p: PawnSet = fresh
                .iter()
                .enumerate()
                .filter(|&(i, _)| bits >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            if enterer == Player::One {
                p.insert(self.env);
            }
            self.spec.realize(0, open, &mut p);
            out.push(p);
        }
        out
    }

    /// Can `player` force the play from ⟨a, p⟩ into a node satisfying `goal`?
    pub fn forces(&self, p: &PawnSet, player: Player, goal: impl Fn(&Node) -> bool) -> Result<bool> {
        let x = expand(&self.game, &Configuration::new(self.entry, p.clone()), DEFAULT_BUDGET)?;
        let n = x.nodes.len();
        let players = (0..n)
            .map(|i| {
                let q = x.tb.player(i);
                if player == Player::One {
                    q
                } else {
                    q.opponent()
                }
            })
            .collect();
        let succ = (0..n).map(|i| x.tb.succ(i).to_vec()).collect();
        let targets = x.nodes.iter().map(goal).collect();
        let tb = TurnBasedGame::from_parts(players, succ, targets);
        Ok(solve_turnbased(&tb).wins(x.start))
    }

    fn own_win(&self, player: Player) -> usize {
        match player {
            Player::One => self.target,
            Player::Two => self.sink,
        }
    }

    fn all_initial(&self, enterer: Player, open: bool, player: Player, goal: &[usize]) -> Result<bool> {
        for p in self.initial_sets(enterer, open) {
            let hit = |n: &Node| matches!(n, Node::Config(c) if goal.contains(&c.vertex));
            if !self.forces(&p, player, hit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The enterer can force her own win or the exit, from every initial set.
    /// With the exit counted as a win for the enterer this is the game's
    /// winner.
    pub fn enterer_crosses(&self, enterer: Player, open: bool) -> Result<bool> {
        self.all_initial(enterer, open, enterer, &[self.own_win(enterer), self.exit])
    }

    /// The opponent of the enterer can force her own win inside the chain,
    /// from every initial set.
    pub fn opponent_punishes(&self, enterer: Player, open: bool) -> Result<bool> {
        let opp = enterer.opponent();
        self.all_initial(enterer, open, opp, &[self.own_win(opp)])
    }
}

#[derive(Debug, Clone)]
pub struct GadgetCheck {
    pub name: String,
    pub passed: bool,
}

/// Runs the gadget claims on the harness games:
/// an open lock can be crossed by either player, and twice in a row, so it
/// is still open afterwards; a closed lock loses for whoever enters it; a key
/// followed by the lock makes a closed lock crossable and an open one losing.
pub fn check_gadget_behavior() -> Result<Vec<GadgetCheck>> {
    use GadgetKind::{Key, Lock};
    let lock = harness(&[Lock])?;
    let twice = harness(&[Lock, Lock])?;
    let key = harness(&[Key])?;
    let series = harness(&[Key, Lock])?;
    let mut out = Vec::new();
    let mut push = |name: String, passed: bool| out.push(GadgetCheck { name, passed });
    for p in [Player::One, Player::Two] {
        push(format!("open lock, player {p} enters: crosses"), lock.enterer_crosses(p, true)?);
        push(
            format!("open lock twice, player {p} enters: crosses both"),
            twice.enterer_crosses(p, true)?,
        );
        push(
            format!("closed lock, player {p} enters: opponent wins"),
            lock.opponent_punishes(p, false)?,
        );
        push(format!("closed key, player {p} enters: crosses"), key.enterer_crosses(p, false)?);
        push(format!("open key, player {p} enters: crosses"), key.enterer_crosses(p, true)?);
        push(
            format!("key then closed lock, player {p} enters: crosses"),
            series.enterer_crosses(p, false)?,
        );
        push(
            format!("key then open lock, player {p} enters: opponent wins"),
            series.opponent_punishes(p, true)?,
        );
    }
    Ok(out)
}
