//! Alternating Turing machines on a bounded tape, and their reduction to
//! Lock & Key games.
//!
//! Main vertex ⟨q, i, γ⟩ claims the machine is in state q with the head on
//! cell i reading γ. Lock ℓ_{i,γ} is open iff cell i holds γ, so of the edges
//! into ⟨q′, i′, γ″⟩ only the one with the true symbol can be taken. The edge
//! into the intermediate vertex of a transition writing γ′ over γ turns the
//! keys of ℓ_{i,γ} and ℓ_{i,γ′}.

use std::collections::HashMap;
use std::fmt;

use crate::error::{syntax, Error, Result};
use crate::format::tokens;
use crate::game::Player;
use crate::lockkey::{LkEdge, LockConfig, LockKeyGame};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub read: usize,
    pub to: usize,
    pub write: usize,
    pub dir: Dir,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtmSpec {
    pub states: Vec<String>,
    /// Player 1 for existential states, Player 2 for universal ones.
    pub owners: Vec<Player>,
    pub alphabet: Vec<String>,
    /// The first listed state.
    pub start: usize,
    pub accept: usize,
    pub reject: usize,
    pub cells: usize,
    pub transitions: Vec<Transition>,
    /// Initial tape, padded to `cells` with the first letter.
    pub word: Vec<usize>,
}

impl AtmSpec {
    pub fn validate(&self) -> Result<()> {
        if self.cells == 0 {
            return Err(Error::Invalid("tape needs at least one cell".into()));
        }
        if self.alphabet.is_empty() {
            return Err(Error::Invalid("empty alphabet".into()));
        }
        if self.word.len() != self.cells {
            return Err(Error::Invalid("tape length differs from cells".into()));
        }
        for t in &self.transitions {
            if t.from == self.accept || t.from == self.reject {
                return Err(Error::Invalid(format!(
                    "halting state {} has a transition",
                    self.states[t.from]
                )));
            }
        }
        Ok(())
    }

    /// Sets the initial tape from `w`: comma-separated letters, or one letter
    /// per character when there is no comma.
    pub fn with_word(mut self, w: &str) -> Result<Self> {
        let letters: Vec<&str> = if w.contains(',') {
            w.split(',').map(str::trim).collect()
        } else {
            w.char_indices().map(|(i, c)| &w[i..i + c.len_utf8()]).collect()
        };
        if letters.len() > self.cells {
            return Err(Error::Invalid(format!(
                "word has {} letters but the tape has {} cells",
                letters.len(),
                self.cells
            )));
        }
        let mut tape = Vec::with_capacity(self.cells);
        for l in letters {
            tape.push(
                self.alphabet
                    .iter()
                    .position(|a| a == l)
                    .ok_or_else(|| Error::Invalid(format!("letter {l:?} not in alphabet")))?,
            );
        }
        tape.resize(self.cells, 0);
        self.word = tape;
        Ok(self)
    }

    /// Transitions from (q, γ) whose head move stays on the tape.
    pub fn moves(&self, q: usize, gamma: usize, cell: usize) -> impl Iterator<Item = (&Transition, usize)> + '_ {
        self.transitions
            .iter()
            .filter(move |t| t.from == q && t.read == gamma)
            .filter_map(move |t| {
                let next = match t.dir {
                    Dir::L => cell.checked_sub(1)?,
                    Dir::R => Some(cell + 1).filter(|&c| c < self.cells)?,
                };
                Some((t, next))
            })
    }
}

/// Machine file text; the tape contents are written as a trailing comment.
impl fmt::Display for AtmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "atm")?;
        let states: Vec<String> = self
            .states
            .iter()
            .zip(&self.owners)
            .map(|(q, p)| format!("{q}:{}", if *p == Player::One { 'E' } else { 'A' }))
            .collect();
        writeln!(f, "states {}", states.join(" "))?;
        writeln!(f, "alphabet {}", self.alphabet.join(" "))?;
        writeln!(f, "accept {}", self.states[self.accept])?;
        writeln!(f, "reject {}", self.states[self.reject])?;
        writeln!(f, "cells {}", self.cells)?;
        for t in &self.transitions {
            writeln!(
                f,
                "trans {} {} -> {} {} {:?}",
                self.states[t.from], self.alphabet[t.read], self.states[t.to], self.alphabet[t.write], t.dir
            )?;
        }
        let word: Vec<&str> = self.word.iter().map(|&a| self.alphabet[a].as_str()).collect();
        writeln!(f, "# word {}", word.join(","))
    }
}

/// Parses the machine file. States listed as `name:E` or `name:A`; accept
/// and reject states may be left out of the list and are then added as
/// existential.
pub fn parse_atm(text: &str) -> Result<AtmSpec> {
    let mut states: Vec<String> = Vec::new();
    let mut owners = Vec::new();
    let mut alphabet: Vec<String> = Vec::new();
    let (mut accept, mut reject, mut cells) = (None, None, None);
    let mut raw = Vec::new();
    let mut header = false;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let t = tokens(line);
        let Some(&head) = t.first() else { continue };
        if !header && head != "atm" {
            return Err(syntax(ln, "file must start with `atm`"));
        }
        match head {
            "atm" => header = true,
            "states" => {
                for tok in &t[1..] {
                    let (name, tag) = tok
                        .split_once(':')
                        .ok_or_else(|| syntax(ln, format!("expected name:E|A, found {tok:?}")))?;
                    let p = match tag {
                        "E" => Player::One,
                        "A" => Player::Two,
                        _ => return Err(syntax(ln, format!("bad state tag {tag:?}"))),
                    };
                    if states.iter().any(|s| s == name) {
                        return Err(syntax(ln, format!("duplicate state {name}")));
                    }
                    states.push(name.to_string());
                    owners.push(p);
                }
            }
            "alphabet" => alphabet = t[1..].iter().map(|s| s.to_string()).collect(),
            "accept" => accept = Some((ln, t.get(1).ok_or_else(|| syntax(ln, "accept needs a state"))?.to_string())),
            "reject" => reject = Some((ln, t.get(1).ok_or_else(|| syntax(ln, "reject needs a state"))?.to_string())),
            "cells" => {
                cells = Some(
                    t.get(1)
                        .and_then(|c| c.parse::<usize>().ok())
                        .ok_or_else(|| syntax(ln, "expected `cells <m>`"))?,
                )
            }
            "trans" => {
                let [_, q, a, "->", q2, b, d] = t.as_slice() else {
                    return Err(syntax(ln, "expected `trans q a -> q' b L|R`"));
                };
                let dir = match *d {
                    "L" => Dir::L,
                    "R" => Dir::R,
                    _ => return Err(syntax(ln, format!("bad direction {d:?}"))),
                };
                raw.push((ln, q.to_string(), a.to_string(), q2.to_string(), b.to_string(), dir));
            }
            other => return Err(syntax(ln, format!("unknown directive {other:?}"))),
        }
    }
    if states.is_empty() {
        return Err(syntax(0, "missing states line"));
    }
    let mut ensure = |name: &str| -> usize {
        if let Some(i) = states.iter().position(|s| s == name) {
            i
        } else {
            states.push(name.to_string());
            owners.push(Player::One);
            states.len() - 1
        }
    };
    let (_, an) = accept.ok_or_else(|| syntax(0, "missing accept line"))?;
    let (_, rn) = reject.ok_or_else(|| syntax(0, "missing reject line"))?;
    let accept = ensure(&an);
    let reject = ensure(&rn);
    if accept == reject {
        return Err(Error::Invalid("accept and reject states coincide".into()));
    }
    let cells = cells.ok_or_else(|| syntax(0, "missing cells line"))?;
    let state_ix: HashMap<&str, usize> = states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let letter = |ln: usize, a: &str| {
        alphabet
            .iter()
            .position(|x| x == a)
            .ok_or_else(|| syntax(ln, format!("letter {a:?} not in alphabet")))
    };
    let state = |ln: usize, q: &str| {
        state_ix
            .get(q)
            .copied()
            .ok_or_else(|| syntax(ln, format!("unknown state {q:?}")))
    };
    let mut transitions = Vec::new();
    for (ln, q, a, q2, b, dir) in raw {
        transitions.push(Transition {
            from: state(ln, &q)?,
            read: letter(ln, &a)?,
            to: state(ln, &q2)?,
            write: letter(ln, &b)?,
            dir,
        });
    }
    let spec = AtmSpec {
        states,
        owners,
        alphabet,
        start: 0,
        accept,
        reject,
        cells,
        transitions,
        word: vec![0; cells],
    };
    spec.validate()?;
    Ok(spec)
}

/// Lock id of ℓ_{i,γ}.
pub fn lock_id(atm: &AtmSpec, cell: usize, gamma: usize) -> usize {
    cell * atm.alphabet.len() + gamma
}

/// Id of main vertex ⟨q, i, γ⟩ in the generated game.
pub fn main_vertex(atm: &AtmSpec, q: usize, cell: usize, gamma: usize) -> usize {
    (q * atm.cells + cell) * atm.alphabet.len() + gamma
}

/// Main vertices come first in (q, i, γ) order, then one intermediate vertex
/// per (main vertex, transition) pair. Main vertices without a transition
/// loop on themselves.
pub fn gen_atm_lockkey(atm: &AtmSpec) -> Result<(LockKeyGame, LockConfig)> {
    atm.validate()?;
    let (m, g) = (atm.cells, atm.alphabet.len());
    let mut names = Vec::new();
    let mut players = Vec::new();
    let mut targets = Vec::new();
    for q in 0..atm.states.len() {
        for i in 0..m {
            for c in 0..g {
                names.push(format!("{}_{}_{}", atm.states[q], i + 1, atm.alphabet[c]));
                players.push(atm.owners[q]);
                targets.push(q == atm.accept);
            }
        }
    }
    let mut edges = Vec::new();
    for q in 0..atm.states.len() {
        for i in 0..m {
            for c in 0..g {
                let v = main_vertex(atm, q, i, c);
                let mut any = false;
                for (k, (t, next)) in atm.moves(q, c, i).enumerate() {
                    any = true;
                    let x = names.len();
                    names.push(format!("{}#{}", names[v], k));
                    players.push(atm.owners[q]);
                    targets.push(false);
                    let keys = if t.write == c {
                        vec![]
                    } else {
                        vec![lock_id(atm, i, c), lock_id(atm, i, t.write)]
                    };
                    edges.push(LkEdge::labeled(v, x, &[], &keys));
                    for c2 in 0..g {
                        let w = main_vertex(atm, t.to, next, c2);
                        edges.push(LkEdge::labeled(x, w, &[lock_id(atm, next, c2)], &[]));
                    }
                }
                if !any {
                    edges.push(LkEdge::plain(v, v));
                }
            }
        }
    }
    let lk = LockKeyGame::new("atm", names, players, targets, m * g, edges)?;
    let closed = (0..m).flat_map(|i| (0..g).filter(move |&c| c != atm.word[i]).map(move |c| lock_id(atm, i, c)));
    let c = LockConfig::new(main_vertex(atm, atm.start, 0, atm.word[0]), closed);
    Ok((lk, c))
}

/// Default cap on explored machine configurations.
pub const ATM_BUDGET: u64 = 1_000_000;

/// Acceptance by least fixed point over configurations reachable from the
/// start: an existential configuration accepts if some successor does, a
/// universal one if it has successors and all accept. Configurations without
/// a move reject unless they are in the accept state; infinite runs reject.
pub fn atm_accepts_bruteforce(atm: &AtmSpec) -> Result<bool> {
    atm.validate()?;
    let space = (atm.states.len() as u128)
        * atm.cells as u128
        * (atm.alphabet.len() as u128).saturating_pow(atm.cells as u32);
    if space > ATM_BUDGET as u128 {
        return Err(Error::Budget {
            estimate: space,
            budget: ATM_BUDGET,
        });
    }
    type Conf = (usize, usize, Vec<usize>);
    let start: Conf = (atm.start, 0, atm.word.clone());
    let mut index: HashMap<Conf, usize> = HashMap::from([(start.clone(), 0)]);
    let mut confs = vec![start];
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < confs.len() {
        let (q, h, tape) = confs[i].clone();
        let mut out = Vec::new();
        if q != atm.accept && q != atm.reject {
            for (t, next) in atm.moves(q, tape[h], h) {
                let mut tp = tape.clone();
                tp[h] = t.write;
                let c = (t.to, next, tp);
                let id = *index.entry(c.clone()).or_insert_with(|| {
                    confs.push(c);
                    confs.len() - 1
                });
                out.push(id);
            }
        }
        succ.push(out);
        i += 1;
    }
    let mut acc: Vec<bool> = confs.iter().map(|c| c.0 == atm.accept).collect();
    loop {
        let mut changed = false;
        for v in 0..confs.len() {
            if acc[v] || succ[v].is_empty() {
                continue;
            }
            let ok = match atm.owners[confs[v].0] {
                Player::One => succ[v].iter().any(|&u| acc[u]),
                Player::Two => succ[v].iter().all(|&u| acc[u]),
            };
            if ok {
                acc[v] = true;
                changed = true;
            }
        }
        if !changed {
            return Ok(acc[0]);
        }
    }
}
