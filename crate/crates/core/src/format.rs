//! Text formats for pawn games and turn-based games.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{syntax, Error, Result};
use crate::game::{Configuration, GameSpec, Mechanism, PawnGame, Player};
use crate::pawnset::PawnSet;
use crate::turnbased::TurnBasedGame;

/// Compares names so that embedded numbers sort by value ("v2" < "v10").
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let mut x = a.as_bytes();
    let mut y = b.as_bytes();
    loop {
        match (x.first(), y.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let i = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let j = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let (nx, ny) = (strip_zeros(&x[..i]), strip_zeros(&y[..j]));
                let ord = nx.len().cmp(&ny.len()).then(nx.cmp(ny));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[i..];
                y = &y[j..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn strip_zeros(s: &[u8]) -> &[u8] {
    let k = s.iter().take_while(|&&c| c == b'0').count();
    &s[k..]
}

/// Vertex order used by the canonical text form.
pub fn canonical_order(g: &PawnGame) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(|&a, &b| natural_cmp(g.vertex_name(a), g.vertex_name(b)));
    order
}

/// Relabels vertex ids into canonical (natural name) order.
pub fn canonicalize(g: &PawnGame, c: &Configuration) -> (PawnGame, Configuration) {
    let order = canonical_order(g);
    let mut vperm = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        vperm[old] = new;
    }
    let pperm: Vec<usize> = (0..g.pawn_count()).collect();
    let c = Configuration {
        vertex: vperm[c.vertex],
        ..c.clone()
    };
    (g.permuted(&vperm, &pperm), c)
}

fn list(s: &PawnSet) -> String {
    s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

pub fn serialize_game(g: &PawnGame, c: &Configuration) -> String {
    let order = canonical_order(g);
    let mut rank = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut out = String::new();
    let _ = writeln!(out, "pawngame {}", g.name());
    let _ = writeln!(out, "mechanism {}", g.mechanism());
    let _ = writeln!(out, "pawns {}", g.pawn_count());
    for &v in &order {
        let _ = write!(out, "vertex {} owners={}", g.vertex_name(v), list(g.owners(v)));
        if g.is_target(v) {
            out.push_str(" target");
        }
        out.push('\n');
    }
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_by_key(|&(a, b)| (rank[a], rank[b]));
    for (a, b) in edges {
        let _ = writeln!(out, "edge {} {}", g.vertex_name(a), g.vertex_name(b));
    }
    let _ = write!(
        out,
        "init vertex={} p1pawns={}",
        g.vertex_name(c.vertex),
        list(&c.p1)
    );
    if let Some(r) = c.grabs_left {
        let _ = write!(out, " grabs-left={r}");
    }
    out.push('\n');
    out
}

/// Splits a line into tokens, dropping any `#` comment.
pub(crate) fn tokens(line: &str) -> Vec<&str> {
    let body = line.split('#').next().unwrap_or("");
    body.split_whitespace().collect()
}

pub(crate) fn parse_list(line: usize, s: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| syntax(line, format!("bad number {t:?}")))
        })
        .collect()
}

pub(crate) fn key_value<'a>(line: usize, tok: &'a str, key: &str) -> Result<&'a str> {
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| syntax(line, format!("expected {key}=..., found {tok:?}")))
}

pub fn parse_mechanism(line: usize, toks: &[&str]) -> Result<Mechanism> {
    match toks {
        ["optional-grabbing"] => Ok(Mechanism::OptionalGrabbing),
        ["always-grabbing"] => Ok(Mechanism::AlwaysGrabbing),
        ["grab-or-give"] => Ok(Mechanism::AlwaysGrabOrGive),
        ["k-grabbing", k] => k
            .parse()
            .map(Mechanism::KGrabbing)
            .map_err(|_| syntax(line, format!("bad k {k:?}"))),
        _ => Err(syntax(line, format!("unknown mechanism {:?}", toks.join(" ")))),
    }
}

pub fn parse_game(text: &str) -> Result<(PawnGame, Configuration)> {
    let mut name = None;
    let mut mechanism = None;
    let mut pawns = None;
    let mut names: Vec<String> = Vec::new();
    let mut owners = Vec::new();
    let mut targets = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut raw_edges = Vec::new();
    let mut init = None;

    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let t = tokens(line);
        let Some(&head) = t.first() else { continue };
        if name.is_none() && head != "pawngame" {
            return Err(syntax(ln, "file must start with `pawngame <name>`"));
        }
        match head {
            "pawngame" => {
                if name.is_some() {
                    return Err(syntax(ln, "duplicate pawngame header"));
                }
                name = Some(t.get(1).copied().unwrap_or("").to_string());
            }
            "mechanism" => mechanism = Some(parse_mechanism(ln, &t[1..])?),
            "pawns" => {
                let d = t
                    .get(1)
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| syntax(ln, "expected `pawns <d>`"))?;
                pawns = Some(d);
            }
            "vertex" => {
                let vname = t.get(1).ok_or_else(|| syntax(ln, "vertex needs a name"))?;
                if index.contains_key(*vname) {
                    return Err(syntax(ln, format!("duplicate vertex {vname}")));
                }
                let mut own = None;
                let mut target = false;
                for tok in &t[2..] {
                    if *tok == "target" {
                        target = true;
                    } else if tok.starts_with("owners=") {
                        own = Some(parse_list(ln, key_value(ln, tok, "owners")?)?);
                    } else {
                        return Err(syntax(ln, format!("unexpected token {tok:?}")));
                    }
                }
                let own = own.ok_or_else(|| {
                    Error::Invalid(format!("line {ln}: vertex {vname} has no owner"))
                })?;
                index.insert(vname.to_string(), names.len());
                if target {
                    targets.push(names.len());
                }
                names.push(vname.to_string());
                owners.push(own.into_iter().collect::<PawnSet>());
            }
            "edge" => {
                if t.len() != 3 {
                    return Err(syntax(ln, "expected `edge <src> <dst>`"));
                }
                raw_edges.push((ln, t[1].to_string(), t[2].to_string()));
            }
            "init" => {
                let mut vertex = None;
                let mut p1 = None;
                let mut r = None;
                for tok in &t[1..] {
                    if tok.starts_with("vertex=") {
                        vertex = Some(key_value(ln, tok, "vertex")?.to_string());
                    } else if tok.starts_with("p1pawns=") {
                        p1 = Some(parse_list(ln, key_value(ln, tok, "p1pawns")?)?);
                    } else if tok.starts_with("grabs-left=") {
                        let v = key_value(ln, tok, "grabs-left")?;
                        r = Some(
                            v.parse::<usize>()
                                .map_err(|_| syntax(ln, format!("bad grabs-left {v:?}")))?,
                        );
                    } else {
                        return Err(syntax(ln, format!("unexpected token {tok:?}")));
                    }
                }
                let vertex = vertex.ok_or_else(|| syntax(ln, "init needs vertex="))?;
                let p1 = p1.ok_or_else(|| syntax(ln, "init needs p1pawns="))?;
                init = Some((ln, vertex, p1, r));
            }
            other => return Err(syntax(ln, format!("unknown directive {other:?}"))),
        }
    }

    let name = name.ok_or_else(|| syntax(1, "empty input"))?;
    let mechanism = mechanism.ok_or_else(|| syntax(0, "missing mechanism line"))?;
    let pawns = pawns.ok_or_else(|| syntax(0, "missing pawns line"))?;
    let (iln, iv, ip, ir) = init.ok_or_else(|| syntax(0, "missing init line"))?;

    let lookup = |ln: usize, v: &str| {
        index
            .get(v)
            .copied()
            .ok_or_else(|| syntax(ln, format!("unknown vertex {v:?}")))
    };
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (ln, a, b) in &raw_edges {
        edges.push((lookup(*ln, a)?, lookup(*ln, b)?));
    }
    let game = PawnGame::new(
        GameSpec {
            name,
            names,
            edges,
            targets,
            pawns,
            owners,
        },
        mechanism,
    )?;
    let grabs_left = match mechanism {
        Mechanism::KGrabbing(k) => Some(ir.unwrap_or(k)),
        _ => ir,
    };
    let c = Configuration {
        vertex: lookup(iln, &iv)?,
        p1: ip.into_iter().collect(),
        grabs_left,
    };
    game.check_config(&c)?;
    Ok((game, c))
}

pub fn serialize_tbgame(tb: &TurnBasedGame, start: Option<usize>) -> String {
    let mut out = String::from("tbgame\n");
    if let Some(s) = start {
        let _ = writeln!(out, "# start {s}");
    }
    for v in 0..tb.vertex_count() {
        let _ = write!(out, "tb {v} player={}", tb.player(v));
        if tb.is_target(v) {
            out.push_str(" target");
        }
        out.push('\n');
    }
    for v in 0..tb.vertex_count() {
        for &u in tb.succ(v) {
            let _ = writeln!(out, "tbedge {v} {u}");
        }
    }
    out
}

pub fn parse_tbgame(text: &str) -> Result<TurnBasedGame> {
    let mut players = Vec::new();
    let mut targets = Vec::new();
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let t = tokens(line);
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| syntax(ln, format!("bad id {s:?}")))
        };
        match t.as_slice() {
            [] | ["tbgame", ..] => {}
            ["tb", id, rest @ ..] => {
                if num(id)? != players.len() {
                    return Err(syntax(ln, "tb ids must be dense and in order"));
                }
                let mut player = None;
                for tok in rest {
                    match *tok {
                        "player=1" => player = Some(Player::One),
                        "player=2" => player = Some(Player::Two),
                        "target" => targets.push(players.len()),
                        _ => return Err(syntax(ln, format!("unexpected token {tok:?}"))),
                    }
                }
                players.push(player.ok_or_else(|| syntax(ln, "missing player="))?);
            }
            ["tbedge", a, b] => edges.push((num(a)?, num(b)?)),
            _ => return Err(syntax(ln, "expected tb or tbedge line")),
        }
    }
    TurnBasedGame::new(players, &edges, &targets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut v = vec!["v10", "v2", "s", "v1", "t", "v02"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, vec!["s", "t", "v1", "v02", "v2", "v10"]);
    }

    #[test]
    fn missing_owner_is_named() {
        let text = "pawngame x\nmechanism optional-grabbing\npawns 1\nvertex a\nedge a a\ninit vertex=a p1pawns=\n";
        let err = parse_game(text).unwrap_err();
        assert!(err.to_string().contains("vertex a has no owner"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = "pawngame x\nmechanism optional-grabbing\npawns 1\nvertex a owners=0\nedge a\n";
        assert_eq!(
            parse_game(text).unwrap_err(),
            Error::Syntax {
                line: 5,
                msg: "expected `edge <src> <dst>`".into()
            }
        );
    }

    #[test]
    fn grabs_left_defaults_to_k_and_is_bounded() {
        let base = "pawngame x\nmechanism k-grabbing 2\npawns 1\nvertex a owners=0 target\nedge a a\n";
        let (_, c) = parse_game(&format!("{base}init vertex=a p1pawns=\n")).unwrap();
        assert_eq!(c.grabs_left, Some(2));
        let err = parse_game(&format!("{base}init vertex=a p1pawns= grabs-left=3\n"));
        assert!(matches!(err, Err(Error::Invalid(m)) if m.contains("exceeds")));
    }
}
