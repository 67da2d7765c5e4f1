//! TQBF → OMVPP k-grabbing game.
//!
//! Choosing at x_i moves the token to v_i or ¬v_i, whose pawns p_i / ¬p_i
//! start with Player 2; Player 1 must grab the pawn on arrival. With n grabs
//! he ends up holding exactly one literal pawn per variable, i.e. an
//! assignment. Clause vertex C_j is owned by the pawns of its literals, so
//! Player 1 controls it iff the assignment satisfies C_j.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::game::{Configuration, GameBuilder, Mechanism, PawnGame};
use crate::pawnset::PawnSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbfSpec {
    pub prefix: Vec<Quantifier>,
    /// Literals ±i for variable x_i, 1-based.
    pub clauses: Vec<Vec<i32>>,
}

impl QbfSpec {
    pub fn validate(&self) -> Result<()> {
        let n = self.prefix.len() as i32;
        for c in &self.clauses {
            if c.is_empty() {
                return Err(Error::Invalid("empty clause".into()));
            }
            if let Some(l) = c.iter().find(|&&l| l == 0 || l.abs() > n) {
                return Err(Error::Invalid(format!("literal {l} out of range")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for QbfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.prefix.iter().enumerate() {
            let c = match q {
                Quantifier::Exists => 'E',
                Quantifier::Forall => 'A',
            };
            write!(f, "{c}x{}.", i + 1)?;
        }
        let clauses: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c
                    .iter()
                    .map(|&l| format!("{}x{}", if l < 0 { "~" } else { "" }, l.unsigned_abs()))
                    .collect();
                format!("({})", lits.join("|"))
            })
            .collect();
        f.write_str(&clauses.join("&"))
    }
}

/// Parses `Ex1.Ax2.(x1|~x2)&(x2)`. Variables are numbered by their position
/// in the prefix; `~` or `!` negates.
pub fn parse_qbf(text: &str) -> Result<QbfSpec> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: &str| Error::Invalid(format!("formula: {m}"));
    let mut rest = s.as_str();
    let mut prefix = Vec::new();
    let mut vars: HashMap<String, i32> = HashMap::new();
    while let Some(q) = rest.chars().next().filter(|c| *c == 'E' || *c == 'A') {
        let dot = rest.find('.').ok_or_else(|| bad("quantifier without '.'"))?;
        let name = &rest[1..dot];
        if name.is_empty() || vars.contains_key(name) {
            return Err(bad(&format!("bad or repeated variable {name:?}")));
        }
        prefix.push(if q == 'E' {
            Quantifier::Exists
        } else {
            Quantifier::Forall
        });
        vars.insert(name.to_string(), prefix.len() as i32);
        rest = &rest[dot + 1..];
    }
    let mut clauses = Vec::new();
    for part in rest.split('&') {
        let body = part
            .strip_prefix('(')
            .map(|p| p.strip_suffix(')').ok_or_else(|| bad("unbalanced parenthesis")))
            .unwrap_or(Ok(part))?;
        let mut clause = Vec::new();
        for lit in body.split('|') {
            let (neg, name) = match lit.strip_prefix(['~', '!']) {
                Some(n) => (true, n),
                None => (false, lit),
            };
            let v = *vars
                .get(name)
                .ok_or_else(|| bad(&format!("unquantified variable {name:?}")))?;
            clause.push(if neg { -v } else { v });
        }
        clauses.push(clause);
    }
    let q = QbfSpec { prefix, clauses };
    q.validate()?;
    Ok(q)
}

/// Truth of the formula by full expansion of the prefix.
pub fn evaluate_qbf(q: &QbfSpec) -> bool {
    fn go(q: &QbfSpec, i: usize, assign: &mut Vec<bool>) -> bool {
        if i == q.prefix.len() {
            return q.clauses.iter().all(|c| {
                c.iter()
                    .any(|&l| assign[l.unsigned_abs() as usize - 1] == (l > 0))
            });
        }
        let branch = |val: bool, assign: &mut Vec<bool>| {
            assign.push(val);
            let r = go(q, i + 1, assign);
            assign.pop();
            r
        };
        match q.prefix[i] {
            Quantifier::Exists => branch(true, assign) || branch(false, assign),
            Quantifier::Forall => branch(true, assign) && branch(false, assign),
        }
    }
    go(q, 0, &mut Vec::new())
}

/// Pawn 0 owns the existential choosers, pawn 1 the universal ones plus s
/// and t; for 0-based i, p_i = 2 + 2i and ¬p_i = 3 + 2i.
pub fn gen_tqbf(q: &QbfSpec) -> Result<(PawnGame, Configuration)> {
    q.validate()?;
    let n = q.prefix.len();
    if n == 0 {
        return Err(Error::Invalid("formula has no variables".into()));
    }
    let mut b = GameBuilder::new("tqbf");
    let (pe, pa) = (b.pawn(), b.pawn());
    let lit_pawns: Vec<(usize, usize)> = (0..n).map(|_| (b.pawn(), b.pawn())).collect();
    let x: Vec<usize> = (0..n)
        .map(|i| {
            let owner = match q.prefix[i] {
                Quantifier::Exists => pe,
                Quantifier::Forall => pa,
            };
            b.vertex(format!("x{}", i + 1), [owner])
        })
        .collect();
    let lits: Vec<(usize, usize)> = (0..n)
        .map(|i| {
            (
                b.vertex(format!("v{}", i + 1), [lit_pawns[i].0]),
                b.vertex(format!("nv{}", i + 1), [lit_pawns[i].1]),
            )
        })
        .collect();
    let clauses: Vec<usize> = q
        .clauses
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let owners: Vec<usize> = c
                .iter()
                .map(|&l| {
                    let (p, np) = lit_pawns[l.unsigned_abs() as usize - 1];
                    if l > 0 {
                        p
                    } else {
                        np
                    }
                })
                .collect();
            b.vertex(format!("C{}", j + 1), owners)
        })
        .collect();
    let s = b.vertex("s", [pa]);
    let t = b.vertex("t", [pa]);
    b.edge(s, s);
    b.edge(t, t);
    b.target(t);
    let after_literals = clauses.first().copied().unwrap_or(t);
    for i in 0..n {
        let next = if i + 1 < n { x[i + 1] } else { after_literals };
        for l in [lits[i].0, lits[i].1] {
            b.edge(x[i], l);
            b.edge(l, next);
            b.edge(l, s);
        }
    }
    for (j, &c) in clauses.iter().enumerate() {
        b.edge(c, clauses.get(j + 1).copied().unwrap_or(t));
        b.edge(c, s);
    }
    let g = b.build(Mechanism::KGrabbing(n))?;
    let c = Configuration::with_grabs(x[0], PawnSet::from_iter([pe]), n);
    Ok((g, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_eval() {
        let q = parse_qbf("Ex1.Ax2.(x1|~x2)&(x2)").unwrap();
        assert_eq!(q.prefix, vec![Quantifier::Exists, Quantifier::Forall]);
        assert_eq!(q.clauses, vec![vec![1, -2], vec![2]]);
        assert!(!evaluate_qbf(&q));
        assert!(evaluate_qbf(&parse_qbf("Ex1.(x1)").unwrap()));
        assert!(!evaluate_qbf(&parse_qbf("Ax1.(x1)").unwrap()));
        assert!(parse_qbf("Ex1.(x2)").is_err());
    }

    #[test]
    fn shape() {
        let (g, c) = gen_tqbf(&parse_qbf("Ex1.Ax2.(x1|~x2)&(x2)").unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 2 + 3 * 2 + 2);
        assert_eq!(g.pawn_count(), 2 * 2 + 2);
        assert_eq!(g.mechanism(), Mechanism::KGrabbing(2));
        assert_eq!(c.grabs_left, Some(2));
    }
}
