//! The subset factory, game state factory and testing gadgets, and the DFA
//! family whose winning sets need at least `D(n)` states.
//!
//! Subsets are given as 1-based indices, matching the state names.

use std::collections::BTreeSet;

use crate::automata::{Dfa, Turn, TurnWord};
use crate::error::{Error, Result};
use crate::gadgets::{Gadget, GraphBuilder};

fn check_n(n: usize) {
    assert!(n >= 1, "gadgets need n >= 1");
}

/// Adds the subset factory. Returns `(b1, e_{3n-2})`; the last `e` state is
/// left without outgoing edges.
fn add_gen_subset(g: &mut GraphBuilder, n: usize) -> (usize, usize) {
    let b: Vec<usize> = (1..=n + 1).map(|i| g.state(format!("b{i}"))).collect();
    let d: Vec<usize> = (1..=n).map(|i| g.state(format!("d{i}"))).collect();
    let c: Vec<usize> = (1..=n).map(|i| g.state(format!("c{i}"))).collect();
    let s: Vec<usize> = (1..=n).map(|i| g.state(format!("s{i}"))).collect();
    let e: Vec<usize> = (1..=3 * n - 2).map(|j| g.state(format!("e{j}"))).collect();
    for i in 0..n {
        g.edge(b[i], d[i]);
        g.edge(b[i], c[i]);
        g.double(d[i], b[i + 1]);
        g.edge(c[i], s[i]);
        g.edge(c[i], e[3 * i]);
        g.sink(s[i]);
    }
    g.sink(b[n]);
    g.set_final(b[n]);
    for j in 0..e.len() - 1 {
        g.double(e[j], e[j + 1]);
    }
    for i in 1..=n {
        // o_i: the i-th of the n rightmost e states
        g.alias(format!("o{i}"), e[2 * n + i - 3]);
    }
    (b[0], e[e.len() - 1])
}

/// Adds the game state factory. Returns `(a1, r1)`; `r1`'s second edge
/// (the way out of the gadget) is left open.
fn add_gen_state(g: &mut GraphBuilder, n: usize) -> (usize, usize) {
    let len = 3 * n + 1;
    let a: Vec<usize> = (1..=len).map(|i| g.state(format!("a{i}"))).collect();
    let (b1, last_e) = add_gen_subset(g, n);
    let r: Vec<usize> = (1..=len).map(|i| g.state(format!("r{i}"))).collect();
    g.edge(a[0], a[1]);
    g.edge(a[0], b1);
    for i in 1..len {
        g.double(a[i], a[(i + 1) % len]);
    }
    g.double(last_e, r[0]);
    g.edge(r[0], r[1]);
    for i in 1..len {
        g.double(r[i], r[(i + 1) % len]);
    }
    (a[0], r[0])
}

/// Adds the testing gadget and returns `q1`.
fn add_testing(g: &mut GraphBuilder, n: usize) -> usize {
    let q: Vec<usize> = (1..=2 * n).map(|i| g.state(format!("q{i}"))).collect();
    let r = g.state("r");
    let r2 = g.state("r'");
    for i in 0..n - 1 {
        g.double(q[i], q[i + 1]);
    }
    g.edge(q[n - 1], r);
    g.edge(q[n - 1], q[n]);
    for i in n..2 * n {
        g.set_final(q[i]);
        g.double(q[i], if i + 1 < 2 * n { q[i + 1] } else { r2 });
    }
    g.sink(r);
    g.sink(r2);
    q[0]
}

/// The subset factory on its own, started at `b1`. The exit leads to a fresh
/// nonaccepting sink named `exit`.
pub fn gen_subset(n: usize) -> Gadget {
    check_n(n);
    let mut g = GraphBuilder::default();
    let (b1, _) = add_gen_subset(&mut g, n);
    g.close("exit");
    g.build(b1).expect("complete by construction")
}

/// The game state factory on its own, started at `a1`. The exit from `r1`
/// leads to a fresh nonaccepting sink named `exit`.
pub fn gen_state(n: usize) -> Gadget {
    check_n(n);
    let mut g = GraphBuilder::default();
    let (a1, _) = add_gen_state(&mut g, n);
    g.close("exit");
    g.build(a1).expect("complete by construction")
}

/// The testing gadget, started at `q1`.
pub fn testing(n: usize) -> Gadget {
    check_n(n);
    let mut g = GraphBuilder::default();
    let q1 = add_testing(&mut g, n);
    g.build(q1).expect("complete by construction")
}

/// Game state factory wired into the testing gadget (`r1` exits to `q1`),
/// started at `a1`: `15n + 3` states.
pub fn lower_bound_gadget(n: usize) -> Gadget {
    check_n(n);
    let mut g = GraphBuilder::default();
    let (a1, r1) = add_gen_state(&mut g, n);
    let q1 = add_testing(&mut g, n);
    g.edge(r1, q1);
    g.build(a1).expect("complete by construction")
}

pub fn lower_bound_dfa(n: usize) -> Dfa {
    lower_bound_gadget(n).dfa
}

fn subset(n: usize, items: impl IntoIterator<Item = usize>) -> Result<BTreeSet<usize>> {
    let set: BTreeSet<usize> = items.into_iter().collect();
    if let Some(&bad) = set.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::invalid(format!("index {bad} is outside 1..={n}")));
    }
    Ok(set)
}

/// `w_1 ... w_n` with `w_i = BA` for `i ∈ S` and `AB` otherwise.
pub fn subset_word(n: usize, s: impl IntoIterator<Item = usize>) -> Result<TurnWord> {
    let s = subset(n, s)?;
    Ok((1..=n)
        .flat_map(|i| {
            if s.contains(&i) {
                [Turn::B, Turn::A]
            } else {
                [Turn::A, Turn::B]
            }
        })
        .collect())
}

/// Concatenation of `A · subset_word(S) · A^n` over the members of `g`.
pub fn state_word(n: usize, g: &[Vec<usize>]) -> Result<TurnWord> {
    let sets = g
        .iter()
        .map(|s| subset(n, s.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    for (i, a) in sets.iter().enumerate() {
        if a.is_empty() {
            return Err(Error::invalid("game state members must be nonempty"));
        }
        for (j, b) in sets.iter().enumerate() {
            if i != j && a.is_subset(b) {
                return Err(Error::invalid(format!(
                    "{a:?} and {b:?} do not form an antichain"
                )));
            }
        }
    }
    let mut w = TurnWord::empty();
    for s in sets {
        w.push(Turn::A);
        w = w.concat(&subset_word(n, s)?);
        w = w.concat(&TurnWord::power(Turn::A, n));
    }
    Ok(w)
}

/// Length-`n` word with `A` at position `i` (1-based) iff `n - i + 1 ∈ P`.
pub fn test_word(n: usize, p: impl IntoIterator<Item = usize>) -> Result<TurnWord> {
    let p = subset(n, p)?;
    Ok((1..=n)
        .map(|i| if p.contains(&(n - i + 1)) { Turn::A } else { Turn::B })
        .collect())
}
