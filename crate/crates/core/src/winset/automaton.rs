use std::collections::HashMap;

use crate::automata::{Alphabet, Dfa, Nfa, Turn};
use crate::bitset::StateSet;
use crate::error::{Error, Result};
use crate::winset::{GameState, WinsetHost};

/// Default cap on materialized game states in [`winset_dfa`].
pub const DEFAULT_STATE_BUDGET: usize = 2_000_000;

/// The canonical NFA for `W(L)`: states are the state-sets reachable from
/// `{q0}` under the exact (unnormalized) transition.
#[derive(Clone, Debug)]
pub struct WinsetNfa {
    pub sets: Vec<StateSet>,
    pub nfa: Nfa,
}

impl WinsetNfa {
    /// NFA state holding the host set `s`, if reachable.
    pub fn state_of(&self, s: &StateSet) -> Option<usize> {
        self.sets.iter().position(|x| x == s)
    }
}

/// Materializes the reachable part of the canonical winning-set NFA.
///
/// # Panics
///
/// If the host is not over `{0,1}`.
pub fn winset_nfa(dfa: &Dfa) -> WinsetNfa {
    let host = super::host(dfa);
    let start = StateSet::singleton(dfa.initial());
    let mut index = HashMap::from([(start.clone(), 0)]);
    let mut sets = vec![start];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        for c in Turn::BOTH {
            for t in host.set_image(&sets[i].clone(), c) {
                let n = sets.len();
                let j = *index.entry(t.clone()).or_insert_with(|| {
                    sets.push(t);
                    n
                });
                edges.push((i, c.symbol(), j));
            }
        }
        i += 1;
    }
    let finals = (0..sets.len())
        .filter(|&i| sets[i].is_subset(&host.finals))
        .collect();
    let mut nfa = Nfa::new(Alphabet::Turns, sets.len(), StateSet::singleton(0), finals)
        .expect("indices are in range");
    for (p, s, q) in edges {
        nfa.add_transition(p, s, q).expect("indices are in range");
    }
    WinsetNfa { sets, nfa }
}

/// The determinized winning-set automaton over normalized game states,
/// before minimization.
#[derive(Clone, Debug)]
pub struct WinsetAutomaton {
    /// `states[i]` is the game state of DFA state `i`; state 0 is initial.
    pub states: Vec<GameState>,
    pub dfa: Dfa,
}

/// Subset construction over normalized game states, giving up once more
/// than `budget` states have been created.
pub fn winset_automaton(dfa: &Dfa, budget: usize) -> Result<WinsetAutomaton> {
    let host = WinsetHost::new(dfa)?;
    let start = host.normalize(&host.initial());
    let mut index = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = [0; 2];
        for c in Turn::BOTH {
            let next = host.step(&states[i], c);
            let n = states.len();
            row[c.symbol() as usize] = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if n >= budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    index.insert(next.clone(), n);
                    states.push(next);
                    n
                }
            };
        }
        delta.push(row);
        i += 1;
    }
    let finals = states
        .iter()
        .enumerate()
        .filter(|(_, g)| host.is_accepting(g))
        .map(|(i, _)| i);
    let dfa = Dfa::new(Alphabet::Turns, 0, delta, finals)?;
    Ok(WinsetAutomaton { states, dfa })
}

/// The minimal DFA for `W(L(host))`, with the default state budget.
pub fn winset_dfa(dfa: &Dfa) -> Result<Dfa> {
    winset_dfa_with_budget(dfa, DEFAULT_STATE_BUDGET)
}

pub fn winset_dfa_with_budget(dfa: &Dfa, budget: usize) -> Result<Dfa> {
    Ok(winset_automaton(dfa, budget)?.dfa.minimize())
}

/// Whether `g` and `h` accept the same turn orders, by a lazy
/// union-find bisimulation over normalized successors.
///
/// # Panics
///
/// If the host is not over `{0,1}`.
pub fn game_states_equivalent(dfa: &Dfa, g: &GameState, h: &GameState) -> bool {
    let host = super::host(dfa);
    let (g, h) = (host.normalize(g), host.normalize(h));
    if g == h {
        return true;
    }
    let mut ids: HashMap<GameState, usize> = HashMap::new();
    let mut parent: Vec<usize> = Vec::new();
    let mut id = |x: &GameState, parent: &mut Vec<usize>| -> usize {
        *ids.entry(x.clone()).or_insert_with(|| {
            parent.push(parent.len());
            parent.len() - 1
        })
    };
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let (a, b) = (id(&g, &mut parent), id(&h, &mut parent));
    parent[a] = b;
    let mut stack = vec![(g, h)];
    while let Some((x, y)) = stack.pop() {
        if host.is_accepting(&x) != host.is_accepting(&y) {
            return false;
        }
        for c in Turn::BOTH {
            let (x2, y2) = (host.step(&x, c), host.step(&y, c));
            let (i, j) = (id(&x2, &mut parent), id(&y2, &mut parent));
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                stack.push((x2, y2));
            }
        }
    }
    true
}
