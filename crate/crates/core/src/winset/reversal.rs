use std::collections::HashMap;

use crate::automata::{Alphabet, Dfa, Turn, TurnWord};
use crate::bitset::StateSet;
use crate::error::{Error, Result};

/// DFA for the reversal of `W(L)`, evaluated lazily on subsets of the host
/// states. It starts at `F`; a subset is final iff it contains the host's
/// initial state.
#[derive(Clone, Debug)]
pub struct ReversalDfa {
    host: Dfa,
}

impl ReversalDfa {
    pub fn new(host: &Dfa) -> Result<Self> {
        if host.alphabet() != Alphabet::Binary {
            return Err(Error::AlphabetMismatch {
                expected: Alphabet::Binary.name(),
                found: host.alphabet().name(),
            });
        }
        Ok(ReversalDfa { host: host.clone() })
    }

    pub fn host(&self) -> &Dfa {
        &self.host
    }

    pub fn initial(&self) -> StateSet {
        self.host.finals()
    }

    pub fn is_final(&self, s: &StateSet) -> bool {
        s.contains(self.host.initial())
    }

    /// On `A`, states with some successor in `s`; on `B`, states with both
    /// successors in `s`.
    pub fn step(&self, s: &StateSet, c: Turn) -> StateSet {
        self.host
            .transitions()
            .iter()
            .enumerate()
            .filter(|(_, [t0, t1])| match c {
                Turn::A => s.contains(*t0) || s.contains(*t1),
                Turn::B => s.contains(*t0) && s.contains(*t1),
            })
            .map(|(q, _)| q)
            .collect()
    }

    pub fn run(&self, s: &StateSet, w: &TurnWord) -> StateSet {
        w.turns().iter().fold(s.clone(), |s, &c| self.step(&s, c))
    }

    /// Whether `w` is in the reversed winning set.
    pub fn accepts(&self, w: &TurnWord) -> bool {
        self.is_final(&self.run(&self.initial(), w))
    }

    /// The reachable part as an explicit DFA over `{A,B}`, together with the
    /// subset behind each state.
    pub fn materialize(&self, budget: usize) -> Result<(Dfa, Vec<StateSet>)> {
        let start = self.initial();
        let mut index = HashMap::from([(start.clone(), 0)]);
        let mut sets = vec![start];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = [0; 2];
            for c in Turn::BOTH {
                let next = self.step(&sets[i], c);
                let n = sets.len();
                row[c.symbol() as usize] = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        if n >= budget {
                            return Err(Error::BudgetExceeded { budget });
                        }
                        index.insert(next.clone(), n);
                        sets.push(next);
                        n
                    }
                };
            }
            delta.push(row);
            i += 1;
        }
        let finals = (0..sets.len()).filter(|&i| self.is_final(&sets[i]));
        let dfa = Dfa::new(Alphabet::Turns, 0, delta, finals)?;
        Ok((dfa, sets))
    }
}

/// # Panics
///
/// If the host is not over `{0,1}`.
pub fn reverse_winset_dfa(host: &Dfa) -> ReversalDfa {
    ReversalDfa::new(host).expect("host DFA must be over {0,1}")
}
