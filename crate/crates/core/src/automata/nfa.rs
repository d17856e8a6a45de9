use std::collections::HashMap;

use crate::automata::{Alphabet, Dfa, Symbol};
use crate::bitset::StateSet;
use crate::error::{Error, Result};

/// A nondeterministic automaton over a two-letter alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: StateSet,
    delta: Vec<[StateSet; 2]>,
    finals: StateSet,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        initial: StateSet,
        finals: StateSet,
    ) -> Result<Self> {
        for (what, set) in [("initial", &initial), ("final", &finals)] {
            if let Some(q) = set.last().filter(|&q| q >= state_count) {
                return Err(Error::invalid(format!(
                    "{what} state {q} out of range (state count {state_count})"
                )));
            }
        }
        Ok(Nfa {
            alphabet,
            initial,
            delta: vec![Default::default(); state_count],
            finals,
        })
    }

    pub fn add_transition(&mut self, from: usize, sym: Symbol, to: usize) -> Result<()> {
        let n = self.state_count();
        if from >= n || to >= n {
            return Err(Error::invalid(format!(
                "transition {from} -> {to} out of range (state count {n})"
            )));
        }
        if sym > 1 {
            return Err(Error::BadSymbolIndex(sym));
        }
        self.delta[from][sym as usize].insert(to);
        Ok(())
    }

    pub fn from_dfa(d: &Dfa) -> Self {
        Nfa {
            alphabet: d.alphabet(),
            initial: StateSet::singleton(d.initial()),
            delta: d
                .transitions()
                .iter()
                .map(|&[a, b]| [StateSet::singleton(a), StateSet::singleton(b)])
                .collect(),
            finals: d.finals(),
        }
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn successors(&self, q: usize, sym: Symbol) -> &StateSet {
        &self.delta[q][sym as usize]
    }

    /// Transitions as `(from, symbol, to)` triples in order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Symbol, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            (0..2u8).flat_map(move |s| row[s as usize].iter().map(move |t| (q, s, t)))
        })
    }

    pub fn step_set(&self, set: &StateSet, sym: Symbol) -> StateSet {
        let mut out = StateSet::new();
        for q in set.iter() {
            out.union_with(&self.delta[q][sym as usize]);
        }
        out
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let end = word
            .iter()
            .fold(self.initial.clone(), |s, &c| self.step_set(&s, c));
        !end.is_disjoint(&self.finals)
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool> {
        Ok(self.accepts(&self.alphabet.parse_word(word)?))
    }

    /// The NFA for the reversed language.
    pub fn reversed(&self) -> Nfa {
        let mut r = Nfa {
            alphabet: self.alphabet,
            initial: self.finals.clone(),
            delta: vec![Default::default(); self.state_count()],
            finals: self.initial.clone(),
        };
        for (q, s, t) in self.transitions() {
            r.delta[t][s as usize].insert(q);
        }
        r
    }

    /// Subset construction over the reachable subsets. The empty subset
    /// appears as an ordinary (rejecting, absorbing) state when reachable.
    pub fn determinize(&self) -> Dfa {
        let mut index: HashMap<StateSet, usize> = HashMap::new();
        let mut sets = vec![self.initial.clone()];
        index.insert(self.initial.clone(), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = [0; 2];
            for s in 0..2u8 {
                let next = self.step_set(&sets[i], s);
                let n = sets.len();
                row[s as usize] = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    n
                });
            }
            delta.push(row);
            i += 1;
        }
        let finals = sets.iter().map(|s| !s.is_disjoint(&self.finals)).collect();
        Dfa::from_parts(self.alphabet, 0, delta, finals)
    }
}
