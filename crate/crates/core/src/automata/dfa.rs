use std::collections::VecDeque;

use crate::automata::{Alphabet, Nfa, Symbol};
use crate::bitset::StateSet;
use crate::error::{Error, Result};

/// A complete deterministic automaton over a two-letter alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    delta: Vec<[usize; 2]>,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA, checking that every index is in range.
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        delta: Vec<[usize; 2]>,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::invalid("a DFA needs at least one state"));
        }
        if initial >= n {
            return Err(Error::invalid(format!(
                "initial state {initial} out of range (state count {n})"
            )));
        }
        for (q, row) in delta.iter().enumerate() {
            for &t in row {
                if t >= n {
                    return Err(Error::invalid(format!(
                        "transition from {q} targets {t}, out of range (state count {n})"
                    )));
                }
            }
        }
        let mut is_final = vec![false; n];
        for f in finals {
            if f >= n {
                return Err(Error::invalid(format!(
                    "final state {f} out of range (state count {n})"
                )));
            }
            is_final[f] = true;
        }
        Ok(Dfa {
            alphabet,
            initial,
            delta,
            finals: is_final,
        })
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        initial: usize,
        delta: Vec<[usize; 2]>,
        finals: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), finals.len());
        Dfa {
            alphabet,
            initial,
            delta,
            finals,
        }
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn step(&self, q: usize, sym: Symbol) -> usize {
        self.delta[q][sym as usize]
    }

    pub fn transitions(&self) -> &[[usize; 2]] {
        &self.delta
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn final_flags(&self) -> &[bool] {
        &self.finals
    }

    pub fn finals(&self) -> StateSet {
        (0..self.state_count()).filter(|&q| self.finals[q]).collect()
    }

    pub fn run_from(&self, q: usize, word: &[Symbol]) -> usize {
        word.iter().fold(q, |q, &s| self.step(q, s))
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.finals[self.run_from(self.initial, word)]
    }

    /// Like [`Dfa::accepts`], but parses `word` in this automaton's alphabet.
    pub fn accepts_str(&self, word: &str) -> Result<bool> {
        Ok(self.accepts(&self.alphabet.parse_word(word)?))
    }

    /// Same automaton with a different initial state.
    pub fn with_initial(&self, initial: usize) -> Self {
        assert!(initial < self.state_count());
        Dfa {
            initial,
            ..self.clone()
        }
    }

    /// Same graph read over the other alphabet (`0 ↦ A`, `1 ↦ B` or back).
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Self {
        Dfa {
            alphabet,
            ..self.clone()
        }
    }

    pub fn with_finals(&self, finals: impl IntoIterator<Item = usize>) -> Result<Self> {
        Dfa::new(self.alphabet, self.initial, self.delta.clone(), finals)
    }

    /// Swaps the two outgoing labels of state `q`.
    pub fn swap_labels(&self, q: usize) -> Self {
        let mut d = self.clone();
        d.delta[q].swap(0, 1);
        d
    }

    /// Complement automaton.
    pub fn complement(&self) -> Self {
        Dfa {
            finals: self.finals.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> StateSet {
        let mut seen = StateSet::singleton(self.initial);
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &t in &self.delta[q] {
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn reachable_count(&self) -> usize {
        self.reachable().len()
    }

    /// States from which some final state is reachable.
    pub fn coaccessible(&self) -> StateSet {
        let n = self.state_count();
        let mut preds = vec![Vec::new(); n];
        for (q, row) in self.delta.iter().enumerate() {
            for &t in row {
                preds[t].push(q);
            }
        }
        let mut seen = self.finals();
        let mut stack: Vec<usize> = seen.iter().collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Final states whose both transitions loop back to themselves.
    pub fn accepting_sinks(&self) -> StateSet {
        (0..self.state_count())
            .filter(|&q| self.finals[q] && self.delta[q] == [q, q])
            .collect()
    }

    pub fn to_nfa(&self) -> Nfa {
        Nfa::from_dfa(self)
    }

    /// Language equivalence, via union-find over the disjoint union
    /// (Hopcroft and Karp).
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        self.check_alphabet(other)?;
        let n = self.state_count();
        let mut parent: Vec<usize> = (0..n + other.state_count()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut stack = vec![(self.initial, other.initial)];
        let (a, b) = (find(&mut parent, self.initial), find(&mut parent, n + other.initial));
        parent[a] = b;
        while let Some((p, q)) = stack.pop() {
            if self.finals[p] != other.finals[q] {
                return Ok(false);
            }
            for s in 0..2 {
                let (p2, q2) = (self.delta[p][s], other.delta[q][s]);
                let (a, b) = (find(&mut parent, p2), find(&mut parent, n + q2));
                if a != b {
                    parent[a] = b;
                    stack.push((p2, q2));
                }
            }
        }
        Ok(true)
    }

    /// A shortest word accepted by exactly one of the two automata, with
    /// ties broken towards the lexicographically smallest.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Vec<Symbol>>> {
        self.check_alphabet(other)?;
        let m = other.state_count();
        let idx = |p: usize, q: usize| p * m + q;
        let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; self.state_count() * m];
        let mut seen = vec![false; self.state_count() * m];
        let start = (self.initial, other.initial);
        seen[idx(start.0, start.1)] = true;
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if self.finals[p] != other.finals[q] {
                let mut word = Vec::new();
                let mut cur = idx(p, q);
                while let Some((prev, s)) = parent[cur] {
                    word.push(s);
                    cur = prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for s in 0..2u8 {
                let (p2, q2) = (self.step(p, s), other.step(q, s));
                let i = idx(p2, q2);
                if !seen[i] {
                    seen[i] = true;
                    parent[i] = Some((idx(p, q), s));
                    queue.push_back((p2, q2));
                }
            }
        }
        Ok(None)
    }

    /// Whether `v` and `w` are syntactically congruent for this automaton's
    /// language: they induce the same transformation on the minimal DFA.
    pub fn congruent(&self, v: &[Symbol], w: &[Symbol]) -> bool {
        let m = self.minimize();
        (0..m.state_count()).all(|q| m.run_from(q, v) == m.run_from(q, w))
    }

    fn check_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.name(),
                found: other.alphabet.name(),
            });
        }
        Ok(())
    }

    /// Renumbers reachable states in breadth-first order from the initial
    /// state, trying symbol 0 before 1. Unreachable states are dropped.
    pub fn canonical(&self) -> Dfa {
        let mut order = vec![usize::MAX; self.state_count()];
        let mut states = vec![self.initial];
        order[self.initial] = 0;
        let mut i = 0;
        while i < states.len() {
            let q = states[i];
            for &t in &self.delta[q] {
                if order[t] == usize::MAX {
                    order[t] = states.len();
                    states.push(t);
                }
            }
            i += 1;
        }
        let delta = states
            .iter()
            .map(|&q| [order[self.delta[q][0]], order[self.delta[q][1]]])
            .collect();
        let finals = states.iter().map(|&q| self.finals[q]).collect();
        Dfa::from_parts(self.alphabet, 0, delta, finals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn parity() -> Dfa {
        Dfa::new(Alphabet::Binary, 0, vec![[0, 1], [1, 0]], [1]).unwrap()
    }

    #[test]
    fn parity_acceptance() {
        let d = parity();
        assert!(d.accepts_str("011").is_ok_and(|b| !b));
        assert!(d.accepts_str("01").unwrap());
        assert!(!d.accepts_str("λ").unwrap());
        assert!(d.accepts_str("0a").is_err());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Dfa::new(Alphabet::Binary, 2, vec![[0, 0], [1, 1]], []).is_err());
        assert!(Dfa::new(Alphabet::Binary, 0, vec![[0, 2], [1, 1]], []).is_err());
        assert!(Dfa::new(Alphabet::Binary, 0, vec![[0, 1], [1, 1]], [5]).is_err());
    }

    #[test]
    fn parity_vs_everything() {
        let all = Dfa::new(Alphabet::Binary, 0, vec![[0, 0]], [0]).unwrap();
        assert!(!parity().equivalent(&all).unwrap());
        assert_eq!(parity().distinguishing_word(&all).unwrap(), Some(vec![]));
        assert_eq!(parity().distinguishing_word(&parity()).unwrap(), None);
        let ab = all.with_alphabet(Alphabet::Turns);
        assert!(parity().equivalent(&ab).is_err());
    }

    #[test]
    fn parity_letters_not_congruent() {
        assert!(!parity().congruent(&[0], &[1]));
        assert!(parity().congruent(&[1, 1], &[0]));
    }

    #[test]
    fn canonical_drops_unreachable() {
        let d = Dfa::new(Alphabet::Binary, 1, vec![[0, 0], [2, 1], [1, 2]], [2]).unwrap();
        let c = d.canonical();
        assert_eq!(c.state_count(), 2);
        assert_eq!(c.transitions(), &[[1, 0], [0, 1]]);
        assert!(c.equivalent(&d).unwrap());
    }
}
