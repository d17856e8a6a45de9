//! Membership and intersection-emptiness for winning sets, via the reversal
//! DFA so that only one subset is tracked at a time.

use std::collections::{HashMap, VecDeque};

use crate::automata::{Alphabet, Dfa, Nfa, Turn, TurnWord};
use crate::bitset::StateSet;
use crate::error::{Error, Result};
use crate::winset::ReversalDfa;

/// Default cap on visited product states in [`intersect_nonempty`].
pub const DEFAULT_PRODUCT_BUDGET: usize = 10_000_000;

/// Whether `w ∈ W(L(host))`, reading `w` backwards through the reversal DFA.
pub fn member(host: &Dfa, w: &TurnWord) -> Result<bool> {
    let r = ReversalDfa::new(host)?;
    Ok(r.accepts(&w.reversed()))
}

/// A shortest word in `W(L(host)) ∩ L(b)`, or `None` if the intersection is
/// empty, with the default product-state budget.
pub fn intersect_nonempty(host: &Dfa, b: &Nfa) -> Result<Option<TurnWord>> {
    intersect_nonempty_with_budget(host, b, DEFAULT_PRODUCT_BUDGET)
}

/// Breadth-first search in the product of the reversal DFA with the reversed
/// `b`. Among shortest witnesses the one found first expands `A` before `B`.
pub fn intersect_nonempty_with_budget(
    host: &Dfa,
    b: &Nfa,
    budget: usize,
) -> Result<Option<TurnWord>> {
    if b.alphabet() != Alphabet::Turns {
        return Err(Error::AlphabetMismatch {
            expected: Alphabet::Turns.name(),
            found: b.alphabet().name(),
        });
    }
    let r = ReversalDfa::new(host)?;
    let rb = b.reversed();

    // node -> (parent node, letter read), for witness reconstruction
    let mut nodes: Vec<(StateSet, usize)> = Vec::new();
    let mut parent: Vec<Option<(usize, Turn)>> = Vec::new();
    let mut seen: HashMap<(StateSet, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();

    let start = r.initial();
    for p in rb.initial().iter() {
        let node = (start.clone(), p);
        if !seen.contains_key(&node) {
            if nodes.len() >= budget {
                return Err(Error::BudgetExceeded { budget });
            }
            seen.insert(node.clone(), nodes.len());
            queue.push_back(nodes.len());
            nodes.push(node);
            parent.push(None);
        }
    }

    while let Some(i) = queue.pop_front() {
        let (s, p) = nodes[i].clone();
        if r.is_final(&s) && rb.finals().contains(p) {
            // the path spells the reversed witness
            let mut word = Vec::new();
            let mut cur = i;
            while let Some((prev, c)) = parent[cur] {
                word.push(c);
                cur = prev;
            }
            return Ok(Some(TurnWord::new(word)));
        }
        for c in Turn::BOTH {
            let s2 = r.step(&s, c);
            for p2 in rb.successors(p, c.symbol()).iter() {
                let node = (s2.clone(), p2);
                if seen.contains_key(&node) {
                    continue;
                }
                if nodes.len() >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                seen.insert(node.clone(), nodes.len());
                queue.push_back(nodes.len());
                nodes.push(node);
                parent.push(Some((i, c)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity() -> Dfa {
        Dfa::new(Alphabet::Binary, 0, vec![[0, 1], [1, 0]], [1]).unwrap()
    }

    fn star(c: Turn) -> Nfa {
        let mut n = Nfa::new(Alphabet::Turns, 1, StateSet::singleton(0), StateSet::singleton(0)).unwrap();
        n.add_transition(0, c.symbol(), 0).unwrap();
        n
    }

    #[test]
    fn parity_membership() {
        assert!(!member(&parity(), &"ABAB".parse().unwrap()).unwrap());
        assert!(member(&parity(), &"ABBA".parse().unwrap()).unwrap());
        assert!(!member(&parity(), &TurnWord::empty()).unwrap());
    }

    #[test]
    fn parity_intersections() {
        assert_eq!(intersect_nonempty(&parity(), &star(Turn::B)).unwrap(), None);
        assert_eq!(
            intersect_nonempty(&parity(), &star(Turn::A)).unwrap(),
            Some("A".parse().unwrap())
        );
    }

    #[test]
    fn budget_is_distinct_from_empty() {
        assert_eq!(
            intersect_nonempty_with_budget(&parity(), &star(Turn::B), 1),
            Err(Error::BudgetExceeded { budget: 1 })
        );
    }

    #[test]
    fn wrong_alphabet() {
        let b = parity().to_nfa();
        assert!(intersect_nonempty(&parity(), &b).is_err());
        assert!(member(&parity().with_alphabet(Alphabet::Turns), &TurnWord::empty()).is_err());
    }
}
