//! Hopcroft partition refinement.

use crate::automata::Dfa;

impl Dfa {
    /// The minimal DFA for the same language, canonically numbered (see
    /// [`Dfa::canonical`]), so that equal languages give equal values.
    pub fn minimize(&self) -> Dfa {
        let d = self.canonical();
        let n = d.state_count();

        let mut inverse = vec![[Vec::new(), Vec::new()]; n];
        for (q, row) in d.transitions().iter().enumerate() {
            for s in 0..2 {
                inverse[row[s]][s].push(q);
            }
        }

        let (fin, rest): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| d.is_final(q));
        let mut blocks: Vec<Vec<usize>> = [fin, rest].into_iter().filter(|b| !b.is_empty()).collect();
        let mut block_of = vec![0; n];
        for (b, members) in blocks.iter().enumerate() {
            for &q in members {
                block_of[q] = b;
            }
        }

        let mut pending = vec![[false; 2]; blocks.len()];
        let mut work = Vec::new();
        if blocks.len() == 2 {
            let small = usize::from(blocks[1].len() < blocks[0].len());
            for s in 0..2 {
                work.push((small, s));
                pending[small][s] = true;
            }
        }

        let mut marked = vec![false; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut hits: Vec<usize> = vec![0; blocks.len()];
        while let Some((splitter, s)) = work.pop() {
            pending[splitter][s] = false;
            let mut preds = Vec::new();
            for &q in &blocks[splitter] {
                for &p in &inverse[q][s] {
                    if !marked[p] {
                        marked[p] = true;
                        preds.push(p);
                        let b = block_of[p];
                        if hits[b] == 0 {
                            touched.push(b);
                        }
                        hits[b] += 1;
                    }
                }
            }
            for b in touched.drain(..) {
                let count = std::mem::take(&mut hits[b]);
                if count == blocks[b].len() {
                    continue;
                }
                let (inside, outside): (Vec<usize>, Vec<usize>) =
                    blocks[b].iter().partition(|&&q| marked[q]);
                let fresh = blocks.len();
                let (keep, moved) = if inside.len() <= outside.len() {
                    (outside, inside)
                } else {
                    (inside, outside)
                };
                for &q in &moved {
                    block_of[q] = fresh;
                }
                blocks[b] = keep;
                blocks.push(moved);
                hits.push(0);
                pending.push([false; 2]);
                for c in 0..2 {
                    // the moved half is the smaller one, so it always suffices
                    if !pending[fresh][c] {
                        pending[fresh][c] = true;
                        work.push((fresh, c));
                    }
                }
            }
            for p in preds {
                marked[p] = false;
            }
        }

        let delta = blocks
            .iter()
            .map(|members| {
                let q = members[0];
                [block_of[d.step(q, 0)], block_of[d.step(q, 1)]]
            })
            .collect();
        let finals = blocks.iter().map(|members| d.is_final(members[0])).collect();
        Dfa::from_parts(d.alphabet(), block_of[d.initial()], delta, finals).canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{binary_words, Alphabet};
    use proptest::prelude::*;

    /// Moore's algorithm: iterate the signature refinement to a fixpoint.
    fn moore_size(d: &Dfa) -> usize {
        let d = d.canonical();
        let n = d.state_count();
        let mut class: Vec<usize> = (0..n).map(|q| usize::from(d.is_final(q))).collect();
        loop {
            let mut sigs: Vec<(usize, usize, usize)> = (0..n)
                .map(|q| (class[q], class[d.step(q, 0)], class[d.step(q, 1)]))
                .collect();
            let mut uniq = sigs.clone();
            uniq.sort();
            uniq.dedup();
            let next: Vec<usize> = sigs
                .drain(..)
                .map(|s| uniq.binary_search(&s).unwrap())
                .collect();
            let before = class.iter().collect::<std::collections::HashSet<_>>().len();
            if uniq.len() == before {
                return uniq.len();
            }
            class = next;
        }
    }

    pub(crate) fn arb_dfa(max_states: usize) -> impl Strategy<Value = Dfa> {
        (1..=max_states).prop_flat_map(|n| {
            (
                prop::collection::vec([0..n, 0..n], n),
                prop::collection::vec(any::<bool>(), n),
                0..n,
            )
                .prop_map(move |(delta, fin, init)| {
                    let finals = (0..n).filter(|&q| fin[q]);
                    Dfa::new(Alphabet::Binary, init, delta, finals).unwrap()
                })
        })
    }

    #[test]
    fn already_minimal_is_fixpoint() {
        let d = Dfa::new(Alphabet::Binary, 0, vec![[0, 1], [1, 0]], [1]).unwrap();
        assert_eq!(d.minimize(), d);
    }

    #[test]
    fn merges_equivalent_states() {
        // (0+1)*0 with a redundant copy of the start state
        let d = Dfa::new(Alphabet::Turns, 0, vec![[1, 2], [1, 2], [1, 0]], [1]).unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 2);
        assert!(m.equivalent(&d).unwrap());
    }

    #[test]
    fn single_state() {
        let d = Dfa::new(Alphabet::Binary, 0, vec![[0, 0]], []).unwrap();
        assert_eq!(d.minimize(), d);
    }

    proptest! {
        #[test]
        fn hopcroft_matches_moore(d in arb_dfa(7)) {
            let m = d.minimize();
            prop_assert_eq!(m.state_count(), moore_size(&d));
            for w in (0..=8).flat_map(binary_words) {
                prop_assert_eq!(m.accepts(&w), d.accepts(&w));
            }
            prop_assert_eq!(m.minimize(), m.clone());
            prop_assert!(m.equivalent(&d).unwrap());
        }

        #[test]
        fn equivalence_matches_word_comparison(a in arb_dfa(4), b in arb_dfa(4)) {
            let bound = a.state_count() + b.state_count();
            let by_words = (0..=bound).flat_map(binary_words).all(|w| a.accepts(&w) == b.accepts(&w));
            prop_assert_eq!(a.equivalent(&b).unwrap(), by_words);
            prop_assert_eq!(a.distinguishing_word(&b).unwrap().is_none(), by_words);
            if let Some(w) = a.distinguishing_word(&b).unwrap() {
                prop_assert_ne!(a.accepts(&w), b.accepts(&w));
            }
            prop_assert_eq!(a.minimize() == b.minimize(), by_words);
        }

        #[test]
        fn determinize_of_dfa_view(d in arb_dfa(6)) {
            prop_assert!(d.to_nfa().determinize().equivalent(&d).unwrap());
        }

        #[test]
        fn congruence_is_sound(d in arb_dfa(5),
                               v in prop::collection::vec(0u8..2, 0..5),
                               w in prop::collection::vec(0u8..2, 0..5)) {
            if d.congruent(&v, &w) {
                for u1 in (0..=4).flat_map(binary_words) {
                    for u2 in (0..=4).flat_map(binary_words) {
                        let left = [&u1[..], &v, &u2].concat();
                        let right = [&u1[..], &w, &u2].concat();
                        prop_assert_eq!(d.accepts(&left), d.accepts(&right));
                    }
                }
            }
            prop_assert!(d.congruent(&v, &v));
        }
    }
}
