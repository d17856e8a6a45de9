//! Winning-set automata.

mod automaton;
mod game;
mod reversal;

use crate::automata::{Alphabet, Dfa, Turn, TurnWord};
use crate::bitset::StateSet;
use crate::error::{Error, Result};

pub use automaton::{
    game_states_equivalent, winset_automaton, winset_dfa, winset_dfa_with_budget, winset_nfa,
    WinsetAutomaton, WinsetNfa, DEFAULT_STATE_BUDGET,
};
pub use game::{leq, GameState};
pub use reversal::{reverse_winset_dfa, ReversalDfa};

use game::minimal_sets;

/// A host DFA over `{0,1}` with the per-host data the game-state
/// operations need.
#[derive(Clone, Debug)]
pub struct WinsetHost {
    dfa: Dfa,
    finals: StateSet,
    coaccessible: StateSet,
    accepting_sinks: StateSet,
}

impl WinsetHost {
    pub fn new(dfa: &Dfa) -> Result<Self> {
        if dfa.alphabet() != Alphabet::Binary {
            return Err(Error::AlphabetMismatch {
                expected: Alphabet::Binary.name(),
                found: dfa.alphabet().name(),
            });
        }
        Ok(WinsetHost {
            finals: dfa.finals(),
            coaccessible: dfa.coaccessible(),
            accepting_sinks: dfa.accepting_sinks(),
            dfa: dfa.clone(),
        })
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// `{{q0}}`.
    pub fn initial(&self) -> GameState {
        GameState::singleton(self.dfa.initial())
    }

    /// A game state is accepting when some member lies inside `F`.
    pub fn is_accepting(&self, g: &GameState) -> bool {
        g.iter().any(|s| s.is_subset(&self.finals))
    }

    /// `δ'(S, c)`: on `A` the images of `S` under every choice function,
    /// on `B` the single set of all successors.
    pub fn set_image(&self, s: &StateSet, c: Turn) -> Vec<StateSet> {
        match c {
            Turn::B => vec![s
                .iter()
                .flat_map(|q| self.dfa.transitions()[q])
                .collect()],
            Turn::A => {
                let mut images = vec![StateSet::new()];
                for q in s.iter() {
                    let [t0, t1] = self.dfa.transitions()[q];
                    let mut next = Vec::with_capacity(images.len() * 2);
                    for img in &images {
                        for t in [t0, t1] {
                            let mut x = img.clone();
                            x.insert(t);
                            next.push(x);
                        }
                    }
                    next.sort_unstable();
                    next.dedup();
                    images = next;
                }
                images
            }
        }
    }

    /// Exact `δ_W(g, c)` without any normalization.
    pub fn image(&self, g: &GameState, c: Turn) -> GameState {
        GameState::new(g.iter().flat_map(|s| self.set_image(s, c)))
    }

    /// Exact image along a word.
    pub fn image_word(&self, g: &GameState, w: &TurnWord) -> GameState {
        w.turns().iter().fold(g.clone(), |g, &c| self.image(&g, c))
    }

    /// Strips accepting sinks from members, drops members that contain a
    /// state with no path to `F`, then drops strict supersets.
    pub fn normalize(&self, g: &GameState) -> GameState {
        let mut sets = Vec::with_capacity(g.len());
        for s in g {
            let s = s.difference(&self.accepting_sinks);
            if s.is_empty() {
                return GameState::won();
            }
            if s.is_subset(&self.coaccessible) {
                sets.push(s);
            }
        }
        GameState::from_sorted(minimal_sets(sets))
    }

    /// `normalize(image(g, c))`, computed with pruning along the way.
    pub fn step(&self, g: &GameState, c: Turn) -> GameState {
        let delta = self.dfa.transitions();
        let mut out: Vec<StateSet> = Vec::new();
        for s in g {
            match c {
                Turn::B => {
                    let mut img = StateSet::new();
                    let mut dead = false;
                    for q in s.iter() {
                        for t in delta[q] {
                            if !self.coaccessible.contains(t) {
                                dead = true;
                            } else if !self.accepting_sinks.contains(t) {
                                img.insert(t);
                            }
                        }
                    }
                    if dead {
                        continue;
                    }
                    if img.is_empty() {
                        return GameState::won();
                    }
                    out.push(img);
                }
                Turn::A => {
                    let mut images = vec![StateSet::new()];
                    for q in s.iter() {
                        let mut next = Vec::with_capacity(images.len() * 2);
                        for t in delta[q] {
                            if !self.coaccessible.contains(t) {
                                continue;
                            }
                            for img in &images {
                                let mut x = img.clone();
                                if !self.accepting_sinks.contains(t) {
                                    x.insert(t);
                                }
                                next.push(x);
                            }
                        }
                        images = minimal_sets(next);
                        if images.is_empty() {
                            break;
                        }
                    }
                    if images.first().is_some_and(|x| x.is_empty()) {
                        return GameState::won();
                    }
                    out.extend(images);
                }
            }
        }
        GameState::from_sorted(minimal_sets(out))
    }

    /// Normalized state after reading `w`.
    pub fn run(&self, g: &GameState, w: &TurnWord) -> GameState {
        w.turns().iter().fold(self.normalize(g), |g, &c| self.step(&g, c))
    }

    /// Whether the turn order `w` is winning from `g`.
    pub fn accepts_from(&self, g: &GameState, w: &TurnWord) -> bool {
        self.is_accepting(&self.run(g, w))
    }

    /// Whether `w ∈ W(L(host))`.
    pub fn accepts(&self, w: &TurnWord) -> bool {
        self.accepts_from(&self.initial(), w)
    }
}

fn host(dfa: &Dfa) -> WinsetHost {
    WinsetHost::new(dfa).expect("host DFA must be over {0,1}")
}

/// `normalize(δ_W(g, c))` for a host over `{0,1}`.
///
/// # Panics
///
/// If the host is not over `{0,1}`; use [`WinsetHost`] to get an error.
pub fn winning_step(dfa: &Dfa, g: &GameState, c: Turn) -> GameState {
    host(dfa).step(g, c)
}

/// See [`WinsetHost::normalize`].
///
/// # Panics
///
/// If the host is not over `{0,1}`.
pub fn normalize(dfa: &Dfa, g: &GameState) -> GameState {
    host(dfa).normalize(g)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn parity() -> Dfa {
        Dfa::new(Alphabet::Binary, 0, vec![[0, 1], [1, 0]], [1]).unwrap()
    }

    /// Small host with a nonaccepting sink (3) and an accepting sink (2).
    fn with_sinks() -> Dfa {
        Dfa::new(Alphabet::Binary, 0, vec![[1, 3], [2, 0], [2, 2], [3, 3]], [1, 2]).unwrap()
    }

    pub(crate) fn arb_host(max_states: usize) -> impl Strategy<Value = Dfa> {
        (1..=max_states).prop_flat_map(|n| {
            (
                prop::collection::vec([0..n, 0..n], n),
                prop::collection::vec(any::<bool>(), n),
            )
                .prop_map(move |(delta, fin)| {
                    Dfa::new(Alphabet::Binary, 0, delta, (0..n).filter(|&q| fin[q])).unwrap()
                })
        })
    }

    pub(crate) fn arb_game_state(n: usize) -> impl Strategy<Value = GameState> {
        prop::collection::vec(prop::collection::btree_set(0..n, 0..=n), 0..4)
            .prop_map(|sets| GameState::new(sets.into_iter().map(|s| s.into_iter().collect())))
    }

    #[test]
    fn parity_steps() {
        let h = WinsetHost::new(&parity()).unwrap();
        let a = GameState::singleton(0);
        assert_eq!(h.step(&a, Turn::B).to_string(), "{{0,1}}");
        let ab = GameState::from_lists([vec![0, 1]]);
        assert_eq!(h.step(&ab, Turn::A).to_string(), "{{0},{1}}");
        assert_eq!(h.step(&GameState::rejecting(), Turn::A), GameState::rejecting());
        assert_eq!(h.step(&GameState::rejecting(), Turn::B), GameState::rejecting());
    }

    #[test]
    fn exact_image_keeps_supersets() {
        let h = WinsetHost::new(&parity()).unwrap();
        let g = GameState::from_lists([vec![0, 1]]);
        assert_eq!(h.image(&g, Turn::A).to_string(), "{{0},{1},{0,1}}");
    }

    #[test]
    fn normalization_rules() {
        let h = WinsetHost::new(&with_sinks()).unwrap();
        let g = GameState::from_lists([vec![0], vec![0, 3]]);
        assert_eq!(h.normalize(&g), GameState::singleton(0));
        let g = GameState::from_lists([vec![0, 2]]);
        assert_eq!(h.normalize(&g), GameState::singleton(0));
        let g = GameState::from_lists([vec![2], vec![0, 1]]);
        assert_eq!(h.normalize(&g), GameState::won());
        let g = GameState::from_lists([vec![0], vec![1]]);
        assert_eq!(h.normalize(&g), g);
    }

    #[test]
    fn rejects_turn_alphabet_host() {
        assert!(WinsetHost::new(&parity().with_alphabet(Alphabet::Turns)).is_err());
    }

    proptest! {
        #[test]
        fn fast_step_is_normalized_image(d in arb_host(5), g in arb_game_state(5), b in any::<bool>()) {
            let n = d.state_count();
            let g = GameState::new(g.iter().map(|s| s.iter().filter(|&q| q < n).collect()));
            let h = WinsetHost::new(&d).unwrap();
            let c = if b { Turn::B } else { Turn::A };
            prop_assert_eq!(h.step(&h.normalize(&g), c), h.normalize(&h.image(&g, c)));
            let norm = h.normalize(&g);
            prop_assert!(norm.is_antichain());
            prop_assert_eq!(h.normalize(&norm), norm);
        }

        #[test]
        fn step_is_monotone(d in arb_host(4), g in arb_game_state(4), k in arb_game_state(4),
                            w in prop::collection::vec(any::<bool>(), 0..=5)) {
            let n = d.state_count();
            let clip = |g: &GameState| GameState::new(g.iter().map(|s| s.iter().filter(|&q| q < n).collect()));
            let (g, k) = (clip(&g), clip(&k));
            let h = WinsetHost::new(&d).unwrap();
            let w: TurnWord = w.into_iter().map(|b| if b { Turn::B } else { Turn::A }).collect();
            if leq(&g, &k) {
                prop_assert!(leq(&h.image_word(&g, &w), &h.image_word(&k, &w)));
            }
        }
    }
}
