mod common;

use proptest::prelude::*;
use winset::decision::member;
use winset::enumerate::{candidate, candidate_count, fast_winset_size};
use winset::oracle::{alice_wins, winning_slice_bits, TargetPredicate};
use winset::winset::{
    game_states_equivalent, reverse_winset_dfa, winset_dfa, winset_nfa, GameState, WinsetHost,
};
use winset::{Alphabet, Dfa, StateSet, Turn, TurnWord};

#[test]
fn automaton_decision_and_oracle_agree() {
    for host in common::hosts_up_to(3) {
        let w = winset_dfa(&host).unwrap();
        for word in common::words_up_to(7) {
            let t = TargetPredicate::from_dfa(&host, word.len()).unwrap();
            let by_oracle = alice_wins(&t, &word).unwrap();
            assert_eq!(w.accepts(&word.symbols()), by_oracle, "{host}{word}");
            assert_eq!(member(&host, &word).unwrap(), by_oracle, "{host}{word}");
        }
    }
}

#[test]
fn member_agrees_with_automaton_on_random_four_state_hosts() {
    let mut rng = common::rng(11);
    for _ in 0..60 {
        let host = common::random_host(&mut rng, 4);
        let w = winset_dfa(&host).unwrap();
        for word in common::words_up_to(8) {
            assert_eq!(member(&host, &word).unwrap(), w.accepts(&word.symbols()));
        }
    }
}

fn slice_count(d: &Dfa, n: usize) -> usize {
    winset::automata::binary_words(n).filter(|v| d.accepts(v)).count()
}

#[test]
fn slices_have_equal_cardinality() {
    let mut rng = common::rng(12);
    let random = (0..80).map(|_| common::random_host(&mut rng, 4));
    for host in common::hosts_up_to(3).chain(random) {
        let w = winset_dfa(&host).unwrap();
        for n in 0..=8 {
            assert_eq!(slice_count(&w, n), slice_count(&host, n), "{host} n={n}");
        }
    }
}

#[test]
fn winning_sets_are_downward_closed() {
    for host in common::hosts_up_to(3) {
        let w = winset_dfa(&host).unwrap();
        for word in common::words_up_to(8).filter(|x| w.accepts(&x.symbols())) {
            for i in (0..word.len()).filter(|&i| word.turns()[i] == Turn::B) {
                let mut lower = word.turns().to_vec();
                lower[i] = Turn::A;
                assert!(w.accepts(&TurnWord::new(lower).symbols()), "{host}{word}");
            }
        }
    }
}

#[test]
fn oracle_slices_match_automaton() {
    let mut rng = common::rng(13);
    for _ in 0..40 {
        let host = common::random_host(&mut rng, 3);
        let w = winset_dfa(&host).unwrap();
        for n in 0..=8 {
            let bits = winning_slice_bits(&TargetPredicate::from_dfa(&host, n).unwrap()).unwrap();
            for (i, word) in TurnWord::all_of_length(n).enumerate() {
                assert_eq!(bits[i], w.accepts(&word.symbols()));
            }
        }
    }
}

#[test]
fn sizes_respect_dedekind_bound() {
    let d: Vec<usize> = (1..=4).map(common::dedekind).collect();
    assert_eq!(d, [3, 6, 20, 168]);
    for n in 1..=3 {
        for host in common::hosts(n) {
            assert!(winset_dfa(&host).unwrap().state_count() <= d[n - 1]);
        }
    }
    for code in 0..candidate_count(4) {
        assert!(fast_winset_size(&candidate(4, code)).unwrap() <= d[3], "code {code}");
    }
}

#[test]
fn reversal_reads_the_reversed_language() {
    for host in common::hosts_up_to(3) {
        let w = winset_dfa(&host).unwrap();
        let r = reverse_winset_dfa(&host);
        for word in common::words_up_to(8) {
            assert_eq!(r.accepts(&word), w.accepts(&word.reversed().symbols()));
        }
        let (materialized, _) = r.materialize(1 << 16).unwrap();
        assert_eq!(materialized.state_count(), materialized.reachable_count());
    }
}

fn singleton_profile(h: &WinsetHost, n: usize, w: &TurnWord) -> Vec<bool> {
    (0..n)
        .map(|q| h.is_accepting(&h.run(&GameState::singleton(q), w)))
        .collect()
}

/// Equal acceptance from every singleton makes `v` and `w` interchangeable
/// at the end of a turn order: `uv` and `uw` are both in `W` or both out.
#[test]
fn singleton_profiles_fix_final_acceptance() {
    let mut rng = common::rng(14);
    let random = (0..30).map(|_| common::random_host(&mut rng, 4));
    let words: Vec<TurnWord> = common::words_up_to(5).collect();
    for host in common::hosts_up_to(2).chain(random) {
        let h = WinsetHost::new(&host).unwrap();
        let w = winset_dfa(&host).unwrap();
        let n = host.state_count();
        let profiles: Vec<Vec<bool>> = words.iter().map(|x| singleton_profile(&h, n, x)).collect();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                if profiles[i] != profiles[j] {
                    continue;
                }
                let (v, u) = (words[i].symbols(), words[j].symbols());
                for s in 0..w.state_count() {
                    assert_eq!(
                        w.is_final(w.run_from(s, &v)),
                        w.is_final(w.run_from(s, &u)),
                        "{host} v={} w={}",
                        words[i],
                        words[j]
                    );
                }
            }
        }
    }
}

/// Equal singleton profiles do not make two words syntactically congruent:
/// a right context can still tell them apart.
#[test]
fn singleton_profiles_do_not_give_full_congruence() {
    let host = Dfa::new(Alphabet::Binary, 0, vec![[0, 1], [0, 0]], [0]).unwrap();
    let h = WinsetHost::new(&host).unwrap();
    let (v, w) = (TurnWord::empty(), "AB".parse::<TurnWord>().unwrap());
    assert_eq!(singleton_profile(&h, 2, &v), singleton_profile(&h, 2, &w));
    assert!(!winset_dfa(&host).unwrap().congruent(&v.symbols(), &w.symbols()));
}

#[test]
fn canonical_nfa_matches_dfa() {
    for host in common::hosts_up_to(3) {
        let nfa = winset_nfa(&host).nfa;
        let w = winset_dfa(&host).unwrap();
        for word in common::words_up_to(6) {
            assert_eq!(nfa.accepts(&word.symbols()), w.accepts(&word.symbols()));
        }
    }
}

fn arb_host() -> impl Strategy<Value = Dfa> {
    (1usize..=5).prop_flat_map(|n| {
        (
            proptest::collection::vec((0..n, 0..n), n),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(delta, finals)| {
                let delta = delta.into_iter().map(|(a, b)| [a, b]).collect();
                let finals: Vec<usize> = (0..n).filter(|&q| finals[q]).collect();
                Dfa::new(Alphabet::Binary, 0, delta, finals).unwrap()
            })
    })
}

fn arb_sets(n: usize) -> impl Strategy<Value = GameState> {
    proptest::collection::vec(0u32..1 << n, 0..5).prop_map(move |masks| {
        GameState::new(masks.into_iter().map(|m| {
            let mut s = StateSet::new();
            for q in (0..n).filter(|&q| m >> q & 1 == 1) {
                s.insert(q);
            }
            s
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalization_is_sound((host, g) in arb_host().prop_flat_map(|h| {
        let n = h.state_count();
        (Just(h), arb_sets(n))
    })) {
        let wh = WinsetHost::new(&host).unwrap();
        let normal = wh.normalize(&g);
        prop_assert!(normal.is_antichain());
        prop_assert!(game_states_equivalent(&host, &g, &normal));
    }

    #[test]
    fn fast_engine_matches_generic(host in arb_host()) {
        prop_assert_eq!(
            fast_winset_size(&host).unwrap(),
            winset_dfa(&host).unwrap().state_count()
        );
    }

    #[test]
    fn labels_do_not_matter(host in arb_host(), flips in proptest::collection::vec(any::<bool>(), 5)) {
        let mut swapped = host.clone();
        for q in (0..host.state_count()).filter(|&q| flips[q]) {
            swapped = swapped.swap_labels(q);
        }
        prop_assert_eq!(winset_dfa(&host).unwrap(), winset_dfa(&swapped).unwrap());
    }
}
