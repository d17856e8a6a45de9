mod common;

use rand::Rng;
use winset::decision::member;
use winset::gadgets::{
    absorb_into, circuit_to_dfa, circuit_value_instance, iterated_instance, Circuit,
};
use winset::winset::{GameState, WinsetHost};
use winset::StateSet;

/// Inputs some output depends on.
fn used_inputs(c: &Circuit) -> Vec<usize> {
    let mut live = vec![false; c.len()];
    for &o in c.outputs() {
        live[o.index()] = true;
    }
    for id in c.node_ids().rev() {
        if live[id.index()] {
            for p in c.preds(id) {
                live[p.index()] = true;
            }
        }
    }
    c.inputs()
        .iter()
        .enumerate()
        .filter(|(_, x)| live[x.index()])
        .map(|(i, _)| i)
        .collect()
}

fn corpus(seed: u64, count: usize, max_outputs: usize) -> Vec<Circuit> {
    let mut rng = common::rng(seed);
    (0..count)
        .map(|_| {
            let inputs = rng.gen_range(1..=3);
            let gates = rng.gen_range(0..=4);
            let outputs = rng.gen_range(1..=max_outputs);
            common::random_circuit(&mut rng, inputs, gates, outputs)
        })
        .collect()
}

#[test]
fn consistent_sets_are_preimages() {
    for c in corpus(41, 60, 3) {
        let art = circuit_to_dfa(&c).unwrap();
        let host = WinsetHost::new(&art.dfa).unwrap();
        let (k, m) = (c.inputs().len(), c.outputs().len());
        let used = used_inputs(&c);
        for mask in 0..1usize << m {
            let out = common::bits(m, mask);
            let image = host.image_word(&GameState::new([art.output_set(&out)]), &art.word());
            let consistent: Vec<StateSet> =
                image.iter().filter(|s| !art.is_excessive(s)).cloned().collect();
            let mut expected: Vec<StateSet> = (0..1usize << k)
                .map(|b| common::bits(k, b))
                .filter(|b| c.eval(b).unwrap() == out)
                .map(|b| art.input_set(&b, &used))
                .collect();
            expected.sort();
            expected.dedup();
            assert_eq!(consistent, expected, "{c}\nout={out:?}");
        }
    }
}

#[test]
fn reduction_is_acyclic_apart_from_sinks() {
    for c in corpus(42, 30, 3) {
        let art = circuit_to_dfa(&c).unwrap();
        let d = &art.dfa;
        // a cycle through a non-sink would make some word revisit a state
        let n = d.state_count();
        let is_sink = |q: usize| (0..2).all(|s| d.step(q, s) == q);
        let mut depth = vec![0usize; n];
        for _ in 0..n {
            for q in (0..n).filter(|&q| !is_sink(q)) {
                for s in 0..2 {
                    let t = d.step(q, s);
                    if !is_sink(t) {
                        depth[t] = depth[t].max(depth[q] + 1);
                    }
                }
            }
        }
        assert!(depth.iter().all(|&x| x < n), "{c}");
    }
}

#[test]
fn value_instances_match_evaluation() {
    let circuits = corpus(43, 60, 1);
    for c in &circuits {
        let k = c.inputs().len();
        for mask in 0..1usize << k {
            let a = common::bits(k, mask);
            let (dfa, w) = circuit_value_instance(c, &a).unwrap();
            assert_eq!(member(&dfa, &w).unwrap(), c.eval(&a).unwrap()[0], "{c} a={a:?}");
        }
    }
}

fn square_corpus(seed: u64, count: usize) -> Vec<Circuit> {
    let mut rng = common::rng(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            let gates = rng.gen_range(0..=4);
            common::random_circuit(&mut rng, k, gates, k)
        })
        .collect()
}

#[test]
fn absorbed_circuit_ors_in_the_chosen_input() {
    for c in square_corpus(44, 20) {
        let k = c.inputs().len();
        for i in 0..k {
            let d = absorb_into(&c, i).unwrap();
            for mask in 0..1usize << k {
                let x = common::bits(k, mask);
                let want: Vec<bool> = c.eval(&x).unwrap().iter().map(|&y| y || x[i]).collect();
                assert_eq!(d.eval(&x).unwrap(), want);
            }
        }
    }
}

#[test]
fn iterated_instances_match_iteration() {
    let mut rng = common::rng(45);
    for c in square_corpus(46, 15) {
        let k = c.inputs().len();
        let a = common::bits(k, rng.gen_range(0..1usize << k));
        let i = rng.gen_range(0..k);
        let inst = iterated_instance(&c, &a, i).unwrap();
        for t in 0..=4 {
            let direct = common::iterate(&inst.modified, &a, t).iter().all(|&y| y);
            assert_eq!(member(&inst.dfa, &inst.word(t)).unwrap(), direct, "{c} a={a:?} i={i} t={t}");
        }
    }
}

#[test]
fn iteration_from_all_false_tracks_the_original_circuit() {
    // from F^k, C'^t(F^k) = T^k iff C^s(F^k)_i = T for some s < t, or C^t(F^k) = T^k
    for c in square_corpus(47, 15) {
        let k = c.inputs().len();
        let zero = vec![false; k];
        for i in 0..k {
            let inst = iterated_instance(&c, &zero, i).unwrap();
            for t in 0..=4 {
                let hit = (0..t).any(|s| common::iterate(&c, &zero, s)[i]);
                let all = common::iterate(&c, &zero, t).iter().all(|&y| y);
                assert_eq!(member(&inst.dfa, &inst.word(t)).unwrap(), hit || all, "{c} i={i} t={t}");
            }
        }
    }
}
