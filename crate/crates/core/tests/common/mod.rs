#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use winset::enumerate::{candidate, candidate_count};
use winset::gadgets::{Circuit, GateKind, NodeId};
use winset::{Alphabet, Dfa, TurnWord};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every host with `n` states up to per-state label swaps, initial state 0.
pub fn hosts(n: usize) -> impl Iterator<Item = Dfa> {
    (0..candidate_count(n)).map(move |code| candidate(n, code))
}

/// Every host with at most `n` states.
pub fn hosts_up_to(n: usize) -> impl Iterator<Item = Dfa> {
    (1..=n).flat_map(hosts)
}

pub fn random_host(rng: &mut impl Rng, n: usize) -> Dfa {
    let delta = (0..n).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n)]).collect();
    let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    Dfa::new(Alphabet::Binary, rng.gen_range(0..n), delta, finals).unwrap()
}

/// All turn words of length at most `n`.
pub fn words_up_to(n: usize) -> impl Iterator<Item = TurnWord> {
    (0..=n).flat_map(TurnWord::all_of_length)
}

/// Bit `i` of `mask`, most significant first, as a vector of length `k`.
pub fn bits(k: usize, mask: usize) -> Vec<bool> {
    (0..k).map(|i| mask >> (k - 1 - i) & 1 == 1).collect()
}

/// Antichains in the powerset of an `n`-set, counted by brute force over
/// all families of subsets.
pub fn dedekind(n: usize) -> usize {
    let subsets = 1usize << n;
    assert!(subsets <= 16, "brute force only up to n = 4");
    (0..1u64 << subsets)
        .filter(|&family| {
            let members: Vec<usize> = (0..subsets).filter(|&s| family >> s & 1 == 1).collect();
            members
                .iter()
                .all(|&a| members.iter().all(|&b| a == b || a & b != a))
        })
        .count()
}

/// A random circuit: gates read uniformly from earlier non-output nodes,
/// outputs prefer gates when there are any.
pub fn random_circuit(rng: &mut impl Rng, inputs: usize, gates: usize, outputs: usize) -> Circuit {
    let mut c = Circuit::new();
    let mut nodes: Vec<NodeId> = (0..inputs).map(|_| c.input()).collect();
    let mut gate_ids = Vec::new();
    for _ in 0..gates {
        let kind = *[GateKind::And, GateKind::Or, GateKind::Not].choose(rng).unwrap();
        let g = match kind {
            GateKind::Not => {
                let a = *nodes.choose(rng).unwrap();
                c.not(a)
            }
            _ => {
                let a = *nodes.choose(rng).unwrap();
                let b = *nodes.choose(rng).unwrap();
                if kind == GateKind::And {
                    c.and(a, b)
                } else {
                    c.or(a, b)
                }
            }
        };
        nodes.push(g);
        gate_ids.push(g);
    }
    for _ in 0..outputs {
        let pool = if gate_ids.is_empty() || rng.gen_bool(0.2) { &nodes } else { &gate_ids };
        let a = *pool.choose(rng).unwrap();
        c.output(a);
    }
    c
}

/// `C^t(a)` by direct evaluation.
pub fn iterate(c: &Circuit, a: &[bool], t: usize) -> Vec<bool> {
    (0..t).fold(a.to_vec(), |x, _| c.eval(&x).unwrap())
}
