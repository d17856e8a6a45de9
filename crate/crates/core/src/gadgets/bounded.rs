//! Bounded languages: the numeric upper bound on winning-set complexity and
//! a checker for the eventual periodicity of `A`-runs.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::automata::{Dfa, Turn};
use crate::error::{Error, Result};
use crate::winset::{game_states_equivalent, GameState, WinsetHost};

fn lcm_all(ks: &[u64]) -> u64 {
    ks.iter().fold(1, |acc, &k| acc.lcm(&k))
}

/// Largest pairwise lcm; a single cycle counts as its own length, no cycles
/// as 0.
fn max_pair_lcm(ks: &[u64]) -> u64 {
    match ks {
        [] => 0,
        [k] => *k,
        _ => {
            let mut best = 0;
            for (i, a) in ks.iter().enumerate() {
                for b in &ks[i + 1..] {
                    best = best.max(a.lcm(b));
                }
            }
            best
        }
    }
}

/// `Σ_{m=0}^{ℓ+p+1} (p · max_{x≠y} lcm(k_x,k_y) + 2ℓ + 2·lcm(k_1..k_p))^m`
/// for cycle lengths `k_1..k_p` and `ℓ` acyclic states.
pub fn bounded_upper_bound(cycle_lengths: &[u64], ell: u64) -> Result<BigUint> {
    if cycle_lengths.contains(&0) {
        return Err(Error::invalid("cycle lengths must be positive"));
    }
    let p = cycle_lengths.len() as u64;
    let base = BigUint::from(p) * max_pair_lcm(cycle_lengths)
        + BigUint::from(2 * ell)
        + BigUint::from(2u32) * lcm_all(cycle_lengths);
    let mut term = BigUint::one();
    let mut sum = BigUint::zero();
    for _ in 0..=ell + p + 1 {
        sum += &term;
        term *= &base;
    }
    Ok(sum)
}

/// Cycle structure of the reachable part of a DFA with disjoint cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleProfile {
    /// Cycle lengths, in order of their smallest state.
    pub cycle_lengths: Vec<u64>,
    /// Reachable states on no cycle.
    pub acyclic_states: u64,
}

impl CycleProfile {
    pub fn upper_bound(&self) -> BigUint {
        bounded_upper_bound(&self.cycle_lengths, self.acyclic_states).expect("lengths are positive")
    }
}

/// Finds the cycles of the reachable part, failing if two cycles share a
/// state (then the language is not bounded).
pub fn cycle_profile(dfa: &Dfa) -> Result<CycleProfile> {
    let reachable = dfa.reachable();
    let succ = |q: usize| -> Vec<usize> {
        let [a, b] = dfa.transitions()[q];
        if a == b {
            vec![a]
        } else {
            vec![a, b]
        }
    };
    let comp = strongly_connected(dfa.state_count(), &reachable.iter().collect::<Vec<_>>(), &succ);
    let mut members: Vec<Vec<usize>> = Vec::new();
    for q in reachable.iter() {
        let c = comp[q];
        if members.len() <= c {
            members.resize(c + 1, Vec::new());
        }
        members[c].push(q);
    }
    let mut cycles = Vec::new();
    let mut on_cycle = 0;
    for states in members.iter().filter(|m| !m.is_empty()) {
        let internal: usize = states
            .iter()
            .map(|&q| succ(q).into_iter().filter(|&t| comp[t] == comp[q]).count())
            .sum();
        if internal == 0 {
            continue;
        }
        if internal != states.len() {
            return Err(Error::invalid(format!(
                "states {states:?} lie on more than one cycle"
            )));
        }
        cycles.push((states[0], states.len() as u64));
        on_cycle += states.len();
    }
    cycles.sort_unstable();
    Ok(CycleProfile {
        cycle_lengths: cycles.into_iter().map(|(_, k)| k).collect(),
        acyclic_states: (reachable.len() - on_cycle) as u64,
    })
}

/// Iterative Tarjan; returns a component id per state (unvisited states get
/// `usize::MAX`).
fn strongly_connected(n: usize, roots: &[usize], succ: &dyn Fn(usize) -> Vec<usize>) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![NONE; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut count = 0;
    for &root in roots {
        if index[root] != NONE {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root), 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some((v, out, i)) = call.last_mut() {
            let v = *v;
            if let Some(&w) = out.get(*i) {
                *i += 1;
                if index[w] == NONE {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, succ(w), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some((parent, _, _)) = call.last() {
                low[*parent] = low[*parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    comp
}

/// Result of [`a_period_bound_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodCheck {
    pub k: usize,
    pub m: usize,
    pub k_bound: usize,
    pub m_bound: usize,
}

/// Finds the least `k`, then the least `m ≥ 1`, with
/// `δ_W(g, A^k) ∼ δ_W(g, A^{k+m})`, searching only inside the bounds
/// `k ≤ lcm(k_1..k_p) + 2n + max lcm(k_x, k_y)` and `m ≤ lcm(k_1..k_p)`.
/// Not finding one within the bounds is reported as an error.
pub fn a_period_bound_check(host: &Dfa, g: &GameState) -> Result<PeriodCheck> {
    let profile = cycle_profile(host)?;
    let ks = &profile.cycle_lengths;
    let l = lcm_all(ks) as usize;
    let k_bound = l + 2 * host.state_count() + max_pair_lcm(ks) as usize;
    let m_bound = l;
    let w = WinsetHost::new(host)?;
    let mut run = vec![w.normalize(g)];
    while run.len() <= k_bound + m_bound {
        let next = w.step(run.last().expect("nonempty"), Turn::A);
        run.push(next);
    }
    for k in 0..=k_bound {
        for m in 1..=m_bound {
            if run[k] == run[k + m] || game_states_equivalent(host, &run[k], &run[k + m]) {
                return Ok(PeriodCheck { k, m, k_bound, m_bound });
            }
        }
    }
    Err(Error::BoundViolated(format!(
        "no k <= {k_bound}, m <= {m_bound} with equivalent A-iterates of {g}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;
    use crate::gadgets::{chain_dfa, exact_ones_dfa};

    #[test]
    fn bound_values() {
        assert_eq!(bounded_upper_bound(&[1, 1], 0).unwrap(), BigUint::from(85u32));
        assert_eq!(bounded_upper_bound(&[2, 3], 1).unwrap(), BigUint::from(475_255u32));
        // single cycle: pairwise term is k_1
        assert_eq!(bounded_upper_bound(&[2], 0).unwrap(), BigUint::from(1u32 + 6 + 36));
        assert!(bounded_upper_bound(&[0, 1], 0).is_err());
    }

    #[test]
    fn bound_grows_with_ell() {
        for ell in 0..6 {
            assert!(
                bounded_upper_bound(&[2, 3, 4], ell).unwrap()
                    <= bounded_upper_bound(&[2, 3, 4], ell + 1).unwrap()
            );
        }
    }

    #[test]
    fn profiles() {
        let p = cycle_profile(&exact_ones_dfa(2)).unwrap();
        assert_eq!(p.cycle_lengths, vec![1, 1, 1, 1]);
        assert_eq!(p.acyclic_states, 0);
        // 0 -> 1 -> 2 -> 1, 2 -1-> 3 loop
        let d = Dfa::new(Alphabet::Binary, 0, vec![[1, 1], [2, 2], [1, 3], [3, 3]], []).unwrap();
        let p = cycle_profile(&d).unwrap();
        assert_eq!(p.cycle_lengths, vec![2, 1]);
        assert_eq!(p.acyclic_states, 1);
        let parity = Dfa::new(Alphabet::Binary, 0, vec![[0, 1], [1, 0]], [1]).unwrap();
        assert!(cycle_profile(&parity).is_err());
    }

    #[test]
    fn periods_of_self_loop_hosts() {
        let c = a_period_bound_check(&exact_ones_dfa(2), &GameState::singleton(0)).unwrap();
        assert_eq!(c.m, 1);
        let c = a_period_bound_check(&chain_dfa(4, [2]).unwrap(), &GameState::singleton(0)).unwrap();
        assert_eq!(c.m, 1);
        let c = a_period_bound_check(&exact_ones_dfa(2), &GameState::rejecting()).unwrap();
        assert_eq!((c.k, c.m), (0, 1));
    }
}
