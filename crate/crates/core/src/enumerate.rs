//! Exhaustive search for the largest minimal winning-set DFA over all
//! `n`-state binary DFAs.
//!
//! Candidates have initial state 0 and every final set. Since `W(L)` does
//! not change when the two labels leaving a state are swapped, each state
//! only picks an unordered pair of targets. Candidates with unreachable
//! states are skipped; their languages are recognized by smaller DFAs.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::automata::{Alphabet, Dfa};
use crate::error::{Error, Result};
use crate::winset::winset_dfa;

/// Largest `n` accepted by [`max_winset_complexity`].
pub const MAX_N: usize = 5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    /// Game states as bitmasks over the subsets of the host states.
    #[default]
    Fast,
    /// [`winset_dfa`] on every candidate.
    Generic,
}

#[derive(Clone, Debug, Default)]
pub struct EnumerateConfig {
    /// Wall-clock limit; `None` runs to completion.
    pub budget: Option<Duration>,
    /// Worker threads; 0 uses rayon's default.
    pub jobs: usize,
    pub engine: Engine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub n: usize,
    pub max_size: usize,
    /// The first candidate, in encoding order, that reaches `max_size`.
    pub witness: Dfa,
    /// Whether every candidate was examined.
    pub exhausted: bool,
    /// Candidates examined, including skipped ones.
    pub examined: u64,
}

/// The unordered target pairs `(a, b)` with `a <= b`, in lexicographic order.
pub fn target_pairs(n: usize) -> Vec<[usize; 2]> {
    (0..n).flat_map(|a| (a..n).map(move |b| [a, b])).collect()
}

/// Number of candidates: `(n(n+1)/2)^n · 2^n`.
pub fn candidate_count(n: usize) -> u64 {
    let pairs = (n * (n + 1) / 2) as u64;
    pairs.pow(n as u32) << n
}

/// Decodes candidate `code`: the high digits (base `n(n+1)/2`, state 0
/// most significant) pick target pairs, the low `n` bits the final states.
pub fn candidate(n: usize, code: u64) -> Dfa {
    let pairs = target_pairs(n);
    let (delta, finals) = decode(n, &pairs, code);
    Dfa::from_parts(Alphabet::Binary, 0, delta, finals)
}

fn decode(n: usize, pairs: &[[usize; 2]], code: u64) -> (Vec<[usize; 2]>, Vec<bool>) {
    let finals = (0..n).map(|q| code >> q & 1 == 1).collect();
    let mut rest = code >> n;
    let base = pairs.len() as u64;
    let mut delta = vec![[0; 2]; n];
    for q in (0..n).rev() {
        delta[q] = pairs[(rest % base) as usize];
        rest /= base;
    }
    (delta, finals)
}

/// State count of the minimal DFA for `W(L(dfa))`.
pub fn winset_size(dfa: &Dfa) -> Result<usize> {
    Ok(winset_dfa(dfa)?.state_count())
}

/// [`winset_size`] for hosts with at most 5 states, tracking normalized game
/// states as `u32` masks over the 32 subsets.
pub fn fast_winset_size(dfa: &Dfa) -> Result<usize> {
    let n = dfa.state_count();
    if n > MAX_N {
        return Err(Error::invalid(format!("fast engine handles at most {MAX_N} states, got {n}")));
    }
    if dfa.alphabet() != Alphabet::Binary {
        return Err(Error::AlphabetMismatch {
            expected: Alphabet::Binary.name(),
            found: dfa.alphabet().name(),
        });
    }
    Ok(FastHost::new(dfa).winset_size())
}

/// Per-host tables for the bitmask engine. A subset of host states is a
/// `u8` index; a game state is a `u32` with bit `S` set iff `S` is a member.
struct FastHost {
    initial: u32,
    accepting: u32,
    /// `A`-images of each single subset, reduced but not yet minimal.
    a_image: [u32; 32],
    /// `B`-image of each single subset, reduced.
    b_image: [u32; 32],
    /// Proper subsets of each subset.
    below: [u32; 32],
    subsets: usize,
}

impl FastHost {
    fn new(dfa: &Dfa) -> FastHost {
        let n = dfa.state_count();
        let subsets = 1usize << n;
        let mask = |set: &crate::StateSet| set.iter().fold(0usize, |m, q| m | 1 << q);
        let coacc = mask(&dfa.coaccessible());
        let sinks = mask(&dfa.accepting_sinks());
        let finals = mask(&dfa.finals());
        let delta = dfa.transitions();

        // sink stripping, then dropping sets with a dead state
        let reduce = |s: usize| -> u32 {
            let t = s & !sinks;
            if t & !coacc != 0 {
                0
            } else {
                1 << t
            }
        };

        let mut a_image = [0; 32];
        let mut b_image = [0; 32];
        let mut below = [0; 32];
        let mut accepting = 0;
        for s in 0..subsets {
            let members: Vec<usize> = (0..n).filter(|&q| s >> q & 1 == 1).collect();
            let mut images = 0u32;
            for choice in 0..1usize << members.len() {
                let t = members
                    .iter()
                    .enumerate()
                    .fold(0, |t, (i, &q)| t | 1 << delta[q][choice >> i & 1]);
                images |= reduce(t);
            }
            a_image[s] = images;
            let both = members.iter().fold(0, |t, &q| t | 1 << delta[q][0] | 1 << delta[q][1]);
            b_image[s] = reduce(both);
            for t in 0..subsets {
                if t != s && t & s == t {
                    below[s] |= 1 << t;
                }
            }
            if s & !finals == 0 {
                accepting |= 1 << s;
            }
        }
        FastHost {
            initial: reduce(1 << dfa.initial()),
            accepting,
            a_image,
            b_image,
            below,
            subsets,
        }
    }

    fn step(&self, g: u32, table: &[u32; 32]) -> u32 {
        let mut out = 0;
        let mut rest = g;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= table[s];
        }
        minimal(out, &self.below)
    }

    fn winset_size(&self) -> usize {
        debug_assert!(self.subsets <= 32);
        let mut index: HashMap<u32, u32> = HashMap::from([(self.initial, 0)]);
        let mut states = vec![self.initial];
        let mut delta: Vec<[usize; 2]> = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let g = states[i];
            let mut row = [0; 2];
            for (c, table) in [&self.a_image, &self.b_image].into_iter().enumerate() {
                let h = self.step(g, table);
                let next = states.len() as u32;
                let j = *index.entry(h).or_insert_with(|| {
                    states.push(h);
                    next
                });
                row[c] = j as usize;
            }
            delta.push(row);
            i += 1;
        }
        let finals = states.iter().map(|&g| g & self.accepting != 0).collect();
        Dfa::from_parts(Alphabet::Turns, 0, delta, finals)
            .minimize()
            .state_count()
    }
}

/// Members of `g` with no proper subset in `g`.
fn minimal(g: u32, below: &[u32; 32]) -> u32 {
    let mut out = g;
    let mut rest = g;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if g & below[s] != 0 {
            out &= !(1 << s);
        }
    }
    out
}

fn all_reachable(delta: &[[usize; 2]]) -> bool {
    let mut seen = 1u32;
    let mut stack = vec![0];
    while let Some(q) = stack.pop() {
        for t in delta[q] {
            if seen >> t & 1 == 0 {
                seen |= 1 << t;
                stack.push(t);
            }
        }
    }
    seen.count_ones() as usize == delta.len()
}

/// Largest minimal winning-set DFA over all `n`-state binary DFAs, `1 <= n <= 5`.
pub fn max_winset_complexity(n: usize, config: &EnumerateConfig) -> Result<Enumeration> {
    max_winset_complexity_with_progress(n, config, &|_, _| {})
}

/// Like [`max_winset_complexity`], calling `progress(done, total)` with
/// candidate counts from the worker threads now and then.
pub fn max_winset_complexity_with_progress(
    n: usize,
    config: &EnumerateConfig,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> Result<Enumeration> {
    if n == 0 || n > MAX_N {
        return Err(Error::invalid(format!("n must be in 1..={MAX_N}, got {n}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker threads: {e}")))?;
    let pairs = target_pairs(n);
    let total = candidate_count(n);
    let groups = total >> n;
    let step = (total / 20).max(1);
    let start = Instant::now();
    let stopped = AtomicBool::new(false);
    let done = AtomicU64::new(0);

    let evaluate = |code: u64, delta: &[[usize; 2]], finals: &[bool]| -> Result<usize> {
        let dfa = Dfa::from_parts(Alphabet::Binary, 0, delta.to_vec(), finals.to_vec());
        match config.engine {
            Engine::Fast => fast_winset_size(&dfa),
            Engine::Generic => winset_size(&dfa),
        }
        .map_err(|e| Error::invalid(format!("candidate {code}: {e}")))
    };

    // best = (size, code) with the smallest code among the largest sizes
    let better = |a: Option<(usize, u64)>, b: Option<(usize, u64)>| match (a, b) {
        (Some(x), Some(y)) => Some(if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    };

    let best = pool.install(|| {
        (0..groups)
            .into_par_iter()
            .map(|group| -> Result<Option<(usize, u64)>> {
                if stopped.load(Ordering::Relaxed) {
                    return Ok(None);
                }
                if config.budget.is_some_and(|b| start.elapsed() > b) {
                    stopped.store(true, Ordering::Relaxed);
                    return Ok(None);
                }
                let (delta, _) = decode(n, &pairs, group << n);
                let mut best = None;
                if all_reachable(&delta) {
                    for f in 0..1u64 << n {
                        let code = group << n | f;
                        let finals: Vec<bool> = (0..n).map(|q| f >> q & 1 == 1).collect();
                        let size = evaluate(code, &delta, &finals)?;
                        best = better(best, Some((size, code)));
                    }
                }
                let d = done.fetch_add(1 << n, Ordering::Relaxed) + (1 << n);
                if (d - (1 << n)) / step != d / step {
                    progress(d, total);
                }
                Ok(best)
            })
            .try_reduce(|| None, |a, b| Ok(better(a, b)))
    })?;

    let (max_size, code) = best.ok_or_else(|| {
        Error::invalid("budget ran out before any candidate was examined".to_string())
    })?;
    let examined = done.load(Ordering::Relaxed);
    Ok(Enumeration {
        n,
        max_size,
        witness: candidate(n, code),
        exhausted: examined == total,
        examined,
    })
}
