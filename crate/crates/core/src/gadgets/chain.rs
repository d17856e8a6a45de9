use crate::automata::{Alphabet, Dfa, Turn, TurnWord};
use crate::error::{Error, Result};

/// The `n`-state chain: `0` loops, `1` advances, and `n-1` is a
/// nonaccepting trap.
pub fn chain_dfa(n: usize, finals: impl IntoIterator<Item = usize>) -> Result<Dfa> {
    if n == 0 {
        return Err(Error::invalid("a chain needs at least one state"));
    }
    let finals: Vec<usize> = finals.into_iter().collect();
    if let Some(&bad) = finals.iter().find(|&&f| f >= n - 1) {
        return Err(Error::invalid(format!(
            "final state {bad} not allowed in a chain of {n} states (the last one is a trap)"
        )));
    }
    let delta = (0..n).map(|i| [i, (i + 1).min(n - 1)]).collect();
    Dfa::new(Alphabet::Binary, 0, delta, finals)
}

/// Minimal DFA for words with exactly `n` ones: states `0..=n` count ones,
/// `n + 1` is the trap.
pub fn exact_ones_dfa(n: usize) -> Dfa {
    chain_dfa(n + 2, [n]).expect("valid chain")
}

/// Closed-form size of the minimal DFA for the winning set of
/// [`exact_ones_dfa`]: `n³/6 + n² + 11n/6 + 2`.
pub fn exact_ones_wsize(n: u64) -> u64 {
    (n * n * n + 6 * n * n + 11 * n + 12) / 6
}

/// Membership in the winning set of the exact-ones language, by its
/// characterization: at least `n` A's, at most `n` B's, and no suffix with
/// more B's than A's.
pub fn exact_ones_winset_member(n: usize, w: &TurnWord) -> bool {
    if w.count(Turn::A) < n || w.count(Turn::B) > n {
        return false;
    }
    let mut balance = 0i64;
    for &t in w.turns().iter().rev() {
        balance += if t == Turn::A { 1 } else { -1 };
        if balance < 0 {
            return false;
        }
    }
    true
}
