//! Brute-force ground truth straight from the inductive definition of the
//! winning set. Slow on purpose: everything else is checked against this.

use std::fmt;
use std::sync::Arc;

use crate::automata::{Alphabet, Dfa, Symbol, Turn, TurnWord};
use crate::error::{Error, Result};

/// Largest length [`winning_slice`] accepts.
pub const MAX_SLICE_LEN: usize = 24;

type Member = dyn Fn(&[Symbol]) -> bool + Send + Sync;

/// A target set `T ⊆ {0,1}^n` given by a membership test.
#[derive(Clone)]
pub struct TargetPredicate {
    len: usize,
    member: Arc<Member>,
}

impl TargetPredicate {
    pub fn new(len: usize, member: impl Fn(&[Symbol]) -> bool + Send + Sync + 'static) -> Self {
        TargetPredicate {
            len,
            member: Arc::new(member),
        }
    }

    /// Words of length `len` accepted by a DFA over `{0,1}`.
    pub fn from_dfa(dfa: &Dfa, len: usize) -> Result<Self> {
        if dfa.alphabet() != Alphabet::Binary {
            return Err(Error::AlphabetMismatch {
                expected: Alphabet::Binary.name(),
                found: dfa.alphabet().name(),
            });
        }
        let dfa = dfa.clone();
        Ok(Self::new(len, move |v| dfa.accepts(v)))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn member(&self, v: &[Symbol]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        (self.member)(v)
    }

    pub fn everything(len: usize) -> Self {
        Self::new(len, |_| true)
    }

    pub fn nothing(len: usize) -> Self {
        Self::new(len, |_| false)
    }

    /// Odd number of ones.
    pub fn parity(len: usize) -> Self {
        Self::new(len, |v| v.iter().filter(|&&s| s == 1).count() % 2 == 1)
    }

    /// Words containing `pattern` as a factor.
    pub fn contains(pattern: &[Symbol], len: usize) -> Self {
        let pattern = pattern.to_vec();
        Self::new(len, move |v| {
            pattern.is_empty() || v.windows(pattern.len()).any(|w| w == pattern)
        })
    }

    /// Exactly `k` ones.
    pub fn exact_ones(k: usize, len: usize) -> Self {
        Self::new(len, move |v| v.iter().filter(|&&s| s == 1).count() == k)
    }

    /// Named builtin: `dyck`, `parity`, `contains-011` or `exact-ones:<k>`.
    pub fn builtin(name: &str, len: usize) -> Result<Self> {
        match name {
            "dyck" => dyck_predicate(len),
            "parity" => Ok(Self::parity(len)),
            "contains-011" => Ok(Self::contains(&[0, 1, 1], len)),
            _ => {
                let k = name
                    .strip_prefix("exact-ones:")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| Error::invalid(format!("unknown predicate {name:?}")))?;
                Ok(Self::exact_ones(k, len))
            }
        }
    }

    /// Number of members of `T`.
    pub fn count(&self) -> usize {
        crate::automata::binary_words(self.len)
            .filter(|v| self.member(v))
            .count()
    }
}

impl fmt::Debug for TargetPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetPredicate")
            .field("len", &self.len)
            .finish_non_exhaustive()
    }
}

/// Balanced words with `0` opening and `1` closing.
pub fn dyck_predicate(len: usize) -> Result<TargetPredicate> {
    if len % 2 == 1 {
        return Err(Error::invalid(format!(
            "no balanced word has odd length {len}"
        )));
    }
    Ok(TargetPredicate::new(len, |v| {
        let mut depth = 0i64;
        for &s in v {
            depth += if s == 0 { 1 } else { -1 };
            if depth < 0 {
                return false;
            }
        }
        depth == 0
    }))
}

/// Whether Alice wins on turn order `w` for target `t`.
pub fn alice_wins(t: &TargetPredicate, w: &TurnWord) -> Result<bool> {
    if w.len() != t.len() {
        return Err(Error::LengthMismatch {
            expected: t.len(),
            found: w.len(),
        });
    }
    // Each prefix is visited at most once, so no memo table is needed.
    fn go(t: &TargetPredicate, turns: &[Turn], prefix: &mut Vec<Symbol>) -> bool {
        let Some((&c, rest)) = turns.split_first() else {
            return t.member(prefix);
        };
        let mut branch = |s: Symbol| {
            prefix.push(s);
            let r = go(t, rest, prefix);
            prefix.pop();
            r
        };
        match c {
            Turn::A => branch(0) || branch(1),
            Turn::B => branch(0) && branch(1),
        }
    }
    Ok(go(t, w.turns(), &mut Vec::with_capacity(w.len())))
}

/// Indicator of the whole slice `W(T)`: entry `i` belongs to the turn word
/// whose letters, read as bits with `A = 0`, spell `i` from the most
/// significant bit down.
pub fn winning_slice_bits(t: &TargetPredicate) -> Result<Vec<bool>> {
    let n = t.len();
    if n > MAX_SLICE_LEN {
        return Err(Error::SliceTooLarge(n));
    }
    let mut table: Vec<bool> = crate::automata::binary_words(n)
        .map(|v| t.member(&v))
        .collect();
    // Fold one level at a time: the block for a prefix v holds the winning
    // turn suffixes after v, and splits into the blocks for v0 and v1.
    let mut half = 1;
    while half < table.len() {
        for block in table.chunks_mut(2 * half) {
            let (left, right) = block.split_at_mut(half);
            for (a, b) in left.iter_mut().zip(right.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x || y;
                *b = x && y;
            }
        }
        half *= 2;
    }
    Ok(table)
}

/// All length-`n` turn words on which Alice wins, in lexicographic order.
pub fn winning_slice(t: &TargetPredicate) -> Result<Vec<TurnWord>> {
    let bits = winning_slice_bits(t)?;
    Ok(TurnWord::all_of_length(t.len())
        .zip(bits)
        .filter_map(|(w, b)| b.then_some(w))
        .collect())
}
