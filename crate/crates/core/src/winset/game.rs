use std::fmt;
use std::str::FromStr;

use crate::bitset::StateSet;
use crate::error::{Error, Result};

/// A set of state-sets of a host DFA: a state of the determinized
/// winning-set automaton.
///
/// Members are kept sorted and deduplicated. The empty collection is the
/// rejecting sink; `{∅}` means Alice has already won.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameState {
    sets: Vec<StateSet>,
}

impl GameState {
    pub fn new(sets: impl IntoIterator<Item = StateSet>) -> Self {
        let mut sets: Vec<StateSet> = sets.into_iter().collect();
        sets.sort_unstable();
        sets.dedup();
        GameState { sets }
    }

    /// The rejecting sink: no member sets at all.
    pub fn rejecting() -> Self {
        GameState { sets: Vec::new() }
    }

    /// `{∅}`: every continuation is accepted.
    pub fn won() -> Self {
        GameState {
            sets: vec![StateSet::new()],
        }
    }

    /// `{{q}}`.
    pub fn singleton(q: usize) -> Self {
        GameState {
            sets: vec![StateSet::singleton(q)],
        }
    }

    /// Builds a game state from plain index lists.
    pub fn from_lists<I, J>(lists: I) -> Self
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        GameState::new(lists.into_iter().map(|l| l.into_iter().collect()))
    }

    pub(crate) fn from_sorted(sets: Vec<StateSet>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        GameState { sets }
    }

    pub fn sets(&self) -> &[StateSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_won(&self) -> bool {
        self.sets.len() == 1 && self.sets[0].is_empty()
    }

    pub fn contains(&self, set: &StateSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }

    /// Whether no member is a strict subset of another.
    pub fn is_antichain(&self) -> bool {
        self.sets.iter().enumerate().all(|(i, a)| {
            self.sets
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(b))
        })
    }

    /// Largest state index mentioned, if any.
    pub fn max_state(&self) -> Option<usize> {
        self.sets.iter().filter_map(|s| s.last()).max()
    }

    pub fn union(&self, other: &GameState) -> GameState {
        GameState::new(self.sets.iter().chain(other.sets.iter()).cloned())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, StateSet> {
        self.sets.iter()
    }
}

/// `g ≤ h`: every member of `g` contains some member of `h`.
pub fn leq(g: &GameState, h: &GameState) -> bool {
    g.sets
        .iter()
        .all(|s| h.sets.iter().any(|r| r.is_subset(s)))
}

/// Keeps only the inclusion-minimal members.
pub(crate) fn minimal_sets(mut sets: Vec<StateSet>) -> Vec<StateSet> {
    sets.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<StateSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

impl<'a> IntoIterator for &'a GameState {
    type Item = &'a StateSet;
    type IntoIter = std::slice::Iter<'a, StateSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

impl FromIterator<StateSet> for GameState {
    fn from_iter<I: IntoIterator<Item = StateSet>>(iter: I) -> Self {
        GameState::new(iter)
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GameState {
    type Err = Error;

    /// Parses `{{0,1},{2}}`, `{{}}` or `{}`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::invalid(format!("game state {s:?} is not braced")))?;
        let mut sets = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('{')
                .ok_or_else(|| Error::invalid(format!("expected '{{' in game state {s:?}")))?;
            let end = body
                .find('}')
                .ok_or_else(|| Error::invalid(format!("unclosed set in game state {s:?}")))?;
            let mut set = StateSet::new();
            for item in body[..end].split(',').filter(|x| !x.is_empty()) {
                let q: usize = item
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad state {item:?} in game state")))?;
                set.insert(q);
            }
            sets.push(set);
            rest = &body[end + 1..];
            rest = rest.strip_prefix(',').unwrap_or(rest);
        }
        Ok(GameState::new(sets))
    }
}
