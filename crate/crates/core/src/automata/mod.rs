//! Binary automata: representations and the classical algorithms the rest of
//! the crate builds on.

mod dfa;
mod format;
mod minimize;
mod nfa;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dfa::Dfa;
pub use format::{parse_dfa, parse_nfa, DfaJson, TransitionJson};
pub use nfa::Nfa;

/// Symbol index, always `0` or `1`.
pub type Symbol = u8;

/// The two-letter alphabets used here: target languages live over `01`,
/// turn orders over `AB`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    #[serde(rename = "01")]
    Binary,
    #[serde(rename = "AB")]
    Turns,
}

impl Alphabet {
    pub fn letters(self) -> [char; 2] {
        match self {
            Alphabet::Binary => ['0', '1'],
            Alphabet::Turns => ['A', 'B'],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Binary => "01",
            Alphabet::Turns => "AB",
        }
    }

    pub fn letter(self, sym: Symbol) -> char {
        self.letters()[sym as usize]
    }

    pub fn symbol(self, c: char) -> Result<Symbol> {
        match self.letters().iter().position(|&l| l == c) {
            Some(i) => Ok(i as Symbol),
            None => Err(Error::BadSymbol(c)),
        }
    }

    /// Parses a word; `λ`, `ε` and `-` denote the empty word.
    pub fn parse_word(self, text: &str) -> Result<Vec<Symbol>> {
        let text = text.trim();
        if matches!(text, "λ" | "ε" | "-") {
            return Ok(Vec::new());
        }
        text.chars().map(|c| self.symbol(c)).collect()
    }

    pub fn format_word(self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "λ".to_string();
        }
        word.iter().map(|&s| self.letter(s)).collect()
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "01" => Ok(Alphabet::Binary),
            "AB" => Ok(Alphabet::Turns),
            other => Err(Error::invalid(format!(
                "unknown alphabet {other:?} (expected 01 or AB)"
            ))),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Who picks the next letter: Alice (`A`) or Bob (`B`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Turn {
    A,
    B,
}

impl Turn {
    pub const BOTH: [Turn; 2] = [Turn::A, Turn::B];

    pub fn symbol(self) -> Symbol {
        self as Symbol
    }

    pub fn from_symbol(sym: Symbol) -> Turn {
        if sym == 0 {
            Turn::A
        } else {
            Turn::B
        }
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Turn::A => "A",
            Turn::B => "B",
        })
    }
}

/// A turn order: a word over `{A, B}`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TurnWord(Vec<Turn>);

impl TurnWord {
    pub fn new(turns: Vec<Turn>) -> Self {
        TurnWord(turns)
    }

    pub fn empty() -> Self {
        TurnWord(Vec::new())
    }

    pub fn turns(&self) -> &[Turn] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.0.iter().map(|t| t.symbol()).collect()
    }

    pub fn from_symbols(symbols: &[Symbol]) -> Self {
        TurnWord(symbols.iter().map(|&s| Turn::from_symbol(s)).collect())
    }

    pub fn count(&self, turn: Turn) -> usize {
        self.0.iter().filter(|&&t| t == turn).count()
    }

    pub fn reversed(&self) -> Self {
        TurnWord(self.0.iter().rev().copied().collect())
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: usize) -> Self {
        TurnWord(self.0.repeat(times))
    }

    /// `turn^times`.
    pub fn power(turn: Turn, times: usize) -> Self {
        TurnWord(vec![turn; times])
    }

    pub fn concat(&self, other: &TurnWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TurnWord(v)
    }

    pub fn push(&mut self, turn: Turn) {
        self.0.push(turn);
    }

    /// All words of length `n` in lexicographic order (`A < B`).
    pub fn all_of_length(n: usize) -> impl Iterator<Item = TurnWord> {
        assert!(n < usize::BITS as usize);
        (0..1usize << n).map(move |bits| {
            TurnWord(
                (0..n)
                    .map(|i| {
                        if bits >> (n - 1 - i) & 1 == 1 {
                            Turn::B
                        } else {
                            Turn::A
                        }
                    })
                    .collect(),
            )
        })
    }
}

impl FromIterator<Turn> for TurnWord {
    fn from_iter<I: IntoIterator<Item = Turn>>(iter: I) -> Self {
        TurnWord(iter.into_iter().collect())
    }
}

impl FromStr for TurnWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(TurnWord::from_symbols(&Alphabet::Turns.parse_word(s)?))
    }
}

impl fmt::Display for TurnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("λ");
        }
        for t in &self.0 {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TurnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TurnWord({self})")
    }
}

/// All words over a binary alphabet of length `n`, in lexicographic order.
pub fn binary_words(n: usize) -> impl Iterator<Item = Vec<Symbol>> {
    assert!(n < usize::BITS as usize);
    (0..1usize << n).map(move |bits| (0..n).map(|i| (bits >> (n - 1 - i) & 1) as Symbol).collect())
}
