//! Winning sets of binary regular languages.
//!
//! Two players build a binary word one letter at a time; a turn order over
//! `{A, B}` says who picks each letter. The winning set `W(L)` of a language
//! `L` holds the turn orders on which Alice can force the finished word into
//! `L`. This crate builds automata for `W(L)`, decides membership and
//! intersection questions, generates the known extremal families, and
//! enumerates small DFAs to measure state complexity.

pub mod automata;
pub mod bitset;
pub mod decision;
pub mod enumerate;
pub mod error;
pub mod gadgets;
pub mod oracle;
pub mod winset;

pub use automata::{Alphabet, Dfa, Nfa, Symbol, Turn, TurnWord};
pub use bitset::StateSet;
pub use error::{Error, Result};
pub use winset::{GameState, WinsetHost};
