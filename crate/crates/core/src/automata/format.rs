//! Text, JSON and DOT formats.
//!
//! The text format is line oriented; `#` starts a comment and blank lines are
//! ignored:
//!
//! ```text
//! dfa 2 01
//! initial 0
//! finals 1
//! 0 0 0
//! 0 1 1
//! 1 0 1
//! 1 1 0
//! ```
//!
//! NFAs use the header `nfa <n> <alphabet>`, allow several initial states
//! and any number of transition lines.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, Dfa, Nfa, Symbol};
use crate::bitset::StateSet;
use crate::error::{Error, Result};

/// Meaningful lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn parse_index(line: usize, field: &str, what: &str, n: usize) -> Result<usize> {
    let q: usize = field
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found {field:?}")))?;
    if q >= n {
        return Err(Error::parse(
            line,
            format!("{what} {q} out of range (state count {n})"),
        ));
    }
    Ok(q)
}

fn parse_symbol(line: usize, field: &str, alphabet: Alphabet) -> Result<Symbol> {
    let mut chars = field.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => alphabet
            .symbol(c)
            .map_err(|_| Error::parse(line, format!("symbol {c:?} not in alphabet {alphabet}"))),
        _ => Err(Error::parse(line, format!("expected a symbol, found {field:?}"))),
    }
}

struct Header<'a> {
    line: usize,
    kind: &'a str,
    states: usize,
    alphabet: Alphabet,
    initial: Vec<usize>,
    finals: Vec<usize>,
}

fn parse_header<'a, I>(lines: &mut I, kinds: &[&str]) -> Result<Header<'a>>
where
    I: Iterator<Item = (usize, Vec<&'a str>)>,
{
    let (line, fields) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty document"))?;
    let kind = fields[0];
    if !kinds.contains(&kind) || fields.len() != 3 {
        return Err(Error::parse(
            line,
            format!("expected header `{} <state_count> <01|AB>`", kinds.join("|")),
        ));
    }
    let states: usize = fields[1]
        .parse()
        .map_err(|_| Error::parse(line, format!("bad state count {:?}", fields[1])))?;
    if states == 0 {
        return Err(Error::parse(line, "state count must be positive"));
    }
    let alphabet: Alphabet = fields[2]
        .parse()
        .map_err(|e: Error| Error::parse(line, e.to_string()))?;

    let mut list = |keyword: &str| -> Result<Vec<usize>> {
        let (l, fields) = lines
            .next()
            .ok_or_else(|| Error::parse(line, format!("missing `{keyword}` line")))?;
        if fields[0] != keyword {
            return Err(Error::parse(l, format!("expected `{keyword}` line")));
        }
        fields[1..]
            .iter()
            .map(|f| parse_index(l, f, "state", states))
            .collect()
    };
    let initial = list("initial")?;
    let finals = list("finals")?;
    Ok(Header {
        line,
        kind,
        states,
        alphabet,
        initial,
        finals,
    })
}

fn parse_dfa_body<'a, I>(header: Header<'a>, lines: I) -> Result<Dfa>
where
    I: Iterator<Item = (usize, Vec<&'a str>)>,
{
    let n = header.states;
    if header.initial.len() != 1 {
        return Err(Error::parse(header.line, "a DFA needs exactly one initial state"));
    }
    let mut delta = vec![[None, None]; n];
    for (line, fields) in lines {
        if fields.len() != 3 {
            return Err(Error::parse(line, "expected `<state> <symbol> <target>`"));
        }
        let q = parse_index(line, fields[0], "state", n)?;
        let s = parse_symbol(line, fields[1], header.alphabet)?;
        let t = parse_index(line, fields[2], "target", n)?;
        let slot = &mut delta[q][s as usize];
        if slot.is_some() {
            return Err(Error::parse(
                line,
                format!("duplicate transition for state {q} on {}", fields[1]),
            ));
        }
        *slot = Some(t);
    }
    let mut complete = Vec::with_capacity(n);
    for (q, row) in delta.into_iter().enumerate() {
        let mut out = [0; 2];
        for s in 0..2 {
            out[s] = row[s].ok_or_else(|| {
                Error::parse(
                    header.line,
                    format!(
                        "missing transition for state {q} on {}",
                        header.alphabet.letter(s as Symbol)
                    ),
                )
            })?;
        }
        complete.push(out);
    }
    Dfa::new(header.alphabet, header.initial[0], complete, header.finals)
}

/// Parses the DFA text format.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let mut lines = content_lines(text);
    let header = parse_header(&mut lines, &["dfa"])?;
    parse_dfa_body(header, lines)
}

/// Parses the NFA text format; a DFA document is accepted as well.
pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let mut lines = content_lines(text);
    let header = parse_header(&mut lines, &["nfa", "dfa"])?;
    if header.kind == "dfa" {
        return Ok(parse_dfa_body(header, lines)?.to_nfa());
    }
    let n = header.states;
    let mut nfa = Nfa::new(
        header.alphabet,
        n,
        header.initial.iter().copied().collect(),
        header.finals.iter().copied().collect(),
    )?;
    for (line, fields) in lines {
        if fields.len() != 3 {
            return Err(Error::parse(line, "expected `<state> <symbol> <target>`"));
        }
        let q = parse_index(line, fields[0], "state", n)?;
        let s = parse_symbol(line, fields[1], header.alphabet)?;
        let t = parse_index(line, fields[2], "target", n)?;
        nfa.add_transition(q, s, t)?;
    }
    Ok(nfa)
}

fn write_list(out: &mut String, keyword: &str, set: &StateSet) {
    out.push_str(keyword);
    for q in set.iter() {
        let _ = write!(out, " {q}");
    }
    out.push('\n');
}

impl Dfa {
    pub fn parse(text: &str) -> Result<Dfa> {
        parse_dfa(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dfa {} {}\ninitial {}\n", self.state_count(), self.alphabet(), self.initial());
        write_list(&mut out, "finals", &self.finals());
        for (q, row) in self.transitions().iter().enumerate() {
            for s in 0..2u8 {
                let _ = writeln!(out, "{q} {} {}", self.alphabet().letter(s), row[s as usize]);
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n");
        out.push_str("  start [shape=point];\n");
        for q in 0..self.state_count() {
            let shape = if self.is_final(q) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {q} [shape={shape}];");
        }
        let _ = writeln!(out, "  start -> {};", self.initial());
        for (q, row) in self.transitions().iter().enumerate() {
            for s in 0..2u8 {
                let _ = writeln!(
                    out,
                    "  {q} -> {} [label=\"{}\"];",
                    row[s as usize],
                    self.alphabet().letter(s)
                );
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DfaJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Dfa> {
        let doc: DfaJson =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        doc.try_into()
    }
}

impl FromStr for Dfa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_dfa(s)
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Nfa {
    pub fn parse(text: &str) -> Result<Nfa> {
        parse_nfa(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("nfa {} {}\n", self.state_count(), self.alphabet());
        write_list(&mut out, "initial", self.initial());
        write_list(&mut out, "finals", self.finals());
        for (q, s, t) in self.transitions() {
            let _ = writeln!(out, "{q} {} {t}", self.alphabet().letter(s));
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n");
        for q in 0..self.state_count() {
            let shape = if self.finals().contains(q) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {q} [shape={shape}];");
        }
        for (i, q) in self.initial().iter().enumerate() {
            let _ = writeln!(out, "  start{i} [shape=point];\n  start{i} -> {q};");
        }
        for (q, s, t) in self.transitions() {
            let _ = writeln!(out, "  {q} -> {t} [label=\"{}\"];", self.alphabet().letter(s));
        }
        out.push_str("}\n");
        out
    }
}

impl FromStr for Nfa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_nfa(s)
    }
}

/// JSON mirror of the DFA text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaJson {
    pub state_count: usize,
    pub alphabet: Alphabet,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub transitions: Vec<TransitionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionJson {
    pub state: usize,
    pub symbol: char,
    pub target: usize,
}

impl From<&Dfa> for DfaJson {
    fn from(d: &Dfa) -> Self {
        DfaJson {
            state_count: d.state_count(),
            alphabet: d.alphabet(),
            initial: d.initial(),
            finals: d.finals().iter().collect(),
            transitions: d
                .transitions()
                .iter()
                .enumerate()
                .flat_map(|(q, row)| {
                    (0..2u8).map(move |s| TransitionJson {
                        state: q,
                        symbol: d.alphabet().letter(s),
                        target: row[s as usize],
                    })
                })
                .collect(),
        }
    }
}

impl TryFrom<DfaJson> for Dfa {
    type Error = Error;

    fn try_from(doc: DfaJson) -> Result<Dfa> {
        let n = doc.state_count;
        let mut delta = vec![[None, None]; n];
        for t in &doc.transitions {
            let s = doc.alphabet.symbol(t.symbol)?;
            if t.state >= n {
                return Err(Error::invalid(format!("state {} out of range", t.state)));
            }
            if delta[t.state][s as usize].replace(t.target).is_some() {
                return Err(Error::invalid(format!(
                    "duplicate transition for state {} on {}",
                    t.state, t.symbol
                )));
            }
        }
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(q, [a, b])| match (a, b) {
                (Some(a), Some(b)) => Ok([a, b]),
                _ => Err(Error::invalid(format!("missing transition for state {q}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Dfa::new(doc.alphabet, doc.initial, delta, doc.finals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PARITY: &str = "# odd number of ones\ndfa 2 01\ninitial 0\nfinals 1\n\n0 0 0\n0 1 1\n1 0 1  # flip\n1 1 0\n";

    #[test]
    fn parse_parity() {
        let d = parse_dfa(PARITY).unwrap();
        assert_eq!(d.state_count(), 2);
        assert_eq!(d.finals(), StateSet::singleton(1));
        assert!(d.accepts(&[0, 1, 1, 1]));
    }

    #[test]
    fn round_trip() {
        let d = parse_dfa(PARITY).unwrap();
        let text = d.to_text();
        assert_eq!(parse_dfa(&text).unwrap(), d);
        assert_eq!(parse_dfa(&text).unwrap().to_text(), text);
        assert_eq!(Dfa::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn trivial_accept_all() {
        let d = parse_dfa("dfa 1 AB\ninitial 0\nfinals 0\n0 A 0\n0 B 0\n").unwrap();
        assert_eq!(d.finals(), StateSet::singleton(0));
        assert_eq!(d.alphabet(), Alphabet::Turns);
    }

    #[test]
    fn empty_finals_line() {
        let d = parse_dfa("dfa 1 01\ninitial 0\nfinals\n0 0 0\n0 1 0\n").unwrap();
        assert!(d.finals().is_empty());
        assert!(d.to_text().contains("finals\n"));
    }

    #[test]
    fn missing_transition_is_named() {
        let err = parse_dfa("dfa 2 01\ninitial 0\nfinals 1\n0 0 0\n0 1 1\n1 0 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::parse(1, "missing transition for state 1 on 1")
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let dup = "dfa 1 01\ninitial 0\nfinals\n0 0 0\n0 0 0\n0 1 0\n";
        assert!(matches!(parse_dfa(dup), Err(Error::Parse { line: 5, .. })));
        let range = "dfa 1 01\ninitial 0\nfinals\n0 0 3\n0 1 0\n";
        assert!(matches!(parse_dfa(range), Err(Error::Parse { line: 4, .. })));
        let sym = "dfa 1 01\ninitial 0\nfinals\n0 A 0\n0 1 0\n";
        assert!(matches!(parse_dfa(sym), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_dfa("dfa two 01"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_dfa(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn nfa_round_trip() {
        let text = "nfa 2 AB\ninitial 0\nfinals 1\n0 A 0\n0 A 1\n0 B 0\n";
        let n = parse_nfa(text).unwrap();
        assert_eq!(parse_nfa(&n.to_text()).unwrap(), n);
        assert!(n.accepts(&[1, 0]));
        let from_dfa = parse_nfa(PARITY).unwrap();
        assert!(from_dfa.accepts(&[1]));
    }

    #[test]
    fn dot_marks_finals() {
        let dot = parse_dfa(PARITY).unwrap().to_dot();
        assert!(dot.contains("1 [shape=doublecircle]"));
        assert!(dot.contains("0 -> 1 [label=\"1\"]"));
    }
}
