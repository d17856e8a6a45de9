//! Boolean circuits with AND, OR and NOT gates.
//!
//! Text format, one node per line, names defined before use:
//!
//! ```text
//! input x0
//! input x1
//! gate g1 OR x0 x1
//! not g2 g1
//! output y0 g2
//! ```
//!
//! `gate <name> AND|OR <a> <b>` and `gate <name> NOT <a>` are accepted; `#`
//! starts a comment.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Input,
    And,
    Or,
    Not,
    Output,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Input => 0,
            GateKind::Not | GateKind::Output => 1,
            GateKind::And | GateKind::Or => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    name: String,
    kind: GateKind,
    preds: Vec<NodeId>,
}

/// A circuit whose nodes are stored in a topological order: every node's
/// predecessors come before it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    nodes: Vec<Node>,
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
    names: HashMap<String, NodeId>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node. Predecessors must already exist and must not be outputs.
    pub fn add(&mut self, name: impl Into<String>, kind: GateKind, preds: &[NodeId]) -> Result<NodeId> {
        let name = name.into();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(Error::Circuit(format!("bad node name {name:?}")));
        }
        if self.names.contains_key(&name) {
            return Err(Error::Circuit(format!("node {name} defined twice")));
        }
        if preds.len() != kind.arity() {
            return Err(Error::Circuit(format!(
                "{kind:?} node {name} needs {} inputs, got {}",
                kind.arity(),
                preds.len()
            )));
        }
        for p in preds {
            match self.nodes.get(p.0) {
                None => return Err(Error::Circuit(format!("node {name} uses an unknown node"))),
                Some(n) if n.kind == GateKind::Output => {
                    return Err(Error::Circuit(format!(
                        "node {name} reads from output {}",
                        n.name
                    )))
                }
                Some(_) => {}
            }
        }
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node {
            name: name.clone(),
            kind,
            preds: preds.to_vec(),
        });
        self.names.insert(name, id);
        match kind {
            GateKind::Input => self.inputs.push(id),
            GateKind::Output => self.outputs.push(id),
            _ => {}
        }
        Ok(id)
    }

    fn add_auto(&mut self, prefix: &str, kind: GateKind, preds: &[NodeId]) -> NodeId {
        let mut i = self.nodes.len();
        while self.names.contains_key(&format!("{prefix}{i}")) {
            i += 1;
        }
        self.add(format!("{prefix}{i}"), kind, preds)
            .expect("predecessors belong to this circuit")
    }

    pub fn input(&mut self) -> NodeId {
        let i = self.inputs.len();
        if self.names.contains_key(&format!("x{i}")) {
            return self.add_auto("x", GateKind::Input, &[]);
        }
        self.add(format!("x{i}"), GateKind::Input, &[]).expect("fresh name")
    }

    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.add_auto("g", GateKind::And, &[a, b])
    }

    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.add_auto("g", GateKind::Or, &[a, b])
    }

    pub fn not(&mut self, a: NodeId) -> NodeId {
        self.add_auto("g", GateKind::Not, &[a])
    }

    pub fn output(&mut self, a: NodeId) -> NodeId {
        let j = self.outputs.len();
        if self.names.contains_key(&format!("y{j}")) {
            return self.add_auto("y", GateKind::Output, &[a]);
        }
        self.add(format!("y{j}"), GateKind::Output, &[a])
            .expect("predecessor belongs to this circuit")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_ids(&self) -> impl DoubleEndedIterator<Item = NodeId> + ExactSizeIterator {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn inputs(&self) -> &[NodeId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    /// Number of AND, OR and NOT gates.
    pub fn gate_count(&self) -> usize {
        self.nodes.len() - self.inputs.len() - self.outputs.len()
    }

    pub fn kind(&self, id: NodeId) -> GateKind {
        self.nodes[id.0].kind
    }

    pub fn preds(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id.0].preds
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.nodes[id.0].name
    }

    pub fn lookup(&self, name: &str) -> Option<NodeId> {
        self.names.get(name).copied()
    }

    /// Number of edges leaving each node.
    pub fn fanouts(&self) -> Vec<usize> {
        let mut out = vec![0; self.nodes.len()];
        for n in &self.nodes {
            for p in &n.preds {
                out[p.0] += 1;
            }
        }
        out
    }

    /// Evaluates every node on the given input vector (`true` is T).
    pub fn eval_all(&self, input: &[bool]) -> Result<Vec<bool>> {
        if input.len() != self.inputs.len() {
            return Err(Error::LengthMismatch {
                expected: self.inputs.len(),
                found: input.len(),
            });
        }
        let mut val = vec![false; self.nodes.len()];
        let mut next_input = input.iter();
        for (i, n) in self.nodes.iter().enumerate() {
            let p = |j: usize| val[n.preds[j].0];
            val[i] = match n.kind {
                GateKind::Input => *next_input.next().expect("counted"),
                GateKind::And => p(0) && p(1),
                GateKind::Or => p(0) || p(1),
                GateKind::Not => !p(0),
                GateKind::Output => p(0),
            };
        }
        Ok(val)
    }

    /// The output vector for the given input vector.
    pub fn eval(&self, input: &[bool]) -> Result<Vec<bool>> {
        let val = self.eval_all(input)?;
        Ok(self.outputs.iter().map(|o| val[o.0]).collect())
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.nodes {
            let arg = |j: usize| &self.nodes[n.preds[j].0].name;
            match n.kind {
                GateKind::Input => writeln!(f, "input {}", n.name)?,
                GateKind::And => writeln!(f, "gate {} AND {} {}", n.name, arg(0), arg(1))?,
                GateKind::Or => writeln!(f, "gate {} OR {} {}", n.name, arg(0), arg(1))?,
                GateKind::Not => writeln!(f, "not {} {}", n.name, arg(0))?,
                GateKind::Output => writeln!(f, "output {} {}", n.name, arg(0))?,
            }
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut c = Circuit::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let (name, kind, args) = match words[..] {
                ["input", name] => (name, GateKind::Input, &[][..]),
                ["not", name, _] => (name, GateKind::Not, &words[2..3]),
                ["output", name, _] => (name, GateKind::Output, &words[2..3]),
                ["gate", name, op, ref rest @ ..] => {
                    let kind = match op.to_ascii_uppercase().as_str() {
                        "AND" => GateKind::And,
                        "OR" => GateKind::Or,
                        "NOT" => GateKind::Not,
                        _ => return Err(Error::parse(line_no, format!("unknown gate type {op}"))),
                    };
                    (name, kind, rest)
                }
                _ => return Err(Error::parse(line_no, format!("cannot parse {line:?}"))),
            };
            let preds = args
                .iter()
                .map(|a| {
                    c.lookup(a)
                        .ok_or_else(|| Error::parse(line_no, format!("node {a} is not defined yet")))
                })
                .collect::<Result<Vec<_>>>()?;
            c.add(name, kind, &preds).map_err(|e| match e {
                Error::Circuit(m) => Error::parse(line_no, m),
                other => other,
            })?;
        }
        Ok(c)
    }
}

impl Circuit {
    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor() -> Circuit {
        let mut c = Circuit::new();
        let x0 = c.input();
        let x1 = c.input();
        let o = c.or(x0, x1);
        let a = c.and(x0, x1);
        let na = c.not(a);
        let g = c.and(o, na);
        c.output(g);
        c
    }

    #[test]
    fn evaluates_xor() {
        let c = xor();
        for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
            assert_eq!(c.eval(&[a, b]).unwrap(), vec![a ^ b]);
        }
        assert!(c.eval(&[true]).is_err());
        assert_eq!(c.gate_count(), 4);
    }

    #[test]
    fn text_round_trip() {
        let c = xor();
        let back: Circuit = c.to_text().parse().unwrap();
        assert_eq!(back, c);
        let parsed = Circuit::parse("input x0\ninput x1\ngate g1 OR x0 x1 # or\nnot g2 g1\noutput y0 g2\n").unwrap();
        assert_eq!(parsed.eval(&[false, false]).unwrap(), vec![true]);
        assert_eq!(parsed.eval(&[true, false]).unwrap(), vec![false]);
        let g = Circuit::parse("input a\ngate n NOT a\noutput y n").unwrap();
        assert_eq!(g.kind(g.lookup("n").unwrap()), GateKind::Not);
    }

    #[test]
    fn rejects_malformed() {
        for (text, line) in [
            ("input x\noutput y z", 2),
            ("input x\ninput x", 2),
            ("input x\ngate g XOR x x", 2),
            ("input x\ngate g OR x", 2),
            ("input x\noutput y x\nnot g y", 3),
            ("wire x", 1),
        ] {
            match Circuit::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn fanouts_count_edges() {
        let c = xor();
        let f = c.fanouts();
        assert_eq!(f[c.inputs()[0].index()], 2);
        assert_eq!(f[c.outputs()[0].index()], 0);
    }
}
