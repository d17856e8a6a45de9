//! Circuit simulation by winning sets.
//!
//! Every cell (OR, NOT or a one-input identity) becomes a small gadget that
//! takes three turns `AAB`, and every cell that feeds others is followed by a
//! split gadget copying its value. Values are dual-rail: a wire is a pair of
//! states `(T, F)`. Reading `(AAB)^p` from a consistent set of output states
//! yields one consistent set of input states per preimage, plus sets that
//! contain both states of some pair.

use std::collections::HashMap;

use crate::automata::{Dfa, Turn, TurnWord};
use crate::bitset::StateSet;
use crate::error::{Error, Result};
use crate::gadgets::circuit::{Circuit, GateKind, NodeId};
use crate::gadgets::GraphBuilder;

/// The automaton simulating a circuit, with its dual-rail input and output
/// state pairs `(T, F)`.
#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    pub dfa: Dfa,
    /// Number of `AAB` rounds from the output states down to the inputs.
    pub p: usize,
    pub input_states: Vec<(usize, usize)>,
    pub output_states: Vec<(usize, usize)>,
}

fn pick((t, f): (usize, usize), b: bool) -> usize {
    if b {
        t
    } else {
        f
    }
}

fn rounds(times: usize) -> TurnWord {
    TurnWord::new(vec![Turn::A, Turn::A, Turn::B]).repeat(times)
}

impl ReductionArtifact {
    /// `(AAB)^p`.
    pub fn word(&self) -> TurnWord {
        rounds(self.p)
    }

    /// `{p_i^{a_i}}` for an output vector `a`.
    pub fn output_set(&self, a: &[bool]) -> StateSet {
        let mut s = StateSet::new();
        for (&pair, &b) in self.output_states.iter().zip(a) {
            s.insert(pick(pair, b));
        }
        s
    }

    /// `{q_i^{b_i}}` over the inputs `i` in `used`, for an input vector `b`.
    pub fn input_set(&self, b: &[bool], used: &[usize]) -> StateSet {
        let mut s = StateSet::new();
        for &i in used {
            s.insert(pick(self.input_states[i], b[i]));
        }
        s
    }

    /// Whether `s` contains both states of some input pair.
    pub fn is_excessive(&self, s: &StateSet) -> bool {
        self.input_states
            .iter()
            .any(|&(t, f)| s.contains(t) && s.contains(f))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Src {
    Input(usize),
    Cell(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CellKind {
    Or,
    Not,
    Id,
}

#[derive(Clone, Debug)]
struct Cell {
    kind: CellKind,
    level: usize,
    srcs: Vec<Src>,
}

/// Cells arranged so that every wire joins adjacent levels; level 0 holds
/// the inputs wired directly into a gate.
struct Layout {
    cells: Vec<Cell>,
    pads: HashMap<(Src, usize), usize>,
    /// Output `j` is the entry of this cell.
    output_cells: Vec<usize>,
    depth: usize,
}

impl Layout {
    fn level(&self, s: Src) -> usize {
        match s {
            Src::Input(_) => 0,
            Src::Cell(c) => self.cells[c].level,
        }
    }

    fn push(&mut self, kind: CellKind, level: usize, srcs: Vec<Src>) -> usize {
        self.cells.push(Cell { kind, level, srcs });
        self.cells.len() - 1
    }

    /// A source for a consumer at `level`, padded with identity cells.
    fn wire_into(&mut self, s: Src, level: usize) -> Src {
        let l = self.level(s);
        debug_assert!(l < level);
        if l + 1 == level {
            return s;
        }
        if let Some(&c) = self.pads.get(&(s, level - 1)) {
            return Src::Cell(c);
        }
        let below = self.wire_into(s, level - 1);
        let c = self.push(CellKind::Id, level - 1, vec![below]);
        self.pads.insert((s, level - 1), c);
        Src::Cell(c)
    }

    fn gate(&mut self, kind: CellKind, srcs: &[Src]) -> Src {
        let level = 1 + srcs.iter().map(|&s| self.level(s)).max().expect("gates have inputs");
        let wired = srcs.iter().map(|&s| self.wire_into(s, level)).collect();
        Src::Cell(self.push(kind, level, wired))
    }

    fn new(c: &Circuit) -> Result<Layout> {
        if c.outputs().is_empty() {
            return Err(Error::Circuit("circuit has no outputs".into()));
        }
        let fanout = c.fanouts();
        let is_gate = |id: NodeId| matches!(c.kind(id), GateKind::And | GateKind::Or | GateKind::Not);
        let mut consumer = vec![None; c.len()];
        for id in c.node_ids() {
            for p in c.preds(id) {
                consumer[p.index()] = Some(id);
            }
        }
        // An input feeds its gate directly only when that gate sits at level 1.
        let direct = |x: NodeId| -> bool {
            fanout[x.index()] == 1
                && consumer[x.index()].is_some_and(|g| {
                    is_gate(g)
                        && c.preds(g).iter().all(|&p| {
                            c.kind(p) == GateKind::Input && fanout[p.index()] == 1
                        })
                })
        };

        let mut lay = Layout {
            cells: Vec::new(),
            pads: HashMap::new(),
            output_cells: Vec::new(),
            depth: 0,
        };
        let mut handle: Vec<Option<Src>> = vec![None; c.len()];
        let mut input_index = 0;
        for id in c.node_ids() {
            let h = |j: usize| handle[c.preds(id)[j].index()].expect("topological order");
            let src = match c.kind(id) {
                GateKind::Input => {
                    let i = input_index;
                    input_index += 1;
                    if direct(id) {
                        Src::Input(i)
                    } else {
                        Src::Cell(lay.push(CellKind::Id, 1, vec![Src::Input(i)]))
                    }
                }
                GateKind::Or => {
                    let (a, b) = (h(0), h(1));
                    lay.gate(CellKind::Or, &[a, b])
                }
                GateKind::Not => {
                    let a = h(0);
                    lay.gate(CellKind::Not, &[a])
                }
                GateKind::And => {
                    let (a, b) = (h(0), h(1));
                    let na = lay.gate(CellKind::Not, &[a]);
                    let nb = lay.gate(CellKind::Not, &[b]);
                    let or = lay.gate(CellKind::Or, &[na, nb]);
                    lay.gate(CellKind::Not, &[or])
                }
                GateKind::Output => continue,
            };
            handle[id.index()] = Some(src);
        }

        let outs: Vec<(Src, bool)> = c
            .outputs()
            .iter()
            .map(|&y| {
                let pred = c.preds(y)[0];
                (handle[pred.index()].expect("defined"), fanout[pred.index()] == 1)
            })
            .collect();
        let depth = outs
            .iter()
            .map(|&(s, alone)| lay.level(s) + usize::from(!alone))
            .max()
            .expect("at least one output");
        for (s, alone) in outs {
            let cell = match s {
                Src::Cell(cell) if alone && lay.level(s) == depth => cell,
                _ => {
                    let w = lay.wire_into(s, depth);
                    lay.push(CellKind::Id, depth, vec![w])
                }
            };
            lay.output_cells.push(cell);
        }
        lay.depth = depth;
        Ok(lay)
    }

    /// Cells from which some output is reached.
    fn live(&self) -> Vec<bool> {
        let mut live = vec![false; self.cells.len()];
        let mut stack = self.output_cells.clone();
        while let Some(c) = stack.pop() {
            if std::mem::replace(&mut live[c], true) {
                continue;
            }
            for s in &self.cells[c].srcs {
                if let Src::Cell(d) = *s {
                    stack.push(d);
                }
            }
        }
        live
    }
}

struct Assembly {
    graph: GraphBuilder,
    p: usize,
    inputs: Vec<(usize, usize)>,
    outputs: Vec<(usize, usize)>,
}

/// Lays out the gadgets. With `merge`, input `i` shares its state pair with
/// output `i`; otherwise the input states have no outgoing edges yet.
fn assemble(c: &Circuit, merge: bool) -> Result<Assembly> {
    let lay = Layout::new(c)?;
    let mut g = GraphBuilder::default();
    let pair = |g: &mut GraphBuilder, name: String| -> (usize, usize) {
        (g.state(format!("{name}T")), g.state(format!("{name}F")))
    };
    let outputs: Vec<_> = (0..c.outputs().len()).map(|j| pair(&mut g, format!("p{j}"))).collect();
    let inputs: Vec<_> = (0..c.inputs().len())
        .map(|i| if merge { outputs[i] } else { pair(&mut g, format!("q{i}")) })
        .collect();

    let live = lay.live();
    let mut entry: Vec<Option<(usize, usize)>> = vec![None; lay.cells.len()];
    for (j, &cell) in lay.output_cells.iter().enumerate() {
        entry[cell] = Some(outputs[j]);
    }
    for cell in 0..lay.cells.len() {
        if live[cell] && entry[cell].is_none() {
            entry[cell] = Some((g.anon(), g.anon()));
        }
    }

    // split gadgets: (a1, a2) per cell that feeds others
    let mut split: Vec<Option<(usize, usize)>> = vec![None; lay.cells.len()];
    for cell in 0..lay.cells.len() {
        let feeds = lay.cells.iter().enumerate().any(|(d, other)| {
            live[d] && other.srcs.contains(&Src::Cell(cell))
        });
        if !feeds {
            continue;
        }
        let (t, f) = entry[cell].expect("live");
        let (a1, a2, b1, b2) = (g.anon(), g.anon(), g.anon(), g.anon());
        g.double(a1, b1);
        g.double(b1, t);
        g.double(a2, b2);
        g.double(b2, f);
        split[cell] = Some((a1, a2));
    }

    for (cell, spec) in lay.cells.iter().enumerate() {
        if !live[cell] {
            continue;
        }
        let (tt, tf) = entry[cell].expect("live");
        let exits: Vec<(usize, usize)> = spec
            .srcs
            .iter()
            .map(|&s| match s {
                Src::Input(i) => inputs[i],
                Src::Cell(d) => {
                    let (a1, a2) = split[d].expect("feeds a live cell");
                    let (xt, xf) = (g.anon(), g.anon());
                    g.double(xt, a1);
                    g.double(xf, a2);
                    (xt, xf)
                }
            })
            .collect();
        match spec.kind {
            CellKind::Or => {
                let [(s0t, s0f), (s1t, s1f)] = exits[..] else {
                    unreachable!("OR cells have two inputs")
                };
                let a: Vec<usize> = (0..3).map(|_| g.anon()).collect();
                let b: Vec<usize> = (0..4).map(|_| g.anon()).collect();
                g.edge(tt, a[0]);
                g.edge(tt, a[1]);
                g.double(tf, a[2]);
                g.edge(a[0], b[0]);
                g.edge(a[0], b[1]);
                g.double(a[1], b[2]);
                g.double(a[2], b[3]);
                for (bi, x, y) in [(0, s0t, s1t), (1, s0t, s1f), (2, s0f, s1t), (3, s0f, s1f)] {
                    g.edge(b[bi], x);
                    g.edge(b[bi], y);
                }
            }
            CellKind::Not | CellKind::Id => {
                let (st, sf) = exits[0];
                let (to_t, to_f) = if spec.kind == CellKind::Not { (sf, st) } else { (st, sf) };
                for (from, to) in [(tt, to_t), (tf, to_f)] {
                    let (a, b) = (g.anon(), g.anon());
                    g.double(from, a);
                    g.double(a, b);
                    g.double(b, to);
                }
            }
        }
    }
    Ok(Assembly {
        graph: g,
        p: 2 * lay.depth - 1,
        inputs,
        outputs,
    })
}

/// Builds the acyclic automaton simulating `c`. It starts in `p_0^T`, has no
/// accepting states, and the input states lead to a rejecting sink.
pub fn circuit_to_dfa(c: &Circuit) -> Result<ReductionArtifact> {
    let Assembly {
        mut graph,
        p,
        inputs,
        outputs,
    } = assemble(c, false)?;
    graph.close("dead");
    let gadget = graph.build(outputs[0].0)?;
    Ok(ReductionArtifact {
        dfa: gadget.dfa,
        p,
        input_states: inputs,
        output_states: outputs,
    })
}

fn bits_to_inputs(c: &Circuit, a: &[bool]) -> Result<()> {
    if a.len() != c.inputs().len() {
        return Err(Error::LengthMismatch {
            expected: c.inputs().len(),
            found: a.len(),
        });
    }
    Ok(())
}

/// For a single-output circuit: the simulating automaton started in the
/// output-true state with the input states matching `a` accepting, and the
/// word `(AAB)^p`. The word is in the winning set iff `C(a) = T`.
pub fn circuit_value_instance(c: &Circuit, a: &[bool]) -> Result<(Dfa, TurnWord)> {
    if c.outputs().len() != 1 {
        return Err(Error::Circuit(format!(
            "expected one output, found {}",
            c.outputs().len()
        )));
    }
    bits_to_inputs(c, a)?;
    let art = circuit_to_dfa(c)?;
    let finals = art.input_states.iter().zip(a).map(|(&pair, &b)| pick(pair, b));
    let dfa = art.dfa.with_finals(finals)?;
    Ok((dfa, art.word()))
}

/// Output of [`iterated_instance`].
#[derive(Clone, Debug)]
pub struct IteratedInstance {
    pub dfa: Dfa,
    pub base: TurnWord,
    pub period: TurnWord,
    /// The circuit `C'` with every output `j` replaced by `y_j ∨ x_i`.
    pub modified: Circuit,
}

impl IteratedInstance {
    /// `base · period^t`.
    pub fn word(&self, t: usize) -> TurnWord {
        self.base.concat(&self.period.repeat(t))
    }
}

/// `C'` with `y'_j = y_j ∨ x_i`: once bit `i` is T every later vector is all
/// T.
pub fn absorb_into(c: &Circuit, i: usize) -> Result<Circuit> {
    let k = c.inputs().len();
    if c.outputs().len() != k {
        return Err(Error::Circuit(format!(
            "{k} inputs but {} outputs",
            c.outputs().len()
        )));
    }
    if i >= k {
        return Err(Error::invalid(format!("index {i} is outside 0..{k}")));
    }
    let mut out = Circuit::new();
    let mut map: HashMap<NodeId, NodeId> = HashMap::new();
    let xi = c.inputs()[i];
    let mut pending = Vec::new();
    for id in c.node_ids() {
        if c.kind(id) == GateKind::Output {
            pending.push(id);
            continue;
        }
        let preds: Vec<NodeId> = c.preds(id).iter().map(|p| map[p]).collect();
        map.insert(id, out.add(c.name(id), c.kind(id), &preds)?);
    }
    for y in pending {
        let pred = map[&c.preds(y)[0]];
        let g = out.or(pred, map[&xi]);
        out.add(c.name(y), GateKind::Output, &[g])?;
    }
    Ok(out)
}

/// The iterated-circuit instance: from a fresh initial state,
/// `base = (AAB)^{⌈log2 k⌉}` spreads to `{p_0^T, ..., p_{k-1}^T}`, and each
/// `period = (AAB)^p` applies `C'` backwards, with input pair `j` merged
/// into output pair `j`. Accepting states are `{p_j^{a_j}}`.
///
/// `base · period^t` is in the winning set iff `(C')^t(a) = T^k`; starting
/// from `a = F^k` this holds iff `C^s(a)_i = T` for some `s < t` or
/// `C^t(a) = T^k`.
pub fn iterated_instance(c: &Circuit, a: &[bool], i: usize) -> Result<IteratedInstance> {
    bits_to_inputs(c, a)?;
    let modified = absorb_into(c, i)?;
    let Assembly {
        mut graph,
        p,
        outputs,
        ..
    } = assemble(&modified, true)?;
    let k = outputs.len();
    let height = usize::BITS as usize - (k - 1).leading_zeros() as usize;
    let leaves: Vec<usize> = outputs.iter().map(|&(t, _)| t).collect();
    let root = fan_in(&mut graph, &leaves, height);
    debug_assert!(graph.dangling().is_empty());
    let finals = outputs.iter().zip(a).map(|(&pair, &b)| pick(pair, b)).collect::<Vec<_>>();
    for &q in &finals {
        graph.set_final(q);
    }
    let gadget = graph.build(root)?;
    Ok(IteratedInstance {
        dfa: gadget.dfa,
        base: rounds(height),
        period: rounds(p),
        modified,
    })
}

/// A tree of `height` `AAB` rounds whose `B` steps fork, ending in `leaves`.
fn fan_in(g: &mut GraphBuilder, leaves: &[usize], height: usize) -> usize {
    if height == 0 {
        debug_assert_eq!(leaves.len(), 1);
        return leaves[0];
    }
    let half = (1usize << (height - 1)).min(leaves.len());
    let (x, y, z) = (g.anon(), g.anon(), g.anon());
    g.double(x, y);
    g.double(y, z);
    let left = fan_in(g, &leaves[..half], height - 1);
    if half == leaves.len() {
        g.double(z, left);
    } else {
        let right = fan_in(g, &leaves[half..], height - 1);
        g.edge(z, left);
        g.edge(z, right);
    }
    x
}
