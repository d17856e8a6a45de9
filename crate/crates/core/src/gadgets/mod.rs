//! Generators for the extremal automaton families and hardness reductions,
//! with the driver words that exercise them.

mod bounded;
mod chain;
mod circuit;
mod factory;
mod reduction;

use std::collections::BTreeMap;

use crate::automata::{Alphabet, Dfa};
use crate::error::{Error, Result};

pub use bounded::{a_period_bound_check, bounded_upper_bound, cycle_profile, CycleProfile, PeriodCheck};
pub use chain::{chain_dfa, exact_ones_dfa, exact_ones_winset_member, exact_ones_wsize};
pub use circuit::{Circuit, GateKind, NodeId};
pub use factory::{
    gen_state, gen_subset, lower_bound_dfa, lower_bound_gadget, state_word, subset_word,
    test_word, testing,
};
pub use reduction::{
    absorb_into, circuit_to_dfa, circuit_value_instance, iterated_instance, IteratedInstance,
    ReductionArtifact,
};

/// An automaton built from a figure, with its named states.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub dfa: Dfa,
    labels: BTreeMap<String, usize>,
}

impl Gadget {
    /// Index of a named state such as `b1`, `o2`, `r'` or `q3`.
    pub fn state(&self, name: &str) -> Option<usize> {
        self.labels.get(name).copied()
    }

    /// Like [`Gadget::state`], for names known to exist.
    ///
    /// # Panics
    ///
    /// If there is no state called `name`.
    pub fn at(&self, name: &str) -> usize {
        self.state(name)
            .unwrap_or_else(|| panic!("gadget has no state named {name}"))
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }
}

/// Whether Alice wins on `A^{2i} B^{2j} A^{2k}` for the Dyck language.
pub fn dyck_closed_form(i: usize, j: usize, k: usize) -> bool {
    i >= j && k >= 2 * j
}

/// Incremental construction of an automaton graph in which every state has
/// two outgoing edges. The first edge added gets label 0, the second 1.
#[derive(Default)]
pub(crate) struct GraphBuilder {
    edges: Vec<Vec<usize>>,
    finals: Vec<bool>,
    labels: BTreeMap<String, usize>,
}

impl GraphBuilder {
    pub fn state(&mut self, name: impl Into<String>) -> usize {
        let q = self.anon();
        let name = name.into();
        let old = self.labels.insert(name.clone(), q);
        debug_assert!(old.is_none(), "duplicate state name {name}");
        q
    }

    pub fn anon(&mut self) -> usize {
        self.edges.push(Vec::with_capacity(2));
        self.finals.push(false);
        self.edges.len() - 1
    }

    pub fn alias(&mut self, name: impl Into<String>, q: usize) {
        self.labels.insert(name.into(), q);
    }

    pub fn set_final(&mut self, q: usize) {
        self.finals[q] = true;
    }

    pub fn edge(&mut self, from: usize, to: usize) {
        debug_assert!(self.edges[from].len() < 2, "state {from} already has two edges");
        self.edges[from].push(to);
    }

    /// Both edges of `from` go to `to`.
    pub fn double(&mut self, from: usize, to: usize) {
        self.edge(from, to);
        self.edge(from, to);
    }

    pub fn sink(&mut self, q: usize) {
        self.double(q, q);
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// States with fewer than two edges.
    pub fn dangling(&self) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.edges[q].len() < 2).collect()
    }

    /// Sends every missing edge to one fresh nonaccepting sink.
    pub fn close(&mut self, sink_name: &str) {
        let open = self.dangling();
        if open.is_empty() {
            return;
        }
        let sink = self.state(sink_name);
        self.sink(sink);
        for q in open {
            while self.edges[q].len() < 2 {
                self.edge(q, sink);
            }
        }
    }

    pub fn build(self, initial: usize) -> Result<Gadget> {
        let delta = self
            .edges
            .iter()
            .enumerate()
            .map(|(q, e)| match e[..] {
                [a, b] => Ok([a, b]),
                _ => Err(Error::invalid(format!("state {q} has {} edges", e.len()))),
            })
            .collect::<Result<Vec<_>>>()?;
        let finals = (0..self.finals.len()).filter(|&q| self.finals[q]);
        Ok(Gadget {
            dfa: Dfa::new(Alphabet::Binary, initial, delta, finals)?,
            labels: self.labels,
        })
    }
}
