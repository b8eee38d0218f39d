//! Exact maximum clique search on bitset graphs: branch and bound with
//! greedy colouring bounds (MCQ/BBMC style).

use std::io::{self, Write};

use serde::Serialize;

use crate::bitset::BitSet;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    pub size: usize,
    /// Vertex indices, ascending.
    pub witness: Vec<usize>,
    /// False when the node budget ran out before the search finished.
    pub exact: bool,
    pub nodes: u64,
}

/// Branch-and-bound state shared across several root sub-searches.
pub struct CliqueSearch<'a> {
    adj: &'a [BitSet],
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    target: Option<usize>,
    exhausted: bool,
}

impl<'a> CliqueSearch<'a> {
    pub fn new(adj: &'a [BitSet], budget: u64) -> Self {
        CliqueSearch { adj, budget, nodes: 0, best: Vec::new(), target: None, exhausted: false }
    }

    /// Stop as soon as a clique of this size is known.
    pub fn with_target(mut self, target: usize) -> Self {
        self.target = Some(target);
        self
    }

    /// Seeds the incumbent with a known clique.
    pub fn offer(&mut self, clique: &[usize]) {
        if clique.len() > self.best.len() {
            self.best = clique.to_vec();
        }
    }

    pub fn best_size(&self) -> usize {
        self.best.len()
    }

    fn done(&self) -> bool {
        self.exhausted || self.target.is_some_and(|t| self.best.len() >= t)
    }

    /// Searches cliques of the form `current + S` with `S` inside `candidates`.
    /// Every vertex of `candidates` must be adjacent to all of `current`.
    pub fn extend(&mut self, current: &[usize], candidates: BitSet) {
        if self.done() {
            return;
        }
        let mut cur = current.to_vec();
        if candidates.is_empty() {
            self.offer(&cur);
            return;
        }
        self.expand(&mut cur, candidates);
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: BitSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let (order, colors) = colour_sort(self.adj, &cand);
        for k in (0..order.len()).rev() {
            if current.len() + colors[k] <= self.best.len() {
                return;
            }
            let v = order[k];
            current.push(v);
            let next = cand.intersection(&self.adj[v]);
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            cand.remove(v);
            if self.done() {
                return;
            }
        }
    }

    pub fn finish(self) -> CliqueResult {
        let mut witness = self.best;
        witness.sort_unstable();
        CliqueResult { size: witness.len(), witness, exact: !self.exhausted, nodes: self.nodes }
    }
}

/// Greedy sequential colouring of `cand`; returns vertices in colour order
/// with the (1-based) colour of each, non-decreasing.
fn colour_sort(adj: &[BitSet], cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut uncoloured = cand.clone();
    let mut order = Vec::with_capacity(cand.count());
    let mut colors = Vec::with_capacity(order.capacity());
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncoloured.remove(v);
            order.push(v);
            colors.push(colour);
        }
    }
    (order, colors)
}

/// Maximum clique of the whole graph.
pub fn max_clique(adj: &[BitSet], budget: u64) -> CliqueResult {
    let mut search = CliqueSearch::new(adj, budget);
    search.extend(&[], BitSet::full(adj.len()));
    search.finish()
}

pub fn complement(adj: &[BitSet]) -> Vec<BitSet> {
    adj.iter()
        .enumerate()
        .map(|(v, row)| {
            let mut c = row.complement();
            c.remove(v);
            c
        })
        .collect()
}

pub fn is_clique(adj: &[BitSet], vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &x)| vertices[i + 1..].iter().all(|&y| x != y && adj[x].contains(y)))
}

/// DIMACS edge format: `p edge n m` then one `e u v` line per edge, 1-based.
pub fn write_dimacs<W: Write>(adj: &[BitSet], mut out: W) -> io::Result<()> {
    let edges: usize = adj.iter().enumerate().map(|(v, r)| r.iter().filter(|&u| u > v).count()).sum();
    writeln!(out, "p edge {} {}", adj.len(), edges)?;
    for (v, row) in adj.iter().enumerate() {
        for u in row.iter().filter(|&u| u > v) {
            writeln!(out, "e {} {}", v + 1, u + 1)?;
        }
    }
    Ok(())
}
