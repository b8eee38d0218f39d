//! Derangement graphs as Cayley graphs, with exact clique and coclique
//! numbers.
//!
//! Vertex `i` is the `i`-th canonical element of the group; `x ~ y` iff
//! `x * y^-1` lies in the connection set. Right translations are graph
//! automorphisms, and when the connection set is closed under conjugation so
//! is every inner automorphism. A maximum clique can therefore be assumed to
//! contain the identity and a conjugacy class representative from the
//! connection set, which is how the clique number is searched.

use crate::bitset::BitSet;
use crate::clique::{CliqueResult, CliqueSearch};
use crate::error::{Error, Result};
use crate::group::{CosetAction, PermGroup};

pub const DEFAULT_MAX_GRAPH_VERTICES: usize = 10_080;

/// Elements of `G` without fixed points in the natural action.
pub fn derangement_set(group: &PermGroup) -> BitSet {
    BitSet::from_indices(
        group.order(),
        (0..group.order()).filter(|&i| group.element(i).is_derangement()),
    )
}

pub struct DerangementGraph<'g> {
    group: &'g PermGroup,
    connection: BitSet,
    adjacency: Vec<BitSet>,
    conjugation_invariant: bool,
}

impl std::fmt::Debug for DerangementGraph<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DerangementGraph")
            .field("vertices", &self.adjacency.len())
            .field("connection_size", &self.connection.count())
            .finish()
    }
}

/// Derangement graph of the natural action.
pub fn build_graph(group: &PermGroup, max_vertices: usize) -> Result<DerangementGraph<'_>> {
    DerangementGraph::with_connection(group, derangement_set(group), max_vertices)
}

/// Derangement graph of `G` acting on the cosets of a subgroup. Vertices are
/// still all elements of `G`, so a non-faithful action is fine.
pub fn build_coset_graph<'g>(
    group: &'g PermGroup,
    action: &CosetAction,
    max_vertices: usize,
) -> Result<DerangementGraph<'g>> {
    DerangementGraph::with_connection(group, action.derangements(), max_vertices)
}

impl<'g> DerangementGraph<'g> {
    /// Cayley graph with an arbitrary connection set, which must avoid the
    /// identity and be closed under inverses.
    pub fn with_connection(group: &'g PermGroup, connection: BitSet, max_vertices: usize) -> Result<Self> {
        let n = group.order();
        if n > max_vertices {
            return Err(Error::GraphTooLarge { vertices: n, cap: max_vertices });
        }
        assert_eq!(connection.len(), n, "connection set sized for another group");
        if connection.contains(PermGroup::IDENTITY) {
            return Err(Error::ConstructionViolation("connection set contains the identity".into()));
        }
        if connection.iter().any(|s| !connection.contains(group.inverse(s))) {
            return Err(Error::ConstructionViolation("connection set is not inverse-closed".into()));
        }
        let conjugation_invariant = group.conjugacy_classes().iter().all(|class| {
            let inside = connection.contains(class[0]);
            class.iter().all(|&x| connection.contains(x) == inside)
        });
        let elems = connection.to_vec();
        let mut adjacency = vec![BitSet::new(n); n];
        for y in 0..n {
            for &s in &elems {
                adjacency[group.mul(s, y)].insert(y);
            }
        }
        Ok(DerangementGraph { group, connection, adjacency, conjugation_invariant })
    }

    pub fn group(&self) -> &'g PermGroup {
        self.group
    }

    pub fn connection_set(&self) -> &BitSet {
        &self.connection
    }

    pub fn adjacency(&self) -> &[BitSet] {
        &self.adjacency
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        self.adjacency[x].contains(y)
    }

    pub fn is_regular(&self) -> bool {
        let d = self.connection.count();
        self.adjacency.iter().all(|row| row.count() == d)
    }

    /// The complementary Cayley graph: connection set is every non-identity
    /// element outside the current one.
    pub fn complement(&self) -> DerangementGraph<'g> {
        let mut conn = self.connection.complement();
        conn.remove(PermGroup::IDENTITY);
        DerangementGraph::with_connection(self.group, conn, usize::MAX)
            .expect("complement of a Cayley connection set is a connection set")
    }

    fn seeded_search(&self, budget: u64, target: Option<usize>) -> CliqueResult {
        let id = PermGroup::IDENTITY;
        let Some(first) = self.connection.first() else {
            return CliqueResult { size: 1, witness: vec![id], exact: true, nodes: 0 };
        };
        let mut search = CliqueSearch::new(&self.adjacency, budget);
        if let Some(t) = target {
            search = search.with_target(t);
        }
        search.offer(&[id, first]);
        if self.conjugation_invariant {
            for class in self.group.conjugacy_classes() {
                let rep = class[0];
                if self.connection.contains(rep) {
                    let cand = self.adjacency[id].intersection(&self.adjacency[rep]);
                    search.extend(&[id, rep], cand);
                }
            }
        } else {
            search.extend(&[id], self.adjacency[id].clone());
        }
        search.finish()
    }

    /// Maximum clique; `exact` is false if `node_budget` ran out.
    pub fn clique_number(&self, node_budget: u64) -> CliqueResult {
        self.seeded_search(node_budget, None)
    }

    /// Maximum coclique (intersecting set), via the complement graph.
    pub fn coclique_number(&self, node_budget: u64) -> CliqueResult {
        self.complement().clique_number(node_budget)
    }

    /// Early-exit search for a clique of size `c`. The witness is only
    /// meaningful when `size >= c`; a miss with `exact == false` is undecided.
    pub fn has_clique_of_size(&self, c: usize, node_budget: u64) -> (bool, CliqueResult) {
        if c == 0 {
            return (true, CliqueResult { size: 0, witness: vec![], exact: true, nodes: 0 });
        }
        let r = self.seeded_search(node_budget, Some(c));
        (r.size >= c, r)
    }

    pub fn triangle_exists(&self, node_budget: u64) -> (bool, CliqueResult) {
        self.has_clique_of_size(3, node_budget)
    }
}

/// Any two members agree on some point of the natural action.
pub fn is_intersecting(group: &PermGroup, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &x)| {
        set[i + 1..].iter().all(|&y| {
            let (gx, gy) = (group.element(x), group.element(y));
            (0..group.degree()).any(|w| gx.apply(w) == gy.apply(w))
        })
    })
}
