//! Systems of imprimitivity, normal block systems and maximal normal
//! imprimitivity series.
//!
//! A block system `S` is normal when some normal subgroup `N` has exactly the
//! blocks of `S` as its orbits. Any such `N` acts trivially on the blocks, so
//! `N <= G_(S)`, the kernel of the action on `S`. The kernel's orbits are
//! unions of `N`-orbits and are contained in blocks, hence equal the blocks.
//! So `S` is normal iff the kernel's own orbits are the blocks, and the kernel
//! serves as the witness.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup};
use crate::perm::Permutation;

/// A partition of `{0, .., n-1}` in canonical form: blocks sorted internally
/// and ordered by smallest point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; degree];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::NotAPartition("empty block".into()));
            }
            for &p in b {
                if p >= degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::NotAPartition(format!("point {} in two blocks", p + 1)));
                }
            }
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(Error::NotAPartition(format!("point {} uncovered", p + 1)));
        }
        blocks.sort();
        Ok(Partition { blocks })
    }

    pub(crate) fn from_labels(labels: &[usize]) -> Self {
        let mut by_label: HashMap<usize, Vec<usize>> = HashMap::new();
        for (p, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(p);
        }
        let mut blocks: Vec<Vec<usize>> = by_label.into_values().collect();
        blocks.sort();
        Partition { blocks }
    }

    pub fn discrete(degree: usize) -> Self {
        Partition { blocks: (0..degree).map(|p| vec![p]).collect() }
    }

    pub fn whole(degree: usize) -> Self {
        Partition { blocks: vec![(0..degree).collect()] }
    }

    pub fn degree(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &p in b {
                out[p] = i;
            }
        }
        out
    }

    pub fn is_uniform(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let of = other.block_of();
        self.blocks.iter().all(|b| b.iter().all(|&p| of[p] == of[b[0]]))
    }

    pub fn strictly_refines(&self, other: &Partition) -> bool {
        self.num_blocks() > other.num_blocks() && self.refines(other)
    }

    /// Action of `g` on the blocks, or `None` if `g` breaks a block.
    pub fn block_image(&self, g: &Permutation) -> Option<Permutation> {
        let of = self.block_of();
        let mut images = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let target = of[g.apply(b[0])];
            if b.iter().any(|&p| of[g.apply(p)] != target) {
                return None;
            }
            images.push(target as u32);
        }
        Permutation::from_images(images).ok()
    }

    pub fn is_invariant(&self, group: &PermGroup) -> bool {
        self.degree() == group.degree() && group.generators().iter().all(|g| self.block_image(g).is_some())
    }

    /// 1-based sorted blocks, as used in reports.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.iter().map(|p| p + 1).collect()).collect()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .to_one_based()
            .iter()
            .map(|b| format!("[{}]", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

#[derive(Clone, Debug)]
pub struct BlockSystem {
    pub partition: Partition,
    pub is_normal: bool,
    /// The kernel of the block action when the system is normal.
    pub witness_kernel: Option<Subgroup>,
}

impl BlockSystem {
    pub fn new(group: &PermGroup, partition: Partition) -> Result<Self> {
        let (is_normal, kernel) = is_normal_system(group, &partition)?;
        Ok(BlockSystem { partition, is_normal, witness_kernel: is_normal.then_some(kernel) })
    }

    pub fn degree(&self) -> usize {
        self.partition.degree()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        self.partition.blocks()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// Returns the merged roots, or `None` if already joined.
    fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        Some((lo, hi))
    }
}

/// Finest `G`-invariant partition with `alpha` and `beta` in one block
/// (Atkinson's union-find closure).
pub fn minimal_block_system(group: &PermGroup, alpha: usize, beta: usize) -> Result<BlockSystem> {
    let n = group.degree();
    for p in [alpha, beta] {
        if p >= n {
            return Err(Error::PointOutOfRange { point: p, degree: n });
        }
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    if let Some(pair) = uf.union(alpha, beta) {
        queue.push(pair);
    }
    while let Some((a, b)) = queue.pop() {
        for g in group.generators() {
            if let Some(pair) = uf.union(g.apply(a), g.apply(b)) {
                queue.push(pair);
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|p| uf.find(p)).collect();
    BlockSystem::new(group, Partition::from_labels(&labels))
}

/// Elements fixing every block of `partition`.
pub fn block_kernel(group: &PermGroup, partition: &Partition) -> Result<Subgroup> {
    if !partition.is_invariant(group) {
        return Err(Error::NotABlockSystem);
    }
    let of = partition.block_of();
    let members = (0..group.order())
        .filter(|&i| {
            let g = group.element(i);
            (0..group.degree()).all(|p| of[g.apply(p)] == of[p])
        })
        .collect();
    Ok(group.subgroup_of_closed_set(members))
}

/// Normality verdict with the block kernel as witness.
pub fn is_normal_system(group: &PermGroup, partition: &Partition) -> Result<(bool, Subgroup)> {
    let kernel = block_kernel(group, partition)?;
    let orbits = Partition::new(group.degree(), group.subgroup_orbits(&kernel))?;
    Ok((&orbits == partition, kernel))
}

/// All normal subgroups, as the join-closure of normal closures of
/// conjugacy class representatives. Sorted by order, then elements.
pub fn normal_subgroups(group: &PermGroup) -> Vec<Subgroup> {
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut list: Vec<Subgroup> = Vec::new();
    for class in group.conjugacy_classes() {
        let n = group.normal_closure(&class[..1]).expect("class member is an element");
        if seen.insert(n.members().clone()) {
            list.push(n);
        }
    }
    let atoms = list.clone();
    let mut k = 0;
    while k < list.len() {
        for a in &atoms {
            if a.is_subgroup_of(&list[k]) {
                continue;
            }
            let j = group.join(&list[k], a);
            if seen.insert(j.members().clone()) {
                list.push(j);
            }
        }
        k += 1;
    }
    list.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    list
}

/// Every nontrivial normal subgroup is transitive.
pub fn is_quasiprimitive(group: &PermGroup) -> bool {
    normal_subgroups(group)
        .iter()
        .filter(|n| !n.is_trivial())
        .all(|n| group.subgroup_orbits(n).len() == 1)
}

/// Orbit partitions of normal subgroups, each carrying its kernel witness,
/// sorted from finest to coarsest (then canonically).
pub fn normal_partitions(group: &PermGroup) -> Result<Vec<BlockSystem>> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let mut parts: Vec<Partition> = Vec::new();
    let mut seen = HashSet::new();
    for n in normal_subgroups(group) {
        let p = Partition::new(group.degree(), group.subgroup_orbits(&n))?;
        if seen.insert(p.clone()) {
            parts.push(p);
        }
    }
    parts.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
    parts
        .into_iter()
        .map(|p| {
            let sys = BlockSystem::new(group, p)?;
            debug_assert!(sys.is_normal);
            Ok(sys)
        })
        .collect()
}

/// A chain `discrete = S_l < ... < S_1 < S_0 = {Omega}` of normal block
/// systems. `systems[i]` is `S_i`, so index 0 is the one-block partition.
#[derive(Clone, Debug)]
pub struct NormalSeries {
    pub systems: Vec<BlockSystem>,
    pub kernels: Vec<Subgroup>,
}

impl NormalSeries {
    /// Number of strict refinement steps.
    pub fn length(&self) -> usize {
        self.systems.len() - 1
    }

    /// Systems strictly between the discrete and one-block partitions.
    pub fn interior_length(&self) -> usize {
        self.systems.len().saturating_sub(2)
    }

    pub fn system(&self, i: usize) -> &Partition {
        &self.systems[i].partition
    }

    pub fn validate(&self, group: &PermGroup) -> Result<()> {
        let n = group.degree();
        let bad = |m: &str| Err(Error::InvalidSeries(m.to_string()));
        if self.systems.is_empty() || self.kernels.len() != self.systems.len() {
            return bad("systems and kernels must be non-empty and aligned");
        }
        if self.systems[0].partition != Partition::whole(n) {
            return bad("S_0 must be the one-block partition");
        }
        if self.systems[self.length()].partition != Partition::discrete(n) {
            return bad("S_l must be the discrete partition");
        }
        for (i, sys) in self.systems.iter().enumerate() {
            if !sys.partition.is_invariant(group) {
                return bad("a system is not G-invariant");
            }
            let (normal, kernel) = is_normal_system(group, &sys.partition)?;
            if !normal {
                return bad("a system is not normal");
            }
            if kernel != self.kernels[i] {
                return bad("kernel does not match its system");
            }
            if i > 0 && !sys.partition.strictly_refines(&self.systems[i - 1].partition) {
                return bad("systems must strictly refine towards S_l");
            }
        }
        Ok(())
    }
}

/// A longest chain in the refinement order on normal partitions. Ties go to
/// the lexicographically smallest sequence read from the discrete end.
pub fn max_normal_series(group: &PermGroup) -> Result<NormalSeries> {
    let systems = normal_partitions(group)?;
    let n = group.degree();
    let top = systems.iter().position(|s| s.partition == Partition::whole(n)).expect("G is normal");
    let bottom = systems.iter().position(|s| s.partition == Partition::discrete(n)).expect("1 is normal");

    // best[v] = (steps to the top, path v .. top)
    let mut order: Vec<usize> = (0..systems.len()).collect();
    order.sort_by_key(|&v| systems[v].partition.num_blocks());
    let mut best: Vec<Option<(usize, Vec<usize>)>> = vec![None; systems.len()];
    best[top] = Some((0, vec![top]));
    for &v in &order {
        if v == top {
            continue;
        }
        let mut choice: Option<(usize, Vec<usize>)> = None;
        for w in 0..systems.len() {
            if !systems[v].partition.strictly_refines(&systems[w].partition) {
                continue;
            }
            let Some((len, path)) = &best[w] else { continue };
            let better = match &choice {
                None => true,
                Some((cl, cp)) => match (len + 1).cmp(cl) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => {
                        let a = path.iter().map(|&i| &systems[i].partition);
                        let b = cp[1..].iter().map(|&i| &systems[i].partition);
                        a.cmp(b) == Ordering::Less
                    }
                },
            };
            if better {
                let mut p = vec![v];
                p.extend_from_slice(path);
                choice = Some((len + 1, p));
            }
        }
        best[v] = choice;
    }
    let (_, path) = if bottom == top {
        (0, vec![top])
    } else {
        best[bottom].clone().expect("discrete refines the one-block partition")
    };
    let mut chain: Vec<BlockSystem> = path.into_iter().rev().map(|i| systems[i].clone()).collect();
    let kernels = chain.iter_mut().map(|s| s.witness_kernel.clone().expect("normal system")).collect();
    Ok(NormalSeries { systems: chain, kernels })
}
