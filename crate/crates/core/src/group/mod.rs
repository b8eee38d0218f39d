//! Finite permutation groups held as fully enumerated, canonically ordered
//! element tables.
//!
//! Elements are sorted lexicographically by image sequence, so the identity
//! is always index 0 and every index-based report is reproducible.

mod coset;
mod lattice;

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

pub use coset::CosetAction;
pub use lattice::DEFAULT_LATTICE_CAP;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_MAX_ORDER: usize = 100_000;

/// Groups up to this order get a full multiplication table on first use.
const TABLE_CAP: usize = 2048;

pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverses: Vec<u32>,
    table: OnceLock<Option<Vec<u32>>>,
    classes: OnceLock<Vec<Vec<usize>>>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// A subgroup of a [`PermGroup`], stored as element indices into that group.
/// Equality compares element sets only.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: BitSet,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.contains(element)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// `[G : self]` for the group this subgroup was built in.
    pub fn index_in(&self, group: &PermGroup) -> usize {
        group.order() / self.order()
    }
}

impl PermGroup {
    /// Breadth-first closure of `generators`; fails once more than `max_order`
    /// elements have been found.
    pub fn enumerate(generators: Vec<Permutation>, degree: usize, max_order: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::PointOutOfRange { point: 0, degree: 0 });
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        if max_order < 1 {
            return Err(Error::OrderCapExceeded { cap: max_order });
        }
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= max_order {
                        return Err(Error::OrderCapExceeded { cap: max_order });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::from_sorted(degree, generators, elements))
    }

    fn from_sorted(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()] as u32).collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        PermGroup {
            degree,
            generators,
            generator_indices,
            elements,
            index,
            inverses,
            table: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    pub fn from_cycles(gens: &[&str], degree: usize, max_order: usize) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|g| Permutation::parse_cycles(g, degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::enumerate(perms, degree, max_order)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub const IDENTITY: usize = 0;

    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    fn table(&self) -> Option<&[u32]> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                if n > TABLE_CAP {
                    return None;
                }
                let mut t = Vec::with_capacity(n * n);
                for x in &self.elements {
                    for y in &self.elements {
                        t.push(self.index[&x.then(y)] as u32);
                    }
                }
                Some(t)
            })
            .as_deref()
    }

    /// Index of `element(i) * element(j)` (apply `i` first).
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match self.table() {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.index[&self.elements[i].then(&self.elements[j])],
        }
    }

    /// Index of `g^-1 x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![point];
        seen[point] = true;
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// Orbits on points, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let perms: Vec<&Permutation> = self.generators.iter().collect();
        point_orbits(self.degree, &perms)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Orbits of a subgroup on the points.
    pub fn subgroup_orbits(&self, sub: &Subgroup) -> Vec<Vec<usize>> {
        let perms: Vec<&Permutation> = sub.generators.iter().map(|&g| &self.elements[g]).collect();
        point_orbits(self.degree, &perms)
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<Subgroup> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange { point, degree: self.degree });
        }
        let members = (0..self.order()).filter(|&i| self.elements[i].apply(point) == point);
        Ok(self.subgroup_of_closed_set(members.collect()))
    }

    /// Elements mapping `set` onto itself.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<Subgroup> {
        let mut mask = vec![false; self.degree];
        for &p in set {
            if p >= self.degree {
                return Err(Error::PointOutOfRange { point: p, degree: self.degree });
            }
            mask[p] = true;
        }
        let members = (0..self.order())
            .filter(|&i| set.iter().all(|&p| mask[self.elements[i].apply(p)]))
            .collect();
        Ok(self.subgroup_of_closed_set(members))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_of_closed_set(vec![Self::IDENTITY])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: BitSet::full(self.order()),
            elements: (0..self.order()).collect(),
            generators: self.generator_indices.clone(),
        }
    }

    /// Closure of `seed` under right multiplication by `gens`. `seed` must
    /// contain the identity and lie inside `<gens>`.
    fn close(&self, seed: &[usize], gens: &[usize]) -> BitSet {
        let mut members = BitSet::from_indices(self.order(), seed.iter().copied());
        members.insert(Self::IDENTITY);
        let mut list: Vec<usize> = members.to_vec();
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    list.push(y);
                }
            }
            k += 1;
        }
        members
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let members = self.close(&[Self::IDENTITY], gens);
        let mut generators: Vec<usize> = gens.iter().copied().filter(|&g| g != Self::IDENTITY).collect();
        generators.sort_unstable();
        generators.dedup();
        Subgroup { elements: members.to_vec(), members, generators }
    }

    pub fn subgroup_from_perms(&self, gens: &[Permutation]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::NotAnElement))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_generated(&idx))
    }

    /// Wraps a set of element indices, checking it is a subgroup.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<Subgroup> {
        if elements.iter().any(|&e| e >= self.order()) {
            return Err(Error::NotAnElement);
        }
        let set = BitSet::from_indices(self.order(), elements.iter().copied());
        if !set.contains(Self::IDENTITY) {
            return Err(Error::NotASubgroup);
        }
        let list = set.to_vec();
        for &x in &list {
            for &y in &list {
                if !set.contains(self.mul(x, y)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(self.subgroup_of_closed_set(list))
    }

    /// Builds a `Subgroup` from a set already known to be closed, choosing a
    /// small generating set greedily in canonical order.
    pub(crate) fn subgroup_of_closed_set(&self, mut elements: Vec<usize>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let members = BitSet::from_indices(self.order(), elements.iter().copied());
        let mut generators = Vec::new();
        let mut span = BitSet::from_indices(self.order(), [Self::IDENTITY]);
        for &x in &elements {
            if !span.contains(x) {
                generators.push(x);
                span = self.close(&span.to_vec(), &generators);
            }
        }
        debug_assert_eq!(span, members);
        Subgroup { members, elements, generators }
    }

    /// Rejects subgroups built over a different group.
    pub fn check_subgroup(&self, sub: &Subgroup) -> Result<()> {
        if sub.members.len() != self.order() {
            return Err(Error::NotASubgroup);
        }
        Ok(())
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if b.is_subgroup_of(a) {
            return a.clone();
        }
        if a.is_subgroup_of(b) {
            return b.clone();
        }
        let mut gens = a.generators.clone();
        gens.extend(b.generators.iter().filter(|g| !a.contains(**g)));
        let members = self.close(&a.elements, &gens);
        Subgroup { elements: members.to_vec(), members, generators: gens }
    }

    /// `U^g = g^-1 U g`.
    pub fn conjugate_subgroup(&self, sub: &Subgroup, g: usize) -> Result<Subgroup> {
        self.check_subgroup(sub)?;
        if g >= self.order() {
            return Err(Error::NotAnElement);
        }
        let mut elements: Vec<usize> = sub.elements.iter().map(|&x| self.conjugate(x, g)).collect();
        elements.sort_unstable();
        let members = BitSet::from_indices(self.order(), elements.iter().copied());
        let generators = sub.generators.iter().map(|&x| self.conjugate(x, g)).collect();
        Ok(Subgroup { members, elements, generators })
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        self.generator_indices
            .iter()
            .all(|&g| sub.generators.iter().all(|&x| sub.contains(self.conjugate(x, g))))
    }

    /// Smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &[usize]) -> Result<Subgroup> {
        if set.iter().any(|&e| e >= self.order()) {
            return Err(Error::NotAnElement);
        }
        let mut gens: Vec<usize> = Vec::new();
        let mut members = BitSet::from_indices(self.order(), [Self::IDENTITY]);
        let mut pending: Vec<usize> = set.to_vec();
        // Add conjugates of generators until the span is invariant.
        while let Some(x) = pending.pop() {
            if members.contains(x) {
                continue;
            }
            gens.push(x);
            members = self.close(&members.to_vec(), &gens);
            for &g in &self.generator_indices {
                for &y in &gens {
                    let c = self.conjugate(y, g);
                    if !members.contains(c) {
                        pending.push(c);
                    }
                }
            }
        }
        let elements = members.to_vec();
        Ok(Subgroup { members, elements, generators: gens })
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut seen = BitSet::new(n);
            let mut classes = Vec::new();
            for x in 0..n {
                if seen.contains(x) {
                    continue;
                }
                seen.insert(x);
                let mut class = vec![x];
                let mut k = 0;
                while k < class.len() {
                    let y = class[k];
                    for &g in &self.generator_indices {
                        let c = self.conjugate(y, g);
                        if seen.insert(c) {
                            class.push(c);
                        }
                    }
                    k += 1;
                }
                class.sort_unstable();
                classes.push(class);
            }
            classes
        })
    }

    /// Indices of the canonical (lex-minimal) representatives of the right
    /// cosets `U g`, in increasing order, plus the coset label of every element.
    pub fn right_cosets(&self, sub: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if label[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &u in &sub.elements {
                label[self.mul(u, x)] = c;
            }
        }
        (reps, label)
    }
}

fn point_orbits(degree: usize, perms: &[&Permutation]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut orb = vec![start];
        let mut k = 0;
        while k < orb.len() {
            let x = orb[k];
            for g in perms {
                let y = g.apply(x);
                if label[y] == usize::MAX {
                    label[y] = id;
                    orb.push(y);
                }
            }
            k += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}
