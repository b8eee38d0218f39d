use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

use super::{PermGroup, Subgroup};

pub const DEFAULT_LATTICE_CAP: usize = 2000;

impl PermGroup {
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut seen: HashMap<BitSet, usize> = HashMap::new();
        let mut out = Vec::new();
        for x in 0..self.order() {
            let c = self.subgroup_generated(&[x]);
            if !seen.contains_key(&c.members) {
                seen.insert(c.members.clone(), out.len());
                out.push(c);
            }
        }
        out
    }

    /// Every subgroup, as joins of cyclic subgroups closed to a fixpoint.
    /// Sorted by order, then by element list.
    pub fn all_subgroups(&self, max_order: usize) -> Result<Vec<Subgroup>> {
        if self.order() > max_order {
            return Err(Error::OrderCapExceeded { cap: max_order });
        }
        let cyclic = self.cyclic_subgroups();
        let mut index: HashMap<BitSet, usize> = HashMap::new();
        let mut subgroups: Vec<Subgroup> = Vec::new();
        for c in &cyclic {
            index.insert(c.members.clone(), subgroups.len());
            subgroups.push(c.clone());
        }
        let mut k = 0;
        while k < subgroups.len() {
            for c in &cyclic {
                if c.is_subgroup_of(&subgroups[k]) {
                    continue;
                }
                let j = self.join(&subgroups[k], c);
                if !index.contains_key(&j.members) {
                    index.insert(j.members.clone(), subgroups.len());
                    subgroups.push(j);
                }
            }
            k += 1;
        }
        subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(subgroups)
    }

    /// Groups `subgroups` into conjugacy classes; returns class index per subgroup.
    pub fn subgroup_classes(&self, subgroups: &[Subgroup]) -> Vec<usize> {
        let index: HashMap<&BitSet, usize> =
            subgroups.iter().enumerate().map(|(i, s)| (&s.members, i)).collect();
        let mut class = vec![usize::MAX; subgroups.len()];
        let mut next = 0;
        for i in 0..subgroups.len() {
            if class[i] != usize::MAX {
                continue;
            }
            class[i] = next;
            let mut stack = vec![i];
            while let Some(s) = stack.pop() {
                for &g in &self.generator_indices {
                    let c = self.conjugate_subgroup(&subgroups[s], g).expect("same group");
                    if let Some(&j) = index.get(&c.members) {
                        if class[j] == usize::MAX {
                            class[j] = next;
                            stack.push(j);
                        }
                    }
                }
            }
            next += 1;
        }
        class
    }
}
