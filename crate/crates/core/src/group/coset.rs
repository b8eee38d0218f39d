use crate::bitset::BitSet;
use crate::error::Result;
use crate::perm::Permutation;

use super::{PermGroup, Subgroup};

/// `G` acting by right multiplication on the right cosets of a subgroup.
///
/// Coset `c` is `U * representatives[c]`; representatives are the lex-minimal
/// elements of their cosets. `images[g]` is the permutation of cosets induced
/// by element `g`, so derangement sets of the action pull back to subsets of `G`.
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub representatives: Vec<usize>,
    pub coset_of: Vec<usize>,
    pub images: Vec<Permutation>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    /// Elements of `G` acting without fixed cosets.
    pub fn derangements(&self) -> BitSet {
        BitSet::from_indices(
            self.images.len(),
            self.images.iter().enumerate().filter(|(_, p)| p.is_derangement()).map(|(i, _)| i),
        )
    }

    /// Elements of `G` fixing at least one coset.
    pub fn fixing_elements(&self) -> BitSet {
        self.derangements().complement()
    }

    /// The induced permutation group on cosets (the image of `G`).
    pub fn image_group(&self, group: &PermGroup, max_order: usize) -> Result<PermGroup> {
        let gens = group.generator_indices().iter().map(|&g| self.images[g].clone()).collect();
        PermGroup::enumerate(gens, self.degree(), max_order)
    }
}

impl PermGroup {
    pub fn coset_action(&self, sub: &Subgroup) -> Result<CosetAction> {
        self.check_subgroup(sub)?;
        let (representatives, coset_of) = self.right_cosets(sub);
        let images = (0..self.order())
            .map(|g| {
                let imgs = representatives.iter().map(|&r| coset_of[self.mul(r, g)] as u32).collect();
                Permutation::from_images(imgs).expect("right multiplication permutes cosets")
            })
            .collect();
        Ok(CosetAction { representatives, coset_of, images })
    }
}
