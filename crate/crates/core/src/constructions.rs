//! Constructive procedures: the partition-avoiding subset and the product
//! clique built along a maximal normal imprimitivity series.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::blocks::{NormalSeries, Partition};
use crate::error::{Error, Result};
use crate::group::PermGroup;

/// Removes, partition by partition, the smallest element of every part that
/// still lies entirely inside the surviving set. The result contains no part
/// of any partition and keeps at least `|X| (1 - 1/a)^sigma` elements when
/// every part has at least `a` elements.
pub fn partition_avoiding_subset(ground: &[usize], partitions: &[Vec<Vec<usize>>], a: usize) -> Result<Vec<usize>> {
    if a == 0 {
        return Err(Error::InvalidArgument("part size bound must be at least 1".into()));
    }
    let x: BTreeSet<usize> = ground.iter().copied().collect();
    if x.len() != ground.len() {
        return Err(Error::InvalidArgument("ground set has repeated elements".into()));
    }
    for pi in partitions {
        let mut covered = BTreeSet::new();
        for part in pi {
            if part.len() < a {
                return Err(Error::PartTooSmall { size: part.len(), bound: a });
            }
            for e in part {
                if !x.contains(e) || !covered.insert(*e) {
                    return Err(Error::NotAPartition(format!("element {e} outside the ground set or repeated")));
                }
            }
        }
        if covered.len() != x.len() {
            return Err(Error::NotAPartition("parts do not cover the ground set".into()));
        }
    }
    let mut y = x;
    for pi in partitions {
        let doomed: Vec<usize> = pi
            .iter()
            .filter(|part| part.iter().all(|e| y.contains(e)))
            .map(|part| *part.iter().min().expect("parts are non-empty"))
            .collect();
        for e in doomed {
            y.remove(&e);
        }
    }
    Ok(y.into_iter().collect())
}

/// Exact test of `kept >= s (1 - 1/a)^sigma`, i.e. `kept a^sigma >= s (a-1)^sigma`.
pub fn meets_avoidance_bound(kept: usize, s: usize, a: usize, sigma: u32) -> bool {
    let a = a as u128;
    match (a.checked_pow(sigma), (a - 1).checked_pow(sigma)) {
        (Some(p), Some(q)) => match ((kept as u128).checked_mul(p), (s as u128).checked_mul(q)) {
            (Some(l), Some(r)) => l >= r,
            _ => kept as f64 >= s as f64 * (1.0 - 1.0 / a as f64).powi(sigma as i32),
        },
        _ => kept as f64 >= s as f64 * (1.0 - 1.0 / a as f64).powi(sigma as i32),
    }
}

#[derive(Clone, Debug)]
pub struct ChainCliqueCertificate {
    pub series: NormalSeries,
    /// `0 = i_0 < i_1 < ... < i_kappa`.
    pub indices: Vec<usize>,
    /// `witnesses[j]` lies in the kernel on `S_{i_j}` and deranges `S_{i_{j+1}}`.
    pub witnesses: Vec<usize>,
    /// Distinct products of the witnesses, ascending element indices.
    pub clique: Vec<usize>,
    pub kappa: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateSummary {
    pub indices: Vec<usize>,
    pub witnesses: Vec<String>,
    pub kappa: usize,
    pub clique_size: usize,
    pub series_length: usize,
    pub verified: bool,
}

impl ChainCliqueCertificate {
    pub fn summary(&self, group: &PermGroup) -> CertificateSummary {
        CertificateSummary {
            indices: self.indices.clone(),
            witnesses: self.witnesses.iter().map(|&w| group.element(w).to_string()).collect(),
            kappa: self.kappa,
            clique_size: self.clique.len(),
            series_length: self.series.length(),
            verified: true,
        }
    }
}

/// `g` fixes no block of the partition (given as its block labelling).
fn deranges_blocks(group: &PermGroup, g: usize, block_of: &[usize], blocks: &Partition) -> bool {
    let p = group.element(g);
    blocks.blocks().iter().all(|b| block_of[p.apply(b[0])] != block_of[b[0]])
}

/// Greedy index chain: from `i_j`, the next index is the least `x > i_j`
/// such that the kernel on `S_{i_j}` has a derangement on `S_x`. Stops at `l`
/// or when the kernel has no derangement on any further system.
pub fn build_chain_indices(group: &PermGroup, series: &NormalSeries) -> Result<(Vec<usize>, Vec<usize>)> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    series.validate(group)?;
    let len = series.length();
    let labels: Vec<Vec<usize>> = series.systems.iter().map(|s| s.partition.block_of()).collect();
    let mut indices = vec![0];
    let mut witnesses = Vec::new();
    let mut cur = 0;
    'outer: while cur < len {
        let kernel = &series.kernels[cur];
        for (x, lab) in labels.iter().enumerate().skip(cur + 1) {
            let part = series.system(x);
            if let Some(&w) = kernel.elements().iter().find(|&&g| deranges_blocks(group, g, lab, part)) {
                indices.push(x);
                witnesses.push(w);
                cur = x;
                continue 'outer;
            }
        }
        break;
    }
    Ok((indices, witnesses))
}

pub fn chain_clique(group: &PermGroup, series: &NormalSeries) -> Result<ChainCliqueCertificate> {
    let (indices, witnesses) = build_chain_indices(group, series)?;
    let kappa = witnesses.len();
    let labels: Vec<Vec<usize>> = series.systems.iter().map(|s| s.partition.block_of()).collect();

    if series.length() >= 1 && indices.get(1) != Some(&1) {
        return Err(Error::ConstructionViolation(format!("expected i_1 = 1, got {:?}", indices.get(1))));
    }
    for j in 0..kappa {
        let (ij, next) = (indices[j], indices[j + 1]);
        let kernel = &series.kernels[ij];
        if !kernel.contains(witnesses[j]) || !deranges_blocks(group, witnesses[j], &labels[next], series.system(next)) {
            return Err(Error::ConstructionViolation(format!("witness {j} breaks the kernel/derangement condition")));
        }
        for (x, lab) in labels.iter().enumerate().take(next).skip(ij + 1) {
            if kernel.elements().iter().any(|&g| deranges_blocks(group, g, lab, series.system(x))) {
                return Err(Error::ConstructionViolation(format!("kernel on S_{ij} deranges S_{x}")));
            }
        }
    }

    let mut products = BTreeSet::new();
    for mask in 0u64..1 << kappa {
        let mut h = PermGroup::IDENTITY;
        for (j, &w) in witnesses.iter().enumerate() {
            if mask >> j & 1 == 1 {
                h = group.mul(h, w);
            }
        }
        products.insert(h);
    }
    let clique: Vec<usize> = products.into_iter().collect();
    for (a, &h) in clique.iter().enumerate() {
        for &hp in &clique[a + 1..] {
            let q = group.mul(h, group.inverse(hp));
            if !group.element(q).is_derangement() {
                return Err(Error::ConstructionViolation(format!(
                    "{} and {} are not adjacent",
                    group.element(h),
                    group.element(hp)
                )));
            }
        }
    }
    if 2 * clique.len() < 1usize << kappa {
        return Err(Error::ConstructionViolation(format!(
            "clique of size {} below 2^(kappa-1) with kappa = {kappa}",
            clique.len()
        )));
    }
    Ok(ChainCliqueCertificate { series: series.clone(), indices, witnesses, clique, kappa })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::max_normal_series;
    use crate::group::DEFAULT_MAX_ORDER;

    fn g(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::from_cycles(gens, n, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn avoiding_subset_single_partition() {
        let y = partition_avoiding_subset(&[1, 2, 3, 4], &[vec![vec![1, 2], vec![3, 4]]], 2).unwrap();
        assert_eq!(y, vec![2, 4]);
        assert!(meets_avoidance_bound(y.len(), 4, 2, 1));
    }

    #[test]
    fn avoiding_subset_no_partitions() {
        assert_eq!(partition_avoiding_subset(&[5, 1, 3], &[], 3).unwrap(), vec![1, 3, 5]);
    }

    #[test]
    fn avoiding_subset_errors() {
        assert_eq!(
            partition_avoiding_subset(&[1, 2, 3], &[vec![vec![1, 2], vec![3]]], 2).unwrap_err(),
            Error::PartTooSmall { size: 1, bound: 2 }
        );
        assert!(matches!(
            partition_avoiding_subset(&[1, 2, 3, 4], &[vec![vec![1, 2], vec![2, 3]]], 2),
            Err(Error::NotAPartition(_))
        ));
        assert!(partition_avoiding_subset(&[1], &[], 0).is_err());
    }

    #[test]
    fn second_partition_sees_earlier_deletions() {
        // After deleting 1 and 3, the part {2, 4} of the second partition is
        // still whole and loses 2; {1, 3} is already broken.
        let pis = vec![vec![vec![1, 2], vec![3, 4]], vec![vec![1, 3], vec![2, 4]]];
        assert_eq!(partition_avoiding_subset(&[1, 2, 3, 4], &pis, 2).unwrap(), vec![4]);
        assert!(meets_avoidance_bound(1, 4, 2, 2));
        assert!(!meets_avoidance_bound(0, 4, 2, 2));
    }

    #[test]
    fn bound_is_exact_at_equality() {
        // 27 * (2/3)^3 = 8 exactly
        assert!(meets_avoidance_bound(8, 27, 3, 3));
        assert!(!meets_avoidance_bound(7, 27, 3, 3));
    }

    #[test]
    fn quasiprimitive_chain() {
        let a5 = g(&["(1 2 3)", "(1 2 4)", "(1 2 5)"], 5);
        let s = max_normal_series(&a5).unwrap();
        let (idx, w) = build_chain_indices(&a5, &s).unwrap();
        assert_eq!(idx, vec![0, 1]);
        assert_eq!(w.len(), 1);
        let cert = chain_clique(&a5, &s).unwrap();
        assert_eq!(cert.kappa, 1);
        assert_eq!(cert.clique, vec![0, w[0]]);
    }

    #[test]
    fn c4_chain() {
        let c4 = g(&["(1 2 3 4)"], 4);
        let s = max_normal_series(&c4).unwrap();
        let (idx, _) = build_chain_indices(&c4, &s).unwrap();
        assert_eq!(idx, vec![0, 1, 2]);
        let cert = chain_clique(&c4, &s).unwrap();
        assert_eq!(cert.kappa, 2);
        assert_eq!(cert.clique.len(), 4);
    }

    #[test]
    fn wreath_chain_verifies() {
        let w = g(&["(1 2)", "(1 3)(2 4)"], 4);
        let s = max_normal_series(&w).unwrap();
        let cert = chain_clique(&w, &s).unwrap();
        assert!(cert.clique.len() >= 1 << (cert.kappa - 1));
    }

    #[test]
    fn kernel_without_derangement_stops_chain() {
        // C2 wr C3: the base group fixes points in every element except the
        // ones swapping all three pairs, so check the chain terminates cleanly.
        let w = g(&["(1 2)", "(1 3 5)(2 4 6)"], 6);
        let s = max_normal_series(&w).unwrap();
        let (idx, wit) = build_chain_indices(&w, &s).unwrap();
        assert_eq!(idx.len(), wit.len() + 1);
        assert_eq!(idx[1], 1);
        chain_clique(&w, &s).unwrap();
    }

    #[test]
    fn degree_one_has_empty_chain() {
        let t = g(&[], 1);
        let s = max_normal_series(&t).unwrap();
        let cert = chain_clique(&t, &s).unwrap();
        assert_eq!(cert.kappa, 0);
        assert_eq!(cert.clique, vec![0]);
    }
}
