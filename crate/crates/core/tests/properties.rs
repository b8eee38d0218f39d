mod common;

use proptest::prelude::*;

use derangement_core::blocks::{is_quasiprimitive, max_normal_series};
use derangement_core::constructions::{chain_clique, meets_avoidance_bound, partition_avoiding_subset};
use derangement_core::dgraph::{build_graph, is_intersecting};
use derangement_core::{PermGroup, Permutation};

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group_strategy() -> impl Strategy<Value = PermGroup> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(perm_strategy(n), 1..=3)))
        .prop_map(|(n, gens)| PermGroup::enumerate(gens, n, 1000).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn clique_coclique_bound(g in group_strategy()) {
        let graph = build_graph(&g, 1000).unwrap();
        let w = graph.clique_number(10_000_000);
        let a = graph.coclique_number(10_000_000);
        prop_assert!(w.exact && a.exact);
        prop_assert!(w.size * a.size <= g.order());
        prop_assert!(is_intersecting(&g, &a.witness));
    }

    #[test]
    fn invariants_survive_relabeling(g in group_strategy(), seed in any::<u64>()) {
        let n = g.degree();
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (s >> 33) as usize % (i + 1));
        }
        let r = Permutation::from_images(images).unwrap();
        let gens: Vec<Permutation> = g.generators().iter().map(|x| x.conjugate_by(&r)).collect();
        let h = PermGroup::enumerate(gens, n, 1000).unwrap();
        prop_assert_eq!(h.order(), g.order());
        let wg = build_graph(&g, 1000).unwrap().clique_number(10_000_000).size;
        let wh = build_graph(&h, 1000).unwrap().clique_number(10_000_000).size;
        prop_assert_eq!(wg, wh);
        prop_assert_eq!(g.is_transitive(), h.is_transitive());
        if g.is_transitive() {
            prop_assert_eq!(max_normal_series(&g).unwrap().length(), max_normal_series(&h).unwrap().length());
        }
    }

    #[test]
    fn chain_certificates_on_transitive_groups(g in group_strategy()) {
        prop_assume!(g.is_transitive());
        let series = max_normal_series(&g).unwrap();
        series.validate(&g).unwrap();
        prop_assert_eq!(series.length() == 1, is_quasiprimitive(&g) || g.degree() == 1);
        let cert = chain_clique(&g, &series).unwrap();
        for (i, &x) in cert.clique.iter().enumerate() {
            for &y in &cert.clique[i + 1..] {
                prop_assert!(g.element(x).compose(&g.element(y).inverse()).unwrap().is_derangement());
            }
        }
        prop_assert!(2 * cert.clique.len() >= 1 << cert.kappa);
        let w = build_graph(&g, 1000).unwrap().clique_number(10_000_000).size;
        prop_assert!(cert.clique.len() <= w);
    }

    #[test]
    fn avoiding_subset_bound(
        s in 4usize..=40,
        a in 2usize..=4,
        labels in prop::collection::vec(prop::collection::vec(0usize..10, 40), 0..=6),
    ) {
        prop_assume!(s >= a);
        let ground: Vec<usize> = (0..s).collect();
        // Merge labels into parts, then split undersized parts into neighbours.
        let partitions: Vec<Vec<Vec<usize>>> = labels
            .iter()
            .map(|lab| {
                let mut parts: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
                for &x in &ground {
                    parts.entry(lab[x]).or_default().push(x);
                }
                let mut out: Vec<Vec<usize>> = Vec::new();
                let mut carry = Vec::new();
                for (_, mut p) in parts {
                    carry.append(&mut p);
                    if carry.len() >= a {
                        out.push(std::mem::take(&mut carry));
                    }
                }
                if !carry.is_empty() {
                    out.last_mut().unwrap().append(&mut carry);
                }
                out
            })
            .collect();
        let y = partition_avoiding_subset(&ground, &partitions, a).unwrap();
        for partition in &partitions {
            for part in partition {
                prop_assert!(!part.iter().all(|x| y.contains(x)));
            }
        }
        prop_assert!(meets_avoidance_bound(y.len(), s, a, partitions.len() as u32));
        let bound = s as f64 * (1.0 - 1.0 / a as f64).powi(partitions.len() as i32);
        prop_assert!(y.len() as f64 >= bound - 1e-9);
    }
}
