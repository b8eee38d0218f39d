//! Conjugate unions and Kronecker equivalence of subgroup pairs.
//!
//! `U` and `U'` are equivalent when `U^G = U'^G` as element sets, where
//! `U^G` is the union of all conjugates. `U^G` is exactly the set of
//! elements fixing a coset in the action on the right cosets of `U`, so
//! equivalence is the same as the two coset actions having equal derangement
//! sets. Both routes are computed and compared.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::clique::CliqueResult;
use crate::dgraph::build_coset_graph;
use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Conjugate,
    EqualUnionNonconjugate,
    Inequivalent,
}

#[derive(Clone, Debug)]
pub struct KroneckerReport {
    pub union_u: BitSet,
    pub union_up: BitSet,
    pub equivalent: bool,
    pub conjugate: bool,
    pub index_u: usize,
    pub index_up: usize,
    pub classification: Classification,
}

fn union_by_conjugation(group: &PermGroup, sub: &Subgroup) -> BitSet {
    // U^(ug) = U^g, so right coset representatives cover every conjugate.
    let (reps, _) = group.right_cosets(sub);
    let mut out = BitSet::new(group.order());
    for g in reps {
        for &u in sub.elements() {
            out.insert(group.conjugate(u, g));
        }
    }
    out
}

/// Union of all conjugates of `U`, cross-checked against the fixed-point set
/// of the coset action.
pub fn conjugate_union(group: &PermGroup, sub: &Subgroup) -> Result<BitSet> {
    group.check_subgroup(sub)?;
    let by_conj = union_by_conjugation(group, sub);
    let by_action = group.coset_action(sub)?.fixing_elements();
    if by_conj != by_action {
        return Err(Error::ConstructionViolation(
            "conjugate union differs from the coset action's fixing elements".into(),
        ));
    }
    Ok(by_conj)
}

pub fn are_conjugate(group: &PermGroup, a: &Subgroup, b: &Subgroup) -> Result<bool> {
    group.check_subgroup(a)?;
    group.check_subgroup(b)?;
    if a.order() != b.order() {
        return Ok(false);
    }
    let (reps, _) = group.right_cosets(a);
    for g in reps {
        if group.conjugate_subgroup(a, g)? == *b {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn kronecker_equivalent(group: &PermGroup, u: &Subgroup, up: &Subgroup) -> Result<KroneckerReport> {
    let union_u = conjugate_union(group, u)?;
    let union_up = conjugate_union(group, up)?;
    let equivalent = union_u == union_up;
    let der_u = group.coset_action(u)?.derangements();
    let der_up = group.coset_action(up)?.derangements();
    if equivalent != (der_u == der_up) {
        return Err(Error::ConstructionViolation(
            "union equality disagrees with derangement-set equality".into(),
        ));
    }
    let conjugate = are_conjugate(group, u, up)?;
    if conjugate && !equivalent {
        return Err(Error::ConstructionViolation("conjugate subgroups with different unions".into()));
    }
    let classification = match (conjugate, equivalent) {
        (true, _) => Classification::Conjugate,
        (false, true) => Classification::EqualUnionNonconjugate,
        (false, false) => Classification::Inequivalent,
    };
    Ok(KroneckerReport {
        union_u,
        union_up,
        equivalent,
        conjugate,
        index_u: u.index_in(group),
        index_up: up.index_in(group),
        classification,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PigeonholeVerdict {
    /// Clique number of the derangement graph on the cosets of `U`.
    pub omega: CliqueResult,
    /// `[G : U']`.
    pub bound: usize,
    pub holds: bool,
}

/// For equivalent `U`, `U'`: any clique of the coset-of-`U` derangement graph
/// has at most `[G : U']` members (two members in one coset of `U'` would
/// differ by an element of `U'`, which fixes a coset of `U`).
pub fn pigeonhole_bound_check(
    group: &PermGroup,
    u: &Subgroup,
    up: &Subgroup,
    max_vertices: usize,
    node_budget: u64,
) -> Result<PigeonholeVerdict> {
    if !kronecker_equivalent(group, u, up)?.equivalent {
        return Err(Error::NotEquivalent);
    }
    let omega = coset_clique_number(group, u, max_vertices, node_budget)?;
    let bound = up.index_in(group);
    Ok(PigeonholeVerdict { holds: omega.size <= bound, omega, bound })
}

pub fn coset_clique_number(
    group: &PermGroup,
    u: &Subgroup,
    max_vertices: usize,
    node_budget: u64,
) -> Result<CliqueResult> {
    let action = group.coset_action(u)?;
    Ok(build_coset_graph(group, &action, max_vertices)?.clique_number(node_budget))
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Every subgroup pair instead of one representative per conjugacy class.
    pub full: bool,
    pub lattice_cap: usize,
    pub max_vertices: usize,
    pub node_budget: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRow {
    pub id_u: usize,
    pub id_up: usize,
    pub order_u: usize,
    pub order_up: usize,
    pub index_u: usize,
    pub index_up: usize,
    pub equivalent: bool,
    pub conjugate: bool,
    pub classification: Classification,
    pub omega_coset_u: usize,
    pub omega_exact: bool,
    /// Pigeonhole checks for both orientations; `None` when inequivalent.
    pub pigeonhole_ok: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct PairScan {
    pub subgroups: Vec<Subgroup>,
    pub class_of: Vec<usize>,
    pub rows: Vec<PairRow>,
    /// `n = [G:U']` -> largest `[G:U]` over equivalent ordered pairs.
    pub envelope: BTreeMap<usize, usize>,
}

/// Classifies all unordered subgroup pairs (one per conjugacy class pair
/// unless `full`), with the pigeonhole check on every equivalent pair.
pub fn scan_pairs(group: &PermGroup, opts: &ScanOptions) -> Result<PairScan> {
    let subgroups = group.all_subgroups(opts.lattice_cap)?;
    let class_of = group.subgroup_classes(&subgroups);
    let chosen: Vec<usize> = if opts.full {
        (0..subgroups.len()).collect()
    } else {
        let mut first = HashMap::new();
        for (i, &c) in class_of.iter().enumerate() {
            first.entry(c).or_insert(i);
        }
        let mut v: Vec<usize> = first.into_values().collect();
        v.sort_unstable();
        v
    };

    let unions: Vec<BitSet> = chosen
        .par_iter()
        .map(|&i| conjugate_union(group, &subgroups[i]))
        .collect::<Result<_>>()?;
    let der_sets: Vec<BitSet> = chosen
        .par_iter()
        .map(|&i| group.coset_action(&subgroups[i]).map(|a| a.derangements()))
        .collect::<Result<_>>()?;

    // omega depends only on the conjugacy class of U
    let mut class_rep: BTreeMap<usize, usize> = BTreeMap::new();
    for &i in &chosen {
        class_rep.entry(class_of[i]).or_insert(i);
    }
    let omegas: BTreeMap<usize, CliqueResult> = class_rep
        .par_iter()
        .map(|(&c, &i)| {
            coset_clique_number(group, &subgroups[i], opts.max_vertices, opts.node_budget).map(|r| (c, r))
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut envelope = BTreeMap::new();
    for (a, &i) in chosen.iter().enumerate() {
        for (b, &j) in chosen.iter().enumerate().skip(a) {
            let equivalent = unions[a] == unions[b];
            if equivalent != (der_sets[a] == der_sets[b]) {
                return Err(Error::ConstructionViolation(
                    "union equality disagrees with derangement-set equality".into(),
                ));
            }
            let conjugate = class_of[i] == class_of[j];
            let classification = match (conjugate, equivalent) {
                (true, _) => Classification::Conjugate,
                (false, true) => Classification::EqualUnionNonconjugate,
                (false, false) => Classification::Inequivalent,
            };
            let (u, up) = (&subgroups[i], &subgroups[j]);
            let (iu, iup) = (u.index_in(group), up.index_in(group));
            let om_u = &omegas[&class_of[i]];
            let om_up = &omegas[&class_of[j]];
            let pigeonhole_ok = equivalent.then_some(om_u.size <= iup && om_up.size <= iu);
            if equivalent {
                for (idx, n) in [(iu, iup), (iup, iu)] {
                    let e = envelope.entry(n).or_insert(0);
                    *e = (*e).max(idx);
                }
            }
            rows.push(PairRow {
                id_u: i,
                id_up: j,
                order_u: u.order(),
                order_up: up.order(),
                index_u: iu,
                index_up: iup,
                equivalent,
                conjugate,
                classification,
                omega_coset_u: om_u.size,
                omega_exact: om_u.exact,
                pigeonhole_ok,
            });
        }
    }
    Ok(PairScan { subgroups, class_of, rows, envelope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{DEFAULT_LATTICE_CAP, DEFAULT_MAX_ORDER};
    use crate::perm::Permutation;

    fn g(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::from_cycles(gens, n, DEFAULT_MAX_ORDER).unwrap()
    }

    fn opts() -> ScanOptions {
        ScanOptions { full: true, lattice_cap: DEFAULT_LATTICE_CAP, max_vertices: 10_080, node_budget: 1 << 30 }
    }

    #[test]
    fn conjugate_union_examples() {
        let s4 = g(&["(1 2)", "(1 2 3 4)"], 4);
        assert_eq!(conjugate_union(&s4, &s4.whole()).unwrap().count(), 24);
        assert_eq!(conjugate_union(&s4, &s4.trivial_subgroup()).unwrap().to_vec(), vec![0]);
        let t = s4.subgroup_from_perms(&[Permutation::parse_cycles("(1 2)", 4).unwrap()]).unwrap();
        let un = conjugate_union(&s4, &t).unwrap();
        assert_eq!(un.count(), 7);
        for x in un.iter().filter(|&x| x != 0) {
            assert_eq!(s4.element(x).fixed_points().len(), 2);
        }
    }

    #[test]
    fn conjugate_pair_is_equivalent() {
        let s4 = g(&["(1 2)", "(1 2 3 4)"], 4);
        let u = s4.point_stabilizer(0).unwrap();
        let up = s4.conjugate_subgroup(&u, 5).unwrap();
        let r = kronecker_equivalent(&s4, &u, &up).unwrap();
        assert!(r.equivalent && r.conjugate);
        assert_eq!(r.classification, Classification::Conjugate);
    }

    #[test]
    fn s3_a3_vs_trivial() {
        let s3 = g(&["(1 2)", "(1 2 3)"], 3);
        let a3 = s3.subgroup_from_perms(&[Permutation::parse_cycles("(1 2 3)", 3).unwrap()]).unwrap();
        let r = kronecker_equivalent(&s3, &a3, &s3.trivial_subgroup()).unwrap();
        assert!(!r.equivalent);
        assert_eq!(r.classification, Classification::Inequivalent);
        assert_eq!((r.index_u, r.index_up), (2, 6));
        let err = pigeonhole_bound_check(&s3, &a3, &s3.trivial_subgroup(), 100, 1000).unwrap_err();
        assert_eq!(err, Error::NotEquivalent);
    }

    #[test]
    fn pigeonhole_tight_on_c4() {
        let c4 = g(&["(1 2 3 4)"], 4);
        let one = c4.trivial_subgroup();
        let v = pigeonhole_bound_check(&c4, &one, &one, 100, 1 << 20).unwrap();
        assert_eq!((v.omega.size, v.bound, v.holds), (4, 4, true));
    }

    #[test]
    fn abelian_scan_equivalence_is_equality() {
        let c6 = g(&["(1 2 3 4 5 6)"], 6);
        let scan = scan_pairs(&c6, &opts()).unwrap();
        for r in &scan.rows {
            assert_eq!(r.equivalent, r.id_u == r.id_up);
        }
    }

    #[test]
    fn s3_scan_equivalent_iff_conjugate() {
        let s3 = g(&["(1 2)", "(1 2 3)"], 3);
        let scan = scan_pairs(&s3, &opts()).unwrap();
        assert_eq!(scan.subgroups.len(), 6);
        assert_eq!(scan.rows.len(), 21);
        for r in &scan.rows {
            assert_eq!(r.equivalent, r.conjugate);
            if r.equivalent {
                assert_eq!(r.pigeonhole_ok, Some(true));
            }
        }
        let dedup = scan_pairs(&s3, &ScanOptions { full: false, ..opts() }).unwrap();
        assert_eq!(dedup.rows.len(), 10);
    }

    #[test]
    fn scan_equivalence_is_an_equivalence_relation() {
        let s4 = g(&["(1 2)", "(1 2 3 4)"], 4);
        let scan = scan_pairs(&s4, &opts()).unwrap();
        let n = scan.subgroups.len();
        let mut rel = vec![vec![false; n]; n];
        for r in &scan.rows {
            rel[r.id_u][r.id_up] = r.equivalent;
            rel[r.id_up][r.id_u] = r.equivalent;
        }
        for a in 0..n {
            assert!(rel[a][a]);
            for b in 0..n {
                for c in 0..n {
                    if rel[a][b] && rel[b][c] {
                        assert!(rel[a][c]);
                    }
                }
            }
        }
        assert!(scan.rows.iter().filter(|r| r.conjugate).all(|r| r.equivalent));
    }

    #[test]
    fn s4_has_nonconjugate_equivalent_pair() {
        // <(1 2)(3 4)> and the normal V4 both have union {1} + double transpositions.
        let s4 = g(&["(1 2)", "(1 2 3 4)"], 4);
        let dt = Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap();
        let c2 = s4.subgroup_from_perms(std::slice::from_ref(&dt)).unwrap();
        let v4 = s4.normal_closure(&[s4.index_of(&dt).unwrap()]).unwrap();
        let r = kronecker_equivalent(&s4, &c2, &v4).unwrap();
        assert_eq!(r.classification, Classification::EqualUnionNonconjugate);
        assert_eq!((r.index_u, r.index_up), (12, 6));
        let v = pigeonhole_bound_check(&s4, &c2, &v4, 100, 1 << 20).unwrap();
        assert!(v.holds);
        assert_eq!(v.omega.size, 6);
    }
}
