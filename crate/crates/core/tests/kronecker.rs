mod common;

use derangement_core::catalog::{builtin, fano_line};
use derangement_core::kronecker::{kronecker_equivalent, pigeonhole_bound_check, Classification};
use derangement_core::BitSet;

fn as_set(g: &derangement_core::PermGroup, bits: &BitSet) -> common::Elements {
    common::elements_of(g, &bits.to_vec())
}

#[test]
fn bridge_holds_on_catalog_pairs() {
    let mut pairs = 0;
    for name in ["S4-natural", "D6-natural", "C2wrC3-imprimitive", "AGL(1,5)-deg5", "A4-natural", "D8-natural"] {
        let g = builtin(name).unwrap().load(10_000).unwrap();
        let subs = g.all_subgroups(2000).unwrap();
        for (i, u) in subs.iter().enumerate() {
            let ou = common::conjugate_union(&g, &common::elements_of(&g, u.elements()));
            let du = g.coset_action(u).unwrap().derangements();
            for up in &subs[i..] {
                let rep = kronecker_equivalent(&g, u, up).unwrap();
                assert_eq!(as_set(&g, &rep.union_u), ou);
                let dup = g.coset_action(up).unwrap().derangements();
                assert_eq!(rep.equivalent, du == dup, "{name}");
                let oracle_conj =
                    common::are_conjugate(&g, &common::elements_of(&g, u.elements()), &common::elements_of(&g, up.elements()));
                assert_eq!(rep.conjugate, oracle_conj, "{name}");
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 50, "{pairs}");
}

#[test]
fn psl32_gassmann_pair() {
    let g = builtin("PSL(3,2)-deg7").unwrap().load(1000).unwrap();
    assert_eq!(g.order(), 168);
    let point = g.point_stabilizer(0).unwrap();
    let line = g.setwise_stabilizer(&fano_line(&g).unwrap()).unwrap();
    let pe = common::elements_of(&g, point.elements());
    let le = common::elements_of(&g, line.elements());
    assert_eq!(common::conjugate_union(&g, &pe), common::conjugate_union(&g, &le));
    assert!(!common::are_conjugate(&g, &pe, &le));

    let rep = kronecker_equivalent(&g, &point, &line).unwrap();
    assert!(rep.equivalent);
    assert!(!rep.conjugate);
    assert_eq!((rep.index_u, rep.index_up), (7, 7));
    assert_eq!(rep.classification, Classification::EqualUnionNonconjugate);

    let v = pigeonhole_bound_check(&g, &point, &line, 10_080, 1_000_000).unwrap();
    assert!(v.holds);
    assert_eq!(v.bound, 7);
    assert!(v.omega.exact && v.omega.size <= 7);
}

#[test]
fn s4_has_nonconjugate_equivalent_pair() {
    let g = builtin("S4-natural").unwrap().load(100).unwrap();
    let u = g.subgroup_from_perms(&[common::perm("(1 2)(3 4)", 4)]).unwrap();
    let v4 = g.subgroup_from_perms(&[common::perm("(1 2)(3 4)", 4), common::perm("(1 3)(2 4)", 4)]).unwrap();
    let rep = kronecker_equivalent(&g, &u, &v4).unwrap();
    assert!(rep.equivalent && !rep.conjugate);
    assert_eq!((rep.index_u, rep.index_up), (12, 6));
}
