#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use derangement_core::{PermGroup, Permutation};

pub type Elements = BTreeSet<Vec<u32>>;

/// `p` then `q`, computed from raw image vectors.
pub fn then(p: &[u32], q: &[u32]) -> Vec<u32> {
    p.iter().map(|&i| q[i as usize]).collect()
}

pub fn inv(p: &[u32]) -> Vec<u32> {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

pub fn closure(degree: usize, gens: &[Vec<u32>]) -> Elements {
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = then(&x, g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn images(group: &PermGroup) -> Vec<Vec<u32>> {
    group.elements().iter().map(|p| p.images().to_vec()).collect()
}

/// Every subgroup, grown one element at a time from the trivial subgroup.
pub fn all_subgroups(group: &PermGroup) -> BTreeSet<Elements> {
    let degree = group.degree();
    let elems = images(group);
    let trivial = closure(degree, &[]);
    let mut found = BTreeSet::from([trivial.clone()]);
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in &elems {
            if h.contains(g) {
                continue;
            }
            let mut gens: Vec<Vec<u32>> = h.iter().cloned().collect();
            gens.push(g.clone());
            let k = closure(degree, &gens);
            if found.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    found
}

pub fn is_normal(group: &PermGroup, h: &Elements) -> bool {
    group.generators().iter().all(|g| {
        let g = g.images();
        let gi = inv(g);
        h.iter().all(|x| h.contains(&then(&then(&gi, x), g)))
    })
}

/// Orbits of `h` as a sorted list of sorted blocks.
pub fn orbit_partition(degree: usize, h: &Elements) -> Vec<Vec<usize>> {
    let mut blocks: BTreeSet<Vec<usize>> = BTreeSet::new();
    for p in 0..degree {
        let orbit: BTreeSet<usize> = h.iter().map(|x| x[p] as usize).collect();
        blocks.insert(orbit.into_iter().collect());
    }
    blocks.into_iter().collect()
}

pub fn is_derangement(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &j)| i as u32 != j)
}

/// Maximum clique of the derangement graph by plain enumeration of all cliques.
pub fn brute_clique(group: &PermGroup) -> usize {
    let elems = images(group);
    let n = elems.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| x != y && elems[x].iter().zip(&elems[y]).all(|(a, b)| a != b)).collect())
        .collect();
    fn grow(adj: &[Vec<bool>], clique: &mut Vec<usize>, start: usize, best: &mut usize) {
        *best = (*best).max(clique.len());
        for v in start..adj.len() {
            if clique.iter().all(|&u| adj[u][v]) {
                clique.push(v);
                grow(adj, clique, v + 1, best);
                clique.pop();
            }
        }
    }
    let mut best = 0;
    grow(&adj, &mut Vec::new(), 0, &mut best);
    best
}

/// Elements `x` with `g x g^-1` in `u` for some `g`.
pub fn conjugate_union(group: &PermGroup, u: &Elements) -> BTreeSet<Vec<u32>> {
    let elems = images(group);
    elems
        .iter()
        .filter(|x| elems.iter().any(|g| u.contains(&then(&then(g, x), &inv(g)))))
        .cloned()
        .collect()
}

pub fn are_conjugate(group: &PermGroup, a: &Elements, b: &Elements) -> bool {
    a.len() == b.len()
        && images(group).iter().any(|g| {
        let gi = inv(g);
        a.iter().all(|x| b.contains(&then(&then(&gi, x), g)))
    })
}

pub fn elements_of(group: &PermGroup, idx: &[usize]) -> Elements {
    idx.iter().map(|&i| group.element(i).images().to_vec()).collect()
}

pub fn perm(text: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(text, degree).unwrap()
}
