//! Report assembly shared by the CLI and the FFI layer: per-group analysis,
//! corpus verification, pair scans and the randomized avoidance suite.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::{is_quasiprimitive, max_normal_series, Partition};
use crate::catalog::CatalogEntry;
use crate::clique::{CliqueResult, DEFAULT_NODE_BUDGET};
use crate::constructions::{chain_clique, meets_avoidance_bound, partition_avoiding_subset, CertificateSummary};
use crate::dgraph::{build_graph, is_intersecting, DEFAULT_MAX_GRAPH_VERTICES};
use crate::error::Result;
use crate::group::{PermGroup, DEFAULT_LATTICE_CAP, DEFAULT_MAX_ORDER};
use crate::kronecker::{scan_pairs, Classification, ScanOptions};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_order: usize,
    pub max_graph_vertices: usize,
    pub node_budget: u64,
    pub lattice_cap: usize,
    pub seed: u64,
    pub allow_inexact: bool,
    pub full_pairs: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_order: DEFAULT_MAX_ORDER,
            max_graph_vertices: DEFAULT_MAX_GRAPH_VERTICES,
            node_budget: DEFAULT_NODE_BUDGET,
            lattice_cap: DEFAULT_LATTICE_CAP,
            seed: 0,
            allow_inexact: false,
            full_pairs: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueReport {
    pub value: usize,
    pub exact: bool,
    pub witness: Vec<String>,
    pub nodes: u64,
}

impl CliqueReport {
    fn new(group: &PermGroup, r: &CliqueResult) -> Self {
        CliqueReport {
            value: r.size,
            exact: r.exact,
            witness: r.witness.iter().map(|&i| group.element(i).to_string()).collect(),
            nodes: r.nodes,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    /// Strict refinement steps from the discrete to the one-block partition.
    pub length: usize,
    /// Systems strictly between the two trivial partitions.
    pub interior_length: usize,
    /// Discrete partition first.
    pub partitions: Vec<Partition>,
    pub kernel_orders: Vec<usize>,
    pub normal_partitions: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub group: String,
    pub degree: usize,
    pub order: usize,
    pub transitive: bool,
    pub derangements: usize,
    pub omega: CliqueReport,
    pub alpha: CliqueReport,
    pub alpha_times_omega: usize,
    pub clique_coclique_holds: bool,
    pub series: Option<SeriesReport>,
    pub quasiprimitive: Option<bool>,
    pub certificate: Option<CertificateSummary>,
    pub exact: bool,
}

pub fn analyze(name: &str, group: &PermGroup, cfg: &RunConfig) -> Result<AnalysisReport> {
    let graph = build_graph(group, cfg.max_graph_vertices)?;
    let omega = graph.clique_number(cfg.node_budget);
    let alpha = graph.coclique_number(cfg.node_budget);
    let transitive = group.is_transitive();
    let (series, quasiprimitive, certificate) = if transitive {
        let s = max_normal_series(group)?;
        let cert = chain_clique(group, &s)?;
        let report = SeriesReport {
            length: s.length(),
            interior_length: s.interior_length(),
            partitions: s.systems.iter().rev().map(|b| b.partition.clone()).collect(),
            kernel_orders: s.kernels.iter().rev().map(|k| k.order()).collect(),
            normal_partitions: crate::blocks::normal_partitions(group)?.len(),
        };
        (Some(report), Some(is_quasiprimitive(group)), Some(cert.summary(group)))
    } else {
        (None, None, None)
    };
    Ok(AnalysisReport {
        schema: SCHEMA,
        group: name.to_string(),
        degree: group.degree(),
        order: group.order(),
        transitive,
        derangements: graph.connection_set().count(),
        alpha_times_omega: alpha.size * omega.size,
        clique_coclique_holds: alpha.size * omega.size <= group.order(),
        exact: omega.exact && alpha.exact,
        omega: CliqueReport::new(group, &omega),
        alpha: CliqueReport::new(group, &alpha),
        series,
        quasiprimitive,
        certificate,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub exact: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupVerification {
    pub group: String,
    pub degree: usize,
    pub order: usize,
    pub skipped: Option<String>,
    pub checks: Vec<Check>,
}

impl GroupVerification {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn inexact(&self) -> usize {
        self.checks.iter().filter(|c| !c.exact).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub schema: u32,
    pub groups: Vec<GroupVerification>,
    pub verified: usize,
    pub skipped: usize,
    pub failures: usize,
    pub inexact: usize,
    pub passed: bool,
    pub message: String,
}

fn check(name: &'static str, passed: bool, exact: bool, detail: String) -> Check {
    Check { name, passed, exact, detail }
}

/// Runs the per-group claims on one transitive group.
pub fn verify_group(entry: &CatalogEntry, cfg: &RunConfig) -> GroupVerification {
    let mut v = GroupVerification {
        group: entry.name.clone(),
        degree: entry.degree,
        order: 0,
        skipped: None,
        checks: Vec::new(),
    };
    let group = match entry.load(cfg.max_order) {
        Ok(g) => g,
        Err(e) => {
            v.checks.push(check("load", false, true, e.to_string()));
            return v;
        }
    };
    v.order = group.order();
    if !group.is_transitive() {
        v.skipped = Some("not transitive".into());
        return v;
    }
    if let Err(e) = verify_checks(entry, &group, cfg, &mut v.checks) {
        v.checks.push(check("error", false, true, e.to_string()));
    }
    v
}

fn verify_checks(entry: &CatalogEntry, group: &PermGroup, cfg: &RunConfig, out: &mut Vec<Check>) -> Result<()> {
    let n = group.degree();
    if !entry.tags.is_empty() {
        let mism = entry.verify_tags(group);
        out.push(check("tags", mism.is_empty(), true, format!("{mism:?}")));
    }
    let graph = build_graph(group, cfg.max_graph_vertices)?;
    let der = graph.connection_set().count();
    let omega = graph.clique_number(cfg.node_budget);
    let alpha = graph.coclique_number(cfg.node_budget);
    out.push(check("regular", graph.is_regular(), true, format!("|D| = {der}")));
    if n >= 2 {
        out.push(check(
            "jordan",
            der >= 1 && omega.size >= 2,
            true,
            format!("|D| = {der}, omega >= {}", omega.size),
        ));
    }
    if n >= 3 {
        let (found, r) = graph.triangle_exists(cfg.node_budget);
        out.push(check("triangle", found, found || r.exact, format!("triangle found: {found}")));
    }
    let exact = omega.exact && alpha.exact;
    out.push(check(
        "clique-coclique",
        alpha.size * omega.size <= group.order(),
        exact,
        format!("alpha {} * omega {} <= |G| {}", alpha.size, omega.size, group.order()),
    ));
    out.push(check(
        "coclique-intersecting",
        is_intersecting(group, &alpha.witness),
        true,
        format!("witness of size {}", alpha.witness.len()),
    ));
    let series = max_normal_series(group)?;
    let qp = is_quasiprimitive(group);
    if n >= 2 {
        out.push(check(
            "quasiprimitive-bridge",
            (series.length() == 1) == qp,
            true,
            format!("l = {}, quasiprimitive = {qp}", series.length()),
        ));
    }
    match chain_clique(group, &series) {
        Ok(cert) => {
            let pow = 1usize << cert.kappa.saturating_sub(1);
            out.push(check(
                "chain-clique",
                pow <= omega.size || !omega.exact,
                omega.exact,
                format!("kappa = {}, |C| = {}, 2^(kappa-1) = {pow}, omega = {}", cert.kappa, cert.clique.len(), omega.size),
            ));
        }
        Err(e) => out.push(check("chain-clique", false, true, e.to_string())),
    }
    Ok(())
}

pub fn verify_corpus(entries: &[CatalogEntry], cfg: &RunConfig) -> VerifySummary {
    let groups: Vec<GroupVerification> = entries.par_iter().map(|e| verify_group(e, cfg)).collect();
    let skipped = groups.iter().filter(|g| g.skipped.is_some()).count();
    let verified = groups.iter().filter(|g| g.skipped.is_none() && !g.checks.is_empty()).count();
    let failures: usize = groups.iter().map(GroupVerification::failures).sum();
    let inexact: usize = groups.iter().map(GroupVerification::inexact).sum();
    let passed = verified > 0 && failures == 0 && (inexact == 0 || cfg.allow_inexact);
    let message = if verified == 0 {
        "nothing verified".to_string()
    } else if passed {
        format!("{verified} groups verified")
    } else {
        format!("{failures} failures, {inexact} inexact results over {verified} groups")
    };
    VerifySummary { schema: SCHEMA, groups, verified, skipped, failures, inexact, passed, message }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReportRow {
    pub schema: u32,
    pub group: String,
    #[serde(rename = "idU")]
    pub id_u: usize,
    #[serde(rename = "idUp")]
    pub id_up: usize,
    #[serde(rename = "orderU")]
    pub order_u: usize,
    #[serde(rename = "orderUp")]
    pub order_up: usize,
    #[serde(rename = "indexU")]
    pub index_u: usize,
    #[serde(rename = "indexUp")]
    pub index_up: usize,
    pub equivalent: bool,
    pub conjugate: bool,
    pub classification: Classification,
    #[serde(rename = "omega_cosetU")]
    pub omega_coset_u: usize,
    pub omega_exact: bool,
    pub pigeonhole_ok: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopePoint {
    pub n: usize,
    pub max_index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct KroneckerScanReport {
    pub schema: u32,
    pub group: String,
    pub order: usize,
    pub subgroups: usize,
    pub subgroup_classes: usize,
    pub rows: Vec<PairReportRow>,
    pub envelope: Vec<EnvelopePoint>,
    pub nonconjugate_equivalent: usize,
    pub pigeonhole_failures: usize,
    pub inexact: usize,
}

pub fn kronecker_scan(name: &str, group: &PermGroup, cfg: &RunConfig) -> Result<KroneckerScanReport> {
    let scan = scan_pairs(
        group,
        &ScanOptions {
            full: cfg.full_pairs,
            lattice_cap: cfg.lattice_cap,
            max_vertices: cfg.max_graph_vertices,
            node_budget: cfg.node_budget,
        },
    )?;
    let rows: Vec<PairReportRow> = scan
        .rows
        .iter()
        .map(|r| PairReportRow {
            schema: SCHEMA,
            group: name.to_string(),
            id_u: r.id_u,
            id_up: r.id_up,
            order_u: r.order_u,
            order_up: r.order_up,
            index_u: r.index_u,
            index_up: r.index_up,
            equivalent: r.equivalent,
            conjugate: r.conjugate,
            classification: r.classification,
            omega_coset_u: r.omega_coset_u,
            omega_exact: r.omega_exact,
            pigeonhole_ok: r.pigeonhole_ok,
        })
        .collect();
    let classes: BTreeSet<usize> = scan.class_of.iter().copied().collect();
    Ok(KroneckerScanReport {
        schema: SCHEMA,
        group: name.to_string(),
        order: group.order(),
        subgroups: scan.subgroups.len(),
        subgroup_classes: classes.len(),
        nonconjugate_equivalent: rows
            .iter()
            .filter(|r| r.classification == Classification::EqualUnionNonconjugate)
            .count(),
        pigeonhole_failures: rows.iter().filter(|r| r.pigeonhole_ok == Some(false)).count(),
        inexact: rows.iter().filter(|r| !r.omega_exact).count(),
        envelope: scan.envelope.iter().map(|(&n, &m)| EnvelopePoint { n, max_index: m }).collect(),
        rows,
    })
}

/// One randomized instance for the partition-avoiding subset.
#[derive(Clone, Debug, Serialize)]
pub struct AvoidanceCase {
    pub s: usize,
    pub sigma: usize,
    pub a: usize,
    pub kept: usize,
    pub avoids_all_parts: bool,
    pub meets_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AvoidanceSuite {
    pub schema: u32,
    pub seed: u64,
    pub cases: Vec<AvoidanceCase>,
    pub passed: usize,
    pub failed: usize,
}

/// Random partition of `ground` into parts of size at least `a`.
pub fn random_partition<R: Rng>(rng: &mut R, ground: &[usize], a: usize) -> Vec<Vec<usize>> {
    let mut xs = ground.to_vec();
    xs.shuffle(rng);
    let s = xs.len();
    let b = rng.gen_range(1..=s / a);
    let mut sizes = vec![a; b];
    for _ in 0..s - a * b {
        let k = rng.gen_range(0..b);
        sizes[k] += 1;
    }
    let mut parts = Vec::with_capacity(b);
    let mut it = xs.into_iter();
    for sz in sizes {
        parts.push(it.by_ref().take(sz).collect());
    }
    parts
}

/// `count` seeded instances with `s <= 40`, `sigma <= 6`, `a` in {2, 3, 4}.
pub fn avoidance_suite(seed: u64, count: usize) -> Result<AvoidanceSuite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(count);
    for _ in 0..count {
        let a = *[2usize, 3, 4].choose(&mut rng).expect("non-empty");
        let s = rng.gen_range(a..=40);
        let sigma = rng.gen_range(0..=6);
        let ground: Vec<usize> = (1..=s).collect();
        let partitions: Vec<Vec<Vec<usize>>> = (0..sigma).map(|_| random_partition(&mut rng, &ground, a)).collect();
        let y = partition_avoiding_subset(&ground, &partitions, a)?;
        let ys: BTreeSet<usize> = y.iter().copied().collect();
        let avoids = partitions.iter().flatten().all(|part| !part.iter().all(|e| ys.contains(e)));
        let meets = meets_avoidance_bound(y.len(), s, a, sigma as u32);
        cases.push(AvoidanceCase { s, sigma, a, kept: y.len(), avoids_all_parts: avoids, meets_bound: meets });
    }
    let passed = cases.iter().filter(|c| c.avoids_all_parts && c.meets_bound).count();
    Ok(AvoidanceSuite { schema: SCHEMA, seed, failed: cases.len() - passed, passed, cases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    #[test]
    fn analyze_s4() {
        let e = builtin("S4-natural").unwrap();
        let g = e.load(DEFAULT_MAX_ORDER).unwrap();
        let r = analyze(&e.name, &g, &RunConfig::default()).unwrap();
        assert_eq!((r.degree, r.order, r.derangements), (4, 24, 9));
        assert_eq!((r.omega.value, r.alpha.value), (4, 6));
        assert_eq!(r.alpha_times_omega, 24);
        assert_eq!(r.series.as_ref().unwrap().length, 1);
        assert_eq!(r.quasiprimitive, Some(true));
        assert!(r.exact);
    }

    #[test]
    fn analyze_c6_and_degree_one() {
        let g = builtin("C6-regular").unwrap().load(DEFAULT_MAX_ORDER).unwrap();
        let r = analyze("C6", &g, &RunConfig::default()).unwrap();
        assert_eq!((r.omega.value, r.alpha.value), (6, 1));
        assert_eq!(r.series.unwrap().length, 2);
        let t = PermGroup::enumerate(vec![], 1, 10).unwrap();
        let r = analyze("trivial", &t, &RunConfig::default()).unwrap();
        assert_eq!((r.degree, r.omega.value, r.derangements), (1, 1, 0));
    }

    #[test]
    fn verify_filters_and_guards() {
        let cfg = RunConfig::default();
        let s = verify_corpus(&[], &cfg);
        assert!(!s.passed);
        assert_eq!(s.message, "nothing verified");
        let doctored = crate::catalog::parse_group_file("degree 4\nname bad\ngen (1 2)\n").unwrap();
        let s = verify_corpus(std::slice::from_ref(&doctored), &cfg);
        assert_eq!(s.skipped, 1);
        assert!(!s.passed);
        let good = builtin("D5-natural").unwrap();
        let s = verify_corpus(&[doctored, good], &cfg);
        assert!(s.passed, "{:?}", s);
        assert_eq!((s.verified, s.skipped), (1, 1));
    }

    #[test]
    fn avoidance_suite_is_deterministic() {
        let a = avoidance_suite(7, 20).unwrap();
        let b = avoidance_suite(7, 20).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.failed, 0);
    }
}
