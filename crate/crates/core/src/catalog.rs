//! Built-in group families and the `.grp` group file format.
//!
//! ```text
//! # comment lines allowed
//! degree 7
//! name PSL(3,2)
//! gen (1 2 3 4 5 6 7)
//! gen (2 3)(4 7)
//! ```

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::blocks::minimal_block_system;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    /// 1-based cycle notation.
    pub generators: Vec<String>,
    pub tags: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TagMismatch {
    pub tag: String,
    pub declared: bool,
    pub computed: bool,
}

pub const TAGS: [&str; 4] = ["transitive", "regular", "primitive", "imprimitive"];

impl CatalogEntry {
    fn new(name: impl Into<String>, degree: usize, generators: Vec<String>, tags: &[&str]) -> Self {
        CatalogEntry {
            name: name.into(),
            degree,
            generators,
            tags: tags.iter().map(|t| t.to_string()).collect(),
        }
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators.iter().map(|g| Permutation::parse_cycles(g, self.degree)).collect()
    }

    pub fn load(&self, max_order: usize) -> Result<PermGroup> {
        PermGroup::enumerate(self.permutations()?, self.degree, max_order)
    }

    /// Serializes to the `.grp` text format.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("degree {}\nname {}\n", self.degree, self.name);
        for g in &self.generators {
            s.push_str("gen ");
            s.push_str(g);
            s.push('\n');
        }
        s
    }

    /// Compares declared tags with the ones computed from the group.
    pub fn verify_tags(&self, group: &PermGroup) -> Vec<TagMismatch> {
        let computed = compute_tags(group);
        TAGS.iter()
            .filter_map(|&t| {
                let declared = self.tags.contains(t);
                let actual = computed.contains(t);
                (declared != actual).then(|| TagMismatch { tag: t.to_string(), declared, computed: actual })
            })
            .collect()
    }
}

pub fn compute_tags(group: &PermGroup) -> BTreeSet<String> {
    let mut tags = BTreeSet::new();
    if !group.is_transitive() {
        return tags;
    }
    tags.insert("transitive".to_string());
    if group.order() == group.degree() {
        tags.insert("regular".to_string());
    }
    if group.degree() >= 2 {
        let primitive = (1..group.degree()).all(|b| {
            minimal_block_system(group, 0, b).map(|s| s.partition.num_blocks() == 1).unwrap_or(false)
        });
        tags.insert(if primitive { "primitive" } else { "imprimitive" }.to_string());
    }
    tags
}

fn cycle(points: impl IntoIterator<Item = usize>) -> String {
    let pts: Vec<String> = points.into_iter().map(|p| p.to_string()).collect();
    format!("({})", pts.join(" "))
}

/// Reflection of the `n`-gon fixing vertex 1: `i -> 2 - i (mod n)`, 1-based.
fn reflection(n: usize) -> String {
    let mut s = String::new();
    for i in 2..=n {
        let j = n + 2 - i;
        if i < j {
            s.push_str(&cycle([i, j]));
        }
    }
    if s.is_empty() {
        "()".into()
    } else {
        s
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 2..=16 {
        let mut tags = vec!["transitive", "regular"];
        tags.push(if is_prime(n) { "primitive" } else { "imprimitive" });
        out.push(CatalogEntry::new(format!("C{n}-regular"), n, vec![cycle(1..=n)], &tags));
    }
    for n in 3..=12 {
        let tags = ["transitive", if is_prime(n) { "primitive" } else { "imprimitive" }];
        out.push(CatalogEntry::new(format!("D{n}-natural"), n, vec![cycle(1..=n), reflection(n)], &tags));
    }
    for n in 3..=7 {
        let mut tags = vec!["transitive", "primitive"];
        if n == 3 {
            tags.push("regular");
        }
        let gens = (3..=n).map(|k| cycle([1, 2, k])).collect();
        out.push(CatalogEntry::new(format!("A{n}-natural"), n, gens, &tags));
    }
    for n in 2..=7 {
        let mut tags = vec!["transitive", "primitive"];
        if n == 2 {
            tags.push("regular");
        }
        out.push(CatalogEntry::new(format!("S{n}-natural"), n, vec![cycle([1, 2]), cycle(1..=n)], &tags));
    }
    out.push(CatalogEntry::new(
        "C2wrC2-imprimitive",
        4,
        vec!["(1 2)".into(), "(1 3)(2 4)".into()],
        &["transitive", "imprimitive"],
    ));
    out.push(CatalogEntry::new(
        "C2wrC3-imprimitive",
        6,
        vec!["(1 2)".into(), "(1 3 5)(2 4 6)".into()],
        &["transitive", "imprimitive"],
    ));
    out.push(CatalogEntry::new(
        "AGL(1,5)-deg5",
        5,
        vec!["(1 2 3 4 5)".into(), "(2 3 5 4)".into()],
        &["transitive", "primitive"],
    ));
    out.push(CatalogEntry::new(
        "PSL(3,2)-deg7",
        7,
        vec!["(1 2 3 4 5 6 7)".into(), "(2 3)(4 7)".into()],
        &["transitive", "primitive"],
    ));
    out
}

pub fn builtin(name: &str) -> Result<CatalogEntry> {
    builtin_catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

/// Parses the `.grp` format. Tags are recomputed by the caller.
pub fn parse_group_file(text: &str) -> Result<CatalogEntry> {
    let mut degree: Option<usize> = None;
    let mut name: Option<String> = None;
    let mut gens: Vec<(usize, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "degree" => {
                if degree.is_some() {
                    return Err(Error::InvalidArgument("duplicate degree".into()).at_line(line_no));
                }
                let d: usize = rest
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad degree `{rest}`")).at_line(line_no))?;
                if d == 0 {
                    return Err(Error::InvalidArgument("degree must be positive".into()).at_line(line_no));
                }
                degree = Some(d);
            }
            "name" => name = Some(rest.to_string()),
            "gen" => {
                let d = degree
                    .ok_or_else(|| Error::InvalidArgument("`gen` before `degree`".into()).at_line(line_no))?;
                let p = Permutation::parse_cycles(rest, d).map_err(|e| e.at_line(line_no))?;
                gens.push((line_no, p.format_cycles()));
            }
            other => {
                return Err(Error::InvalidArgument(format!("unknown key `{other}`")).at_line(line_no));
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::InvalidArgument("missing `degree` line".into()).at_line(0))?;
    Ok(CatalogEntry {
        name: name.unwrap_or_else(|| format!("group-deg{degree}")),
        degree,
        generators: gens.into_iter().map(|(_, g)| g).collect(),
        tags: BTreeSet::new(),
    })
}

/// Reads a `.grp` file; the entry's name defaults to the file stem.
pub fn load_group_file(path: &Path) -> Result<CatalogEntry> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    let mut entry = parse_group_file(&text)?;
    if !text.lines().any(|l| l.trim_start().starts_with("name")) {
        if let Some(stem) = path.file_stem() {
            entry.name = stem.to_string_lossy().into_owned();
        }
    }
    Ok(entry)
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

/// Loads every `.grp` file directly inside `dir`, in file-name order.
/// Bad files become diagnostics instead of aborting the load.
pub fn load_directory(dir: &Path) -> Result<(Vec<CatalogEntry>, Vec<Diagnostic>)> {
    let rd = fs::read_dir(dir).map_err(|e| Error::Io { path: dir.display().to_string(), message: e.to_string() })?;
    let mut paths: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    let mut entries = Vec::new();
    let mut diags = Vec::new();
    for p in paths {
        match load_group_file(&p) {
            Ok(e) => entries.push(e),
            Err(e) => diags.push(Diagnostic { path: p.display().to_string(), message: e.to_string() }),
        }
    }
    Ok((entries, diags))
}

/// A 3-subset whose setwise stabilizer has index 7 in PSL(3,2) on the Fano
/// plane, i.e. a line. Returns the first such subset in lexicographic order.
pub fn fano_line(group: &PermGroup) -> Option<Vec<usize>> {
    let n = group.degree();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let set = [a, b, c];
                if group.setwise_stabilizer(&set).ok()?.index_in(group) == 7 {
                    return Some(set.to_vec());
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;

    #[test]
    fn builtin_entries_load_and_tags_hold() {
        for e in builtin_catalog() {
            let g = e.load(DEFAULT_MAX_ORDER).unwrap();
            assert_eq!(e.verify_tags(&g), vec![], "{}", e.name);
        }
    }

    #[test]
    fn known_orders() {
        let order = |n: &str| builtin(n).unwrap().load(DEFAULT_MAX_ORDER).unwrap().order();
        assert_eq!(order("C4-regular"), 4);
        assert_eq!(order("S5-natural"), 120);
        assert_eq!(order("PSL(3,2)-deg7"), 168);
        assert_eq!(order("AGL(1,5)-deg5"), 20);
        assert_eq!(order("A7-natural"), 2520);
        assert_eq!(order("D12-natural"), 24);
        assert_eq!(order("C2wrC3-imprimitive"), 24);
        assert!(builtin("nope").is_err());
    }

    #[test]
    fn builtins_round_trip_through_file_format() {
        for e in builtin_catalog() {
            let parsed = parse_group_file(&e.to_file_string()).unwrap();
            assert_eq!(parsed.name, e.name);
            assert_eq!(parsed.degree, e.degree);
            let a: Vec<Permutation> = e.permutations().unwrap();
            assert_eq!(parsed.permutations().unwrap(), a);
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_group_file("# x\ndegree 7\ngen (1 8)\n").unwrap_err();
        match err {
            Error::MalformedGroupFile { line, kind } => {
                assert_eq!(line, 3);
                assert_eq!(*kind, Error::PointOutOfRange { point: 8, degree: 7 });
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_group_file("gen (1 2)\n"), Err(Error::MalformedGroupFile { line: 1, .. })));
        assert!(matches!(parse_group_file("degree 3\nfoo 1\n"), Err(Error::MalformedGroupFile { line: 2, .. })));
        assert!(parse_group_file("# empty\n").is_err());
    }

    #[test]
    fn fano_line_found() {
        let g = builtin("PSL(3,2)-deg7").unwrap().load(DEFAULT_MAX_ORDER).unwrap();
        let line = fano_line(&g).unwrap();
        assert_eq!(g.setwise_stabilizer(&line).unwrap().order(), 24);
    }
}
