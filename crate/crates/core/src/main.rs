use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use derangement_core::analysis::{self, AnalysisReport, RunConfig};
use derangement_core::blocks::{max_normal_series, normal_partitions};
use derangement_core::catalog::{self, CatalogEntry};
use derangement_core::clique::write_dimacs;
use derangement_core::constructions::build_chain_indices;
use derangement_core::dgraph::build_graph;
use derangement_core::{Error, PermGroup};

#[derive(Parser)]
#[command(name = "derangement", version, about = "Derangement graphs of finite permutation groups")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Largest group order that will be enumerated.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_order: usize,
    /// Largest derangement graph (in vertices) that will be built.
    #[arg(long, global = true, default_value_t = 10_080)]
    max_graph_vertices: usize,
    /// Branch-and-bound node budget per clique search.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    node_budget: u64,
    /// Largest group order for full subgroup enumeration.
    #[arg(long, global = true, default_value_t = 2000)]
    lattice_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Exit 0 even if a clique search hit its node budget.
    #[arg(long, global = true)]
    allow_inexact: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, order, derangements, clique/coclique numbers, series length and chain certificate.
    Analyze(Source),
    /// Check the derangement claims on every transitive group of a corpus.
    Verify {
        /// Directory of .grp files (default: the built-in catalog).
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Scan subgroup pairs for equal conjugate unions.
    Kronecker {
        #[command(flatten)]
        source: Source,
        /// Every subgroup pair rather than one per conjugacy class pair.
        #[arg(long)]
        full: bool,
    },
    /// Exact clique and coclique numbers of the derangement graph.
    Clique {
        #[command(flatten)]
        source: Source,
        /// Also write the graph in DIMACS edge format.
        #[arg(long)]
        dimacs: Option<PathBuf>,
    },
    /// Normal block systems and a longest normal imprimitivity series.
    Series(Source),
    /// Randomized check of the partition-avoiding subset bound.
    #[command(name = "avoidance-test", alias = "lemma26-test")]
    AvoidanceTest {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// List the built-in catalog, optionally writing each entry as a .grp file.
    Catalog {
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// Built-in catalog name or path to a .grp file.
    group: Option<String>,
    /// Run on every .grp file in a directory instead.
    #[arg(long)]
    dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        max_order: cli.opts.max_order,
        max_graph_vertices: cli.opts.max_graph_vertices,
        node_budget: cli.opts.node_budget,
        lattice_cap: cli.opts.lattice_cap,
        seed: cli.opts.seed,
        allow_inexact: cli.opts.allow_inexact,
        full_pairs: matches!(cli.command, Command::Kronecker { full: true, .. }),
    };
    match run(&cli.command, &cfg, cli.opts.format) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn resolve(name: &str) -> Result<CatalogEntry, Error> {
    let path = Path::new(name);
    if path.is_file() || name.ends_with(".grp") {
        let mut e = catalog::load_group_file(path)?;
        e.tags.clear();
        return Ok(e);
    }
    catalog::builtin(name).or_else(|err| {
        let prefix = format!("{name}-");
        let mut hits = catalog::builtin_catalog().into_iter().filter(|e| e.name.starts_with(&prefix));
        match (hits.next(), hits.next()) {
            (Some(e), None) => Ok(e),
            _ => Err(err),
        }
    })
}

fn entries(src: &Source) -> Result<Vec<CatalogEntry>, Error> {
    match (&src.group, &src.dir) {
        (Some(g), None) => Ok(vec![resolve(g)?]),
        (None, Some(dir)) => {
            let (entries, diags) = catalog::load_directory(dir)?;
            for d in diags {
                eprintln!("warning: {}: {}", d.path, d.message);
            }
            Ok(entries)
        }
        _ => Err(Error::InvalidArgument("give exactly one of GROUP or --dir".into())),
    }
}

fn emit_json<T: Serialize>(out: &mut impl Write, items: &[T]) -> io::Result<()> {
    for it in items {
        serde_json::to_writer(&mut *out, it)?;
        writeln!(out)?;
    }
    Ok(())
}

fn run(cmd: &Command, cfg: &RunConfig, format: Format) -> Result<bool, Error> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let io_err = |e: io::Error| Error::Io { path: "<stdout>".into(), message: e.to_string() };
    match cmd {
        Command::Analyze(src) => {
            let list = entries(src)?;
            let reports: Vec<AnalysisReport> = list
                .par_iter()
                .map(|e| analysis::analyze(&e.name, &e.load(cfg.max_order)?, cfg))
                .collect::<Result<_, _>>()?;
            match format {
                Format::Json => emit_json(&mut out, &reports).map_err(io_err)?,
                Format::Csv => write_analysis_csv(&mut out, &reports).map_err(io_err)?,
                Format::Table => write_analysis_table(&mut out, &reports).map_err(io_err)?,
            }
            Ok(cfg.allow_inexact || reports.iter().all(|r| r.exact))
        }
        Command::Verify { dir } => {
            let (list, diags) = match dir {
                Some(d) => catalog::load_directory(d)?,
                None => (catalog::builtin_catalog(), Vec::new()),
            };
            for d in &diags {
                eprintln!("diagnostic: {}: {}", d.path, d.message);
            }
            let summary = analysis::verify_corpus(&list, cfg);
            match format {
                Format::Json => emit_json(&mut out, &[&summary]).map_err(io_err)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["group", "check", "passed", "exact", "detail"]).map_err(csv_err)?;
                    for g in &summary.groups {
                        if let Some(reason) = &g.skipped {
                            w.write_record([&g.group, "skipped", "", "", reason]).map_err(csv_err)?;
                        }
                        for c in &g.checks {
                            w.write_record([
                                g.group.as_str(),
                                c.name,
                                &c.passed.to_string(),
                                &c.exact.to_string(),
                                &c.detail,
                            ])
                            .map_err(csv_err)?;
                        }
                    }
                    w.flush().map_err(io_err)?;
                }
                Format::Table => {
                    for g in &summary.groups {
                        if let Some(reason) = &g.skipped {
                            writeln!(out, "{:24} SKIP  {reason}", g.group).map_err(io_err)?;
                            continue;
                        }
                        let status = if g.failures() == 0 { "PASS" } else { "FAIL" };
                        writeln!(out, "{:24} {status}  |G| = {}", g.group, g.order).map_err(io_err)?;
                        for c in g.checks.iter().filter(|c| !c.passed || !c.exact) {
                            writeln!(out, "    {} passed={} exact={} {}", c.name, c.passed, c.exact, c.detail)
                                .map_err(io_err)?;
                        }
                    }
                    writeln!(out, "{}", summary.message).map_err(io_err)?;
                }
            }
            Ok(summary.passed && diags.is_empty())
        }
        Command::Kronecker { source, .. } => {
            let mut ok = true;
            for e in entries(source)? {
                let g = e.load(cfg.max_order)?;
                let rep = analysis::kronecker_scan(&e.name, &g, cfg)?;
                ok &= rep.pigeonhole_failures == 0 && (cfg.allow_inexact || rep.inexact == 0);
                match format {
                    Format::Json => emit_json(&mut out, &rep.rows).map_err(io_err)?,
                    Format::Csv => {
                        let mut w = csv::Writer::from_writer(&mut out);
                        for r in &rep.rows {
                            w.serialize(r).map_err(csv_err)?;
                        }
                        w.flush().map_err(io_err)?;
                    }
                    Format::Table => {
                        writeln!(
                            out,
                            "{}: |G| = {}, {} subgroups in {} classes, {} rows",
                            rep.group,
                            rep.order,
                            rep.subgroups,
                            rep.subgroup_classes,
                            rep.rows.len()
                        )
                        .map_err(io_err)?;
                        writeln!(out, "{:>5} {:>5} {:>6} {:>6} {:>26} {:>6} {:>10}", "U", "U'", "[G:U]", "[G:U']", "class", "omega", "pigeonhole")
                            .map_err(io_err)?;
                        for r in rep.rows.iter().filter(|r| r.equivalent) {
                            writeln!(
                                out,
                                "{:>5} {:>5} {:>6} {:>6} {:>26} {:>6} {:>10}",
                                r.id_u,
                                r.id_up,
                                r.index_u,
                                r.index_up,
                                format!("{:?}", r.classification),
                                r.omega_coset_u,
                                r.pigeonhole_ok.map_or("-".into(), |b| b.to_string())
                            )
                            .map_err(io_err)?;
                        }
                        writeln!(out, "nonconjugate equivalent pairs: {}", rep.nonconjugate_equivalent).map_err(io_err)?;
                        writeln!(out, "envelope (n = [G:U'] -> max [G:U]):").map_err(io_err)?;
                        for p in &rep.envelope {
                            writeln!(out, "  {:>6} -> {}", p.n, p.max_index).map_err(io_err)?;
                        }
                    }
                }
            }
            Ok(ok)
        }
        Command::Clique { source, dimacs } => {
            let mut ok = true;
            #[derive(Serialize)]
            struct Row {
                schema: u32,
                group: String,
                order: usize,
                derangements: usize,
                omega: analysis::CliqueReport,
                alpha: analysis::CliqueReport,
            }
            let mut rows = Vec::new();
            for e in entries(source)? {
                let g = e.load(cfg.max_order)?;
                let gr = build_graph(&g, cfg.max_graph_vertices)?;
                if let Some(path) = dimacs {
                    let f = fs::File::create(path)
                        .map_err(|err| Error::Io { path: path.display().to_string(), message: err.to_string() })?;
                    write_dimacs(gr.adjacency(), io::BufWriter::new(f)).map_err(io_err)?;
                }
                let w = gr.clique_number(cfg.node_budget);
                let a = gr.coclique_number(cfg.node_budget);
                ok &= cfg.allow_inexact || (w.exact && a.exact);
                rows.push(Row {
                    schema: analysis::SCHEMA,
                    group: e.name.clone(),
                    order: g.order(),
                    derangements: gr.connection_set().count(),
                    omega: report(&g, &w),
                    alpha: report(&g, &a),
                });
            }
            match format {
                Format::Json => emit_json(&mut out, &rows).map_err(io_err)?,
                _ => {
                    let sep = if format == Format::Csv { "," } else { "  " };
                    writeln!(out, "{}", ["group", "order", "derangements", "omega", "omega_exact", "alpha", "alpha_exact"].join(sep))
                        .map_err(io_err)?;
                    for r in &rows {
                        writeln!(
                            out,
                            "{}",
                            [
                                r.group.clone(),
                                r.order.to_string(),
                                r.derangements.to_string(),
                                r.omega.value.to_string(),
                                r.omega.exact.to_string(),
                                r.alpha.value.to_string(),
                                r.alpha.exact.to_string()
                            ]
                            .join(sep)
                        )
                        .map_err(io_err)?;
                    }
                }
            }
            Ok(ok)
        }
        Command::Series(src) => {
            #[derive(Serialize)]
            struct Row {
                schema: u32,
                group: String,
                normal_partitions: Vec<derangement_core::Partition>,
                series: Vec<derangement_core::Partition>,
                length: usize,
                interior_length: usize,
                chain_indices: Vec<usize>,
                chain_witnesses: Vec<String>,
            }
            let mut rows = Vec::new();
            for e in entries(src)? {
                let g = e.load(cfg.max_order)?;
                let np = normal_partitions(&g)?;
                let s = max_normal_series(&g)?;
                let (idx, wit) = build_chain_indices(&g, &s)?;
                rows.push(Row {
                    schema: analysis::SCHEMA,
                    group: e.name.clone(),
                    normal_partitions: np.into_iter().map(|b| b.partition).collect(),
                    series: s.systems.iter().rev().map(|b| b.partition.clone()).collect(),
                    length: s.length(),
                    interior_length: s.interior_length(),
                    chain_indices: idx,
                    chain_witnesses: wit.iter().map(|&w| g.element(w).to_string()).collect(),
                });
            }
            match format {
                Format::Json => emit_json(&mut out, &rows).map_err(io_err)?,
                _ => {
                    for r in &rows {
                        writeln!(out, "{}: l = {} (interior {})", r.group, r.length, r.interior_length).map_err(io_err)?;
                        for p in &r.normal_partitions {
                            writeln!(out, "  normal {p}").map_err(io_err)?;
                        }
                        for (i, p) in r.series.iter().enumerate() {
                            writeln!(out, "  S_{} = {p}", r.length - i).map_err(io_err)?;
                        }
                        writeln!(out, "  chain indices {:?}, witnesses {:?}", r.chain_indices, r.chain_witnesses)
                            .map_err(io_err)?;
                    }
                }
            }
            Ok(true)
        }
        Command::AvoidanceTest { count } => {
            let suite = analysis::avoidance_suite(cfg.seed, *count)?;
            match format {
                Format::Json => emit_json(&mut out, &[&suite]).map_err(io_err)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    for c in &suite.cases {
                        w.serialize(c).map_err(csv_err)?;
                    }
                    w.flush().map_err(io_err)?;
                }
                Format::Table => {
                    writeln!(out, "seed {}: {} passed, {} failed", suite.seed, suite.passed, suite.failed)
                        .map_err(io_err)?;
                }
            }
            Ok(suite.failed == 0)
        }
        Command::Catalog { write } => {
            for e in catalog::builtin_catalog() {
                if let Some(dir) = write {
                    fs::create_dir_all(dir)
                        .map_err(|err| Error::Io { path: dir.display().to_string(), message: err.to_string() })?;
                    let path = dir.join(format!("{}.grp", e.name));
                    fs::write(&path, e.to_file_string())
                        .map_err(|err| Error::Io { path: path.display().to_string(), message: err.to_string() })?;
                }
                let tags: Vec<&str> = e.tags.iter().map(String::as_str).collect();
                writeln!(out, "{:24} degree {:2}  {}", e.name, e.degree, tags.join(",")).map_err(io_err)?;
            }
            Ok(true)
        }
    }
}

fn report(g: &PermGroup, r: &derangement_core::CliqueResult) -> analysis::CliqueReport {
    analysis::CliqueReport {
        value: r.size,
        exact: r.exact,
        witness: r.witness.iter().map(|&i| g.element(i).to_string()).collect(),
        nodes: r.nodes,
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io { path: "<stdout>".into(), message: e.to_string() }
}

fn write_analysis_table(out: &mut impl Write, reports: &[AnalysisReport]) -> io::Result<()> {
    writeln!(
        out,
        "{:24} {:>3} {:>6} {:>6} {:>5} {:>5} {:>8} {:>3} {:>5} {:>5}",
        "group", "n", "|G|", "|D|", "omega", "alpha", "a*w<=|G|", "l", "qp", "kappa"
    )?;
    for r in reports {
        let mark = |exact: bool| if exact { "" } else { "?" };
        writeln!(
            out,
            "{:24} {:>3} {:>6} {:>6} {:>5} {:>5} {:>8} {:>3} {:>5} {:>5}",
            r.group,
            r.degree,
            r.order,
            r.derangements,
            format!("{}{}", r.omega.value, mark(r.omega.exact)),
            format!("{}{}", r.alpha.value, mark(r.alpha.exact)),
            r.clique_coclique_holds,
            r.series.as_ref().map_or("-".into(), |s| s.length.to_string()),
            r.quasiprimitive.map_or("-".into(), |q| q.to_string()),
            r.certificate.as_ref().map_or("-".into(), |c| c.kappa.to_string()),
        )?;
    }
    Ok(())
}

fn write_analysis_csv(out: &mut impl Write, reports: &[AnalysisReport]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "group", "degree", "order", "derangements", "omega", "omega_exact", "alpha", "alpha_exact", "series_length",
        "quasiprimitive", "kappa", "chain_clique_size",
    ])?;
    for r in reports {
        w.write_record([
            r.group.clone(),
            r.degree.to_string(),
            r.order.to_string(),
            r.derangements.to_string(),
            r.omega.value.to_string(),
            r.omega.exact.to_string(),
            r.alpha.value.to_string(),
            r.alpha.exact.to_string(),
            r.series.as_ref().map_or(String::new(), |s| s.length.to_string()),
            r.quasiprimitive.map_or(String::new(), |q| q.to_string()),
            r.certificate.as_ref().map_or(String::new(), |c| c.kappa.to_string()),
            r.certificate.as_ref().map_or(String::new(), |c| c.clique_size.to_string()),
        ])?;
    }
    w.flush()
}
