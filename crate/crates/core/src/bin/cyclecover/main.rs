//! `cyclecover` command-line tool.
//!
//! Graph inputs are `.cg` files (`-` reads stdin). Vertices are printed
//! 1-based. Exit codes: 0 pass, 1 fail, 2 input error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cyclecover::conditions::{
    check_ore, check_ore_general, check_ore_pair, check_posa_general, classify_colouring, ColouringTag, ConditionReport,
};
use cyclecover::constructions::{build_four_blob, build_gkm, build_ore_not_posa, verify_gkm, GkmSpec, InnerColouring};
use cyclecover::graph::{
    parse_cg, union_subgraph, write_cg, ColouredGraph, ComponentId, ComponentMap, MonochromaticComponent, Subgraph,
};
use cyclecover::harness::campaign::{Ctx, RunOptions};
use cyclecover::harness::{generate, replay_anomaly, run_campaign, CampaignConfig, GeneratorKind, GeneratorSpec};
use cyclecover::matching::{
    find_contracting_set, max_contraction_bruteforce_capped, max_contraction_witness, max_two_matching,
    DEFAULT_BRUTE_FORCE_CAP,
};
use cyclecover::partition::{cap_from_env, CyclePartition, PartitionSearch};
use cyclecover::rational::{parse_rational, Rational};
use cyclecover::structural::{
    find_cover_triple, find_spanning_pair, is_double_cover, two_components_cover, ComponentFamily,
};

#[derive(Parser)]
#[command(
    name = "cyclecover",
    version,
    about = "Monochromatic cycle partitions of 2-edge-coloured graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree conditions and colouring classes.
    Check(CheckArgs),
    /// 2-matchings and stable-set contraction.
    Matching(MatchingArgs),
    /// Monochromatic components, largest first.
    Components { file: PathBuf },
    /// Emit a generated graph as `.cg`.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Verify the advertised properties of a construction.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Search for a partition into k generalized monochromatic cycles.
    Partition(PartitionArgs),
    /// Largest number of vertices k disjoint generalized cycles can cover.
    Maxcover(MaxcoverArgs),
    /// Component families.
    Structural(StructuralArgs),
    /// Run a fuzz campaign described by a TOML file.
    Fuzz(FuzzArgs),
    /// Re-run the check recorded in an archived anomaly file.
    Replay { file: PathBuf },
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    /// d_j > j + x n + offset for 1 <= j < y n.
    #[arg(long, num_args = 3, value_names = ["X", "Y", "OFFSET"], allow_hyphen_values = true)]
    posa: Option<Vec<String>>,
    /// deg u + deg v >= (4/3 + gamma) n on non-edges.
    #[arg(long, value_name = "GAMMA")]
    ore: Option<String>,
    /// deg u + deg v >= t n on non-edges.
    #[arg(long, value_name = "T")]
    ore_general: Option<String>,
    #[arg(long, num_args = 2, value_names = ["DELTA", "GAMMA"])]
    ore_pair: Option<Vec<String>>,
    #[arg(long, num_args = 2, value_names = ["DELTA", "GAMMA"])]
    classify: Option<Vec<String>>,
    /// Exception graph for --ore-pair and --classify (default: empty).
    #[arg(long, value_name = "X.cg")]
    except: Option<PathBuf>,
}

#[derive(Args)]
struct MatchingArgs {
    file: PathBuf,
    #[arg(long)]
    max2: bool,
    #[arg(long)]
    contraction_max: bool,
    #[arg(long, value_name = "C")]
    contracting_above: Option<i64>,
    /// Restrict to the union of these components, e.g. `r0,b1`.
    #[arg(long, value_delimiter = ',')]
    components: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum GenCommand {
    Gkm {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// red, blue or seed:S
        #[arg(long, default_value = "red")]
        inner: String,
    },
    OreNotPosa {
        #[arg(long)]
        m: usize,
    },
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    FourBlob {
        #[arg(long)]
        s: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    Gkm {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "red")]
        inner: String,
    },
}

#[derive(Args)]
struct PartitionArgs {
    file: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    distinct: bool,
    /// Defaults to the vertex count.
    #[arg(long)]
    min_cover: Option<usize>,
}

#[derive(Args)]
struct MaxcoverArgs {
    file: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    distinct: bool,
}

#[derive(Args)]
struct StructuralArgs {
    file: PathBuf,
    #[arg(long)]
    spanning_pair: bool,
    #[arg(long, requires = "spanning_pair")]
    no_contracting: bool,
    #[arg(long, value_name = "ETA")]
    cover_triple: Option<String>,
    #[arg(long)]
    two_cover: bool,
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    double_cover: Option<Vec<String>>,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Add per-row timings (output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

enum Verdict {
    Pass,
    Fail,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(path: &Path) -> Result<ColouredGraph> {
    parse_cg(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn q(s: &str) -> Result<Rational> {
    parse_rational(s).with_context(|| format!("bad rational '{s}'"))
}

fn json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn one_based(vs: &[usize]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn print_report(out: &mut dyn Write, r: &ConditionReport) -> Result<Verdict> {
    writeln!(out, "{}", if r.passed() { "PASS" } else { "FAIL" })?;
    let mut shown = r.clone();
    shown.witness = shown.witness.map(|w| w.one_based());
    json(out, &shown)?;
    Ok(r.passed().into())
}

fn run(cmd: Command, out: &mut dyn Write) -> Result<Verdict> {
    match cmd {
        Command::Check(a) => check(a, out),
        Command::Matching(a) => matching(a, out),
        Command::Components { file } => {
            let g = load(&file)?;
            let map = ComponentMap::new(&g);
            for c in map.all() {
                writeln!(out, "{} size {}: {}", c.key(), c.len(), one_based(&c.vertices))?;
            }
            Ok(Verdict::Pass)
        }
        Command::Gen(gc) => {
            let (g, label) = match gc {
                GenCommand::Gkm { k, m, inner } => {
                    let spec = GkmSpec::new(k, m, inner.parse()?)?;
                    (build_gkm(spec)?.graph, format!("gkm k={k} m={m} inner={}", spec.inner))
                }
                GenCommand::OreNotPosa { m } => (build_ore_not_posa(m)?, format!("ore-not-posa m={m}")),
                GenCommand::Gnp { n, p, q: qq, seed } => {
                    let kind = GeneratorKind::Gnp {
                        n,
                        p: q(&p)?,
                        q: q(&qq)?,
                    };
                    let label = format!("{kind} seed={seed}");
                    (generate(&GeneratorSpec { kind, seed })?, label)
                }
                GenCommand::FourBlob { s } => (build_four_blob(s), format!("four-blob s={s}")),
            };
            write_cg(&mut *out, &g, &[label])?;
            Ok(Verdict::Pass)
        }
        Command::Verify(VerifyCommand::Gkm { k, m, inner }) => {
            let inner: InnerColouring = inner.parse()?;
            let report = verify_gkm(GkmSpec::new(k, m, inner)?, cap_from_env())?;
            writeln!(
                out,
                "posa clause: {}",
                if report.posa_clause { "holds" } else { "FAILS" }
            )?;
            writeln!(
                out,
                "cover clause: {}",
                match report.cover_clause {
                    Some(true) => "holds",
                    Some(false) => "FAILS",
                    None => "skipped",
                }
            )?;
            json(out, &report)?;
            Ok((report.posa_clause && report.cover_clause != Some(false)).into())
        }
        Command::Partition(a) => {
            let g = load(&a.file)?;
            let search = PartitionSearch::new(&g, cap_from_env())?;
            let min_cover = a.min_cover.unwrap_or(g.n());
            match search.find(a.k, a.distinct, min_cover)? {
                Some(p) => {
                    writeln!(out, "found: {} of {} vertices covered", p.covered, g.n())?;
                    print_partition(out, &p)?;
                    Ok(Verdict::Pass)
                }
                None => {
                    writeln!(out, "none: no partition covers {min_cover} vertices")?;
                    Ok(Verdict::Fail)
                }
            }
        }
        Command::Maxcover(a) => {
            let g = load(&a.file)?;
            let (value, p) = PartitionSearch::new(&g, cap_from_env())?.max_cover(a.k, a.distinct)?;
            writeln!(out, "cover {value} of {}", g.n())?;
            print_partition(out, &p)?;
            Ok(Verdict::Pass)
        }
        Command::Structural(a) => structural(a, out),
        Command::Fuzz(a) => {
            let cfg = CampaignConfig::from_toml(&read_text(&a.config)?)?;
            let res = run_campaign(&cfg, Some(&a.out), &RunOptions { timings: a.timings })?;
            writeln!(
                out,
                "campaign {}: {} trials, {} rows",
                cfg.name,
                cfg.trials,
                res.rows.len()
            )?;
            for s in &res.summaries {
                writeln!(out, "{s}")?;
            }
            writeln!(out, "anomalies archived: {}", res.anomalies.len())?;
            writeln!(out, "hard failures: {}", res.hard_failures)?;
            Ok((res.hard_failures == 0).into())
        }
        Command::Replay { file } => {
            let rep = replay_anomaly(&read_text(&file)?, Ctx::default())?;
            writeln!(out, "check: {}", rep.check.kind.label())?;
            writeln!(out, "recorded: {} {}", rep.expected_outcome, rep.expected_detail)?;
            writeln!(out, "replayed: {} {}", rep.outcome, rep.detail)?;
            writeln!(out, "regenerates: {}", rep.regenerates)?;
            writeln!(out, "{}", if rep.reproduced() { "REPRODUCED" } else { "DIFFERS" })?;
            Ok(rep.reproduced().into())
        }
    }
}

fn print_partition(out: &mut dyn Write, p: &CyclePartition) -> Result<()> {
    for part in &p.parts {
        writeln!(out, "{}", part.to_line())?;
    }
    Ok(())
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Result<Verdict> {
    let g = load(&a.file)?;
    let exception = |g: &ColouredGraph| -> Result<ColouredGraph> {
        match &a.except {
            Some(p) => load(p),
            None => Ok(ColouredGraph::empty(g.n())),
        }
    };
    let chosen = [
        a.posa.is_some(),
        a.ore.is_some(),
        a.ore_general.is_some(),
        a.ore_pair.is_some(),
        a.classify.is_some(),
    ]
    .iter()
    .filter(|b| **b)
    .count();
    if chosen != 1 {
        bail!("choose exactly one of --posa, --ore, --ore-general, --ore-pair, --classify");
    }
    if let Some(v) = &a.posa {
        let offset: i64 = v[2].parse().with_context(|| format!("bad offset '{}'", v[2]))?;
        return print_report(out, &check_posa_general(&g, q(&v[0])?, q(&v[1])?, offset));
    }
    if let Some(gamma) = &a.ore {
        return print_report(out, &check_ore(&g, q(gamma)?));
    }
    if let Some(t) = &a.ore_general {
        return print_report(out, &check_ore_general(&g, q(t)?));
    }
    if let Some(v) = &a.ore_pair {
        let x = exception(&g)?;
        return print_report(out, &check_ore_pair(&g, &x, q(&v[0])?, q(&v[1])?)?);
    }
    let v = a.classify.as_ref().expect("one option chosen");
    let x = exception(&g)?;
    let class = classify_colouring(&g, &x, q(&v[0])?, q(&v[1])?);
    let comps: Vec<&MonochromaticComponent> = match &class.tag {
        ColouringTag::Plain { r } => {
            writeln!(out, "PLAIN")?;
            vec![r]
        }
        ColouringTag::Mixed { r, b } => {
            writeln!(out, "MIXED")?;
            vec![r, b]
        }
        ColouringTag::Split { r1, r2 } => {
            writeln!(out, "SPLIT")?;
            vec![r1, r2]
        }
        ColouringTag::Unclassified { reason } => {
            writeln!(out, "UNCLASSIFIED: {reason}")?;
            vec![]
        }
    };
    for c in comps {
        writeln!(out, "{} size {}: {}", c.key(), c.len(), one_based(&c.vertices))?;
    }
    Ok((!matches!(class.tag, ColouringTag::Unclassified { .. })).into())
}

fn parse_ids(ids: &[String]) -> Result<Vec<ComponentId>> {
    ids.iter()
        .map(|s| s.trim().parse::<ComponentId>().map_err(|e| anyhow::anyhow!("{e}")))
        .collect()
}

fn host(g: &ColouredGraph, ids: &Option<Vec<String>>) -> Result<Subgraph> {
    match ids {
        None => Ok(Subgraph::from_graph(g)),
        Some(ids) => {
            let map = ComponentMap::new(g);
            let comps = parse_ids(ids)?
                .into_iter()
                .map(|k| map.resolve(k).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(union_subgraph(g, &comps)?)
        }
    }
}

fn matching(a: MatchingArgs, out: &mut dyn Write) -> Result<Verdict> {
    let g = load(&a.file)?;
    let h = host(&g, &a.components)?;
    let modes = [a.max2, a.contraction_max, a.contracting_above.is_some()];
    if modes.iter().filter(|b| **b).count() != 1 {
        bail!("choose exactly one of --max2, --contraction-max, --contracting-above");
    }
    if a.max2 {
        let w = max_two_matching(&h);
        writeln!(out, "size {}", w.size())?;
        for &(u, v, weight) in w.weights() {
            writeln!(out, "w {} {} {weight}", u + 1, v + 1)?;
        }
        return Ok(Verdict::Pass);
    }
    if a.contraction_max {
        let w = if h.order() <= DEFAULT_BRUTE_FORCE_CAP {
            max_contraction_bruteforce_capped(&h, DEFAULT_BRUTE_FORCE_CAP)?
        } else {
            max_contraction_witness(&h)
        };
        writeln!(out, "max_contraction {}", w.contraction)?;
        writeln!(out, "set {}", one_based(&w.set))?;
        return Ok(Verdict::Pass);
    }
    let c = a.contracting_above.expect("mode chosen");
    if c < 0 {
        bail!("contraction bound must be non-negative");
    }
    match find_contracting_set(&h, c, DEFAULT_BRUTE_FORCE_CAP) {
        Some(w) => {
            writeln!(out, "found contraction {}", w.contraction)?;
            writeln!(out, "set {}", one_based(&w.set))?;
            Ok(Verdict::Pass)
        }
        None => {
            writeln!(out, "none: no stable set contracts more than {c}")?;
            Ok(Verdict::Fail)
        }
    }
}

fn print_family(out: &mut dyn Write, fam: &ComponentFamily) -> Result<()> {
    let ids: Vec<String> = fam.keys().iter().map(|k| k.to_string()).collect();
    writeln!(out, "family {}", ids.join(","))?;
    writeln!(
        out,
        "union {} coverage {}",
        fam.union_size,
        cyclecover::rational::to_string(&fam.coverage)
    )?;
    for c in &fam.members {
        writeln!(out, "{} size {}: {}", c.key(), c.len(), one_based(&c.vertices))?;
    }
    Ok(())
}

fn structural(a: StructuralArgs, out: &mut dyn Write) -> Result<Verdict> {
    let g = load(&a.file)?;
    let modes = [
        a.spanning_pair,
        a.cover_triple.is_some(),
        a.two_cover,
        a.double_cover.is_some(),
    ];
    if modes.iter().filter(|b| **b).count() != 1 {
        bail!("choose exactly one of --spanning-pair, --cover-triple, --two-cover, --double-cover");
    }
    if a.spanning_pair {
        return match find_spanning_pair(&g, a.no_contracting) {
            Some(fam) => {
                print_family(out, &fam)?;
                Ok(Verdict::Pass)
            }
            None => {
                writeln!(out, "none")?;
                Ok(Verdict::Fail)
            }
        };
    }
    if let Some(eta) = &a.cover_triple {
        return match find_cover_triple(&g, q(eta)?) {
            Some(fam) => {
                print_family(out, &fam)?;
                Ok(Verdict::Pass)
            }
            None => {
                writeln!(out, "none")?;
                Ok(Verdict::Fail)
            }
        };
    }
    if a.two_cover {
        let (fam, _) = two_components_cover(&g);
        print_family(out, &fam)?;
        return Ok(Verdict::Pass);
    }
    let ids = parse_ids(a.double_cover.as_deref().unwrap_or_default())?;
    let map = ComponentMap::new(&g);
    let fam = ComponentFamily::from_keys(&map, &ids)?;
    let (ok, count) = is_double_cover(&g, &fam);
    writeln!(
        out,
        "double-cover {} count {count} of {}",
        if ok { "yes" } else { "no" },
        g.n()
    )?;
    Ok(ok.into())
}
