use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oddgirth::audit::{audit_sweep, parse_check_list, AuditConfig, AuditSource, CheckId, MAX_ENUMERATE};
use oddgirth::bounds::{best_bound, bound_gromov, evaluate, BoundId, BoundParams, BoundValue};
use oddgirth::coloring::{ball_peel_coloring, peel_soundness_check};
use oddgirth::cycles::{girth, odd_girth, Length};
use oddgirth::families::parse_family;
use oddgirth::invariants::chromatic::{chromatic_number, verify_coloring};
use oddgirth::invariants::cover::{max_ball_size, triviality_radius};
use oddgirth::invariants::essentiality::{essentiality, forest_essentiality};
use oddgirth::tables::{winner_table, TableSpec, TABLE1_CATALOG, TABLE2_CATALOG};
use oddgirth::{resolve_graph, to_graph6, Graph};

#[derive(Parser)]
#[command(name = "oddgirth", version, about = "Graph invariants and vertex-count lower bounds from chromatic number and odd girth")]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Exact invariants of one graph.
    Info {
        /// Family name (cycle:7, petersen, kneser:5:2, ...), graph6 or edge-list file, or graph6 string.
        graph: String,
    },
    /// Every bound at one (chi, k) and the winner.
    Bounds(BoundsArgs),
    /// Winner matrix over a (chi, k) grid.
    Table(TableArgs),
    /// Check the bounds against exact invariants over many graphs.
    Audit(AuditArgs),
    /// Ball-peeling coloring of a graph with no odd cycle shorter than 2k+1.
    Color {
        graph: String,
        /// Defaults to (odd girth - 1) / 2.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Emit a named graph as graph6.
    Gen {
        /// Family address, or `mycielski` / `gmycielski` together with --base.
        family: String,
        #[arg(long)]
        base: Option<String>,
        /// Levels for `gmycielski`.
        #[arg(long, default_value_t = 2)]
        levels: usize,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    chi: u64,
    #[arg(long)]
    k: u64,
    /// table1, table2, all, or a comma list of bound ids.
    #[arg(long, default_value = "all")]
    catalog: String,
    /// Forest essentiality, for GROMOV.
    #[arg(long)]
    nprime: Option<u64>,
    /// Girth, for GROMOV.
    #[arg(long)]
    girth: Option<usize>,
}

#[derive(Args)]
struct TableArgs {
    /// table1 or table2.
    preset: Option<String>,
    /// Inclusive range such as 3-15.
    #[arg(long)]
    chi: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args)]
struct AuditArgs {
    /// All labeled graphs on N vertices, or on A-B vertices.
    #[arg(long)]
    enumerate: Option<String>,
    /// One graph6 string per line.
    #[arg(long, conflicts_with = "enumerate")]
    graph6_file: Option<PathBuf>,
    /// One graph per isomorphism class when enumerating.
    #[arg(long)]
    dedup: bool,
    /// Comma list of check ids that fail the run.
    #[arg(long)]
    mandatory: Option<String>,
    /// Comma list of check ids that are listed without failing.
    #[arg(long)]
    report_only: Option<String>,
    /// Worker threads; 0 picks the machine default.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cap on each list of records in the report.
    #[arg(long, default_value_t = 1000)]
    max_listed: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = match cli.command {
        Command::Info { graph } => info(&graph, format),
        Command::Bounds(a) => bounds(&a, format),
        Command::Table(a) => table(&a, format),
        Command::Audit(a) => audit(&a, format),
        Command::Color { graph, k } => color(&graph, k, format),
        Command::Gen { family, base, levels } => generate(&family, base.as_deref(), levels, format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(2)
        }
    }
}

/// The error chain, skipping causes already spelled out by their parent.
fn describe(e: &anyhow::Error) -> String {
    let mut out = String::new();
    let mut last = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !last.ends_with(&msg) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&msg);
        }
        last = msg;
    }
    out
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("this command does not support --format {}", f.to_possible_value().unwrap().get_name());
    }
    Ok(f)
}

fn load(input: &str) -> Result<Graph> {
    resolve_graph(input).with_context(|| format!("cannot read graph {input:?}"))
}

fn info(input: &str, format: Option<Format>) -> Result<ExitCode> {
    let format = pick(format, Format::Text, &[Format::Json, Format::Text])?;
    let g = load(input)?;
    let og = odd_girth(&g);
    let k = og.finite().map(|l| (l - 1) / 2);
    let ball = k.and_then(|k| max_ball_size(&g, k - 1).map(|(size, center)| (k - 1, size, center)));
    let v = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "girth": girth(&g),
        "oddGirth": og,
        "k": k,
        "chi": chromatic_number(&g),
        "ess": essentiality(&g).n,
        "forestEss": forest_essentiality(&g).n,
        "trivRadius": triviality_radius(&g),
        "dBall": ball.map(|(radius, size, center)| json!({"radius": radius, "size": size, "center": center})),
    });
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&v)?),
        _ => {
            for key in ["n", "edges", "girth", "oddGirth", "k", "chi", "ess", "forestEss", "trivRadius", "dBall"] {
                let shown = match &v[key] {
                    Value::String(s) => s.clone(),
                    Value::Null => "-".into(),
                    Value::Object(_) => {
                        let (r, s, c) = ball.expect("non-null");
                        format!("{s} (radius {r}, center {c})")
                    }
                    other => other.to_string(),
                };
                println!("{key:<10} {shown}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_catalog(s: &str) -> Result<Vec<BoundId>> {
    Ok(match s.trim().to_ascii_lowercase().as_str() {
        "table1" => TABLE1_CATALOG.to_vec(),
        "table2" => TABLE2_CATALOG.to_vec(),
        "all" => BoundId::ALL.into_iter().filter(|b| b.is_chi_k()).collect(),
        _ => {
            let mut ids = s
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<BoundId>())
                .collect::<Result<Vec<_>, _>>()?;
            ids.sort();
            ids.dedup();
            ids
        }
    })
}

fn value_json(v: &BoundValue) -> Value {
    serde_json::to_value(v).expect("bound value serializes")
}

fn bounds(a: &BoundsArgs, format: Option<Format>) -> Result<ExitCode> {
    let format = pick(format, Format::Text, &[Format::Json, Format::Csv, Format::Md, Format::Text])?;
    let catalog = parse_catalog(&a.catalog)?;
    let p = BoundParams::new(a.chi, a.k);
    let rows: Vec<(BoundId, Result<BoundValue, String>)> = catalog
        .iter()
        .map(|&id| {
            let v = if id == BoundId::Gromov {
                match (a.nprime, a.girth) {
                    (Some(np), Some(gi)) => bound_gromov(np, Length::Finite(gi)).map_err(|e| e.to_string()),
                    _ => Err("GROMOV needs --nprime and --girth".to_string()),
                }
            } else {
                evaluate(id, p).map_err(|e| e.to_string())
            };
            (id, v)
        })
        .collect();
    let winner = best_bound(p, &catalog);
    match format {
        Format::Json => {
            let listed: Vec<Value> = rows
                .iter()
                .map(|(id, v)| match v {
                    Ok(v) => value_json(v),
                    Err(e) => json!({"id": id, "error": e}),
                })
                .collect();
            let v = json!({
                "chi": a.chi,
                "k": a.k,
                "catalog": catalog,
                "bounds": listed,
                "winner": winner.as_ref().map(|(_, v)| value_json(v)),
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Csv => {
            println!("id,label,raw,ceil,error");
            for (id, v) in &rows {
                match v {
                    Ok(v) => println!("{},{},{},{},", id.name(), id.label(), v.raw, v.ceil),
                    Err(e) => println!("{},{},,,\"{}\"", id.name(), id.label(), e.replace('"', "\"\"")),
                }
            }
        }
        Format::Md => {
            println!("| bound | value | ceiling |\n|---|---|---|");
            for (id, v) in &rows {
                match v {
                    Ok(v) => println!("| {} | {} | {} |", id.label(), v.raw, v.ceil),
                    Err(e) => println!("| {} | {e} | |", id.label()),
                }
            }
        }
        Format::Text => {
            println!("chi = {}, k = {}", a.chi, a.k);
            for (id, v) in &rows {
                match v {
                    Ok(v) => println!("{:<15} {:>12} -> {}", id.name(), v.raw.to_string(), v.ceil),
                    Err(e) => println!("{:<15} {e}", id.name()),
                }
            }
        }
    }
    if format != Format::Json {
        match &winner {
            Some((id, v)) if format != Format::Csv => println!("winner: {} ({}) = {}", id.name(), id.label(), v.raw),
            None if format != Format::Csv => println!("winner: none"),
            _ => {}
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u64>> {
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (a.trim().parse()?, b.trim().parse()?),
        None => {
            let v = s.trim().parse()?;
            (v, v)
        }
    };
    if lo > hi {
        bail!("empty range {s:?}");
    }
    Ok(lo..=hi)
}

fn table(a: &TableArgs, format: Option<Format>) -> Result<ExitCode> {
    let format = pick(format, Format::Md, &[Format::Json, Format::Csv, Format::Md, Format::Text])?;
    let mut spec = match a.preset.as_deref() {
        Some(name) => TableSpec::preset(name).with_context(|| format!("unknown table preset {name:?}"))?,
        None => TableSpec::table2(),
    };
    if let Some(r) = &a.chi {
        spec.chi = parse_range(r)?;
    }
    if let Some(r) = &a.k {
        spec.k = parse_range(r)?;
    }
    if let Some(c) = &a.catalog {
        spec.catalog = parse_catalog(c)?;
    }
    let t = winner_table(&spec);
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&t)?),
        Format::Csv => print!("{}", t.to_csv()),
        Format::Md => print!("{}", t.to_markdown()),
        Format::Text => print!("{}", t.to_text()),
    }
    Ok(ExitCode::SUCCESS)
}

fn checks(list: &Option<String>, default: BTreeSet<CheckId>) -> Result<BTreeSet<CheckId>> {
    match list {
        Some(s) => Ok(parse_check_list(s)?),
        None => Ok(default),
    }
}

fn audit(a: &AuditArgs, format: Option<Format>) -> Result<ExitCode> {
    let format = pick(format, Format::Json, &[Format::Json, Format::Csv])?;
    let source = match (&a.enumerate, &a.graph6_file) {
        (Some(r), None) => {
            let r = parse_range(r)?;
            let (min, max) = (*r.start() as usize, *r.end() as usize);
            if max > MAX_ENUMERATE {
                bail!("enumeration supports at most {MAX_ENUMERATE} vertices; stream larger graphs with --graph6-file");
            }
            AuditSource::Enumerate {
                min,
                max,
                dedup: a.dedup,
            }
        }
        (None, Some(path)) => {
            let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            AuditSource::graph6_stream(&path.display().to_string(), BufReader::new(f))
                .with_context(|| format!("cannot read {}", path.display()))?
        }
        _ => bail!("give exactly one of --enumerate or --graph6-file"),
    };
    let mut config = AuditConfig::new(
        checks(&a.mandatory, AuditConfig::default_mandatory())?,
        checks(&a.report_only, AuditConfig::default_report_only())?,
    );
    config.max_listed = a.max_listed;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.jobs).build()?;
    let report = pool.install(|| audit_sweep(&source, &config))?;
    let text = match format {
        Format::Csv => report.to_csv(),
        _ => report.to_json() + "\n",
    };
    match &a.out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    eprintln!(
        "{} graphs, {} with mandatory violations, {} with report-only findings",
        report.total_graphs, report.violation_count, report.report_only_count
    );
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn color(input: &str, k: Option<usize>, format: Option<Format>) -> Result<ExitCode> {
    let format = pick(format, Format::Text, &[Format::Json, Format::Text])?;
    let g = load(input)?;
    let k = k.unwrap_or_else(|| odd_girth(&g).finite().map_or(1, |l| (l - 1) / 2));
    let (c, trace) = ball_peel_coloring(&g, k)?;
    peel_soundness_check(&g, &trace).context("peel trace failed re-verification")?;
    let proper = verify_coloring(&g, &c);
    match format {
        Format::Json => {
            let v = json!({"k": k, "colorCount": c.count, "proper": proper, "trace": trace});
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        _ => {
            let mut out = String::new();
            for (v, col) in c.colors.iter().enumerate() {
                writeln!(out, "{v} {col}")?;
            }
            writeln!(out, "# colors: {}", c.count)?;
            writeln!(out, "# proper: {proper}")?;
            writeln!(out, "# peels: {}", trace.peels.len())?;
            for (i, p) in trace.peels.iter().enumerate() {
                writeln!(out, "# peel {i}: center {}, ball size {}, color {}", p.center, p.ball.len(), p.color)?;
            }
            writeln!(out, "# remainder: {} vertices, colors 0 and 1", trace.remainder.len())?;
            print!("{out}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(family: &str, base: Option<&str>, levels: usize, format: Option<Format>) -> Result<ExitCode> {
    let format = pick(format, Format::Text, &[Format::Json, Format::Text])?;
    let address = match (family, base) {
        ("mycielski", Some(b)) => format!("mycielski:{b}"),
        ("gmycielski", Some(b)) => format!("gmycielski:{levels}:{b}"),
        (_, Some(_)) => bail!("--base applies only to mycielski and gmycielski"),
        (f, None) => f.to_string(),
    };
    let g = parse_family(&address)?;
    let s = to_graph6(&g)?;
    match format {
        Format::Json => println!("{}", json!({"family": address, "n": g.n(), "edges": g.edge_count(), "graph6": s})),
        _ => println!("{s}"),
    }
    Ok(ExitCode::SUCCESS)
}
