//! Command-line front end.
//!
//! Every command writes its artifacts under `--out` and finishes with a
//! `<command>.manifest.json` describing inputs, outputs and checks.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::corpus::hfree_corpus;
use crate::decomposition::{
    build_bg_lenient, forbidden_to_k, synthesize, width_bound, DecompError,
};
use crate::embedding::{embed_universal, verify_embedding, EmbedError};
use crate::expr::{parse, render, CwExpr, ExprError};
use crate::graph::{Graph, GraphError};
use crate::oracle::{oracle_cliquewidth, DEFAULT_ORACLE_CAP};
use crate::uig::{
    build_model, canonical_partition, canonical_partitions, generate_h, random_uig,
    CanonicalPartition, UigError,
};

pub const ORACLE_CAP_VAR: &str = "CWKIT_ORACLE_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    SizeCap(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Precondition(_) | CliError::Io { .. } => "precondition",
            CliError::Verification(_) => "verification",
            CliError::SizeCap(_) => "size-cap",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) | CliError::Io { .. } => 3,
            CliError::Verification(_) => 4,
            CliError::SizeCap(_) => 5,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooLarge { .. } => CliError::SizeCap(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<UigError> for CliError {
    fn from(e: UigError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        match e {
            EmbedError::NotUnitInterval(_) => CliError::Precondition(e.to_string()),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<DecompError> for CliError {
    fn from(e: DecompError) -> Self {
        match e {
            DecompError::NotUnitInterval(_) | DecompError::BadK(_) => {
                CliError::Precondition(e.to_string())
            }
            _ => CliError::Verification(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cwkit", version, about = "Unit interval graphs and clique-width expressions")]
pub struct Cli {
    /// Directory for artifacts and the manifest.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Also write DOT renderings.
    #[arg(long, global = true)]
    pub dot: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical graph H_{n,m}.
    GenH { n: usize, m: usize },
    /// Canonical partition, or the reason there is none.
    Recognize { graph: PathBuf },
    /// Unit interval model.
    Model { graph: PathBuf },
    /// Clusters of each consecutive pair of layers.
    Clusters { graph: PathBuf },
    /// Cluster graph B(G).
    Bg { graph: PathBuf },
    /// Embedding into a canonical graph.
    Embed { graph: PathBuf },
    /// Clique-width expression with a certified width bound.
    Synth(SynthArgs),
    /// Graph of an expression.
    Eval { expr: PathBuf },
    /// Number of labels of an expression.
    Width { expr: PathBuf },
    /// Exact clique-width of a small graph.
    Oracle { graph: PathBuf },
    /// Random unit interval graph.
    RandomUig { n: usize, spread: f64, seed: u64 },
    /// Check that an expression evaluates to a graph.
    Verify { graph: PathBuf, expr: PathBuf },
    /// Synthesise and verify a batch of H_{k,k}-free graphs.
    Corpus {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    pub graph: PathBuf,
    #[arg(long, conflicts_with = "forbid", required_unless_present = "forbid")]
    pub k: Option<usize>,
    /// Forbidden unit interval graph; k is derived from it.
    #[arg(long)]
    pub forbid: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Artifact or message that backs the outcome.
    pub witness: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    /// Output directory; `outputs` are relative to it.
    pub out: String,
    pub seed: Option<u64>,
    pub k: Option<usize>,
    pub outputs: Vec<String>,
    pub checks: Vec<Check>,
    pub widths: Vec<usize>,
    pub elapsed_ms: u128,
}

impl RunManifest {
    fn check(&mut self, name: &str, pass: bool, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, witness: witness.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

struct Ctx<'a> {
    out: &'a Path,
    dot: bool,
    m: RunManifest,
}

impl Ctx<'_> {
    fn write(&mut self, name: &str, body: &str) -> Result<(), CliError> {
        let path = self.out.join(name);
        fs::write(&path, body).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        self.m.outputs.push(name.to_string());
        Ok(())
    }

    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        self.m.inputs.push(path.display().to_string());
        fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
    }

    fn graph(&mut self, path: &Path) -> Result<Graph, CliError> {
        let text = self.read(path)?;
        Ok(Graph::parse_text(&text)?)
    }

    fn expr(&mut self, path: &Path) -> Result<CwExpr, CliError> {
        let text = self.read(path)?;
        let e = parse(&text)?;
        e.validate()?;
        Ok(e)
    }
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into())
}

fn oracle_cap() -> Result<usize, CliError> {
    match std::env::var(ORACLE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{ORACLE_CAP_VAR}=`{v}` is not a number"))),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

/// `layer <j> <id>...` per layer, top first.
pub fn partition_text(g: &Graph, cp: &CanonicalPartition) -> String {
    cp.to_ids(g)
        .iter()
        .enumerate()
        .map(|(j, l)| format!("layer {j} {}\n", l.join(" ")))
        .collect()
}

/// Layers as ranks, left to right in partition order.
pub fn partition_dot(g: &Graph, parts: &[CanonicalPartition], name: &str) -> String {
    let mut s = format!("graph {name} {{\n  rankdir=TB;\n");
    for (c, cp) in parts.iter().enumerate() {
        for (j, l) in cp.to_ids(g).iter().enumerate() {
            let ids: Vec<String> = l.iter().map(|id| format!("\"{id}\"")).collect();
            s.push_str(&format!("  subgraph layer_{c}_{j} {{ rank=same; {}; }}\n", ids.join("; ")));
            for w in l.windows(2) {
                s.push_str(&format!("  \"{}\" -- \"{}\" [style=invis];\n", w[0], w[1]));
            }
        }
    }
    for (x, y) in g.edges() {
        s.push_str(&format!("  \"{}\" -- \"{}\";\n", g.id(x), g.id(y)));
    }
    s.push_str("}\n");
    s
}

fn synth_one(ctx: &mut Ctx, g: &Graph, k: usize, name: &str) -> Result<usize, CliError> {
    let syn = synthesize(g, k)?;
    let width = syn.expr.width();
    ctx.write(&format!("{name}.cwx"), &render(&syn.expr))?;
    let report = serde_json::to_string_pretty(&syn.report).expect("report serialises");
    ctx.write(&format!("{name}.report.json"), &report)?;
    let equal = syn.expr.eval()?.graph == *g;
    ctx.m.check(&format!("{name}: eval equals input"), equal, format!("{name}.cwx"));
    let bound = width_bound(k);
    ctx.m.check(
        &format!("{name}: width {width} <= {bound}"),
        width <= bound,
        format!("{name}.report.json"),
    );
    ctx.m.widths.push(width);
    Ok(width)
}

fn execute(ctx: &mut Ctx, cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::GenH { n, m } => {
            let h = generate_h(*n, *m);
            let name = format!("h_{n}_{m}");
            ctx.write(&format!("{name}.graph"), &h.to_text())?;
            if ctx.dot {
                ctx.write(&format!("{name}.dot"), &h.to_dot(&name))?;
            }
            println!("{name}: {} vertices, {} edges", h.n(), h.edge_count());
        }
        Command::Recognize { graph } => {
            let g = ctx.graph(graph)?;
            let name = stem(graph);
            match canonical_partitions(&g) {
                Ok(parts) => {
                    let text: Vec<String> = parts.iter().map(|cp| partition_text(&g, cp)).collect();
                    ctx.write(&format!("{name}.partition"), &text.join("component\n"))?;
                    if ctx.dot {
                        ctx.write(&format!("{name}.partition.dot"), &partition_dot(&g, &parts, &name))?;
                    }
                    ctx.m.check("unit interval", true, format!("{name}.partition"));
                    println!("unit interval: yes ({} components)", parts.len());
                }
                Err(e) => {
                    ctx.m.check("unit interval", false, e.to_string());
                    println!("unit interval: no ({e})");
                }
            }
        }
        Command::Model { graph } => {
            let g = ctx.graph(graph)?;
            let cp = canonical_partition(&g)?;
            let model = build_model(&g, &cp)?;
            let name = stem(graph);
            ctx.write(&format!("{name}.model"), &model.to_text())?;
            let back = crate::uig::graph_from_model(&model)?;
            ctx.m.check("model reproduces graph", back == g, format!("{name}.model"));
        }
        Command::Clusters { graph } | Command::Bg { graph } => {
            let g = ctx.graph(graph)?;
            let cp = canonical_partition(&g)?;
            let bg = build_bg_lenient(&g, &cp);
            let name = stem(graph);
            if matches!(cmd, Command::Clusters { .. }) {
                let mut s = String::new();
                for node in &bg.nodes {
                    let ids: Vec<&str> = node.members.iter().map(|&v| g.id(v)).collect();
                    s.push_str(&format!("cluster {} {} {}\n", node.level, node.pos, ids.join(" ")));
                }
                ctx.write(&format!("{name}.clusters"), &s)?;
                if ctx.dot {
                    ctx.write(&format!("{name}.partition.dot"), &partition_dot(&g, &[cp], &name))?;
                }
            } else {
                let json = serde_json::to_string_pretty(&bg).expect("cluster graph serialises");
                ctx.write(&format!("{name}.bg.json"), &json)?;
                if ctx.dot {
                    ctx.write(&format!("{name}.bg.dot"), &bg.to_dot(&g, &name))?;
                }
                let ok = bg.check(&g);
                ctx.m.check(
                    "one edge per vertex",
                    ok.is_ok(),
                    ok.err().map_or(format!("{name}.bg.json"), |e| e.to_string()),
                );
            }
        }
        Command::Embed { graph } => {
            let g = ctx.graph(graph)?;
            let emb = embed_universal(&g)?;
            let name = stem(graph);
            ctx.write(&format!("{name}.embedding"), &emb.to_text())?;
            let ok = verify_embedding(&g, &emb);
            ctx.m.check(
                "induced embedding",
                ok.is_ok(),
                ok.err().map_or(format!("{name}.embedding"), |e| e.to_string()),
            );
            println!("target H_{{{},{}}}", emb.target.rows, emb.target.cols);
        }
        Command::Synth(args) => {
            let g = ctx.graph(&args.graph)?;
            let k = match (&args.k, &args.forbid) {
                (Some(k), _) => *k,
                (None, Some(f)) => {
                    let f = ctx.graph(f)?;
                    forbidden_to_k(&f)?
                }
                (None, None) => unreachable!("clap requires one of --k and --forbid"),
            };
            ctx.m.k = Some(k);
            let width = synth_one(ctx, &g, k, &stem(&args.graph))?;
            println!("width {width} (bound {})", width_bound(k));
        }
        Command::Eval { expr } => {
            let e = ctx.expr(expr)?;
            let g = e.eval()?.graph;
            let name = stem(expr);
            ctx.write(&format!("{name}.graph"), &g.to_text())?;
            if ctx.dot {
                ctx.write(&format!("{name}.dot"), &g.to_dot(&name))?;
            }
            print!("{}", g.to_text());
        }
        Command::Width { expr } => {
            let e = ctx.expr(expr)?;
            ctx.m.widths.push(e.width());
            println!("{}", e.width());
        }
        Command::Oracle { graph } => {
            let g = ctx.graph(graph)?;
            let cw = oracle_cliquewidth(&g, oracle_cap()?)?;
            ctx.m.widths.push(cw);
            println!("{cw}");
        }
        Command::RandomUig { n, spread, seed } => {
            ctx.m.seed = Some(*seed);
            let g = random_uig(*n, *spread, *seed);
            let name = format!("uig_{n}_{seed}");
            ctx.write(&format!("{name}.graph"), &g.to_text())?;
            if ctx.dot {
                ctx.write(&format!("{name}.dot"), &g.to_dot(&name))?;
            }
        }
        Command::Verify { graph, expr } => {
            let g = ctx.graph(graph)?;
            let e = ctx.expr(expr)?;
            let equal = e.eval()?.graph == g;
            ctx.m.widths.push(e.width());
            ctx.m.check("eval equals graph", equal, expr.display().to_string());
            println!("{}", if equal { "pass" } else { "fail" });
        }
        Command::Corpus { k, count, seed } => {
            ctx.m.seed = Some(*seed);
            ctx.m.k = Some(*k);
            for (i, g) in hfree_corpus(*k, *count, *seed).iter().enumerate() {
                let name = format!("corpus_k{k}_{i:03}");
                ctx.write(&format!("{name}.graph"), &g.to_text())?;
                synth_one(ctx, g, *k, &name)?;
            }
            let max = ctx.m.widths.iter().max().copied().unwrap_or(0);
            println!("{count} graphs, max width {max} (bound {})", width_bound(*k));
        }
    }
    Ok(())
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::GenH { .. } => "gen-h",
        Command::Recognize { .. } => "recognize",
        Command::Model { .. } => "model",
        Command::Clusters { .. } => "clusters",
        Command::Bg { .. } => "bg",
        Command::Embed { .. } => "embed",
        Command::Synth(_) => "synth",
        Command::Eval { .. } => "eval",
        Command::Width { .. } => "width",
        Command::Oracle { .. } => "oracle",
        Command::RandomUig { .. } => "random-uig",
        Command::Verify { .. } => "verify",
        Command::Corpus { .. } => "corpus",
    }
}

/// Runs one command and writes its manifest. A failed check is reported as
/// a verification error after the manifest is on disk.
pub fn run(cli: &Cli) -> Result<RunManifest, CliError> {
    let start = Instant::now();
    fs::create_dir_all(&cli.out)
        .map_err(|source| CliError::Io { path: cli.out.display().to_string(), source })?;
    let name = command_name(&cli.command);
    let mut ctx = Ctx {
        out: &cli.out,
        dot: cli.dot,
        m: RunManifest {
            command: name.into(),
            out: cli.out.display().to_string(),
            ..Default::default()
        },
    };
    execute(&mut ctx, &cli.command)?;
    let mut m = ctx.m;
    m.elapsed_ms = start.elapsed().as_millis();
    let path = cli.out.join(format!("{name}.manifest.json"));
    let json = serde_json::to_string_pretty(&m).expect("manifest serialises");
    fs::write(&path, json + "\n")
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    if let Some(c) = m.checks.iter().find(|c| !c.pass && name != "recognize") {
        return Err(CliError::Verification(format!("{}: {}", c.name, c.witness)));
    }
    Ok(m)
}
