use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use congest_rule::graph::generate::{generate, GenSpec, Generated, IdMode};
use congest_rule::graph::json::{CoverJson, GraphJson, HypergraphJson};
use congest_rule::graph::{generate as gen, Graph, Hypergraph};
use congest_rule::harness::{
    exhaustive_sweep, run_experiment, verify_certificate, Algorithm, Certificate, ExperimentRecord, Instance,
    Params,
};
use congest_rule::sim::SimConfig;
use congest_rule::verify::Verdict;

#[derive(Parser)]
#[command(name = "congest-rule", version, about = "Ruling sets in a simulated CONGEST network")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated graph or hypergraph as JSON.
    Gen(GenArgs),
    /// Run an algorithm; print its certificate and experiment record.
    Run(RunArgs),
    /// Check a certificate against a graph; exit 1 on any violation.
    Verify(VerifyArgs),
    /// Sweep sizes and print one CSV row per run.
    Bench(BenchArgs),
    /// Run every algorithm on every connected graph up to `--max-n` nodes.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Ring,
    Path,
    Complete,
    Er,
    Regular,
    Hypergraph,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ids {
    Sequential,
    Random,
}

impl From<Ids> for IdMode {
    fn from(i: Ids) -> Self {
        match i {
            Ids::Sequential => IdMode::Sequential,
            Ids::Random => IdMode::Random,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Edge probability (er).
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    /// Degree (regular).
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Hyperedge count (hypergraph).
    #[arg(long, default_value_t = 10)]
    edges: usize,
    /// Rank (hypergraph).
    #[arg(long, default_value_t = 3)]
    rank: usize,
    #[arg(long, value_enum, default_value = "sequential")]
    ids: Ids,
    #[arg(long, env = "CONGEST_RULE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct AlgoArgs {
    #[arg(long, value_parser = parse_algo)]
    algo: Algorithm,
    #[arg(long)]
    alpha: Option<usize>,
    /// Digit base.
    #[arg(long = "base", short = 'B')]
    base: Option<u64>,
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long, env = "CONGEST_RULE_SEED", default_value_t = 0)]
    seed: u64,
    /// Disable the message cap; the record is flagged as cap-exempt.
    #[arg(long)]
    unlimited: bool,
}

impl AlgoArgs {
    fn params(&self) -> Params {
        Params { alpha: self.alpha, base: self.base, beta: self.beta, seed: self.seed }
    }

    fn config(&self) -> SimConfig {
        if self.unlimited {
            SimConfig::unlimited()
        } else {
            SimConfig::default()
        }
    }
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: congest_rule::Error| e.to_string())
}

#[derive(Args)]
struct RunArgs {
    /// Graph or hypergraph JSON.
    #[arg(long)]
    input: PathBuf,
    /// Clique edge cover JSON for diversity_ruling_set; defaults to one clique per edge.
    #[arg(long)]
    cover: Option<PathBuf>,
    #[command(flatten)]
    algo: AlgoArgs,
    /// Certificate destination (default stdout).
    #[arg(long)]
    cert: Option<PathBuf>,
    /// Experiment record destination (default stderr).
    #[arg(long)]
    record: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    algo: AlgoArgs,
    /// Ring sizes, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "n")]
    ring: Vec<usize>,
    /// Sizes for --family, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, value_enum, default_value = "er")]
    family: Family,
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 3)]
    rank: usize,
    #[arg(long, value_enum, default_value = "sequential")]
    ids: Ids,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    #[arg(long, env = "CONGEST_RULE_SEED", default_value_t = 0)]
    seed: u64,
}

fn gen_spec(family: Family, n: usize, p: f64, d: usize, edges: usize, rank: usize) -> GenSpec {
    match family {
        Family::Ring => GenSpec::Ring { n },
        Family::Path => GenSpec::Path { n },
        Family::Complete => GenSpec::Complete { n },
        Family::Er => GenSpec::ErdosRenyi { n, p },
        Family::Regular => GenSpec::DRegular { n, d },
        Family::Hypergraph => GenSpec::RandomHypergraph { n, edges, rank },
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            writeln!(io::stdout(), "{text}")?;
            Ok(())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Graph JSON carries `idspace`; anything else is read as a hypergraph.
fn read_instance(path: &Path, cover: Option<&Path>) -> Result<Instance> {
    let value: serde_json::Value = read_json(path)?;
    if value.get("idspace").is_some() {
        let graph = Graph::try_from(serde_json::from_value::<GraphJson>(value)?)?;
        let cover = cover.map(|c| read_json::<CoverJson>(c).map(Into::into)).transpose()?;
        Ok(Instance::Graph { graph, cover })
    } else {
        if cover.is_some() {
            bail!("--cover applies to graphs only");
        }
        Ok(Instance::Hypergraph(Hypergraph::try_from(serde_json::from_value::<HypergraphJson>(value)?)?))
    }
}

fn report_violations(verdict: &Verdict) {
    if !verdict.ok {
        eprintln!("{}", verdict.summary());
    }
}

fn exit_for(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_gen(a: GenArgs) -> Result<ExitCode> {
    let spec = gen_spec(a.family, a.n, a.p, a.d, a.edges, a.rank);
    let text = match generate(&spec, a.ids.into(), a.seed)? {
        Generated::Graph(g) => serde_json::to_string(&GraphJson::from(&g))?,
        Generated::Hypergraph(h) => serde_json::to_string(&HypergraphJson::from(&h))?,
    };
    write_out(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(a: RunArgs) -> Result<ExitCode> {
    let instance = read_instance(&a.input, a.cover.as_deref())?;
    let (cert, record) = run_experiment(&instance, a.algo.algo, &a.algo.params(), &a.algo.config())?;
    write_out(a.cert.as_deref(), &serde_json::to_string(&cert)?)?;
    let rec = serde_json::to_string(&record)?;
    match &a.record {
        Some(p) => fs::write(p, format!("{rec}\n")).with_context(|| format!("writing {}", p.display()))?,
        None => eprintln!("{rec}"),
    }
    report_violations(&record.verdict);
    Ok(exit_for(record.verdict.ok))
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode> {
    let instance = read_instance(&a.input, None)?;
    let cert: Certificate = read_json(&a.cert)?;
    let verdict = verify_certificate(&instance, &cert)?;
    println!("{}", serde_json::to_string(&verdict)?);
    report_violations(&verdict);
    Ok(exit_for(verdict.ok))
}

#[derive(serde::Serialize)]
struct BenchRow {
    n: usize,
    idspace: u64,
    algorithm: Algorithm,
    #[serde(rename = "B")]
    base: Option<u64>,
    alpha: Option<usize>,
    beta_claimed: usize,
    beta_achieved: String,
    rounds: usize,
    max_msg_bits: usize,
    wallclock_ms: String,
}

impl From<&ExperimentRecord> for BenchRow {
    fn from(r: &ExperimentRecord) -> Self {
        BenchRow {
            n: r.graph.n,
            idspace: r.graph.idspace,
            algorithm: r.algorithm,
            base: r.base,
            alpha: r.alpha_claimed,
            beta_claimed: r.beta_claimed,
            beta_achieved: r.achieved_beta.map(|d| d.to_string()).unwrap_or_default(),
            rounds: r.rounds_used,
            max_msg_bits: r.max_message_bits,
            wallclock_ms: format!("{:.3}", r.wallclock_ms),
        }
    }
}

fn bench_instance(a: &BenchArgs, n: usize) -> Result<Instance> {
    if !a.ring.is_empty() {
        return Ok(Instance::graph(gen::assign_ids(&gen::ring(n), a.ids.into(), a.algo.seed)));
    }
    let spec = gen_spec(a.family, n, a.p, a.d, n, a.rank);
    Ok(match generate(&spec, a.ids.into(), a.algo.seed)? {
        Generated::Graph(g) => Instance::graph(g),
        Generated::Hypergraph(h) => Instance::Hypergraph(h),
    })
}

fn cmd_bench(a: BenchArgs) -> Result<ExitCode> {
    let sizes = if a.ring.is_empty() { &a.n } else { &a.ring };
    if sizes.is_empty() {
        bail!("give sizes with --ring or --n");
    }
    let mut out: Box<dyn Write> = match &a.out {
        Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout()),
    };
    let mut csv = csv::Writer::from_writer(&mut out);
    let mut ok = true;
    for &n in sizes {
        let instance = bench_instance(&a, n)?;
        let (_, record) = run_experiment(&instance, a.algo.algo, &a.algo.params(), &a.algo.config())?;
        if !record.verdict.ok {
            eprintln!("n = {n}: {}", record.verdict.summary());
            ok = false;
        }
        csv.serialize(BenchRow::from(&record))?;
    }
    csv.flush()?;
    Ok(exit_for(ok))
}

fn cmd_selftest(a: SelftestArgs) -> Result<ExitCode> {
    if a.max_n > 7 {
        bail!("--max-n is limited to 7");
    }
    let report = exhaustive_sweep(a.max_n, a.seed, &SimConfig::default());
    for f in &report.failures {
        eprintln!("{} {:?} on {}: {}", f.algorithm, f.params, serde_json::to_string(&f.graph)?, f.detail);
    }
    println!(
        "{} graphs, {} runs, {} failures",
        report.graphs,
        report.runs,
        report.failures.len()
    );
    Ok(exit_for(report.ok()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Run(a) => cmd_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
