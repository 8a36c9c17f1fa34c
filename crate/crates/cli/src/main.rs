use std::io::{self, BufRead, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dmlab::enumerate::CENSUS_HEADER;
use dmlab::labeling::SCHEMA;
use dmlab::qw::parse_int_list;
use dmlab::search::SearchMode;
use dmlab::spectral::filter_record;
use dmlab::*;

/// Quasi wreath graphs and distance magic labelings.
///
/// Exit status: 0 on success, 1 on a negative verdict, 2 on errors.
#[derive(Parser)]
#[command(name = "dmlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or classify quasi wreath graphs.
    #[command(subcommand)]
    Qw(QwCommand),
    /// Construct, verify or convert labelings.
    #[command(subcommand)]
    Label(LabelCommand),
    /// Exhaustive search for a distance magic labeling.
    Search(SearchArgs),
    /// Read graph6 lines on stdin, write filter verdicts as TSV.
    Filter,
    /// List regular graphs of a given order as graph6.
    Enumerate(EnumerateArgs),
    /// Expand a labeled tetravalent graph along a zero-antipodal 4-cycle.
    Expand(ExpandArgs),
    /// Render a graph as Graphviz DOT.
    Dot(DotArgs),
    /// Per-order counts of tetravalent graphs and filter candidates.
    Census(CensusArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct QwSpec {
    /// Segment lengths, e.g. 11,3,5,3,7,5,3.
    #[arg(long)]
    profile: Option<SegmentProfile>,
    /// The 0/1 sequence, e.g. 0,1,1,0,1,1.
    #[arg(long)]
    sequence: Option<String>,
}

impl QwSpec {
    fn resolve(&self) -> Result<QwSequence> {
        match (&self.profile, &self.sequence) {
            (Some(p), _) => Ok(p.to_sequence()),
            (None, Some(s)) => Ok(QwSequence::from_ints(&parse_int_list::<u64>(s)?)?),
            (None, None) => bail!("one of --profile or --sequence is required"),
        }
    }
}

#[derive(Subcommand)]
enum QwCommand {
    /// Print the graph as graph6.
    Build(QwSpec),
    /// Decide distance magicness from the segment lengths.
    Classify(QwSpec),
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Centered,
    Standard,
}

#[derive(Subcommand)]
enum LabelCommand {
    /// Write the explicit labeling of a distance magic quasi wreath graph.
    Construct {
        #[command(flatten)]
        qw: QwSpec,
        /// Emit the variant with swapped labels between paired segments.
        #[arg(long)]
        tilde: bool,
        #[arg(long, value_enum, default_value = "centered")]
        scheme: SchemeArg,
    },
    /// Check a labeling against a graph.
    Verify {
        /// graph6 file, `-` for stdin, or an inline graph6 string.
        #[arg(long)]
        graph: String,
        /// Labeling JSON file, inline JSON, or `-` (default) for stdin.
        #[arg(long, default_value = "-")]
        labels: String,
    },
    /// Convert a labeling between the centered and standard schemes.
    Convert {
        #[arg(long, value_enum)]
        to: SchemeArg,
        #[arg(long, default_value = "-")]
        labels: String,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    graph: String,
    /// Count all labelings instead of stopping at the first.
    #[arg(long)]
    count: bool,
    /// Skip the spectral filter.
    #[arg(long)]
    no_prefilter: bool,
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Split the search over worker threads.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    order: usize,
    #[arg(long, default_value_t = 4)]
    valency: usize,
    /// Only connected graphs.
    #[arg(long)]
    connected: bool,
    /// Emit in canonical certificate order.
    #[arg(long)]
    sorted: bool,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, default_value = "-")]
    labels: String,
    /// Cycle a,b,c,d; defaults to the least qualifying cycle.
    #[arg(long)]
    cycle: Option<String>,
}

#[derive(Args)]
struct DotArgs {
    /// Graph to render; alternatively give --profile or --sequence.
    #[arg(long, conflicts_with_all = ["profile", "sequence"])]
    graph: Option<String>,
    #[arg(long)]
    profile: Option<SegmentProfile>,
    #[arg(long)]
    sequence: Option<String>,
    /// Labeling JSON to annotate vertices with.
    #[arg(long, conflicts_with = "construct")]
    labels: Option<String>,
    /// Annotate a quasi wreath graph with its constructed labeling.
    #[arg(long)]
    construct: bool,
}

#[derive(Args)]
struct CensusArgs {
    /// Orders to enumerate, e.g. 6,8,10.
    #[arg(long, default_value = "6,7,8,9,10")]
    orders: String,
    /// Also search every candidate of even order.
    #[arg(long)]
    search: bool,
}

/// Successful runs report whether the verdict was positive.
enum Outcome {
    Positive,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("DMLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .with_context(|| format!("DMLAB_THREADS={value:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Qw(QwCommand::Build(spec)) => {
            println!("{}", write_graph6(&build_qw(&spec.resolve()?))?);
            Ok(Outcome::Positive)
        }
        Command::Qw(QwCommand::Classify(spec)) => classify_cmd(&spec.resolve()?),
        Command::Label(LabelCommand::Construct { qw, tilde, scheme }) => construct_cmd(&qw.resolve()?, tilde, scheme),
        Command::Label(LabelCommand::Verify { graph, labels }) => verify_cmd(&graph, &labels),
        Command::Label(LabelCommand::Convert { to, labels }) => convert_cmd(to, &labels),
        Command::Search(args) => search_cmd(&args),
        Command::Filter => filter_cmd(),
        Command::Enumerate(args) => enumerate_cmd(&args),
        Command::Expand(args) => expand_cmd(&args),
        Command::Dot(args) => dot_cmd(&args),
        Command::Census(args) => census_cmd(&args),
    }
}

fn read_source(source: &str) -> Result<String> {
    if source == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        return Ok(text);
    }
    if Path::new(source).exists() {
        return std::fs::read_to_string(source).with_context(|| format!("reading {source}"));
    }
    Ok(source.to_owned())
}

fn read_graph(source: &str) -> Result<Graph> {
    let text = read_source(source)?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .context("no graph6 line in input")?;
    parse_graph6(line).with_context(|| format!("parsing graph6 {:?}", line.trim()))
}

fn read_labels(source: &str) -> Result<LabelingDocument> {
    Ok(LabelingDocument::from_json(&read_source(source)?)?)
}

fn read_centered(source: &str) -> Result<CenteredLabeling> {
    let doc = read_labels(source)?;
    Ok(match doc.scheme {
        Scheme::Centered => CenteredLabeling::from_raw(doc.labels)?,
        Scheme::Standard => from_standard(&StandardLabeling::new(doc.labels)?),
    })
}

fn print_json(value: &Value) {
    println!("{value}");
}

fn classify_cmd(s: &QwSequence) -> Result<Outcome> {
    let verdict = classify(s);
    let reasons: Vec<String> = match &verdict {
        Classification::DistanceMagic => Vec::new(),
        Classification::NotDistanceMagic(rs) => rs.iter().map(ToString::to_string).collect(),
    };
    let magic = verdict.is_distance_magic();
    print_json(&json!({
        "schema": SCHEMA,
        "profile": s.profile().parts(),
        "sequence": s.bits().iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
        "verdict": if magic { "DistanceMagic" } else { "NotDistanceMagic" },
        "reasons": reasons,
    }));
    Ok(if magic { Outcome::Positive } else { Outcome::Negative })
}

fn construct_cmd(s: &QwSequence, tilde: bool, scheme: SchemeArg) -> Result<Outcome> {
    let made = if tilde {
        construct_tilde_labeling(s)
    } else {
        construct_labeling(s)
    };
    let lab = match made {
        Ok(lab) => lab,
        Err(e) => {
            eprintln!("{e}");
            return Ok(Outcome::Negative);
        }
    };
    let doc = match scheme {
        SchemeArg::Centered => LabelingDocument::centered(&lab),
        SchemeArg::Standard => LabelingDocument::standard(&to_standard(&lab)?),
    };
    println!("{}", doc.to_json());
    Ok(Outcome::Positive)
}

fn verify_cmd(graph: &str, labels: &str) -> Result<Outcome> {
    let g = read_graph(graph)?;
    let doc = read_labels(labels)?;
    let report = match doc.scheme {
        Scheme::Centered => verify(&g, &CenteredLabeling::from_raw(doc.labels)?)?,
        Scheme::Standard => verify_standard(&g, &StandardLabeling::from_raw(doc.labels)?)?,
    };
    let mut value = json!({ "schema": SCHEMA, "passed": report.passed() });
    if let (Value::Object(out), Value::Object(fields)) = (&mut value, serde_json::to_value(&report)?) {
        out.extend(fields);
    }
    print_json(&value);
    if let Some(v) = report.first_violation {
        eprintln!(
            "vertex {v} has weight {}, expected {}",
            report.weights[v], report.target
        );
    } else if !report.bijective {
        eprintln!("labels are not a bijection onto the {} label set", report.scheme);
    }
    Ok(if report.passed() {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn convert_cmd(to: SchemeArg, labels: &str) -> Result<Outcome> {
    let lab = read_centered(labels)?;
    let doc = match to {
        SchemeArg::Centered => LabelingDocument::centered(&CenteredLabeling::new(lab.into_labels())?),
        SchemeArg::Standard => LabelingDocument::standard(&to_standard(&lab)?),
    };
    println!("{}", doc.to_json());
    Ok(Outcome::Positive)
}

fn search_cmd(args: &SearchArgs) -> Result<Outcome> {
    let g = read_graph(&args.graph)?;
    let budget_secs = args
        .budget_secs
        .map(Duration::try_from_secs_f64)
        .transpose()
        .context("--budget-secs")?;
    let opts = SearchOptions {
        mode: if args.count {
            SearchMode::CountAll
        } else {
            SearchMode::FindOne
        },
        node_budget: args.budget_nodes,
        time_budget: budget_secs,
        prefilter: !args.no_prefilter,
        parallel: args.parallel,
        ..SearchOptions::default()
    };
    let out = find_labeling(&g, &opts)?;
    let st = out.stats;
    eprintln!(
        "nodes {} closure prunes {} interval prunes {} leaf rejects {}",
        st.nodes, st.closure_prunes, st.interval_prunes, st.leaf_rejects
    );
    if let Some(why) = out.ruled_out {
        eprintln!("ruled out by the spectral filter: {why}");
    }
    let verdict = match &out.verdict {
        Verdict::Found(_) => "Found",
        Verdict::NotFound => "NotFound",
        Verdict::BudgetExhausted => "BudgetExhausted",
    };
    if args.count {
        let mut value = json!({
            "schema": SCHEMA,
            "verdict": verdict,
            "folded_count": out.folded_count,
            "raw_count": out.raw_count,
        });
        if let Some(lab) = out.labeling() {
            value["labeling"] = serde_json::to_value(LabelingDocument::centered(lab))?;
        }
        print_json(&value);
    } else if let Some(lab) = out.labeling() {
        println!("{}", LabelingDocument::centered(lab).to_json());
    } else {
        println!("{verdict}");
    }
    match out.verdict {
        Verdict::Found(_) => Ok(Outcome::Positive),
        Verdict::NotFound => Ok(Outcome::Negative),
        Verdict::BudgetExhausted => bail!("budget exhausted before a verdict was reached"),
    }
}

fn filter_cmd() -> Result<Outcome> {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut errors = 0;
    for (n, line) in stdin.lock().lines().enumerate() {
        let line = line.context("reading stdin")?;
        if line.trim().is_empty() {
            continue;
        }
        let record = parse_graph6(&line)
            .map_err(|e| e.to_string())
            .and_then(|g| filter_record(&g));
        match record {
            Ok(r) => writeln!(out, "{r}")?,
            Err(e) => {
                errors += 1;
                eprintln!("line {}: {e}", n + 1);
            }
        }
    }
    if errors > 0 {
        bail!("{errors} input line(s) could not be filtered");
    }
    Ok(Outcome::Positive)
}

fn enumerate_cmd(args: &EnumerateArgs) -> Result<Outcome> {
    let task = EnumerationTask {
        order: args.order,
        valency: args.valency,
        connected_only: args.connected,
        sorted: args.sorted,
    };
    let graphs = enumerate_regular(&task)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for g in &graphs {
        writeln!(out, "{}", write_graph6(g)?)?;
    }
    eprintln!("{} graphs", graphs.len());
    Ok(Outcome::Positive)
}

fn expand_cmd(args: &ExpandArgs) -> Result<Outcome> {
    let g = read_graph(&args.graph)?;
    let lab = read_centered(&args.labels)?;
    let (h, l) = match &args.cycle {
        Some(text) => {
            let v = parse_int_list::<usize>(text)?;
            let [a, b, c, d] = v[..] else {
                bail!("--cycle needs four vertices, got {}", v.len())
            };
            expand(&g, &lab, &ZeroAntipodal4Cycle { a, b, c, d })?
        }
        None => expand_default(&g, &lab)?,
    };
    println!("{}", write_graph6(&h)?);
    println!("{}", LabelingDocument::centered(&l).to_json());
    Ok(Outcome::Positive)
}

fn dot_cmd(args: &DotArgs) -> Result<Outcome> {
    let qw = match (&args.profile, &args.sequence) {
        (None, None) => None,
        (profile, sequence) => Some(
            QwSpec {
                profile: profile.clone(),
                sequence: sequence.clone(),
            }
            .resolve()?,
        ),
    };
    let (g, rows) = match (&args.graph, &qw) {
        (Some(src), _) => (read_graph(src)?, None),
        (None, Some(s)) => (build_qw(s), Some(s.len())),
        (None, None) => bail!("one of --graph, --profile or --sequence is required"),
    };
    let labels = match (&args.labels, args.construct, &qw) {
        (Some(src), _, _) => Some(read_centered(src)?),
        (None, true, Some(s)) => Some(construct_labeling(s)?),
        (None, true, None) => bail!("--construct needs --profile or --sequence"),
        (None, false, _) => None,
    };
    if let Some(l) = &labels {
        if l.order() != g.order() {
            bail!("labeling has order {} but the graph has order {}", l.order(), g.order());
        }
    }
    print!("{}", export_dot(&g, labels.as_ref(), rows));
    Ok(Outcome::Positive)
}

fn census_cmd(args: &CensusArgs) -> Result<Outcome> {
    let orders = parse_int_list::<usize>(&args.orders)?;
    let rows = census_pipeline(&orders, args.search)?;
    println!("{CENSUS_HEADER}");
    for row in &rows {
        println!("{}", row.tsv());
    }
    Ok(Outcome::Positive)
}
