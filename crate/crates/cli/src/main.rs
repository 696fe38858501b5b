//! `fanspec`: batch verification of the spectral extremal machinery for
//! `F_k`-free graphs.
//!
//! Graphs are read and written as graph6 lines. Data goes to standard output
//! (or `--output`), logs to standard error. Exit codes: 0 success or maximizer
//! confirmed, 2 counterexample found, 1 operational error.

mod output;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fanspec::enumeration::{
    canonical_form, enumerate, read_graph6, EnumerationTask, MalformedPolicy,
};
use fanspec::fan::contains_fan;
use fanspec::matching::{turan_kk2, Pattern};
use fanspec::search::{
    certify_from_graphs, certify_max_q1, efgg_construction, efgg_guaranteed, efgg_value,
    emit_certificate, turan_bruteforce, turan_from_graphs, CertifyOptions, SearchCertificate,
};
use fanspec::spectral::{merris_bound, q1, q1_split_closed_form, q1_split_lower_bound};
use fanspec::{graph6, Graph, Tolerances};
use serde::Deserialize;

use output::{Format, Row, RowWriter};

#[derive(Parser, Debug)]
#[command(
    name = "fanspec",
    version,
    about = "Signless Laplacian spectral extremal checks for F_k-free graphs"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// graph6 input file (one graph per line); standard input if omitted
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output if omitted
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for sharded searches (default: one per processor)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Abort on the first malformed input line instead of skipping it
    #[arg(long, global = true)]
    fail_fast: bool,
    #[arg(long, global = true)]
    tol_eigen: Option<f64>,
    #[arg(long, global = true)]
    tol_margin: Option<f64>,
    /// TOML file with defaults; command-line flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Increase log verbosity on standard error
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signless Laplacian spectral radius of each input graph
    Q1,
    /// Whether each input graph avoids F_k, with a witness center otherwise
    FanFree {
        #[arg(long)]
        k: usize,
    },
    /// Exhaustively certify the q1-maximizer among F_k-free graphs of order n
    Certify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Number of enumeration shards
        #[arg(long)]
        shards: Option<usize>,
        #[arg(long)]
        connected_only: bool,
        /// Read the graphs of order n from --input instead of generating them
        #[arg(long)]
        external: bool,
    },
    /// Print one representative per isomorphism class as graph6 lines
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected_only: bool,
        #[arg(long)]
        shards: Option<usize>,
        #[arg(long)]
        shard_index: Option<usize>,
    },
    /// Brute-force Turán number with the closed-form value alongside
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        pattern: PatternArg,
        #[arg(long)]
        k: usize,
        /// Read the graphs of order n from --input instead of generating them
        #[arg(long)]
        external: bool,
    },
    /// q1, the degree-based upper bound and, for split graphs, the closed forms
    Bounds,
    /// Build the complete bipartite extremal construction for ex(n, F_k)
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PatternArg {
    /// kK2, a matching with k edges
    Kk2,
    /// F_k, the k-fan
    Fan,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    tol_eigen: Option<f64>,
    tol_margin: Option<f64>,
    format: Option<Format>,
    jobs: Option<usize>,
    shards: Option<usize>,
    fail_fast: Option<bool>,
    connected_only: Option<bool>,
}

/// Flags merged over the optional config file.
struct RunConfig {
    tolerances: Tolerances,
    format: Format,
    jobs: Option<usize>,
    shards: Option<usize>,
    policy: MalformedPolicy,
    connected_only: bool,
    input: Option<PathBuf>,
    output: Option<PathBuf>,
}

impl RunConfig {
    fn resolve(g: &GlobalArgs, file: ConfigFile) -> Result<Self> {
        let defaults = Tolerances::default();
        let tolerances = Tolerances {
            eigen: g.tol_eigen.or(file.tol_eigen).unwrap_or(defaults.eigen),
            margin: g.tol_margin.or(file.tol_margin).unwrap_or(defaults.margin),
            ..defaults
        };
        tolerances.validate()?;
        let fail_fast = g.fail_fast || file.fail_fast.unwrap_or(false);
        Ok(RunConfig {
            tolerances,
            format: g.format.or(file.format).unwrap_or_default(),
            jobs: g.jobs.or(file.jobs),
            shards: file.shards,
            policy: if fail_fast {
                MalformedPolicy::FailFast
            } else {
                MalformedPolicy::Skip
            },
            connected_only: file.connected_only.unwrap_or(false),
            input: g.input.clone(),
            output: g.output.clone(),
        })
    }

    fn reader(&self) -> Result<Box<dyn BufRead>> {
        Ok(match &self.input {
            Some(p) => Box::new(BufReader::new(
                File::open(p).with_context(|| format!("opening {}", p.display()))?,
            )),
            None => Box::new(BufReader::new(io::stdin())),
        })
    }

    fn graphs(&self) -> Result<impl Iterator<Item = fanspec::Result<Graph>>> {
        Ok(read_graph6(self.reader()?, self.policy))
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn rows(&self) -> Result<RowWriter<Box<dyn Write>>> {
        Ok(RowWriter::new(self.writer()?, self.format))
    }
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    match path {
        None => Ok(ConfigFile::default()),
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing {}", p.display()))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .target(env_logger::Target::Stderr)
        .init();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = RunConfig::resolve(&cli.global, load_config(cli.global.config.as_deref())?)?;
    match cli.command {
        Command::Q1 => cmd_q1(&cfg),
        Command::FanFree { k } => cmd_fan_free(&cfg, k),
        Command::Certify {
            n,
            k,
            shards,
            connected_only,
            external,
        } => cmd_certify(
            &cfg,
            n,
            k,
            shards.or(cfg.shards),
            connected_only || cfg.connected_only,
            external,
        ),
        Command::Enumerate {
            n,
            connected_only,
            shards,
            shard_index,
        } => cmd_enumerate(
            &cfg,
            n,
            connected_only || cfg.connected_only,
            shards.or(cfg.shards),
            shard_index,
        ),
        Command::Turan {
            n,
            pattern,
            k,
            external,
        } => cmd_turan(&cfg, n, pattern, k, external),
        Command::Bounds => cmd_bounds(&cfg),
        Command::Construct { n, k } => cmd_construct(&cfg, n, k),
    }
}

fn cmd_q1(cfg: &RunConfig) -> Result<i32> {
    let mut out = cfg.rows()?;
    for g in cfg.graphs()? {
        let g = g?;
        out.write(
            Row::new()
                .field("graph6", graph6::encode(&g))
                .field("n", g.order())
                .field("e", g.size())
                .real("q1", q1(&g)),
        )?;
    }
    out.finish()?;
    Ok(0)
}

fn cmd_fan_free(cfg: &RunConfig, k: usize) -> Result<i32> {
    let mut out = cfg.rows()?;
    for g in cfg.graphs()? {
        let g = g?;
        let witness = contains_fan(&g, k)?;
        let pairs: Option<Vec<String>> = witness
            .as_ref()
            .map(|w| w.pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect());
        out.write(
            Row::new()
                .field("graph6", graph6::encode(&g))
                .field("k", k)
                .field("fan_free", witness.is_none())
                .field("center", witness.as_ref().map(|w| w.center))
                .field("pairs", pairs),
        )?;
    }
    out.finish()?;
    Ok(0)
}

fn cmd_certify(
    cfg: &RunConfig,
    n: usize,
    k: usize,
    shards: Option<usize>,
    connected_only: bool,
    external: bool,
) -> Result<i32> {
    let opts = CertifyOptions {
        tolerances: cfg.tolerances,
        shards: shards.unwrap_or(1),
        jobs: cfg.jobs,
        connected_only,
    };
    let cert = if external {
        certify_from_graphs(n, k, cfg.graphs()?, &opts)?
    } else {
        certify_max_q1(n, k, &opts)?
    };
    log::info!(
        "n={n} k={k}: scanned {} of {} graphs in {:.3}s, verdict {:?}",
        cert.scanned,
        cert.total,
        cert.elapsed,
        cert.verdict
    );
    let mut sink = cfg.writer()?;
    match cfg.format {
        Format::Json => emit_certificate(&cert, &mut sink)?,
        Format::Tsv => {
            let mut rows = RowWriter::new(&mut sink, Format::Tsv);
            rows.write(certificate_row(&cert))?;
            rows.finish()?;
        }
    }
    sink.flush()?;
    Ok(cert.exit_code())
}

fn certificate_row(c: &SearchCertificate) -> Row {
    Row::new()
        .field("n", c.n)
        .field("k", c.k)
        .field(
            "verdict",
            serde_json::to_value(c.verdict).expect("verdict serializes"),
        )
        .field("in_theorem_regime", c.in_theorem_regime)
        .field("winner", c.winner.as_str())
        .real("winner_q1", c.winner_q1)
        .field("winner_is_split", c.winner_is_split)
        .field("unique", c.unique)
        .opt_real("runner_up_q1", c.runner_up_q1)
        .opt_real("margin", c.margin)
        .opt_real("split_q1", c.split_q1)
        .field("scanned", c.scanned)
        .field("total", c.total)
        .real("elapsed", c.elapsed)
}

fn cmd_enumerate(
    cfg: &RunConfig,
    n: usize,
    connected_only: bool,
    shards: Option<usize>,
    shard_index: Option<usize>,
) -> Result<i32> {
    let mut task = EnumerationTask {
        n,
        connected_only,
        shard: None,
    };
    match (shards, shard_index) {
        (Some(count), Some(index)) => task = task.with_shard(index, count),
        (None, Some(_)) => bail!("--shard-index requires --shards"),
        (Some(_), None) => bail!("--shards requires --shard-index for enumerate"),
        (None, None) => {}
    }
    let mut sink = cfg.writer()?;
    let mut count = 0u64;
    for g in enumerate(task)? {
        writeln!(sink, "{}", graph6::encode(&g))?;
        count += 1;
    }
    sink.flush()?;
    log::info!("enumerated {count} graphs of order {n}");
    Ok(0)
}

fn cmd_turan(
    cfg: &RunConfig,
    n: usize,
    pattern: PatternArg,
    k: usize,
    external: bool,
) -> Result<i32> {
    let pattern = match pattern {
        PatternArg::Kk2 => Pattern::Matching(k),
        PatternArg::Fan => Pattern::Fan(k),
    };
    let record = if external {
        turan_from_graphs(n, pattern, cfg.graphs()?)?
    } else {
        turan_bruteforce(n, pattern)?
    };
    let formula = match pattern {
        Pattern::Matching(k) if k >= 2 && n + 1 >= 2 * k => Some(turan_kk2(n, k)?.0),
        Pattern::Matching(_) => None,
        Pattern::Fan(k) => Some(efgg_value(n, k)?),
    };
    let mut out = cfg.rows()?;
    out.write(
        Row::new()
            .field("n", record.n)
            .field("pattern", pattern.to_string())
            .field("max_edges", record.max_edges)
            .field("formula", formula)
            .field(
                "formula_guaranteed",
                matches!(pattern, Pattern::Matching(_)) || efgg_guaranteed(n, k),
            )
            .field("regime", record.regime.map(|r| r.to_string()))
            .field("extremal", record.extremal.clone()),
    )?;
    out.finish()?;
    Ok(0)
}

/// `k` such that `g` is isomorphic to `S_{n,k}`, if any.
fn split_parameter(g: &Graph) -> Option<usize> {
    let n = g.order();
    if n < 2 {
        return None;
    }
    let full = (0..n).filter(|&v| g.degree(v) == n - 1).count();
    let k = full.min(n - 1);
    if k == 0 {
        return None;
    }
    let s = Graph::split(n, k).ok()?;
    (s.size() == g.size() && canonical_form(&s) == canonical_form(g)).then_some(k)
}

fn cmd_bounds(cfg: &RunConfig) -> Result<i32> {
    let mut out = cfg.rows()?;
    for g in cfg.graphs()? {
        let g = g?;
        let merris = merris_bound(&g).ok();
        let split_k = split_parameter(&g);
        let closed = split_k.and_then(|k| q1_split_closed_form(g.order(), k).ok());
        let lower = split_k.and_then(|k| q1_split_lower_bound(g.order(), k).ok());
        out.write(
            Row::new()
                .field("graph6", graph6::encode(&g))
                .field("n", g.order())
                .field("e", g.size())
                .real("q1", q1(&g))
                .opt_real("merris", merris.map(|m| m.0))
                .field("merris_vertex", merris.map(|m| m.1))
                .field("split_k", split_k)
                .opt_real("split_closed_form", closed)
                .opt_real("split_lower_bound", lower),
        )?;
    }
    out.finish()?;
    Ok(0)
}

fn cmd_construct(cfg: &RunConfig, n: usize, k: usize) -> Result<i32> {
    let (g, spec) = efgg_construction(n, k)?;
    let mut out = cfg.rows()?;
    out.write(
        Row::new()
            .field("graph6", graph6::encode(&g))
            .field("n", n)
            .field("k", k)
            .field("e", g.size())
            .field("efgg_value", efgg_value(n, k)?)
            .field("guaranteed", efgg_guaranteed(n, k))
            .field("parity", serde_json::to_value(spec.parity)?)
            .field("other_side", spec.other_side)
            .field("host_side", spec.host_side)
            .field("embedded", spec.embedded.description.clone())
            .field("embedded_vertices", spec.embedded.vertices)
            .field("embedded_edges", spec.embedded.edges)
            .field("embedded_max_degree", spec.embedded.max_degree),
    )?;
    out.finish()?;
    Ok(0)
}
