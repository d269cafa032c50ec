use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use chrono::{NaiveDate, Utc};
use clap::{Args, Parser, Subcommand, ValueEnum};

use depcrit_core::centrality::CentralityParams;
use depcrit_core::depgraph::{Direction, LoadMode};
use depcrit_core::pipeline::{self, PipelineConfig, PipelineError, ReportSources};
use depcrit_core::report::ReportFormat;
use depcrit_core::vulndb::{ReqwestTransport, DEFAULT_TRACKER_URL};

#[derive(Parser)]
#[command(
    name = "depcrit",
    version,
    about = "Rank distribution packages by dependency centrality and audit their maintenance and CVE status"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Graph export (JSON)
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Curated metadata CSV
    #[arg(long, global = true)]
    curated: Option<PathBuf>,
    /// Security tracker JSON endpoint (http(s):// or file://)
    #[arg(long, global = true, env = "DEPCRIT_TRACKER_URL", default_value = DEFAULT_TRACKER_URL)]
    tracker_url: String,
    /// Tracker cache directory
    #[arg(long, global = true, env = "DEPCRIT_CACHE_DIR", default_value = ".depcrit-cache")]
    cache_dir: PathBuf,
    /// Re-download the tracker when the cache is older than this many hours
    #[arg(long, global = true, default_value_t = 24)]
    max_cache_age_hours: u64,
    /// Never touch the network; use the cached tracker as is
    #[arg(long, global = true)]
    offline: bool,
    /// Debian release or suite alias used for open/resolved counts
    #[arg(long, global = true)]
    release: Option<String>,
    /// Number of top-ranked packages to keep
    #[arg(long, global = true)]
    top_k: Option<usize>,
    /// Evaluation date (YYYY-MM-DD, UTC); defaults to today
    #[arg(long, global = true)]
    as_of: Option<NaiveDate>,
    /// Reproduce the published configuration (evaluation date 2024-03-18, top 200, stable)
    #[arg(long, global = true)]
    paper_mode: bool,
    /// Katz attenuation factor
    #[arg(long, global = true, default_value_t = 0.1)]
    alpha: f64,
    /// Katz base weight
    #[arg(long, global = true, default_value_t = 1.0)]
    beta: f64,
    /// Power-iteration tolerance (per node)
    #[arg(long, global = true, default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long, global = true, default_value_t = 1000)]
    max_iterations: usize,
    /// Report raw scores instead of L2-normalized ones
    #[arg(long, global = true)]
    no_normalize: bool,
    /// Share of commits the bus-factor authors must reach
    #[arg(long, global = true, default_value_t = 0.8)]
    bus_factor_threshold: f64,
    /// Fail on dangling edges, unmapped packages and stale caches
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Score the dependency graph and write the ranking
    Rank {
        /// Output directory for ranking.json (and ranking.csv with --format csv)
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Fetch the security tracker and count CVEs per mapped package
    Vuln {
        #[arg(long, default_value = "out/vuln.json")]
        out: PathBuf,
    },
    /// Mine maintenance metrics from local clones or commit logs
    Metrics {
        /// Directory holding one clone (<key>/.git) or log (<key>.tsv) per package
        #[arg(long)]
        repos: PathBuf,
        #[arg(long, default_value = "out/metrics.json")]
        out: PathBuf,
    },
    /// Join the stage artifacts into the final report
    Report {
        #[arg(long, default_value = "out/ranking.json")]
        ranking: PathBuf,
        #[arg(long)]
        vuln: Option<PathBuf>,
        #[arg(long)]
        metrics: Option<PathBuf>,
        /// Report file (json) or bundle directory (csv)
        #[arg(long, default_value = "out/report.json")]
        out: PathBuf,
    },
    /// Graph utilities
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Print graph statistics, a node's neighbourhood, or a subgraph export
    Inspect {
        /// Show dependencies and dependents of this node
        #[arg(long)]
        node: Option<String>,
        /// Emit the subgraph reachable from these roots instead of statistics
        #[arg(long = "subgraph-root")]
        subgraph_roots: Vec<String>,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Dir::Forward)]
        direction: Dir,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dir {
    Forward,
    Reverse,
}

impl GlobalArgs {
    fn config(&self) -> PipelineConfig {
        let as_of = self.as_of.unwrap_or_else(|| {
            if self.paper_mode {
                PipelineConfig::study_as_of()
            } else {
                Utc::now().date_naive()
            }
        });
        let mut cfg = PipelineConfig::new(as_of);
        cfg.graph_path = self.graph.clone();
        cfg.curated_path = self.curated.clone();
        cfg.tracker_endpoint = self.tracker_url.clone();
        cfg.cache_dir = self.cache_dir.clone();
        cfg.max_cache_age = Duration::from_secs(self.max_cache_age_hours * 3600);
        cfg.offline = self.offline;
        if let Some(r) = &self.release {
            cfg.release = r.clone();
        }
        if let Some(k) = self.top_k {
            cfg.top_k = k;
        }
        cfg.centrality = CentralityParams {
            alpha: self.alpha,
            beta: self.beta,
            tolerance: self.tolerance,
            max_iterations: self.max_iterations,
            normalize: !self.no_normalize,
        };
        cfg.bus_factor_threshold = self.bus_factor_threshold;
        cfg.strict = self.strict;
        cfg
    }
}

fn run(cli: Cli) -> Result<(), PipelineError> {
    let cfg = cli.global.config();
    match cli.command {
        Command::Rank { out } => {
            let artifact = pipeline::cmd_rank(&cfg, &out, cli.global.format == Format::Csv)?;
            eprintln!(
                "converged after {} iterations (residual {:e}); spectral radius bound {}",
                artifact.iterations, artifact.residual, artifact.spectral_radius_bound
            );
            let lr = artifact.load_report;
            eprintln!(
                "{} nodes, {} edges ({} duplicate, {} dangling, {} ignored); wrote {} ranked packages to {}",
                artifact.graph_summary.node_count,
                artifact.graph_summary.edge_count,
                lr.duplicate_edges,
                lr.dangling_edges,
                lr.ignored_edges,
                artifact.entries.len(),
                out.display()
            );
        }
        Command::Vuln { out } => {
            let transport = ReqwestTransport::default();
            let artifact = pipeline::cmd_vuln(&cfg, &transport, Utc::now(), &out)?;
            for w in &artifact.warnings {
                eprintln!("warning: {w}");
            }
            if !artifact.unmapped.is_empty() {
                eprintln!("unmapped packages: {}", artifact.unmapped.join(", "));
            }
            eprintln!(
                "snapshot {} fetched {}{}; release {} ({}); wrote {} rows to {}",
                artifact.snapshot.source_url,
                artifact.snapshot.fetched_at,
                if artifact.snapshot.stale { " (stale)" } else { "" },
                artifact.snapshot.release,
                artifact.snapshot.release_codename,
                artifact.stats.len(),
                out.display()
            );
        }
        Command::Metrics { repos, out } => {
            let artifact = pipeline::cmd_metrics(&cfg, &repos, &out)?;
            for id in &artifact.missing {
                eprintln!("warning: no repository for {id}");
            }
            for e in &artifact.errors {
                eprintln!("warning: {}: {}", e.package_id, e.error);
            }
            eprintln!("wrote {} metric rows to {}", artifact.metrics.len(), out.display());
        }
        Command::Report {
            ranking,
            vuln,
            metrics,
            out,
        } => {
            let format = match cli.global.format {
                Format::Json => ReportFormat::Json,
                Format::Csv => ReportFormat::CsvBundle,
            };
            let report = pipeline::cmd_report(
                &cfg,
                &ReportSources {
                    ranking,
                    vuln,
                    metrics,
                },
                format,
                &out,
            )?;
            for n in &report.notes {
                eprintln!("note: {n}");
            }
            eprintln!("wrote report with {} rows to {}", report.tables.ranking.len(), out.display());
        }
        Command::Graph {
            command:
                GraphCommand::Inspect {
                    node,
                    subgraph_roots,
                    depth,
                    direction,
                },
        } => {
            let path = cfg
                .graph_path
                .as_deref()
                .ok_or_else(|| PipelineError::Config("a graph file is required (--graph)".into()))?;
            let mode = if cfg.strict { LoadMode::Strict } else { LoadMode::Lenient };
            let (graph, load_report) = pipeline::load_graph_file(path, mode)?;
            if subgraph_roots.is_empty() {
                let inspection = pipeline::inspect_graph(&graph, load_report, node.as_deref())?;
                println!("{}", inspection.to_json());
            } else {
                let direction = match direction {
                    Dir::Forward => Direction::Forward,
                    Dir::Reverse => Direction::Reverse,
                };
                println!(
                    "{}",
                    pipeline::subgraph_document(&graph, &subgraph_roots, direction, depth)?
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = e.remediation() {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(e.class().exit_code() as u8)
        }
    }
}
