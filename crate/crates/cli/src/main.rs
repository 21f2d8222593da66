use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context};
use clap::{Parser, Subcommand, ValueEnum};

use greedygeo::delaunay::delaunay_graph;
use greedygeo::routing::route;
use greedygeo::verifier::supports_greedy;
use greedygeo::{Point, Scalar};

use greedygeo_cli::experiment::{run_experiment, ExperimentConfig};
use greedygeo_cli::io::InstanceFile;
use greedygeo_cli::render::{render_svg, RenderOptions};

/// Exact verification toolkit for greedy routing over geometric graphs.
///
/// Exit codes: 0 success, 1 negative `check` verdict, 2 bad configuration
/// or input, 3 experiment assertion failure.
#[derive(Parser)]
#[command(name = "greedygeo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Delaunay graph of a point set (canonical non-degenerate
    /// edges) and write it as a graph file
    Triangulate {
        #[arg(long)]
        input: PathBuf,
        /// Output path; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide greedy-routing support for a graph file; prints the verdict
    /// as JSON and exits 0 (supports) or 1 (does not)
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Greedy-route from a source site toward a destination point
    Route {
        #[arg(long)]
        input: PathBuf,
        /// Source site id
        #[arg(long)]
        source: usize,
        /// Destination point as "x,y" with exact rational coordinates
        #[arg(long)]
        dest: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a batch experiment described by a JSON config file
    Experiment {
        #[arg(long)]
        input: PathBuf,
        /// Report path; the CSV summary lands next to it with a .csv
        /// extension. Stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Override the seed in the config
        #[arg(long)]
        seed: Option<u64>,
        /// Stdout format when no output path is given
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Render an instance as SVG
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Draw the Voronoi diagram (dash-dot)
        #[arg(long)]
        voronoi: bool,
        /// Draw the graph edges (solid)
        #[arg(long)]
        edges: bool,
        /// Draw one site's vertex region boundary (dashed)
        #[arg(long)]
        region: Option<usize>,
        /// Trace a greedy route; requires --route-dest
        #[arg(long)]
        route_source: Option<usize>,
        /// Route destination as "x,y"; requires --route-source
        #[arg(long)]
        route_dest: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Triangulate { input, output } => {
            let sites = InstanceFile::read(&input)?.sites()?;
            let g = delaunay_graph(&sites);
            emit(output.as_deref(), &InstanceFile::from_graph(&g).to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { input, output } => {
            let g = InstanceFile::read(&input)?.graph()?;
            let verdict = supports_greedy(&g);
            let mut json = serde_json::to_string_pretty(&verdict)?;
            json.push('\n');
            emit(output.as_deref(), &json)?;
            Ok(if verdict.supports {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Route {
            input,
            source,
            dest,
            output,
        } => {
            let g = InstanceFile::read(&input)?.graph()?;
            ensure!(source < g.len(), "source id {source} out of range");
            let dest = parse_point(&dest)?;
            let out = route(&g, source, &dest);
            let mut json = serde_json::to_string_pretty(&out)?;
            json.push('\n');
            emit(output.as_deref(), &json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment {
            input,
            output,
            seed,
            format,
        } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("cannot read {}", input.display()))?;
            let mut config: ExperimentConfig =
                serde_json::from_str(&text).context("cannot parse experiment config")?;
            if let Some(s) = seed {
                config.seed = s;
            }
            let report = run_experiment(&config)?;
            eprintln!(
                "{} trials, {} assertion failures, {:.2?} elapsed",
                report.trials.len(),
                report.trials.iter().filter(|t| !t.assertions_held).count(),
                report.wall_clock
            );
            match &output {
                Some(p) => {
                    fs::write(p, report.to_json())
                        .with_context(|| format!("cannot write {}", p.display()))?;
                    let csv = p.with_extension("csv");
                    fs::write(&csv, report.to_csv())
                        .with_context(|| format!("cannot write {}", csv.display()))?;
                }
                None => match format {
                    Format::Json => print!("{}", report.to_json()),
                    Format::Csv => print!("{}", report.to_csv()),
                },
            }
            Ok(if report.all_assertions_held {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Render {
            input,
            output,
            voronoi,
            edges,
            region,
            route_source,
            route_dest,
        } => {
            let g = InstanceFile::read(&input)?.graph()?;
            if let Some(i) = region {
                ensure!(i < g.len(), "region site id {i} out of range");
            }
            let traced = match (route_source, route_dest) {
                (Some(src), Some(d)) => {
                    ensure!(src < g.len(), "route source id {src} out of range");
                    Some(route(&g, src, &parse_point(&d)?))
                }
                (None, None) => None,
                _ => bail!("--route-source and --route-dest must be given together"),
            };
            let svg = render_svg(
                &g,
                &RenderOptions {
                    voronoi,
                    graph_edges: edges,
                    vertex_region: region,
                    route: traced,
                },
            );
            fs::write(&output, svg)
                .with_context(|| format!("cannot write {}", output.display()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_point(s: &str) -> anyhow::Result<Point> {
    let (x, y) = s
        .split_once(',')
        .context("destination must look like \"x,y\"")?;
    let x: Scalar = x.trim().parse().context("bad x coordinate")?;
    let y: Scalar = y.trim().parse().context("bad y coordinate")?;
    Ok(Point::new(x, y))
}
