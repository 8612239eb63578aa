//! `topoindex`: evaluate degree-based indices, compute sharp bounds and
//! certificates, classify generalised Randić regimes, build extremal graphs
//! and run the exhaustive small-graph check.
//!
//! Exit status: 0 on success, 1 when `verify` finds violations, 2 for usage
//! errors, 3 for an unknown kernel, 4 for invalid or infeasible parameters,
//! 5 for I/O and parse errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use topoindex::constructors::{biregular, circulant_regular, complete_bipartite, disjoint_union};
use topoindex::format::{detect_format, to_graph6};
use topoindex::regimes::{diagram_data, grid, write_diagram_csv};
use topoindex::value::round_sig;
use topoindex::{
    certify_equality, classify, index_value, optimal_pairs, parse_graph, verify_bound, DegreeRange, Direction,
    Error, Format, Graph, Kernel, Table,
};

#[derive(Parser)]
#[command(name = "topoindex", version, about = "Degree-based topological indices and their sharp bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an index on a graph.
    Index {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        kernel: KernelArgs,
    },
    /// Optimal degree pairs and the per-vertex bound coefficient.
    Bound {
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long)]
        direction: Direction,
    },
    /// Decide whether a graph attains the bound.
    Certify {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        kernel: KernelArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        direction: Direction,
    },
    /// Extremal regime of the generalised Randić index.
    Regime {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Regime labels on a (c, alpha) grid, as CSV.
    Diagram {
        #[arg(long)]
        c_min: f64,
        #[arg(long)]
        c_max: f64,
        #[arg(long)]
        c_step: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha_max: f64,
        #[arg(long)]
        alpha_step: f64,
    },
    /// Build an extremal graph and print it as graph6.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a bound against every graph of order n with degrees in range.
    Verify {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long)]
        direction: Direction,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Complete bipartite K_{a,b}.
    Kab { a: usize, b: usize },
    /// (a,b)-biregular graph on (a+b)t vertices.
    Biregular { a: usize, b: usize, t: usize },
    /// r-regular circulant on n vertices.
    Circulant { n: usize, r: usize },
    /// Disjoint union of graph6 strings.
    Union { graphs: Vec<String> },
}

#[derive(Args)]
struct GraphInput {
    /// Graph file, or `-` for standard input.
    #[arg(long)]
    graph: PathBuf,
    /// Detected from the first line when omitted.
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Args)]
struct KernelArgs {
    /// randic, general_randic, zagreb_first or zagreb_second.
    #[arg(long, required_unless_present = "table", conflicts_with = "table")]
    kernel: Option<String>,
    /// Exponent for general_randic.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// CSV file with header `a,b,value` giving a symmetric tabulated kernel.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct RangeArgs {
    /// Minimum degree.
    #[arg(long = "delta", value_name = "D")]
    min: u32,
    /// Maximum degree.
    #[arg(long = "Delta", value_name = "D")]
    max: u32,
}

impl RangeArgs {
    fn range(&self) -> Result<DegreeRange, Error> {
        DegreeRange::new(self.min, self.max)
    }
}

impl KernelArgs {
    fn kernel(&self) -> Result<Kernel, Error> {
        if let Some(path) = &self.table {
            if self.alpha.is_some() {
                return Err(Error::InvalidParameters("--alpha does not apply to a tabulated kernel".into()));
            }
            return Ok(Kernel::Tabulated(Table::from_csv(fs::File::open(path)?)?));
        }
        let name = self.kernel.as_deref().expect("clap enforces --kernel or --table");
        Kernel::from_name(name, self.alpha)
    }
}

fn read_input(path: &Path) -> io::Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path)
    }
}

fn load_graph(input: &GraphInput) -> Result<Graph, Error> {
    let text = read_input(&input.graph)?;
    let format = input.format.unwrap_or_else(|| detect_format(&text));
    parse_graph(&text, format)
}

/// Rounds every float to 15 significant digits so output is reproducible.
fn round_floats(v: &mut Json) {
    match v {
        Json::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x))) {
                *n = x;
            }
        }
        Json::Array(items) => items.iter_mut().for_each(round_floats),
        Json::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn print_json(mut v: Json) -> io::Result<()> {
    round_floats(&mut v);
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &v)?;
    writeln!(out)
}

fn to_json<T: serde::Serialize>(value: &T) -> Json {
    serde_json::to_value(value).expect("report types serialise")
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Index { input, kernel } => {
            let g = load_graph(&input)?;
            let value = index_value(&g, &kernel.kernel()?)?;
            println!("{value}");
        }
        Command::Bound { range, kernel, direction } => {
            let k = kernel.kernel()?;
            let result = optimal_pairs(&k, range.range()?, direction)?;
            let mut v = to_json(&result);
            v["kernel"] = json!(k.name());
            print_json(v)?;
        }
        Command::Certify {
            input,
            kernel,
            range,
            direction,
        } => {
            let g = load_graph(&input)?;
            let k = kernel.kernel()?;
            let range = range.range()?;
            let cert = certify_equality(&g, &k, range, direction)?;
            let best = optimal_pairs(&k, range, direction)?;
            let mut v = to_json(&cert);
            v["kernel"] = json!(k.name());
            v["direction"] = to_json(&direction);
            v["range"] = to_json(&range);
            v["order"] = json!(g.order());
            v["index"] = to_json(&index_value(&g, &k)?);
            v["bound"] = to_json(&best.bound_for_order(g.order()));
            v["optimal_pairs"] = to_json(&best.optimal_pairs);
            print_json(v)?;
        }
        Command::Regime { range, alpha } => {
            print_json(to_json(&classify(range.range()?, alpha)?))?;
        }
        Command::Diagram {
            c_min,
            c_max,
            c_step,
            alpha_min,
            alpha_max,
            alpha_step,
        } => {
            let cs = grid(c_min, c_max, c_step)?;
            let rows = diagram_data(&cs, alpha_min, alpha_max, alpha_step)?;
            write_diagram_csv(&rows, io::stdout().lock())?;
        }
        Command::Construct(what) => {
            let g = match what {
                Construct::Kab { a, b } => complete_bipartite(a, b),
                Construct::Biregular { a, b, t } => biregular(a, b, t)?,
                Construct::Circulant { n, r } => circulant_regular(n, r)?,
                Construct::Union { graphs } => {
                    let parts = graphs
                        .iter()
                        .map(|s| parse_graph(s, Format::Graph6))
                        .collect::<Result<Vec<_>, _>>()?;
                    disjoint_union(&parts)
                }
            };
            println!("{}", to_graph6(&g));
        }
        Command::Verify {
            n,
            range,
            kernel,
            direction,
        } => {
            let report = verify_bound(n, range.range()?, &kernel.kernel()?, direction)?;
            print_json(to_json(&report))?;
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownKernel(_) => 3,
        Error::Parse { .. } | Error::Io(_) | Error::Csv(_) => 5,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
