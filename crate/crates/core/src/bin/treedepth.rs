use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use treedepth::census::{classify, CENSUS_CSV_HEADER};
use treedepth::elimination::{build_general_upper, greedy_heuristic, min_degree_elimination};
use treedepth::exact::{
    ordering_width, td_lower_bound_path, treedepth_exact_with_limit, treewidth_exact_with_limit, Witness,
    DEFAULT_TREEDEPTH_LIMIT,
};
use treedepth::expansion::{expansion_report_with_limit, lambda2_estimate, DEFAULT_ENUMERATION_LIMIT};
use treedepth::experiments::{
    check_records, run_experiment, verify_suite, write_records, ExperimentConfig, VerifyConfig,
};
use treedepth::random::{ModelParams, RandomSeed};
use treedepth::separators::{find_balanced_kpartition_with_limit, PartitionSearch, DEFAULT_PARTITION_LIMIT};
use treedepth::{Error, Graph};

#[derive(Parser)]
#[command(name = "treedepth", version, about = "Tree-depth and tree-width of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnp,
    Gnm,
    Regular,
    Tree,
}

#[derive(Clone, Copy, ValueEnum)]
enum Parameter {
    Td,
    Tw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Bounds,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random graph and write it as an edge list.
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        /// Number of vertices (tree order for `tree`).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<f64>,
        /// Average degree; `G(n, c/n)`.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Tree-depth or tree-width of a graph file.
    Solve {
        #[arg(value_enum)]
        parameter: Parameter,
        #[arg(value_enum)]
        mode: Mode,
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TREEDEPTH_LIMIT)]
        limit: usize,
    },
    /// Component census as `seed,n,c,k,ell,count` rows.
    Census {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Value for the `c` column; defaults to `2m/n`.
        #[arg(long)]
        c: Option<f64>,
    },
    /// Cheeger constant, vertex expansion and (for regular graphs) λ₂.
    Expand {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        limit: usize,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Balanced k-partition or a certificate that none exists.
    Separate {
        graph: PathBuf,
        k: usize,
        #[arg(long, default_value_t = DEFAULT_PARTITION_LIMIT)]
        limit: usize,
    },
    /// Run an experiment config and write the records CSV.
    Experiment {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant battery.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        graphs: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
}

enum Failure {
    Usage(Error),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    Graph::parse_edge_list(&fs::read_to_string(path)?)
}

fn emit(output: Option<&Path>, text: &str) -> io::Result<()> {
    match output {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn need<T>(v: Option<T>, flag: &str, model: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::InvalidParameter(format!("model {model} needs --{flag}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen {
            model,
            n,
            p,
            c,
            m,
            d,
            seed,
            trial,
            output,
        } => {
            let params = match model {
                Model::Gnp => match (p, c) {
                    (Some(p), None) => ModelParams::Gnp { n, p },
                    (None, Some(c)) => ModelParams::sparse(n, c)?,
                    _ => return Err(Error::InvalidParameter("gnp needs exactly one of --p, --c".into()).into()),
                },
                Model::Gnm => ModelParams::Gnm { n, m: need(m, "m", "gnm")? },
                Model::Regular => ModelParams::Regular { n, d: need(d, "d", "regular")? },
                Model::Tree => ModelParams::LabeledTree { k: n },
            };
            let g = params.sample(RandomSeed::new(seed, trial))?;
            emit(output.as_deref(), &g.to_edge_list())?;
        }
        Command::Solve {
            parameter,
            mode,
            graph,
            limit,
        } => {
            let g = read_graph(&graph)?;
            let mut out = String::new();
            match (parameter, mode) {
                (Parameter::Td, Mode::Exact) => {
                    let r = treedepth_exact_with_limit(&g, limit)?;
                    out += &format!("td {}\n", r.value);
                    if let Witness::Forest(f) = r.witness {
                        out += &f.to_text();
                    }
                }
                (Parameter::Tw, Mode::Exact) => {
                    let r = treewidth_exact_with_limit(&g, limit)?;
                    out += &format!("tw {}\n", r.value);
                    if let Witness::Ordering(o) = r.witness {
                        let o: Vec<String> = o.iter().map(usize::to_string).collect();
                        out += &format!("ordering {}\n", o.join(" "));
                    }
                }
                (Parameter::Td, Mode::Bounds) => {
                    let lower = td_lower_bound_path(&g);
                    let general = build_general_upper(&g);
                    let greedy = greedy_heuristic(&g);
                    let upper = general.height().min(greedy.height());
                    if lower > upper {
                        return Err(Failure::Invariant(format!("lower bound {lower} > upper bound {upper}")));
                    }
                    out += &format!("td_lower {lower}\ntd_upper {upper}\n");
                    let forest = if greedy.height() < general.height() { greedy } else { general.forest };
                    out += &forest.to_text();
                }
                (Parameter::Tw, Mode::Bounds) => {
                    let (order, _) = min_degree_elimination(&g);
                    let upper = ordering_width(&g, &order)?;
                    let o: Vec<String> = order.iter().map(usize::to_string).collect();
                    out += &format!("tw_upper {upper}\nordering {}\n", o.join(" "));
                }
            }
            emit(None, &out)?;
        }
        Command::Census { graph, seed, c } => {
            let g = read_graph(&graph)?;
            let n = g.order();
            let c = c.unwrap_or(if n == 0 { 0.0 } else { 2.0 * g.size() as f64 / n as f64 });
            let mut out = Vec::new();
            writeln!(out, "{CENSUS_CSV_HEADER}")?;
            classify(&g).write_csv(&mut out, seed, n, c)?;
            io::stdout().write_all(&out)?;
        }
        Command::Expand {
            graph,
            limit,
            tolerance,
        } => {
            let g = read_graph(&graph)?;
            let report = expansion_report_with_limit(&g, limit)?;
            let join = |w: &[usize]| w.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let mut out = format!(
                "phi {} {}\nphi_witness {}\nalpha {} {}\nalpha_witness {}\n",
                report.phi.value,
                report.phi.value.to_f64(),
                join(&report.phi.witness),
                report.alpha.value,
                report.alpha.value.to_f64(),
                join(&report.alpha.witness),
            );
            if g.regular_degree().is_some() {
                let s = lambda2_estimate(&g, tolerance)?;
                out += &format!("lambda2 {}\ncheeger_lower {}\n", s.lambda2, s.conductance_bound);
                if s.conductance_bound > report.phi.value.to_f64() + 1e-9 {
                    emit(None, &out)?;
                    return Err(Failure::Invariant("spectral bound exceeds Φ".into()));
                }
            }
            emit(None, &out)?;
        }
        Command::Separate { graph, k, limit } => {
            let g = read_graph(&graph)?;
            let join = |w: &[usize]| w.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let out = match find_balanced_kpartition_with_limit(&g, k, limit)? {
                PartitionSearch::Found(p) => {
                    format!("found k={k}\nA {}\nS {}\nB {}\n", join(&p.a), join(&p.s), join(&p.b))
                }
                PartitionSearch::Absent { k } => format!("absent k={k}\n"),
            };
            emit(None, &out)?;
        }
        Command::Experiment { config, output } => {
            let mut cfg = ExperimentConfig::parse(&fs::read_to_string(&config)?)?;
            if output.is_some() {
                cfg.output = output;
            }
            let records = run_experiment(&cfg)?;
            let mut csv = Vec::new();
            write_records(&mut csv, &records, cfg.timing)?;
            emit(cfg.output.as_deref(), std::str::from_utf8(&csv).expect("CSV is UTF-8"))?;
            let violations = check_records(&records);
            if !violations.is_empty() {
                let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                return Err(Failure::Invariant(lines.join("\n")));
            }
        }
        Command::Verify { seed, graphs, max_n } => {
            let cfg = VerifyConfig {
                graphs,
                max_n,
                ..VerifyConfig::new(seed)
            };
            if max_n == 0 || max_n > 16 {
                return Err(Error::InvalidParameter("--max-n must be between 1 and 16".into()).into());
            }
            let report = verify_suite(&cfg);
            emit(None, &report.to_string())?;
            if !report.passed() {
                return Err(Failure::Invariant("invariant battery failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(1)
        }
    }
}
