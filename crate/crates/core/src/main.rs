use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use oneconn::bench::{chain_suite, er_suite, run_suite, BenchRecord, BenchReport, ErSuite, Status};
use oneconn::covariance::{
    covariance_matrix, det_linear_subgraphs, inverse_numerator, naive_inverse, trek_rule,
    CovarianceError, CovarianceResult,
};
use oneconn::graph::{gen_cycle_chain, gen_erdos_renyi, ErdosRenyiParams, MixedGraph};
use oneconn::ideal::degree_scan;
use oneconn::ident::identifiability_report;

#[derive(Parser)]
#[command(name = "oneconn", version, about = "Symbolic covariance matrices of linear structural equation models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Per-method time limit in seconds (bench).
    #[arg(long, global = true, default_value_t = 600.0)]
    time_limit: f64,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Oneconn)]
    method: MethodArg,
    /// Largest degree scanned by `ideal`.
    #[arg(long, global = true, default_value_t = 2)]
    degree: usize,
    /// Random evaluations used by `ident`.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Oneconn,
    Naive,
}

#[derive(Subcommand)]
enum Command {
    /// Covariance numerators and determinant.
    Cov { graph: PathBuf },
    /// det(I - Lambda).
    Det { graph: PathBuf },
    /// det(I - Lambda) * (I - Lambda)^-1.
    Adj { graph: PathBuf },
    /// Covariance of an acyclic model by the trek rule.
    Treks { graph: PathBuf },
    /// Generic identifiability verdict.
    Ident { graph: PathBuf },
    /// Vanishing-ideal search in degrees 1..=--degree.
    Ideal { graph: PathBuf },
    /// Generate a graph.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Time both covariance methods on a graph family.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Chain of `d` directed cycles of even length.
    Chain {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        length: usize,
    },
    /// Random mixed graph with a given number of directed cycles.
    Er(ErArgs),
}

#[derive(Args)]
struct ErArgs {
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 0.02)]
    p_directed: f64,
    #[arg(long, default_value_t = 0.0)]
    p_bidirected: f64,
    #[arg(long, default_value_t = 0)]
    cycles: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_attempts: u64,
}

#[derive(Subcommand)]
enum BenchCommand {
    Chain {
        #[arg(long = "d", value_delimiter = ',', default_values_t = 1..=8)]
        ds: Vec<usize>,
        #[arg(long = "lengths", value_delimiter = ',', default_values_t = [2, 6])]
        lengths: Vec<usize>,
    },
    Er {
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 0.02)]
        p_directed: f64,
        #[arg(long, value_delimiter = ',', default_values_t = (0..=10).map(|k| k as f64 / 100.0))]
        p_bidirected: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = 0..=10)]
        cycles: Vec<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        max_attempts: u64,
    },
}

enum Failure {
    Input(String),
    Precondition(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<MixedGraph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    MixedGraph::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn sink(opts: &Options) -> Result<Box<dyn Write>, Failure> {
    Ok(match &opts.output {
        Some(p) => Box::new(io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(opts: &Options, text: String) -> Result<(), Failure> {
    let mut out = sink(opts)?;
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn matrix_text(det: &str, label: &str, rows: &[Vec<String>]) -> String {
    let mut s = format!("det = {det}\n");
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let _ = writeln!(s, "{label}_{{{},{}}} = {e}", i + 1, j + 1);
        }
    }
    s
}

fn covariance_output(opts: &Options, cov: &CovarianceResult) -> String {
    let ser = cov.serialize();
    match opts.format {
        Format::Structured => serde_json::to_string(&ser).expect("serializable"),
        Format::Text => matrix_text(&ser.det, "f", &ser.numerators),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Cov { graph } => {
            let g = read_graph(graph)?;
            let cov = match opts.method {
                MethodArg::Oneconn => covariance_matrix(&g),
                MethodArg::Naive => naive_inverse(&g),
            };
            emit(opts, covariance_output(opts, &cov))
        }
        Command::Det { graph } => {
            let det = det_linear_subgraphs(&read_graph(graph)?).to_string();
            emit(
                opts,
                match opts.format {
                    Format::Structured => json!({ "det": det }).to_string(),
                    Format::Text => det,
                },
            )
        }
        Command::Adj { graph } => {
            let inv = inverse_numerator(&read_graph(graph)?);
            let det = inv.det.to_string();
            let rows = inv.matrix.rows();
            emit(
                opts,
                match opts.format {
                    Format::Structured => json!({ "det": det, "adjugate": rows }).to_string(),
                    Format::Text => matrix_text(&det, "N", &rows),
                },
            )
        }
        Command::Treks { graph } => {
            let g = read_graph(graph)?;
            let cov = trek_rule(&g).map_err(|e| match e {
                CovarianceError::Cyclic => Failure::Precondition(e.to_string()),
                other => Failure::Precondition(other.to_string()),
            })?;
            emit(opts, covariance_output(opts, &cov))
        }
        Command::Ident { graph } => {
            let g = read_graph(graph)?;
            if opts.trials == 0 {
                return Err(Failure::Precondition("--trials must be at least 1".into()));
            }
            let report = identifiability_report(&g, opts.trials, opts.seed);
            let text = match opts.format {
                Format::Structured => serde_json::to_string(&report).expect("serializable"),
                Format::Text => {
                    let mut s = format!(
                        "params: {}\nrank: {}\nverdict: {}\nsimple: {}\n",
                        report.params,
                        report.rank,
                        serde_json::to_value(report.verdict).expect("serializable").as_str().unwrap_or(""),
                        report.simple
                    );
                    if let Some(sp) = report.special_point {
                        let _ = writeln!(s, "specialPoint: {sp}");
                    }
                    s
                }
            };
            emit(opts, text)
        }
        Command::Ideal { graph } => {
            let g = read_graph(graph)?;
            if opts.degree == 0 {
                return Err(Failure::Precondition("--degree must be at least 1".into()));
            }
            let reports = degree_scan(&g, opts.degree);
            let text = match opts.format {
                Format::Structured => json!({ "degrees": reports }).to_string(),
                Format::Text => {
                    let mut s = String::new();
                    for r in &reports {
                        let _ = writeln!(
                            s,
                            "degree {}: {} columns, weak prune {}, full prune {}, kernel dimension {}",
                            r.degree, r.initial_columns, r.weak_pruned, r.full_pruned, r.kernel_dim
                        );
                        for rel in &r.relations {
                            let _ = writeln!(s, "  {rel}");
                        }
                    }
                    s
                }
            };
            emit(opts, text)
        }
        Command::Gen(GenCommand::Chain { d, length }) => {
            let g = gen_cycle_chain(*d, *length).map_err(|e| Failure::Precondition(e.to_string()))?;
            emit(opts, g.to_json())
        }
        Command::Gen(GenCommand::Er(a)) => {
            let g = gen_erdos_renyi(&ErdosRenyiParams {
                n: a.n,
                p_directed: a.p_directed,
                p_bidirected: a.p_bidirected,
                cycles: a.cycles,
                seed: opts.seed,
                max_attempts: a.max_attempts,
            })
            .map_err(|e| Failure::Precondition(e.to_string()))?;
            emit(opts, g.to_json())
        }
        Command::Bench(cmd) => {
            if !(opts.time_limit >= 0.0 && opts.time_limit.is_finite()) {
                return Err(Failure::Precondition("--time-limit must be a nonnegative number".into()));
            }
            let graphs = match cmd {
                BenchCommand::Chain { ds, lengths } => chain_suite(ds, lengths),
                BenchCommand::Er {
                    n,
                    p_directed,
                    p_bidirected,
                    cycles,
                    max_attempts,
                } => er_suite(&ErSuite {
                    n: *n,
                    p_directed: *p_directed,
                    p_bidirected: p_bidirected.clone(),
                    cycles: cycles.clone(),
                    seed: opts.seed,
                    max_attempts: *max_attempts,
                }),
            }
            .map_err(|e| Failure::Precondition(e.to_string()))?;
            let mut out = sink(opts)?;
            let mut write_err = None;
            let report = run_suite(&graphs, Duration::from_secs_f64(opts.time_limit), |r| {
                if let Err(e) = write_record(&mut out, opts.format, r) {
                    write_err.get_or_insert(e);
                }
            });
            if let Some(e) = write_err {
                return Err(e.into());
            }
            write_summary(&mut out, opts.format, &report)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn write_record(out: &mut dyn Write, format: Format, r: &BenchRecord) -> io::Result<()> {
    match format {
        Format::Structured => writeln!(out, "{}", serde_json::to_string(r).expect("serializable")),
        Format::Text => {
            let graph = serde_json::to_string(&r.graph).expect("serializable");
            let status = match r.status {
                Status::Ok => "ok",
                Status::Timeout => "timeout",
            };
            let terms = r
                .term_counts
                .map(|t| format!("det {} terms, max numerator {} terms", t.det, t.max_numerator))
                .unwrap_or_default();
            writeln!(
                out,
                "{graph} {:<7} {:>10.4}s {status:<7} {terms}",
                r.method.name(),
                r.wall_time_seconds
            )
        }
    }
}

fn write_summary(out: &mut dyn Write, format: Format, report: &BenchReport) -> io::Result<()> {
    let s = &report.summary;
    match format {
        Format::Structured => writeln!(
            out,
            "{}",
            json!({ "summary": s })
        ),
        Format::Text => {
            writeln!(
                out,
                "graphs {}: oneconn faster on {} ({:.1}%), naive faster on {}; {} of {} finished by both agree",
                s.graphs,
                s.oneconn_wins,
                100.0 * s.oneconn_win_rate,
                s.naive_wins,
                s.agreeing,
                s.both_finished
            )?;
            for f in &s.fits {
                writeln!(
                    out,
                    "fit {} length {}: t = {:.3e} * {:.3}^d ({} points)",
                    f.method.name(),
                    f.length,
                    f.a,
                    f.b,
                    f.points
                )?;
            }
            Ok(())
        }
    }
}
