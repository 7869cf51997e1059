use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bicensus::diag::{asymptotic_report, nbi_diagonal_exact};
use bicensus::gf::{f_closed, pde_chain, GfWorkspace};
use bicensus::oracle::{count_bipartite, count_complete};
use bicensus::verify::{run_suite, SUITE_NAMES};
use bicensus::{build_table, Error, Report};

mod output;

use output::{emit, Table};

#[derive(Parser, Debug)]
#[command(
    name = "bicensus",
    version,
    about = "Connected spanning subgraphs of K_{r,s} counted by Betti number"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "BICENSUS_THREADS")]
    threads: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of N_bi(r, s, k) for r + s <= max-n.
    Census {
        #[arg(long)]
        max_n: usize,
        /// Only this Betti number (default: every k up to 4).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Diagonal counts N_bi(n, k) = sum_r C(n, r) N_bi(r, n - r, k).
    Diagonal {
        #[arg(long)]
        k: usize,
        /// A single n, computed without the bivariate table (k <= 4).
        #[arg(long, conflicts_with = "max_n")]
        n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Coefficients of F_k as counts, from the closed forms (k <= 4) or the
    /// PDE solver.
    Series {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, requires = "s")]
        r: Option<usize>,
        #[arg(long, requires = "r")]
        s: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Exact diagonal counts against their leading asymptotics.
    Asympt {
        #[arg(long)]
        k: u32,
        /// Sizes to report; repeat the flag for several.
        #[arg(long)]
        n: Vec<usize>,
    },
    /// Exhaustive count of connected spanning subgraphs with q edges, in
    /// K_{r,s} (--r, --s) or K_n (--n).
    Oracle {
        #[arg(long, requires = "s", conflicts_with = "n")]
        r: Option<usize>,
        #[arg(long, requires = "r")]
        s: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: usize,
    },
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Verification(String),
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Integrity(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

#[derive(Serialize)]
struct DiagonalRow {
    n: usize,
    k: usize,
    count: String,
}

#[derive(Serialize)]
struct SeriesRow {
    r: usize,
    s: usize,
    k: usize,
    count: String,
}

#[derive(Serialize)]
struct AsymptRow {
    n: usize,
    exact: String,
    predicted: String,
    ratio: f64,
}

#[derive(Serialize)]
struct OracleRow {
    host: String,
    q: usize,
    count: String,
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: &'a str,
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

fn series_for(k: usize, order: usize) -> Result<bicensus::BiSeries, Failure> {
    if order == 0 {
        return Err(Failure::Usage("--order must be at least 1".into()));
    }
    let ws = GfWorkspace::build(order)?;
    if k <= 4 {
        Ok(f_closed(&ws, k as u32)?)
    } else {
        Ok(pde_chain(&ws, k)?.swap_remove(k))
    }
}

fn run(cli: &Cli, sink: &mut dyn Write) -> Result<bool, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Census { max_n, k } => {
            let table = build_table(*max_n, k.unwrap_or(4))?;
            let rows = table.rows(*k);
            emit(
                sink,
                fmt,
                &Table::new(&["r", "s", "k", "count"], &rows, |r| {
                    vec![
                        r.r.to_string(),
                        r.s.to_string(),
                        r.k.to_string(),
                        r.count.clone(),
                    ]
                }),
            )?;
        }
        Command::Diagonal { k, n, max_n } => {
            let rows: Vec<DiagonalRow> = match (n, max_n) {
                (Some(n), _) => {
                    vec![DiagonalRow {
                        n: *n,
                        k: *k,
                        count: nbi_diagonal_exact(*k, *n)?.to_string(),
                    }]
                }
                (None, Some(max_n)) => {
                    let table = build_table(*max_n, *k)?;
                    (1..=*max_n)
                        .map(|n| {
                            Ok(DiagonalRow {
                                n,
                                k: *k,
                                count: table.diagonal_count(n, *k)?.to_string(),
                            })
                        })
                        .collect::<Result<_, Error>>()?
                }
                (None, None) => return Err(Failure::Usage("diagonal needs --n or --max-n".into())),
            };
            emit(
                sink,
                fmt,
                &Table::new(&["n", "k", "count"], &rows, |r| {
                    vec![r.n.to_string(), r.k.to_string(), r.count.clone()]
                }),
            )?;
        }
        Command::Series { k, order, r, s } => {
            let f = series_for(*k, *order)?;
            let mut rows = Vec::new();
            let cells: Vec<(usize, usize)> = match (r, s) {
                (Some(r), Some(s)) => {
                    if *r > *order || *s > *order {
                        return Err(Failure::Usage(format!(
                            "(r, s) = ({r}, {s}) exceeds --order {order}"
                        )));
                    }
                    vec![(*r, *s)]
                }
                _ => (0..=*order)
                    .flat_map(|r| (0..=*order).map(move |s| (r, s)))
                    .collect(),
            };
            for (r, s) in cells {
                rows.push(SeriesRow {
                    r,
                    s,
                    k: *k,
                    count: f.integer_count(r, s)?.to_string(),
                });
            }
            emit(
                sink,
                fmt,
                &Table::new(&["r", "s", "k", "count"], &rows, |x| {
                    vec![
                        x.r.to_string(),
                        x.s.to_string(),
                        x.k.to_string(),
                        x.count.clone(),
                    ]
                }),
            )?;
        }
        Command::Verify { suite, order } => {
            if *order == 0 {
                return Err(Failure::Usage("--order must be at least 1".into()));
            }
            let rep = run_suite(suite, *order).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown suite {suite:?}; expected one of {}",
                    SUITE_NAMES.join(", ")
                ))
            })?;
            emit_report(sink, fmt, &rep)?;
            return Ok(rep.all_passed());
        }
        Command::Asympt { k, n } => {
            let sizes: Vec<usize> = if n.is_empty() {
                if *k == 1 {
                    vec![250, 500, 1000, 2000]
                } else {
                    vec![50, 100, 200, 400]
                }
            } else {
                n.clone()
            };
            let reports = asymptotic_report(*k, &sizes)?;
            match fmt {
                Format::Json => output::write_json(sink, &reports)?,
                _ => {
                    let rows: Vec<AsymptRow> = reports
                        .into_iter()
                        .map(|d| AsymptRow {
                            n: d.n,
                            exact: d.exact,
                            predicted: d.predicted,
                            ratio: d.ratio,
                        })
                        .collect();
                    emit(
                        sink,
                        fmt,
                        &Table::new(&["n", "exact", "predicted", "ratio"], &rows, |r| {
                            vec![
                                r.n.to_string(),
                                r.exact.clone(),
                                r.predicted.clone(),
                                format!("{:.10}", r.ratio),
                            ]
                        }),
                    )?;
                }
            }
        }
        Command::Oracle { r, s, n, q } => {
            let row = match (r, s, n) {
                (Some(r), Some(s), None) => OracleRow {
                    host: format!("K_{{{r},{s}}}"),
                    q: *q,
                    count: count_bipartite(*r, *s, *q)?.to_string(),
                },
                (None, None, Some(n)) => OracleRow {
                    host: format!("K_{n}"),
                    q: *q,
                    count: count_complete(*n, *q)?.to_string(),
                },
                _ => return Err(Failure::Usage("oracle needs --r and --s, or --n".into())),
            };
            if fmt == Format::Text {
                writeln!(sink, "{}", row.count)?;
            } else {
                emit(
                    sink,
                    fmt,
                    &Table::new(&["host", "q", "count"], std::slice::from_ref(&row), |x| {
                        vec![x.host.clone(), x.q.to_string(), x.count.clone()]
                    }),
                )?;
            }
        }
    }
    Ok(true)
}

fn emit_report(sink: &mut dyn Write, fmt: Format, rep: &Report) -> Result<(), Failure> {
    match fmt {
        Format::Text => writeln!(sink, "{rep}")?,
        Format::Json => output::write_json(sink, rep)?,
        Format::Csv => {
            let rows: Vec<CheckRow> = rep
                .checks
                .iter()
                .map(|c| CheckRow {
                    suite: &rep.suite,
                    name: &c.name,
                    passed: c.passed,
                    detail: c.detail.as_deref().unwrap_or(""),
                })
                .collect();
            emit(
                sink,
                fmt,
                &Table::new(&["suite", "name", "passed", "detail"], &rows, |c| {
                    vec![
                        c.suite.to_string(),
                        c.name.to_string(),
                        c.passed.to_string(),
                        c.detail.to_string(),
                    ]
                }),
            )?;
        }
    }
    Ok(())
}

fn configure_threads(threads: Option<usize>) -> Result<(), Failure> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with status 2 on its own parse errors
    let cli = Cli::parse();
    let outcome = configure_threads(cli.threads).and_then(|()| match &cli.out {
        Some(path) => {
            let mut file = io::BufWriter::new(File::create(path)?);
            let ok = run(&cli, &mut file)?;
            file.flush()?;
            Ok(ok)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            run(&cli, &mut lock)
        }
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("bicensus: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("bicensus: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("bicensus: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn series_for_uses_solver_beyond_stored_forms() {
        let f = series_for(5, 5);
        assert!(f.is_ok());
        assert!(matches!(series_for(1, 0), Err(Failure::Usage(_))));
    }
}
