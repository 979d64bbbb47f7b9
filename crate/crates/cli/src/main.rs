//! `ringspec`: spectra, bounds, oracle values and verification reports for
//! the total graph of `M_n(F_q)` and its regular subgraph.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ringspec::bounds::bound_table;
use ringspec::finfield::prime_power;
use ringspec::matrix_ring::CountReport;
use ringspec::oracle::{oracle_on, verify_all, GraphKind, Quantity, DEFAULT_GRID};
use ringspec::totalgraph::{closed_form_spectrum, total_graph};
use ringspec::{Budgets, Error, Field, OracleOptions, SpectrumReport, VerifyConfig};

use render::Format;

const SCHEMA: &str = "ringspec/1";
const REPRO_FILE: &str = "ringspec-repro.json";

#[derive(Parser, Debug)]
#[command(name = "ringspec", version, about)]
struct Cli {
    /// Budget overrides applied after RINGSPEC_BUDGET, e.g. `adjacency=600,search_vertices=64`.
    #[arg(long, global = true)]
    budget: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Laplacian spectrum of T_n(q).
    Spectrum {
        #[command(flatten)]
        cell: Cell,
        #[arg(long, value_enum, default_value_t = SpectrumMethod::Closed)]
        method: SpectrumMethod,
        #[command(flatten)]
        out: Output,
    },
    /// Independence, chromatic and clique bounds.
    Bounds {
        #[command(flatten)]
        cell: Cell,
        #[command(flatten)]
        out: Output,
    },
    /// Exact alpha, omega or chi of T_n(q) or Gamma_n(q).
    Oracle {
        #[arg(value_enum)]
        quantity: OracleQuantity,
        #[arg(long, value_enum, default_value_t = GraphArg::Regular)]
        graph: GraphArg,
        #[command(flatten)]
        cell: Cell,
        /// Return the lexicographically smallest optimal witness.
        #[arg(long)]
        canonical_witness: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Cross-check closed forms, brute force and oracle values over a grid.
    Verify {
        /// Use the grid (2,2), (2,3), (2,4), (3,2).
        #[arg(long)]
        default_grid: bool,
        /// A grid cell `n,q`; repeatable.
        #[arg(long = "grid", value_parser = parse_cell)]
        grid: Vec<(usize, u64)>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random sum-graphs checked after the grid.
        #[arg(long, default_value_t = 100)]
        random_graphs: usize,
        /// Run the acceptance grid with seed 42 and write the report file.
        #[arg(long, conflicts_with_all = ["default_grid", "grid", "seed", "random_graphs"])]
        repro: bool,
        /// Treat rejected grid cells as failures.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        out: Output,
    },
    /// |GL_n(F_q)|, c_n(q) and the rank census.
    Counts {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// Also enumerate every matrix and count ranks directly.
        #[arg(long)]
        census: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct Cell {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u64,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SpectrumMethod {
    Closed,
    Character,
    Brute,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OracleQuantity {
    Alpha,
    Omega,
    Chi,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GraphArg {
    Total,
    Regular,
}

fn parse_cell(s: &str) -> Result<(usize, u64), String> {
    let (n, q) = s.split_once(',').ok_or("expected `n,q`")?;
    let n = n.trim().parse().map_err(|_| format!("bad n in `{s}`"))?;
    let q = q.trim().parse().map_err(|_| format!("bad q in `{s}`"))?;
    Ok((n, q))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct CellReport<T: Serialize> {
    n: usize,
    q: u64,
    #[serde(flatten)]
    report: T,
}

fn json<T: Serialize>(command: &str, body: T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        command,
        body,
    })?;
    text.push('\n');
    Ok(text)
}

fn emit(out: &Output, text: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn budgets(cli: &Cli) -> anyhow::Result<Budgets> {
    let b = Budgets::from_env()?;
    Ok(match &cli.budget {
        Some(spec) => b.with_overrides(spec)?,
        None => b,
    })
}

fn spectrum(n: usize, q: u64, method: SpectrumMethod, budgets: &Budgets) -> ringspec::Result<SpectrumReport> {
    match method {
        SpectrumMethod::Closed => closed_form_spectrum(n, q),
        SpectrumMethod::Character => total_graph(n, q, budgets).and_then(|t| t.spectrum_via_characters(budgets)),
        SpectrumMethod::Brute => total_graph(n, q, budgets).and_then(|t| t.spectrum_bruteforce(budgets)),
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let budgets = budgets(cli)?;
    match &cli.command {
        Command::Spectrum { cell, method, out } => {
            let report = spectrum(cell.n, cell.q, *method, &budgets)?;
            let text = match out.format {
                Format::Json => json(
                    "spectrum",
                    CellReport {
                        n: cell.n,
                        q: cell.q,
                        report: &report,
                    },
                )?,
                Format::Csv => render::spectrum_csv(cell.n, cell.q, &report)?,
                Format::Table => render::spectrum_table(cell.n, cell.q, &report),
            };
            emit(out, &text)?;
        }
        Command::Bounds { cell, out } => {
            let rows = bound_table(cell.n, cell.q)?;
            let text = match out.format {
                Format::Json => json(
                    "bounds",
                    CellReport {
                        n: cell.n,
                        q: cell.q,
                        report: serde_json::json!({ "rows": rows }),
                    },
                )?,
                Format::Csv => render::bounds_csv(&rows)?,
                Format::Table => render::bounds_table(&rows),
            };
            emit(out, &text)?;
        }
        Command::Oracle {
            quantity,
            graph,
            cell,
            canonical_witness,
            out,
        } => {
            let quantity = match quantity {
                OracleQuantity::Alpha => Quantity::Alpha,
                OracleQuantity::Omega => Quantity::Omega,
                OracleQuantity::Chi => Quantity::Chi,
            };
            let kind = match graph {
                GraphArg::Total => GraphKind::Total,
                GraphArg::Regular => GraphKind::Regular,
            };
            let opts = OracleOptions {
                budgets,
                canonical_witness: *canonical_witness,
            };
            let result = oracle_on(kind, quantity, cell.n, cell.q, &opts)?;
            let text = match out.format {
                Format::Json => json(
                    "oracle",
                    CellReport {
                        n: cell.n,
                        q: cell.q,
                        report: &result,
                    },
                )?,
                Format::Csv => render::oracle_csv(&result)?,
                Format::Table => render::oracle_table(&result),
            };
            emit(out, &text)?;
        }
        Command::Verify {
            default_grid,
            grid,
            seed,
            random_graphs,
            repro,
            strict,
            out,
        } => {
            let mut config = VerifyConfig::default_grid(*seed);
            config.budgets = budgets;
            config.random_sum_graphs = *random_graphs;
            config.grid = grid.clone();
            if *default_grid {
                config.grid.extend(DEFAULT_GRID);
            }
            if *repro {
                config = VerifyConfig {
                    budgets,
                    ..VerifyConfig::default_grid(42)
                };
            }
            let report = verify_all(&config);
            let text = match out.format {
                Format::Json => json("verify", &report)?,
                Format::Csv => render::verify_csv(&report)?,
                Format::Table => render::verify_table(&report),
            };
            if *repro && out.output.is_none() {
                std::fs::write(REPRO_FILE, &text).with_context(|| format!("writing {REPRO_FILE}"))?;
                eprintln!("wrote {REPRO_FILE}");
            } else {
                emit(out, &text)?;
            }
            let failed = !report.all_passed() || (*strict && report.has_rejections());
            if failed {
                for row in report.failures() {
                    eprintln!(
                        "FAIL {:?},{:?} {}: expected {}, got {}",
                        row.n, row.q, row.check, row.expected, row.actual
                    );
                }
                return Ok(ExitCode::from(1));
            }
        }
        Command::Counts { n, q, census, out } => {
            if *n == 0 {
                bail!(Error::InvalidInput("n >= 1 required".into()));
            }
            if prime_power(*q).is_none() {
                bail!(Error::NotPrimePower(*q));
            }
            let formulas = CountReport::from_formulas(*n, *q);
            let counted = if *census {
                let field = Field::of_order_with_budget(*q, budgets.field_order)?;
                let counted = CountReport::census(*n, &field, &budgets)?;
                if counted != formulas {
                    eprintln!("census disagrees with the formulas");
                    return Ok(ExitCode::from(1));
                }
                Some(counted)
            } else {
                None
            };
            let text = match out.format {
                Format::Json => json("counts", serde_json::json!({ "formulas": formulas, "census": counted }))?,
                Format::Csv => render::counts_csv(&formulas)?,
                Format::Table => render::counts_table(&formulas),
            };
            emit(out, &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_budget() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
