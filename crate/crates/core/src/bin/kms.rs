use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kms_core::checker::Budget;
use kms_core::dsl::{compile, compile_operator, compile_part_map, Elaborated};
use kms_core::numerics::{blowup_experiment, default_schedule, summarize, write_csv, BlowupRow, ExperimentConfig};
use kms_core::operator::{HomOperator, PartMap};
use kms_core::report::{check_report, part_map_table, verify_file, EvidenceFile};
use kms_core::Error;

#[derive(Parser)]
#[command(name = "kms", version, about = "Certified symbol checks for KMS-type inequalities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced (ℂ-)ellipticity and cancellation of B relative to A, with evidence.
    Check {
        /// Part map A: DSL expression or @file.json.
        #[arg(long = "A", default_value = "id")]
        a: String,
        /// Operator B: DSL expression or @file.json.
        #[arg(long = "B")]
        b: String,
        /// Optional part map T for partial cancellation.
        #[arg(long = "T")]
        t: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The 7×7 grid of part maps A against S[Curl].
    Table {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Finite-difference quotient for (sym, skewtr Curl) on the mollified family.
    Blowup {
        /// Mollification lengths; defaults to R·10^-2 … R·10^-5.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        #[arg(long = "R", default_value_t = 1.0)]
        r: f64,
        #[arg(long = "N", default_value_t = 96)]
        points: usize,
        /// Box half-width; defaults to 4R.
        #[arg(long = "L")]
        half_width: Option<f64>,
        /// csv: rows on stdout and the summary on stderr.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Re-check serialized evidence exactly.
    Verify { file: PathBuf },
    /// Elaborate an expression and print its JSON.
    DumpOperator {
        expr: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = Budget::default().samples)]
    samples: usize,
    #[arg(long, default_value_t = Budget::default().smax)]
    smax: u32,
    #[arg(long, default_value_t = Budget::default().depth)]
    depth: u32,
    #[arg(long, env = "KMS_SEED", default_value_t = 1)]
    seed: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            samples: self.samples,
            smax: self.smax,
            depth: self.depth,
            seed: self.seed,
            ..Budget::default()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
    Csv,
}

enum Failure {
    Error(Error),
    Unknown,
    Unverified,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(e.into())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            let parse = matches!(e, Error::Lex { .. } | Error::Syntax { .. } | Error::Parse(_) | Error::UnknownName(_));
            ExitCode::from(if parse { 2 } else { 1 })
        }
        Err(Failure::Unknown) => {
            eprintln!("error: budget exhausted with --strict");
            ExitCode::from(3)
        }
        Err(Failure::Unverified) => ExitCode::from(4),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    Ok(serde_json::from_str(&text)?)
}

fn load_part_map(src: &str, n: usize) -> Result<PartMap, Error> {
    match src.strip_prefix('@') {
        Some(path) => read_json(path),
        None => compile_part_map(src, n),
    }
}

fn load_operator(src: &str, n: usize) -> Result<HomOperator, Error> {
    match src.strip_prefix('@') {
        Some(path) => read_json(path),
        None => compile_operator(src, n),
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Check { a, b, t, n, budget, strict, format } => {
            let a_map = load_part_map(&a, n)?;
            let b_op = load_operator(&b, n)?;
            let t_map = t.as_deref().map(|s| load_part_map(s, n)).transpose()?;
            let report = check_report(&a, &b, t.as_deref().zip(t_map.as_ref()), &a_map, &b_op, &budget.budget())?;
            match format {
                Format::Md => print!("{}", report.to_markdown()),
                _ => print_json(&report)?,
            }
            if strict && report.has_unknown() {
                return Err(Failure::Unknown);
            }
        }
        Cmd::Table { n, budget, strict, format } => {
            let table = part_map_table(n, &budget.budget())?;
            match format {
                Format::Json => print_json(&table)?,
                Format::Md => print!("{}", table.to_markdown()),
                Format::Csv => print!("{}", table.to_csv()),
            }
            if strict && table.unknown_count() > 0 {
                return Err(Failure::Unknown);
            }
        }
        Cmd::Blowup { eps, r, points, half_width, format } => {
            let eps = if eps.is_empty() { default_schedule().iter().map(|c| c.eps * r).collect() } else { eps };
            let configs: Vec<ExperimentConfig> = eps
                .iter()
                .map(|&e| {
                    let c = ExperimentConfig::new(e, r);
                    ExperimentConfig {
                        points,
                        half_width: half_width.unwrap_or(c.half_width),
                        ..c
                    }
                })
                .collect();
            let rows = blowup_experiment(&configs)?;
            let summary = summarize(&rows);
            match format {
                Format::Csv => {
                    write_csv(&rows, std::io::stdout().lock())?;
                    eprintln!("{}", serde_json::to_string_pretty(&summary).map_err(Error::from)?);
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        rows: &'a [BlowupRow],
                        summary: &'a kms_core::numerics::BlowupSummary,
                    }
                    print_json(&Out { rows: &rows, summary: &summary })?;
                }
                Format::Md => {
                    println!("| eps | R | N | lhs | rhs A | rhs B | ratio |\n|---|---|---|---|---|---|---|");
                    for r in &rows {
                        println!(
                            "| {:e} | {} | {} | {:.6e} | {:.6e} | {:.6e} | {:.6} |",
                            r.eps, r.r, r.points, r.lhs_norm, r.rhs_partmap_norm, r.rhs_b_norm, r.ratio
                        );
                    }
                    println!(
                        "\nstrictly increasing: {}; growth per decade: {:.4}; ratio³/log spread: {:.4}",
                        summary.strictly_increasing, summary.growth_per_decade, summary.cube_log_spread
                    );
                }
            }
        }
        Cmd::Verify { file } => {
            let path = file.display().to_string();
            let parsed: EvidenceFile = read_json(&path)?;
            let lines = verify_file(&parsed);
            let mut failed = false;
            for l in &lines {
                let mark = if l.ok { "ok" } else { "FAILED" };
                println!("{mark:6} {:<28} {}", format!("{:?}", l.check), l.status.symbol());
                failed |= !l.ok;
            }
            if failed {
                eprintln!("error: evidence does not re-verify");
                return Err(Failure::Unverified);
            }
        }
        Cmd::DumpOperator { expr, n } => match compile(&expr, n)? {
            Elaborated::PartMap(m) => print_json(&m)?,
            Elaborated::Operator(op) => print_json(&op)?,
        },
    }
    Ok(())
}
