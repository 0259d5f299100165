mod cache;
mod error;
mod groups;
mod knutson_report;
mod render;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use knutson::numtheory::{is_triangular, sigma3};
use knutson::partitions::{count_t_cores, exists_t_core, t_cores};
use knutson::sequences::SequenceId;
use knutson::table::CharacterTable;
use serde::Serialize;

use crate::cache::Cache;
use crate::error::{exit, CliError, CliResult};
use crate::groups::GroupSpec;
use crate::knutson_report::RhoChoice;
use crate::render::Format;
use crate::verify::Suite;

/// Largest limit accepted for the criterion-based sequences.
const SEQUENCE_LIMIT_CAP: u64 = 100_000_000;

#[derive(Parser)]
#[command(name = "knutson", version, about = "Exact character tables, Knutson indices and related sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (default: text; json for `verify`).
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Neither read nor write the table cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print a character table: `table sn 5`, `table sl2 --q 7`.
    Table {
        /// sn, an, sl2 or psl2
        group: String,
        param: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Print a sequence: a363675, a363676 or a363701.
    Seq {
        id: SequenceId,
        #[arg(long)]
        limit: Option<u64>,
        /// Emit "index term" lines.
        #[arg(long)]
        bfile: bool,
    },
    /// Knutson indices, L(G), bounds on K' and ρ certificates.
    Knutson {
        group: String,
        param: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        /// Report only this character.
        #[arg(long = "char")]
        character: Option<String>,
        #[arg(long, value_enum, default_value = "regular")]
        rho: RhoChoice,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Restrict `sl2-rho` to one q.
        #[arg(long)]
        q: Option<u64>,
    },
    /// t-core counts and existence.
    Cores {
        #[arg(long, default_value_t = 3)]
        t: usize,
        /// A single size; with --list also prints the cores.
        #[arg(long)]
        n: Option<usize>,
        /// Tabulate sizes 0..=limit.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}

fn load_table(spec: GroupSpec, use_cache: bool) -> CliResult<CharacterTable> {
    spec.check()?;
    let cache = if use_cache { Cache::from_env() } else { None };
    let key = spec.cache_key();
    if let Some(t) = cache.as_ref().and_then(|c| c.load(&key)) {
        return Ok(t);
    }
    let table = spec.build()?;
    if let Some(c) = &cache {
        if let Err(e) = c.store(&key, &table) {
            eprintln!("warning: could not write cache in {}: {e}", c.dir().display());
        }
    }
    Ok(table)
}

fn run(cli: Cli, out: &mut impl Write) -> CliResult<i32> {
    let use_cache = !cli.no_cache;
    match cli.command {
        Command::Table { group, param, q } => {
            let spec = GroupSpec::parse(&group, param, q)?;
            let table = load_table(spec, use_cache)?;
            render::table(out, &table, cli.format.unwrap_or(Format::Text))?;
            Ok(exit::OK)
        }
        Command::Seq { id, limit, bfile } => {
            let limit = limit.unwrap_or(match id {
                SequenceId::A363675 => 200,
                SequenceId::A363676 => 60,
                SequenceId::A363701 => 30,
            });
            if limit == 0 {
                return Err(CliError::Usage("--limit must be at least 1".into()));
            }
            if id.cap().is_none() && limit > SEQUENCE_LIMIT_CAP {
                return Err(knutson::Error::CapExceeded { what: "limit", value: limit, cap: SEQUENCE_LIMIT_CAP }.into());
            }
            let record = id.generate(limit)?;
            if bfile {
                write!(out, "{}", record.to_bfile())?;
                return Ok(exit::OK);
            }
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => render::json(out, &record)?,
                Format::Csv => {
                    let mut rows = vec![vec!["index".to_string(), "term".to_string()]];
                    rows.extend(record.terms.iter().enumerate().map(|(i, t)| vec![(i + 1).to_string(), t.to_string()]));
                    render::csv_rows(out, &rows)?;
                }
                Format::Text => {
                    for t in &record.terms {
                        writeln!(out, "{t}")?;
                    }
                }
            }
            Ok(exit::OK)
        }
        Command::Knutson { group, param, q, character, rho } => {
            let spec = GroupSpec::parse(&group, param, q)?;
            let table = load_table(spec, use_cache)?;
            let report = knutson_report::build(spec, &table, character.as_deref(), rho)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => render::json(out, &report)?,
                Format::Csv => render::csv_rows(out, &knutson_report::csv(&report))?,
                Format::Text => {
                    for line in knutson_report::text(&report, &table) {
                        writeln!(out, "{line}")?;
                    }
                }
            }
            Ok(if report.has_table_discrepancy() { exit::TABLE_DISCREPANCY } else { exit::OK })
        }
        Command::Verify { suite, q } => {
            if q.is_some() && suite != Suite::Sl2Rho {
                return Err(CliError::Usage("--q applies to the sl2-rho suite only".into()));
            }
            let report = verify::run(suite, q)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => render::json(out, &report)?,
                Format::Csv => {
                    let mut rows = vec![vec!["check".into(), "pass".into(), "expected".into(), "computed".into()]];
                    rows.extend(
                        report
                            .checks
                            .iter()
                            .map(|c| vec![c.name.clone(), c.pass.to_string(), c.expected.clone(), c.computed.clone()]),
                    );
                    render::csv_rows(out, &rows)?;
                }
                Format::Text => {
                    for c in &report.checks {
                        let status = if !c.pass {
                            "FAIL"
                        } else if c.agrees_with_published == Some(false) {
                            "DIFFERS FROM PUBLISHED"
                        } else {
                            "ok"
                        };
                        writeln!(out, "{status:>22}  {}: expected {}, computed {}", c.name, c.expected, c.computed)?;
                    }
                }
            }
            Ok(report.exit_code())
        }
        Command::Cores { t, n, limit, list } => cores(out, t, n, limit, list, cli.format.unwrap_or(Format::Text)),
    }
}

#[derive(Serialize)]
struct CoreRow {
    n: usize,
    t: usize,
    count: usize,
    exists: bool,
    /// `σ₃(3n+1)` when `t = 3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cores: Option<Vec<knutson::partitions::Partition>>,
}

fn core_cap(t: usize) -> usize {
    if t <= 3 {
        1000
    } else {
        60
    }
}

fn cores(
    out: &mut impl Write,
    t: usize,
    n: Option<usize>,
    limit: Option<usize>,
    list: bool,
    format: Format,
) -> CliResult<i32> {
    if t < 2 {
        return Err(CliError::Usage("--t must be at least 2".into()));
    }
    let sizes: Vec<usize> = match (n, limit) {
        (Some(n), None) => vec![n],
        (None, Some(l)) => (0..=l).collect(),
        (None, None) => return Err(CliError::Usage("give --n or --limit".into())),
        (Some(_), Some(_)) => return Err(CliError::Usage("--n and --limit are exclusive".into())),
    };
    let largest = *sizes.last().expect("non-empty");
    if largest > core_cap(t) {
        return Err(knutson::Error::CapExceeded { what: "n", value: largest as u64, cap: core_cap(t) as u64 }.into());
    }
    let rows: Vec<CoreRow> = sizes
        .into_iter()
        .map(|n| {
            let all = list.then(|| t_cores(n, t));
            CoreRow {
                n,
                t,
                count: all.as_ref().map_or_else(|| count_t_cores(n, t), Vec::len),
                exists: exists_t_core(n, t),
                formula: (t == 3).then(|| sigma3(3 * n as u64 + 1)),
                cores: all,
            }
        })
        .collect();
    match format {
        Format::Json => render::json(out, &rows)?,
        Format::Csv => {
            let mut table = vec![vec!["n".into(), "t".into(), "count".into(), "exists".into()]];
            table.extend(
                rows.iter().map(|r| vec![r.n.to_string(), r.t.to_string(), r.count.to_string(), r.exists.to_string()]),
            );
            render::csv_rows(out, &table)?;
        }
        Format::Text => {
            let mut table = vec![vec!["n".to_string(), "count".to_string(), "exists".to_string()]];
            if t == 3 {
                table[0].push("sigma3(3n+1)".into());
            }
            if t == 2 {
                table[0].push("triangular".into());
            }
            for r in &rows {
                let mut row = vec![r.n.to_string(), r.count.to_string(), r.exists.to_string()];
                if let Some(f) = r.formula {
                    row.push(f.to_string());
                }
                if t == 2 {
                    row.push(is_triangular(r.n as u64).is_some().to_string());
                }
                table.push(row);
            }
            writeln!(out, "{t}-cores")?;
            render::aligned(out, &table)?;
            for r in &rows {
                if let Some(cs) = &r.cores {
                    writeln!(out, "{}-cores of {}:", t, r.n)?;
                    for c in cs {
                        writeln!(out, "  {c}")?;
                    }
                }
            }
        }
    }
    Ok(exit::OK)
}
