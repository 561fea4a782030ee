//! `pga`: automorphism groups of power graphs from the command line.

mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pga_core::engine::{analyze, verify, Analysis, AutReport, EngineError, Verdict};
use pga_core::group::{parse_group_spec, DEFAULT_MAX_ORDER};
use pga_core::oracle::Caps;
use rayon::prelude::*;

const EXIT_SPEC: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pga",
    version,
    about = "Automorphism groups of power graphs of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the structural expression and exact order.
    Analyze(Request),
    /// Analyze, then check the result against the brute-force oracle.
    Verify(Request),
    /// Write DOT drawings and a JSON report to a directory.
    Export(ExportRequest),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Target {
    PowerGraphDot,
    QuotientDot,
    Json,
}

#[derive(clap::Args, Clone)]
struct Source {
    /// Group spec, e.g. "Z(12)", "Z(4)^2", "P(Q8,Z(3))".
    #[arg(long, required_unless_present = "corpus", conflicts_with = "corpus")]
    group: Option<String>,
    /// File with one group spec per line; `#` starts a comment.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Oracle limit on graph size.
    #[arg(long, default_value_t = Caps::default().max_nodes)]
    max_nodes: usize,
    /// Oracle limit on automorphism counts.
    #[arg(long, default_value_t = Caps::default().max_count)]
    max_count: u64,
    /// Largest group order that will be realized.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
}

#[derive(clap::Args)]
struct Request {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ExportRequest {
    #[command(flatten)]
    source: Source,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// What to write; repeatable. Defaults to all targets.
    #[arg(long, value_enum)]
    target: Vec<Target>,
}

/// One processed spec; failures carry their exit code.
struct Outcome {
    spec: String,
    result: Result<(Analysis, AutReport), (u8, String)>,
}

impl Outcome {
    fn code(&self) -> u8 {
        match &self.result {
            Err((code, _)) => *code,
            Ok((_, r)) => match r.verification {
                Verdict::Mismatch { .. } => EXIT_MISMATCH,
                Verdict::Unknown { .. } => EXIT_UNKNOWN,
                _ => 0,
            },
        }
    }
}

fn engine_code(e: &EngineError) -> u8 {
    if e.is_cap() {
        EXIT_UNKNOWN
    } else if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_SPEC
    }
}

fn read_specs(src: &Source) -> Result<Vec<String>, String> {
    if let Some(g) = &src.group {
        return Ok(vec![g.clone()]);
    }
    let path = src
        .corpus
        .as_ref()
        .expect("clap requires --group or --corpus");
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read corpus {}: {e}", path.display()))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn process(specs: &[String], src: &Source, check: bool) -> Vec<Outcome> {
    let caps = Caps {
        max_nodes: src.max_nodes,
        max_count: src.max_count,
    };
    specs
        .par_iter()
        .map(|text| {
            let result = parse_group_spec(text)
                .map_err(|e| (EXIT_SPEC, e.to_string()))
                .and_then(|spec| {
                    analyze(&spec, src.max_order, &caps)
                        .map_err(|e| (engine_code(&e), e.to_string()))
                })
                .map(|(a, mut r)| {
                    if check {
                        r.verification = verify(&a, &r, &caps);
                    }
                    (a, r)
                });
            Outcome {
                spec: text.clone(),
                result,
            }
        })
        .collect()
}

fn render(outcomes: &[Outcome], format: Format, check: bool) -> String {
    match format {
        Format::Json => {
            let entries: Vec<render::JsonEntry> = outcomes
                .iter()
                .map(|o| match &o.result {
                    Ok((_, r)) => render::JsonEntry::Report(render::json_report(r)),
                    Err((_, msg)) => render::JsonEntry::Error {
                        spec: &o.spec,
                        error: msg,
                    },
                })
                .collect();
            let doc = match &entries[..] {
                [one] => serde_json::to_string_pretty(one),
                _ => serde_json::to_string_pretty(&entries),
            };
            doc.expect("serializable") + "\n"
        }
        Format::Text => {
            let blocks: Vec<String> = outcomes
                .iter()
                .filter_map(|o| match &o.result {
                    Ok((_, r)) if check => Some(format!(
                        "{}\n{}: {}, {}\n",
                        render::text_report(r),
                        o.spec,
                        r.verification.status(),
                        r.verification.detail()
                    )),
                    Ok((_, r)) => Some(render::text_report(r)),
                    Err(_) => None,
                })
                .collect();
            blocks.join("\n")
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}

fn run_report(req: &Request, check: bool) -> Result<u8, String> {
    let specs = read_specs(&req.source)?;
    let outcomes = process(&specs, &req.source, check);
    for o in &outcomes {
        if let Err((_, msg)) = &o.result {
            eprintln!("pga: {}: {msg}", o.spec);
        }
    }
    emit(&render(&outcomes, req.format, check), req.out.as_deref())?;
    Ok(outcomes.iter().map(Outcome::code).max().unwrap_or(0))
}

fn run_export(req: &ExportRequest) -> Result<u8, String> {
    let specs = read_specs(&req.source)?;
    let mut targets = req.target.clone();
    if targets.is_empty() {
        targets = vec![Target::PowerGraphDot, Target::QuotientDot, Target::Json];
    }
    targets.sort();
    targets.dedup();
    fs::create_dir_all(&req.out)
        .map_err(|e| format!("cannot create {}: {e}", req.out.display()))?;
    let outcomes = process(&specs, &req.source, false);
    for o in &outcomes {
        let (a, r) = match &o.result {
            Ok(pair) => pair,
            Err((_, msg)) => {
                eprintln!("pga: {}: {msg}", o.spec);
                continue;
            }
        };
        let stem = render::file_stem(&r.spec);
        for t in &targets {
            let (suffix, body) = match t {
                Target::PowerGraphDot => ("power.dot", render::power_graph_dot(a)),
                Target::QuotientDot => ("quotient.dot", render::quotient_dot(a)),
                Target::Json => ("json", render(std::slice::from_ref(o), Format::Json, false)),
            };
            let path = req.out.join(format!("{stem}.{suffix}"));
            emit(&body, Some(&path))?;
            println!("{}", path.display());
        }
    }
    Ok(outcomes.iter().map(Outcome::code).max().unwrap_or(0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(req) => run_report(req, false),
        Command::Verify(req) => run_report(req, true),
        Command::Export(req) => run_export(req),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("pga: {msg}");
            ExitCode::from(EXIT_SPEC)
        }
    }
}
