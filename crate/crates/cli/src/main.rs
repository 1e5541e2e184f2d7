mod generate;
mod pipeline;
mod report;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use pipeline::{
    classify_document, classify_path, read_document, validate_document, Outcome, EXIT_PARSE,
};
use report::ClassificationReport;

#[derive(Parser)]
#[command(
    name = "torell",
    version,
    about = "Validate toric fans and classify rationally elliptic toric orbifolds"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fan axioms, completeness and smoothness of a fan document.
    Validate {
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(value_name = "FILE", conflicts_with = "input")]
        path: Option<PathBuf>,
    },
    /// Decide rational ellipticity and print the quotient presentation.
    Classify {
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(value_name = "FILE", conflicts_with = "input")]
        path: Option<PathBuf>,
        /// Classify every `.toml` document in a directory.
        #[arg(long, value_name = "DIR", conflicts_with_all = ["input", "path"])]
        batch: Option<PathBuf>,
    },
    /// Emit a fan document.
    ///
    /// Kinds: `projective N`, `weighted Q0,Q1,...`, `hirzebruch A`,
    /// `bott SPEC`, `product EXPR EXPR`, `stardiv EXPR CONE...`. An EXPR is
    /// `kind:params` (e.g. `hirzebruch:2`) or a path to a fan document; a
    /// CONE is a comma-separated list of ray indices.
    Generate {
        kind: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
    },
    /// Classify every `.toml` document in a directory.
    Batch {
        #[arg(long, value_name = "DIR")]
        input: PathBuf,
    },
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn render(report: &ClassificationReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Structured => to_json(report),
    }
}

fn input_path(input: Option<PathBuf>, path: Option<PathBuf>) -> Result<PathBuf> {
    match input.or(path) {
        Some(p) => Ok(p),
        None => bail!("no input document given (use --input FILE)"),
    }
}

fn finish(outcome: Outcome, format: Format, output: &Option<PathBuf>) -> Result<i32> {
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("error: {msg}");
    }
    if let Some(report) = &outcome.report {
        emit(output, &render(report, format))?;
    }
    Ok(outcome.code)
}

fn single(
    path: &Path,
    format: Format,
    output: &Option<PathBuf>,
    run: fn(&torell::FanDocument) -> Outcome,
) -> Result<i32> {
    match read_document(path) {
        Ok(doc) => finish(run(&doc), format, output),
        Err(msg) => {
            eprintln!("error: {msg}");
            Ok(EXIT_PARSE)
        }
    }
}

#[derive(Serialize)]
struct BatchEntry {
    file: String,
    exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ClassificationReport>,
}

fn summary_row(e: &BatchEntry) -> String {
    let status = match e.exit_code {
        0 => "ok",
        1 => "parse error",
        2 => "invalid fan",
        3 => "precondition",
        _ => "error",
    };
    let (elliptic, n_i, group) = match e
        .report
        .as_ref()
        .and_then(|r| r.classification.as_ref().map(|c| (r, c)))
    {
        Some((r, c)) => {
            let n_i = if c.elliptic {
                c.block_dims
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            } else {
                "-".into()
            };
            let group = match &r.quotient {
                Some(q) if q.group_torsion.is_empty() => format!("T^{}", q.group_free_rank),
                Some(q) => format!(
                    "T^{} x {}",
                    q.group_free_rank,
                    q.group_torsion
                        .iter()
                        .map(|t| format!("Z/{}", t.0))
                        .collect::<Vec<_>>()
                        .join(" x ")
                ),
                None => "-".into(),
            };
            (if c.elliptic { "yes" } else { "no" }, n_i, group)
        }
        None => ("-", "-".into(), "-".into()),
    };
    format!(
        "{:<32} {:<12} {:<8} {:<12} {}",
        e.file, status, elliptic, n_i, group
    )
}

fn batch(dir: &Path, format: Format, output: &Option<PathBuf>) -> Result<i32> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    let entries: Vec<BatchEntry> = files
        .par_iter()
        .map(|path| {
            let outcome = classify_path(path);
            BatchEntry {
                file: path
                    .file_name()
                    .unwrap_or_default()
                    .to_string_lossy()
                    .into_owned(),
                exit_code: outcome.code,
                error: outcome.diagnostic,
                report: outcome.report,
            }
        })
        .collect();
    for e in &entries {
        if let Some(msg) = &e.error {
            eprintln!("{}: {msg}", e.file);
        }
    }
    let text = match format {
        Format::Structured => to_json(&entries),
        Format::Text => {
            let mut t = String::new();
            writeln!(
                t,
                "{:<32} {:<12} {:<8} {:<12} G",
                "file", "status", "elliptic", "n_i"
            )
            .unwrap();
            for e in &entries {
                writeln!(t, "{}", summary_row(e)).unwrap();
            }
            t
        }
    };
    emit(output, &text)?;
    Ok(entries.iter().map(|e| e.exit_code).max().unwrap_or(0))
}

fn run(cli: Cli) -> Result<i32> {
    let Cli {
        format,
        output,
        command,
    } = cli;
    match command {
        Command::Validate { input, path } => single(
            &input_path(input, path)?,
            format,
            &output,
            validate_document,
        ),
        Command::Classify {
            batch: Some(dir), ..
        } => batch(&dir, format, &output),
        Command::Classify {
            input,
            path,
            batch: None,
        } => single(
            &input_path(input, path)?,
            format,
            &output,
            classify_document,
        ),
        Command::Batch { input } => batch(&input, format, &output),
        Command::Generate { kind, params } => match generate::generate_document(&kind, &params) {
            Ok(doc) => {
                let text = match format {
                    Format::Text => doc.to_toml_string(),
                    Format::Structured => to_json(&serde_json::json!({
                        "name": doc.name,
                        "dim": doc.dim,
                        "rays": doc.rays.iter().map(|r| r.iter().cloned().map(report::Big).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "max_cones": doc.max_cones,
                    })),
                };
                emit(&output, &text)?;
                Ok(0)
            }
            Err(e) => {
                eprintln!("error: {}", e.message);
                Ok(e.code)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_PARSE as u8)
        }
    }
}
