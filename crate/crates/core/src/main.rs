use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use groupoid_lab::group::{GroupRef, RawGroupTable};
use groupoid_lab::report::{ClaimRecord, ClaimStatus, Report};
use groupoid_lab::structure::MultiSortedStructure;
use groupoid_lab::suite::{build_structure, run, RunConfig, RunError, Source, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "groupoid-lab",
    version,
    about = "Exact checks on finite groupoids and their automorphism groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode the standard groupoid of a group as a structure file.
    Build {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and emit a report.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Encoded structure to verify instead of a group.
        #[arg(long, conflicts_with = "group")]
        structure: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Longest paths enumerated by the fgroupoid suite.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        max_path_steps: Option<u8>,
    },
    /// Merge reports into an instance-by-claim matrix.
    Report {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, clap::Args)]
struct InstanceArgs {
    /// cyclic:n, symmetric:n, dihedral:n, quaternion8, klein, product:a,b or file:PATH
    #[arg(long)]
    group: Option<String>,
    #[arg(long, default_value_t = 3)]
    objects: usize,
    /// Add the two-to-one fibre sort over the objects.
    #[arg(long)]
    cover: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Section2,
    Section3,
    Witness,
    Fgroupoid,
    Limits,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Section2 => vec![Suite::Section2],
            SuiteArg::Section3 => vec![Suite::Section3],
            SuiteArg::Witness => vec![Suite::Witness],
            SuiteArg::Fgroupoid => vec![Suite::FGroupoid],
            SuiteArg::Limits => vec![Suite::Limits],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Io(String),
}

impl From<RunError> for CliError {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Input(_) => CliError::Input(e.to_string()),
            RunError::Budget(_) => CliError::Budget(e.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialisable") + "\n"
}

fn group_ref(spec: Option<&str>) -> Result<GroupRef, CliError> {
    let spec = spec.ok_or_else(|| CliError::Input("--group or --structure is required".into()))?;
    match spec.strip_prefix("file:") {
        Some(path) => {
            let table: RawGroupTable = serde_json::from_str(&read(Path::new(path))?)
                .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            Ok(GroupRef::Table(table))
        }
        None => Ok(GroupRef::Spec(spec.to_string())),
    }
}

fn status_label(status: ClaimStatus) -> &'static str {
    match status {
        ClaimStatus::Pass => "pass",
        ClaimStatus::Fail => "FAIL",
        ClaimStatus::SurrogatePass => "surrogate-pass",
        ClaimStatus::Skipped => "skipped",
    }
}

fn render_report(report: &Report) -> String {
    let mut out = format!(
        "{} {} on {} (suites: {})\n",
        report.tool,
        report.version,
        report.instance.key(),
        report.suites.join(", ")
    );
    let width = report.claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
    for c in &report.claims {
        out += &format!(
            "  {:<15} {:<width$}  {}",
            status_label(c.status),
            c.id,
            c.anchor
        );
        if let Some(reason) = &c.reason {
            out += &format!("  [{reason}]");
        }
        if let Some(w) = &c.witness {
            out += &format!("\n  {:<15} witness: {w}", "");
        }
        out.push('\n');
    }
    let failures = report.claims.iter().filter(|c| c.is_failure()).count();
    out += &format!("{} claims, {failures} failed\n", report.claims.len());
    out
}

fn cmd_build(instance: &InstanceArgs, out: Option<&Path>) -> Result<u8, CliError> {
    let group = group_ref(instance.group.as_deref())?;
    let s = build_structure(&group, instance.objects, instance.cover)?;
    write_or_print(out, &pretty(&s))?;
    Ok(0)
}

fn cmd_verify(
    instance: &InstanceArgs,
    structure: Option<&Path>,
    suite: SuiteArg,
    out: Option<&Path>,
    format: Format,
    max_path_steps: Option<u8>,
) -> Result<u8, CliError> {
    let source = match structure {
        Some(path) => {
            let s: MultiSortedStructure = serde_json::from_str(&read(path)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Source::Structure {
                path: path.display().to_string(),
                structure: s,
            }
        }
        None => Source::Group {
            group: group_ref(instance.group.as_deref())?,
            objects: instance.objects,
            cover: instance.cover,
        },
    };
    let report = run(&RunConfig {
        source,
        suites: suite.suites(),
        max_path_steps: max_path_steps.map(usize::from),
    })?;
    let json = pretty(&report);
    if let Some(path) = out {
        write_or_print(Some(path), &json)?;
    }
    match format {
        Format::Json => print!("{json}"),
        Format::Text => print!("{}", render_report(&report)),
    }
    Ok(if report.failed() { 1 } else { 0 })
}

/// Instances by claims; rows and columns in first-appearance order.
#[derive(Debug, Serialize)]
struct Matrix {
    instances: Vec<String>,
    claims: Vec<String>,
    cells: BTreeMap<String, BTreeMap<String, ClaimStatus>>,
}

fn merge(reports: &[(PathBuf, Report)]) -> Result<Matrix, CliError> {
    let mut instances: Vec<String> = Vec::new();
    let mut claims: Vec<String> = Vec::new();
    let mut seen: BTreeMap<String, BTreeMap<String, ClaimRecord>> = BTreeMap::new();
    for (path, report) in reports {
        let key = report.instance.key();
        if !instances.contains(&key) {
            instances.push(key.clone());
        }
        let row = seen.entry(key.clone()).or_default();
        for c in &report.claims {
            if !claims.contains(&c.id) {
                claims.push(c.id.clone());
            }
            match row.get(&c.id) {
                Some(prev) if prev != c => {
                    return Err(CliError::Input(format!(
                        "{}: claim `{}` for {key} conflicts with an earlier entry",
                        path.display(),
                        c.id
                    )))
                }
                _ => {
                    row.insert(c.id.clone(), c.clone());
                }
            }
        }
    }
    let cells = seen
        .into_iter()
        .map(|(k, row)| (k, row.into_iter().map(|(id, c)| (id, c.status)).collect()))
        .collect();
    Ok(Matrix {
        instances,
        claims,
        cells,
    })
}

fn render_matrix(m: &Matrix) -> String {
    let width = m
        .claims
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max("claim".len());
    let columns: Vec<usize> = m
        .instances
        .iter()
        .map(|i| i.len().max("surrogate-pass".len()))
        .collect();
    let mut out = format!("{:<width$}", "claim");
    for (i, w) in m.instances.iter().zip(&columns) {
        out += &format!("  {i:<w$}");
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    for id in &m.claims {
        out += &format!("{id:<width$}");
        for (i, w) in m.instances.iter().zip(&columns) {
            let cell = m.cells[i].get(id).map_or("-", |s| status_label(*s));
            out += &format!("  {cell:<w$}");
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out
}

fn cmd_report(paths: &[PathBuf], out: Option<&Path>, format: Format) -> Result<u8, CliError> {
    let mut reports = Vec::new();
    for path in paths {
        let report: Report = serde_json::from_str(&read(path)?)
            .map_err(|e| CliError::Input(format!("{}: malformed report: {e}", path.display())))?;
        reports.push((path.clone(), report));
    }
    let matrix = merge(&reports)?;
    let text = match format {
        Format::Json => pretty(&matrix),
        Format::Text => render_matrix(&matrix),
    };
    match out {
        Some(path) => write_or_print(Some(path), &text)?,
        None => print!("{text}"),
    }
    let failed = matrix
        .cells
        .values()
        .any(|row| row.values().any(|&s| s == ClaimStatus::Fail));
    Ok(if failed { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build { instance, out } => cmd_build(instance, out.as_deref()),
        Command::Verify {
            instance,
            structure,
            suite,
            out,
            format,
            max_path_steps,
        } => cmd_verify(
            instance,
            structure.as_deref(),
            *suite,
            out.as_deref(),
            *format,
            *max_path_steps,
        ),
        Command::Report {
            reports,
            out,
            format,
        } => cmd_report(reports, out.as_deref(), *format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
