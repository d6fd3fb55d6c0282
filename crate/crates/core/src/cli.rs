//! The `occsv` command line: `validate` and `normalize`.
//!
//! Exit codes: 0 clean, 1 warnings only, 2 any error, 3 usage or I/O failure.
//! Diagnostics go to standard output; everything else to standard error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::diagnostic::{Code, FileKind, Locus};
use crate::grammar::Mode;
use crate::table::{
    cross_validate, normalize_tables, read_cits_table, read_meta_table, validate_cits_table,
    validate_meta_table, CitsTable, CrossOptions, MetaTable, Profile, ValidationReport,
};

pub const EXIT_CLEAN: u8 = 0;
pub const EXIT_WARNINGS: u8 = 1;
pub const EXIT_ERRORS: u8 = 2;
pub const EXIT_FAILURE: u8 = 3;

/// Canonical file names written by `normalize`.
pub const META_OUTPUT: &str = "meta.csv";
pub const CITS_OUTPUT: &str = "cits.csv";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Normalize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub meta_path: Option<PathBuf>,
    pub cits_path: Option<PathBuf>,
    pub mode: Mode,
    pub profile: Profile,
    pub require_resolution: bool,
    pub output_format: OutputFormat,
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UsageError {
    #[error("at least one of --meta or --cits is required")]
    NoInput,
    #[error("--profile croci requires --cits")]
    CrociWithoutCits,
    #[error("--require-resolution requires both --meta and --cits")]
    ResolutionWithoutBoth,
    #[error("normalize requires --out DIR")]
    NoOutputDir,
}

impl RunConfig {
    pub fn check(&self) -> Result<(), UsageError> {
        if self.meta_path.is_none() && self.cits_path.is_none() {
            return Err(UsageError::NoInput);
        }
        if self.profile == Profile::Croci && self.cits_path.is_none() {
            return Err(UsageError::CrociWithoutCits);
        }
        if self.require_resolution && (self.meta_path.is_none() || self.cits_path.is_none()) {
            return Err(UsageError::ResolutionWithoutBoth);
        }
        if self.command == Command::Normalize && self.output_dir.is_none() {
            return Err(UsageError::NoOutputDir);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Default,
    Croci,
}

#[derive(Debug, Parser)]
#[command(
    name = "occsv",
    version,
    about = "Validate and normalize OpenCitations META-CSV and CITS-CSV files"
)]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Report diagnostics for the given files
    Validate(CommonArgs),
    /// Validate, then write canonical copies of the given files
    Normalize {
        #[command(flatten)]
        common: CommonArgs,
        /// Directory receiving meta.csv and/or cits.csv
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// META-CSV file
    #[arg(long, value_name = "PATH")]
    meta: Option<PathBuf>,
    /// CITS-CSV file
    #[arg(long, value_name = "PATH")]
    cits: Option<PathBuf>,
    /// Treat unpadded dates, irregular spacing and unknown schemes as errors
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value = "default")]
    profile: ProfileArg,
    /// Warn about citation identifiers not described in the META file
    #[arg(long)]
    require_resolution: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let (command, common, out) = match self.command {
            CliCommand::Validate(common) => (Command::Validate, common, None),
            CliCommand::Normalize { common, out } => (Command::Normalize, common, out),
        };
        RunConfig {
            command,
            meta_path: common.meta,
            cits_path: common.cits,
            mode: if common.strict { Mode::Strict } else { Mode::Lenient },
            profile: match common.profile {
                ProfileArg::Default => Profile::Default,
                ProfileArg::Croci => Profile::Croci,
            },
            require_resolution: common.require_resolution,
            output_format: common.format,
            output_dir: out,
        }
    }
}

#[derive(Serialize)]
struct Summary {
    error_count: usize,
    warning_count: usize,
}

/// Text: one `SEVERITY CODE file:row:field message` line per diagnostic.
/// JSON: one object per diagnostic, then a summary object, one per line.
pub fn render_diagnostics(report: &ValidationReport, format: OutputFormat) -> Vec<u8> {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            for d in report.diagnostics() {
                out.push_str(&d.to_string());
                out.push('\n');
            }
        }
        OutputFormat::Json => {
            for d in report.diagnostics() {
                out.push_str(&serde_json::to_string(d).expect("diagnostics serialize"));
                out.push('\n');
            }
            let summary = Summary {
                error_count: report.error_count(),
                warning_count: report.warning_count(),
            };
            out.push_str(&serde_json::to_string(&summary).expect("summary serializes"));
            out.push('\n');
        }
    }
    out.into_bytes()
}

pub fn exit_code(report: &ValidationReport) -> u8 {
    if report.error_count() > 0 {
        EXIT_ERRORS
    } else if report.warning_count() > 0 {
        EXIT_WARNINGS
    } else {
        EXIT_CLEAN
    }
}

fn read_file(path: &Path) -> io::Result<Vec<u8>> {
    fs::read(path).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

struct Loaded {
    meta: Option<MetaTable>,
    cits: Option<CitsTable>,
    report: ValidationReport,
    meta_failed: bool,
    cits_failed: bool,
}

fn load_and_validate(config: &RunConfig) -> io::Result<Loaded> {
    let mut report = ValidationReport::new();
    let mut meta_failed = false;
    let mut cits_failed = false;
    let meta = match &config.meta_path {
        Some(path) => {
            let (table, read_report) = read_meta_table(&read_file(path)?, config.mode);
            let checked = validate_meta_table(&table, config.mode);
            meta_failed = read_report.has_errors() || checked.has_errors();
            report.merge(read_report);
            report.merge(checked);
            Some(table)
        }
        None => None,
    };
    let cits = match &config.cits_path {
        Some(path) => {
            let (table, read_report) = read_cits_table(&read_file(path)?, config.mode);
            let checked = validate_cits_table(&table, config.mode, config.profile);
            cits_failed = read_report.has_errors() || checked.has_errors();
            report.merge(read_report);
            report.merge(checked);
            report.merge(cross_validate(
                meta.as_ref(),
                &table,
                CrossOptions {
                    require_resolution: config.require_resolution,
                },
            ));
            Some(table)
        }
        None => None,
    };
    Ok(Loaded {
        meta,
        cits,
        report,
        meta_failed,
        cits_failed,
    })
}

fn write_outputs(dir: &Path, loaded: &Loaded, err: &mut dyn Write) -> io::Result<()> {
    let outputs = normalize_tables(loaded.meta.as_ref(), loaded.cits.as_ref(), &loaded.report)
        .map_err(|e| io::Error::other(e.to_string()))?;
    fs::create_dir_all(dir)?;
    for (bytes, name) in [(outputs.meta, META_OUTPUT), (outputs.cits, CITS_OUTPUT)] {
        if let Some(bytes) = bytes {
            let path = dir.join(name);
            fs::write(&path, bytes)?;
            writeln!(err, "wrote {}", path.display())?;
        }
    }
    Ok(())
}

/// Runs one command and returns its exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    if let Err(e) = config.check() {
        let _ = writeln!(err, "usage error: {e}");
        return EXIT_FAILURE;
    }
    let mut loaded = match load_and_validate(config) {
        Ok(loaded) => loaded,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAILURE;
        }
    };

    if config.command == Command::Normalize && loaded.report.has_errors() {
        let count = loaded.report.error_count();
        let refused = [
            (FileKind::Meta, loaded.meta_failed),
            (FileKind::Cits, loaded.cits_failed),
        ];
        for (file, failed) in refused {
            if failed {
                loaded.report.push(Locus::file(file).error(
                    Code::RefuseOnErrors,
                    format!("canonical output not written: {count} error(s) found"),
                ));
            }
        }
    }

    let rendered = render_diagnostics(&loaded.report, config.output_format);
    if let Err(e) = out.write_all(&rendered).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: cannot write diagnostics: {e}");
        return EXIT_FAILURE;
    }
    let _ = writeln!(
        err,
        "{} error(s), {} warning(s)",
        loaded.report.error_count(),
        loaded.report.warning_count()
    );

    if config.command == Command::Normalize && !loaded.report.has_errors() {
        let dir = config.output_dir.as_deref().expect("checked above");
        if let Err(e) = write_outputs(dir, &loaded, err) {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAILURE;
        }
    }
    exit_code(&loaded.report)
}
