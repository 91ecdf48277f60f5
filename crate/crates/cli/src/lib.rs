//! Batch driver: every subcommand writes CSV or JSON tables whose first line echoes the full
//! configuration and the artifact version.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use clap::Parser;
use thiserror::Error;

use args::Cli;
use ird_core::IrdError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] IrdError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Core(IrdError::Numerical(_)) => EXIT_VALIDATION,
            _ => EXIT_USAGE,
        }
    }
}

/// Parse, execute and report; returns the process exit code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let argv = match config::config_path(&argv) {
        Some(p) => match config::read_config(Path::new(&p)) {
            Ok(entries) => config::merge(argv, &entries),
            Err(e) => {
                eprintln!("error: {e}");
                return e.exit_code();
            }
        },
        None => argv,
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Output directory: `IRD_OUT`, then `--out`, then `./ird-out`.
pub fn output_dir(flag: Option<&Path>) -> PathBuf {
    match std::env::var_os("IRD_OUT") {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => flag.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("ird-out")),
    }
}

/// Run representative commands of `exe` twice into fresh directories and compare the bytes.
pub fn determinism_probe(exe: &Path) -> Result<(bool, String), String> {
    let runs: [&[&str]; 3] = [
        &["spectrum", "--n", "12", "--s", "0.4", "--alpha", "1"],
        &["qpt", "--n", "16", "--alpha", "1", "--s-range", "0.5:0.8:0.1"],
        &["loschmidt", "--n", "10", "--s", "0.5", "--alpha", "0.4", "--theta-points", "5", "--phi-points", "6"],
    ];
    let base = std::env::temp_dir().join(format!("ird-determinism-{}", std::process::id()));
    let mut compared = 0;
    let mut same = true;
    for (i, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let dir = base.join(format!("{i}-{rep}"));
            let _ = std::fs::remove_dir_all(&dir);
            let status = Process::new(exe)
                .args(*args)
                .env("IRD_OUT", &dir)
                .stdout(std::process::Stdio::null())
                .status()
                .map_err(|e| format!("spawning {}: {e}", exe.display()))?;
            if !status.success() {
                return Err(format!("{} exited with {status}", args.join(" ")));
            }
            let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
                .map_err(|e| e.to_string())?
                .filter_map(|e| e.ok())
                .map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap_or_default()))
                .collect();
            files.sort();
            outputs.push(files);
        }
        compared += outputs[0].len();
        same &= !outputs[0].is_empty() && outputs[0] == outputs[1];
    }
    let _ = std::fs::remove_dir_all(&base);
    Ok((same, format!("CLI outputs byte-identical across reruns {same} ({compared} files)")))
}
