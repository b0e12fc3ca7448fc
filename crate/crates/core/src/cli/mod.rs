//! Command-line front end: `derive`, `verify`, `simulate`, `replay`.
//!
//! Exit codes: 0 pass, 1 quantitative failure, 2 usage or config error.

mod config;
mod jobs;
mod manifest;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use config::Config;
pub use jobs::{allowed_keys, Artifact, Body, JobOutput, VERIFY_CHECKS};
pub use manifest::{sha256_hex, RunManifest, MANIFEST_PREFIX};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("{0}")]
    Failure(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn config(line: usize, msg: impl Into<String>) -> Self {
        CliError::Config { line, msg: msg.into() }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "wavecov", version, about = "Covariance derivations and spectral checks for linear wave equations")]
pub struct Cli {
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Override the tolerance of a verify check.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Seed for randomized property runs; recorded in the manifest.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a symbolic pipeline: rotation 2|3|4, galilean 2|3|4, lorentz 2.
    Derive { symmetry: String, order: u32 },
    /// Numerical check: boost, dispersion, nr-limit or squared-op.
    Verify { check: String, config: Option<PathBuf> },
    /// Evolve a Gaussian packet and dump snapshots.
    Simulate { config: Option<PathBuf> },
    /// Re-run the command recorded in an output file and compare outputs.
    Replay { file: PathBuf },
}

fn load_config(path: Option<&Path>, keys: &[&str], hashes: &mut BTreeMap<String, String>) -> Result<Config, CliError> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    hashes.insert(path.display().to_string(), sha256_hex(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| CliError::config(0, "config is not UTF-8"))?;
    Config::parse(&text, keys)
}

fn execute(command: &[String], c: &Config) -> Result<JobOutput, CliError> {
    match command {
        [d, symmetry, order] if d == "derive" => {
            let order = order.parse().map_err(|_| CliError::Usage(format!("bad order {order:?}")))?;
            jobs::derive(symmetry, order)
        }
        [v, check] if v == "verify" => jobs::verify(check, c),
        [s] if s == "simulate" => jobs::simulate(c),
        _ => Err(CliError::Usage(format!("cannot run {command:?}"))),
    }
}

/// File contents with the manifest attached.
pub fn render(a: &Artifact, m: &RunManifest) -> String {
    match &a.body {
        Body::Json(v) => {
            let doc = serde_json::json!({ "manifest": m, "result": v });
            let mut s = serde_json::to_string_pretty(&doc).expect("json serializes");
            s.push('\n');
            s
        }
        Body::Text(t) => format!("{MANIFEST_PREFIX}{}\n{t}", m.to_json_line()),
    }
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("partial");
    let mut f = fs::File::create(&tmp).map_err(|e| CliError::io(&tmp, e))?;
    f.write_all(contents.as_bytes()).map_err(|e| CliError::io(&tmp, e))?;
    f.sync_all().map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

/// Run a command, returning rendered files and the job result.
fn produce(command: Vec<String>, c: &Config, hashes: BTreeMap<String, String>) -> Result<(RunManifest, Vec<(String, String)>, JobOutput), CliError> {
    let out = execute(&command, c)?;
    let mut m = RunManifest::new(command, c.pairs());
    m.input_hashes = hashes;
    m.outputs = out.artifacts.iter().map(|a| a.name.clone()).collect();
    let files = out.artifacts.iter().map(|a| (a.name.clone(), render(a, &m))).collect();
    Ok((m, files, out))
}

fn report(out: &JobOutput) -> Result<(), CliError> {
    for line in &out.summary {
        println!("{line}");
    }
    if out.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!("{} check(s) failed; first: {}", out.failures.len(), out.failures[0])))
    }
}

fn replay(file: &Path, out_dir: Option<&Path>) -> Result<(), CliError> {
    let m = RunManifest::read_from(file)?;
    if m.tool_version != env!("CARGO_PKG_VERSION") {
        eprintln!("note: recorded with version {}, replaying with {}", m.tool_version, env!("CARGO_PKG_VERSION"));
    }
    let c = Config::from_pairs(&m.parameters);
    let (_, files, out) = produce(m.command.clone(), &c, m.input_hashes.clone())?;
    let dir = file.parent().unwrap_or(Path::new("."));
    let mut differ = Vec::new();
    for (name, contents) in &files {
        let original = fs::read_to_string(dir.join(name)).unwrap_or_default();
        let same = original == *contents;
        println!("{} {name}", if same { "identical" } else { "DIFFERS" });
        if !same {
            differ.push(name.clone());
        }
        if let Some(d) = out_dir {
            write_atomic(&d.join(name), contents)?;
        }
    }
    if !out.failures.is_empty() {
        println!("note: the replayed run itself has {} failing check(s)", out.failures.len());
    }
    if differ.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!("replay differs in {}", differ.join(", "))))
    }
}

fn run_cli(cli: Cli) -> Result<(), CliError> {
    let mut hashes = BTreeMap::new();
    let (command, mut c) = match &cli.command {
        Command::Derive { symmetry, order } => (vec!["derive".into(), symmetry.clone(), order.to_string()], Config::default()),
        Command::Verify { check, config } => {
            if !VERIFY_CHECKS.contains(&check.as_str()) {
                return Err(CliError::Usage(format!("unknown check {check:?} (expected one of {})", VERIFY_CHECKS.join(", "))));
            }
            let c = load_config(config.as_deref(), &allowed_keys(check), &mut hashes)?;
            (vec!["verify".into(), check.clone()], c)
        }
        Command::Simulate { config } => {
            let c = load_config(config.as_deref(), &allowed_keys("simulate"), &mut hashes)?;
            (vec!["simulate".into()], c)
        }
        Command::Replay { file } => {
            let explicit = std::env::args().any(|a| a == "--out" || a.starts_with("--out="));
            if explicit {
                fs::create_dir_all(&cli.out).map_err(|e| CliError::io(&cli.out, e))?;
            }
            return replay(file, explicit.then_some(cli.out.as_path()));
        }
    };
    if let Some(t) = cli.tolerance {
        if command[0] != "verify" {
            return Err(CliError::Usage("--tolerance applies to verify only".into()));
        }
        c.set("tolerance", t.to_string());
    }
    if let Some(seed) = cli.seed {
        c.set("seed", seed.to_string());
    }
    let (_, files, out) = produce(command, &c, hashes)?;
    fs::create_dir_all(&cli.out).map_err(|e| CliError::io(&cli.out, e))?;
    for (name, contents) in &files {
        write_atomic(&cli.out.join(name), contents)?;
    }
    report(&out)
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_cli(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
