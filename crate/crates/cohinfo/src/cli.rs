//! File formats and the command-line frontend.
//!
//! Subcommands:
//!
//! - `ci --state FILE [--side A|B]`: coherent information of a state file.
//! - `capacity (--kind K --param P | --channel FILE) [--n N] [--restarts R]
//!   [--seed S] [--out FILE]`: optimized finite-n CI lower bound.
//! - `verify SUITE|all [--trials T] [--seed S] [--out DIR]`: verification
//!   suites; one report JSON per suite, exit 0 iff every instance passes.
//! - `sweep --kind K --from A --to B --step S [--n N] [--restarts R]
//!   [--seed S] --out FILE.csv`: capacity-vs-noise table.
//!
//! Exit codes: 0 success/all-pass, 1 usage error, 2 input validation error,
//! 3 verification failure. All randomness flows from `--seed` (default 0;
//! the manifest records whether the default was used). Output files are
//! written atomically (temp file + rename) and embed a [`RunManifest`];
//! CSV output gets a `<file>.manifest.json` sidecar instead, keeping the
//! CSV a plain header-plus-rows table.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::capopt::{maximally_mixed_ci, maximize_ci, OptConfig};
use crate::channels::{standard_channel, KrausChannel, StandardKind};
use crate::coherent::{coherent_info, hashing_rate};
use crate::qla::{ComplexMatrix, Side};
use crate::states::{twirl_closed_form, DensityMatrix};
use crate::verify::{run_suite, VerificationReport, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

const USAGE: &str = "\
usage: cohinfo <command> [flags]

commands:
  ci       --state FILE [--side A|B]
           print raw and clipped coherent information of a state file
  capacity (--kind KIND --param P | --channel FILE) [--n N] [--restarts R]
           [--seed S] [--out FILE.json]
           maximize channel coherent information (finite-n lower bound)
  verify   SUITE|all [--trials T] [--seed S] [--out DIR]
           suites: lemma capacity_bound hashing reduction info_loss properties
  sweep    --kind KIND --from A --to B --step S [--n N] [--restarts R]
           [--seed S] --out FILE.csv
           capacity-vs-noise table for a standard channel family

channel kinds: dephasing depolarizing amplitude_damping erasure identity
";

/// Failure modes with their exit codes.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Verification,
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Reproducibility record embedded in every output artifact.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub params: BTreeMap<String, serde_json::Value>,
    pub seed: u64,
    /// "flag" when --seed was given, "default" otherwise.
    pub seed_source: String,
    pub out: Option<String>,
    pub tool_version: String,
    /// Unix seconds; the only field excluded from determinism comparisons.
    pub timestamp: u64,
}

impl RunManifest {
    fn new(command: &str, seed: u64, seed_from_flag: bool) -> Self {
        Self {
            command: command.to_string(),
            inputs: Vec::new(),
            params: BTreeMap::new(),
            seed,
            seed_source: if seed_from_flag { "flag" } else { "default" }.to_string(),
            out: None,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    fn param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.params.insert(key.to_string(), value.into());
    }
}

/// JSON state file: row-major real and imaginary parts with |ij⟩ = i·d_B + j.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: [usize; 2],
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let n = rho.dim();
        let m = rho.matrix();
        let mut re = vec![vec![0.0; n]; n];
        let mut im = vec![vec![0.0; n]; n];
        for r in 0..n {
            for c in 0..n {
                re[r][c] = m[(r, c)].re;
                im[r][c] = m[(r, c)].im;
            }
        }
        Self { dims: [rho.d_a(), rho.d_b()], re, im }
    }

    pub fn to_density(&self) -> crate::Result<DensityMatrix> {
        let n = self.dims[0] * self.dims[1];
        let check = |grid: &Vec<Vec<f64>>| -> crate::Result<()> {
            if grid.len() != n || grid.iter().any(|row| row.len() != n) {
                return Err(crate::Error::DimensionMismatch {
                    expected: n,
                    got: grid.len(),
                    context: "state file grid",
                });
            }
            Ok(())
        };
        check(&self.re)?;
        check(&self.im)?;
        let mut mat = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                mat[(r, c)] = Complex64::new(self.re[r][c], self.im[r][c]);
            }
        }
        DensityMatrix::new(mat, (self.dims[0], self.dims[1]))
    }
}

/// One Kraus operator in a channel file (d_out × d_in, row-major).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KrausEntry {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// JSON channel file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelFile {
    pub d_in: usize,
    pub d_out: usize,
    pub kraus: Vec<KrausEntry>,
}

impl ChannelFile {
    pub fn from_channel(ch: &KrausChannel) -> Self {
        let kraus = ch
            .kraus_ops()
            .iter()
            .map(|k| {
                let mut re = vec![vec![0.0; k.cols()]; k.rows()];
                let mut im = vec![vec![0.0; k.cols()]; k.rows()];
                for r in 0..k.rows() {
                    for c in 0..k.cols() {
                        re[r][c] = k[(r, c)].re;
                        im[r][c] = k[(r, c)].im;
                    }
                }
                KrausEntry { re, im }
            })
            .collect();
        Self { d_in: ch.d_in(), d_out: ch.d_out(), kraus }
    }

    pub fn to_channel(&self) -> crate::Result<KrausChannel> {
        let mut ops = Vec::with_capacity(self.kraus.len());
        for entry in &self.kraus {
            if entry.re.len() != self.d_out
                || entry.re.iter().any(|row| row.len() != self.d_in)
                || entry.im.len() != self.d_out
                || entry.im.iter().any(|row| row.len() != self.d_in)
            {
                return Err(crate::Error::DimensionMismatch {
                    expected: self.d_out * self.d_in,
                    got: 0,
                    context: "channel file Kraus grid",
                });
            }
            let mut k = ComplexMatrix::zeros(self.d_out, self.d_in);
            for r in 0..self.d_out {
                for c in 0..self.d_in {
                    k[(r, c)] = Complex64::new(entry.re[r][c], entry.im[r][c]);
                }
            }
            ops.push(k);
        }
        KrausChannel::new(ops, self.d_in, self.d_out)
    }
}

/// Write a file atomically: temp file in the same directory, then rename.
pub fn atomic_write(path: &Path, content: &str) -> std::io::Result<()> {
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out")
    ));
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)
}

#[derive(Serialize)]
struct ReportFile<'a> {
    manifest: &'a RunManifest,
    #[serde(flatten)]
    report: &'a VerificationReport,
}

#[derive(Serialize)]
struct CapacityFile<'a> {
    manifest: &'a RunManifest,
    channel: String,
    n: usize,
    /// Every reported value is a fixed-n lower bound, not the capacity.
    note: &'static str,
    best_ci_per_copy: f64,
    baseline_ci_per_copy: f64,
    improved_over_baseline: bool,
    per_restart: &'a [crate::capopt::RestartTrace],
}

struct Parsed {
    command: String,
    positional: Vec<String>,
    flags: BTreeMap<String, String>,
}

const KNOWN_FLAGS: [&str; 13] = [
    "--state", "--channel", "--kind", "--param", "--n", "--restarts", "--trials", "--seed",
    "--side", "--out", "--from", "--to", "--step",
];

fn parse_args(args: &[String]) -> Result<Parsed, CliError> {
    let mut it = args.iter();
    let command = it
        .next()
        .ok_or_else(|| CliError::Usage("missing command".into()))?
        .clone();
    let mut positional = Vec::new();
    let mut flags = BTreeMap::new();
    while let Some(tok) = it.next() {
        if let Some(stripped) = tok.strip_prefix("--") {
            if !KNOWN_FLAGS.contains(&tok.as_str()) {
                return Err(CliError::Usage(format!("unknown flag --{stripped}")));
            }
            let value = it
                .next()
                .ok_or_else(|| CliError::Usage(format!("flag --{stripped} needs a value")))?;
            flags.insert(stripped.to_string(), value.clone());
        } else {
            positional.push(tok.clone());
        }
    }
    Ok(Parsed { command, positional, flags })
}

impl Parsed {
    fn str_flag(&self, name: &str) -> Option<&str> {
        self.flags.get(name).map(|s| s.as_str())
    }

    fn f64_flag(&self, name: &str) -> Result<Option<f64>, CliError> {
        match self.flags.get(name) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("--{name} expects a number, got {v:?}"))),
        }
    }

    fn usize_flag(&self, name: &str) -> Result<Option<usize>, CliError> {
        match self.flags.get(name) {
            None => Ok(None),
            Some(v) => v
                .parse::<usize>()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("--{name} expects an integer, got {v:?}"))),
        }
    }

    fn u64_flag(&self, name: &str) -> Result<Option<u64>, CliError> {
        match self.flags.get(name) {
            None => Ok(None),
            Some(v) => v
                .parse::<u64>()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("--{name} expects an integer, got {v:?}"))),
        }
    }

    fn seed(&self) -> Result<(u64, bool), CliError> {
        Ok(match self.u64_flag("seed")? {
            Some(s) => (s, true),
            None => (0, false),
        })
    }
}

fn load_state(path: &str) -> Result<DensityMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read state file {path}: {e}")))?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("cannot parse state file {path}: {e}")))?;
    file.to_density()
        .map_err(|e| CliError::Input(format!("state file {path} is not a valid density matrix: {e}")))
}

/// Resolve a channel from --kind/--param or --channel. Returns the channel
/// and a description used in manifests and tables.
fn resolve_channel(parsed: &Parsed) -> Result<(KrausChannel, String), CliError> {
    match (parsed.str_flag("kind"), parsed.str_flag("channel")) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--kind and --channel are mutually exclusive".into(),
        )),
        (Some(kind_str), None) => {
            let kind = StandardKind::parse(kind_str)?;
            let param = match kind {
                StandardKind::Identity => parsed.f64_flag("param")?.unwrap_or(0.0),
                _ => parsed
                    .f64_flag("param")?
                    .ok_or_else(|| CliError::Usage("--kind needs --param".into()))?,
            };
            let ch = standard_channel(kind, param)?;
            Ok((ch, format!("{} param={param}", kind.name())))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read channel file {path}: {e}")))?;
            let file: ChannelFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("cannot parse channel file {path}: {e}")))?;
            let ch = file.to_channel().map_err(|e| {
                CliError::Input(format!("channel file {path} is not a valid channel: {e}"))
            })?;
            Ok((ch, format!("file {path}")))
        }
        (None, None) => Err(CliError::Usage("need --kind KIND or --channel FILE".into())),
    }
}

fn cmd_ci(parsed: &Parsed, out: &mut dyn Write) -> Result<(), CliError> {
    let path = parsed
        .str_flag("state")
        .ok_or_else(|| CliError::Usage("ci needs --state FILE".into()))?;
    let side: Side = match parsed.str_flag("side") {
        None => Side::B,
        Some(s) => s.parse().map_err(CliError::Usage)?,
    };
    let rho = load_state(path)?;
    let ci = coherent_info(&rho, side)?;
    writeln!(out, "state    {path}")?;
    writeln!(out, "dims     ({}, {})", rho.d_a(), rho.d_b())?;
    writeln!(out, "side     {side}")?;
    writeln!(out, "raw      {:.12}", ci.raw)?;
    writeln!(out, "clipped  {:.12}", ci.clipped)?;
    Ok(())
}

fn cmd_capacity(parsed: &Parsed, out: &mut dyn Write) -> Result<(), CliError> {
    let (channel, description) = resolve_channel(parsed)?;
    let n = parsed.usize_flag("n")?.unwrap_or(1);
    let restarts = parsed.usize_flag("restarts")?.unwrap_or(8);
    let (seed, seed_from_flag) = parsed.seed()?;
    let cfg = OptConfig { n, restarts, seed, ..OptConfig::default() };
    let result = maximize_ci(&channel, &cfg)?;

    writeln!(out, "channel            {description}")?;
    writeln!(out, "n                  {n}")?;
    writeln!(out, "best_ci_per_copy   {:.12}  (finite-n lower bound)", result.best_ci_per_copy)?;
    writeln!(out, "baseline (mixed)   {:.12}", result.baseline_ci_per_copy)?;
    writeln!(out, "restart  final_ci_per_copy  iterations  converged")?;
    for t in &result.per_restart {
        writeln!(
            out,
            "{:>7}  {:<17.12} {:>10}  {}",
            t.restart, t.final_ci_per_copy, t.iterations, t.converged
        )?;
    }

    if let Some(path) = parsed.str_flag("out") {
        let mut manifest = RunManifest::new("capacity", seed, seed_from_flag);
        if let Some(ch_path) = parsed.str_flag("channel") {
            manifest.inputs.push(ch_path.to_string());
        }
        if let Some(kind) = parsed.str_flag("kind") {
            manifest.param("kind", kind);
        }
        if let Some(p) = parsed.f64_flag("param")? {
            manifest.param("param", p);
        }
        manifest.param("n", n as u64);
        manifest.param("restarts", restarts as u64);
        manifest.out = Some(path.to_string());
        let file = CapacityFile {
            manifest: &manifest,
            channel: description,
            n,
            note: "finite-n lower bound",
            best_ci_per_copy: result.best_ci_per_copy,
            baseline_ci_per_copy: result.baseline_ci_per_copy,
            improved_over_baseline: result.improved_over_baseline,
            per_restart: &result.per_restart,
        };
        let json = serde_json::to_string_pretty(&file).expect("serializable") + "\n";
        atomic_write(Path::new(path), &json)?;
        writeln!(out, "wrote {path}")?;
    }
    Ok(())
}

fn cmd_verify(parsed: &Parsed, out: &mut dyn Write) -> Result<(), CliError> {
    let suite = parsed
        .positional
        .first()
        .ok_or_else(|| CliError::Usage("verify needs a suite name or \"all\"".into()))?
        .as_str();
    let trials = parsed.usize_flag("trials")?.unwrap_or(200);
    let (seed, seed_from_flag) = parsed.seed()?;
    let out_dir = PathBuf::from(parsed.str_flag("out").unwrap_or("."));
    std::fs::create_dir_all(&out_dir)?;

    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(CliError::Usage(format!(
            "unknown suite {suite:?}; expected one of {} or all",
            SUITES.join(" ")
        )));
    };

    let mut all_passed = true;
    for name in names {
        let report = run_suite(name, trials, seed)?;
        let mut manifest = RunManifest::new("verify", seed, seed_from_flag);
        manifest.param("suite", name);
        manifest.param("trials", trials as u64);
        let path = out_dir.join(format!("{name}.json"));
        manifest.out = Some(path.display().to_string());
        let json = serde_json::to_string_pretty(&ReportFile { manifest: &manifest, report: &report })
            .expect("serializable")
            + "\n";
        atomic_write(&path, &json)?;
        writeln!(
            out,
            "suite {:<11} {}/{} passed  -> {}",
            name,
            report.summary.passed,
            report.summary.total,
            path.display()
        )?;
        all_passed &= report.all_passed();
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

fn cmd_sweep(parsed: &Parsed, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let kind_str = parsed
        .str_flag("kind")
        .ok_or_else(|| CliError::Usage("sweep needs --kind".into()))?;
    let kind = StandardKind::parse(kind_str)?;
    let from = parsed
        .f64_flag("from")?
        .ok_or_else(|| CliError::Usage("sweep needs --from".into()))?;
    let to = parsed
        .f64_flag("to")?
        .ok_or_else(|| CliError::Usage("sweep needs --to".into()))?;
    let step = parsed
        .f64_flag("step")?
        .ok_or_else(|| CliError::Usage("sweep needs --step".into()))?;
    let path = parsed
        .str_flag("out")
        .ok_or_else(|| CliError::Usage("sweep needs --out FILE.csv".into()))?;
    if !(0.0..=1.0).contains(&from) || !(0.0..=1.0).contains(&to) || from > to {
        return Err(CliError::Input(format!(
            "invalid range [{from}, {to}]: need 0 <= from <= to <= 1"
        )));
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(CliError::Input(format!("invalid step {step}: must be positive")));
    }
    let n = parsed.usize_flag("n")?.unwrap_or(1);
    let restarts = parsed.usize_flag("restarts")?.unwrap_or(8);
    let (seed, seed_from_flag) = parsed.seed()?;
    let cfg = OptConfig { n, restarts, seed, ..OptConfig::default() };

    let mut params = Vec::new();
    let mut p = from;
    while p <= to + 1e-12 {
        params.push(p.min(1.0));
        p += step;
    }

    let mut csv = String::from("param,maximize_ci,maximally_mixed_ci,twirled_choi_hashing_rate\n");
    let mut optimized_column = Vec::new();
    for &param in &params {
        let channel = standard_channel(kind, param)?;
        let best = maximize_ci(&channel, &cfg)?.best_ci_per_copy;
        let mixed = maximally_mixed_ci(&channel, n)?;
        // The hashing column needs a square Choi state; erasure (qutrit
        // output) records NaN there.
        let hashing = match channel.choi_state().and_then(|c| twirl_closed_form(&c)) {
            Ok(twirled) => hashing_rate(&twirled)?,
            Err(_) => f64::NAN,
        };
        csv.push_str(&format!("{param:.12},{best:.12},{mixed:.12},{hashing:.12}\n"));
        optimized_column.push(best);
    }

    let mut monotone = true;
    for w in optimized_column.windows(2) {
        if w[1] > w[0] + 1e-4 {
            monotone = false;
        }
    }
    if !monotone {
        writeln!(
            err,
            "warning: maximize_ci column is not non-increasing beyond 1e-4 for {}",
            kind.name()
        )?;
    }

    atomic_write(Path::new(path), &csv)?;

    let mut manifest = RunManifest::new("sweep", seed, seed_from_flag);
    manifest.param("kind", kind.name());
    manifest.param("from", from);
    manifest.param("to", to);
    manifest.param("step", step);
    manifest.param("n", n as u64);
    manifest.param("restarts", restarts as u64);
    manifest.param("monotone_non_increasing", monotone);
    manifest.out = Some(path.to_string());
    let sidecar = format!("{path}.manifest.json");
    let json = serde_json::to_string_pretty(&manifest).expect("serializable") + "\n";
    atomic_write(Path::new(&sidecar), &json)?;

    writeln!(out, "wrote {path} ({} rows)", params.len())?;
    writeln!(out, "wrote {sidecar}")?;
    Ok(())
}

/// Run the CLI against explicit argument and output streams; returns the
/// process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let parsed = match parse_args(args) {
        Ok(p) => p,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = write!(err, "{USAGE}");
            return EXIT_USAGE;
        }
        Err(_) => unreachable!("parse_args only raises usage errors"),
    };

    let result = match parsed.command.as_str() {
        "ci" => cmd_ci(&parsed, out),
        "capacity" => cmd_capacity(&parsed, out),
        "verify" => cmd_verify(&parsed, out),
        "sweep" => cmd_sweep(&parsed, out, err),
        "help" | "--help" | "-h" => {
            let _ = write!(out, "{USAGE}");
            return EXIT_OK;
        }
        other => Err(CliError::Usage(format!("unknown command {other:?}"))),
    };

    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = write!(err, "{USAGE}");
            EXIT_USAGE
        }
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(CliError::Verification) => {
            let _ = writeln!(err, "verification failure: at least one instance failed");
            EXIT_VERIFICATION
        }
    }
}
