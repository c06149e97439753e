//! Command-line interface.
//!
//! Exit codes: 0 success, 1 validation failure or unreadable input, 2 usage
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use etk_core::classify::{classify, ClassifyOptions, FilterMode};
use etk_core::equivariance::check_invariance;
use etk_core::group::{catalog, Builtin, FamilyParams, GroupSpec};
use etk_core::tensor::{apply_constraint, Constraint, TensorSpec};
use num_traits::Zero;
use serde_json::json;

use crate::json::{self, FormatError, TensorJson};
use crate::report::{Format, ReportDoc, SCHEMA_VERSION};

pub const MAX_N_VAR: &str = "ETK_MAX_N";
pub const DEFAULT_MAX_N: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "etk", version, about = "Classify invariant curvature, torsion and inner torsion for matrix groups")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the invariant characteristic tensors of a group.
    Classify(ClassifyArgs),
    /// List the builtin group families.
    Catalog {
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Validate a group, or test one tensor for invariance under it.
    Check(CheckArgs),
    /// Torsion and curvature constants of a parallelism.
    Model(ModelArgs),
}

#[derive(Debug, Args)]
#[group(skip)]
struct GroupArgs {
    /// Builtin family: trivial, gl, sl, so, o, u, diagonal, block, product_oo, signs.
    #[arg(long, required_unless_present = "group_file", conflicts_with = "group_file")]
    group: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// Group definition JSON.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, default_value = "text")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    source: GroupArgs,
    /// Always restrict curvature to g-valued tensors.
    #[arg(long, conflicts_with = "no_g_valued_filter")]
    g_valued_filter: bool,
    /// Never restrict curvature to g-valued tensors.
    #[arg(long)]
    no_g_valued_filter: bool,
    /// Seed for the Cayley rotation checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    cayley_checks: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    source: GroupArgs,
    /// Tensor JSON to test for invariance.
    #[arg(long)]
    tensor: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Model input JSON.
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<etk_core::Error> for Failure {
    fn from(e: etk_core::Error) -> Self {
        match e {
            etk_core::Error::UnknownFamily(_) | etk_core::Error::InvalidParams(_) => Failure::Usage(e.to_string()),
            etk_core::Error::InvalidGroup(vs) => Failure::Invalid(violation_lines(&vs)),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn violation_lines(vs: &[etk_core::group::Violation]) -> String {
    let mut s = format!("group fails validation with {} violation(s):", vs.len());
    for v in vs {
        s.push_str(&format!("\n  {v}"));
    }
    s
}

fn max_n() -> Result<usize, Failure> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => {
            v.trim().parse().map_err(|_| Failure::Usage(format!("{MAX_N_VAR} must be a positive integer, got {v:?}")))
        }
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn load_group(a: &GroupArgs) -> Result<GroupSpec, Failure> {
    let group = match (&a.group, &a.group_file) {
        (Some(family), None) => {
            let params = FamilyParams { n: a.n, n1: a.n1, n2: a.n2, s: a.s };
            Builtin::parse(family, params)?.build()?
        }
        (None, Some(path)) => json::read_group(path)?,
        _ => return Err(Failure::Usage("give exactly one of --group or --group-file".into())),
    };
    let cap = max_n()?;
    if group.n > cap {
        return Err(Failure::Usage(format!(
            "ambient dimension {} exceeds the cap {cap} (raise {MAX_N_VAR} to allow it)",
            group.n
        )));
    }
    Ok(group)
}

fn emit(output: &OutputArgs, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &output.out {
        Some(path) => write_file(path, text),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Invalid(format!("cannot write output: {e}"))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn run_classify(a: &ClassifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let group = load_group(&a.source)?;
    let mode = if a.g_valued_filter {
        FilterMode::Force
    } else if a.no_g_valued_filter {
        FilterMode::Off
    } else {
        FilterMode::Auto
    };
    let options = ClassifyOptions { g_valued_filter: mode, seed: a.seed, cayley_checks: a.cayley_checks };
    let report = classify(&group, &options)?;
    emit(&a.output, &ReportDoc::from_report(&report).render(a.output.format), stdout)?;
    Ok(0)
}

fn run_catalog(format: Format, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let entries = catalog();
    let text = match format {
        Format::Json => {
            let list: Vec<_> = entries
                .iter()
                .map(|e| {
                    json!({
                        "family": e.family,
                        "params": e.params,
                        "ambient_dim": e.ambient_dim,
                        "algebra_dim": e.algebra_dim,
                        "component_reps": e.component_reps,
                        "example": e.example.map(|b| json!({
                            "name": b.display_name(),
                            "n": b.ambient_dim(),
                            "algebra_dim": b.algebra_dim(),
                        })),
                    })
                })
                .collect();
            pretty(&json!({ "schema_version": SCHEMA_VERSION, "families": list }))
        }
        Format::Text => {
            let mut s = format!(
                "{:<11} {:<13} {:<6} {:<22} {:<25} example\n",
                "family", "params", "n", "dim g", "component reps"
            );
            for e in &entries {
                let example = e
                    .example
                    .map(|b| format!("{} (dim g = {})", b.display_name(), b.algebra_dim()))
                    .unwrap_or_else(|| "-".into());
                s.push_str(&format!(
                    "{:<11} {:<13} {:<6} {:<22} {:<25} {example}\n",
                    e.family, e.params, e.ambient_dim, e.algebra_dim, e.component_reps
                ));
            }
            s
        }
    };
    stdout.write_all(text.as_bytes()).map_err(|e| Failure::Invalid(e.to_string()))?;
    Ok(0)
}

fn run_check(a: &CheckArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let group = load_group(&a.source)?;
    let violations = group.validate();
    if !violations.is_empty() || a.tensor.is_none() {
        let lines: Vec<String> = violations.iter().map(ToString::to_string).collect();
        let text = match a.output.format {
            Format::Json => pretty(&json!({
                "schema_version": SCHEMA_VERSION,
                "group": group.name,
                "valid": lines.is_empty(),
                "violations": lines,
            })),
            Format::Text if lines.is_empty() => format!("group {}: valid\n", group.name),
            Format::Text => format!("group {}: {}\n", group.name, violation_lines(&violations)),
        };
        emit(&a.output, &text, stdout)?;
        return Ok(if violations.is_empty() { 0 } else { 1 });
    }
    let tensor = json::read_tensor(a.tensor.as_deref().expect("checked above"))?;
    let verdict = check_invariance(&group, &tensor)?;
    let text = match a.output.format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "group": group.name,
            "invariant": verdict.is_invariant(),
            "failing_algebra": verdict.failing_algebra,
            "failing_reps": verdict.failing_reps,
        })),
        Format::Text if verdict.is_invariant() => format!("tensor is invariant under {}\n", group.name),
        Format::Text => format!(
            "tensor is not invariant under {}: algebra elements {:?}, component reps {:?}\n",
            group.name, verdict.failing_algebra, verdict.failing_reps
        ),
    };
    emit(&a.output, &text, stdout)?;
    Ok(if verdict.is_invariant() { 0 } else { 1 })
}

fn run_model(a: &ModelArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let data = json::read_model(&a.input)?;
    if !data.jacobi_check() {
        let text = match a.output.format {
            Format::Json => pretty(&json!({ "schema_version": SCHEMA_VERSION, "n": data.n(), "jacobi": false })),
            Format::Text => "structure constants violate the Jacobi identity\n".to_string(),
        };
        emit(&a.output, &text, stdout)?;
        return Ok(1);
    }
    let torsion = data.torsion_constants()?;
    let curvature = data.curvature_constants()?;
    let bianchi = apply_constraint(&TensorSpec::curvature(data.n()), Constraint::FirstBianchi, curvature.coords())?
        .iter()
        .all(Zero::is_zero);
    let text = match a.output.format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "n": data.n(),
            "jacobi": true,
            "torsion": TensorJson::from_tensor(&torsion),
            "curvature": TensorJson::from_tensor(&curvature),
            "first_bianchi": bianchi,
        })),
        Format::Text => format!(
            "n = {}\njacobi: holds\ntorsion: {}\ncurvature: {}\nfirst Bianchi: {}\n",
            data.n(),
            if torsion.is_zero() { "zero" } else { "nonzero" },
            if curvature.is_zero() { "zero" } else { "nonzero" },
            if bianchi { "holds" } else { "fails" },
        ),
    };
    emit(&a.output, &text, stdout)?;
    Ok(0)
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => run_classify(a, stdout),
        Command::Catalog { format } => run_catalog(*format, stdout),
        Command::Check(a) => run_check(a, stdout),
        Command::Model(a) => run_model(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}
