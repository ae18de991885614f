//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 property failure (or a verdict not matching
//! `--expect`), 2 input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog::{self, CatalogEntry};
use crate::convex::{strict_convexity_probe, AffExt, ConvexSpec};
use crate::extreal::{ExtReal, Rational};
use crate::geometry::RatVec;
use crate::grid::farey_simplex;
use crate::linext::{check_axioms_seeded, Class, LinExt};
use crate::precision::{ext_to_decimal, to_decimal};
use crate::scoring::{
    dists, ill_certificate, savage_reconstruct, subtangent_rule, verify_properness, Dist, OutcomeSet,
    ScoreTable,
};

#[derive(Parser, Debug)]
#[command(name = "linext", version, about = "Linear extended functions and proper scoring rules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a linear or affine extended function (JSON) at a point.
    Eval {
        spec: PathBuf,
        /// Comma-separated rationals, e.g. "1,2/3,0".
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Fuzz the scaling and additivity axioms of a linear extended function.
    Axioms {
        spec: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build, verify, reconstruct or certify scoring rules.
    Score {
        action: ScoreAction,
        /// Catalog name (e.g. "neg-entropy", "squeezed:1/4,3/4,closed-closed")
        /// or path to a score table JSON file.
        source: String,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Emit (p(1), g) samples of a binary catalog function as CSV.
    Plotdata {
        name: String,
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(2..))]
        resolution: u32,
        #[arg(long, default_value_t = 50)]
        precision: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScoreAction {
    Build,
    Verify,
    Reconstruct,
    IllCert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Largest common denominator of the Farey grid.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    grid_denominator: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Decimal places for logarithms and CSV output.
    #[arg(long, default_value_t = 50)]
    precision: u32,
    /// Number of outcomes, or comma-separated labels.
    #[arg(long, default_value = "2")]
    outcomes: String,
    /// Expected verdict summary; the exit code is 0 iff it matches.
    #[arg(long)]
    expect: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file for the table or verdict.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An exit code, or an input error (exit 2).
type CmdResult = anyhow::Result<i32>;

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval { spec, point } => cmd_eval(&spec, &point, out),
        Command::Axioms { spec, trials, seed } => cmd_axioms(&spec, trials, seed, out),
        Command::Score {
            action,
            source,
            config,
        } => cmd_score(action, &source, &config, out),
        Command::Plotdata {
            name,
            resolution,
            precision,
            out: path,
        } => cmd_plotdata(&name, resolution, precision, path.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

enum Loaded {
    Linear(LinExt),
    Affine(AffExt),
}

fn load_function(path: &Path) -> anyhow::Result<Loaded> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("{}: invalid JSON", path.display()))?;
    let loaded = if value.get("anchor").is_some() {
        Loaded::Affine(
            serde_json::from_str(&text).with_context(|| format!("{}: invalid affine function", path.display()))?,
        )
    } else {
        Loaded::Linear(
            serde_json::from_str(&text).with_context(|| format!("{}: invalid linear extended function", path.display()))?,
        )
    };
    Ok(loaded)
}

fn class_of(v: &ExtReal) -> Class {
    match v {
        ExtReal::PosInf => Class::Plus,
        ExtReal::NegInf => Class::Minus,
        ExtReal::Finite(_) => Class::Finite,
    }
}

fn cmd_eval(spec: &Path, point: &str, out: &mut dyn Write) -> CmdResult {
    let x = RatVec::parse_csv(point).with_context(|| format!("point {point:?}"))?;
    let value = match load_function(spec)? {
        Loaded::Linear(f) => f.eval(&x)?,
        Loaded::Affine(h) => h.eval(&x)?,
    };
    writeln!(out, "{value}")?;
    writeln!(out, "{}", class_of(&value))?;
    Ok(0)
}

fn cmd_axioms(spec: &Path, trials: usize, seed: u64, out: &mut dyn Write) -> CmdResult {
    let f = match load_function(spec)? {
        Loaded::Linear(f) => f,
        Loaded::Affine(_) => bail!("axioms apply to linear extended functions only"),
    };
    let report = check_axioms_seeded(&f, &[], trials, seed)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn parse_outcomes(spec: &str) -> anyhow::Result<OutcomeSet> {
    if let Ok(n) = spec.trim().parse::<usize>() {
        return Ok(OutcomeSet::numbered(n)?);
    }
    Ok(OutcomeSet::new(spec.split(',').map(|s| s.trim().to_string()))?)
}

fn catalog_entry(name: &str, config: &RunConfig) -> anyhow::Result<CatalogEntry> {
    let outcomes = parse_outcomes(&config.outcomes)?;
    Ok(catalog::by_name(name, &outcomes, config.precision)?)
}

/// Farey grid over the outcome simplex, restricted to the effective domain.
fn domain_grid(entry: &CatalogEntry, config: &RunConfig) -> anyhow::Result<(OutcomeSet, Vec<Dist>)> {
    let outcomes = entry
        .outcomes
        .clone()
        .ok_or_else(|| anyhow!("catalog entry {} does not define outcomes", entry.name))?;
    let mut points = Vec::new();
    for q in farey_simplex(outcomes.len(), config.grid_denominator) {
        if entry.spec.in_domain(&q)? {
            points.push(q);
        }
    }
    if points.is_empty() {
        bail!("no grid point lies in the effective domain of {}", entry.name);
    }
    Ok((outcomes, dists(points)?))
}

fn looks_like_path(source: &str) -> bool {
    source.ends_with(".json") || Path::new(source).is_file()
}

fn load_table(path: &str) -> anyhow::Result<ScoreTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("{path}: invalid score table"))
}

fn table_for(source: &str, config: &RunConfig) -> anyhow::Result<ScoreTable> {
    if looks_like_path(source) {
        return load_table(source);
    }
    let entry = catalog_entry(source, config)?;
    let (outcomes, grid) = domain_grid(&entry, config)?;
    Ok(subtangent_rule(&entry.spec, &outcomes, &grid)?)
}

fn emit(config: &RunConfig, body: &str, out: &mut dyn Write) -> anyhow::Result<()> {
    match &config.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => Ok(out.write_all(body.as_bytes())?),
    }
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn verdict_exit(summary: &str, passed: bool, config: &RunConfig) -> i32 {
    match &config.expect {
        Some(expected) => {
            let matches = summary == expected || summary.starts_with(&format!("{expected} "));
            if matches {
                0
            } else {
                1
            }
        }
        None => {
            if passed {
                0
            } else {
                1
            }
        }
    }
}

fn cmd_score(action: ScoreAction, source: &str, config: &RunConfig, out: &mut dyn Write) -> CmdResult {
    match action {
        ScoreAction::Build => {
            let table = table_for(source, config)?;
            let body = match config.format {
                Format::Json => to_json(&table)?,
                Format::Csv => table.to_csv(config.precision)?,
            };
            let summary = format!(
                "built preds={} outcomes={} regular={}",
                table.preds().len(),
                table.outcomes().len(),
                table.is_regular()
            );
            if config.out.is_some() {
                writeln!(out, "{summary}")?;
            }
            emit(config, &body, out)?;
            Ok(verdict_exit(&summary, true, config))
        }
        ScoreAction::Verify => {
            let table = table_for(source, config)?;
            let verdict = verify_properness(&table)?;
            let summary = verdict.summary();
            writeln!(out, "{summary}")?;
            if config.out.is_some() {
                emit(config, &to_json(&verdict)?, out)?;
            }
            Ok(verdict_exit(&summary, verdict.is_proper(), config))
        }
        ScoreAction::Reconstruct => {
            let table = table_for(source, config)?;
            let g = savage_reconstruct(&table)?;
            let report = reconstruction_report(&g, &table, config.precision)?;
            let summary = format!(
                "reconstructed preds={} probe={}",
                table.preds().len(),
                report["probe"]["verdict"].as_str().unwrap_or("unknown")
            );
            writeln!(out, "{summary}")?;
            if config.out.is_some() {
                emit(config, &to_json(&report)?, out)?;
            }
            Ok(verdict_exit(&summary, true, config))
        }
        ScoreAction::IllCert => {
            let (spec, grid) = if looks_like_path(source) {
                let table = load_table(source)?;
                (savage_reconstruct(&table)?, table.preds().to_vec())
            } else {
                let entry = catalog_entry(source, config)?;
                let (_, grid) = domain_grid(&entry, config)?;
                (entry.spec, grid)
            };
            let verdict = ill_certificate(&spec, &grid)?;
            let summary = verdict.summary();
            writeln!(out, "{summary}")?;
            if config.out.is_some() {
                emit(config, &to_json(&verdict)?, out)?;
            }
            Ok(verdict_exit(&summary, verdict.is_certified(), config))
        }
    }
}

fn reconstruction_report(g: &ConvexSpec, table: &ScoreTable, digits: u32) -> anyhow::Result<serde_json::Value> {
    let grid: Vec<RatVec> = table.preds().iter().map(|p| p.probs().clone()).collect();
    let mut points = Vec::with_capacity(grid.len());
    for q in &grid {
        let value = g.eval(q)?;
        points.push(json!({
            "q": q,
            "g": value,
            "g_decimal": ext_to_decimal(&value, digits),
            "subgradient": g.subgradient(q)?,
        }));
    }
    let probe = strict_convexity_probe(g, &grid)?;
    Ok(json!({ "points": points, "probe": probe }))
}

fn cmd_plotdata(
    name: &str,
    resolution: u32,
    digits: u32,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let outcomes = OutcomeSet::numbered(2)?;
    let entry = catalog::by_name(name, &outcomes, digits)?;
    if entry.spec.dim() != 2 {
        return Err(crate::error::Error::NonBinary(entry.spec.dim()).into());
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["p1", "g"])?;
    let steps = i64::from(resolution - 1);
    for k in 0..=steps {
        let p1 = Rational::new(k.into(), steps.into());
        let q = RatVec::new(vec![Rational::from_integer(1.into()) - &p1, p1.clone()]);
        let value = entry.spec.eval(&q)?;
        w.write_record([to_decimal(&p1, digits), ext_to_decimal(&value, digits)])?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?;
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display()))?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(0)
}
