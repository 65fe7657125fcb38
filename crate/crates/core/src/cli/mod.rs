//! Command-line front end: `classify`, `verify` and `mine`.
//!
//! Exit codes: 0 success, 1 a law was violated or only held vacuously,
//! 2 usage or input error, 3 a resource cap was hit.

mod parse;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use parse::{parse_spec, Instance, InstanceSpec, NamedTarget, TargetKind, SPEC_VERSION};

use crate::error::Error;
use crate::finite_ring::{FiniteRing, IdealReport};
use crate::integer_module::{
    classify_int_ideal, classify_int_submodule, IntIdealReport, IntSubmoduleReport, Vector,
};
use crate::theorem_suite::{
    find_law, law_catalog, mine, report_json, run_law, Corpus, Family, Query, RunOptions, Status,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "absorbing", version, about = "Classify absorbing-type submodules and check laws about them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one named submodule or ideal of an instance spec.
    Classify {
        #[arg(long)]
        spec: PathBuf,
        /// Name from a `sub` or `ideal` line; defaults to the first one.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check laws on a corpus, one report per law.
    Verify {
        /// Law ids, or `all`.
        #[arg(default_value = "all")]
        laws: Vec<String>,
        #[arg(long, default_value = "small-finite")]
        corpus: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of instances per law.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include wall-clock runtimes in the reports.
        #[arg(long)]
        timings: bool,
    },
    /// Search for submodules with a given flag profile, e.g. `1ap=+ primary=-`.
    Mine {
        #[arg(required = true)]
        query: Vec<String>,
        /// `zn` (n up to --max-n), `zn:N`, or a corpus name.
        #[arg(long, default_value = "zn")]
        family: String,
        #[arg(long, default_value_t = 100)]
        max_n: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of candidates examined.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_cap() { EXIT_CAP } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

/// Runs the CLI on `args` (including the program name) without touching
/// the process's stdout or exit status.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => CliOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) => CliOutput {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(cmd: Command) -> Result<(i32, String), Failure> {
    match cmd {
        Command::Classify { spec, target, format } => {
            let text = std::fs::read_to_string(&spec).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("{}: {e}", spec.display()),
            })?;
            let doc = classify_text(&text, target.as_deref())?;
            Ok((EXIT_OK, render_document(&doc, format)))
        }
        Command::Verify {
            laws,
            corpus,
            seed,
            budget,
            workers,
            format,
            timings,
        } => verify(&laws, &corpus, seed, budget, workers, format, timings),
        Command::Mine {
            query,
            family,
            max_n,
            seed,
            budget,
            format,
        } => {
            let q = Query::parse(&query)?;
            let fam = parse_family(&family, max_n, seed)?;
            let hits = mine(&q, &fam, budget.unwrap_or(usize::MAX))?;
            let mut out = String::new();
            for h in hits {
                match format {
                    Format::Json => out.push_str(&format!("{}\n", h.to_json())),
                    Format::Table => out.push_str(&format!(
                        "{}\t{}\n",
                        h.submodule,
                        h.spec.lines().filter(|l| !l.starts_with("version")).collect::<Vec<_>>().join("; ")
                    )),
                }
            }
            Ok((EXIT_OK, out))
        }
    }
}

fn parse_family(text: &str, max_n: i64, seed: u64) -> Result<Family, Failure> {
    if text == "zn" {
        return Ok(Family::ZnUpTo(max_n));
    }
    if let Some(n) = text.strip_prefix("zn:") {
        let n = n.parse().map_err(|_| Failure {
            code: EXIT_USAGE,
            message: format!("bad family {text}"),
        })?;
        return Ok(Family::Zn(n));
    }
    Ok(Family::Corpus(text.to_string(), seed))
}

fn verify(
    ids: &[String],
    corpus: &str,
    seed: u64,
    budget: Option<usize>,
    workers: usize,
    format: Format,
    timings: bool,
) -> Result<(i32, String), Failure> {
    let corpus = Corpus::named(corpus, seed)?;
    let all = ids.iter().any(|i| i.eq_ignore_ascii_case("all"));
    let laws = if all {
        law_catalog().into_iter().filter(|l| l.applies_to(&corpus)).collect()
    } else {
        ids.iter().map(|i| find_law(i)).collect::<Result<Vec<_>, _>>()?
    };
    let opts = RunOptions {
        budget: budget.unwrap_or(usize::MAX),
        workers,
        timings,
    };
    let mut out = String::new();
    let mut code = EXIT_OK;
    for law in &laws {
        let r = run_law(law, &corpus, &opts)?;
        if r.status != Status::Pass {
            code = EXIT_VIOLATION;
        }
        match format {
            Format::Json => out.push_str(&format!("{}\n", r.to_json())),
            Format::Table => out.push_str(&format!(
                "{:<12} {:<8} checked={} non_vacuous={} violations={}\n",
                r.id,
                serde_json::to_value(r.status).unwrap().as_str().unwrap_or(""),
                r.instances_checked,
                r.non_vacuous_count,
                r.violations.len()
            )),
        }
    }
    Ok((code, out))
}

fn names(r: &FiniteRing, xs: &[usize]) -> Value {
    json!(xs.iter().map(|&x| r.name(x)).collect::<Vec<_>>())
}

pub fn finite_ideal_json(r: &FiniteRing, rep: &IdealReport) -> Value {
    let w = &rep.witnesses;
    json!({
        "proper": rep.proper,
        "prime": rep.prime,
        "maximal": rep.maximal,
        "primary": rep.primary,
        "two_absorbing_primary": rep.two_absorbing_primary,
        "one_absorbing_primary": rep.one_absorbing_primary,
        "radical": names(r, rep.radical.generators()),
        "witnesses": {
            "prime": w.prime.map(|v| names(r, &v)),
            "maximal": w.maximal.map(|x| r.name(x)),
            "primary": w.primary.map(|v| names(r, &v)),
            "two_absorbing_primary": w.two_absorbing_primary.map(|v| names(r, &v)),
            "one_absorbing_primary": w.one_absorbing_primary.map(|v| names(r, &v)),
        },
    })
}

pub fn int_ideal_json(rep: &IntIdealReport) -> Value {
    let w = &rep.witnesses;
    json!({
        "ideal": rep.ideal.to_string(),
        "proper": rep.ideal.is_proper(),
        "prime": rep.prime,
        "maximal": rep.maximal,
        "primary": rep.primary,
        "two_absorbing_primary": rep.two_absorbing_primary,
        "one_absorbing_primary": rep.one_absorbing_primary,
        "radical": rep.radical.to_string(),
        "witnesses": {
            "prime": w.prime.map(|(a, b)| json!([a, b])),
            "primary": w.primary.map(|(a, b)| json!([a, b])),
            "two_absorbing_primary": w.two_absorbing_primary.map(|(a, b, c)| json!([a, b, c])),
            "one_absorbing_primary": w.one_absorbing_primary.map(|(a, b, c)| json!([a, b, c])),
        },
    })
}

fn vector_json(v: &Vector) -> Value {
    if v.len() == 1 {
        json!(v[0])
    } else {
        json!(v)
    }
}

pub fn int_submodule_json(rep: &IntSubmoduleReport) -> Value {
    let w = &rep.witnesses;
    json!({
        "proper": rep.proper,
        "prime": rep.prime,
        "primary": rep.primary,
        "two_absorbing_primary": rep.two_absorbing_primary,
        "one_absorbing_primary": rep.one_absorbing_primary,
        "colon": rep.colon.to_string(),
        "colon_radical": rep.colon_radical.to_string(),
        "m_radical": rep.m_radical.to_string(),
        "witnesses": {
            "prime": w.prime.as_ref().map(|(a, m)| json!([a, vector_json(m)])),
            "primary": w.primary.as_ref().map(|(a, m)| json!([a, vector_json(m)])),
            "two_absorbing_primary": w.two_absorbing_primary.as_ref().map(|(a, b, m)| json!([a, b, vector_json(m)])),
            "one_absorbing_primary": w.one_absorbing_primary.as_ref().map(|(a, b, m)| json!([a, b, vector_json(m)])),
        },
    })
}

/// Parses, builds and classifies one target of a spec.
pub fn classify_text(text: &str, target: Option<&str>) -> Result<Value, Error> {
    let spec = parse_spec(text)?;
    let name = match target {
        Some(t) => t.to_string(),
        None => spec
            .targets
            .first()
            .map(|t| t.name.clone())
            .ok_or_else(|| Error::UnknownTarget("(none declared)".into()))?,
    };
    let (kind, report) = match spec.build()? {
        Instance::Finite { module, subs, ideals } => {
            if let Some((_, n)) = subs.iter().find(|(s, _)| *s == name) {
                ("submodule", report_json(&module, module.report_for(n)?))
            } else if let Some((_, i)) = ideals.iter().find(|(s, _)| *s == name) {
                let r = module.scalars();
                ("ideal", finite_ideal_json(r, &r.classify_ideal(i)?))
            } else {
                return Err(Error::UnknownTarget(name));
            }
        }
        Instance::Lattice { subs, ideals, .. } => {
            if let Some((_, n)) = subs.iter().find(|(s, _)| *s == name) {
                ("submodule", int_submodule_json(&classify_int_submodule(n)?))
            } else if let Some((_, i)) = ideals.iter().find(|(s, _)| *s == name) {
                ("ideal", int_ideal_json(&classify_int_ideal(*i)?))
            } else {
                return Err(Error::UnknownTarget(name));
            }
        }
    };
    Ok(json!({"target": name, "kind": kind, "report": report}))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn render_document(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(doc).expect("values serialize")),
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", doc, &mut rows);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_z() {
        let doc = classify_text("ring Z\nmodule regular\nsub N = [12]\n", None).unwrap();
        let r = &doc["report"];
        assert_eq!(r["one_absorbing_primary"], false);
        assert_eq!(r["two_absorbing_primary"], true);
        assert_eq!(r["witnesses"]["one_absorbing_primary"], json!([2, 2, 3]));
        assert_eq!(r["m_radical"], "6Z");
        assert_eq!(r["colon"], "12Z");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["absorbing", "verify", "bogus-id"]).code, EXIT_USAGE);
        assert_eq!(run(["absorbing", "frobnicate"]).code, EXIT_USAGE);
        let ok = run(["absorbing", "mine", "prime=+", "--family", "zn:12"]);
        assert_eq!(ok.code, EXIT_OK);
        assert_eq!(ok.stdout.lines().count(), 2);
    }
}
