//! Executable catalog of structural laws about absorbing-type submodules,
//! evaluated over named corpora.
//!
//! A law is a hypothesis/conclusion pair checked on every instance a corpus
//! supplies. Reports count how many instances met the hypothesis, so a law
//! that only ever passes vacuously is flagged instead of silently green.

mod corpus;
mod covering;
mod laws;
mod mine;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub use corpus::{Corpus, HomItem, IdealizationItem, LocalItem, ModuleItem, ProductItem, CORPUS_NAMES};
pub use covering::{
    avoidance_check, efficient_check, ring_separation_failure, separation_failure, AvoidanceVerdict, Covering,
};
pub use mine::{mine, report_json, Family, Flag, MineHit, Query};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Ideal,
    Submodule,
    Hom,
    Covering,
    Construction,
}

impl InstanceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceKind::Ideal => "ideal",
            InstanceKind::Submodule => "submodule",
            InstanceKind::Hom => "hom",
            InstanceKind::Covering => "covering",
            InstanceKind::Construction => "construction",
        }
    }
}

/// Which list of a corpus an evaluator walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Source {
    Modules,
    Homs,
    Products,
    Localizations,
    Idealizations,
    Coverings,
    IntIdeals,
    Lattices,
    Fixtures,
}

impl Source {
    fn count(self, c: &Corpus) -> usize {
        match self {
            Source::Modules => c.modules.len(),
            Source::Homs => c.homs.len(),
            Source::Products => c.products.len(),
            Source::Localizations => c.localizations.len(),
            Source::Idealizations => c.idealizations.len(),
            Source::Coverings => c.covering_modules.len(),
            Source::IntIdeals => c.int_ideals.len(),
            Source::Lattices => c.lattices.len(),
            Source::Fixtures => usize::from(c.fixtures),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Outcome {
    /// Hypothesis failed.
    Vacuous,
    Holds,
    /// Instance reproducer and witness.
    Violated(String, String),
}

#[derive(Clone, Debug)]
pub(crate) struct Record {
    pub outcome: Outcome,
    pub strata: Vec<&'static str>,
}

impl Record {
    pub fn new(outcome: Outcome) -> Self {
        Record {
            outcome,
            strata: Vec::new(),
        }
    }
    pub fn with(mut self, stratum: &'static str) -> Self {
        self.strata.push(stratum);
        self
    }
}

pub(crate) type Evaluator = fn(&Corpus, usize) -> Result<Vec<Record>>;

pub struct Law {
    pub id: &'static str,
    /// The mathematical statement being checked.
    pub statement: &'static str,
    pub kind: InstanceKind,
    pub(crate) parts: Vec<(Source, Evaluator)>,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Law({})", self.id)
    }
}

impl Law {
    /// Whether the corpus supplies any instance this law can consume.
    pub fn applies_to(&self, c: &Corpus) -> bool {
        self.parts.iter().any(|(s, _)| s.count(c) > 0)
    }
}

pub fn law_catalog() -> Vec<Law> {
    laws::catalog()
}

pub fn find_law(id: &str) -> Result<Law> {
    law_catalog()
        .into_iter()
        .find(|l| l.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownLaw(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Violated,
    Vacuous,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StratumCount {
    pub checked: usize,
    pub non_vacuous: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub instance: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub id: String,
    pub statement: String,
    pub corpus: String,
    pub instances_checked: usize,
    pub non_vacuous_count: usize,
    pub violations: Vec<Violation>,
    pub strata: BTreeMap<String, StratumCount>,
    pub status: Status,
    /// Wall-clock milliseconds, only when timings are requested.
    pub runtime_ms: Option<u64>,
    pub budget_exhausted: bool,
}

impl LawReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "id": self.id,
            "statement": self.statement,
            "corpus": self.corpus,
            "instances_checked": self.instances_checked,
            "non_vacuous_count": self.non_vacuous_count,
            "violations": self.violations,
            "strata": self.strata,
            "status": self.status,
            "budget_exhausted": self.budget_exhausted,
        });
        if let Some(ms) = self.runtime_ms {
            v["runtime_ms"] = json!(ms);
        }
        v
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Maximum number of instances evaluated.
    pub budget: usize,
    pub workers: usize,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: usize::MAX,
            workers: 1,
            timings: false,
        }
    }
}

/// Evaluates a law on every applicable corpus instance, in corpus order.
///
/// Units are evaluated in parallel chunks and merged by index, so the
/// report does not depend on the worker count, and the budget cut falls at
/// the same instance every time.
pub fn run_law(law: &Law, corpus: &Corpus, opts: &RunOptions) -> Result<LawReport> {
    if !law.applies_to(corpus) {
        return Err(Error::KindMismatch {
            law: law.id.to_string(),
            expected: law.kind.as_str(),
        });
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let mut report = LawReport {
        id: law.id.to_string(),
        statement: law.statement.to_string(),
        corpus: corpus.name.clone(),
        instances_checked: 0,
        non_vacuous_count: 0,
        violations: Vec::new(),
        strata: BTreeMap::new(),
        status: Status::Pass,
        runtime_ms: None,
        budget_exhausted: false,
    };
    let chunk = opts.workers.max(1) * 4;
    'parts: for &(source, eval) in &law.parts {
        let n = source.count(corpus);
        let mut lo = 0;
        while lo < n {
            let hi = (lo + chunk).min(n);
            let batch: Vec<Result<Vec<Record>>> =
                pool.install(|| (lo..hi).into_par_iter().map(|i| eval(corpus, i)).collect());
            for records in batch {
                for rec in records? {
                    if report.instances_checked >= opts.budget {
                        report.budget_exhausted = true;
                        break 'parts;
                    }
                    tally(&mut report, rec);
                }
            }
            lo = hi;
        }
    }
    report.status = if !report.violations.is_empty() {
        Status::Violated
    } else if report.non_vacuous_count == 0 {
        Status::Vacuous
    } else {
        Status::Pass
    };
    if opts.timings {
        report.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn tally(report: &mut LawReport, rec: Record) {
    report.instances_checked += 1;
    let (nv, bad) = match &rec.outcome {
        Outcome::Vacuous => (false, false),
        Outcome::Holds => (true, false),
        Outcome::Violated(..) => (true, true),
    };
    report.non_vacuous_count += usize::from(nv);
    for s in &rec.strata {
        let e = report.strata.entry(s.to_string()).or_default();
        e.checked += 1;
        e.non_vacuous += usize::from(nv);
        e.violations += usize::from(bad);
    }
    if let Outcome::Violated(instance, witness) = rec.outcome {
        report.violations.push(Violation { instance, witness });
    }
}
