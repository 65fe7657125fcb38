use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use super::corpus::{Corpus, ModuleItem};
use super::laws::sub_line;
use crate::error::{Error, Result};
use crate::expr::{ModuleExpr, RingExpr};
use crate::finite_module::{ClassificationReport, FiniteModule, Submodule};
use crate::finite_ring::{FiniteRing, Ideal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Flag {
    Proper,
    Prime,
    Primary,
    TwoAbsorbing,
    TwoAbsorbingPrimary,
    OneAbsorbingPrimary,
}

impl Flag {
    pub const ALL: [Flag; 6] = [
        Flag::Proper,
        Flag::Prime,
        Flag::Primary,
        Flag::TwoAbsorbing,
        Flag::TwoAbsorbingPrimary,
        Flag::OneAbsorbingPrimary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Proper => "proper",
            Flag::Prime => "prime",
            Flag::Primary => "primary",
            Flag::TwoAbsorbing => "2-absorbing",
            Flag::TwoAbsorbingPrimary => "2ap-primary",
            Flag::OneAbsorbingPrimary => "1ap",
        }
    }

    pub fn read(self, r: &ClassificationReport) -> bool {
        match self {
            Flag::Proper => r.proper,
            Flag::Prime => r.prime,
            Flag::Primary => r.primary,
            Flag::TwoAbsorbing => r.two_absorbing,
            Flag::TwoAbsorbingPrimary => r.two_absorbing_primary,
            Flag::OneAbsorbingPrimary => r.one_absorbing_primary,
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flag> {
        Flag::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unsupported(format!("unknown flag {s}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Query {
    pub must_hold: Vec<Flag>,
    pub must_fail: Vec<Flag>,
}

impl Query {
    /// Parses terms like `1ap=+` or `primary=-`.
    pub fn parse<S: AsRef<str>>(terms: &[S]) -> Result<Query> {
        let mut q = Query::default();
        for t in terms {
            let t = t.as_ref();
            let (name, sign) = t
                .rsplit_once('=')
                .ok_or_else(|| Error::Unsupported(format!("expected flag=+ or flag=-, got {t}")))?;
            let flag: Flag = name.parse()?;
            match sign {
                "+" | "true" => q.must_hold.push(flag),
                "-" | "\u{2212}" | "false" => q.must_fail.push(flag),
                _ => return Err(Error::Unsupported(format!("bad sign in {t}"))),
            }
        }
        Ok(q)
    }

    pub fn matches(&self, r: &ClassificationReport) -> bool {
        self.must_hold.iter().all(|f| f.read(r)) && self.must_fail.iter().all(|f| !f.read(r))
    }
}

/// Where candidates come from. Enumeration is by module in family order,
/// then by submodule in the module's lattice order (size, then elements).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Regular modules of `Z/n` for `2 <= n <= max`, ascending.
    ZnUpTo(i64),
    /// The regular module of a single `Z/n`.
    Zn(i64),
    /// Every module of a named corpus, in corpus order.
    Corpus(String, u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MineHit {
    /// Reproducer: a complete spec naming the submodule `N`.
    pub spec: String,
    pub submodule: String,
    pub report: Value,
}

impl MineHit {
    pub fn to_json(&self) -> Value {
        json!({"spec": self.spec, "submodule": self.submodule, "report": self.report})
    }
}

fn ideal_names(r: &FiniteRing, i: &Ideal) -> Value {
    json!(i.generators().iter().map(|&g| r.name(g)).collect::<Vec<_>>())
}

fn sub_names(m: &FiniteModule, s: &Submodule) -> Value {
    json!(s.generators().iter().map(|&g| m.name(g)).collect::<Vec<_>>())
}

/// Canonical JSON for a finite classification; keys serialize sorted.
pub fn report_json(m: &FiniteModule, r: &ClassificationReport) -> Value {
    let ring = m.scalars();
    let triple = |w: &Option<(usize, usize, usize)>| match w {
        Some((a, b, x)) => json!([ring.name(*a), ring.name(*b), m.name(*x)]),
        None => Value::Null,
    };
    let pair = |w: &Option<(usize, usize)>| match w {
        Some((a, x)) => json!([ring.name(*a), m.name(*x)]),
        None => Value::Null,
    };
    json!({
        "proper": r.proper,
        "prime": r.prime,
        "primary": r.primary,
        "two_absorbing": r.two_absorbing,
        "two_absorbing_primary": r.two_absorbing_primary,
        "one_absorbing_primary": r.one_absorbing_primary,
        "p_one_absorbing_primary_for": r.p_one_absorbing_primary_for.as_ref().map(|p| ideal_names(ring, p)),
        "colon": ideal_names(ring, &r.colon),
        "colon_radical": ideal_names(ring, &r.colon_radical),
        "m_radical": sub_names(m, &r.m_radical),
        "witnesses": {
            "prime": pair(&r.witnesses.prime),
            "primary": pair(&r.witnesses.primary),
            "two_absorbing": triple(&r.witnesses.two_absorbing),
            "two_absorbing_primary": triple(&r.witnesses.two_absorbing_primary),
            "one_absorbing_primary": triple(&r.witnesses.one_absorbing_primary),
        },
    })
}

fn family_items(family: &Family) -> Result<Vec<ModuleItem>> {
    match family {
        Family::ZnUpTo(max) => (2..=*max).map(|n| ModuleItem::build(RingExpr::Zn(n), ModuleExpr::Regular)).collect(),
        Family::Zn(n) => Ok(vec![ModuleItem::build(RingExpr::Zn(*n), ModuleExpr::Regular)?]),
        Family::Corpus(name, seed) => Ok(Corpus::named(name, *seed)?.modules),
    }
}

/// Submodules matching the query, in enumeration order. `budget` bounds the
/// number of candidates examined.
pub fn mine(query: &Query, family: &Family, budget: usize) -> Result<Vec<MineHit>> {
    let mut hits = Vec::new();
    let mut examined = 0;
    for item in family_items(family)? {
        let m = &item.module;
        for (n, r) in m.submodules()?.iter().zip(m.classify_all()?) {
            if examined >= budget {
                return Ok(hits);
            }
            examined += 1;
            if query.matches(r) {
                let mut spec = item.spec();
                spec.push_str(&sub_line(m, "N", n));
                hits.push(MineHit {
                    spec,
                    submodule: format!("<{}>", m.render_list(n.generators())),
                    report: report_json(m, r),
                });
            }
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_of_z12() {
        let q = Query::parse(&["prime=+"]).unwrap();
        let hits = mine(&q, &Family::Zn(12), usize::MAX).unwrap();
        let subs: Vec<&str> = hits.iter().map(|h| h.submodule.as_str()).collect();
        // lattice order is by size, so the four-element <3> comes first
        assert_eq!(subs, ["<3>", "<2>"]);
    }

    #[test]
    fn query_parsing() {
        let q = Query::parse(&["2ap-primary=+", "1ap=\u{2212}"]).unwrap();
        assert_eq!(q.must_hold, [Flag::TwoAbsorbingPrimary]);
        assert_eq!(q.must_fail, [Flag::OneAbsorbingPrimary]);
        assert!(Query::parse(&["bogus=+"]).is_err());
        assert!(Query::parse(&["1ap"]).is_err());
    }
}
