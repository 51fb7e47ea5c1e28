//! Catalogs of groups with expected facts.
//!
//! One entry per line:
//!
//! ```text
//! <recipe> expect key=value [key=value ...]   # provenance
//! ```
//!
//! Keys: `order=<int>`, `p=<bool>` (property (P)), `a3=<bool>` (membership
//! by the group-theoretic test), `spectral=<bool>` (membership by scanning
//! every 3-valent Cayley graph), `family=a(m,n)|b|c|d` (family axioms hold),
//! `special=<bool>` (special 2-group). Blank lines and lines starting with
//! `#` are ignored.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::analysis::{has_property_p, in_a3_theorem, verify_family, FamilySpec};
use crate::cache::build_cached;
use crate::group::FiniteGroup;
use crate::spectra::{in_a3_spectral_with_ceiling, SPECTRAL_CEILING};

/// The catalog shipped with the tool.
pub const DEFAULT_CATALOG: &str = include_str!("../catalog/default.catalog");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("catalog line {line}: {msg}")]
pub struct CatalogError {
    pub line: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    Order(usize),
    PropertyP(bool),
    A3(bool),
    Spectral(bool),
    Family(FamilySpec),
    Special(bool),
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Order(n) => write!(f, "order={n}"),
            Fact::PropertyP(b) => write!(f, "p={b}"),
            Fact::A3(b) => write!(f, "a3={b}"),
            Fact::Spectral(b) => write!(f, "spectral={b}"),
            Fact::Family(FamilySpec::A { m, n }) => write!(f, "family=a({m},{n})"),
            Fact::Family(s) => write!(f, "family={}", s.tag()),
            Fact::Special(b) => write!(f, "special={b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub line: usize,
    pub recipe: String,
    pub facts: Vec<Fact>,
    pub provenance: Option<String>,
}

fn parse_bool(line: usize, key: &str, v: &str) -> Result<bool, CatalogError> {
    v.parse().map_err(|_| CatalogError { line, msg: format!("{key} expects true or false, got {v:?}") })
}

fn parse_fact(line: usize, token: &str) -> Result<Fact, CatalogError> {
    let err = |msg: String| CatalogError { line, msg };
    let (key, value) = token.split_once('=').ok_or_else(|| err(format!("expected key=value, got {token:?}")))?;
    Ok(match key {
        "order" => Fact::Order(value.parse().map_err(|_| err(format!("bad order {value:?}")))?),
        "p" => Fact::PropertyP(parse_bool(line, key, value)?),
        "a3" => Fact::A3(parse_bool(line, key, value)?),
        "spectral" => Fact::Spectral(parse_bool(line, key, value)?),
        "special" => Fact::Special(parse_bool(line, key, value)?),
        "family" => {
            let (tag, params) = match value.split_once('(') {
                Some((t, rest)) => {
                    let inner = rest.strip_suffix(')').ok_or_else(|| err(format!("unclosed {value:?}")))?;
                    let params = inner
                        .split(',')
                        .map(|p| p.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| err(format!("bad family parameters {inner:?}")))?;
                    (t, params)
                }
                None => (value, Vec::new()),
            };
            Fact::Family(FamilySpec::parse(tag, &params).map_err(|e| err(e.to_string()))?)
        }
        other => return Err(err(format!("unknown key {other:?}"))),
    })
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (body, provenance) = match trimmed.split_once('#') {
            Some((b, p)) => (b.trim(), Some(p.trim().to_string())),
            None => (trimmed, None),
        };
        let (recipe, facts) = body
            .split_once(" expect ")
            .or_else(|| body.strip_suffix(" expect").map(|r| (r, "")))
            .ok_or_else(|| CatalogError { line, msg: "expected `<recipe> expect key=value ...`".into() })?;
        let facts = facts.split_whitespace().map(|t| parse_fact(line, t)).collect::<Result<Vec<_>, _>>()?;
        if facts.is_empty() {
            return Err(CatalogError { line, msg: "entry has no expected facts".into() });
        }
        if provenance.is_none() {
            log::warn!("catalog line {line} has no provenance comment");
        }
        out.push(CatalogEntry { line, recipe: recipe.trim().to_string(), facts, provenance });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactOutcome {
    pub expected: Fact,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryOutcome {
    pub entry: CatalogEntry,
    /// Set when the recipe could not be built.
    pub build_error: Option<String>,
    pub facts: Vec<FactOutcome>,
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.build_error.is_none() && self.facts.iter().all(|f| f.pass)
    }
}

impl fmt::Display for EntryOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed() { "PASS" } else { "FAIL" }, self.entry.recipe)?;
        if let Some(e) = &self.build_error {
            return write!(f, " build-error: {e}");
        }
        for o in &self.facts {
            if o.pass {
                write!(f, " {}", o.expected)?;
            } else {
                write!(f, " {}[got {}]", o.expected, o.actual)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogOptions {
    pub jobs: usize,
    pub spectral_ceiling: usize,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions { jobs: 0, spectral_ceiling: SPECTRAL_CEILING }
    }
}

fn check_fact(g: &FiniteGroup, fact: &Fact, opts: &CatalogOptions) -> FactOutcome {
    let (actual, pass) = match fact {
        Fact::Order(n) => (g.order().to_string(), g.order() == *n),
        Fact::PropertyP(b) => {
            let v = has_property_p(g).verdict;
            (v.to_string(), v == *b)
        }
        Fact::A3(b) => {
            let v = in_a3_theorem(g).member;
            (v.to_string(), v == *b)
        }
        Fact::Spectral(b) => match in_a3_spectral_with_ceiling(g, opts.spectral_ceiling) {
            Ok(v) => (v.member.to_string(), v.member == *b),
            Err(e) => (e.to_string(), false),
        },
        Fact::Family(spec) => {
            let cert = verify_family(g, *spec);
            let failed: Vec<&str> =
                cert.report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
            let actual = if failed.is_empty() { "accepted".to_string() } else { format!("rejected:{}", failed.join(",")) };
            (actual, cert.accepted())
        }
        Fact::Special(b) => match g.is_special_2group() {
            Ok(r) => (r.special.to_string(), r.special == *b),
            Err(_) => ("not-a-2-group".to_string(), !*b),
        },
    };
    FactOutcome { expected: fact.clone(), actual, pass }
}

pub fn run_entry(entry: &CatalogEntry, opts: &CatalogOptions) -> EntryOutcome {
    match build_cached(&entry.recipe) {
        Err(e) => EntryOutcome { entry: entry.clone(), build_error: Some(e.to_string()), facts: Vec::new() },
        Ok(g) => EntryOutcome {
            entry: entry.clone(),
            build_error: None,
            facts: entry.facts.iter().map(|f| check_fact(&g, f, opts)).collect(),
        },
    }
}

/// Runs every entry on a pool of `opts.jobs` workers (0 means one per core).
/// The result is in catalog order whatever the completion order.
pub fn run_catalog(entries: &[CatalogEntry], opts: &CatalogOptions) -> Vec<EntryOutcome> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().expect("thread pool");
    pool.install(|| entries.par_iter().map(|e| run_entry(e, opts)).collect())
}
