//! A tab-separated catalog of classical Fano numerical types and a cross-check against the
//! Hilbert polynomial constructors.
//!
//! One record per line, nine tab-separated fields:
//!
//! ```text
//! name  n  d  delta  r  p_n2|-  p_n3|-  expected_h0|-  ProjectiveSpace|Quadric|None
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Rationals are `p/q` or integers.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hilbert::{build, HilbertModel};
use crate::invariants::FanoInvariants;
use crate::ratpoly::{binomial_hilbert, int, parse_rational, poly_identity_equal, Poly, Rational};

/// The bundled catalog, relative to the repository root.
pub const DEFAULT_CATALOG_PATH: &str = "crates/core/data/fano_catalog.tsv";

pub const BUNDLED_CATALOG: &str = include_str!("../data/fano_catalog.tsv");

const FIELDS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Oracle {
    ProjectiveSpace,
    Quadric,
    None,
}

impl Oracle {
    pub fn as_str(self) -> &'static str {
        match self {
            Oracle::ProjectiveSpace => "ProjectiveSpace",
            Oracle::Quadric => "Quadric",
            Oracle::None => "None",
        }
    }

    fn parse(text: &str) -> Option<Self> {
        match text {
            "ProjectiveSpace" => Some(Oracle::ProjectiveSpace),
            "Quadric" => Some(Oracle::Quadric),
            "None" => Some(Oracle::None),
            _ => None,
        }
    }

    /// The oracle polynomial in dimension `n`, if any.
    pub fn polynomial(self, n: u32) -> Option<Poly> {
        match self {
            Oracle::ProjectiveSpace => Some(binomial_hilbert(n, 0)),
            Oracle::Quadric => Some(&binomial_hilbert(n + 1, 0) - &binomial_hilbert(n + 1, -2)),
            Oracle::None => None,
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub model: HilbertModel,
    pub expected_h0: Option<Rational>,
    pub oracle: Oracle,
}

impl CatalogEntry {
    pub fn invariants(&self) -> &FanoInvariants {
        self.model.invariants()
    }

    fn to_line(&self) -> String {
        let inv = self.invariants();
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".to_string());
        [
            self.name.clone(),
            inv.n().to_string(),
            inv.d().to_string(),
            inv.delta().to_string(),
            inv.coindex().to_string(),
            opt(self.model.p_n2().map(|v| v.to_string())),
            opt(self.model.p_n3().map(|v| v.to_string())),
            opt(self.expected_h0.as_ref().map(ToString::to_string)),
            self.oracle.to_string(),
        ]
        .join("\t")
    }
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    parse_catalog(&fs::read_to_string(path)?)
}

pub fn bundled_catalog() -> Result<Vec<CatalogEntry>> {
    parse_catalog(BUNDLED_CATALOG)
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        entries.push(parse_line(idx + 1, line)?);
    }
    Ok(entries)
}

fn parse_line(line: usize, text: &str) -> Result<CatalogEntry> {
    let parse_err = |message: String| Error::Parse { line, message };
    let invalid = |e: Error| Error::Validation {
        line,
        message: e.to_string(),
    };

    let fields: Vec<&str> = text.split('\t').map(str::trim).collect();
    if fields.len() != FIELDS {
        return Err(parse_err(format!(
            "expected {FIELDS} tab-separated fields, found {}",
            fields.len()
        )));
    }
    let name = fields[0];
    if name.is_empty() {
        return Err(parse_err("empty name".into()));
    }
    let rational = |k: usize, label: &str| {
        parse_rational(fields[k]).map_err(|e| parse_err(format!("{label}: {e}")))
    };
    let optional_int = |k: usize, label: &str| -> Result<Option<i64>> {
        match fields[k] {
            "-" => Ok(None),
            s => s.parse::<i64>().map(Some).map_err(|_| {
                parse_err(format!("{label}: expected an integer or '-', found {s:?}"))
            }),
        }
    };

    let n: i64 = fields[1]
        .parse()
        .map_err(|_| parse_err(format!("n: expected an integer, found {:?}", fields[1])))?;
    let d = rational(2, "d")?;
    let delta = rational(3, "delta")?;
    let r = rational(4, "r")?;
    let p_n2 = optional_int(5, "p_n2")?;
    let p_n3 = optional_int(6, "p_n3")?;
    let expected_h0 = match fields[7] {
        "-" => None,
        _ => Some(rational(7, "expected_h0")?),
    };
    let oracle = Oracle::parse(fields[8])
        .ok_or_else(|| parse_err(format!("unknown oracle tag {:?}", fields[8])))?;

    let inv = FanoInvariants::with_coindex(n, d, delta, r).map_err(invalid)?;
    let model = HilbertModel::new(inv, p_n2, p_n3).map_err(invalid)?;
    if let Some(h0) = &expected_h0 {
        if h0 < &int(1) {
            return Err(Error::Validation {
                line,
                message: format!("expected_h0 must satisfy h0 >= 1 (got {h0})"),
            });
        }
    }
    Ok(CatalogEntry {
        name: name.to_string(),
        model,
        expected_h0,
        oracle,
    })
}

/// One line per entry; comments and blank lines are not preserved.
pub fn serialize(entries: &[CatalogEntry]) -> String {
    entries.iter().map(|e| e.to_line() + "\n").collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryOutcome {
    pub name: String,
    pub h0: Option<Rational>,
    pub expected_h0: Option<Rational>,
    /// `None` when the entry carries no expectation.
    pub h0_matches: Option<bool>,
    /// `None` when the entry has no oracle.
    pub oracle_matches: Option<bool>,
    pub error: Option<String>,
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.h0_matches != Some(false) && self.oracle_matches != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrosscheckReport {
    pub outcomes: Vec<EntryOutcome>,
}

impl CrosscheckReport {
    pub fn mismatches(&self) -> Vec<&EntryOutcome> {
        self.outcomes.iter().filter(|o| !o.passed()).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(EntryOutcome::passed)
    }
}

pub fn crosscheck(entries: &[CatalogEntry]) -> CrosscheckReport {
    let outcomes = entries.iter().map(check_entry).collect();
    CrosscheckReport { outcomes }
}

fn check_entry(entry: &CatalogEntry) -> EntryOutcome {
    let mut outcome = EntryOutcome {
        name: entry.name.clone(),
        h0: None,
        expected_h0: entry.expected_h0.clone(),
        h0_matches: None,
        oracle_matches: None,
        error: None,
    };
    match build(&entry.model) {
        Ok(result) => {
            outcome.h0_matches = entry.expected_h0.as_ref().map(|e| e == &result.h0);
            outcome.oracle_matches = entry
                .oracle
                .polynomial(entry.invariants().n())
                .map(|oracle| poly_identity_equal(&result.p, &oracle));
            outcome.h0 = Some(result.h0);
        }
        Err(e) => outcome.error = Some(e.to_string()),
    }
    outcome
}
