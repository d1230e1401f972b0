//! Bundled example documents with expected verdicts.

use serde::Serialize;

use crate::budget::Budget;
use crate::classify::classify;
use crate::document::{parse_document, IdealDocument};
use crate::error::Result;
use crate::simplicial::alexander_dual_ideal;

pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
}

macro_rules! entry {
    ($name:literal) => {
        CorpusEntry {
            name: $name,
            source: include_str!(concat!("../corpus/", $name)),
        }
    };
}

pub const CORPUS: &[CorpusEntry] = &[
    entry!("counterexample.ideal"),
    entry!("j.ideal"),
    entry!("j_dual.ideal"),
    entry!("embedded.ideal"),
    entry!("maximal.ideal"),
    entry!("terai.ideal"),
    entry!("terai_char2.ideal"),
    entry!("rp2.complex"),
    entry!("n11.ideal"),
];

impl CorpusEntry {
    pub fn document(&self) -> Result<IdealDocument> {
        parse_document(self.source)
    }
}

pub fn find(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS
        .iter()
        .find(|e| e.name == name || e.name.split('.').next() == Some(name))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Undecided where the entry allows it.
    Tolerated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub property: String,
    pub expected: String,
    pub actual: String,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryOutcome {
    pub name: String,
    pub label: Option<String>,
    pub checks: Vec<CheckOutcome>,
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn has_tolerated(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Tolerated)
    }
}

/// Classifies the document and compares against its expectations.
pub fn run_document(name: &str, doc: &IdealDocument, budget: &Budget) -> Result<EntryOutcome> {
    let ideal = doc.ideal()?;
    let report = classify(&ideal, budget)?;
    let mut checks = Vec::new();
    for (property, &expected) in &doc.expect {
        let actual = report.verdicts.get(property.as_str()).map(|d| d.verdict);
        let status = match actual.and_then(|v| v.as_bool()) {
            Some(b) if b == expected => CheckStatus::Pass,
            None if doc.extended && actual.is_some() => CheckStatus::Tolerated,
            _ => CheckStatus::Fail,
        };
        checks.push(CheckOutcome {
            property: property.clone(),
            expected: expected.to_string(),
            actual: actual.map_or("missing", |v| v.as_str()).to_string(),
            status,
        });
    }
    let mut compare = |property: &str, expected: &crate::monomial::MonomialIdeal, actual: crate::monomial::MonomialIdeal| {
        checks.push(CheckOutcome {
            property: property.to_string(),
            expected: expected.gens_string(),
            actual: actual.gens_string(),
            status: if &actual == expected { CheckStatus::Pass } else { CheckStatus::Fail },
        });
    };
    if let Some(d) = &doc.expect_dual {
        compare("dual", d, alexander_dual_ideal(&ideal)?);
    }
    if let Some(r) = &doc.expect_radical {
        compare("radical", r, ideal.radical());
    }
    Ok(EntryOutcome {
        name: name.to_string(),
        label: doc.label.clone(),
        checks,
    })
}

pub fn run_entry(entry: &CorpusEntry, budget: &Budget) -> Result<EntryOutcome> {
    run_document(entry.name, &entry.document()?, budget)
}
