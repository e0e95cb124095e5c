//! Runs the checks, pins each computed value against its expected rendering
//! and assembles a report.

mod checks;

use std::fmt::Write as _;
use std::str::FromStr;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Version of the structured report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A documented discrepancy: the computed value differs from the
    /// expected one in exactly the recorded way.
    Flagged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// The claim being checked.
    pub paper_location: String,
    pub computed: String,
    pub expected: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    /// Pass iff the renderings agree.
    pub fn compare(id: &str, location: &str, computed: String, expected: String) -> Self {
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        Self {
            id: id.into(),
            paper_location: location.into(),
            computed,
            expected,
            status,
            note: None,
        }
    }

    /// Like [`compare`](Self::compare), but a mismatch equal to `documented`
    /// is flagged with `note` instead of failing.
    pub fn with_discrepancy(
        id: &str,
        location: &str,
        computed: String,
        expected: String,
        documented: &str,
        note: &str,
    ) -> Self {
        let mut r = Self::compare(id, location, computed, expected);
        if r.status == Status::Fail && r.computed == documented {
            r.status = Status::Flagged;
            r.note = Some(note.into());
        }
        r
    }

    pub fn note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }

    fn errored(id: &str, location: &str, err: &Error) -> Self {
        Self {
            id: id.into(),
            paper_location: location.into(),
            computed: format!("error: {err}"),
            expected: String::new(),
            status: Status::Fail,
            note: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub schema: u32,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Sorts by id and recomputes the summary.
    pub fn new(mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        checks.dedup_by(|a, b| a.id == b.id);
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Flagged => summary.flagged += 1,
            }
        }
        Self {
            version: env!("CARGO_PKG_VERSION").into(),
            schema: SCHEMA_VERSION,
            checks,
            summary,
        }
    }

    /// Flagged records do not count as failures.
    pub fn is_success(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Selector {
    FixedPoints,
    Decomposition,
    OrbitSizes,
    EulerTuples,
    FixedCurves,
    Lattices,
    Obstruction,
    All,
}

impl Selector {
    pub const ALL: [Selector; 8] = [
        Selector::FixedPoints,
        Selector::Decomposition,
        Selector::OrbitSizes,
        Selector::EulerTuples,
        Selector::FixedCurves,
        Selector::Lattices,
        Selector::Obstruction,
        Selector::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Selector::FixedPoints => "prop1_4",
            Selector::Decomposition => "lemma1_6",
            Selector::OrbitSizes => "lemma1_8",
            Selector::EulerTuples => "prop2_2",
            Selector::FixedCurves => "prop3_2_arith",
            Selector::Lattices => "section3",
            Selector::Obstruction => "obstruction",
            Selector::All => "all",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Self::ALL.iter().map(|s| s.name()).collect()
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|sel| sel.name() == s)
            .ok_or_else(|| Error::UnknownSelector(s.into()))
    }
}

/// One registered check: the suite it belongs to and how to run it.
pub(crate) struct CheckDef {
    pub suite: Selector,
    pub id: &'static str,
    pub location: &'static str,
    pub run: fn(&CheckDef) -> Result<CheckRecord>,
}

/// Ids of the checks a selector runs, in report order.
pub fn check_ids(selector: Selector) -> Vec<&'static str> {
    let mut ids: Vec<_> = selected(selector).map(|d| d.id).collect();
    ids.sort_unstable();
    ids
}

fn selected(selector: Selector) -> impl Iterator<Item = &'static CheckDef> {
    checks::REGISTRY
        .iter()
        .filter(move |d| selector == Selector::All || d.suite == selector)
}

/// Run every check for `selector`, one thread per check.
pub fn run_suite(selector: Selector) -> VerificationReport {
    let records = thread::scope(|scope| {
        let handles: Vec<_> = selected(selector)
            .map(|def| {
                scope.spawn(move || {
                    (def.run)(def).unwrap_or_else(|e| CheckRecord::errored(def.id, def.location, &e))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    VerificationReport::new(records)
}

/// Parse a selector name and run it.
pub fn run_named(selector: &str) -> Result<VerificationReport> {
    Ok(run_suite(selector.parse()?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "structured" => Ok(Format::Structured),
            _ => Err(Error::InvalidParameters(format!("unknown format `{s}`"))),
        }
    }
}

pub fn render_report(report: &VerificationReport, format: Format) -> Vec<u8> {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => render_text(report).into_bytes(),
    }
}

pub fn parse_structured(bytes: &[u8]) -> Result<VerificationReport> {
    serde_json::from_slice(bytes).map_err(|e| Error::Fixture(e.to_string()))
}

fn render_text(report: &VerificationReport) -> String {
    let width = report.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let mut out = format!("verify {} (schema {})\n\n", report.version, report.schema);
    for c in &report.checks {
        let _ = writeln!(out, "{:<7} {:<width$}  {}", c.status.as_str(), c.id, c.paper_location);
        let _ = writeln!(out, "        {:<width$}  computed: {}", "", c.computed);
        if c.status != Status::Pass {
            let _ = writeln!(out, "        {:<width$}  expected: {}", "", c.expected);
        }
        if let Some(n) = &c.note {
            let _ = writeln!(out, "        {:<width$}  note: {n}", "");
        }
    }
    let s = report.summary;
    let _ = writeln!(out, "\n{} pass, {} fail, {} flagged", s.pass, s.fail, s.flagged);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let r = VerificationReport::new(Vec::new());
        assert_eq!(r.summary, Summary::default());
        assert!(r.is_success());
        let back = parse_structured(&render_report(&r, Format::Structured)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn selector_names_round_trip() {
        for s in Selector::ALL {
            assert_eq!(s.name().parse::<Selector>().unwrap(), s);
        }
        assert!(matches!("foo".parse::<Selector>(), Err(Error::UnknownSelector(_))));
        assert!(run_named("foo").is_err());
    }

    #[test]
    fn ids_are_unique_and_cover_every_suite() {
        let all = check_ids(Selector::All);
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(all, dedup);
        for s in &Selector::ALL[..7] {
            assert!(!check_ids(*s).is_empty(), "{}", s.name());
            assert!(check_ids(*s).iter().all(|id| id.starts_with(s.name())));
        }
    }

    #[test]
    fn discrepancy_status() {
        let r = |c: &str| CheckRecord::with_discrepancy("x", "y", c.into(), "{1}".into(), "{1, 2}", "extra 2");
        assert_eq!(r("{1}").status, Status::Pass);
        assert_eq!(r("{1, 2}").status, Status::Flagged);
        assert_eq!(r("{1, 3}").status, Status::Fail);
    }

    #[test]
    fn prop1_4_report() {
        let r = run_suite(Selector::FixedPoints);
        let mixed: Vec<_> = r.checks.iter().filter(|c| c.id.starts_with("prop1_4.mixed")).collect();
        assert_eq!(mixed.len(), 3);
        assert!(r.checks.iter().all(|c| c.status == Status::Pass), "{r:#?}");
        assert!(r.is_success());
    }
}
