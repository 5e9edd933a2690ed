//! Verification and multiplicity report records shared by the library and the CLI.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::exact::{format_scalar, ExactScalar};

/// Failure witnesses kept per report item.
const MAX_WITNESSES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// Every exact check passed, but a documented convention mismatch is surfaced.
    Flagged,
    /// The identity was checked only on cases where both sides are trivially zero.
    Vacuous,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Flagged => "flagged",
            Status::Vacuous => "vacuous",
            Status::Fail => "fail",
        })
    }
}

/// A single case that did not behave as expected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub case: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one exact comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// Both sides vanish because the relevant component is absent.
    Vacuous,
    Fail(Witness),
}

impl Outcome {
    pub fn compare<T: PartialEq + fmt::Display>(case: impl FnOnce() -> String, expected: &T, actual: &T) -> Self {
        if expected == actual {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness {
                case: case(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            })
        }
    }

    pub fn check(case: impl FnOnce() -> String, ok: bool, detail: impl FnOnce() -> (String, String)) -> Self {
        if ok {
            Outcome::Pass
        } else {
            let (expected, actual) = detail();
            Outcome::Fail(Witness {
                case: case(),
                expected,
                actual,
            })
        }
    }
}

/// One identity checked over a family of cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportItem {
    pub identity: String,
    pub anchor: String,
    pub status: Status,
    pub checked: usize,
    pub passed: usize,
    pub vacuous: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

impl ReportItem {
    pub fn new(identity: impl Into<String>, anchor: impl Into<String>) -> Self {
        ReportItem {
            identity: identity.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            checked: 0,
            passed: 0,
            vacuous: 0,
            failed: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    pub fn record(&mut self, outcome: Outcome) {
        self.checked += 1;
        match outcome {
            Outcome::Pass => self.passed += 1,
            Outcome::Vacuous => self.vacuous += 1,
            Outcome::Fail(w) => {
                self.failed += 1;
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(w);
                }
            }
        }
        self.refresh();
    }

    pub fn extend(&mut self, outcomes: impl IntoIterator<Item = Outcome>) {
        for o in outcomes {
            self.record(o);
        }
    }

    pub fn with_outcomes(mut self, outcomes: impl IntoIterator<Item = Outcome>) -> Self {
        self.extend(outcomes);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn value(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.values.insert(key.into(), value.into());
        self
    }

    /// Marks the item as flagged unless it already failed.
    pub fn flag(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        if self.status != Status::Fail {
            self.status = Status::Flagged;
        }
        self
    }

    /// Adds the counts, witnesses, notes and values of another item with the same identity.
    pub fn absorb(&mut self, other: ReportItem) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.vacuous += other.vacuous;
        self.failed += other.failed;
        let room = MAX_WITNESSES.saturating_sub(self.witnesses.len());
        self.witnesses.extend(other.witnesses.into_iter().take(room));
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
        self.values.extend(other.values);
        if other.status == Status::Flagged && self.status != Status::Fail {
            self.status = Status::Flagged;
        }
        self.refresh();
    }

    fn refresh(&mut self) {
        self.status = if self.failed > 0 {
            Status::Fail
        } else if self.status == Status::Flagged {
            Status::Flagged
        } else if self.checked > 0 && self.vacuous == self.checked {
            Status::Vacuous
        } else {
            Status::Pass
        };
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Results of one verification suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub items: Vec<ReportItem>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, item: ReportItem) {
        self.items.push(item);
    }

    pub fn append(&mut self, other: VerificationReport) {
        self.items.extend(other.items);
    }

    /// Appends `other`, folding items whose identity is already present into the existing item.
    pub fn merge(&mut self, other: VerificationReport) {
        for item in other.items {
            match self.items.iter_mut().find(|i| i.identity == item.identity) {
                Some(existing) => existing.absorb(item),
                None => self.items.push(item),
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| !i.is_failure())
    }

    pub fn count(&self, status: Status) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    pub fn total_checks(&self) -> usize {
        self.items.iter().map(|i| i.checked).sum()
    }

    pub fn item(&self, identity: &str) -> Option<&ReportItem> {
        self.items.iter().find(|i| i.identity == identity)
    }
}

/// One named axis of a lattice window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Axis {
    pub name: String,
    pub min: i64,
    pub max: i64,
}

impl Axis {
    pub fn new(name: impl Into<String>, min: i64, max: i64) -> Self {
        Axis {
            name: name.into(),
            min,
            max,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub point: Vec<i64>,
    pub value: u64,
    pub chamber: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberVerdict {
    pub chamber: String,
    pub points: usize,
    pub constant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    /// Two points of the chamber with different values.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(Vec<i64>, Vec<i64>)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReportMetadata {
    pub anchor: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sign_convention_notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<usize>,
}

/// Per-point multiplicities over a window together with per-chamber constancy verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub window: Vec<Axis>,
    pub records: Vec<PointRecord>,
    pub verdicts: Vec<ChamberVerdict>,
    pub metadata: ReportMetadata,
}

impl MultiplicityReport {
    /// Builds verdicts from records; records are sorted by point first.
    pub fn from_records(window: Vec<Axis>, mut records: Vec<PointRecord>, metadata: ReportMetadata) -> Self {
        records.sort_by(|a, b| a.point.cmp(&b.point));
        let mut groups: BTreeMap<&str, Vec<&PointRecord>> = BTreeMap::new();
        for r in &records {
            groups.entry(r.chamber.as_str()).or_default().push(r);
        }
        let verdicts = groups
            .into_iter()
            .map(|(chamber, recs)| {
                let first = recs[0];
                let odd = recs.iter().find(|r| r.value != first.value);
                ChamberVerdict {
                    chamber: chamber.to_string(),
                    points: recs.len(),
                    constant: odd.is_none(),
                    value: odd.is_none().then_some(first.value),
                    witness: odd.map(|r| (first.point.clone(), r.point.clone())),
                }
            })
            .collect();
        MultiplicityReport {
            window,
            records,
            verdicts,
            metadata,
        }
    }

    pub fn violations(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.constant).count()
    }

    pub fn verdict(&self, chamber: &str) -> Option<&ChamberVerdict> {
        self.verdicts.iter().find(|v| v.chamber == chamber)
    }

    /// Chambers (with constant value) on which the multiplicity equals `value`.
    pub fn chambers_with_value(&self, value: u64) -> Vec<&str> {
        self.verdicts
            .iter()
            .filter(|v| v.value == Some(value))
            .map(|v| v.chamber.as_str())
            .collect()
    }
}

/// Serializes an exact scalar as `"p"` or `"p/q"`.
pub fn serialize_scalar<S: serde::Serializer>(x: &ExactScalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_scalar(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn item_status_tracks_outcomes() {
        let mut item = ReportItem::new("id", "anchor");
        item.record(Outcome::Vacuous);
        assert_eq!(item.status, Status::Vacuous);
        item.record(Outcome::Pass);
        assert_eq!(item.status, Status::Pass);
        let item = item.flag("sign");
        assert_eq!(item.status, Status::Flagged);
        let item = item.with_outcomes([Outcome::compare(|| "c".into(), &1, &2)]);
        assert_eq!(item.status, Status::Fail);
        assert_eq!(item.witnesses[0].actual, "2");
    }

    #[test]
    fn verdicts_find_witnesses() {
        let recs = vec![
            PointRecord { point: vec![2], value: 1, chamber: "a".into() },
            PointRecord { point: vec![1], value: 1, chamber: "a".into() },
            PointRecord { point: vec![3], value: 0, chamber: "a".into() },
            PointRecord { point: vec![4], value: 0, chamber: "b".into() },
        ];
        let r = MultiplicityReport::from_records(vec![Axis::new("x", 1, 4)], recs, ReportMetadata::default());
        assert_eq!(r.records[0].point, vec![1]);
        assert_eq!(r.violations(), 1);
        assert_eq!(r.verdict("a").unwrap().witness, Some((vec![1], vec![3])));
        assert_eq!(r.chambers_with_value(0), vec!["b"]);
    }
}
