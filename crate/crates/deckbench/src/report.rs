//! JSON records and plain-text tables for command output.

use std::fmt::Write as _;

use deckbench_core::{BoundRow, BoundSpec, ExtremalRecord, FamilyInstance, Method, Verdict};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct VerdictJson {
    pub property: String,
    pub decision: String,
    pub method: &'static str,
    pub rule: Option<&'static str>,
    pub n: usize,
    pub subdeck_size: usize,
    pub witness_count: usize,
    pub witnesses: Vec<String>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            property: v.property.to_string(),
            decision: v.decision.to_string(),
            method: v.method.name(),
            rule: match v.method {
                Method::DirectRule(r) => Some(r.name()),
                Method::PreimageOracle => None,
            },
            n: v.n,
            subdeck_size: v.subdeck_size,
            witness_count: v.witness_count,
            witnesses: v.witnesses.iter().map(ToString::to_string).collect(),
        }
    }
}

/// One extremal record, optionally compared against a bound.
#[derive(Debug, Serialize)]
pub struct RecordJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<&'static str>,
    pub n: usize,
    pub classes: [&'static str; 2],
    pub bound: Option<usize>,
    pub max: usize,
    pub holds: Option<bool>,
    pub tight: Option<bool>,
    pub witnesses: Vec<[String; 2]>,
    pub witness_total: usize,
    pub pairs_examined: u64,
    pub elapsed_ms: Option<u64>,
}

impl RecordJson {
    pub fn from_record(r: &ExtremalRecord) -> Self {
        let (a, b) = r.relation.labels();
        RecordJson {
            name: None,
            status: None,
            n: r.n,
            classes: [a, b],
            bound: None,
            max: r.max_common,
            holds: None,
            tight: None,
            witnesses: r.witnesses.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect(),
            witness_total: r.witness_total,
            pairs_examined: r.pairs_examined,
            elapsed_ms: r.elapsed.map(|d| d.as_millis() as u64),
        }
    }

    pub fn from_row(spec: &BoundSpec, row: &BoundRow) -> Self {
        RecordJson {
            name: Some(spec.name),
            status: Some(row.status.name()),
            bound: Some(row.bound),
            holds: Some(row.holds()),
            tight: Some(row.tight()),
            ..RecordJson::from_record(&row.record)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FamilyJson {
    pub family: u8,
    pub k: usize,
    pub n: usize,
    pub expected_common: usize,
    pub measured_common: Option<usize>,
}

impl FamilyJson {
    pub fn new(f: &FamilyInstance, measured: Option<usize>) -> Self {
        FamilyJson { family: f.family, k: f.k, n: f.n, expected_common: f.expected_common, measured_common: measured }
    }
}

/// Serialises one JSON line.
pub fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialise");
    s.push('\n');
    s
}

fn or_dash<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

/// Fixed-width table of records.
pub fn table(rows: &[RecordJson]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>3}  {:<28}  {:>5}  {:>4}  {:>5}  {:>5}  {:>9}  {:>12}",
        "n", "classes", "bound", "max", "holds", "tight", "witnesses", "pairs"
    );
    for r in rows {
        let classes = format!("{} / {}", r.classes[0], r.classes[1]);
        let _ = writeln!(
            out,
            "{:>3}  {:<28}  {:>5}  {:>4}  {:>5}  {:>5}  {:>9}  {:>12}",
            r.n,
            classes,
            or_dash(r.bound),
            r.max,
            or_dash(r.holds),
            or_dash(r.tight),
            r.witness_total,
            r.pairs_examined
        );
    }
    out
}

/// Key/value rendering of a verdict.
pub fn verdict_text(v: &VerdictJson) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "property       {}", v.property);
    let _ = writeln!(out, "decision       {}", v.decision);
    let _ = writeln!(out, "method         {}{}", v.method, v.rule.map(|r| format!(" ({r})")).unwrap_or_default());
    let _ = writeln!(out, "n              {}", v.n);
    let _ = writeln!(out, "subdeck size   {}", v.subdeck_size);
    let _ = writeln!(out, "preimages      {}", v.witness_count);
    for w in &v.witnesses {
        let _ = writeln!(out, "  {w}");
    }
    out
}
