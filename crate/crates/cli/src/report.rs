//! The analysis report model and its table, CSV, and JSON emitters.
//!
//! A report is a deterministic function of the group and the requested
//! stats; timings are the only fields that vary between runs.  Stats that
//! were not requested are omitted from JSON and shown as `-` in the table
//! and CSV; stats whose search was capped are reported as `incomplete`
//! rather than guessed.

use serde::{Serialize, Serializer};

use geodav::{Automorphisms, LevelSets};

/// A single computed stat: either an exact value or an explicit marker
/// that the search stopped before settling it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatValue {
    Complete(usize),
    Incomplete,
}

impl Serialize for StatValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            StatValue::Complete(v) => serializer.serialize_u64(*v as u64),
            StatValue::Incomplete => serializer.serialize_str("incomplete"),
        }
    }
}

/// The five stats, each present only when requested.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct StatReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<StatValue>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub big_d: Option<StatValue>,
    #[serde(rename = "GD", skip_serializing_if = "Option::is_none")]
    pub gd: Option<StatValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dcd_star: Option<StatValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ddiam: Option<StatValue>,
}

/// Per-length counts for one enumeration: canonical representatives and
/// the full orbit size they stand for.
#[derive(Serialize)]
pub struct LevelCount {
    pub len: usize,
    pub reps: usize,
    pub orbit: usize,
}

#[derive(Default, Serialize)]
pub struct LevelCounts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<LevelCount>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geodesic: Option<Vec<LevelCount>>,
}

/// Wall-clock seconds spent on each requested stat.
#[derive(Default, Serialize)]
pub struct Timings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub big_d: Option<f64>,
    #[serde(rename = "GD", skip_serializing_if = "Option::is_none")]
    pub gd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dcd_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ddiam: Option<f64>,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub group_spec: String,
    pub order: usize,
    pub fingerprint: String,
    pub stats: StatReport,
    pub level_counts: LevelCounts,
    pub timings: Timings,
    pub engine_version: String,
}

impl AnalysisReport {
    pub fn any_incomplete(&self) -> bool {
        [
            self.stats.d,
            self.stats.big_d,
            self.stats.gd,
            self.stats.dcd_star,
            self.stats.ddiam,
        ]
        .into_iter()
        .flatten()
        .any(|v| v == StatValue::Incomplete)
    }
}

pub fn level_counts(sets: &LevelSets, aut: &Automorphisms) -> Vec<LevelCount> {
    sets.levels()
        .map(|(len, level)| LevelCount {
            len,
            reps: level.rep_count(),
            orbit: level.orbit_count(aut),
        })
        .collect()
}

const HEADERS: [&str; 7] = ["group", "order", "dcd*", "d", "GD", "D", "ddiam"];

fn cell(v: Option<StatValue>) -> String {
    match v {
        None => "-".to_string(),
        Some(StatValue::Complete(x)) => x.to_string(),
        Some(StatValue::Incomplete) => "incomplete".to_string(),
    }
}

fn row_cells(r: &AnalysisReport) -> [String; 7] {
    [
        r.group_spec.clone(),
        r.order.to_string(),
        cell(r.stats.dcd_star),
        cell(r.stats.d),
        cell(r.stats.gd),
        cell(r.stats.big_d),
        cell(r.stats.ddiam),
    ]
}

pub fn emit_table(reports: &[AnalysisReport]) -> String {
    let rows: Vec<[String; 7]> = reports.iter().map(row_cells).collect();
    let mut widths: Vec<usize> = HEADERS.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let fmt_row = |cells: &[String; 7]| -> String {
        let mut parts = Vec::with_capacity(cells.len());
        for (i, c) in cells.iter().enumerate() {
            if i == 0 {
                parts.push(format!("{c:<width$}", width = widths[0]));
            } else {
                parts.push(format!("{c:>width$}", width = widths[i]));
            }
        }
        parts.join("  ").trim_end().to_string()
    };
    let header = HEADERS.map(str::to_string);
    let mut lines = vec![fmt_row(&header)];
    lines.extend(rows.iter().map(fmt_row));
    lines.join("\n")
}

pub fn emit_csv(reports: &[AnalysisReport]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(HEADERS).expect("in-memory write");
    for r in reports {
        writer.write_record(row_cells(r)).expect("in-memory write");
    }
    let bytes = writer.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("csv output is utf-8").trim_end().to_string()
}

pub fn emit_json(reports: &[AnalysisReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}
