use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::SweepRow;
use crate::eisenstein::Valuation;

pub const REPORT_FORMAT_VERSION: u64 = 1;

pub const CSV_HEADER: &str =
    "N,p,D,h,h_mod_p,log1_u,log1_pi2,criterion,eis_valuation,selmer_rank,selmer_kind,consistent";

pub(crate) fn valuation_string<S: Serializer>(v: &Valuation, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        [
            self.n.to_string(),
            self.p.to_string(),
            self.d.to_string(),
            self.h.to_string(),
            self.h_mod_p.to_string(),
            opt(self.log1_u),
            opt(self.log1_pi2),
            self.criterion.to_string(),
            self.eis_valuation.to_string(),
            opt(self.selmer.map(|s| s.value)),
            opt(self.selmer.map(|s| s.kind.as_str())),
            self.consistent.to_string(),
        ]
        .join(",")
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("rows serialize");
        let obj = v.as_object_mut().expect("object");
        obj.insert("selmer_rank".into(), json!(self.selmer.map(|s| s.value)));
        obj.insert(
            "selmer_kind".into(),
            json!(self.selmer.map(|s| s.kind.as_str())),
        );
        obj.insert("branch".into(), json!(self.branch()));
        v
    }
}

impl SweepReport {
    pub fn new(rows: Vec<SweepRow>) -> Self {
        let passed = rows.iter().filter(|r| r.consistent).count();
        let summary = SweepSummary {
            total: rows.len(),
            passed,
            failed: rows.len() - passed,
        };
        Self { rows, summary }
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| !r.consistent)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.csv_line());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "format_version": REPORT_FORMAT_VERSION,
            "rows": self.rows.iter().map(SweepRow::to_json).collect::<Vec<_>>(),
            "summary": self.summary,
        })
    }
}
