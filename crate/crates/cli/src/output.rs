//! Deterministic report emission: JSON with sorted keys, or CSV rows.

use serde::Serialize;
use serde_json::Value;

/// Compact JSON with object keys in sorted order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("reports serialize");
    serde_json::to_string(&v).expect("values serialize")
}

pub struct Csv {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: &[&'static str]) -> Self {
        Csv { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        let row: Vec<String> = cells.into_iter().collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}
