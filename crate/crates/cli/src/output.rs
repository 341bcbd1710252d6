//! Output envelope (JSON) and flat numeric tables (CSV).

use fejer_schur::tolerances::ToleranceLedger;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<I, R> {
    pub command: String,
    pub inputs: I,
    pub results: R,
    pub tolerances: ToleranceLedger,
    pub version: String,
}

impl<I: Serialize, R: Serialize> Envelope<I, R> {
    pub fn new(command: &str, inputs: I, results: R) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            results,
            tolerances: ToleranceLedger::current(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("envelope is serializable");
        text.push('\n');
        text
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// A header row plus data rows, rendered as CSV.
#[derive(Debug, Default)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)
            .expect("writing to memory cannot fail");
        for row in &self.rows {
            w.write_record(row).expect("writing to memory cannot fail");
        }
        let bytes = w.into_inner().expect("flushing to memory cannot fail");
        String::from_utf8(bytes).expect("fields are UTF-8")
    }
}
