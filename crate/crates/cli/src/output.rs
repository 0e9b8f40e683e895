//! Rendering of command results as text, CSV or JSON.
//!
//! CSV columns and JSON keys are fixed per command. Exact values carry
//! `numerator`, `denominator` and `decimal`; estimates carry `mean`,
//! `stderr` and `n`.

use clap::ValueEnum;
use serde_json::{Map, Value};
use sortnet::exact::export::{decimal, rational_text, rational_to_f64, ExactRecord};
use sortnet::montecarlo::Estimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A command result: fixed columns plus a human-readable rendering.
pub struct Output {
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
    text: String,
    /// Render JSON as a single object instead of an array.
    single: bool,
}

impl Output {
    pub fn table(columns: &[&str], rows: Vec<Vec<Value>>, text: String) -> Self {
        Output {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            text,
            single: false,
        }
    }

    pub fn single(mut self) -> Self {
        self.single = true;
        self
    }

    /// Exact values; the text form is `p/q decimal` per record, prefixed by
    /// the parameters when there is more than one record.
    pub fn exact(records: Vec<ExactRecord>) -> Self {
        let with_params = records.len() > 1;
        let text = records
            .iter()
            .map(|r| {
                let value = format!(
                    "{} {}",
                    rational_text(&r.value),
                    decimal(rational_to_f64(&r.value))
                );
                if with_params {
                    let params: Vec<String> =
                        r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    format!("{} {value}", params.join(" "))
                } else {
                    value
                }
            })
            .collect::<Vec<_>>()
            .join("\n");
        let mut columns: Vec<String> = records
            .first()
            .map(|r| r.params.iter().map(|(k, _)| k.clone()).collect())
            .unwrap_or_default();
        columns.extend(["numerator", "denominator", "decimal"].map(String::from));
        let rows = records
            .iter()
            .map(|r| {
                let json = serde_json::to_value(r).expect("serializable");
                let mut row: Vec<Value> = r.params.iter().map(|(_, v)| Value::from(*v)).collect();
                row.extend([
                    json["numerator"].clone(),
                    json["denominator"].clone(),
                    json["decimal"].clone(),
                ]);
                row
            })
            .collect();
        Output {
            columns,
            rows,
            text,
            single: records.len() == 1,
        }
    }

    pub fn estimate(est: &Estimate) -> Self {
        Output::table(
            &["mean", "stderr", "n"],
            vec![vec![est.mean.into(), est.stderr.into(), est.count.into()]],
            format!(
                "{} ± {} (n = {})",
                decimal(est.mean),
                decimal(est.stderr),
                est.count
            ),
        )
        .single()
    }

    pub fn lines(column: &str, items: Vec<String>) -> Self {
        let text = items.join("\n");
        Output::table(
            &[column],
            items.into_iter().map(|s| vec![Value::from(s)]).collect(),
            text,
        )
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => match n.as_f64() {
                Some(x) if n.is_f64() => decimal(x),
                _ => n.to_string(),
            },
            other => other.to_string(),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(cell))
                .expect("writing to memory");
        }
        let bytes = w.into_inner().expect("writing to memory");
        String::from_utf8(bytes)
            .expect("utf8")
            .trim_end()
            .to_string()
    }

    fn json(&self) -> String {
        let objects: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().cloned())
                    .collect();
                Value::Object(map)
            })
            .collect();
        let value = match (self.single, objects.len()) {
            (true, 1) => objects.into_iter().next().expect("one row"),
            _ => Value::Array(objects),
        };
        serde_json::to_string_pretty(&value).expect("serializable")
    }
}
