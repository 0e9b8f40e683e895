//! CSV and JSON rendering of exact results.
//!
//! CSV columns are the record's parameter names in order, then
//! `numerator`, `denominator`, `decimal`. JSON objects carry the same
//! fields: `{"params": {...}, "numerator": "...", "denominator": "...",
//! "decimal": ...}` with numerator and denominator as decimal strings so
//! arbitrarily large values survive.

use num_traits::ToPrimitive;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::Rational;

/// Renders `x` with 12 significant digits, dropping trailing zeros.
pub fn decimal(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let places = (11 - exp).max(0) as usize;
        let fixed = format!("{x:.places$}");
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_decimal(r: &Rational) -> String {
    decimal(rational_to_f64(r))
}

/// `p/q`, or just `p` when the denominator is 1.
pub fn rational_text(r: &Rational) -> String {
    r.to_string()
}

/// One exact value with the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRecord {
    pub params: Vec<(String, i64)>,
    pub value: Rational,
}

impl ExactRecord {
    pub fn new<'a>(params: impl IntoIterator<Item = (&'a str, i64)>, value: Rational) -> Self {
        ExactRecord {
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            value,
        }
    }
}

struct Params<'a>(&'a [(String, i64)]);

impl Serialize for Params<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for ExactRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ExactRecord", 4)?;
        s.serialize_field("params", &Params(&self.params))?;
        s.serialize_field("numerator", &self.value.numer().to_string())?;
        s.serialize_field("denominator", &self.value.denom().to_string())?;
        s.serialize_field("decimal", &rational_to_f64(&self.value))?;
        s.end()
    }
}

/// Writes `records` as CSV; the header comes from the first record.
pub fn write_csv<W: std::io::Write>(records: &[ExactRecord], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    if let Some(first) = records.first() {
        let mut header: Vec<&str> = first.params.iter().map(|(k, _)| k.as_str()).collect();
        header.extend(["numerator", "denominator", "decimal"]);
        writer.write_record(&header)?;
    }
    for r in records {
        let mut row: Vec<String> = r.params.iter().map(|(_, v)| v.to_string()).collect();
        row.push(r.value.numer().to_string());
        row.push(r.value.denom().to_string());
        row.push(rational_decimal(&r.value));
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn to_csv(records: &[ExactRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("utf8")
}

pub fn to_json(records: &[ExactRecord]) -> String {
    serde_json::to_string_pretty(records).expect("serializable")
}
