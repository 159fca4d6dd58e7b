//! Number formatting and the CSV curve format.
//!
//! Every real is printed with nine decimals. `{:.9}` rounds the exact binary
//! value, so ties (which only occur for dyadic inputs) go to the even digit.

use serde::Serialize;

use crate::CliError;

pub fn num(x: f64) -> String {
    let s = format!("{x:.9}");
    if s == "-0.000000000" {
        "0.000000000".to_owned()
    } else {
        s
    }
}

/// `x` rounded to the nine printed decimals, for JSON payloads.
pub fn round9(x: f64) -> f64 {
    num(x).parse().expect("formatted float parses")
}

/// One parsed line of a curve CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveLine {
    pub p: f64,
    pub value: f64,
    pub witness: String,
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("CSV of UTF-8 fields")
}

/// `p,value,witness` with LF line endings.
pub fn curve_csv(rows: &[CurveLine]) -> String {
    let mut w = writer();
    w.write_record(["p", "value", "witness"]).expect("in-memory writer");
    for r in rows {
        w.write_record([num(r.p), num(r.value), r.witness.clone()]).expect("in-memory writer");
    }
    finish(w)
}

/// Inverse of [`curve_csv`].
pub fn parse_curve_csv(text: &str) -> Result<Vec<CurveLine>, CliError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| CliError::Usage(format!("bad curve CSV: {e}")))?;
    if headers != vec!["p", "value", "witness"] {
        return Err(CliError::Usage("curve CSV must have header p,value,witness".into()));
    }
    reader
        .records()
        .map(|rec| {
            let rec = rec.map_err(|e| CliError::Usage(format!("bad curve CSV: {e}")))?;
            let real = |i: usize| rec[i].parse::<f64>().map_err(|_| CliError::Usage(format!("bad number `{}` in curve CSV", &rec[i])));
            Ok(CurveLine { p: real(0)?, value: real(1)?, witness: rec[2].to_owned() })
        })
        .collect()
}

/// `key,value` records.
pub fn key_value_csv(pairs: &[(&str, String)]) -> String {
    let mut w = writer();
    w.write_record(["key", "value"]).expect("in-memory writer");
    for (k, v) in pairs {
        w.write_record([*k, v.as_str()]).expect("in-memory writer");
    }
    finish(w)
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable payload");
    s.push('\n');
    s
}
