//! JSON records for exact values and CSV writers with metadata headers.

use std::io::{self, Write};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::numerics::rational::{to_f64, BigRational, PiSquareValue};
use crate::samplers::SpectrumSample;

/// Digits after the decimal point when rendering `a + b·π²`.
pub const PI_SQUARE_DIGITS: usize = 30;

/// An exact value: a rational, or `a + b·π²`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactValue {
    Rational(BigRational),
    PiSquare(PiSquareValue),
}

impl ExactValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Rational(r) => to_f64(r),
            ExactValue::PiSquare(p) => p.to_f64(),
        }
    }

    /// Shortest round-trip rendering of the nearest double.
    pub fn decimal(&self) -> String {
        self.to_f64().to_string()
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExactValue::Rational(r) => s.serialize_str(&r.to_string()),
            ExactValue::PiSquare(p) => {
                let mut st = s.serialize_struct("PiSquareValue", 3)?;
                st.serialize_field("a", &p.a.to_string())?;
                st.serialize_field("b", &p.b.to_string())?;
                st.serialize_field("decimal", &p.to_decimal_string(PI_SQUARE_DIGITS))?;
                st.end()
            }
        }
    }
}

/// One exact result, e.g.
/// `{"n":2,"k":3,"quantity":"trace_moment","q":2,"exact":"5/7","decimal":"0.7142857142857143","method":"w-matrix"}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<String>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub exact: ExactValue,
    pub decimal: String,
    pub method: String,
}

impl ExactRecord {
    pub fn new(n: usize, k: Option<usize>, quantity: &str, exact: ExactValue, method: &str) -> Self {
        let decimal = exact.decimal();
        Self {
            ensemble: None,
            n,
            k,
            quantity: quantity.to_string(),
            q: None,
            l: None,
            m: None,
            exact,
            decimal,
            method: method.to_string(),
        }
    }
}

/// Round-trip-safe rendering of a double (17 significant digits).
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Ordered `key: value` pairs written as `# key: value` header lines.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvMetadata {
    pub entries: Vec<(String, String)>,
}

impl CsvMetadata {
    /// Starts a header with the crate version.
    pub fn new() -> Self {
        Self::default().with("version", crate::VERSION)
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn write<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for (k, v) in &self.entries {
            writeln!(w, "# {k}: {v}")?;
        }
        Ok(())
    }
}

/// Writes a CSV table: header comment lines, a column-name row, then rows.
pub fn write_csv<W: Write, R: AsRef<[f64]>>(
    w: &mut W,
    meta: &CsvMetadata,
    columns: &[String],
    rows: impl IntoIterator<Item = R>,
) -> io::Result<()> {
    meta.write(w)?;
    writeln!(w, "{}", columns.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.as_ref().iter().map(|&x| format_f64(x)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

/// One row per spectrum, columns `lambda_1..lambda_N` in ascending order.
pub fn write_spectra_csv<W: Write>(w: &mut W, meta: &CsvMetadata, samples: &[SpectrumSample]) -> io::Result<()> {
    let n = samples.first().map_or(0, |s| s.len());
    let columns: Vec<String> = (1..=n).map(|i| format!("lambda_{i}")).collect();
    write_csv(w, meta, &columns, samples.iter().map(|s| s.values()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    #[test]
    fn rational_record_schema() {
        let mut r = ExactRecord::new(2, Some(3), "trace_moment", ExactValue::Rational(rat(5, 7)), "w-matrix");
        r.q = Some(2);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["k"], 3);
        assert_eq!(v["q"], 2);
        assert_eq!(v["exact"], "5/7");
        assert_eq!(v["decimal"], "0.7142857142857143");
        assert!(v.get("L").is_none());
    }

    #[test]
    fn pi_square_schema() {
        let p = PiSquareValue::new(rat(1, 2), rat(-1, 30));
        let v = serde_json::to_value(ExactValue::PiSquare(p)).unwrap();
        assert_eq!(v["a"], "1/2");
        assert_eq!(v["b"], "-1/30");
        let d = v["decimal"].as_str().unwrap();
        assert_eq!(d.split('.').nth(1).unwrap().len(), PI_SQUARE_DIGITS);
        assert!(d.starts_with("0.17101"));
    }

    #[test]
    fn csv_layout() {
        let s = vec![SpectrumSample::new(vec![0.25, 0.75]).unwrap()];
        let mut buf = Vec::new();
        write_spectra_csv(&mut buf, &CsvMetadata::new().with("ensemble", "hs"), &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# version: "));
        assert_eq!(lines[1], "# ensemble: hs");
        assert_eq!(lines[2], "lambda_1,lambda_2");
        let vals: Vec<f64> = lines[3].split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(vals, vec![0.25, 0.75]);
    }

    #[test]
    fn doubles_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt(), 1e-300, 123456.789] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
