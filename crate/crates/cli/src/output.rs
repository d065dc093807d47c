use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use mubfunc_core::{ApproxComplex, ComplexRadical, RadicalValue};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Twelve significant digits, without trailing zeros or negative zero.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if rounded.abs() < 1e-6 || rounded.abs() >= 1e15 {
        format!("{rounded:e}")
    } else {
        rounded.to_string()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FloatPair {
    pub re: f64,
    pub im: f64,
}

/// One evaluated value.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub n: u64,
    pub exact: String,
    pub json: Value,
    pub float: FloatPair,
}

impl OutputRecord {
    pub fn integer(n: u64, v: i64) -> Self {
        Self {
            n,
            exact: v.to_string(),
            json: Value::from(v),
            float: FloatPair {
                re: v as f64,
                im: 0.0,
            },
        }
    }

    pub fn radical(n: u64, v: &RadicalValue) -> Self {
        Self::complex(n, &v.clone().into())
    }

    pub fn complex(n: u64, v: &ComplexRadical) -> Self {
        let z: ApproxComplex = v.approx();
        let json = if v.is_real() {
            serde_json::to_value(&v.re)
        } else {
            serde_json::to_value(v)
        }
        .unwrap_or(Value::Null);
        Self {
            n,
            exact: v.to_string(),
            json,
            float: FloatPair { re: z.re, im: z.im },
        }
    }

    fn float_text(&self) -> String {
        if self.float.im == 0.0 {
            fmt_float(self.float.re)
        } else {
            let sign = if self.float.im < 0.0 { '-' } else { '+' };
            format!(
                "{} {sign} {}i",
                fmt_float(self.float.re),
                fmt_float(self.float.im.abs())
            )
        }
    }

    fn json_value(&self) -> Value {
        serde_json::json!({
            "n": self.n,
            "exact": self.exact,
            "json": self.json,
            "float": {"re": fmt_float(self.float.re).parse::<f64>().unwrap_or(0.0),
                      "im": fmt_float(self.float.im).parse::<f64>().unwrap_or(0.0)},
        })
    }
}

pub fn write_record(out: &mut impl Write, rec: &OutputRecord, format: Format) -> Result<()> {
    write_records(out, std::slice::from_ref(rec), format, false)
}

/// Renders everything into memory first so that nothing is written when a
/// later step fails.
pub fn write_records(
    out: &mut impl Write,
    recs: &[OutputRecord],
    format: Format,
    table: bool,
) -> Result<()> {
    let mut buf = Vec::new();
    match format {
        Format::Text => {
            for r in recs {
                if table {
                    writeln!(buf, "{}\t{}\t≈ {}", r.n, r.exact, r.float_text())?;
                } else {
                    writeln!(buf, "{}  (≈ {})", r.exact, r.float_text())?;
                }
            }
        }
        Format::Json => {
            let v = if table || recs.len() != 1 {
                Value::Array(recs.iter().map(OutputRecord::json_value).collect())
            } else {
                recs[0].json_value()
            };
            serde_json::to_writer_pretty(&mut buf, &v)?;
            writeln!(buf)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(["n", "exact", "float_re", "float_im"])?;
            for r in recs {
                w.write_record([
                    r.n.to_string(),
                    r.exact.clone(),
                    fmt_float(r.float.re),
                    fmt_float(r.float.im),
                ])?;
            }
            w.flush()?;
        }
    }
    out.write_all(&buf)?;
    Ok(())
}
