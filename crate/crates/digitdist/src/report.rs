//! Deterministic artifact emission: a tiny ordered JSON builder, CSV tables
//! and a minimal SVG polyline plot, plus the matching readers used to
//! round-trip every emitted file.
//!
//! Numbers follow one convention everywhere: floats carry 17 significant
//! digits, integers above 2^53 and exact rationals are decimal strings
//! (rationals as `"p/q"`), so nothing is lost in interchange. Keys keep
//! insertion order and all formatting is locale-free, which makes byte
//! identity across runs a property of the data alone.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;

use crate::{Error, Result};

/// An ordered JSON value.
#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Bool(bool),
    Float(f64),
    Int(i128),
    /// Big integers and exact rationals, rendered as JSON strings.
    Exact(String),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn big(x: &BigInt) -> Json {
        match x.to_i128() {
            Some(v) if v.abs() <= (1i128 << 53) => Json::Int(v),
            _ => Json::Exact(x.to_string()),
        }
    }

    pub fn rational(x: &BigRational) -> Json {
        if x.is_integer() {
            Json::big(x.numer())
        } else {
            Json::Exact(format!("{}/{}", x.numer(), x.denom()))
        }
    }

    pub fn obj(fields: Vec<(&str, Json)>) -> Json {
        Json::Obj(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Float(x) => out.push_str(&format_float(*x)),
            Json::Int(x) => {
                if x.abs() <= (1i128 << 53) {
                    out.push_str(&x.to_string());
                } else {
                    out.push('"');
                    out.push_str(&x.to_string());
                    out.push('"');
                }
            }
            Json::Exact(s) | Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    item.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    out.push('"');
                    out.push_str(k);
                    out.push_str("\": ");
                    v.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }
}

/// 17-significant-digit float rendering (round-trips exactly in f64).
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "\"nan\"".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "\"inf\"" } else { "\"-inf\"" }.to_string();
    }
    format!("{x:.16e}")
}

/// Assemble the standard self-describing document around a subcommand run.
pub fn artifact(subcommand: &str, seed: u64, inputs: Json, outputs: Json) -> Json {
    Json::obj(vec![
        ("tool", Json::Str("digitdist".to_string())),
        ("version", Json::Str(env!("CARGO_PKG_VERSION").to_string())),
        ("subcommand", Json::Str(subcommand.to_string())),
        ("seed", Json::Int(seed as i128)),
        ("inputs", inputs),
        ("outputs", outputs),
    ])
}

/// Parse an emitted JSON document and verify the standard envelope.
pub fn read_json_artifact(text: &str) -> Result<serde_json::Value> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::Invariant(format!("emitted JSON does not parse: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::invariant("artifact root must be an object"))?;
    for key in ["tool", "version", "subcommand", "seed", "inputs", "outputs"] {
        if !obj.contains_key(key) {
            return Err(Error::invariant(format!("artifact misses key {key}")));
        }
    }
    Ok(value)
}

/// A CSV table with a fixed header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row arity mismatch");
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Parse a CSV emitted by [`Csv::render`], checking rectangular shape.
pub fn read_csv(text: &str) -> Result<Csv> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::invariant("empty CSV"))?
        .split(',')
        .map(|s| s.to_string())
        .collect();
    let mut rows = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let row: Vec<String> = line.split(',').map(|s| s.to_string()).collect();
        if row.len() != header.len() {
            return Err(Error::invariant(format!(
                "CSV row arity {} does not match header {}",
                row.len(),
                header.len()
            )));
        }
        rows.push(row);
    }
    Ok(Csv { header, rows })
}

/// Minimal SVG polyline plot: axes, corner labels, one path. No styling
/// dependencies, suitable for the `(ε, log η)` sweep curves.
pub fn svg_line_plot(points: &[(f64, f64)], title: &str, x_label: &str, y_label: &str) -> String {
    let (w, h, margin) = (640.0, 480.0, 60.0);
    let (x_min, x_max) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |a, p| (a.0.min(p.0), a.1.max(p.0)));
    let (y_min, y_max) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |a, p| (a.0.min(p.1), a.1.max(p.1)));
    let sx = |x: f64| margin + (x - x_min) / (x_max - x_min).max(1e-300) * (w - 2.0 * margin);
    let sy = |y: f64| h - margin - (y - y_min) / (y_max - y_min).max(1e-300) * (h - 2.0 * margin);
    let path: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
        .collect();
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 480\">\n",
            "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n",
            "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{title}</text>\n",
            "<line x1=\"60\" y1=\"420\" x2=\"580\" y2=\"420\" stroke=\"black\"/>\n",
            "<line x1=\"60\" y1=\"60\" x2=\"60\" y2=\"420\" stroke=\"black\"/>\n",
            "<text x=\"320\" y=\"460\" text-anchor=\"middle\" font-size=\"12\">{xl}</text>\n",
            "<text x=\"16\" y=\"240\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 240)\">{yl}</text>\n",
            "<text x=\"60\" y=\"436\" font-size=\"10\">{x0:.4}</text>\n",
            "<text x=\"580\" y=\"436\" text-anchor=\"end\" font-size=\"10\">{x1:.4}</text>\n",
            "<text x=\"56\" y=\"420\" text-anchor=\"end\" font-size=\"10\">{y0:.4}</text>\n",
            "<text x=\"56\" y=\"64\" text-anchor=\"end\" font-size=\"10\">{y1:.4}</text>\n",
            "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"{pts}\"/>\n",
            "</svg>\n"
        ),
        title = title,
        xl = x_label,
        yl = y_label,
        x0 = x_min,
        x1 = x_max,
        y0 = y_min,
        y1 = y_max,
        pts = path.join(" ")
    )
}
