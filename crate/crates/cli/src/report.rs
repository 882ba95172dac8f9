//! Report tree and its two renderings.
//!
//! The structured form is an indented `key: value` document with `- ` list
//! items, versioned by a top-level `schema: 1`. Floats use 17 significant
//! digits there so matrices re-parse exactly.

use std::fmt::Write;

use perron_roots::matcore::format_entry;
use perron_roots::{Complex64, RealMatrix};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone)]
pub enum Value {
    Str(String),
    Int(u128),
    Num(f64),
    Bool(bool),
    Complex(Complex64),
    Map(Vec<(String, Value)>),
    List(Vec<Value>),
    Matrix(RealMatrix),
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex(z)
    }
}

impl From<RealMatrix> for Value {
    fn from(m: RealMatrix) -> Self {
        Value::Matrix(m)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(x: $t) -> Self {
                Value::Int(x as u128)
            }
        }
    )*};
}
from_int!(u8, u32, u64, u128, usize);

/// Ordered key-value map under construction.
#[derive(Debug, Default, Clone)]
pub struct Map(Vec<(String, Value)>);

impl Map {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.put(key, value);
        self
    }
}

impl From<Map> for Value {
    fn from(m: Map) -> Self {
        Value::Map(m.0)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Str("none".into()), Into::into)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Text,
    Structured,
}

/// Renders a top-level report.
pub fn render(command: &str, body: Map, style: Style) -> String {
    let mut root = Map::new();
    if style == Style::Structured {
        root.put("schema", SCHEMA);
    }
    root.put("command", command);
    root.0.extend(body.0);
    let mut out = String::new();
    write_entries(&mut out, &root.0, 0, style);
    out
}

fn scalar(v: &Value, style: Style) -> Option<String> {
    Some(match v {
        Value::Str(s) if style == Style::Structured && needs_quotes(s) => format!("{s:?}"),
        Value::Str(s) => s.clone(),
        Value::Int(i) => i.to_string(),
        Value::Num(x) => number(*x, style),
        Value::Bool(b) => b.to_string(),
        Value::Complex(z) => complex(*z, style),
        _ => return None,
    })
}

fn needs_quotes(s: &str) -> bool {
    s.is_empty() || s.contains([':', '#', '"', '[', ']', ',', '(', ')']) || s.starts_with(['-', ' '])
}

fn number(x: f64, style: Style) -> String {
    match style {
        Style::Structured => format_entry(x),
        Style::Text => {
            if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e9) {
                format!("{x:.3e}")
            } else {
                let s = format!("{x:.6}");
                let s = s.trim_end_matches('0').trim_end_matches('.');
                if s == "-0" {
                    "0".into()
                } else {
                    s.into()
                }
            }
        }
    }
}

fn complex(z: Complex64, style: Style) -> String {
    if z.im == 0.0 {
        return number(z.re, style);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", number(z.re, style), number(z.im.abs(), style))
}

fn pad(out: &mut String, depth: usize) {
    out.extend(std::iter::repeat_n("  ", depth));
}

fn flow(items: &[Value], style: Style) -> Option<String> {
    let parts: Option<Vec<String>> = items.iter().map(|v| scalar(v, style)).collect();
    parts.map(|p| format!("[{}]", p.join(", ")))
}

fn write_entries(out: &mut String, entries: &[(String, Value)], depth: usize, style: Style) {
    for (key, value) in entries {
        pad(out, depth);
        let inline = match value {
            Value::List(items) => flow(items, style),
            v => scalar(v, style),
        };
        match inline {
            Some(s) => {
                let _ = writeln!(out, "{key}: {s}");
            }
            None => {
                let _ = writeln!(out, "{key}:");
                write_nested(out, value, depth + 1, style);
            }
        }
    }
}

fn write_nested(out: &mut String, value: &Value, depth: usize, style: Style) {
    match value {
        Value::Map(entries) => write_entries(out, entries, depth, style),
        Value::List(items) => {
            for item in items {
                if let Some(s) = scalar(item, style) {
                    pad(out, depth);
                    let _ = writeln!(out, "- {s}");
                    continue;
                }
                // first line of the item shares the `- ` marker
                let mut inner = String::new();
                write_nested(&mut inner, item, depth + 1, style);
                pad(out, depth);
                out.push_str("- ");
                out.push_str(&inner[2 * (depth + 1)..]);
            }
        }
        Value::Matrix(m) => write_matrix(out, m, depth, style),
        _ => unreachable!("scalars are written inline"),
    }
}

/// Four-decimal display block followed by full-precision rows.
fn write_matrix(out: &mut String, m: &RealMatrix, depth: usize, style: Style) {
    let width = (0..m.rows())
        .flat_map(|i| m.row(i).iter().map(|x| format!("{x:.4}").len()))
        .max()
        .unwrap_or(0);
    pad(out, depth);
    let _ = writeln!(out, "rows: {}", m.rows());
    pad(out, depth);
    let _ = writeln!(out, "cols: {}", m.cols());
    pad(out, depth);
    out.push_str("display:\n");
    for i in 0..m.rows() {
        pad(out, depth + 1);
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{x:>width$.4}")).collect();
        let _ = writeln!(out, "- {}", row.join(" "));
    }
    pad(out, depth);
    out.push_str("data:\n");
    for i in 0..m.rows() {
        pad(out, depth + 1);
        let row: Vec<String> = m.row(i).iter().map(|&x| number(x, Style::Structured)).collect();
        let _ = match style {
            Style::Structured => writeln!(out, "- [{}]", row.join(", ")),
            Style::Text => writeln!(out, "- {}", row.join(" ")),
        };
    }
}
