//! Tabular output as CSV or JSON with 17 significant digits.
//!
//! A command produces rows of named cells plus optional top-level fields.
//! CSV carries the scalar columns of the rows only; JSON carries
//! everything as `{<fields>, "rows": [...]}`.

use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Null,
    List(Vec<Value>),
    Object(Vec<(String, Value)>),
}

impl Value {
    fn is_scalar(&self) -> bool {
        !matches!(self, Value::List(_) | Value::Object(_))
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(i64::from(x))
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Self {
        x.map_or(Value::Null, Into::into)
    }
}

impl From<Vec<f64>> for Value {
    fn from(xs: Vec<f64>) -> Self {
        Value::List(xs.into_iter().map(Value::Num).collect())
    }
}

pub type Row = Vec<(String, Value)>;

/// Builds a row from `(name, value)` pairs.
#[macro_export]
macro_rules! row {
    ($($name:expr => $value:expr),* $(,)?) => {
        vec![$(($name.to_string(), $crate::output::Value::from($value))),*]
    };
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Output {
    pub fields: Row,
    pub rows: Vec<Row>,
}

impl Output {
    pub fn rows(rows: Vec<Row>) -> Self {
        Output {
            fields: Vec::new(),
            rows,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let Some(first) = self.rows.first() else {
            return String::new();
        };
        let columns: Vec<&str> = first
            .iter()
            .filter(|(_, v)| v.is_scalar())
            .map(|(k, _)| k.as_str())
            .collect();
        let mut out = columns
            .iter()
            .map(|c| csv_field(c))
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = columns
                .iter()
                .map(|c| {
                    row.iter()
                        .find(|(k, _)| k == c)
                        .map_or(String::new(), |(_, v)| csv_value(v))
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let mut all = self.fields.clone();
        all.push((
            "rows".into(),
            Value::List(self.rows.iter().cloned().map(Value::Object).collect()),
        ));
        let mut out = String::new();
        write_json(&mut out, &Value::Object(all));
        out.push('\n');
        out
    }
}

/// `d.dddddddddddddddde±x`; non-finite values have no JSON form.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::Num(x) => format_number(*x),
        Value::Int(i) => i.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Text(t) => csv_field(t),
        Value::Null => String::new(),
        Value::List(_) | Value::Object(_) => String::new(),
    }
}

fn write_json(out: &mut String, v: &Value) {
    match v {
        Value::Num(x) if x.is_finite() => out.push_str(&format_number(*x)),
        Value::Num(_) | Value::Null => out.push_str("null"),
        Value::Int(i) => {
            let _ = write!(out, "{i}");
        }
        Value::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Value::Text(t) => out.push_str(&serde_json::to_string(t).expect("strings serialize")),
        Value::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json(out, item);
            }
            out.push(']');
        }
        Value::Object(fields) => {
            out.push('{');
            for (i, (k, item)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).expect("strings serialize"));
                out.push(':');
                write_json(out, item);
            }
            out.push('}');
        }
    }
}
