use std::collections::BTreeMap;
use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::surface::Triple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Indeterminate,
}

/// Common wrapper of every command's output. Field order is the key order.
#[derive(Debug, Serialize)]
pub struct Envelope<P: Serialize> {
    pub command: &'static str,
    pub triple: Option<Triple>,
    pub payload: P,
    pub tolerances: BTreeMap<&'static str, f64>,
    pub status: Status,
}

/// `serde_json` formatter writing every float with 17 significant digits.
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits);
    value.serialize(&mut ser).expect("serializing plain data cannot fail");
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => format!("{f:.10e}"),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

fn is_record_list(items: &[Value]) -> bool {
    !items.is_empty() && items.iter().all(|v| v.as_object().is_some_and(|o| o.values().all(|x| !x.is_object())))
}

fn table(out: &mut String, indent: &str, rows: &[Vec<String>]) {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r.get(c).map_or(0, |s| s.chars().count())).max().unwrap_or(0))
        .collect();
    for row in rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(indent);
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
}

fn render(out: &mut String, indent: &str, value: &serde_json::Map<String, Value>) {
    let mut pairs = Vec::new();
    let mut nested = Vec::new();
    for (k, v) in value {
        match v {
            Value::Object(o) => nested.push((k, Some(o), None)),
            Value::Array(items) if is_record_list(items) => nested.push((k, None, Some(items))),
            Value::Array(items) => {
                let cells: Vec<String> = items
                    .iter()
                    .map(|x| match x {
                        Value::Array(inner) => format!("({})", inner.iter().map(scalar).collect::<Vec<_>>().join(", ")),
                        other => scalar(other),
                    })
                    .collect();
                pairs.push(vec![k.clone(), cells.join(", ")]);
            }
            other => pairs.push(vec![k.clone(), scalar(other)]),
        }
    }
    if !pairs.is_empty() {
        table(out, indent, &pairs);
    }
    let deeper = format!("{indent}  ");
    for (k, obj, list) in nested {
        out.push_str(&format!("{indent}{k}:\n"));
        if let Some(o) = obj {
            render(out, &deeper, o);
        }
        if let Some(items) = list {
            let header: Vec<String> = items[0].as_object().unwrap().keys().cloned().collect();
            let mut rows = vec![header.clone()];
            for item in items {
                let o = item.as_object().unwrap();
                rows.push(header.iter().map(|h| o.get(h).map_or(String::new(), scalar)).collect());
            }
            table(out, &deeper, &rows);
        }
    }
}

/// Aligned plain-text rendering: scalars as `key value` pairs, lists of
/// records as tables, nested records indented under their key.
pub fn to_text<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializing plain data cannot fail");
    let mut out = String::new();
    match &value {
        Value::Object(o) => render(&mut out, "", o),
        other => out.push_str(&scalar(other)),
    }
    out
}
