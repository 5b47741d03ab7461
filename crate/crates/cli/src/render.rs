//! Text and JSON rendering of a report value.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            write_text(&mut out, value, 0);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("-".to_string()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => Some(
            items
                .iter()
                .filter_map(scalar)
                .collect::<Vec<_>>()
                .join(" "),
        ),
        _ => None,
    }
}

/// `key: value` lines; nested objects are indented, arrays of objects print
/// one `a=1 b=2` row per element.
fn write_text(out: &mut String, value: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    let Value::Object(map) = value else {
        out.push_str(&pad);
        out.push_str(&scalar(value).unwrap_or_default());
        out.push('\n');
        return;
    };
    for (key, v) in map {
        if let Some(s) = scalar(v) {
            out.push_str(&format!("{pad}{key}: {s}\n"));
            continue;
        }
        out.push_str(&format!("{pad}{key}:\n"));
        match v {
            Value::Array(items) => {
                for item in items {
                    match item {
                        Value::Object(row) if row.values().all(|c| scalar(c).is_some()) => {
                            let cells: Vec<String> = row
                                .iter()
                                .map(|(k, c)| {
                                    let cell = scalar(c).unwrap_or_default();
                                    if cell.contains(char::is_whitespace) {
                                        format!("{k}={cell:?}")
                                    } else {
                                        format!("{k}={cell}")
                                    }
                                })
                                .collect();
                            out.push_str(&format!("{pad}  {}\n", cells.join(" ")));
                        }
                        other => write_text(out, other, indent + 2),
                    }
                }
            }
            other => write_text(out, other, indent + 2),
        }
    }
}
