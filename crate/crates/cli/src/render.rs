//! The one place output is formatted. JSON is the data; tables are derived from it.

use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&path, x, rows);
            }
        }
        Value::Array(items) if !items.iter().all(is_scalar) && !items.is_empty() => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        other => rows.push((prefix.to_string(), inline(other))),
    }
}

/// One record: a single JSON line, or an aligned two-column table.
pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{v}\n"),
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            rows.iter()
                .map(|(k, x)| {
                    let pad = width - k.chars().count();
                    format!("{k}{}  {x}\n", " ".repeat(pad))
                })
                .collect()
        }
    }
}

/// A stream of records. Tables separate records with a blank line.
pub fn render_all(values: &[Value], format: Format) -> String {
    let parts: Vec<String> = values.iter().map(|v| render(v, format)).collect();
    match format {
        Format::Json => parts.concat(),
        Format::Table => parts.join("\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tables_flatten_nested_values() {
        let v = json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": null}]});
        assert_eq!(render(&v, Format::Table), "a       1\nb.c     [1,2]\nd[0].e  -\n");
        assert_eq!(render(&v, Format::Json), "{\"a\":1,\"b\":{\"c\":[1,2]},\"d\":[{\"e\":null}]}\n");
    }
}
