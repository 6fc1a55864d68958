//! Rendering and atomic writes.

use std::io::Write;
use std::path::Path;

use consec_poset::{OutputFormat, Permutation};
use serde_json::Value;

/// What a command produced, before formatting.
pub enum Payload {
    /// Structured data; rendered according to `--format`.
    Data { value: Value, csv: Option<String> },
    /// Already-formatted bytes (DOT), written verbatim.
    Raw(String),
}

impl Payload {
    pub fn data(value: Value) -> Self {
        Payload::Data { value, csv: None }
    }

    pub fn with_csv(value: Value, csv: String) -> Self {
        Payload::Data {
            value,
            csv: Some(csv),
        }
    }
}

/// Rewrite comma-separated permutation strings in digit form.
fn compact_value(v: &mut Value) {
    match v {
        Value::String(s) if s.contains(',') => {
            if let Some(c) = s.parse::<Permutation>().ok().and_then(|p| p.to_compact()) {
                *s = c;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(compact_value),
        Value::Object(o) => o.values_mut().for_each(compact_value),
        _ => {}
    }
}

fn text_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// `key: value` lines; nested values are flattened with dotted keys.
fn to_text(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                to_text(x, &key, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                to_text(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(text_scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(" ")));
        }
        other => out.push_str(&format!("{prefix}: {}\n", text_scalar(other))),
    }
}

pub fn render(payload: Payload, format: OutputFormat, compact: bool) -> String {
    let (mut value, csv) = match payload {
        Payload::Raw(s) => return s,
        Payload::Data { value, csv } => (value, csv),
    };
    if compact {
        compact_value(&mut value);
    }
    match (format, csv) {
        (OutputFormat::Csv, Some(csv)) => csv,
        (OutputFormat::Text, _) => {
            let mut s = String::new();
            to_text(&value, "", &mut s);
            s
        }
        // JSON, and the fallback for commands without a tabular form
        _ => {
            let mut s = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
            s.push('\n');
            s
        }
    }
}

/// Write to `path` through a temporary file in the same directory, or to stdout.
pub fn emit(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn compacts_only_permutations() {
        let mut v =
            json!({"tau": "2,1,3", "label": "1-e", "ids": [1, 2], "big": "1,2,3,4,5,6,7,8,9,10"});
        compact_value(&mut v);
        assert_eq!(
            v,
            json!({"tau": "213", "label": "1-e", "ids": [1, 2], "big": "1,2,3,4,5,6,7,8,9,10"})
        );
    }

    #[test]
    fn text_layout() {
        let v = json!({"a": 1, "b": {"c": null}, "d": [1, 2]});
        let s = render(Payload::data(v), OutputFormat::Text, false);
        assert_eq!(s, "a: 1\nb.c: -\nd: [1 2]\n");
    }
}
