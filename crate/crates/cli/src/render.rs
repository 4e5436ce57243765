use serde_json::Value;

/// Plain text: one `key: value` line per top-level field, nested values in
/// compact JSON. Verdicts go first.
pub fn human(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut lines = Vec::new();
            if let Some(verdict) = map.get("verdict").and_then(Value::as_str) {
                lines.push(format!("verdict: {verdict}"));
            }
            for (k, x) in map {
                if k == "verdict" {
                    continue;
                }
                lines.push(format!("{k}: {}", scalar(x)));
            }
            lines.join("\n")
        }
        Value::Array(items) => items.iter().map(human).collect::<Vec<_>>().join("\n---\n"),
        other => scalar(other),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
