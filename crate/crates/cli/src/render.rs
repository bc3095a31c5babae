//! Human-readable summaries of reports.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Bool(b) => Some(if *b { "yes".into() } else { "no".into() }),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn section(out: &mut Vec<String>, prefix: &str, m: &serde_json::Map<String, Value>) {
    for (k, v) in m {
        let label = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        if let Some(s) = scalar(v) {
            out.push(format!("  {label}: {s}"));
        } else if k.ends_with("witness") {
            if let Some(kind) = v.get("kind").and_then(Value::as_str) {
                out.push(format!("  {label}: {kind}"));
            }
        } else if k == "sylow" || k == "primary" {
            if let Some(cs) = v.get("components").and_then(Value::as_array) {
                let parts: Vec<String> = cs
                    .iter()
                    .map(|c| format!("{}^{}", c["prime"], scalar(&c["order"]).unwrap_or_default()))
                    .collect();
                out.push(format!("  {label}: [{}]", parts.join(", ")));
            }
        } else if k == "verdict" || k == "structure" {
            if let Value::Object(inner) = v {
                section(out, &label, inner);
            }
        } else if let Value::Array(a) = v {
            out.push(format!("  {label}: {} item(s)", a.len()));
        }
    }
}

pub fn human(report: &Value) -> String {
    let cmd = &report["command"];
    let mut out = vec![format!(
        "{} {}",
        cmd["name"].as_str().unwrap_or("?"),
        cmd["file"].as_str().unwrap_or("")
    )];
    if let Some(e) = report.get("error") {
        out.push(format!("  error: {}", e["message"].as_str().unwrap_or("?")));
    }
    if let Some(Value::Object(m)) = report.get("result") {
        section(&mut out, "", m);
    }
    if let Some(Value::Array(b)) = report.get("budgets") {
        for x in b {
            out.push(format!("  budget: {}", x.as_str().unwrap_or("?")));
        }
    }
    out.join("\n")
}
