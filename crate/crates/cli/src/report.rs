//! Rendering of reports as pretty JSON or as `path<TAB>value` lines.

use serde_json::Value;

use crate::commands::OutputFormat;

pub fn render(report: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Tsv => {
            let mut out = String::new();
            flatten(report, &mut String::new(), &mut out);
            out
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\t', "\\t").replace('\n', "\\n")
}

fn flatten(v: &Value, path: &mut String, out: &mut String) {
    let mut child = |key: &str, v: &Value, path: &mut String| {
        let len = path.len();
        if !path.is_empty() {
            path.push('.');
        }
        path.push_str(key);
        flatten(v, path, out);
        path.truncate(len);
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                child(&escape(k), x, path);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                child(&i.to_string(), x, path);
            }
        }
        Value::String(s) => out.push_str(&format!("{path}\t{}\n", escape(s))),
        other => out.push_str(&format!("{path}\t{other}\n")),
    }
}
