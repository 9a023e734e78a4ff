//! Versioned reports and their JSON and text renderings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
pub struct Echo {
    pub name: String,
    pub input: Option<String>,
    pub seed: u64,
    pub samples: usize,
    pub trials: u32,
    pub field: String,
    pub parallel: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct Step {
    pub name: String,
    pub result: Value,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct Status {
    pub exit_code: i32,
    pub outcome: String,
    pub message: String,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct Report {
    pub schema: u32,
    pub command: Echo,
    pub steps: Vec<Step>,
    pub assumptions: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn new(command: Echo) -> Self {
        Report {
            schema: SCHEMA,
            command,
            steps: Vec::new(),
            assumptions: Vec::new(),
            status: Status { exit_code: 0, outcome: "ok".into(), message: String::new() },
        }
    }

    pub fn push<T: Serialize>(&mut self, name: &str, result: &T) -> Result<(), CliError> {
        let result = serde_json::to_value(result).map_err(|e| CliError::Inconsistency(e.to_string()))?;
        self.steps.push(Step { name: name.into(), result });
        Ok(())
    }

    pub fn fail(&mut self, e: &CliError) {
        self.status = Status { exit_code: e.exit_code(), outcome: e.outcome().into(), message: e.to_string() };
    }

    pub fn to_json(&self) -> String {
        // Going through Value sorts every object's keys.
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.command;
        out.push_str(&format!("birat {} (schema {}, seed {}, field {})\n", c.name, self.schema, c.seed, c.field));
        for step in &self.steps {
            out.push_str(&format!("\n== {} ==\n", step.name));
            render(&step.result, 1, &mut out);
        }
        if !self.assumptions.is_empty() {
            out.push_str("\nassumptions:\n");
            for a in &self.assumptions {
                out.push_str(&format!("  - {a}\n"));
            }
        }
        out.push_str(&format!("\nstatus: {} (exit {})\n", self.status.outcome, self.status.exit_code));
        if !self.status.message.is_empty() {
            out.push_str(&self.status.message);
            out.push('\n');
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_))) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

const CELL: usize = 60;

fn clip(s: String) -> String {
    if s.chars().count() <= CELL {
        return s;
    }
    let head: String = s.chars().take(CELL - 3).collect();
    format!("{head}...")
}

/// Rows of flat objects sharing one key set, as a table.
fn table(rows: &[Value]) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let first = rows.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    let mut cells = Vec::new();
    for r in rows {
        let o = r.as_object()?;
        if o.len() != keys.len() {
            return None;
        }
        cells.push(keys.iter().map(|k| o.get(k).and_then(scalar).map(clip)).collect::<Option<Vec<_>>>()?);
    }
    Some((keys, cells))
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            if let Some((keys, cells)) = table(a) {
                let widths: Vec<usize> =
                    (0..keys.len()).map(|i| cells.iter().map(|r| r[i].len()).chain([keys[i].len()]).max().unwrap_or(0)).collect();
                let line = |row: &[String]| {
                    let cols: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    format!("{pad}{}\n", cols.join("  ").trim_end())
                };
                out.push_str(&line(&keys));
                out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
                for r in &cells {
                    out.push_str(&line(r));
                }
                return;
            }
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_report_round_trips() {
        let r = Report::new(Echo::default());
        let text = r.to_json();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["steps"], json!([]));
        assert_eq!(v["schema"], json!(1));
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn keys_are_sorted_and_tables_render() {
        let mut r = Report::new(Echo { name: "analyze".into(), ..Echo::default() });
        r.push("rows", &json!([{"point": "p_w", "type": "1/11(1,2,9)"}, {"point": "p_v", "type": "smooth"}])).unwrap();
        let text = r.to_json();
        let (a, s) = (text.find("\"assumptions\"").unwrap(), text.find("\"steps\"").unwrap());
        assert!(a < s);
        let t = r.to_text();
        assert!(t.contains("point  type"), "{t}");
        assert!(t.contains("p_w    1/11(1,2,9)"), "{t}");
    }

    #[test]
    fn failures_set_status() {
        let mut r = Report::new(Echo::default());
        r.fail(&CliError::Certificate("nondegeneracy".into()));
        assert_eq!(r.status.exit_code, 2);
        assert!(r.to_text().ends_with("member rejected: nondegeneracy\n"));
    }
}
