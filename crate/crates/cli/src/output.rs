use std::fmt::Write;

use detspace_core::Config;
use serde_json::{json, Map, Value};

use crate::Format;

pub struct Context {
    pub cfg: Config,
    pub seed_source: &'static str,
    pub format: Format,
}

pub struct Outcome {
    pub rendered: String,
    pub passed: bool,
}

/// Ordered key/value report plus an optional fixed-width table. Rendering
/// is single-threaded and depends only on the contents.
pub struct Report {
    command: &'static str,
    instance: Option<(u64, usize, usize)>,
    rows: Vec<(String, Value)>,
    table: Option<Table>,
    passed: bool,
}

pub struct Table {
    pub key: &'static str,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            instance: None,
            rows: Vec::new(),
            table: None,
            passed: true,
        }
    }

    pub fn instance(&mut self, q: u64, n: usize, d: usize) -> &mut Self {
        self.instance = Some((q, n, d));
        self
    }

    pub fn row(&mut self, key: &str, v: impl serde::Serialize) -> &mut Self {
        self.rows.push((key.to_string(), serde_json::to_value(v).expect("serializable")));
        self
    }

    pub fn table(&mut self, t: Table) -> &mut Self {
        self.table = Some(t);
        self
    }

    pub fn fail(&mut self) -> &mut Self {
        self.passed = false;
        self
    }

    pub fn finish(&self, ctx: &Context) -> Outcome {
        let rendered = match ctx.format {
            Format::Json => self.json(ctx),
            Format::Text => self.text(ctx),
        };
        Outcome {
            rendered,
            passed: self.passed,
        }
    }

    fn header(&self, ctx: &Context) -> Vec<(String, Value)> {
        let c = &ctx.cfg;
        let (q, n, d) = match self.instance {
            Some((q, n, d)) => (json!(q), json!(n), json!(d)),
            None => (Value::Null, Value::Null, Value::Null),
        };
        vec![
            ("tool".into(), json!("detspace")),
            ("version".into(), json!(env!("CARGO_PKG_VERSION"))),
            ("command".into(), json!(self.command)),
            ("seed".into(), json!(c.seed)),
            ("seed_source".into(), json!(ctx.seed_source)),
            (
                "caps".into(),
                json!({"affine": c.affine_cap, "projective": c.projective_cap, "group": c.group_budget}),
            ),
            ("q".into(), q),
            ("n".into(), n),
            ("d".into(), d),
        ]
    }

    fn json(&self, ctx: &Context) -> String {
        let mut top = Map::new();
        for (k, v) in self.header(ctx) {
            top.insert(k, v);
        }
        let mut result = Map::new();
        for (k, v) in &self.rows {
            result.insert(k.clone(), v.clone());
        }
        if let Some(t) = &self.table {
            result.insert(t.key.to_string(), t.json.clone());
        }
        top.insert("result".into(), Value::Object(result));
        top.insert("passed".into(), json!(self.passed));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
        s.push('\n');
        s
    }

    fn text(&self, ctx: &Context) -> String {
        let mut out = String::new();
        let c = &ctx.cfg;
        let _ = writeln!(out, "detspace {} {}", env!("CARGO_PKG_VERSION"), self.command);
        line(&mut out, "seed", &format!("{} ({})", c.seed, ctx.seed_source));
        line(
            &mut out,
            "caps",
            &format!("affine={} projective={} group={}", c.affine_cap, c.projective_cap, c.group_budget),
        );
        if let Some((q, n, d)) = self.instance {
            line(&mut out, "instance", &format!("q={q} n={n} d={d}"));
        }
        for (k, v) in &self.rows {
            line(&mut out, k, &render(v));
        }
        if let Some(t) = &self.table {
            out.push('\n');
            out.push_str(&render_table(&t.headers, &t.rows));
        }
        line(&mut out, "status", if self.passed { "ok" } else { "FAILED" });
        out
    }
}

const KEY_WIDTH: usize = 30;

fn line(out: &mut String, key: &str, value: &str) {
    let mut lines = value.lines();
    let _ = writeln!(out, "{key:<KEY_WIDTH$} {}", lines.next().unwrap_or(""));
    for l in lines {
        let _ = writeln!(out, "{:<KEY_WIDTH$} {l}", "");
    }
}

/// Strings verbatim, scalars plainly, matrices (lists of equal-length rows
/// of integers) as aligned grids, anything else as compact JSON.
fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(items) if items.iter().all(is_matrix) && !items.is_empty() => items
            .iter()
            .map(render_matrix)
            .collect::<Vec<_>>()
            .join("\n\n"),
        _ if is_matrix(v) => render_matrix(v),
        _ => v.to_string(),
    }
}

fn is_matrix(v: &Value) -> bool {
    v.as_array().is_some_and(|rows| {
        !rows.is_empty()
            && rows
                .iter()
                .all(|r| r.as_array().is_some_and(|r| !r.is_empty() && r.iter().all(Value::is_u64)))
    })
}

fn render_matrix(v: &Value) -> String {
    let rows: Vec<Vec<String>> = v
        .as_array()
        .expect("matrix")
        .iter()
        .map(|r| r.as_array().expect("row").iter().map(|x| x.to_string()).collect())
        .collect();
    let w = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| format!("[ {} ]", r.iter().map(|x| format!("{x:>w$}")).collect::<Vec<_>>().join(" ")))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let fmt_row = |cells: Vec<&str>| {
        let last = cells.len() - 1;
        let mut s = cells
            .iter()
            .enumerate()
            .map(|(i, c)| if i == last { c.to_string() } else { format!("{c:<w$}", w = widths[i]) })
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string();
        s.push('\n');
        s
    };
    let mut out = fmt_row(headers.to_vec());
    out.push_str(&fmt_row(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push_str(&fmt_row(r.iter().map(String::as_str).collect()));
    }
    out
}
