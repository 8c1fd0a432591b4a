use serde_json::Value;

use crate::cache::to_json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Ascii,
}

/// A rectangular report: one header row and string cells.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn csv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = line.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn ascii(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|k| {
                std::iter::once(&self.header)
                    .chain(&self.rows)
                    .map(|r| r.get(k).map_or(0, |c| c.chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            let mut s = padded.join("  ").trim_end().to_string();
            s.push('\n');
            s
        };
        let mut out = line(&self.header);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&line(&rule));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// Compact text for a JSON value: strings unquoted, everything else as JSON.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Top-level fields as `key, value` rows; nested tables are kept as JSON.
fn key_values(result: &Value) -> Table {
    let rows = match result {
        Value::Object(map) => map.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect(),
        other => vec![vec!["value".into(), cell(other)]],
    };
    Table {
        header: vec!["key".into(), "value".into()],
        rows,
    }
}

/// Transition matrices render as a grid with Verma labels down the side.
fn matrix_table(result: &Value) -> Option<Table> {
    let labels: Vec<String> = result.get("labels")?.as_array()?.iter().map(cell).collect();
    let matrix = result.get("matrix")?.as_array()?;
    let mut header = vec![String::new()];
    header.extend(labels.iter().cloned());
    let rows = matrix
        .iter()
        .zip(&labels)
        .map(|(row, label)| {
            let mut cells = vec![label.clone()];
            cells.extend(row.as_array().into_iter().flatten().map(cell));
            cells
        })
        .collect();
    Some(Table { header, rows })
}

pub fn render(result: &Value, format: Format) -> String {
    match format {
        Format::Json => to_json(result),
        Format::Csv => matrix_table(result).unwrap_or_else(|| key_values(result)).csv(),
        Format::Ascii => {
            if let Some(t) = result.pointer("/resolution/table").and_then(Value::as_str) {
                let mut head = key_values(&strip(result, "resolution")).ascii();
                head.push('\n');
                head.push_str(t);
                return head;
            }
            match matrix_table(result) {
                Some(t) => t.ascii(),
                None => key_values(result).ascii(),
            }
        }
    }
}

fn strip(v: &Value, key: &str) -> Value {
    let mut v = v.clone();
    if let Some(map) = v.as_object_mut() {
        map.remove(key);
    }
    v
}
