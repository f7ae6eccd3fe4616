//! Table assembly and rendering.
//!
//! Every subcommand produces one [`Table`]: a config echo, a list of
//! `key: value` summary entries, and uniform rows under named columns.
//! The CSV form puts the echo and the summary in `#`-prefixed comment
//! lines so the data block stays readable by any plotting tool; the JSON
//! form nests everything in one object. Rendering is deterministic: cells
//! are `serde_json` values, and their textual form depends only on the
//! value (shortest round-trip form for floats).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::args::RunConfig;

/// One subcommand's output: summary entries plus uniform rows.
#[derive(Clone, Debug)]
pub struct Table {
    /// Subcommand path, e.g. `construct em`.
    pub title: String,
    /// Ordered `key: value` entries rendered before the rows.
    pub summary: Vec<(String, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(title: &str, columns: Vec<&'static str>) -> Self {
        Table {
            title: title.to_string(),
            summary: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn note(&mut self, key: &str, value: Value) {
        self.summary.push((key.to_string(), value));
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

// Cell constructors. Counters and flags stay native JSON values; anything
// of unbounded size (digits, sums, exact rationals) becomes a decimal
// string so no reader silently rounds it.

pub fn cell_u64(v: u64) -> Value {
    Value::from(v)
}

/// Non-finite floats render as `null` (empty CSV cell).
pub fn cell_f64(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn cell_bool(v: bool) -> Value {
    Value::Bool(v)
}

pub fn cell_str(v: impl Into<String>) -> Value {
    Value::String(v.into())
}

pub fn cell_biguint(v: &BigUint) -> Value {
    Value::String(v.to_string())
}

pub fn cell_bigint(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

/// Canonical exact form: `"3"` or `"p/q"`.
pub fn cell_rational(v: &BigRational) -> Value {
    Value::String(cfdim_core::numerics::format_rational(v))
}

/// Nearest double of an exact rational, for plottable columns.
pub fn rational_f64(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// A cell's text. Strings are written raw, numbers and booleans use their
/// canonical JSON form, and null is the empty cell. With `strict` set
/// (data rows, not `#` comment lines) strings must be comma-free; digit
/// lists use `;` separators.
fn csv_cell(value: &Value, strict: bool) -> String {
    match value {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => {
            debug_assert!(
                !strict || (!s.contains(',') && !s.contains('\n')),
                "CSV cell {s:?} needs escaping"
            );
            s.clone()
        }
        other => other.to_string(),
    }
}

/// CSV: `#` comment block (tool line, config echo, summary), then a header
/// row, then one line per data row.
pub fn render_csv(config: &RunConfig, table: &Table) -> String {
    let mut out = String::new();
    out.push_str(&format!("# cfdim {}\n", table.title));
    let echo = serde_json::to_string(config).expect("config serializes");
    out.push_str(&format!("# config: {echo}\n"));
    for (key, value) in &table.summary {
        out.push_str(&format!("# {key}: {}\n", csv_cell(value, false)));
    }
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| csv_cell(v, true)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// JSON: one object holding the full config and the table.
pub fn render_json(config: &RunConfig, table: &Table) -> String {
    let summary: serde_json::Map<String, Value> = table
        .summary
        .iter()
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let body = serde_json::json!({
        "tool": "cfdim",
        "subcommand": table.title,
        "config": config,
        "summary": summary,
        "columns": table.columns,
        "rows": table.rows,
    });
    let mut text = serde_json::to_string_pretty(&body).expect("table serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{Command, ExpandArgs, FormatArg, Rat};
    use std::str::FromStr;

    fn sample_config() -> RunConfig {
        RunConfig {
            command: Command::Expand(ExpandArgs {
                x: Rat::from_str("2/5").unwrap(),
                depth: 5,
            }),
            format: FormatArg::Csv,
            out: None,
        }
    }

    #[test]
    fn csv_layout_is_comments_header_rows() {
        let mut table = Table::new("expand", vec!["k", "a_k"]);
        table.note("terminated", cell_bool(true));
        table.push_row(vec![cell_u64(1), cell_str("2")]);
        table.push_row(vec![cell_u64(2), cell_str("2")]);
        let text = render_csv(&sample_config(), &table);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# cfdim expand");
        assert!(lines[1].starts_with("# config: {\"command\":{\"name\":\"expand\""));
        assert_eq!(lines[2], "# terminated: true");
        assert_eq!(lines[3], "k,a_k");
        assert_eq!(lines[4], "1,2");
        assert_eq!(lines[5], "2,2");
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn json_layout_nests_config_and_rows() {
        let mut table = Table::new("expand", vec!["k", "a_k"]);
        table.note("digits", cell_u64(2));
        table.push_row(vec![cell_u64(1), cell_str("2")]);
        let text = render_json(&sample_config(), &table);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["tool"], "cfdim");
        assert_eq!(v["subcommand"], "expand");
        assert_eq!(v["config"]["command"]["name"], "expand");
        assert_eq!(v["config"]["command"]["x"], "2/5");
        assert_eq!(v["summary"]["digits"], 2);
        assert_eq!(v["columns"][1], "a_k");
        assert_eq!(v["rows"][0][0], 1);
    }

    #[test]
    fn cells_render_canonically() {
        assert_eq!(csv_cell(&cell_f64(0.495)), "0.495");
        assert_eq!(csv_cell(&cell_f64(f64::NAN)), "");
        assert_eq!(csv_cell(&cell_u64(7)), "7");
        assert_eq!(csv_cell(&cell_bool(false)), "false");
        assert_eq!(csv_cell(&Value::Null), "");
        let q = BigRational::new(BigInt::from(99), BigInt::from(200));
        assert_eq!(csv_cell(&cell_rational(&q)), "99/200");
        assert_eq!(rational_f64(&q), 0.495);
    }
}
