//! Structured reports with exactness-tagged cells, emitted as CSV or JSON.
//! Output is byte-deterministic for fixed precision digits; timing goes to
//! stderr only.

use twins_core::interval::RatInterval;
use twins_core::value::ParamValue;
use twins_core::{render, Rat};

#[derive(Clone, Debug)]
pub enum Cell {
    Exact(Rat),
    Interval(RatInterval),
    Flag(bool),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn param(v: &ParamValue, digits: usize) -> Cell {
        match v {
            ParamValue::Exact(r) => Cell::Exact(r.clone()),
            ParamValue::Algebraic(root) => {
                let tol = Rat::new(1.into(), num_pow10(digits));
                Cell::Interval(root.refined(&tol).interval())
            }
        }
    }

    fn csv(&self, digits: usize) -> String {
        match self {
            Cell::Exact(r) => format!("{r}[exact]"),
            Cell::Interval(iv) => format!("{}[interval]", render::interval(iv, digits)),
            Cell::Flag(b) => b.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(t) => t.replace(',', ";"),
        }
    }

    fn json(&self, digits: usize) -> serde_json::Value {
        use serde_json::json;
        match self {
            Cell::Exact(r) => json!({
                "tag": "exact",
                "value": r.to_string(),
                "decimal": render::decimal(r, digits),
            }),
            Cell::Interval(iv) => json!({
                "tag": "interval",
                "midpoint": render::decimal(&iv.midpoint(), digits),
                "width": render::width_bound(&iv.width()),
            }),
            Cell::Flag(b) => json!(b),
            Cell::Int(v) => json!(v),
            Cell::Text(t) => json!(t),
        }
    }
}

fn num_pow10(digits: usize) -> twins_core::Int {
    twins_core::Int::from(10u32).pow(digits as u32)
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, headers: &[&str]) -> Self {
        Report {
            command: command.into(),
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.headers.len(), "row arity");
        self.rows.push(row);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::new();
        out.push_str(&format!("# command: {}\n", self.command));
        for n in &self.notes {
            out.push_str(&format!("# note: {n}\n"));
        }
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.csv(digits)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, digits: usize) -> String {
        use serde_json::json;
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .headers
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.clone(), c.json(digits)))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let v = json!({
            "command": self.command,
            "notes": self.notes,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("serializable report");
        s.push('\n');
        s
    }
}
