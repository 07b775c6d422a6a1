//! Column datasets and their CSV / JSON encodings.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    /// Direction or radius where no real propagation exists.
    Trapped,
    /// Value not defined at this row.
    Undef,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    /// Finite numbers pass through; anything else becomes `undef`.
    pub fn num(x: f64) -> Self {
        if x.is_finite() {
            Cell::Num(x)
        } else {
            Cell::Undef
        }
    }

    pub fn opt(x: Option<f64>) -> Self {
        x.map_or(Cell::Undef, Cell::num)
    }

    /// Maps library results: trapped directions and degenerate cones become
    /// `trapped`, other failures `undef`.
    pub fn from_result(r: ehvac::Result<f64>) -> Self {
        match r {
            Ok(x) => Cell::num(x),
            Err(ehvac::Error::Trapped { .. }) | Err(ehvac::Error::DegenerateCone(_)) => Cell::Trapped,
            Err(_) => Cell::Undef,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Trapped => "trapped".into(),
            Cell::Undef => "undef".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Trapped => json!("trapped"),
            Cell::Undef => json!("undef"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    /// (name, unit) per column.
    pub columns: Vec<(String, String)>,
    pub rows: Vec<Vec<Cell>>,
}

impl Dataset {
    pub fn new(name: &str, columns: &[(&str, &str)]) -> Self {
        Dataset {
            name: name.to_string(),
            columns: columns.iter().map(|&(n, u)| (n.to_string(), u.to_string())).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch in dataset {}", self.name);
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|(n, _)| n == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        out.push_str(&names.join(","));
        out.push('\n');
        let units: Vec<&str> = self.columns.iter().map(|(_, u)| u.as_str()).collect();
        out.push_str("# units: ");
        out.push_str(&units.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, metadata: &Value) -> Value {
        let columns: Vec<Value> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, (name, unit))| {
                let values: Vec<Value> = self.rows.iter().map(|r| r[j].json()).collect();
                json!({ "name": name, "unit": unit, "values": values })
            })
            .collect();
        let mut meta = match metadata {
            Value::Object(m) => m.clone(),
            _ => Map::new(),
        };
        meta.insert("dataset".into(), json!(self.name));
        json!({ "metadata": Value::Object(meta), "columns": columns })
    }
}
