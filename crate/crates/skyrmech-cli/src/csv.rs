//! CSV emission: header line, unit-tag line, then rows with floats at 17
//! significant digits. Byte-deterministic for identical inputs.

/// A CSV table under construction.
pub struct CsvTable {
    headers: Vec<String>,
    units: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(columns: &[(&str, &str)]) -> Self {
        Self {
            headers: columns.iter().map(|(h, _)| h.to_string()).collect(),
            units: columns.iter().map(|(_, u)| u.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, values: &[CsvValue]) {
        assert_eq!(values.len(), self.headers.len(), "column count mismatch");
        self.rows
            .push(values.iter().map(CsvValue::render).collect());
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.headers.join(","));
        out.push('\n');
        out.push_str(&self.units.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// One CSV cell.
pub enum CsvValue {
    Float(f64),
    Int(i64),
    Text(String),
}

impl CsvValue {
    fn render(&self) -> String {
        match self {
            // 17 significant digits: 1 leading + 16 after the point.
            CsvValue::Float(v) => format!("{v:.16e}"),
            CsvValue::Int(v) => v.to_string(),
            CsvValue::Text(s) => s.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_and_precision() {
        let mut t = CsvTable::new(&[("x", "nm"), ("y", "Hz"), ("tag", "-")]);
        t.push_row(&[
            CsvValue::Float(1.0 / 3.0),
            CsvValue::Int(7),
            CsvValue::Text("a".into()),
        ]);
        let s = t.render();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "x,y,tag");
        assert_eq!(lines[1], "nm,Hz,-");
        assert_eq!(lines[2], "3.3333333333333331e-1,7,a");
    }
}
