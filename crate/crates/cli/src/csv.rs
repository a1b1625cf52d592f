//! Minimal CSV writer with a fixed number format.

use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

/// Twelve significant digits in scientific notation; non-finite values become
/// `nan` and negative zero prints as zero.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        format!("{:.11e}", 0.0)
    } else if v.is_finite() {
        format!("{v:.11e}")
    } else {
        "nan".to_owned()
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => "nan".to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics if its width differs from the header.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row width does not match header"
        );
        self.rows.push(row);
    }
}

pub fn write_csv<W: Write>(table: &Table, sink: &mut W) -> io::Result<()> {
    let mut out = String::new();
    out.push_str(&table.header.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(Cell::render).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    sink.write_all(out.as_bytes())?;
    sink.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(t: &Table) -> String {
        let mut buf = Vec::new();
        write_csv(t, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(render(&Table::new(["sigma", "t0", "K"])), "sigma,t0,K\n");
    }

    #[test]
    fn one_row_is_two_lines() {
        let mut t = Table::new(["sigma", "t0", "K"]);
        t.push(vec![5.0.into(), 19.0.into(), 1.234e-3.into()]);
        let s = render(&t);
        assert_eq!(
            s,
            "sigma,t0,K\n5.00000000000e0,1.90000000000e1,1.23400000000e-3\n"
        );
        assert_eq!(s.lines().count(), 2);
    }

    #[test]
    fn missing_and_nonfinite_render_as_nan() {
        let mut t = Table::new(["a", "b", "c"]);
        t.push(vec![Cell::Missing, f64::NAN.into(), None.into()]);
        assert_eq!(render(&t), "a,b,c\nnan,nan,nan\n");
    }

    #[test]
    fn negative_zero_prints_as_zero() {
        assert_eq!(format_float(-0.0), format_float(0.0));
    }

    #[test]
    fn twelve_significant_digits_round_trip() {
        let v = std::f64::consts::PI * 1e-7;
        let s = format_float(v);
        let back: f64 = s.parse().unwrap();
        assert!(((back - v) / v).abs() < 1e-11);
        assert_eq!(s.split('e').next().unwrap().replace('.', "").len(), 12);
    }
}
