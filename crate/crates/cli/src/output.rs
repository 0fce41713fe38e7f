use anyhow::{Context, Result};
use serde::Serialize;
use std::io::Write;

/// A table cell.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// 17 significant digits, `.` decimal point.
pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Columns plotted by `--plot`: `(x, y)`.
    pub plot: Option<(usize, usize)>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), plot: None }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn with_plot(mut self, x: usize, y: usize) -> Self {
        self.plot = Some((x, y));
        self
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|r| self.header.iter().cloned().zip(r.iter().map(|c| serde_json::to_value(c).unwrap_or(serde_json::Value::Null))).collect())
            .collect();
        Ok(serde_json::to_string_pretty(&rows)? + "\n")
    }

    /// Single-series line chart of the plot columns.
    pub fn to_svg(&self, log_axes: bool) -> Result<String> {
        let (xi, yi) = self.plot.context("this command has no plottable series")?;
        let tf = |v: f64| if log_axes { v.log10() } else { v };
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter_map(|r| Some((tf(r[xi].as_f64()?), tf(r[yi].as_f64()?))))
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .collect();
        anyhow::ensure!(!pts.is_empty(), "nothing to plot (log axes need positive values)");
        Ok(svg_line(&pts, &self.header[xi], &self.header[yi], log_axes))
    }
}

fn svg_line(pts: &[(f64, f64)], xlabel: &str, ylabel: &str, log_axes: bool) -> String {
    let (w, h, m) = (640.0, 420.0, 60.0);
    let range = |f: fn(&(f64, f64)) -> f64| {
        let lo = pts.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        if hi > lo {
            (lo, hi)
        } else {
            (lo - 0.5, hi + 0.5)
        }
    };
    let (x0, x1) = range(|p| p.0);
    let (y0, y1) = range(|p| p.1);
    let sx = |x: f64| m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
    let sy = |y: f64| h - m - (y - y0) / (y1 - y0) * (h - 2.0 * m);
    let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
    let lab = |v: f64| if log_axes { format!("1e{v:.2}") } else { format!("{v:.4e}") };
    let mut s = String::new();
    s += &format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" font-family=\"sans-serif\" font-size=\"12\">\n");
    s += &format!("<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n");
    s += &format!("<line x1=\"{m}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", h - m, w - m, h - m);
    s += &format!("<line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{}\" stroke=\"black\"/>\n", h - m);
    s += &format!("<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"{}\"/>\n", path.join(" "));
    s += &format!("<text x=\"{m}\" y=\"{}\">{}</text>\n", h - m + 16.0, lab(x0));
    s += &format!("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", w - m, h - m + 16.0, lab(x1));
    s += &format!("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", m - 4.0, h - m, lab(y0));
    s += &format!("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", m - 4.0, m + 4.0, lab(y1));
    s += &format!("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{xlabel}</text>\n", w / 2.0, h - 16.0);
    s += &format!("<text x=\"16\" y=\"{}\" transform=\"rotate(-90 16 {})\" text-anchor=\"middle\">{ylabel}</text>\n", h / 2.0, h / 2.0);
    s += "</svg>\n";
    s
}

pub fn emit(text: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_num(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_num(3.0), "3.0000000000000000e0");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        let v: f64 = fmt_num(std::f64::consts::PI).parse().unwrap();
        assert_eq!(v, std::f64::consts::PI);
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["x", "name"]);
        t.push(vec![1.5.into(), "a,b".into()]);
        assert_eq!(t.to_csv().unwrap(), "x,name\n1.5000000000000000e0,\"a,b\"\n");
        assert!(t.to_json().unwrap().contains("\"name\": \"a,b\""));
    }

    #[test]
    fn svg_needs_a_series() {
        let mut t = Table::new(&["x", "y"]);
        t.push(vec![1.0.into(), 2.0.into()]);
        t.push(vec![10.0.into(), 20.0.into()]);
        assert!(t.to_svg(false).is_err());
        let svg = t.with_plot(0, 1).to_svg(true).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("polyline"));
    }
}
