//! Grid tables of bounds, functional parameters and thresholds.

use std::io::Write;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use coeffbounds::bounds::{self, Params};
use serde_json::{Map, Value};

use crate::format;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Range {
    pub fn points(&self) -> Vec<f64> {
        coeffbounds::harness::linspace(self.lo, self.hi, self.steps)
    }
}

impl FromStr for Range {
    type Err = String;

    /// `LO:HI:STEPS` or a single value.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => {
                let v = parse(v)?;
                Ok(Range { lo: v, hi: v, steps: 1 })
            }
            [lo, hi, n] => {
                let steps = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| format!("steps '{n}': {e}"))?;
                if steps == 0 {
                    return Err("steps must be at least 1".into());
                }
                Ok(Range { lo: parse(lo)?, hi: parse(hi)?, steps })
            }
            _ => Err(format!("expected LO:HI:STEPS or a single value, got '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Quantity {
    A2,
    A3,
    A4,
    Mu,
    Nu,
    Thresholds,
    GammaStar,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableSpec {
    pub alpha: Range,
    pub gamma: Range,
    pub quantities: Vec<Quantity>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Num(f64),
    Text(String),
    Missing,
}

impl TableSpec {
    pub fn validate(&self) -> Result<()> {
        for v in [self.alpha.lo, self.alpha.hi] {
            if !(v > 0.0 && v < 1.0) {
                bail!(bounds::ALPHA_HYPOTHESIS);
            }
        }
        for v in [self.gamma.lo, self.gamma.hi] {
            if !(v > 0.0 && v <= 1.0) {
                bail!(bounds::GAMMA_HYPOTHESIS);
            }
        }
        if self.quantities.is_empty() {
            bail!("at least one quantity is required");
        }
        Ok(())
    }

    fn columns(&self) -> Vec<&'static str> {
        let mut cols = vec!["alpha", "gamma"];
        for q in &self.quantities {
            cols.extend_from_slice(match q {
                Quantity::A2 => &["a2"][..],
                Quantity::A3 => &["a3", "a3_branch"],
                Quantity::A4 => &["a4", "a4_branch"],
                Quantity::Mu => &["mu"],
                Quantity::Nu => &["nu"],
                Quantity::Thresholds => &["gamma_half", "gamma_2", "gamma_4", "gamma_nu", "gamma_a3"],
                Quantity::GammaStar => &["gamma_star"],
                Quantity::Beta => &["beta"],
            });
        }
        cols
    }

    fn row(&self, p: Params) -> Result<Vec<Cell>> {
        let mut row = vec![Cell::Num(p.alpha()), Cell::Num(p.gamma())];
        let report = bounds::report(p);
        for q in &self.quantities {
            match q {
                Quantity::A2 => row.push(Cell::Num(report.a2_bound)),
                Quantity::A3 => {
                    row.push(Cell::Num(report.a3_bound));
                    row.push(Cell::Text(report.a3_branch.to_string()));
                }
                Quantity::A4 => {
                    row.push(Cell::Num(report.a4_bound));
                    row.push(Cell::Text(report.a4_branch.to_string()));
                }
                Quantity::Mu => row.push(Cell::Num(report.mu)),
                Quantity::Nu => row.push(Cell::Num(report.nu)),
                Quantity::Thresholds => {
                    let t = bounds::thresholds(p.alpha())?;
                    row.extend(
                        [t.gamma_half, t.gamma_2, t.gamma_4, t.gamma_nu, t.gamma_a3].map(Cell::Num),
                    );
                }
                Quantity::GammaStar => row.push(
                    bounds::gamma_star(p.alpha()).map_or(Cell::Missing, Cell::Num),
                ),
                Quantity::Beta => row.push(
                    bounds::beta_star(p.alpha()).map_or(Cell::Missing, Cell::Num),
                ),
            }
        }
        Ok(row)
    }

    fn rows(&self) -> Result<Vec<Vec<Cell>>> {
        let mut rows = Vec::new();
        for a in self.alpha.points() {
            for g in self.gamma.points() {
                rows.push(self.row(Params::new(a, g)?)?);
            }
        }
        Ok(rows)
    }

    /// Renders the table; rows are alpha-major.
    pub fn render(&self) -> Result<Vec<u8>> {
        self.validate()?;
        let cols = self.columns();
        let rows = self.rows()?;
        match self.format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(Vec::new());
                w.write_record(&cols)?;
                for row in &rows {
                    w.write_record(row.iter().map(|c| match c {
                        Cell::Num(x) => format::num(*x),
                        Cell::Text(s) => s.clone(),
                        Cell::Missing => String::new(),
                    }))?;
                }
                w.into_inner().context("flushing CSV")
            }
            Format::Json => {
                let arr: Vec<Value> = rows
                    .into_iter()
                    .map(|row| {
                        let obj: Map<String, Value> = cols
                            .iter()
                            .zip(row)
                            .map(|(k, c)| {
                                let v = match c {
                                    Cell::Num(x) => Value::from(format::rounded(x)),
                                    Cell::Text(s) => Value::from(s),
                                    Cell::Missing => Value::Null,
                                };
                                (k.to_string(), v)
                            })
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut out = serde_json::to_vec_pretty(&arr)?;
                out.write_all(b"\n")?;
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(alpha: &str, gamma: &str, q: Vec<Quantity>, format: Format) -> TableSpec {
        TableSpec {
            alpha: alpha.parse().unwrap(),
            gamma: gamma.parse().unwrap(),
            quantities: q,
            format,
        }
    }

    #[test]
    fn range_parsing() {
        assert_eq!("0.5".parse::<Range>().unwrap(), Range { lo: 0.5, hi: 0.5, steps: 1 });
        assert_eq!(
            "0.1:0.9:3".parse::<Range>().unwrap().points(),
            vec![0.1, 0.5, 0.9]
        );
        assert!("0.1:0.9:0".parse::<Range>().is_err());
        assert!("0.1:0.9".parse::<Range>().is_err());
        assert!("x".parse::<Range>().is_err());
    }

    #[test]
    fn csv_shape() {
        let out = spec("0.1:0.9:3", "0.2:1:3", vec![Quantity::A2], Format::Csv)
            .render()
            .unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], "alpha,gamma,a2");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn single_cell_values() {
        let out = spec("0.5", "1", vec![Quantity::Nu], Format::Csv).render().unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "alpha,gamma,nu\n0.5,1,51\n");

        let out = spec("0.5", "1", vec![Quantity::Thresholds], Format::Json)
            .render()
            .unwrap();
        let v: Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v[0]["gamma_2"], Value::from(0.166666666667));
    }

    #[test]
    fn gamma_star_missing_beyond_range() {
        let out = spec("0.9", "1", vec![Quantity::GammaStar], Format::Json).render().unwrap();
        let v: Value = serde_json::from_slice(&out).unwrap();
        assert!(v[0]["gamma_star"].is_null());
    }

    #[test]
    fn rejects_out_of_range() {
        let err = spec("0.5:1.2:3", "1", vec![Quantity::A2], Format::Csv)
            .render()
            .unwrap_err();
        assert_eq!(err.to_string(), bounds::ALPHA_HYPOTHESIS);
        assert!(spec("0.5", "0", vec![Quantity::A2], Format::Csv).render().is_err());
    }
}
