//! Stable CSV tables. Floats carry 17 significant digits (`{:.16e}`).

use serde::Serialize;

use super::{BoostReport, DispersionRow, FourthOrderRow, LimitStudy};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn dispersion(rows: &[DispersionRow]) -> Table {
        let mut t = Table::new(&["k", "branch", "omega_measured", "omega_analytic", "error"]);
        for r in rows {
            t.push(vec![float(r.k), r.branch.name().into(), float(r.omega_measured), float(r.omega_analytic), float(r.error)]);
        }
        t
    }

    pub fn limit(study: &LimitStudy) -> Table {
        let mut t = Table::new(&["c", "l2_error"]);
        for r in &study.rows {
            t.push(vec![float(r.c), float(r.error)]);
        }
        t
    }

    pub fn boost(r: &BoostReport) -> Table {
        let mut t = Table::new(&[
            "equation",
            "boost",
            "v",
            "t",
            "max_residual",
            "l2_discrepancy",
            "omega_measured",
            "omega_expected",
            "k_measured",
            "k_expected",
        ]);
        t.push(vec![
            r.equation.clone(),
            r.boost.to_string(),
            float(r.v),
            float(r.t),
            float(r.max_residual),
            float(r.l2_discrepancy),
            opt(r.omega_measured),
            opt(r.omega_expected),
            opt(r.k_measured),
            opt(r.k_expected),
        ]);
        t
    }

    pub fn fourth_order(rows: &[FourthOrderRow]) -> Table {
        let mut t = Table::new(&["t", "residual"]);
        for r in rows {
            t.push(vec![float(r.t), float(r.residual)]);
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(float(0.1), "1.0000000000000001e-1");
        assert_eq!(float(0.1).parse::<f64>().unwrap(), 0.1);
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![float(1.0), "x,y".into()]);
        assert_eq!(t.to_csv(), "a,b\n1.0000000000000000e0,\"x,y\"\n");
    }
}
