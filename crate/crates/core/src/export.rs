//! Tables for the command line and for files: exact values as `p/q`
//! strings, floats rounded to a fixed number of significant digits.

use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exact::{format_rational, int, Rational};
use crate::laguerre::{laguerre, moment_integral};
use crate::observability::{binomial_weights, duality_matrix};
use crate::phase::{DeformParam, ModelParams};
use crate::spectral::{projector_closed, spectrum, star_exp_closed, star_exp_series};
use crate::uncertainty::{farey_grid, gm_asymptotics, moment_report, scan_lambda};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse {
                input: other.into(),
                reason: "expected csv or json".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Exact(Rational),
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<Rational> for Cell {
    fn from(r: Rational) -> Self {
        Cell::Exact(r)
    }
}

impl From<&Rational> for Cell {
    fn from(r: &Rational) -> Self {
        Cell::Exact(r.clone())
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n.into())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Rounds to `digits` significant digits; the shortest representation of the
/// rounded value is what gets printed.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().unwrap_or(x)
}

impl Cell {
    fn text(&self, digits: usize) -> String {
        match self {
            Cell::Exact(r) => format_rational(r),
            Cell::Float(x) if x.is_finite() => {
                serde_json::to_string(&round_significant(*x, digits)).expect("finite float")
            }
            Cell::Float(x) => x.to_string(),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Cell::Exact(r) => Value::String(format_rational(r)),
            Cell::Float(x) => serde_json::Number::from_f64(round_significant(*x, digits))
                .map_or(Value::Null, Value::Number),
            Cell::Int(n) => Value::from(*n),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn cell(&self, row: usize, column: &str) -> Option<&Cell> {
        let j = self.columns.iter().position(|c| *c == column)?;
        self.rows.get(row)?.get(j)
    }

    pub fn to_csv(&self, digits: usize) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.text(digits)))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    /// One JSON object per row, keys in column order, one row per line.
    pub fn to_json(&self, digits: usize) -> String {
        let mut out = String::from("[\n");
        for (i, row) in self.rows.iter().enumerate() {
            let object: Map<String, Value> = self
                .columns
                .iter()
                .zip(row)
                .map(|(k, c)| (k.to_string(), c.json(digits)))
                .collect();
            out.push_str("  ");
            out.push_str(&serde_json::to_string(&object).expect("plain values"));
            if i + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }

    pub fn render(&self, format: Format, digits: usize) -> String {
        match format {
            Format::Csv => self.to_csv(digits),
            Format::Json => self.to_json(digits),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv(12))
    }
}

/// `int z^k L_n(z) e^-z dz` by integration and by formula.
pub fn fund_table(k_max: u32, n_max: u32) -> Table {
    let mut t = Table::new(vec!["k", "n", "integral", "formula"]);
    for k in 0..=k_max {
        for n in 0..=n_max {
            let m = moment_integral(k, n);
            t.push(vec![
                k.into(),
                n.into(),
                m.integral.into(),
                m.formula.into(),
            ]);
        }
    }
    t
}

/// Quantum level weights of `p_k`.
pub fn weights_table(lambda: &DeformParam, k: u32) -> Table {
    let mut t = Table::new(vec!["n", "energy", "weight"]);
    for (n, w) in binomial_weights(k, lambda.value()).into_iter().enumerate() {
        let n = n as u32;
        t.push(vec![
            n.into(),
            (int(n.into()) + lambda.value()).into(),
            w.into(),
        ]);
    }
    t
}

/// Gram matrix `int pi_n^(l) pi_m^(1-l) dmu`.
pub fn duality_table(lambda: &DeformParam, n_max: u32) -> Result<Table> {
    let g = duality_matrix(lambda, n_max)?;
    let mut t = Table::new(vec!["n", "m", "integral"]);
    for (n, row) in g.into_iter().enumerate() {
        for (m, v) in row.into_iter().enumerate() {
            t.push(vec![(n as u32).into(), (m as u32).into(), v.into()]);
        }
    }
    Ok(t)
}

/// First failing `k` for each grid value with denominator `<= max_denominator`.
pub fn scan_table(k_max: u32, max_denominator: u32) -> Result<Table> {
    let result = scan_lambda(&farey_grid(max_denominator), k_max)?;
    let mut t = Table::new(vec![
        "lambda",
        "first_failing_k",
        "predicted_k",
        "boundary",
        "quantum_variance",
        "classical_variance",
        "consistent",
    ]);
    for e in &result.entries {
        let failing = e.first_failing.as_ref();
        t.push(vec![
            (&e.lambda).into(),
            failing.map(|s| s.k).into(),
            e.predicted.into(),
            failing
                .map(|s| s.verdict == crate::uncertainty::Verdict::Boundary)
                .into(),
            failing.map(|s| &s.quantum_variance).into(),
            failing.map(|s| &s.classical_variance).into(),
            e.consistent(k_max).into(),
        ]);
    }
    Ok(t)
}

pub fn spectrum_table(lambda: &DeformParam, n_max: u32, model: &ModelParams) -> Table {
    let mut t = Table::new(vec!["n", "energy"]);
    for e in spectrum(lambda, n_max, model) {
        t.push(vec![e.n.into(), e.energy.into()]);
    }
    t
}

/// Coefficients of `L_n` in the monomial basis.
pub fn laguerre_table(n_max: u32) -> Table {
    let mut t = Table::new(vec!["n", "power", "coefficient"]);
    for n in 0..=n_max {
        for (j, c) in laguerre(n).poly.coeffs().iter().enumerate() {
            t.push(vec![n.into(), (j as u32).into(), c.into()]);
        }
    }
    t
}

pub fn moments_table(lambda: &DeformParam, k: u32) -> Result<Table> {
    let r = moment_report(k, lambda.value())?;
    let mut t = Table::new(vec![
        "k",
        "lambda",
        "classical_mean",
        "classical_second",
        "classical_variance",
        "quantum_mean",
        "quantum_second",
        "quantum_variance",
        "classical_std",
        "quantum_std",
    ]);
    t.push(vec![
        k.into(),
        (&r.lambda).into(),
        r.classical.mean.into(),
        r.classical.second.into(),
        r.classical.variance.into(),
        r.quantum.mean.into(),
        r.quantum.second.into(),
        r.quantum.variance.into(),
        r.classical_std.into(),
        r.quantum_std.into(),
    ]);
    Ok(t)
}

/// Variance and spread gaps at `l = 1/2`.
pub fn gm_table(k_max: u32) -> Table {
    let mut t = Table::new(vec![
        "k",
        "classical_variance",
        "quantum_variance",
        "variance_gap",
        "uncertainty_gap",
    ]);
    for r in gm_asymptotics(k_max).rows {
        t.push(vec![
            r.k.into(),
            r.classical_variance.into(),
            r.quantum_variance.into(),
            r.variance_gap.into(),
            r.uncertainty_gap.into(),
        ]);
    }
    t
}

/// `pi_n` as `sum_j c_j mu^j e^(-rate mu)`, and its value at `mu` when given.
pub fn projector_table(lambda: &DeformParam, n: u32, mu: Option<&Rational>) -> Table {
    let p = projector_closed(n, lambda);
    let mut t = Table::new(vec![
        "n",
        "lambda",
        "rate",
        "power",
        "coefficient",
        "mu",
        "value",
        "sign",
    ]);
    let (value, sign) = match mu {
        Some(mu) => {
            let sign = match p.form.sign_at(mu) {
                Some(std::cmp::Ordering::Less) => Cell::Int(-1),
                Some(std::cmp::Ordering::Equal) => Cell::Int(0),
                Some(std::cmp::Ordering::Greater) => Cell::Int(1),
                None => Cell::Empty,
            };
            (Cell::Float(p.eval_f64(crate::exact::to_f64(mu))), sign)
        }
        None => (Cell::Empty, Cell::Empty),
    };
    for term in p.form.terms() {
        for (j, c) in term.poly.coeffs().iter().enumerate() {
            t.push(vec![
                n.into(),
                lambda.value().into(),
                (&term.rate).into(),
                (j as u32).into(),
                c.into(),
                mu.into(),
                value.clone(),
                sign.clone(),
            ]);
        }
    }
    t
}

/// Closed star exponential against its truncated series.
pub fn star_exp_table(lambda: &DeformParam, mu: f64, omega_t: f64, terms: usize) -> Result<Table> {
    let closed = star_exp_closed(lambda, mu, omega_t)?.value();
    let series = star_exp_series(lambda, mu, omega_t, terms).value();
    let mut t = Table::new(vec![
        "lambda",
        "mu",
        "omega_t",
        "closed_re",
        "closed_im",
        "series_re",
        "series_im",
        "terms",
        "deviation",
    ]);
    t.push(vec![
        lambda.value().into(),
        mu.into(),
        omega_t.into(),
        closed.re.into(),
        closed.im.into(),
        series.re.into(),
        series.im.into(),
        Cell::Int(terms as i64),
        (closed - series).norm().into(),
    ]);
    Ok(t)
}
