//! Sweeps of the exact correlation against its asymptotic prediction along
//! rays `alpha = q beta`.

use std::io::Write;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlation::{asymptotic_prediction, correlation_double_sum, CorrelationParams};
use crate::exact::{format_float, int_string, rat_to_f64};
use crate::{Error, ExactInt, ExactRat, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepFormat {
    Csv,
    Json,
}

/// Ray slopes times ray lengths. Duplicates are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepGrid {
    pub qs: Vec<ExactRat>,
    pub rs: Vec<i64>,
    /// worker threads; `None` lets rayon pick
    pub jobs: Option<usize>,
}

/// One output row. Exact parts are decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    #[serde(rename = "R")]
    pub r: i64,
    #[serde(with = "int_string")]
    pub q_num: ExactInt,
    #[serde(with = "int_string")]
    pub q_den: ExactInt,
    #[serde(with = "int_string")]
    pub omega_num: ExactInt,
    #[serde(with = "int_string")]
    pub omega_den: ExactInt,
    pub prediction: f64,
    pub ratio: f64,
}

pub const CSV_HEADER: [&str; 7] = ["R", "q_num", "q_den", "omega_num", "omega_den", "prediction", "ratio"];

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        if self.qs.is_empty() || self.rs.is_empty() {
            return Err(Error::Validation("sweep grid is empty".into()));
        }
        if let Some(r) = self.rs.iter().find(|&&r| r < 1) {
            return Err(Error::Validation(format!("R values must be positive, got {r}")));
        }
        if let Some(q) = self.qs.iter().find(|q| !q.is_positive()) {
            return Err(Error::Validation(format!("q values must be positive, got {q}")));
        }
        if self.jobs == Some(0) {
            return Err(Error::Validation("--jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Grid points in output order, every one checked before any work starts.
    fn points(&self) -> Result<Vec<CorrelationParams>> {
        self.validate()?;
        let mut qs = self.qs.clone();
        qs.sort();
        qs.dedup();
        let mut rs = self.rs.clone();
        rs.sort_unstable();
        rs.dedup();
        let mut out = Vec::with_capacity(qs.len() * rs.len());
        for q in &qs {
            for &r in &rs {
                out.push(CorrelationParams::on_ray(q, r)?);
            }
        }
        Ok(out)
    }
}

fn evaluate(p: &CorrelationParams) -> Result<SweepRecord> {
    let omega = correlation_double_sum(p);
    let prediction = asymptotic_prediction(rat_to_f64(&p.q), p.r as f64)?;
    Ok(SweepRecord {
        r: p.r,
        q_num: p.q.numer().clone(),
        q_den: p.q.denom().clone(),
        ratio: rat_to_f64(&omega) / prediction,
        omega_num: omega.numer().clone(),
        omega_den: omega.denom().clone(),
        prediction,
    })
}

/// Evaluates every grid point, concurrently, and returns rows sorted by
/// `(q, R)`.
pub fn run_sweep(grid: &SweepGrid) -> Result<Vec<SweepRecord>> {
    let points = grid.points()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = grid.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::Usage(format!("cannot start worker threads: {e}")))?;
    // collect keeps input order, so the result does not depend on scheduling
    pool.install(|| points.par_iter().map(evaluate).collect())
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in records {
        w.write_record([
            rec.r.to_string(),
            rec.q_num.to_string(),
            rec.q_den.to_string(),
            rec.omega_num.to_string(),
            rec.omega_den.to_string(),
            format_float(rec.prediction),
            format_float(rec.ratio),
        ])?;
    }
    w.flush()
}

pub fn write_json<W: Write>(records: &[SweepRecord], mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)
}

pub fn read_json(s: &str) -> Result<Vec<SweepRecord>> {
    serde_json::from_str(s).map_err(|e| Error::Validation(format!("bad sweep JSON: {e}")))
}

/// Reads back CSV rows; floats carry only the 12 printed digits.
pub fn read_csv(s: &str) -> Result<Vec<SweepRecord>> {
    let mut rdr = csv::Reader::from_reader(s.as_bytes());
    let bad = |e: String| Error::Validation(format!("bad sweep CSV: {e}"));
    let header = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(bad(format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        let big = |i: usize| row[i].parse::<ExactInt>().map_err(|e| bad(e.to_string()));
        let float = |i: usize| row[i].parse::<f64>().map_err(|e| bad(e.to_string()));
        out.push(SweepRecord {
            r: row[0].parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            q_num: big(1)?,
            q_den: big(2)?,
            omega_num: big(3)?,
            omega_den: big(4)?,
            prediction: float(5)?,
            ratio: float(6)?,
        });
    }
    Ok(out)
}

pub fn write_records<W: Write>(records: &[SweepRecord], format: SweepFormat, out: W) -> std::io::Result<()> {
    match format {
        SweepFormat::Csv => write_csv(records, out),
        SweepFormat::Json => write_json(records, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn grid(qs: Vec<ExactRat>, rs: Vec<i64>) -> SweepGrid {
        SweepGrid { qs, rs, jobs: Some(2) }
    }

    #[test]
    fn rows_are_sorted_and_deduplicated() {
        let g = grid(vec![rat_int(2), rat(1, 2), rat_int(2)], vec![8, 2, 4, 2]);
        let rows = run_sweep(&g).unwrap();
        let keys: Vec<(i64, i64)> = rows.iter().map(|r| (r.q_num.to_string().parse().unwrap(), r.r)).collect();
        assert_eq!(keys, vec![(1, 2), (1, 4), (1, 8), (2, 2), (2, 4), (2, 8)]);
    }

    #[test]
    fn unit_ray_row() {
        let rows = run_sweep(&grid(vec![rat_int(1)], vec![1])).unwrap();
        let r = &rows[0];
        assert_eq!((r.omega_num.to_string(), r.omega_den.to_string()), ("1".into(), "1".into()));
        assert!((r.prediction - 1.470_210_388).abs() < 1e-9);
        assert!((r.ratio * r.prediction - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_grids() {
        assert!(matches!(run_sweep(&grid(vec![], vec![1])), Err(Error::Validation(_))));
        assert!(matches!(run_sweep(&grid(vec![rat_int(1)], vec![])), Err(Error::Validation(_))));
        assert!(matches!(run_sweep(&grid(vec![rat_int(1)], vec![0])), Err(Error::Validation(_))));
        assert!(matches!(run_sweep(&grid(vec![rat(-1, 2)], vec![2])), Err(Error::Validation(_))));
        // q R must land on the lattice
        assert!(matches!(run_sweep(&grid(vec![rat(1, 3)], vec![2])), Err(Error::Validation(_))));
        let g = SweepGrid { jobs: Some(0), ..grid(vec![rat_int(1)], vec![1]) };
        assert!(g.validate().is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let rows = run_sweep(&grid(vec![rat(1, 2), rat_int(1)], vec![2, 6])).unwrap();
        let mut buf = Vec::new();
        write_json(&rows, &mut buf).unwrap();
        assert_eq!(read_json(std::str::from_utf8(&buf).unwrap()).unwrap(), rows);
    }

    #[test]
    fn csv_round_trip_keeps_exact_columns() {
        let rows = run_sweep(&grid(vec![rat_int(1)], vec![3, 5])).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("R,q_num,q_den,omega_num,omega_den,prediction,ratio\n"));
        let back = read_csv(&text).unwrap();
        for (a, b) in rows.iter().zip(&back) {
            assert_eq!((a.r, &a.omega_num, &a.omega_den), (b.r, &b.omega_num, &b.omega_den));
            assert!((a.ratio / b.ratio - 1.0).abs() < 1e-11);
        }
    }
}
