//! Single points, t_AB sweeps and their CSV form.

use rayon::prelude::*;
use std::io::Write;
use udw_core::entanglement::report;
use udw_core::matrix_elements::{compute, EvalOptions, MatrixElements};
use udw_core::model::{causal_class, CausalClass, PairConfig};
use udw_core::{Error, Result};

pub const CSV_HEADER: &str =
    "t_ab_T,l_jj,abs_m,abs_m_plus,abs_m_minus,n_total,n_plus,n_minus,estimator_i,i_flag,causal_class,err_estimate";

#[derive(Debug, Clone, PartialEq)]
pub enum ErrEstimate {
    /// summed absolute quadrature error of the reported elements
    Value(f64),
    /// the point failed with an error of this kind
    Failed(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub t_ab: f64,
    pub l_jj: f64,
    pub abs_m: f64,
    pub abs_m_plus: f64,
    pub abs_m_minus: f64,
    pub n_total: f64,
    pub n_plus: f64,
    pub n_minus: f64,
    pub estimator_i: f64,
    pub i_flag: bool,
    pub causal_class: CausalClass,
    pub err: ErrEstimate,
}

impl SweepRow {
    fn from_elements(t_ab: f64, me: &MatrixElements, class: CausalClass) -> Result<SweepRow> {
        let r = report(me, class)?;
        let err = me.l_aa.abs_error + me.m.abs_error + me.m_plus.abs_error + me.m_minus.abs_error;
        Ok(SweepRow {
            t_ab,
            l_jj: 0.5 * (me.l_aa.value.re + me.l_bb.value.re),
            abs_m: me.m.value.norm(),
            abs_m_plus: me.m_plus.value.norm(),
            abs_m_minus: me.m_minus.value.norm(),
            n_total: r.n,
            n_plus: r.n_plus,
            n_minus: r.n_minus,
            estimator_i: r.i,
            i_flag: r.i_flag,
            causal_class: class,
            err: ErrEstimate::Value(err),
        })
    }

    fn failed(t_ab: f64, class: CausalClass, e: &Error) -> SweepRow {
        SweepRow {
            t_ab,
            l_jj: f64::NAN,
            abs_m: f64::NAN,
            abs_m_plus: f64::NAN,
            abs_m_minus: f64::NAN,
            n_total: f64::NAN,
            n_plus: f64::NAN,
            n_minus: f64::NAN,
            estimator_i: f64::NAN,
            i_flag: false,
            causal_class: class,
            err: ErrEstimate::Failed(e.kind()),
        }
    }

    pub fn to_csv(&self) -> String {
        let err = match &self.err {
            ErrEstimate::Value(v) => fmt12(*v),
            ErrEstimate::Failed(k) => format!("error:{k}"),
        };
        [
            fmt12(self.t_ab),
            fmt12(self.l_jj),
            fmt12(self.abs_m),
            fmt12(self.abs_m_plus),
            fmt12(self.abs_m_minus),
            fmt12(self.n_total),
            fmt12(self.n_plus),
            fmt12(self.n_minus),
            fmt12(self.estimator_i),
            self.i_flag.to_string(),
            self.causal_class.as_str().to_string(),
            err,
        ]
        .join(",")
    }
}

/// Twelve significant digits in scientific notation.
pub fn fmt12(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.11e}")
    }
}

/// Matrix elements and entanglement measures at the configured t_AB.
pub fn run_point(cfg: &PairConfig, opts: &EvalOptions) -> Result<SweepRow> {
    let me = compute(cfg, opts)?;
    SweepRow::from_elements(cfg.t_ab(), &me, causal_class(cfg))
}

/// Evaluates every grid point (in parallel); failures become in-row errors.
pub fn run_sweep(cfg: &PairConfig, grid: &[f64], opts: &EvalOptions) -> Vec<SweepRow> {
    grid.par_iter()
        .map(|&t| {
            let c = cfg.with_t_ab(t);
            run_point(&c, opts).unwrap_or_else(|e| SweepRow::failed(t, causal_class(&c), &e))
        })
        .collect()
}

pub fn write_csv<W: Write>(mut w: W, rows: &[SweepRow]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(w, "{}", r.to_csv())?;
    }
    Ok(())
}

/// Parsed CSV record: numeric columns as f64 plus the three text columns.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRecord {
    pub numbers: [f64; 9],
    pub i_flag: bool,
    pub causal_class: String,
    pub err_estimate: String,
}

pub fn read_csv(text: &str) -> Result<Vec<CsvRecord>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = rd
        .headers()
        .map_err(|e| Error::Config(format!("CSV header: {e}")))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header `{header}`")));
    }
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| Error::Config(format!("CSV record: {e}")))?;
        let mut numbers = [0.0; 9];
        for (i, n) in numbers.iter_mut().enumerate() {
            *n = rec[i]
                .parse()
                .map_err(|_| Error::Config(format!("CSV field `{}` is not a number", &rec[i])))?;
        }
        out.push(CsvRecord {
            numbers,
            i_flag: &rec[9] == "true",
            causal_class: rec[10].to_string(),
            err_estimate: rec[11].to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use udw_core::model::FieldSpec;

    #[test]
    fn format_round_trip() {
        for &x in &[1.0, -3.25e-14, 7.099999999999, 1.234567890123456e200, 0.0, 5e-324] {
            let s = fmt12(x);
            let y: f64 = s.parse().unwrap();
            assert_eq!(fmt12(y), s);
        }
    }

    #[test]
    fn zero_coupling_row() {
        let mut c = PairConfig::new(FieldSpec::massless(3), 7.0, 7.0, 1.0);
        c.coupling = 0.0;
        let r = run_point(&c, &EvalOptions::default()).unwrap();
        assert_eq!((r.l_jj, r.abs_m, r.n_total, r.estimator_i), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn failed_rows_keep_schema() {
        let r = SweepRow::failed(1.5, CausalClass::Spacelike, &Error::Regime("x".into()));
        let line = r.to_csv();
        assert_eq!(line.split(',').count(), CSV_HEADER.split(',').count());
        assert!(line.ends_with("error:regime"));
    }
}
