//! Smeared commutator table for the figures interface.

use crate::sweep::fmt12;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::Write;
use udw_core::model::FieldSpec;
use udw_core::wightman::{commutator_numeric, smeared_commutator, SpacetimeInterval, TestFunctionPair};
use udw_core::Result;

pub const COMMUTATOR_HEADER: &str = "dt_T,dx_T,im_c_minus_numeric,im_c_minus_closed";

#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorRow {
    pub dt: f64,
    pub dx: f64,
    pub numeric: f64,
    /// NaN where no closed form exists (massive or even n ≥ 4)
    pub closed: f64,
}

impl CommutatorRow {
    pub fn to_csv(&self) -> String {
        [fmt12(self.dt), fmt12(self.dx), fmt12(self.numeric), fmt12(self.closed)].join(",")
    }
}

/// Im C⁻ averaged over Δt with a unit-area Gaussian of width `w`. The closed
/// column uses two test functions of width w/√2, whose overlap is that Gaussian.
pub fn commutator_point(field: &FieldSpec, dt: f64, dx: f64, w: f64) -> Result<CommutatorRow> {
    let iv = SpacetimeInterval::new(dt, dx)?;
    let numeric = commutator_numeric(field, iv, w)?.value.im;
    let closed = if field.mass == 0.0 && (field.n <= 2 || field.n % 2 == 1) {
        let s = w / 2f64.sqrt();
        let f = TestFunctionPair { a: (dt, s), b: (0.0, s) };
        smeared_commutator(field.n, &f, dx)?.im / (PI * s * s)
    } else {
        f64::NAN
    };
    Ok(CommutatorRow { dt, dx, numeric, closed })
}

pub fn commutator_table(field: &FieldSpec, grid: &[f64], dx: f64, w: f64) -> Result<Vec<CommutatorRow>> {
    grid.par_iter().map(|&t| commutator_point(field, t, dx, w)).collect()
}

pub fn write_commutator_csv<W: Write>(mut out: W, rows: &[CommutatorRow]) -> std::io::Result<()> {
    writeln!(out, "{COMMUTATOR_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    Ok(())
}
