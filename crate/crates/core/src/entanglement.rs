//! Leading-order two-detector state, negativity and the estimator of
//! communication-mediated entanglement.

use crate::error::{Error, Result};
use crate::matrix_elements::MatrixElements;
use crate::model::CausalClass;
use nalgebra::Matrix4;
use num_complex::Complex64;

/// Two-detector state in the ordered basis {gg, ge, eg, ee}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(pub Matrix4<Complex64>);

impl DensityMatrix4 {
    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self.0 - self.0.adjoint()).iter().all(|z| z.norm() <= tol)
    }

    /// Partial transpose on the second detector.
    pub fn partial_transpose(&self) -> Matrix4<Complex64> {
        let mut out = Matrix4::zeros();
        for a in 0..2 {
            for b in 0..2 {
                for ap in 0..2 {
                    for bp in 0..2 {
                        out[(2 * a + bp, 2 * ap + b)] = self.0[(2 * a + b, 2 * ap + bp)];
                    }
                }
            }
        }
        out
    }
}

fn require_perturbative(me: &MatrixElements) -> Result<()> {
    let s = me.l_aa.value.re + me.l_bb.value.re;
    if !(s < 1.0) {
        return Err(Error::Regime(format!(
            "L_AA + L_BB = {s} ≥ 1: coupling too large for the perturbative state"
        )));
    }
    Ok(())
}

/// Density matrix from second-order elements. Requires L_AA + L_BB < 1.
pub fn assemble_rho(me: &MatrixElements) -> Result<DensityMatrix4> {
    require_perturbative(me)?;
    let laa = me.l_aa.value.re;
    let lbb = me.l_bb.value.re;
    let z = Complex64::new(0.0, 0.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    let m = me.m.value;
    let lab = me.l_ab.value;
    #[rustfmt::skip]
    let mat = Matrix4::new(
        r(1.0 - laa - lbb), z,          z,    m.conj(),
        z,                  r(lbb),     lab,  z,
        z,                  lab.conj(), r(laa), z,
        m,                  z,          z,    z,
    );
    Ok(DensityMatrix4(mat))
}

/// max{0, -E} with E = ½(L_AA + L_BB - √((L_AA - L_BB)² + 4|M|²)).
pub fn negativity_general(l_aa: f64, l_bb: f64, m_abs: f64) -> f64 {
    let e = 0.5 * (l_aa + l_bb - ((l_aa - l_bb).powi(2) + 4.0 * m_abs * m_abs).sqrt());
    (-e).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativitySplit {
    pub n: f64,
    pub n_plus: f64,
    pub n_minus: f64,
}

/// Negativity of identical detectors and its parts N± = max{0, |M±| - L_jj}.
/// The total uses the complex sum M⁺ + M⁻, so interference between the two
/// parts is kept.
pub fn negativity_split(l_jj: f64, m_plus: Complex64, m_minus: Complex64) -> NegativitySplit {
    let part = |a: f64| (a - l_jj).max(0.0);
    NegativitySplit {
        n: part((m_plus + m_minus).norm()),
        n_plus: part(m_plus.norm()),
        n_minus: part(m_minus.norm()),
    }
}

/// N⁻/N, or 0 when N = 0. Not clamped: values above 1 are possible.
pub fn estimator_i(n: f64, n_minus: f64) -> f64 {
    if n > 0.0 {
        n_minus / n
    } else {
        0.0
    }
}

/// Smallest eigenvalue of the partial transpose, by direct eigensolution.
pub fn ptrans_eigen_oracle(rho: &DensityMatrix4) -> f64 {
    let pt = rho.partial_transpose();
    let pt = (pt + pt.adjoint()) * Complex64::new(0.5, 0.0);
    pt.symmetric_eigen().eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub n: f64,
    pub n_plus: f64,
    pub n_minus: f64,
    pub i: f64,
    /// set when I > 1
    pub i_flag: bool,
    pub causal_class: CausalClass,
}

/// Requires L_AA + L_BB < 1, like the density matrix it describes.
pub fn report(me: &MatrixElements, class: CausalClass) -> Result<EntanglementReport> {
    require_perturbative(me)?;
    let l = 0.5 * (me.l_aa.value.re + me.l_bb.value.re);
    let s = negativity_split(l, me.m_plus.value, me.m_minus.value);
    let i = estimator_i(s.n, s.n_minus);
    Ok(EntanglementReport {
        n: s.n,
        n_plus: s.n_plus,
        n_minus: s.n_minus,
        i,
        i_flag: i > 1.0,
        causal_class: class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureResult;

    fn q(v: Complex64) -> QuadratureResult {
        QuadratureResult {
            value: v,
            abs_error: 0.0,
            evaluations: 0,
        }
    }

    fn me(laa: f64, lbb: f64, lab: Complex64, m: Complex64) -> MatrixElements {
        MatrixElements {
            l_aa: q(laa.into()),
            l_bb: q(lbb.into()),
            l_ab: q(lab),
            m: q(m),
            m_plus: q(m),
            m_minus: q(Complex64::new(0.0, 0.0)),
        }
    }

    #[test]
    fn zero_elements_give_ground_state() {
        let z = Complex64::new(0.0, 0.0);
        let r = assemble_rho(&me(0.0, 0.0, z, z)).unwrap();
        assert_eq!(r.0[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(r.0.iter().filter(|x| x.norm() > 0.0).count(), 1);
        assert!(ptrans_eigen_oracle(&r) >= -1e-15);
    }

    #[test]
    fn hermitian_unit_trace() {
        let r = assemble_rho(&me(0.02, 0.03, Complex64::new(0.01, 0.004), Complex64::new(-0.02, 0.05))).unwrap();
        assert!(r.is_hermitian(0.0));
        assert!((r.trace() - 1.0).norm() < 1e-16);
    }

    #[test]
    fn perturbativity_enforced() {
        let z = Complex64::new(0.0, 0.0);
        assert!(matches!(assemble_rho(&me(0.6, 0.5, z, z)), Err(Error::Regime(_))));
    }

    #[test]
    fn negativity_values() {
        assert_eq!(negativity_general(0.1, 0.1, 0.05), 0.0);
        assert!((negativity_general(0.1, 0.1, 0.3) - 0.2).abs() < 1e-15);
        let v = negativity_general(0.01, 0.02, 0.05);
        assert!((v - 0.035_249_378_105_604_45).abs() < 1e-12);
    }

    #[test]
    fn negativity_matches_partial_transpose() {
        // the (ee,ee) entry is zero at this order, so agreement is up to O(λ⁴)
        let (laa, lbb, m) = (0.01, 0.02, Complex64::new(0.03, 0.04));
        let r = assemble_rho(&me(laa, lbb, Complex64::new(0.005, 0.0), m)).unwrap();
        let n_eig = (-ptrans_eigen_oracle(&r)).max(0.0);
        let n = negativity_general(laa, lbb, m.norm());
        assert!((n - n_eig).abs() <= (laa + lbb).powi(2), "{n} {n_eig}");
    }

    #[test]
    fn split_and_estimator() {
        let s = negativity_split(0.1, Complex64::new(0.05, 0.0), Complex64::new(0.0, 0.3));
        assert_eq!(s.n_plus, 0.0);
        assert!((s.n_minus - 0.2).abs() < 1e-15);
        let s = negativity_split(0.1, Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.0));
        assert_eq!(s.n, s.n_plus);
        assert_eq!(estimator_i(0.0, 0.3), 0.0);
        assert_eq!(estimator_i(0.2, 0.1), 0.5);
        assert_eq!(estimator_i(0.2, 0.2), 1.0);
    }
}
