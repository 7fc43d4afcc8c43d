//! Second-order density-matrix elements of two detectors coupled to the field:
//! local excitation probabilities L_jj, the cross term L_AB, and the nonlocal
//! element M with its anticommutator (M⁺) and commutator (M⁻) parts.
//!
//! Momentum-space integrals are evaluated with the common factor
//! e^{-Ω²/2 + iΩ t_AB} taken out, so that quadrature tolerances act on O(1)
//! quantities. Every element is computed per λ̃² and rescaled at the end.

mod position;

pub use position::{m_plus_truncated_momentum, m_positionspace_oracle, switching_transform, PositionSpaceM};

use crate::error::{Error, Result};
use crate::model::{smearing_factor, FieldSpec, PairConfig, SmearingSpec, SwitchingSpec};
use crate::quadrature::{
    integrate_adaptive_breaks, integrate_oscillatory_tail, integrate_semiinfinite_damped,
    QuadratureResult, Tolerance,
};
use crate::specfun::{dawson, erfi, faddeeva_w, gamma, kummer1f1_dd, reg_hyp0f1};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

const SQRT_PI: f64 = 1.772_453_850_905_516;
/// Beyond this momentum the Gaussian parts of the kernels are below 1e-21.
const K_INTERIOR: f64 = 10.0;

/// Deliberate corruption of one kernel, used to check that the validation
/// suite notices it.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    FlipK3Sign,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub tol: Tolerance,
    /// UV regulator ε·T for local terms of truncated switching, whose
    /// pointlike excitation probability diverges logarithmically.
    pub uv_eps: f64,
    #[doc(hidden)]
    pub fault: Fault,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            tol: Tolerance::default(),
            uv_eps: 0.0125,
            fault: Fault::None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixElements {
    pub l_aa: QuadratureResult,
    pub l_bb: QuadratureResult,
    pub l_ab: QuadratureResult,
    pub m: QuadratureResult,
    pub m_plus: QuadratureResult,
    pub m_minus: QuadratureResult,
}

/// Precomputed quantities shared by the momentum integrands.
#[derive(Debug, Clone, Copy)]
struct Ctx {
    n: usize,
    b: f64,
    l: f64,
    c: f64,
    field: FieldSpec,
    smearing: SmearingSpec,
    cplus: f64,
    cminus: f64,
    /// π^{n/2}/(2π)^n
    ang: f64,
    fault: Fault,
}

impl Ctx {
    fn new(cfg: &PairConfig, fault: Fault) -> Ctx {
        let n = cfg.field.n;
        let nf = n as f64;
        Ctx {
            n,
            b: nf / 2.0,
            l: cfg.distance(),
            c: cfg.t_ab(),
            field: cfg.field,
            smearing: cfg.smearing,
            cplus: 2f64.powf(-nf - 1.0) * PI.powf(1.0 - nf / 2.0),
            cminus: 2f64.powf(-nf) * PI.powf((1.0 - nf) / 2.0),
            ang: PI.powf(nf / 2.0) / (2.0 * PI).powf(nf),
            fault,
        }
    }

    /// k^{n-1}/ω
    fn measure(&self, k: f64) -> f64 {
        let w = self.field.omega(k);
        if self.field.mass == 0.0 {
            k.powi(self.n as i32 - 2)
        } else {
            k.powi(self.n as i32 - 1) / w
        }
    }

    fn hyp(&self, k: f64) -> f64 {
        let x = k * self.l;
        reg_hyp0f1(self.b, -0.25 * x * x).unwrap_or(f64::NAN)
    }
}

fn cis(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, x)
}

/// e^{-c²/2} F((ω + ic)/√2) without overflow for large |c|.
fn scaled_dawson(w: f64, c: f64) -> Complex64 {
    let ca = c.abs();
    let z = Complex64::new(w, ca) / SQRT_2;
    let v = if 0.5 * ca * ca < 600.0 {
        (-0.5 * ca * ca).exp() * dawson(z).unwrap_or(Complex64::new(f64::NAN, 0.0))
    } else {
        scaled_dawson_far(w, ca)
    };
    if c < 0.0 {
        v.conj()
    } else {
        v
    }
}

/// (√π/2) i (e^{-ω²/2 - iωc} - e^{-c²/2} w((ω + ic)/√2)) for c ≥ 0.
fn scaled_dawson_far(w: f64, c: f64) -> Complex64 {
    let z = Complex64::new(w, c) / SQRT_2;
    let wz = faddeeva_w(z).unwrap_or(Complex64::new(f64::NAN, 0.0));
    Complex64::new(0.0, 0.5 * SQRT_PI) * ((-0.5 * w * w).exp() * cis(-w * c) - (-0.5 * c * c).exp() * wz)
}

/// The four kernels with e^{-Ω²/2 + iΩ t_AB} removed.
fn kernels_reduced(k: f64, x: &Ctx) -> [Complex64; 4] {
    let w = x.field.omega(k);
    let f0 = x.hyp(k) * smearing_factor(k, &x.smearing);
    let g = (-0.5 * w * w).exp();
    let k1 = x.cplus * f0 * g * cis(-x.c * w);
    let k2 = x.cplus * f0 * g * cis(x.c * w);
    let d = scaled_dawson(w, x.c);
    let mi = Complex64::new(0.0, -x.cminus * f0);
    let mut k3 = mi * d;
    let k4 = mi * d.conj();
    if x.fault == Fault::FlipK3Sign {
        k3 = -k3;
    }
    [k1, k2, k3, k4]
}

/// e^{E} erfi(z) for E + z² = -c²/2, free of intermediate overflow.
fn exp_erfi(e: Complex64, z: Complex64, c: f64) -> Complex64 {
    let nan = Complex64::new(f64::NAN, 0.0);
    if z.norm() < 1.0 {
        return e.exp() * erfi(z).unwrap_or(nan);
    }
    let s = (-0.5 * c * c).exp();
    let i = Complex64::new(0.0, 1.0);
    if z.im > 0.0 {
        i * (e.exp() - s * faddeeva_w(z).unwrap_or(nan))
    } else {
        -i * (e.exp() - s * faddeeva_w(-z).unwrap_or(nan))
    }
}

/// Closed form of the time integrals, split into its Gaussian (anticommutator)
/// part and its error-function part, with e^{-Ω²/2 + iΩ t_AB} removed. Built
/// from J(a,b) = -i√π e^{-a²-b²/4} erfi((a+b/2)/√2).
fn script_k_reduced(w: f64, c: f64) -> (Complex64, Complex64) {
    let g = (-0.5 * w * w).exp();
    let plus = 0.5 * PI * g * (cis(-c * w) + cis(c * w));
    let e1 = Complex64::new(-0.5 * w * w, -c * w);
    let e2 = Complex64::new(-0.5 * w * w, c * w);
    let z1 = Complex64::new(w, c) / SQRT_2;
    let z2 = Complex64::new(w, -c) / SQRT_2;
    let x = exp_erfi(e1, z1, c) + exp_erfi(e2, z2, c);
    let minus = Complex64::new(0.0, -0.5 * PI) * x;
    (plus, minus)
}

/// Full kernel K(k) = K₁+K₂+K₃+K₄ from the J(a,b) closed form, including the
/// angular factor, smearing and the e^{-Ω²/2 + iΩ t_AB} prefactor.
pub fn kernel_script_k(k: f64, cfg: &PairConfig) -> Result<Complex64> {
    let (p, m) = kernel_script_k_parts(k, cfg)?;
    Ok(p + m)
}

/// The closed-form kernel split into its Gaussian part (equal to K₁+K₂) and
/// its error-function part (equal to K₃+K₄).
pub fn kernel_script_k_parts(k: f64, cfg: &PairConfig) -> Result<(Complex64, Complex64)> {
    cfg.validate()?;
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::domain("kernel_script_k", format!("momentum must be ≥ 0, got {k}")));
    }
    let x = Ctx::new(cfg, Fault::None);
    let w = x.field.omega(k);
    let (p, m) = script_k_reduced(w, x.c);
    let s = x.ang * x.hyp(k) * smearing_factor(k, &x.smearing) * prefactor(cfg);
    Ok((finite(s * p, "kernel_script_k")?, finite(s * m, "kernel_script_k")?))
}

fn prefactor(cfg: &PairConfig) -> Complex64 {
    let om = cfg.gap();
    (-0.5 * om * om).exp() * cis(om * cfg.t_ab())
}

fn finite(v: Complex64, what: &'static str) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::range(what, "non-finite value"))
    }
}

/// Kernel K_j(k), j ∈ {1,2,3,4}; M = -λ² e^{2iΩt_A} ∫dk k^{n-1}/ω Σ K_j.
pub fn kernel_k(j: usize, k: f64, cfg: &PairConfig) -> Result<Complex64> {
    cfg.validate()?;
    if !(1..=4).contains(&j) {
        return Err(Error::domain("kernel_k", format!("kernel index {j} not in 1..=4")));
    }
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::domain("kernel_k", format!("momentum must be ≥ 0, got {k}")));
    }
    let x = Ctx::new(cfg, Fault::None);
    finite(kernels_reduced(k, &x)[j - 1] * prefactor(cfg), "kernel_k")
}

fn split_tol(t: &Tolerance) -> Tolerance {
    Tolerance {
        rel: t.rel,
        abs: 0.5 * t.abs,
    }
}

fn interior_breaks(kmin: f64, kmax: f64) -> Vec<f64> {
    let mut p = vec![kmin];
    if kmin > 0.0 && kmin < 0.1 {
        let mut q = kmin * 10.0;
        while q < 0.1 {
            p.push(q);
            q *= 10.0;
        }
    }
    let mut k = (kmin.floor() + 1.0).max(1.0);
    if kmin < 0.5 {
        p.push(0.5f64.max(kmin));
    }
    while k < kmax {
        p.push(k);
        k += 1.0;
    }
    p.push(kmax);
    p.dedup();
    p
}

/// ∫_{kmin}^∞ for integrands whose decay beyond K_INTERIOR is only algebraic
/// and oscillating at frequency L.
fn radial_oscillatory<F: Fn(f64) -> Complex64>(
    f: F,
    kmin: f64,
    l: f64,
    tol: &Tolerance,
) -> Result<QuadratureResult> {
    let t = split_tol(tol);
    let kin = K_INTERIOR.max(kmin + 1.0);
    let mut r = integrate_adaptive_breaks(&f, &interior_breaks(kmin, kin), &t)?;
    let tail = integrate_oscillatory_tail(&f, l, kin, &t)?;
    r.add(&tail);
    Ok(r)
}

fn radial_damped<F: Fn(f64) -> Complex64>(f: F, kmin: f64, tol: &Tolerance) -> Result<QuadratureResult> {
    if kmin > 0.0 && kmin < 1.0 {
        let t = split_tol(tol);
        let mut r = integrate_adaptive_breaks(&f, &interior_breaks(kmin, 1.0), &t)?;
        r.add(&integrate_semiinfinite_damped(&f, 1.0, 2.0, &t)?);
        return Ok(r);
    }
    integrate_semiinfinite_damped(&f, kmin, 2.0, tol)
}

fn ensure_gaussian(cfg: &PairConfig, what: &str) -> Result<()> {
    if cfg.switching != SwitchingSpec::Gaussian {
        return Err(Error::Regime(format!(
            "{what}: momentum-space kernels need Gaussian switching"
        )));
    }
    Ok(())
}

fn pointlike(cfg: &PairConfig) -> bool {
    cfg.smearing == SmearingSpec::Pointlike
}

/// Excitation probability per λ̃² for Gaussian switching, by radial quadrature.
pub fn ljj_numeric(field: &FieldSpec, gap: f64, smearing: &SmearingSpec, tol: &Tolerance) -> Result<QuadratureResult> {
    field.validate()?;
    let nf = field.n as f64;
    let sph = PI.powf(nf / 2.0) / (gamma(nf / 2.0)? * (2.0 * PI).powf(nf));
    let f = |k: f64| {
        let w = field.omega(k);
        let meas = if field.mass == 0.0 {
            k.powi(field.n as i32 - 2)
        } else {
            k.powi(field.n as i32 - 1) / w
        };
        Complex64::new(meas * PI * (-gap * w - 0.5 * w * w).exp() * smearing_factor(k, smearing), 0.0)
    };
    let r = radial_damped(f, field.k_min(), tol)?;
    Ok(r.scaled(Complex64::new(sph * (-0.5 * gap * gap).exp(), 0.0)))
}

/// Closed form of the massless pointlike excitation probability (n ≥ 2),
/// Γ((n-1)/2) ₁F₁((2-n)/2; 1/2; -Ω²/2) - √2 Ω Γ(n/2) ₁F₁((3-n)/2; 3/2; -Ω²/2)
/// with its prefactor. The difference cancels strongly for large Ω, so it is
/// formed in double-double arithmetic.
pub fn ljj_closed_massless(n: usize, gap: f64) -> Result<f64> {
    use crate::specfun::dd::Dd;
    if n < 2 {
        return Err(Error::domain("ljj_closed_massless", "requires n ≥ 2 (n = 1 is IR divergent)"));
    }
    if !gap.is_finite() || gap.abs() > 30.0 {
        return Err(Error::domain("ljj_closed_massless", format!("gap {gap} outside |Ω| ≤ 30")));
    }
    // Γ(m/2) exactly in double-double
    let half_gamma = |m: usize| -> Dd {
        if m % 2 == 0 {
            let mut g = Dd::ONE;
            for j in 1..m / 2 {
                g = g * Dd::new(j as f64);
            }
            g
        } else {
            let mut g = Dd::SQRT_PI;
            let mut x = 0.5;
            while x < m as f64 / 2.0 - 0.25 {
                g = g * Dd::new(x);
                x += 1.0;
            }
            g
        }
    };
    let nf = n as f64;
    let z = -0.5 * gap * gap;
    let m1 = kummer1f1_dd((2.0 - nf) / 2.0, 0.5, z);
    let m2 = kummer1f1_dd((3.0 - nf) / 2.0, 1.5, z);
    let bracket = half_gamma(n - 1) * m1 - Dd::SQRT_2 * Dd::new(gap) * half_gamma(n) * m2;
    // ∫k^{n-2} e^{-(Ω+k)²/2} dk = 2^{(n-3)/2} · bracket
    let integral = bracket.to_f64() * 2f64.powf((nf - 3.0) / 2.0);
    let sph = PI.powf(nf / 2.0) / (gamma(nf / 2.0)? * (2.0 * PI).powf(nf));
    Ok(PI * sph * integral)
}

/// Cross term L_AB per λ̃² for Gaussian switching.
pub fn lab_cross(cfg: &PairConfig, tol: &Tolerance) -> Result<QuadratureResult> {
    cfg.validate()?;
    ensure_gaussian(cfg, "lab_cross")?;
    let x = Ctx::new(cfg, Fault::None);
    let gap = cfg.gap();
    let f = |k: f64| {
        let w = x.field.omega(k);
        let amp = x.measure(k) * x.ang * x.hyp(k) * smearing_factor(k, &x.smearing) * PI * (-gap * w - 0.5 * w * w).exp();
        amp * cis(w * x.c)
    };
    let r = radial_damped(f, cfg.field.k_min(), tol)?;
    Ok(r.scaled(prefactor(cfg)))
}

fn global_phase(cfg: &PairConfig) -> Complex64 {
    -cis(2.0 * cfg.gap() * cfg.a.center) * prefactor(cfg)
}

/// Anticommutator part M⁺ per λ̃² (Gaussian switching).
pub fn m_plus(cfg: &PairConfig, opts: &EvalOptions) -> Result<QuadratureResult> {
    cfg.validate()?;
    ensure_gaussian(cfg, "m_plus")?;
    let x = Ctx::new(cfg, opts.fault);
    let f = |k: f64| {
        let ks = kernels_reduced(k, &x);
        x.measure(k) * (ks[0] + ks[1])
    };
    Ok(radial_damped(f, cfg.field.k_min(), &opts.tol)?.scaled(global_phase(cfg)))
}

/// Commutator part M⁻ per λ̃² (Gaussian switching). Integrated from k = 0 for
/// every field: the integrand is finite there even for the massless field in
/// 1+1, so the IR cutoff is not applied.
pub fn m_minus(cfg: &PairConfig, opts: &EvalOptions) -> Result<QuadratureResult> {
    cfg.validate()?;
    ensure_gaussian(cfg, "m_minus")?;
    let x = Ctx::new(cfg, opts.fault);
    let f = |k: f64| {
        let ks = kernels_reduced(k, &x);
        x.measure(k) * (ks[2] + ks[3])
    };
    let r = if pointlike(cfg) {
        radial_oscillatory(f, 0.0, x.l, &opts.tol)?
    } else {
        radial_damped(f, 0.0, &opts.tol)?
    };
    Ok(r.scaled(global_phase(cfg)))
}

/// Full M per λ̃² (Gaussian switching), from the closed-form kernel K(k).
/// Its anticommutator part uses the same IR cutoff as M⁺, its commutator
/// part the same lower limit as M⁻, so M = M⁺ + M⁻ holds exactly.
pub fn m_total(cfg: &PairConfig, opts: &EvalOptions) -> Result<QuadratureResult> {
    cfg.validate()?;
    ensure_gaussian(cfg, "m_total")?;
    let x = Ctx::new(cfg, opts.fault);
    let kmin = cfg.field.k_min();
    let f = |k: f64| {
        let w = x.field.omega(k);
        let (p, m) = script_k_reduced(w, x.c);
        let p = if k >= kmin { p } else { Complex64::new(0.0, 0.0) };
        x.measure(k) * x.ang * x.hyp(k) * smearing_factor(k, &x.smearing) * (p + m)
    };
    let r = if pointlike(cfg) {
        if kmin > 0.0 {
            let t = split_tol(&opts.tol);
            let mut r = integrate_adaptive_breaks(&f, &[0.0, kmin], &t)?;
            r.add(&radial_oscillatory(&f, kmin, x.l, &t)?);
            r
        } else {
            radial_oscillatory(f, 0.0, x.l, &opts.tol)?
        }
    } else {
        let t = split_tol(&opts.tol);
        let mut r = if kmin > 0.0 {
            integrate_adaptive_breaks(&f, &[0.0, kmin], &t)?
        } else {
            QuadratureResult::zero()
        };
        r.add(&radial_damped(&f, kmin, &t)?);
        r
    };
    Ok(r.scaled(global_phase(cfg)))
}

fn scale(r: QuadratureResult, s: f64) -> QuadratureResult {
    r.scaled(Complex64::new(s, 0.0))
}

/// All second-order elements for a detector pair.
pub fn compute(cfg: &PairConfig, opts: &EvalOptions) -> Result<MatrixElements> {
    cfg.validate()?;
    let lam2 = cfg.coupling * cfg.coupling;
    let out = match cfg.switching {
        SwitchingSpec::Gaussian => {
            let l = ljj_numeric(&cfg.field, cfg.gap(), &cfg.smearing, &opts.tol)?;
            MatrixElements {
                l_aa: l,
                l_bb: l,
                l_ab: lab_cross(cfg, &opts.tol)?,
                m: m_total(cfg, opts)?,
                m_plus: m_plus(cfg, opts)?,
                m_minus: m_minus(cfg, opts)?,
            }
        }
        SwitchingSpec::TruncatedGaussian { .. } => position::compute_truncated(cfg, opts)?,
    };
    Ok(MatrixElements {
        l_aa: scale(out.l_aa, lam2),
        l_bb: scale(out.l_bb, lam2),
        l_ab: scale(out.l_ab, lam2),
        m: scale(out.m, lam2),
        m_plus: scale(out.m_plus, lam2),
        m_minus: scale(out.m_minus, lam2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FieldSpec;

    fn cfg(n: usize, t: f64) -> PairConfig {
        PairConfig::new(FieldSpec::massless(n), 7.0, 7.0, t)
    }

    #[test]
    fn ljj_3d_zero_gap_is_one_over_four_pi() {
        let v = ljj_closed_massless(3, 0.0).unwrap();
        assert!((v - 1.0 / (4.0 * PI)).abs() < 1e-15);
        let r = ljj_numeric(&FieldSpec::massless(3), 0.0, &SmearingSpec::Pointlike, &Tolerance::default()).unwrap();
        assert!((r.value.re - v).abs() < 1e-9 * v);
    }

    #[test]
    fn ljj_closed_matches_numeric() {
        let tol = Tolerance::new(1e-11, 1e-300).unwrap();
        for n in 2..=6 {
            for &om in &[0.0, 3.0, 7.0, -2.0] {
                let a = ljj_closed_massless(n, om).unwrap();
                let b = ljj_numeric(&FieldSpec::massless(n), om, &SmearingSpec::Pointlike, &tol).unwrap();
                assert!((a - b.value.re).abs() < 1e-9 * a, "n={n} Ω={om}: {a} {}", b.value.re);
            }
        }
    }

    #[test]
    fn kernel_sum_matches_closed_form() {
        let c = cfg(4, 3.3);
        for &k in &[0.01, 0.5, 2.0, 7.5, 20.0] {
            let s: Complex64 = (1..=4).map(|j| kernel_k(j, k, &c).unwrap()).sum();
            let full = kernel_script_k(k, &c).unwrap();
            assert!((s - full).norm() < 1e-12 * full.norm().max(1e-300), "k={k}");
        }
    }

    #[test]
    fn scaled_dawson_branches_agree() {
        for &(w, c) in &[(0.3, 2.0), (5.0, 10.0), (12.0, -7.0)] {
            let direct = (-0.5 * c * c as f64).exp() * dawson(Complex64::new(w, c) / SQRT_2).unwrap();
            assert!((scaled_dawson(w, c) - direct).norm() < 1e-13 * direct.norm());
        }
        for &(w, c) in &[(3.0f64, 6.0f64), (0.2, 20.0), (15.0, 9.0)] {
            let direct = (-0.5 * c * c).exp() * dawson(Complex64::new(w, c) / SQRT_2).unwrap();
            assert!((scaled_dawson_far(w, c) - direct).norm() < 1e-12 * direct.norm(), "w={w} c={c}");
        }
        let v = scaled_dawson(3.0, 40.0);
        assert!(v.re.is_finite() && v.norm() > 0.0);
    }

    #[test]
    fn split_is_consistent() {
        let o = EvalOptions::default();
        for &t in &[0.0, 7.0, 10.0] {
            let c = cfg(3, t);
            let m = m_total(&c, &o).unwrap();
            let p = m_plus(&c, &o).unwrap();
            let q = m_minus(&c, &o).unwrap();
            let err = m.abs_error + p.abs_error + q.abs_error;
            assert!((m.value - p.value - q.value).norm() <= 10.0 * err + 1e-10 * m.value.norm(), "t={t}");
        }
    }

    #[test]
    fn flipped_k3_breaks_split() {
        let o = EvalOptions {
            fault: Fault::FlipK3Sign,
            ..EvalOptions::default()
        };
        let c = cfg(3, 7.0);
        let m = m_total(&c, &o).unwrap();
        let p = m_plus(&c, &o).unwrap();
        let q = m_minus(&c, &o).unwrap();
        assert!((m.value - p.value - q.value).norm() > 1e-3 * m.value.norm());
    }
}
