//! Position-space evaluation of M for the massless field in 3+1, and the
//! momentum-space pieces needed for truncated switching.
//!
//! In position space M = -λ² ∫∫ dt dt' e^{iΩ(t+t')} χ_A(t) χ_B(t') W_ε(|t-t'|, L)
//! with W_ε(Δt, L) = -1/(4π²((Δt - iε)² - L²)), evaluated on a ladder of ε and
//! extrapolated to ε → 0. With u = t - t', s = t + t' the s integral is done in
//! closed form, leaving one adaptive integral over u.

use super::{global_phase, Ctx, EvalOptions, MatrixElements};
use crate::error::{Error, Result};
use crate::model::{PairConfig, SmearingSpec, SwitchingSpec};
use crate::quadrature::{
    extrapolate_to_zero, integrate_adaptive, integrate_adaptive_breaks, EpsSeries, QuadratureResult,
    Tolerance, DEFAULT_EPS_LADDER,
};
use crate::specfun::{exp_times_w, faddeeva_w, gamma};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Fourier transform ∫χ(t) e^{iwt} dt of the switching profile centred at 0.
/// For the cut Gaussian:
/// √π [e^{-w²/4} - Re(e^{-a² - iaw} w(-w/2 + ia))].
pub fn switching_transform(w: f64, s: &SwitchingSpec) -> f64 {
    match *s {
        SwitchingSpec::Gaussian => SQRT_PI * (-0.25 * w * w).exp(),
        SwitchingSpec::TruncatedGaussian { half_width: a } => {
            let fw = faddeeva_w(Complex64::new(-0.5 * w, a)).unwrap_or(Complex64::new(f64::NAN, 0.0));
            let edge = Complex64::from_polar((-a * a).exp(), -a * w) * fw;
            SQRT_PI * ((-0.25 * w * w).exp() - edge.re)
        }
    }
}

/// erf((v - iΩ)/√2) split as (integer part, remainder) so that differences of
/// the integer parts cancel exactly.
fn erf_split(v: f64, om: f64) -> (f64, Complex64) {
    let z = Complex64::new(v, -om) / SQRT_2;
    let s = -z * z;
    let i = Complex64::new(0.0, 1.0);
    let nan = Complex64::new(f64::NAN, 0.0);
    if v >= 0.0 {
        (1.0, -exp_times_w(s, i * z).unwrap_or(nan))
    } else {
        (-1.0, exp_times_w(s, -i * z).unwrap_or(nan))
    }
}

/// ∫_{v1}^{v2} e^{-(v - iΩ)²/2} dv, i.e. e^{Ω²/2} ∫ e^{iΩv - v²/2} dv.
fn gauss_phase_segment(v1: f64, v2: f64, om: f64) -> Complex64 {
    let (k1, r1) = erf_split(v1, om);
    let (k2, r2) = erf_split(v2, om);
    (PI / 2.0).sqrt() * ((k2 - k1) + (r2 - r1))
}

/// The s-integral H(u) = ½ ∫ds e^{iΩs} χ_A((s+u)/2) χ_B((s-u)/2) with
/// e^{-Ω²/2 + iΩc} removed; A switched at 0, B at c.
fn h_reduced(u: f64, c: f64, om: f64, sw: &SwitchingSpec) -> Complex64 {
    let g = (-0.5 * (u + c) * (u + c)).exp();
    match *sw {
        SwitchingSpec::Gaussian => Complex64::new(0.5 * (2.0 * PI).sqrt() * g, 0.0),
        SwitchingSpec::TruncatedGaussian { half_width: a } => {
            let s1 = (-2.0 * a - u).max(2.0 * c + u - 2.0 * a);
            let s2 = (2.0 * a - u).min(2.0 * c + u + 2.0 * a);
            if s1 >= s2 {
                return Complex64::new(0.0, 0.0);
            }
            0.5 * g * gauss_phase_segment(s1 - c, s2 - c, om)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionSpaceM {
    pub m: QuadratureResult,
    pub m_plus: QuadratureResult,
    pub m_minus: QuadratureResult,
}

fn require_massless_3d_pointlike(cfg: &PairConfig, what: &str) -> Result<()> {
    if cfg.field.n != 3 || cfg.field.mass != 0.0 || cfg.smearing != SmearingSpec::Pointlike {
        return Err(Error::Config(format!(
            "{what}: only available for pointlike detectors and the massless field in 3+1"
        )));
    }
    Ok(())
}

/// ε-regulated pieces (∫H Re W_ε, ∫H Im W_ε) for one regulator.
fn regulated(cfg: &PairConfig, eps: f64, tol: &Tolerance) -> Result<(QuadratureResult, QuadratureResult)> {
    let c = cfg.t_ab();
    let l = cfg.distance();
    let om = cfg.gap();
    let half = match cfg.switching {
        SwitchingSpec::Gaussian => 12.0,
        SwitchingSpec::TruncatedGaussian { half_width } => 2.0 * half_width,
    };
    let (lo, hi) = (-c - half, -c + half);
    let mut pts = vec![lo, hi, -c, 0.0];
    for s in [-1.0, 1.0] {
        for d in [0.0, eps, 10.0 * eps, 100.0 * eps] {
            pts.push(s * l + d);
            pts.push(s * l - d);
        }
    }
    let mut pts: Vec<f64> = pts.into_iter().filter(|p| *p >= lo && *p <= hi).collect();
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup();
    let w = |u: f64| {
        let d = Complex64::new(u.abs(), -eps);
        -1.0 / (4.0 * PI * PI * (d * d - l * l))
    };
    let re = integrate_adaptive_breaks(|u| h_reduced(u, c, om, &cfg.switching) * w(u).re, &pts, tol)?;
    let im = integrate_adaptive_breaks(|u| h_reduced(u, c, om, &cfg.switching) * w(u).im, &pts, tol)?;
    Ok((re, im))
}

/// M, M⁺ and M⁻ per λ̃² by the position-space route. The regulator ladder is
/// shrunk by factors of 8 until the extrapolation error meets the tolerance.
pub fn m_positionspace_oracle(cfg: &PairConfig, opts: &EvalOptions) -> Result<PositionSpaceM> {
    cfg.validate()?;
    require_massless_3d_pointlike(cfg, "m_positionspace_oracle")?;
    let inner = Tolerance {
        rel: opts.tol.rel * 1e-3,
        abs: 1e-300,
    };
    let i = Complex64::new(0.0, 1.0);
    let mut best: Option<PositionSpaceM> = None;
    let mut factor = 1.0;
    for _ in 0..4 {
        let ladder: Vec<f64> = DEFAULT_EPS_LADDER.iter().map(|e| e * factor).collect();
        let vals = ladder
            .iter()
            .map(|&e| regulated(cfg, e, &inner))
            .collect::<Result<Vec<_>>>()?;
        let re: Vec<QuadratureResult> = vals.iter().map(|v| v.0).collect();
        let im: Vec<QuadratureResult> = vals.iter().map(|v| v.1).collect();
        let p = extrapolate_to_zero(&ladder, &re, EpsSeries::All)?;
        let q = extrapolate_to_zero(&ladder, &im, EpsSeries::All)?.scaled(i);
        let mut m = p;
        m.add(&q);
        let phase = global_phase(cfg);
        let out = PositionSpaceM {
            m: m.scaled(phase),
            m_plus: p.scaled(phase),
            m_minus: q.scaled(phase),
        };
        let err = p.abs_error + q.abs_error;
        let target = opts.tol.target(m.value.norm());
        if err <= target {
            return Ok(out);
        }
        if best.map_or(true, |b| err < b.m.abs_error) {
            best = Some(out);
        }
        factor /= 8.0;
    }
    let b = best.expect("at least one ladder evaluated");
    Err(Error::Accuracy {
        what: "m_positionspace_oracle: ε extrapolation did not converge".into(),
        estimate: b.m.value,
        error: b.m.abs_error,
        requested: opts.tol.target(b.m.value.norm()),
    })
}

/// ∫_0^∞ f with f ≈ e^{-εk}·(slowly decaying oscillation): chunks of fixed
/// length until both the regulator and the chunk contributions are negligible.
fn integrate_regulated_tail<F: Fn(f64) -> Complex64>(f: F, eps: f64, tol: &Tolerance) -> Result<QuadratureResult> {
    let chunk = 20.0;
    let breaks: Vec<f64> = (0..=40).map(|j| 0.5 * j as f64).collect();
    let mut out = integrate_adaptive_breaks(&f, &breaks, tol)?;
    let mut lo = chunk;
    let kmax = 60.0 / eps;
    while lo < kmax {
        let r = integrate_adaptive(&f, lo, lo + chunk, tol)?;
        out.add(&r);
        lo += chunk;
        if r.value.norm() < 1e-3 * tol.target(out.value.norm()) && (-eps * lo).exp() < 1e-3 {
            break;
        }
    }
    Ok(out)
}

/// Excitation probability and cross term per λ̃² for cut-Gaussian switching,
/// with the UV regulator e^{-ε ω}.
fn local_terms_truncated(cfg: &PairConfig, opts: &EvalOptions) -> Result<(QuadratureResult, QuadratureResult)> {
    let x = Ctx::new(cfg, opts.fault);
    let nf = cfg.field.n as f64;
    let sph = PI.powf(nf / 2.0) / (gamma(nf / 2.0)? * (2.0 * PI).powf(nf));
    let om = cfg.gap();
    let eps = opts.uv_eps;
    if !(eps > 0.0) {
        return Err(Error::Config("uv_eps_T must be > 0 for cut-Gaussian switching".into()));
    }
    let sw = cfg.switching;
    let tol = Tolerance {
        rel: opts.tol.rel,
        abs: opts.tol.abs * 1e-2,
    };
    let ljj = integrate_regulated_tail(
        |k: f64| {
            let t = switching_transform(om + k, &sw);
            Complex64::new(x.measure(k) * sph * t * t * (-eps * k).exp(), 0.0)
        },
        eps,
        &tol,
    )?;
    let lab = integrate_regulated_tail(
        |k: f64| {
            let t = switching_transform(om + k, &sw);
            x.measure(k) * x.ang * x.hyp(k) * t * t * (-eps * k).exp() * Complex64::from_polar(1.0, (om + k) * x.c)
        },
        eps,
        &tol,
    )?;
    Ok((ljj, lab))
}

/// M⁺ per λ̃² for cut-Gaussian switching by momentum-space quadrature, as an
/// independent check on the position-space route. The k^{-2} tail beyond the
/// cutoff is not summed; its size is added to the error estimate.
pub fn m_plus_truncated_momentum(cfg: &PairConfig, tol: &Tolerance) -> Result<QuadratureResult> {
    cfg.validate()?;
    require_massless_3d_pointlike(cfg, "m_plus_truncated_momentum")?;
    let x = Ctx::new(cfg, Default::default());
    let om = cfg.gap();
    let sw = cfg.switching;
    let f = |k: f64| {
        let pp = switching_transform(om + k, &sw) * switching_transform(om - k, &sw);
        let ph = Complex64::from_polar(1.0, (om - k) * x.c) + Complex64::from_polar(1.0, (om + k) * x.c);
        -0.5 * x.measure(k) * x.ang * x.hyp(k) * pp * ph
    };
    let kmax = 200.0;
    let breaks: Vec<f64> = (0..=400).map(|j| 0.5 * j as f64).collect();
    let mut r = integrate_adaptive_breaks(f, &breaks, tol)?;
    // |f| ≲ C/k² past the bulk, so the tail is bounded by kmax·max|f| near kmax
    let env = (0..50).map(|j| f(kmax - 0.1 * j as f64).norm()).fold(0.0, f64::max);
    r.abs_error += env * kmax;
    Ok(r.scaled(Complex64::from_polar(1.0, 2.0 * om * cfg.a.center)))
}

pub(super) fn compute_truncated(cfg: &PairConfig, opts: &EvalOptions) -> Result<MatrixElements> {
    require_massless_3d_pointlike(cfg, "cut-Gaussian switching")?;
    let (ljj, lab) = local_terms_truncated(cfg, opts)?;
    let p = m_positionspace_oracle(cfg, opts)?;
    Ok(MatrixElements {
        l_aa: ljj,
        l_bb: ljj,
        l_ab: lab,
        m: p.m,
        m_plus: p.m_plus,
        m_minus: p.m_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_elements::{m_minus, m_plus, m_total};
    use crate::model::FieldSpec;

    fn simpson<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, n: usize) -> Complex64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for j in 1..n {
            let w = if j % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + j as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn switching_transform_matches_quadrature() {
        let sw = SwitchingSpec::TruncatedGaussian { half_width: 1.3 };
        for &w in &[0.0, 2.5, 11.0, 40.0] {
            let num = simpson(|t| Complex64::new((-t * t).exp() * (w * t).cos(), 0.0), -1.3, 1.3, 20000).re;
            assert!((switching_transform(w, &sw) - num).abs() < 1e-12, "w={w}");
        }
    }

    #[test]
    fn gauss_phase_segment_matches_quadrature() {
        for &(v1, v2, om) in &[(-1.0, 2.0, 1.5), (0.5, 3.0, 2.0), (-3.0, -0.2, 0.7)] {
            let exact = simpson(|v| (Complex64::new(-0.5 * v * v + 0.5 * om * om, om * v)).exp(), v1, v2, 20000);
            let g = gauss_phase_segment(v1, v2, om);
            assert!((g - exact).norm() < 1e-11 * exact.norm().max(1.0), "{v1} {v2} {om}");
        }
    }

    #[test]
    fn position_space_matches_momentum_gaussian() {
        let o = EvalOptions {
            tol: Tolerance::new(1e-6, 1e-14).unwrap(),
            ..EvalOptions::default()
        };
        for &c in &[0.0, 4.0, 7.0, 9.0] {
            let cfg = PairConfig::new(FieldSpec::massless(3), 2.0, 7.0, c);
            let p = m_positionspace_oracle(&cfg, &o).unwrap();
            let mp = m_plus(&cfg, &EvalOptions::default()).unwrap().value;
            let mm = m_minus(&cfg, &EvalOptions::default()).unwrap().value;
            let mt = m_total(&cfg, &EvalOptions::default()).unwrap().value;
            let s = mt.norm();
            assert!((p.m_plus.value - mp).norm() < 1e-5 * s, "c={c} M+ {} {}", p.m_plus.value, mp);
            assert!((p.m_minus.value - mm).norm() < 1e-5 * s, "c={c} M- {} {}", p.m_minus.value, mm);
        }
    }

    #[test]
    fn truncated_m_plus_routes_agree() {
        let mut cfg = PairConfig::new(FieldSpec::massless(3), 4.0, 7.0, 0.5);
        cfg.switching = SwitchingSpec::TruncatedGaussian { half_width: 3.0 };
        let p = m_positionspace_oracle(&cfg, &EvalOptions::default()).unwrap();
        let q = m_plus_truncated_momentum(&cfg, &Tolerance::new(1e-9, 1e-16).unwrap()).unwrap();
        let s = p.m.value.norm();
        assert!((p.m_plus.value - q.value).norm() < 1e-4 * s + q.abs_error, "{} {}", p.m_plus.value, q.value);
    }
}
