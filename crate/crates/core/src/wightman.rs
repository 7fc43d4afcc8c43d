//! Vacuum Wightman functions and field commutators of the Klein–Gordon field
//! in n+1 dimensions, smeared against Gaussian test functions in time.

use crate::error::{Error, Result};
use crate::model::FieldSpec;
use crate::quadrature::{
    extrapolate_to_zero, integrate_adaptive_breaks, integrate_semiinfinite_damped, EpsSeries,
    QuadratureResult, Tolerance, DEFAULT_EPS_LADDER,
};
use crate::specfun::{bessel_k_complex, dawson, faddeeva_w, gamma, reg_hyp0f1};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

const SQRT_PI: f64 = 1.772_453_850_905_516;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimeInterval {
    /// Δt/T
    pub dt: f64,
    /// |Δx|/T
    pub dx: f64,
}

impl SpacetimeInterval {
    pub fn new(dt: f64, dx: f64) -> Result<Self> {
        if !(dt.is_finite() && dx.is_finite() && dx >= 0.0) {
            return Err(Error::domain("SpacetimeInterval", format!("need finite Δt and |Δx| ≥ 0, got ({dt}, {dx})")));
        }
        Ok(SpacetimeInterval { dt, dx })
    }
}

/// W(x, x') at finite regulator ε, as a function of σ̃ = Δx² - (Δt - iε)².
pub fn wightman_closed(field: &FieldSpec, iv: SpacetimeInterval, eps: f64) -> Result<Complex64> {
    field.validate()?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::domain("wightman_closed", format!("ε must be > 0, got {eps}")));
    }
    let n = field.n as f64;
    let d = Complex64::new(iv.dt, -eps);
    let sigma = iv.dx * iv.dx - d * d;
    let root = sigma.sqrt();
    if !(root.re > 0.0) {
        return Err(Error::domain("wightman_closed", format!("√σ̃ = {root} off the principal branch")));
    }
    if field.mass > 0.0 {
        let nu = 0.5 * (n - 1.0);
        let k = bessel_k_complex(nu, field.mass * root)?;
        let pre = field.mass.powf(nu) / (2.0 * PI).powf(0.5 * (n + 1.0));
        return Ok(pre * root.powf(-nu) * k);
    }
    if field.n == 1 {
        let lam = field.ir_cutoff;
        return Ok(-(lam * lam * sigma).ln() / (4.0 * PI));
    }
    let pre = gamma(0.5 * (n - 1.0))? / (4.0 * PI.powf(0.5 * (n + 1.0)));
    Ok(pre * root.powf(-(n - 1.0)))
}

/// One term i·coefficient·δ^{(order)}(Δt - at) of a commutator supported on
/// the light cone; `coefficient` already includes the |Δx| power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullTerm {
    pub order: usize,
    pub coefficient: f64,
    pub at: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommutatorDescriptor {
    /// ordinary function value (n = 1, 2)
    Function(Complex64),
    /// sum of δ-derivatives on the two null branches (odd n ≥ 3)
    NullCone(Vec<NullTerm>),
}

impl CommutatorDescriptor {
    pub fn highest_order(&self) -> Option<usize> {
        match self {
            CommutatorDescriptor::Function(_) => None,
            CommutatorDescriptor::NullCone(t) => t.iter().map(|x| x.order).max(),
        }
    }
}

/// Coefficients a_j of C⁻_n = i Σ_j a_j |Δx|^{-(n-2-j)} [δ^{(j)}(Δt+|Δx|) + (-1)^{j+1} δ^{(j)}(Δt-|Δx|)]
/// for odd n ≥ 3, from C⁻_{n+2} = -(1/(2π r)) ∂_r C⁻_n started at
/// C⁻_3 = (i/(4π r)) [δ(Δt+r) - δ(Δt-r)].
pub fn null_cone_coefficients(n: usize) -> Result<Vec<f64>> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::domain("null_cone_coefficients", format!("needs odd n ≥ 3, got {n}")));
    }
    // (order j, branch s) → (coefficient, power p of r^{-p}); branch s: δ(Δt + s r)
    let mut terms: BTreeMap<(usize, i8), (f64, i32)> = BTreeMap::new();
    terms.insert((0, 1), (1.0 / (4.0 * PI), 1));
    terms.insert((0, -1), (-1.0 / (4.0 * PI), 1));
    let mut m = 3;
    while m < n {
        let mut next: BTreeMap<(usize, i8), (f64, i32)> = BTreeMap::new();
        for (&(j, s), &(c, p)) in &terms {
            // ∂_r [r^{-p} δ^{(j)}(Δt + s r)] = -p r^{-p-1} δ^{(j)} + s r^{-p} δ^{(j+1)}, then × -1/(2π r)
            let e = next.entry((j, s)).or_insert((0.0, p + 2));
            e.0 += p as f64 * c / (2.0 * PI);
            let e = next.entry((j + 1, s)).or_insert((0.0, p + 1));
            e.0 -= s as f64 * c / (2.0 * PI);
        }
        terms = next;
        m += 2;
    }
    Ok((0..=(n - 3) / 2).map(|j| terms[&(j, 1)].0).collect())
}

/// Closed form of the commutator [φ(x), φ(x')] for the massless field.
/// n = 1 uses Θ(0) = ½ on the light cone.
pub fn commutator_closed(n: usize, iv: SpacetimeInterval) -> Result<CommutatorDescriptor> {
    let (t, r) = (iv.dt, iv.dx);
    match n {
        0 => Err(Error::domain("commutator_closed", "n must be ≥ 1")),
        1 => {
            let th = if t.abs() > r {
                1.0
            } else if t.abs() == r {
                0.5
            } else {
                0.0
            };
            Ok(CommutatorDescriptor::Function(Complex64::new(0.0, -0.5 * t.signum() * th)))
        }
        2 => {
            let s = t * t - r * r;
            if s == 0.0 {
                return Err(Error::domain("commutator_closed", "n = 2 commutator diverges on the light cone"));
            }
            let v = if s > 0.0 { -t.signum() / (2.0 * PI * s.sqrt()) } else { 0.0 };
            Ok(CommutatorDescriptor::Function(Complex64::new(0.0, v)))
        }
        _ if n % 2 == 0 => Err(Error::domain(
            "commutator_closed",
            format!("no closed form for even n = {n}; use commutator_numeric"),
        )),
        _ => {
            if r <= 0.0 {
                return Err(Error::domain("commutator_closed", "null-cone descriptor needs |Δx| > 0"));
            }
            let a = null_cone_coefficients(n)?;
            let mut out = Vec::with_capacity(2 * a.len());
            for (j, aj) in a.iter().enumerate() {
                let c = aj / r.powi((n - 2 - j) as i32);
                let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
                out.push(NullTerm { order: j, coefficient: c, at: -r });
                out.push(NullTerm { order: j, coefficient: sign * c, at: r });
            }
            Ok(CommutatorDescriptor::NullCone(out))
        }
    }
}

/// Two Gaussian test functions e^{-(t - centre)²/width²} in time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunctionPair {
    pub a: (f64, f64),
    pub b: (f64, f64),
}

impl TestFunctionPair {
    fn validate(&self) -> Result<()> {
        if !(self.a.1 > 0.0 && self.b.1 > 0.0) {
            return Err(Error::domain("TestFunctionPair", "widths must be > 0"));
        }
        Ok(())
    }

    /// g(τ) = ∫dt f_a(t) f_b(t - τ) = amp·e^{-((τ - centre)/width)²}
    fn overlap(&self) -> GaussWeight {
        let (ma, sa) = self.a;
        let (mb, sb) = self.b;
        let s = sa.hypot(sb);
        GaussWeight {
            centre: ma - mb,
            width: s,
            amp: SQRT_PI * sa * sb / s,
        }
    }

    pub fn swapped(&self) -> TestFunctionPair {
        TestFunctionPair { a: self.b, b: self.a }
    }
}

#[derive(Debug, Clone, Copy)]
struct GaussWeight {
    centre: f64,
    width: f64,
    amp: f64,
}

impl GaussWeight {
    fn at(&self, t: f64) -> f64 {
        let x = (t - self.centre) / self.width;
        self.amp * (-x * x).exp()
    }

    /// j-th derivative at t via physicists' Hermite polynomials
    fn derivative(&self, j: usize, t: f64) -> f64 {
        let x = (t - self.centre) / self.width;
        let (mut h0, mut h1) = (1.0, 2.0 * x);
        let h = match j {
            0 => h0,
            _ => {
                for k in 1..j {
                    let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
                    h0 = h1;
                    h1 = h2;
                }
                h1
            }
        };
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        self.amp * sign * h * (-x * x).exp() / self.width.powi(j as i32)
    }
}

fn erfc_real(x: f64) -> f64 {
    let e = |y: f64| (-y * y).exp() * faddeeva_w(Complex64::new(0.0, y)).map(|w| w.re).unwrap_or(f64::NAN);
    if x >= 0.0 {
        e(x)
    } else {
        2.0 - e(-x)
    }
}

fn pair_closed(n: usize, g: &GaussWeight, r: f64, tol: &Tolerance) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    match n {
        1 => {
            // ∫_{|τ|>r} -(i/2) sgn τ g(τ) dτ
            let half = 0.5 * SQRT_PI * g.amp * g.width;
            let up = half * erfc_real((r - g.centre) / g.width);
            let down = half * erfc_real((r + g.centre) / g.width);
            Ok(-0.5 * i * (up - down))
        }
        2 => {
            if r <= 0.0 {
                return Err(Error::domain("smeared_commutator", "n = 2 pairing needs |Δx| > 0"));
            }
            // τ = ±r cosh θ removes the inverse square-root singularity
            let up = integrate_semiinfinite_damped(|th: f64| g.at(r * th.cosh()).into(), 0.0, 1.0, tol)?;
            let down = integrate_semiinfinite_damped(|th: f64| g.at(-r * th.cosh()).into(), 0.0, 1.0, tol)?;
            Ok(-i * (up.value - down.value) / (2.0 * PI))
        }
        _ => {
            let d = commutator_closed(n, SpacetimeInterval { dt: 0.0, dx: r })?;
            let CommutatorDescriptor::NullCone(terms) = d else {
                unreachable!("odd n ≥ 3 gives a null-cone descriptor")
            };
            // ∫ g(τ) δ^{(j)}(τ - a) dτ = (-1)^j g^{(j)}(a)
            let s: f64 = terms
                .iter()
                .map(|t| {
                    let sign = if t.order % 2 == 0 { 1.0 } else { -1.0 };
                    t.coefficient * sign * g.derivative(t.order, t.at)
                })
                .sum();
            Ok(i * s)
        }
    }
}

/// ∫dt dt' f_a(t) f_b(t') C⁻(t - t', Δx) for the massless field, from the closed
/// form: distributional pairing on the null cone for odd n ≥ 3, direct
/// integration for n = 1, 2.
pub fn smeared_commutator(n: usize, f: &TestFunctionPair, dx: f64) -> Result<Complex64> {
    f.validate()?;
    if !(dx >= 0.0 && dx.is_finite()) {
        return Err(Error::domain("smeared_commutator", format!("|Δx| must be ≥ 0, got {dx}")));
    }
    let tol = Tolerance { rel: 1e-12, abs: 1e-300 };
    pair_closed(n, &f.overlap(), dx, &tol)
}

/// Smeared anticommutator ⟨{φ(x), φ(x')}⟩ for the massless field in 3+1, from
/// the Hilbert transform of a Gaussian: PV∫e^{-((τ-μ)/s)²}/(τ-a) dτ = -2√π F((a-μ)/s).
pub fn smeared_anticommutator_3d(f: &TestFunctionPair, dx: f64) -> Result<Complex64> {
    f.validate()?;
    if !(dx > 0.0) {
        return Err(Error::domain("smeared_anticommutator_3d", "needs |Δx| > 0"));
    }
    let g = f.overlap();
    let fd = |x: f64| dawson(Complex64::new(x, 0.0)).map(|v| v.re);
    let v = g.amp * SQRT_PI / (2.0 * PI * PI * dx)
        * (fd((dx - g.centre) / g.width)? + fd((dx + g.centre) / g.width)?);
    Ok(Complex64::new(v, 0.0))
}

/// ∫dt dt' f_a(t) f_b(t') W_ε(t - t', Δx) extrapolated to ε → 0, by direct
/// quadrature of the regulated Wightman function. The ladder shrinks by 8
/// until the extrapolation meets the tolerance.
pub fn smeared_wightman(field: &FieldSpec, f: &TestFunctionPair, dx: f64, tol: &Tolerance) -> Result<QuadratureResult> {
    f.validate()?;
    let g = f.overlap();
    let (lo, hi) = (g.centre - 9.0 * g.width, g.centre + 9.0 * g.width);
    let inner = Tolerance { rel: tol.rel * 1e-3, abs: 1e-300 };
    let family = |eps: f64| -> Result<QuadratureResult> {
        let mut pts = vec![lo, hi];
        for c in [-dx, dx] {
            for d in [0.0, eps, 10.0 * eps, 100.0 * eps] {
                pts.push(c + d);
                pts.push(c - d);
            }
        }
        let mut pts: Vec<f64> = pts.into_iter().filter(|p| *p >= lo && *p <= hi).collect();
        pts.sort_by(|a, b| a.total_cmp(b));
        pts.dedup();
        // a failing evaluation propagates as NaN and fails the quadrature
        integrate_adaptive_breaks(
            |t| {
                let w = wightman_closed(field, SpacetimeInterval { dt: t, dx }, eps)
                    .unwrap_or(Complex64::new(f64::NAN, 0.0));
                g.at(t) * w
            },
            &pts,
            &inner,
        )
    };
    let mut factor = 1.0;
    let mut last = None;
    for _ in 0..4 {
        let ladder: Vec<f64> = DEFAULT_EPS_LADDER.iter().map(|e| e * factor).collect();
        let vals = ladder.iter().map(|&e| family(e)).collect::<Result<Vec<_>>>()?;
        let r = extrapolate_to_zero(&ladder, &vals, EpsSeries::All)?;
        if r.abs_error <= tol.target(r.value.norm()) {
            return Ok(r);
        }
        last = Some(r);
        factor /= 8.0;
    }
    let r = last.expect("ladder evaluated");
    Err(Error::Accuracy {
        what: "smeared_wightman: ε extrapolation did not converge".into(),
        estimate: r.value,
        error: r.abs_error,
        requested: tol.target(r.value.norm()),
    })
}

/// C⁻(Δt, Δx) averaged over Δt with the unit-area Gaussian of the given width,
/// from the sine-transform representation
/// C⁻ = -2i π^{n/2}/(2π)^n ∫dk k^{n-1}/ω ₀F̃₁(n/2; -k²Δx²/4) sin(ωΔt).
/// The integrand is finite at k = 0 for every n, so no IR cutoff is applied.
pub fn commutator_numeric(field: &FieldSpec, iv: SpacetimeInterval, width: f64) -> Result<QuadratureResult> {
    field.validate()?;
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::domain("commutator_numeric", format!("width must be > 0, got {width}")));
    }
    let nf = field.n as f64;
    let ang = PI.powf(nf / 2.0) / (2.0 * PI).powf(nf);
    let b = nf / 2.0;
    let f = |k: f64| {
        let w = field.omega(k);
        let meas = if field.mass == 0.0 {
            k.powi(field.n as i32 - 2)
        } else {
            k.powi(field.n as i32 - 1) / w
        };
        let x = k * iv.dx;
        let h = reg_hyp0f1(b, -0.25 * x * x).unwrap_or(f64::NAN);
        Complex64::new(meas * h * (w * iv.dt).sin() * (-0.25 * w * w * width * width).exp(), 0.0)
    };
    let tol = Tolerance { rel: 1e-10, abs: 1e-14 };
    let r = integrate_semiinfinite_damped(f, 0.0, 1.0 / width, &tol)?;
    Ok(r.scaled(Complex64::new(0.0, -2.0 * ang)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HuygensRegion {
    Interior,
    Exterior,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuygensResult {
    pub silent: bool,
    /// largest |smeared C⁻| over the region's test pairs
    pub leakage: f64,
    /// largest |smeared C⁻| with the test pair on the light cone
    pub peak: f64,
}

/// Separation and test-function width used by the strong-Huygens grid.
pub const HUYGENS_DX: f64 = 7.0;
const HUYGENS_SIGMA: f64 = 0.5;

fn smeared_any(field: &FieldSpec, centre: f64, dx: f64) -> Result<f64> {
    let f = TestFunctionPair {
        a: (centre, HUYGENS_SIGMA),
        b: (0.0, HUYGENS_SIGMA),
    };
    let closed = field.mass == 0.0 && (field.n <= 2 || field.n % 2 == 1);
    if closed {
        return Ok(smeared_commutator(field.n, &f, dx)?.norm());
    }
    // same pairing from the sine transform: g has unit-area form amp·s·√π
    let g = f.overlap();
    let area = g.amp * g.width * SQRT_PI;
    Ok(area * commutator_numeric(field, SpacetimeInterval { dt: centre, dx }, g.width)?.value.norm())
}

/// Whether the smeared commutator stays below tol × its light-cone peak for
/// Gaussian test pairs at least four widths inside (or outside) the light cone.
pub fn huygens_check_field(field: &FieldSpec, region: HuygensRegion, tol: f64) -> Result<HuygensResult> {
    let r = HUYGENS_DX;
    let mut peak = 0.0f64;
    for j in -5..=5 {
        let d = 0.1 * j as f64;
        peak = peak.max(smeared_any(field, r + d, r)?);
        peak = peak.max(smeared_any(field, -r + d, r)?);
    }
    let centres: Vec<f64> = match region {
        HuygensRegion::Interior => vec![r + 4.0, r + 5.0, r + 7.0, -(r + 4.0), -(r + 5.0), -(r + 7.0)],
        HuygensRegion::Exterior => vec![-3.0, -1.5, 0.0, 1.5, 3.0],
    };
    let mut leak = 0.0f64;
    for c in centres {
        leak = leak.max(smeared_any(field, c, r)?);
    }
    Ok(HuygensResult {
        silent: leak < tol * peak,
        leakage: leak,
        peak,
    })
}

/// Strong-Huygens check for the massless field in n+1 dimensions.
pub fn huygens_check(n: usize, region: HuygensRegion, tol: f64) -> Result<HuygensResult> {
    let mut field = FieldSpec::massless(n);
    if n == 1 {
        // never used by the commutator; only keeps the field spec valid
        field.ir_cutoff = 1.0;
    }
    huygens_check_field(&field, region, tol)
}
