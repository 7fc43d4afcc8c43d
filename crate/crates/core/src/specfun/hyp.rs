use super::bessel::bessel_j_half_integer_order;
use super::dd::Dd;
use super::gamma::gamma;
use crate::error::{Error, Result};

/// Largest x = 2√(-z) for which the ₀F̃₁ power series is used; beyond it the
/// alternating terms cost more than three digits.
const HYP0F1_SERIES_MAX_X: f64 = 6.0;

fn hyp0f1_series(b: f64, z: f64) -> Result<(f64, f64)> {
    // Σ z^k / (k! Γ(b+k)); returns (sum, largest |term|)
    let mut term = 1.0 / gamma(b)?;
    let mut sum = term;
    let mut big = term.abs();
    for k in 1..400 {
        term *= z / (k as f64 * (b + k as f64 - 1.0));
        sum += term;
        big = big.max(term.abs());
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) && k > 2 {
            break;
        }
    }
    Ok((sum, big))
}

/// Regularized confluent limit function ₀F̃₁(;b;z) = ₀F₁(;b;z)/Γ(b) for z ≤ 0.
///
/// Series near the origin, otherwise (2/x)^{b-1} J_{b-1}(x) with x = 2√(-z).
/// The Bessel route covers b ∈ ½ℤ, b ≥ ½, which is every b = n/2 the
/// field model needs.
pub fn reg_hyp0f1(b: f64, z: f64) -> Result<f64> {
    if !(b.is_finite() && z.is_finite()) {
        return Err(Error::domain("reg_hyp0f1", "non-finite argument"));
    }
    if b <= 0.0 {
        return Err(Error::domain("reg_hyp0f1", format!("requires b > 0, got {b}")));
    }
    if z > 0.0 {
        return Err(Error::domain("reg_hyp0f1", format!("requires z ≤ 0, got {z}")));
    }
    let x = 2.0 * (-z).sqrt();
    if x <= HYP0F1_SERIES_MAX_X {
        return Ok(hyp0f1_series(b, z)?.0);
    }
    let nu = b - 1.0;
    if let Some(j) = bessel_j_half_integer_order(nu, x) {
        return Ok((2.0 / x).powf(nu) * j);
    }
    let (s, big) = hyp0f1_series(b, z)?;
    if big * 1e-16 > 1e-10 * s.abs() {
        return Err(Error::Accuracy {
            what: format!("reg_hyp0f1 series at b={b}, z={z}"),
            estimate: s.into(),
            error: big * 1e-16,
            requested: 1e-10,
        });
    }
    Ok(s)
}

fn is_nonpositive_integer(a: f64) -> bool {
    a <= 0.0 && a == a.floor()
}

fn kummer_series(a: f64, b: f64, z: f64) -> (f64, f64) {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut big = 1.0f64;
    for k in 0..5000 {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * z / (kf + 1.0);
        sum += term;
        big = big.max(term.abs());
        if term == 0.0 || (term.abs() <= 1e-17 * sum.abs() && kf > z.abs()) {
            break;
        }
    }
    (sum, big)
}

/// Kummer's confluent hypergeometric function ₁F₁(a;b;z) for real arguments.
pub fn kummer1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(Error::domain("kummer1f1", "non-finite argument"));
    }
    if is_nonpositive_integer(b) {
        return Err(Error::domain("kummer1f1", format!("b = {b} is a pole")));
    }
    if is_nonpositive_integer(a) {
        // terminating polynomial
        let m = (-a) as usize;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..m {
            let kf = k as f64;
            term *= (a + kf) / (b + kf) * z / (kf + 1.0);
            sum += term;
        }
        return Ok(sum);
    }
    let (s, big) = if z < 0.0 && b - a > 0.0 {
        // Kummer transformation: all terms positive
        let (s, big) = kummer_series(b - a, b, -z);
        if z < -708.0 {
            return Err(Error::range("kummer1f1", format!("e^z underflows at z={z}")));
        }
        (z.exp() * s, z.exp() * big)
    } else {
        kummer_series(a, b, z)
    };
    if !s.is_finite() {
        return Err(Error::range("kummer1f1", format!("overflow at z={z}")));
    }
    if big * 2e-16 > 1e-10 * s.abs() {
        return Err(Error::Accuracy {
            what: format!("kummer1f1({a}, {b}, {z})"),
            estimate: s.into(),
            error: big * 2e-16,
            requested: 1e-10,
        });
    }
    Ok(s)
}

/// ₁F₁ in double-double precision via the Kummer transformation, for z ≤ 0
/// and b - a > 0.
pub(crate) fn kummer1f1_dd(a: f64, b: f64, z: f64) -> Dd {
    let x = Dd::new(-z);
    let c = Dd::new(b - a);
    let bb = Dd::new(b);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut k = 0.0;
    loop {
        let kf = Dd::new(k);
        term = term * (c + kf) / (bb + kf) * x / Dd::new(k + 1.0);
        sum = sum + term;
        k += 1.0;
        if (term.hi.abs() < 1e-34 * sum.hi.abs() && k > -z) || k > 10000.0 {
            break;
        }
    }
    Dd::new(z).exp() * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// ₀F̃₁(n/2; -x²/4) as the angular integral
    /// ∫₀^π sin^{n-2}θ cos(x cos θ) dθ / (√π Γ((n-1)/2)), n ≥ 2.
    fn hyp0f1_angular(n: usize, x: f64) -> f64 {
        let m = 20000;
        let h = PI / m as f64;
        let gl = [
            (-0.774_596_669_241_483_4, 5.0 / 9.0),
            (0.0, 8.0 / 9.0),
            (0.774_596_669_241_483_4, 5.0 / 9.0),
        ];
        let mut s = 0.0;
        for i in 0..m {
            let mid = (i as f64 + 0.5) * h;
            for &(t, w) in &gl {
                let th = mid + 0.5 * h * t;
                s += w * 0.5 * h * th.sin().powi(n as i32 - 2) * (x * th.cos()).cos();
            }
        }
        s / (PI.sqrt() * gamma((n as f64 - 1.0) / 2.0).unwrap())
    }

    #[test]
    fn matches_angular_integral() {
        for n in 2..=8 {
            let b = n as f64 / 2.0;
            for i in 1..=25 {
                let x = 2.0 * i as f64;
                let a = reg_hyp0f1(b, -x * x / 4.0).unwrap();
                let o = hyp0f1_angular(n, x);
                let env = (2.0 / x).powf(b - 1.0) * (2.0 / (PI * x)).sqrt();
                assert!((a - o).abs() < 1e-9 * env.max(a.abs()), "n={n} x={x} {a} {o}");
            }
        }
    }

    #[test]
    fn elementary_cases() {
        for &x in &[0.5, 3.0, 7.0, 40.0, 333.0] {
            let c3 = reg_hyp0f1(1.5, -x * x / 4.0).unwrap();
            assert!((c3 - 2.0 * x.sin() / (PI.sqrt() * x)).abs() < 1e-14);
            let c1 = reg_hyp0f1(0.5, -x * x / 4.0).unwrap();
            assert!((c1 - x.cos() / PI.sqrt()).abs() < 1e-14);
        }
        assert!((reg_hyp0f1(2.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn series_and_bessel_agree_at_switch() {
        for n in 1..=8 {
            let b = n as f64 / 2.0;
            let x = HYP0F1_SERIES_MAX_X;
            let s = hyp0f1_series(b, -x * x / 4.0).unwrap().0;
            let j = bessel_j_half_integer_order(b - 1.0, x).unwrap() * (2.0 / x).powf(b - 1.0);
            assert!((s - j).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn kummer_polynomial_exact() {
        // a = -2: 1 + a z/b + a(a+1) z²/(b(b+1)2)
        let (a, b, z) = (-2.0, 0.5, -3.7);
        let p = 1.0 + a * z / b + a * (a + 1.0) * z * z / (b * (b + 1.0) * 2.0);
        assert!((kummer1f1(a, b, z).unwrap() - p).abs() < 1e-14 * p.abs());
    }

    #[test]
    fn kummer_reference_values() {
        // ₁F₁(-1/2; 1/2; -x) = e^{-x} + √(πx) erf(√x)
        for &x in &[0.1, 2.0, 24.5, 150.0] {
            let v = kummer1f1(-0.5, 0.5, -x).unwrap();
            let r = (-x).exp() + (PI * x).sqrt() * erf_real(x.sqrt());
            assert!((v / r - 1.0).abs() < 1e-12, "x={x}");
            let d = kummer1f1_dd(-0.5, 0.5, -x).to_f64();
            assert!((d / r - 1.0).abs() < 1e-14, "x={x}");
        }
    }

    fn erf_real(x: f64) -> f64 {
        crate::specfun::erf(num_complex::Complex64::new(x, 0.0)).unwrap().re
    }

    #[test]
    fn kummer_direct_and_transformed_agree() {
        let (a, b) = (-1.5, 1.5);
        for &z in &[-0.3, -2.0, -6.0] {
            let t = kummer1f1(a, b, z).unwrap();
            let d = kummer_series(a, b, z).0;
            assert!((t - d).abs() < 1e-13 * t.abs().max(1.0));
        }
    }

    #[test]
    fn rejects_bad_domain() {
        assert!(reg_hyp0f1(1.0, 1.0).is_err());
        assert!(reg_hyp0f1(0.0, -1.0).is_err());
        assert!(kummer1f1(0.5, -1.0, -1.0).is_err());
    }
}
