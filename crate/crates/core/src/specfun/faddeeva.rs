//! Faddeeva function w(z) = e^{-z²} erfc(-iz) and the functions built on it:
//! the complex Dawson integral F(z) and the imaginary error function erfi(z).

use crate::error::{Error, Result};
use num_complex::Complex64;

const TWO_OVER_SQRT_PI: f64 = 1.128_379_167_095_512_6;
const SQRT_PI: f64 = 1.772_453_850_905_516;
const MAX_EXP: f64 = 708.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// w(z) for Im z ≥ 0. Taylor series of erf near the origin, Laplace
/// continued fraction (with a Taylor correction inside the ellipse
/// (x/6.3)² + (y/4.4)² < 1) elsewhere.
fn w_upper(z: Complex64) -> Complex64 {
    let xi = z.re;
    let yi = z.im;
    let xabs = xi.abs();
    let yabs = yi.abs();
    let x = xabs / 6.3;
    let y = yabs / 4.4;
    let mut qrho = x * x + y * y;
    let xquad = xabs * xabs - yabs * yabs;
    let yquad = 2.0 * xabs * yabs;
    let (mut u, mut v);
    if qrho < 0.085264 {
        qrho = (1.0 - 0.85 * y) * qrho.sqrt();
        let n = (6.0 + 72.0 * qrho).round() as i32;
        let mut j = 2 * n + 1;
        let mut xsum = 1.0 / j as f64;
        let mut ysum = 0.0;
        for i in (1..=n).rev() {
            j -= 2;
            let xaux = (xsum * xquad - ysum * yquad) / i as f64;
            ysum = (xsum * yquad + ysum * xquad) / i as f64;
            xsum = xaux + 1.0 / j as f64;
        }
        let u1 = -TWO_OVER_SQRT_PI * (xsum * yabs + ysum * xabs) + 1.0;
        let v1 = TWO_OVER_SQRT_PI * (xsum * xabs - ysum * yabs);
        let daux = (-xquad).exp();
        let u2 = daux * yquad.cos();
        let v2 = -daux * yquad.sin();
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        let (h, kapn, nu);
        if qrho > 1.0 {
            h = 0.0;
            kapn = 0;
            let q = qrho.sqrt();
            nu = (3.0 + 1442.0 / (26.0 * q + 77.0)) as i32;
        } else {
            let q = (1.0 - y) * (1.0 - qrho).sqrt();
            h = 1.88 * q;
            kapn = (7.0 + 34.0 * q).round() as i32;
            nu = (16.0 + 26.0 * q).round() as i32;
        }
        let h2 = 2.0 * h;
        let b = h > 0.0;
        let mut qlambda = if b { h2.powi(kapn) } else { 0.0 };
        let (mut rx, mut ry, mut sx, mut sy) = (0.0, 0.0, 0.0, 0.0);
        for n in (0..=nu).rev() {
            let np1 = (n + 1) as f64;
            let tx = yabs + h + np1 * rx;
            let ty = xabs - np1 * ry;
            let cc = 0.5 / (tx * tx + ty * ty);
            rx = cc * tx;
            ry = cc * ty;
            if b && n <= kapn {
                let tx = qlambda + sx;
                let sxn = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                sx = sxn;
                qlambda /= h2;
            }
        }
        if h == 0.0 {
            u = TWO_OVER_SQRT_PI * rx;
            v = TWO_OVER_SQRT_PI * ry;
        } else {
            u = TWO_OVER_SQRT_PI * sx;
            v = TWO_OVER_SQRT_PI * sy;
        }
        if yabs == 0.0 {
            u = (-xabs * xabs).exp();
        }
    }
    if xi < 0.0 {
        v = -v;
    }
    c(u, v)
}

/// Faddeeva function w(z) = e^{-z²} erfc(-iz).
pub fn faddeeva_w(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("faddeeva_w", format!("non-finite argument {z}")));
    }
    if z.im >= 0.0 {
        return Ok(w_upper(z));
    }
    // w(z) = 2 e^{-z²} - w(-z)
    let e = -(z * z);
    if e.re > MAX_EXP {
        return Err(Error::range("faddeeva_w", format!("e^(-z^2) overflows at {z}")));
    }
    Ok(2.0 * e.exp() - w_upper(-z))
}

fn dawson_taylor(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for k in 0..200 {
        term = term * (-2.0 * z2) / (2 * k + 3) as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

fn dawson_asymptotic(z: Complex64) -> Complex64 {
    // 1/(2z) Σ (2k-1)!!/(2z²)^k
    let inv = 1.0 / (2.0 * z * z);
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    for k in 1..40 {
        let next = term * inv * (2 * k - 1) as f64;
        if next.norm() > term.norm() {
            break;
        }
        term = next;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum / (2.0 * z)
}

/// Dawson integral F(z) = e^{-z²} ∫₀^z e^{t²} dt for complex z.
pub fn dawson(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("dawson", format!("non-finite argument {z}")));
    }
    if z.im < 0.0 {
        return dawson(z.conj()).map(|f| f.conj());
    }
    let r = z.norm();
    if r < 1.0 {
        return Ok(dawson_taylor(z));
    }
    let e = -(z * z);
    if e.re > MAX_EXP {
        return Err(Error::range(
            "dawson",
            format!("result overflows at {z} (Im² - Re² > {MAX_EXP})"),
        ));
    }
    let ez = if e.re < -745.0 { c(0.0, 0.0) } else { e.exp() };
    let half_i_sqrt_pi = c(0.0, 0.5 * SQRT_PI);
    if z.re.abs() > 12.0 && r > 12.0 {
        return Ok(dawson_asymptotic(z) + half_i_sqrt_pi * ez);
    }
    Ok(half_i_sqrt_pi * (ez - w_upper(z)))
}

fn erfi_taylor(z: Complex64) -> Complex64 {
    // (2/√π) Σ z^{2k+1} / (k! (2k+1))
    let z2 = z * z;
    let mut p = z;
    let mut sum = z;
    for k in 1..200 {
        p = p * z2 / k as f64;
        let t = p / (2 * k + 1) as f64;
        sum += t;
        if t.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    TWO_OVER_SQRT_PI * sum
}

/// Imaginary error function erfi(z) = -i erf(iz).
pub fn erfi(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("erfi", format!("non-finite argument {z}")));
    }
    if z.norm() < 1.0 {
        return Ok(erfi_taylor(z));
    }
    if z.im > 0.0 {
        return erfi(-z).map(|v| -v);
    }
    // Im(-z) ≥ 0:  erf(iz) = 1 - e^{z²} w(-z)
    let e = z * z;
    if e.re > MAX_EXP {
        return Err(Error::range("erfi", format!("overflow at {z}")));
    }
    let w = w_upper(-z);
    Ok(c(0.0, -1.0) * (c(1.0, 0.0) - e.exp() * w))
}

/// Complex error function erf(z), via the Faddeeva function.
pub fn erf(z: Complex64) -> Result<Complex64> {
    erfi(c(0.0, 1.0) * z).map(|v| c(0.0, -1.0) * v)
}

/// e^{s} w(u) for any u, staying finite when e^{s} alone would overflow.
/// Im u < 0 goes through the reflection w(u) = 2e^{-u²} - w(-u).
pub fn exp_times_w(s: Complex64, u: Complex64) -> Result<Complex64> {
    if u.im >= 0.0 {
        let w = w_upper(u);
        if s.re > MAX_EXP {
            let lw = w.ln();
            return Ok((s + lw).exp());
        }
        return Ok(s.exp() * w);
    }
    // e^{s}(2 e^{-u²} - w(-u))
    let a = s - u * u;
    if a.re > MAX_EXP {
        return Err(Error::range("exp_times_w", format!("overflow at s={s}, u={u}")));
    }
    let w = w_upper(-u);
    let b = if s.re > MAX_EXP {
        (s + w.ln()).exp()
    } else {
        s.exp() * w
    };
    Ok(2.0 * a.exp() - b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    /// F(z) = z ∫₀¹ e^{z²(s²-1)} ds by composite Gauss-Legendre.
    fn dawson_by_quadrature(z: Complex64) -> Complex64 {
        let nodes = [
            (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
            (-0.538_469_310_105_683, 0.478_628_670_499_366_5),
            (0.0, 0.568_888_888_888_888_9),
            (0.538_469_310_105_683, 0.478_628_670_499_366_5),
            (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        ];
        let m = 4000;
        let h = 1.0 / m as f64;
        let z2 = z * z;
        let mut s = c(0.0, 0.0);
        for i in 0..m {
            let mid = (i as f64 + 0.5) * h;
            for &(x, w) in &nodes {
                let t = mid + 0.5 * h * x;
                s += w * 0.5 * h * (z2 * (t * t - 1.0)).exp();
            }
        }
        z * s
    }

    #[test]
    fn real_dawson_reference() {
        // F(1), F(2) to 16 digits
        let f1 = dawson(c(1.0, 0.0)).unwrap();
        assert!((f1.re - 0.538_079_506_912_768_4).abs() < 1e-15);
        assert_eq!(f1.im, 0.0);
        let f2 = dawson(c(2.0, 0.0)).unwrap();
        assert!((f2.re - 0.301_340_388_923_791_97).abs() < 1e-15);
    }

    #[test]
    fn dawson_matches_quadrature_oracle() {
        let pts = [
            c(0.3, 0.2),
            c(1.5, 0.7),
            c(2.0, -3.0),
            c(4.0, 4.0),
            c(-5.0, 2.5),
            c(7.0, 0.1),
            c(0.5, 6.0),
            c(9.5, 7.0),
            c(3.0, 0.0),
        ];
        for z in pts {
            let a = dawson(z).unwrap();
            let b = dawson_by_quadrature(z);
            assert!(rel(a, b) < 1e-11, "z={z} got {a} want {b}");
        }
    }

    #[test]
    fn dawson_branch_seams_are_continuous() {
        for &z in &[c(1.0, 0.0), c(0.0, 1.0), c(0.7071, 0.7071), c(12.0, 3.0), c(12.0, 0.5)] {
            let d = 1e-9;
            let a = dawson(z * (1.0 - d)).unwrap();
            let b = dawson(z * (1.0 + d)).unwrap();
            assert!(rel(a, b) < 1e-8, "seam at {z}");
        }
    }

    #[test]
    fn dawson_ode() {
        // F'(z) = 1 - 2 z F(z)
        for &z in &[c(0.4, 0.3), c(2.2, 1.1), c(5.0, -2.0), c(15.0, 3.0)] {
            let h = 1e-5;
            let d = (dawson(z + h).unwrap() - dawson(z - h).unwrap()) / (2.0 * h);
            let r = 1.0 - 2.0 * z * dawson(z).unwrap();
            assert!((d - r).norm() < 1e-8 * (1.0 + r.norm()), "z={z}");
        }
    }

    #[test]
    fn erfi_real_values() {
        // erfi(1) = 1.6504257587975428
        let v = erfi(c(1.0, 0.0)).unwrap();
        assert!((v.re - 1.650_425_758_797_542_8).abs() < 1e-14);
        assert!(v.im.abs() < 1e-15);
        let v = erfi(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.614_952_094_696_510_9).abs() < 1e-15);
    }

    #[test]
    fn erf_real_values() {
        let v = erf(c(1.0, 0.0)).unwrap();
        assert!((v.re - 0.842_700_792_949_714_9).abs() < 1e-15);
        let v = erf(c(2.5, 0.0)).unwrap();
        assert!((v.re - 0.999_593_047_982_555).abs() < 1e-14);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(dawson(c(0.0, 30.0)), Err(Error::Range { .. })));
        assert!(matches!(erfi(c(30.0, 0.0)), Err(Error::Range { .. })));
        assert!(dawson(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn w_reflection() {
        let z = c(1.3, -0.4);
        let w = faddeeva_w(z).unwrap();
        let alt = 2.0 * (-(z * z)).exp() - faddeeva_w(-z).unwrap();
        assert!(rel(w, alt) < 1e-14);
        let s = c(3.0, 1.0);
        let e = exp_times_w(s, z).unwrap();
        assert!(rel(e, s.exp() * w) < 1e-13);
    }
}
