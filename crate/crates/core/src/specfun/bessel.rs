use super::gamma::temme_gammas;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Hankel asymptotic expansion of J_ν(x), usable for x ≳ 25 and small ν.
fn bessel_j_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut k = 1;
    loop {
        let kk = (2 * k - 1) as f64;
        let next = term * (mu - kk * kk) / (k as f64 * 8.0 * x);
        if next.abs() > term.abs() || next.abs() < 1e-18 || k > 60 {
            break;
        }
        term = next;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        k += 1;
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// J₀(x), J₁(x) for x > 0.
fn bessel_j01(x: f64) -> (f64, f64) {
    if x >= 25.0 {
        return (bessel_j_asymptotic(0.0, x), bessel_j_asymptotic(1.0, x));
    }
    // Miller backward recurrence normalised by J₀ + 2ΣJ_{2k} = 1.
    let m = 2 * ((x as usize + 20 + (40.0 * x).sqrt() as usize) / 2);
    let mut bjp = 0.0;
    let mut bj = 1e-30;
    let mut sum = 0.0;
    let mut j1 = 0.0;
    for j in (1..=m).rev() {
        let bjm = 2.0 * j as f64 / x * bj - bjp;
        bjp = bj;
        bj = bjm;
        if bj.abs() > 1e250 {
            bj *= 1e-250;
            bjp *= 1e-250;
            sum *= 1e-250;
            j1 *= 1e-250;
        }
        // bj now holds J_{j-1}
        if j - 1 == 1 {
            j1 = bj;
        }
        if (j - 1) % 2 == 0 && j - 1 > 0 {
            sum += 2.0 * bj;
        }
    }
    let norm = sum + bj;
    (bj / norm, j1 / norm)
}

/// J_ν(x) for x > 0 and ν a half-integer ≥ -1/2 or a non-negative integer.
pub(crate) fn bessel_j_half_integer_order(nu: f64, x: f64) -> Option<f64> {
    let twice = 2.0 * nu;
    if twice.fract() != 0.0 || nu < -0.5 || x <= 0.0 {
        return None;
    }
    let order = twice as i64;
    if order % 2 != 0 {
        // ν = l + 1/2 with l ≥ -1; spherical Bessel upward recurrence
        let l = (order - 1) / 2;
        let s = (2.0 / (PI * x)).sqrt();
        let (sn, cs) = x.sin_cos();
        let jm1 = s * cs; // J_{-1/2}
        if l == -1 {
            return Some(jm1);
        }
        let j0 = s * sn; // J_{1/2}
        if x < l as f64 + 1.0 {
            return None;
        }
        let (mut a, mut b) = (jm1, j0);
        for k in 0..l {
            let mu = k as f64 + 0.5;
            let nb = 2.0 * mu / x * b - a;
            a = b;
            b = nb;
        }
        Some(b)
    } else {
        let n = order / 2;
        if x < n as f64 && n > 1 {
            return None;
        }
        let (j0, j1) = bessel_j01(x);
        if n == 0 {
            return Some(j0);
        }
        let (mut a, mut b) = (j0, j1);
        for k in 1..n {
            let nb = 2.0 * k as f64 / x * b - a;
            a = b;
            b = nb;
        }
        Some(b)
    }
}

/// Modified Bessel function K_ν(z) for real ν ≥ 0 and Re z > 0.
pub fn bessel_k_complex(nu: f64, z: Complex64) -> Result<Complex64> {
    if !(nu.is_finite() && z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("bessel_k_complex", "non-finite argument"));
    }
    if nu < 0.0 {
        return bessel_k_complex(-nu, z);
    }
    if z.re <= 0.0 {
        return Err(Error::domain(
            "bessel_k_complex",
            format!("requires Re z > 0, got {z}"),
        ));
    }
    if z.norm() < 1e-300 {
        return Err(Error::range("bessel_k_complex", "argument too small"));
    }
    let nl = (nu + 0.5).floor() as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let one = Complex64::new(1.0, 0.0);
    let xi = one / z;
    let xi2 = 2.0 * xi;
    let eps = 1e-16;
    let (mut rkmu, mut rk1);
    if z.norm() < 2.0 {
        // Temme's series
        let x2 = 0.5 * z;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < eps { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.norm() < eps { one } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut cc = one;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut i = 1;
        loop {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc = cc * dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * ff;
            sum += del;
            let del1 = cc * (p - fi * ff);
            sum1 += del1;
            if del.norm() < sum.norm() * eps {
                break;
            }
            i += 1;
            if i > 500 {
                return Err(Error::Accuracy {
                    what: "bessel_k_complex series".into(),
                    estimate: sum,
                    error: del.norm(),
                    requested: eps,
                });
            }
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        // Steed's continued fraction
        let mut b = 2.0 * (one + z);
        let mut d = one / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = Complex64::new(0.0, 0.0);
        let mut q2 = one;
        let a1 = 0.25 - xmu2;
        let mut q = Complex64::new(a1, 0.0);
        let mut cc = a1;
        let mut a = -a1;
        let mut s = one + q * delh;
        let mut i = 2;
        loop {
            a -= 2.0 * (i - 1) as f64;
            cc = -a * cc / i as f64;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += cc * qnew;
            b += 2.0;
            d = one / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).norm() < eps {
                break;
            }
            i += 1;
            if i > 20000 {
                return Err(Error::Accuracy {
                    what: "bessel_k_complex continued fraction".into(),
                    estimate: s,
                    error: dels.norm(),
                    requested: eps,
                });
            }
        }
        h *= a1;
        rkmu = (FRAC_PI_2 * xi).sqrt() * (-z).exp() / s;
        rk1 = rkmu * (xmu + z + 0.5 - h) * xi;
    }
    for i in 1..=nl {
        let t = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = t;
    }
    if !(rkmu.re.is_finite() && rkmu.im.is_finite()) {
        return Err(Error::range("bessel_k_complex", format!("not representable at {z}")));
    }
    Ok(rkmu)
}
