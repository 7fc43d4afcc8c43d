use crate::error::{Error, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Taylor coefficients of 1/Γ(z) about z = 0, starting with the z¹ term.
pub(crate) const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

fn lanczos(x: f64) -> f64 {
    // valid for x >= 0.5
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// Gamma function for real arguments.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("gamma", format!("non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::domain("gamma", format!("pole at {x}")));
    }
    if x > 171.6 {
        return Err(Error::range("gamma", format!("overflow at {x}")));
    }
    if x == x.floor() && x <= 30.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        let g = lanczos(1.0 - x);
        let v = PI / (s * g);
        if !v.is_finite() {
            return Err(Error::range("gamma", format!("not representable at {x}")));
        }
        return Ok(v);
    }
    if x > 140.0 {
        // split the power to avoid intermediate overflow
        let x1 = x - 1.0;
        let t = x1 + LANCZOS_G + 0.5;
        let mut a = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (x1 + i as f64);
        }
        let h = t.powf(0.5 * (x1 + 0.5));
        return Ok((2.0 * PI).sqrt() * h * ((-t).exp() * h) * a);
    }
    Ok(lanczos(x))
}

/// 1/Γ(1+μ) and 1/Γ(1-μ) together with Temme's Γ₁, Γ₂ for |μ| ≤ 1/2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Γ(1+μ) = Σ c_k μ^{k-1}
    let mut rp = 0.0;
    let mut rm = 0.0;
    let mut g1 = 0.0;
    let mut g2 = 0.0;
    for c in RGAMMA_TAYLOR.iter().rev() {
        rp = rp * mu + c;
        rm = rm * (-mu) + c;
    }
    // Γ₁ = -Σ_{k even} c_k μ^{k-2},  Γ₂ = Σ_{k odd} c_k μ^{k-1}
    let mu2 = mu * mu;
    for (i, c) in RGAMMA_TAYLOR.iter().enumerate().rev() {
        let k = i + 1;
        if k % 2 == 0 {
            g1 = g1 * mu2 + c;
        } else {
            g2 = g2 * mu2 + c;
        }
    }
    (-g1, g2, rp, rm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_and_halves() {
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        let sp = PI.sqrt();
        assert!((gamma(0.5).unwrap() - sp).abs() < 1e-15);
        assert!((gamma(1.5).unwrap() - 0.5 * sp).abs() < 1e-15);
        assert!((gamma(3.5).unwrap() / (15.0 / 8.0 * sp) - 1.0).abs() < 1e-14);
        assert!((gamma(-0.5).unwrap() / (-2.0 * sp) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn recurrence_holds() {
        for i in 1..200 {
            let x = -7.3 + 0.137 * i as f64;
            if (x - x.round()).abs() < 1e-9 && x <= 0.0 {
                continue;
            }
            let a = gamma(x + 1.0).unwrap();
            let b = x * gamma(x).unwrap();
            assert!((a / b - 1.0).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn large_argument() {
        // Γ(150) = 149!
        let lg: f64 = (1..150).map(|k| (k as f64).ln()).sum();
        assert!((gamma(150.0).unwrap().ln() - lg).abs() < 1e-12);
        let v = gamma(150.5).unwrap();
        assert!(v.is_finite());
        assert!(gamma(172.0).is_err());
    }

    #[test]
    fn poles_rejected() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-3.0).is_err());
        assert!(gamma(f64::NAN).is_err());
    }

    #[test]
    fn reciprocal_taylor_matches_lanczos() {
        for &mu in &[-0.5, -0.3, -0.01, 0.0, 0.2, 0.5] {
            let (g1, g2, rp, rm) = temme_gammas(mu);
            let ep = 1.0 / gamma(1.0 + mu).unwrap();
            let em = 1.0 / gamma(1.0 - mu).unwrap();
            assert!((rp - ep).abs() < 1e-14, "mu={mu}");
            assert!((rm - em).abs() < 1e-14, "mu={mu}");
            assert!((g2 - 0.5 * (ep + em)).abs() < 1e-14);
            if mu.abs() > 0.1 {
                assert!((g1 - (em - ep) / (2.0 * mu)).abs() < 1e-13);
            }
        }
    }
}
