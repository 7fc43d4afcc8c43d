//! Minimal double-double arithmetic (≈ 31 significant digits), used where a
//! closed form subtracts nearly equal terms.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const SQRT_PI: Dd = Dd {
        hi: 1.772_453_850_905_516,
        lo: -7.666_586_499_825_799e-17,
    };
    pub const SQRT_2: Dd = Dd {
        hi: 1.414_213_562_373_095_1,
        lo: -9.667_293_313_452_913e-17,
    };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// e^x, by halving to a small argument, Taylor series and squaring.
    pub fn exp(self) -> Dd {
        let m = 8;
        let r = self / Dd::new(f64::powi(2.0, m));
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for k in 1..30 {
            term = term * r / Dd::new(k as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-34 * sum.hi.abs() {
                break;
            }
        }
        for _ in 0..m {
            sum = sum * sum;
        }
        sum
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_square_correctly() {
        let two = Dd::SQRT_2 * Dd::SQRT_2 - Dd::new(2.0);
        assert!(two.to_f64().abs() < 1e-30);
        let pi = Dd::SQRT_PI * Dd::SQRT_PI;
        // π in double-double
        let d = pi - Dd { hi: std::f64::consts::PI, lo: 1.224_646_799_147_353_2e-16 };
        assert!(d.to_f64().abs() < 1e-30);
    }

    #[test]
    fn exp_is_consistent() {
        let a = Dd::new(-24.5).exp();
        let b = Dd::new(24.5).exp();
        assert!((a * b - Dd::ONE).to_f64().abs() < 1e-28);
        assert!((a.to_f64() / (-24.5f64).exp() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = Dd::new(1.0) / Dd::new(3.0);
        let y = x * Dd::new(3.0) - Dd::ONE;
        assert!(y.to_f64().abs() < 1e-31);
    }
}
