//! Field, detector and switching configuration. All lengths and times are in
//! units of the switching time scale T.

use crate::error::{Error, Result};

/// Half-width of the Gaussian strong support, in units of T.
pub const GAUSSIAN_STRONG_HALF_WIDTH: f64 = 3.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    /// spatial dimension n
    pub n: usize,
    /// mass m·T
    pub mass: f64,
    /// hard infrared cutoff Λ·T; only used for the massless field in 1+1
    pub ir_cutoff: f64,
}

impl FieldSpec {
    pub fn massless(n: usize) -> Self {
        FieldSpec {
            n,
            mass: 0.0,
            ir_cutoff: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("spatial dimension n must be ≥ 1".into()));
        }
        if !(self.mass >= 0.0 && self.mass.is_finite()) {
            return Err(Error::Config(format!("mass must be ≥ 0, got {}", self.mass)));
        }
        if !(self.ir_cutoff >= 0.0 && self.ir_cutoff.is_finite()) {
            return Err(Error::Config(format!(
                "IR cutoff must be ≥ 0, got {}",
                self.ir_cutoff
            )));
        }
        if self.needs_ir_cutoff() && self.ir_cutoff <= 0.0 {
            return Err(Error::Regime(
                "massless field in 1+1 dimensions requires an IR cutoff Λ > 0".into(),
            ));
        }
        Ok(())
    }

    /// True for the massless field in 1+1, whose vacuum two-point function is
    /// infrared divergent.
    pub fn needs_ir_cutoff(&self) -> bool {
        self.n == 1 && self.mass == 0.0
    }

    /// Lower limit of momentum integrals over the state-dependent parts.
    pub fn k_min(&self) -> f64 {
        if self.needs_ir_cutoff() {
            self.ir_cutoff
        } else {
            0.0
        }
    }

    pub fn omega(&self, k: f64) -> f64 {
        if self.mass == 0.0 {
            k
        } else {
            k.hypot(self.mass)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorSpec {
    /// energy gap Ω·T
    pub gap: f64,
    /// switching centre t_j/T
    pub center: f64,
    /// position along the separation axis, x_j/T
    pub position: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwitchingSpec {
    /// χ(t) = exp(-(t - t_j)²)
    Gaussian,
    /// Gaussian cut to |t - t_j| ≤ half_width
    TruncatedGaussian { half_width: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmearingSpec {
    Pointlike,
    /// F(x) = (π r²)^{-n/2} exp(-|x|²/r²)
    Gaussian { radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairConfig {
    pub field: FieldSpec,
    pub a: DetectorSpec,
    pub b: DetectorSpec,
    /// dimensionless coupling λ̃
    pub coupling: f64,
    pub switching: SwitchingSpec,
    pub smearing: SmearingSpec,
}

impl PairConfig {
    /// Identical Gaussian-switched pointlike detectors: A at the origin switched
    /// at t = 0, B at distance `l` switched at `t_ab`.
    pub fn new(field: FieldSpec, gap: f64, l: f64, t_ab: f64) -> Self {
        PairConfig {
            field,
            a: DetectorSpec {
                gap,
                center: 0.0,
                position: 0.0,
            },
            b: DetectorSpec {
                gap,
                center: t_ab,
                position: l,
            },
            coupling: 1.0,
            switching: SwitchingSpec::Gaussian,
            smearing: SmearingSpec::Pointlike,
        }
    }

    pub fn with_t_ab(mut self, t_ab: f64) -> Self {
        self.b.center = self.a.center + t_ab;
        self
    }

    pub fn gap(&self) -> f64 {
        self.a.gap
    }

    /// t_B - t_A
    pub fn t_ab(&self) -> f64 {
        self.b.center - self.a.center
    }

    /// spatial separation L/T
    pub fn distance(&self) -> f64 {
        (self.b.position - self.a.position).abs()
    }

    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        for d in [&self.a, &self.b] {
            if !(d.gap.is_finite() && d.center.is_finite() && d.position.is_finite()) {
                return Err(Error::Config("detector parameters must be finite".into()));
            }
        }
        if self.a.gap != self.b.gap {
            return Err(Error::Config(format!(
                "detectors must share the gap (Ω_A = {}, Ω_B = {})",
                self.a.gap, self.b.gap
            )));
        }
        if !(self.distance() > 0.0) {
            return Err(Error::Config("detector separation L must be > 0".into()));
        }
        if !self.coupling.is_finite() {
            return Err(Error::Config("coupling must be finite".into()));
        }
        if let SwitchingSpec::TruncatedGaussian { half_width } = self.switching {
            if !(half_width > 0.0 && half_width.is_finite()) {
                return Err(Error::Config("truncation half-width must be > 0".into()));
            }
        }
        if let SmearingSpec::Gaussian { radius } = self.smearing {
            if !(radius > 0.0 && radius.is_finite()) {
                return Err(Error::Config("smearing radius must be > 0".into()));
            }
        }
        Ok(())
    }
}

/// |F̃(k)|² for the smearing profile.
pub fn smearing_factor(k: f64, s: &SmearingSpec) -> f64 {
    match *s {
        SmearingSpec::Pointlike => 1.0,
        SmearingSpec::Gaussian { radius } => (-0.5 * k * k * radius * radius).exp(),
    }
}

/// χ(t - t_j) for a detector switched at `center`.
pub fn switching_profile(t: f64, center: f64, s: &SwitchingSpec) -> f64 {
    let u = t - center;
    match *s {
        SwitchingSpec::Gaussian => (-u * u).exp(),
        SwitchingSpec::TruncatedGaussian { half_width } => {
            if u.abs() <= half_width {
                (-u * u).exp()
            } else {
                0.0
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrongSupport {
    pub lo: f64,
    pub hi: f64,
}

impl StrongSupport {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }
}

pub fn strong_support(d: &DetectorSpec, s: &SwitchingSpec) -> StrongSupport {
    let w = match *s {
        SwitchingSpec::Gaussian => GAUSSIAN_STRONG_HALF_WIDTH,
        SwitchingSpec::TruncatedGaussian { half_width } => half_width,
    };
    StrongSupport {
        lo: d.center - w,
        hi: d.center + w,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    Spacelike,
    LightlikeBand,
    Timelike,
}

impl CausalClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            CausalClass::Spacelike => "spacelike",
            CausalClass::LightlikeBand => "lightlike_band",
            CausalClass::Timelike => "timelike",
        }
    }
}

/// Classifies B's strong support against the light rays leaving A's strong
/// support. Touching a light ray at a single instant does not count as contact.
pub fn causal_class(cfg: &PairConfig) -> CausalClass {
    let sa = strong_support(&cfg.a, &cfg.switching);
    let sb = strong_support(&cfg.b, &cfg.switching);
    let l = cfg.distance();
    let c = cfg.t_ab().abs();
    let w = sa.half_width() + sb.half_width();
    let slack = 1e-12 * (1.0 + l + c);
    if c + w <= l + slack {
        CausalClass::Spacelike
    } else if c - w >= l - slack {
        CausalClass::Timelike
    } else {
        CausalClass::LightlikeBand
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(t: f64) -> PairConfig {
        PairConfig::new(FieldSpec::massless(3), 7.0, 7.0, t)
    }

    #[test]
    fn causal_classes() {
        assert_eq!(causal_class(&cfg(0.0)), CausalClass::Spacelike);
        assert_eq!(causal_class(&cfg(7.0)), CausalClass::LightlikeBand);
        assert_eq!(causal_class(&cfg(-7.0)), CausalClass::LightlikeBand);
        assert_eq!(causal_class(&cfg(20.0)), CausalClass::Timelike);
        assert_eq!(causal_class(&cfg(-20.0)), CausalClass::Timelike);
        let mut t = cfg(0.9);
        t.switching = SwitchingSpec::TruncatedGaussian { half_width: 3.0 };
        assert_eq!(causal_class(&t), CausalClass::Spacelike);
        assert_eq!(causal_class(&t.with_t_ab(1.5)), CausalClass::LightlikeBand);
    }

    #[test]
    fn validation() {
        assert!(cfg(0.0).validate().is_ok());
        let mut c = cfg(0.0);
        c.b.gap = 3.0;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        let mut c = cfg(0.0);
        c.field = FieldSpec::massless(1);
        assert!(matches!(c.validate(), Err(Error::Regime(_))));
        c.field.ir_cutoff = 0.01;
        assert!(c.validate().is_ok());
        c.b.position = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn profiles() {
        let s = SwitchingSpec::TruncatedGaussian { half_width: 3.0 };
        assert_eq!(switching_profile(3.5, 0.0, &s), 0.0);
        assert!((switching_profile(1.0, 0.0, &s) - (-1f64).exp()).abs() < 1e-16);
        assert_eq!(smearing_factor(5.0, &SmearingSpec::Pointlike), 1.0);
        let g = smearing_factor(2.0, &SmearingSpec::Gaussian { radius: 0.5 });
        assert!((g - (-0.5f64).exp()).abs() < 1e-16);
    }
}
