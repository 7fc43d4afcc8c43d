//! Flat `key = value` configuration with `#` comments.

use std::collections::BTreeMap;
use std::path::PathBuf;
use udw_core::matrix_elements::EvalOptions;
use udw_core::model::{FieldSpec, PairConfig, SmearingSpec, SwitchingSpec};
use udw_core::quadrature::Tolerance;
use udw_core::{Error, Result};

const KEYS: &[&str] = &[
    "n",
    "mass_mT",
    "ir_cutoff_LambdaT",
    "omega_T",
    "L_over_T",
    "lambda_tilde",
    "switching",
    "truncation_halfwidth_T",
    "smearing",
    "smearing_radius_T",
    "tab_min_T",
    "tab_max_T",
    "tab_steps",
    "rel_tol",
    "abs_tol",
    "out",
    "t_ab_T",
    "uv_eps_T",
    "commutator_width_T",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// the pair at t_AB = t_ab_T; sweeps replace t_AB point by point
    pub pair: PairConfig,
    pub tab_min: f64,
    pub tab_max: f64,
    pub tab_steps: usize,
    pub opts: EvalOptions,
    pub out: Option<PathBuf>,
    /// smearing width in Δt for the `commutator` table
    pub commutator_width: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            pair: PairConfig::new(FieldSpec::massless(3), 7.0, 7.0, 0.0),
            tab_min: -14.0,
            tab_max: 14.0,
            tab_steps: 281,
            opts: EvalOptions::default(),
            out: None,
            commutator_width: 0.2,
        }
    }
}

impl SweepConfig {
    /// Sweep grid t_min + i (t_max - t_min)/(steps - 1).
    pub fn grid(&self) -> Vec<f64> {
        let span = self.tab_max - self.tab_min;
        let last = (self.tab_steps - 1) as f64;
        (0..self.tab_steps)
            .map(|i| self.tab_min + span * i as f64 / last)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.pair.validate()?;
        if self.tab_steps < 2 {
            return Err(Error::Config(format!("tab_steps must be ≥ 2, got {}", self.tab_steps)));
        }
        if !(self.tab_min < self.tab_max) {
            return Err(Error::Config(format!(
                "tab_min_T ({}) must be below tab_max_T ({})",
                self.tab_min, self.tab_max
            )));
        }
        if !(self.commutator_width > 0.0) {
            return Err(Error::Config("commutator_width_T must be > 0".into()));
        }
        Ok(())
    }
}

/// Parses `key = value` lines into a map; later lines override earlier ones.
pub fn parse_lines(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`, got `{raw}`", no + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn num(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .map_err(|_| Error::Config(format!("{key}: `{v}` is not a number")))
}

/// Builds a configuration from key/value pairs on top of the defaults.
pub fn from_map(map: &BTreeMap<String, String>) -> Result<SweepConfig> {
    for k in map.keys() {
        if !KEYS.contains(&k.as_str()) {
            return Err(Error::Config(format!("unknown key `{k}`")));
        }
    }
    let mut c = SweepConfig::default();
    let get = |k: &str| map.get(k).map(String::as_str);
    let mut field = c.pair.field;
    if let Some(v) = get("n") {
        field.n = v
            .parse()
            .map_err(|_| Error::Config(format!("n: `{v}` is not a positive integer")))?;
    }
    if let Some(v) = get("mass_mT") {
        field.mass = num("mass_mT", v)?;
    }
    if let Some(v) = get("ir_cutoff_LambdaT") {
        field.ir_cutoff = num("ir_cutoff_LambdaT", v)?;
    }
    let gap = get("omega_T").map(|v| num("omega_T", v)).transpose()?.unwrap_or(7.0);
    let l = get("L_over_T").map(|v| num("L_over_T", v)).transpose()?.unwrap_or(7.0);
    let t = get("t_ab_T").map(|v| num("t_ab_T", v)).transpose()?.unwrap_or(0.0);
    let mut pair = PairConfig::new(field, gap, l, t);
    if let Some(v) = get("lambda_tilde") {
        pair.coupling = num("lambda_tilde", v)?;
    }
    let half = get("truncation_halfwidth_T")
        .map(|v| num("truncation_halfwidth_T", v))
        .transpose()?
        .unwrap_or(3.0);
    pair.switching = match get("switching").unwrap_or("gaussian") {
        "gaussian" => SwitchingSpec::Gaussian,
        "truncated" => SwitchingSpec::TruncatedGaussian { half_width: half },
        other => return Err(Error::Config(format!("switching: `{other}` is not gaussian|truncated"))),
    };
    pair.smearing = match get("smearing").unwrap_or("pointlike") {
        "pointlike" => SmearingSpec::Pointlike,
        "gaussian" => {
            let r = get("smearing_radius_T")
                .ok_or_else(|| Error::Config("smearing = gaussian needs smearing_radius_T".into()))?;
            SmearingSpec::Gaussian {
                radius: num("smearing_radius_T", r)?,
            }
        }
        other => return Err(Error::Config(format!("smearing: `{other}` is not pointlike|gaussian"))),
    };
    c.pair = pair;
    if let Some(v) = get("tab_min_T") {
        c.tab_min = num("tab_min_T", v)?;
    }
    if let Some(v) = get("tab_max_T") {
        c.tab_max = num("tab_max_T", v)?;
    }
    if let Some(v) = get("tab_steps") {
        c.tab_steps = v
            .parse()
            .map_err(|_| Error::Config(format!("tab_steps: `{v}` is not a positive integer")))?;
    }
    let rel = get("rel_tol").map(|v| num("rel_tol", v)).transpose()?.unwrap_or(c.opts.tol.rel);
    let abs = get("abs_tol").map(|v| num("abs_tol", v)).transpose()?.unwrap_or(c.opts.tol.abs);
    c.opts.tol = Tolerance::new(rel, abs)?;
    if let Some(v) = get("uv_eps_T") {
        c.opts.uv_eps = num("uv_eps_T", v)?;
    }
    if let Some(v) = get("commutator_width_T") {
        c.commutator_width = num("commutator_width_T", v)?;
    }
    c.out = get("out").map(PathBuf::from);
    c.validate()?;
    Ok(c)
}

/// Reads an optional config file and applies `key=value` overrides.
pub fn load(text: Option<&str>, overrides: &[String]) -> Result<SweepConfig> {
    let mut map = match text {
        Some(t) => parse_lines(t)?,
        None => BTreeMap::new(),
    };
    for o in overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set expects key=value, got `{o}`")))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    from_map(&map)
}
