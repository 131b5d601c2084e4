//! JSON experiment configuration.

use std::fmt;
use std::path::PathBuf;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};

use crate::error::{MtoaError, Result};
use crate::sim::{NetworkConfig, ResetWindow, Scheme};
use crate::strategy::{derive_strategy_mtoa_g, derive_strategy_mtoa_l, AccessStrategy};

pub const DEFAULT_HORIZON: u64 = 1_000_000;
pub const FULL_SCALE_HORIZON: u64 = 10_000_000;
pub const DEFAULT_REPLICATIONS: usize = 5;
pub const DEFAULT_ALPHA: f64 = 0.9;
pub const DEFAULT_Q0: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Simulate,
    Analyze,
    Sweep,
    Compare,
    Recommend,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Simulate => "simulate",
            Mode::Analyze => "analyze",
            Mode::Sweep => "sweep",
            Mode::Compare => "compare",
            Mode::Recommend => "recommend",
        };
        f.write_str(s)
    }
}

/// Non-negative integer that may also be written as an integral float (`1e7`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Count(u64);

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Count;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Count, E> {
                Ok(Count(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Count, E> {
                u64::try_from(v).map(Count).map_err(|_| E::custom(format!("expected a non-negative integer, got {v}")))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Count, E> {
                if v >= 0.0 && v.fract() == 0.0 && v <= 9_007_199_254_740_992.0 {
                    Ok(Count(v as u64))
                } else {
                    Err(E::custom(format!("expected a non-negative integer, got {v}")))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum WindowValue {
    Finite(Count),
    Unbounded,
}

impl<'de> Deserialize<'de> for WindowValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(Count),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(c) => Ok(WindowValue::Finite(c)),
            Raw::Text(s) if s == "unbounded" => Ok(WindowValue::Unbounded),
            Raw::Text(s) => {
                Err(de::Error::custom(format!("expected a positive integer or \"unbounded\", got \"{s}\"")))
            }
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    q_values: Option<Vec<f64>>,
    m_values: Option<Vec<Count>>,
    n_c_values: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: Mode,
    scheme: Option<Scheme>,
    n: Option<Count>,
    #[serde(rename = "T")]
    horizon: Option<Count>,
    #[serde(rename = "L")]
    null_actions: Option<Count>,
    alpha: Option<f64>,
    q_th: Option<f64>,
    m_window: Option<WindowValue>,
    q0: Option<f64>,
    seed: Option<u64>,
    replications: Option<Count>,
    j_min: Option<f64>,
    grid: Option<RawGrid>,
    strategy: Option<AccessStrategy>,
    workers: Option<Count>,
    out: Option<PathBuf>,
}

/// Grid overrides for sweep mode; unset axes use the family defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GridSpec {
    pub q_values: Option<Vec<f64>>,
    pub m_values: Option<Vec<u64>>,
    pub n_c_values: Option<Vec<u32>>,
}

/// Validated experiment description.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub mode: Mode,
    pub scheme: Option<Scheme>,
    pub nodes: usize,
    pub horizon: u64,
    /// Whether `T` came from the config rather than the default.
    pub horizon_explicit: bool,
    pub null_actions: Option<usize>,
    pub alpha: f64,
    pub q_threshold: Option<f64>,
    #[serde(serialize_with = "serialize_window")]
    pub reset_window: Option<ResetWindow>,
    /// Initial transmit value used to derive the MTOA-L capture depth.
    pub q0: f64,
    pub seed: u64,
    pub replications: usize,
    pub j_min: Option<f64>,
    pub grid: Option<GridSpec>,
    pub strategy: Option<AccessStrategy>,
    pub workers: Option<usize>,
    pub output_path: Option<PathBuf>,
}

fn serialize_window<S: serde::Serializer>(w: &Option<ResetWindow>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.serialize_str(&w.to_string()),
        None => s.serialize_none(),
    }
}

fn config_err(msg: impl Into<String>) -> MtoaError {
    MtoaError::Config(msg.into())
}

fn in_range(key: &str, v: f64, ok: bool, range: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(config_err(format!("{key} must lie in {range}, got {v}")))
    }
}

fn to_usize(key: &str, c: Count) -> Result<usize> {
    usize::try_from(c.0).map_err(|_| config_err(format!("{key} is too large")))
}

/// Parses and validates a JSON experiment description.
pub fn parse_config(text: &str) -> Result<ExperimentSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            config_err(e.inner().to_string())
        } else {
            config_err(format!("{path}: {}", e.inner()))
        }
    })?;
    let nodes = match raw.n {
        Some(c) if c.0 >= 1 => to_usize("n", c)?,
        Some(_) => return Err(config_err("n must be at least 1")),
        None if raw.strategy.is_some() && raw.mode == Mode::Analyze => 1,
        None => return Err(config_err("missing required key `n`")),
    };
    let horizon = raw.horizon.map(|c| c.0).unwrap_or(DEFAULT_HORIZON);
    if horizon < 1 {
        return Err(config_err("T must be at least 1"));
    }
    let null_actions = raw.null_actions.map(|c| to_usize("L", c)).transpose()?;
    if null_actions == Some(0) {
        return Err(config_err("L must be at least 1"));
    }
    let alpha = raw.alpha.unwrap_or(DEFAULT_ALPHA);
    in_range("alpha", alpha, alpha > 0.0 && alpha <= 1.0, "(0,1]")?;
    if let Some(q) = raw.q_th {
        in_range("q_th", q, (0.0..=1.0).contains(&q), "[0,1]")?;
    }
    let q0 = raw.q0.unwrap_or(DEFAULT_Q0);
    in_range("q0", q0, q0 > 0.0 && q0 <= 1.0, "(0,1]")?;
    let reset_window = match raw.m_window {
        Some(WindowValue::Finite(c)) if c.0 >= 1 => Some(ResetWindow::Finite(c.0)),
        Some(WindowValue::Finite(_)) => return Err(config_err("m_window must be at least 1 or \"unbounded\"")),
        Some(WindowValue::Unbounded) => Some(ResetWindow::Unbounded),
        None => None,
    };
    let replications =
        raw.replications.map(|c| to_usize("replications", c)).transpose()?.unwrap_or(DEFAULT_REPLICATIONS);
    if replications < 1 {
        return Err(config_err("replications must be at least 1"));
    }
    if let Some(j) = raw.j_min {
        in_range("j_min", j, (0.0..=1.0).contains(&j), "[0,1]")?;
    }
    let workers = raw.workers.map(|c| to_usize("workers", c)).transpose()?;
    if workers == Some(0) {
        return Err(config_err("workers must be at least 1"));
    }
    let grid = raw.grid.map(|g| GridSpec {
        q_values: g.q_values,
        m_values: g.m_values.map(|v| v.into_iter().map(|c| c.0).collect()),
        n_c_values: g.n_c_values,
    });
    if let Some(s) = &raw.strategy {
        s.validate()?;
    }
    let spec = ExperimentSpec {
        mode: raw.mode,
        scheme: raw.scheme,
        nodes,
        horizon,
        horizon_explicit: raw.horizon.is_some(),
        null_actions,
        alpha,
        q_threshold: raw.q_th,
        reset_window,
        q0,
        seed: raw.seed.unwrap_or(0),
        replications,
        j_min: raw.j_min,
        grid,
        strategy: raw.strategy,
        workers,
        output_path: raw.out,
    };
    spec.check_mode_requirements()?;
    Ok(spec)
}

impl ExperimentSpec {
    fn require_scheme(&self) -> Result<Scheme> {
        self.scheme.ok_or_else(|| config_err(format!("{} mode requires `scheme`", self.mode)))
    }

    fn check_mode_requirements(&self) -> Result<()> {
        match self.mode {
            Mode::Simulate | Mode::Compare => {
                self.network_config(self.seed)?;
            }
            Mode::Analyze => {
                if self.strategy.is_none() {
                    self.network_config(self.seed)?;
                }
            }
            Mode::Sweep => {
                self.require_scheme()?;
            }
            Mode::Recommend => {
                self.require_scheme()?;
                if self.j_min.is_none() {
                    return Err(config_err("recommend mode requires `j_min`"));
                }
                if self.nodes < 2 {
                    return Err(config_err("recommend mode requires n >= 2"));
                }
            }
        }
        Ok(())
    }

    /// Simulation settings for one replication seed.
    pub fn network_config(&self, seed: u64) -> Result<NetworkConfig> {
        let scheme = self.require_scheme()?;
        let l = self.null_actions.ok_or_else(|| config_err("missing required key `L`"))?;
        let cfg = match scheme {
            Scheme::MtoaL => {
                let q_th = self.q_threshold.ok_or_else(|| config_err("mtoa-l requires `q_th`"))?;
                NetworkConfig::mtoa_l(self.nodes, self.horizon, l, self.alpha, q_th, seed)
            }
            Scheme::MtoaG => {
                let w = self.reset_window.ok_or_else(|| config_err("mtoa-g requires `m_window`"))?;
                NetworkConfig::mtoa_g(self.nodes, self.horizon, l, self.alpha, w, seed)
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Strategy analysed for this spec: the explicit one, else the one the scheme learns.
    pub fn access_strategy(&self) -> Result<AccessStrategy> {
        if let Some(s) = &self.strategy {
            return Ok(s.clone());
        }
        let cfg = self.network_config(self.seed)?;
        match cfg.scheme {
            Scheme::MtoaL => derive_strategy_mtoa_l(cfg.null_actions, cfg.alpha, cfg.q_threshold, self.q0),
            Scheme::MtoaG => derive_strategy_mtoa_g(cfg.null_actions, cfg.reset_window),
        }
    }

    /// Switches to the long horizon unless `T` was set explicitly.
    pub fn apply_full_scale(&mut self) {
        if !self.horizon_explicit {
            self.horizon = FULL_SCALE_HORIZON;
        }
    }

    /// Replication seeds `seed, seed + 1, ...`.
    pub fn replication_seeds(&self) -> Vec<u64> {
        (0..self.replications as u64).map(|i| self.seed.wrapping_add(i)).collect()
    }
}
