use crate::analyzers::{DEFAULT_CONIC_WINDOW, DEFAULT_COV_DEPTH, DEFAULT_SEARCH_BUDGET};
use crate::changevars::ChangeOfVars;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid config: {0}")]
    Format(String),
    #[error("invalid config: {0} must be positive")]
    NotPositive(&'static str),
}

/// Inclusive sample window `start..=end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub start: i64,
    pub end: i64,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            start: *DEFAULT_CONIC_WINDOW.start(),
            end: *DEFAULT_CONIC_WINDOW.end(),
        }
    }
}

/// `(l, A)` for the parity check along a curve where `F = t^l / A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParitySpec {
    pub l: u64,
    pub a: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicSpec {
    pub f: String,
    pub g: String,
}

/// A rational function in `t` for the cyclic-cover genus table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusSpec {
    pub f: String,
    #[serde(default)]
    pub exponent: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub box_radius: u64,
    pub naturals: u64,
    pub depth: u32,
    pub budget: u64,
    pub conic_window: Window,
    pub cov_depth: usize,
    /// Scan threads; `None` uses all cores. Never affects results.
    pub workers: Option<usize>,
    /// Declares the scan box large enough that missing naturals are
    /// genuinely missing.
    pub exhaustive_box: bool,
    /// Changes of variables (JSON op lists) offered to the classifier.
    pub hints: Vec<String>,
    pub parity: Option<ParitySpec>,
    pub conic: Option<ConicSpec>,
    pub genus: Option<GenusSpec>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            box_radius: 200,
            naturals: 1000,
            depth: 6,
            budget: DEFAULT_SEARCH_BUDGET,
            conic_window: Window::default(),
            cov_depth: DEFAULT_COV_DEPTH,
            workers: None,
            exhaustive_box: false,
            hints: Vec::new(),
            parity: None,
            conic: None,
            genus: None,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let checks = [
            (self.box_radius > 0, "box_radius"),
            (self.naturals > 0, "naturals"),
            (self.depth > 0, "depth"),
            (self.budget > 0, "budget"),
            (self.cov_depth > 0, "cov_depth"),
            (self.workers != Some(0), "workers"),
        ];
        for (ok, name) in checks {
            if !ok {
                return Err(ConfigError::NotPositive(name));
            }
        }
        if self.conic_window.start > self.conic_window.end {
            return Err(ConfigError::Format("conic_window start exceeds end".into()));
        }
        for h in &self.hints {
            ChangeOfVars::from_json(h).map_err(|e| ConfigError::Format(format!("hint {h:?}: {e}")))?;
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: AnalysisConfig =
            toml::from_str(text).map_err(|e| ConfigError::Format(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("serializable")
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_toml(&text)
    }

    /// Report form: numbers as strings, worker count omitted.
    pub fn to_report_value(&self) -> Value {
        let mut v = json!({
            "box_radius": self.box_radius.to_string(),
            "naturals": self.naturals.to_string(),
            "depth": self.depth.to_string(),
            "budget": self.budget.to_string(),
            "conic_window": [self.conic_window.start.to_string(), self.conic_window.end.to_string()],
            "cov_depth": self.cov_depth.to_string(),
            "exhaustive_box": self.exhaustive_box,
            "hints": self.hints,
        });
        let map = v.as_object_mut().expect("object");
        if let Some(p) = &self.parity {
            map.insert("parity".into(), json!({"l": p.l.to_string(), "a": p.a}));
        }
        if let Some(c) = &self.conic {
            map.insert("conic".into(), json!({"f": c.f, "g": c.g}));
        }
        if let Some(g) = &self.genus {
            map.insert(
                "genus".into(),
                json!({"f": g.f, "exponent": g.exponent.map(|n| n.to_string())}),
            );
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_round_trip() {
        let cfg = AnalysisConfig::default();
        assert_eq!((cfg.box_radius, cfg.naturals, cfg.depth), (200, 1000, 6));
        assert_eq!(cfg.budget, 1_000_000);
        assert_eq!(cfg.cov_depth, 3);
        assert_eq!(cfg.conic_window, Window { start: 1, end: 200 });
        let full = AnalysisConfig {
            workers: Some(2),
            exhaustive_box: true,
            hints: vec![r#"[{"op":"swap"}]"#.into()],
            parity: Some(ParitySpec { l: 2, a: "1".into() }),
            conic: Some(ConicSpec { f: "T".into(), g: "-T".into() }),
            genus: Some(GenusSpec { f: "t*(t-1)".into(), exponent: Some(5) }),
            ..cfg
        };
        assert_eq!(AnalysisConfig::from_toml(&full.to_toml()).unwrap(), full);
    }

    #[test]
    fn partial_and_invalid_files() {
        let cfg = AnalysisConfig::from_toml("box_radius = 10\nnaturals = 20\n").unwrap();
        assert_eq!((cfg.box_radius, cfg.naturals, cfg.depth), (10, 20, 6));
        assert!(matches!(
            AnalysisConfig::from_toml("depth = 0"),
            Err(ConfigError::NotPositive("depth"))
        ));
        assert!(matches!(AnalysisConfig::from_toml("boxx = 1"), Err(ConfigError::Format(_))));
        assert!(AnalysisConfig::from_toml("[conic_window]\nstart = 5\nend = 1\n").is_err());
        assert!(AnalysisConfig::from_toml("hints = ['[{\"op\":\"shear\"}]']").is_err());
        assert!(AnalysisConfig::from_toml("hints = ['[{\"op\":\"addYtoX\",\"poly\":\"y^2\"}]']").is_ok());
    }
}
