//! JSON run configuration.
//!
//! ```json
//! {
//!   "quadrature": { "abs_tol": 1e-8, "rel_tol": 1e-5, "rel_tol_2d": 1e-4, "budget": 200000 },
//!   "seed": 7
//! }
//! ```
//!
//! Every field is optional; omitted ones keep the library defaults.

use anyhow::{Context, Result};
use besov_core::QuadratureConfig;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub quadrature: QuadOverrides,
    /// Seed for the random points and matrices of the verification suites.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadOverrides {
    pub alpha_nodes: Option<usize>,
    pub alpha_log_range: Option<(f64, f64)>,
    pub beta_window_init: Option<f64>,
    pub beta_window_growth: Option<f64>,
    pub sup_samples: Option<usize>,
    pub refine_rounds: Option<usize>,
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub rel_tol_2d: Option<f64>,
    pub budget: Option<usize>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing config {}", p.display()))
            }
        }
    }

    pub fn quad(&self) -> Result<QuadratureConfig> {
        let mut c = QuadratureConfig::default();
        let q = &self.quadrature;
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = q.$f { c.$f = v; } )* };
        }
        set!(alpha_nodes, alpha_log_range, beta_window_init, beta_window_growth, sup_samples, refine_rounds, abs_tol, rel_tol, rel_tol_2d, budget);
        c.validate()?;
        Ok(c)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(7)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_and_rejects() {
        let c: RunConfig = serde_json::from_str(r#"{"quadrature": {"abs_tol": 1e-9}, "seed": 3}"#).unwrap();
        assert_eq!(c.quad().unwrap().abs_tol, 1e-9);
        assert_eq!(c.seed(), 3);
        assert!(serde_json::from_str::<RunConfig>(r#"{"quad": {}}"#).is_err());
        let bad: RunConfig = serde_json::from_str(r#"{"quadrature": {"rel_tol": -1}}"#).unwrap();
        assert!(bad.quad().is_err());
    }
}
