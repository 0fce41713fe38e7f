use crate::scalar::{C, Real};
use serde::Serialize;

use crate::linalg::CMat;

/// Numerical-integration policy shared by every norm and calculus routine.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadConfig<T: Real> {
    /// Number of u = log α nodes in the initial outer partition.
    pub alpha_nodes: usize,
    /// Initial range `[u_min, u_max]` for α = e^u; extended while the tails matter.
    pub alpha_log_range: (T, T),
    /// Initial half-width of the β window.
    pub beta_window_init: T,
    /// Factor by which the β window grows.
    pub beta_window_growth: T,
    /// Samples per decade used by the sup search on a vertical line.
    pub sup_samples: usize,
    /// Number of local maxima refined by golden-section search.
    pub refine_rounds: usize,
    pub abs_tol: T,
    pub rel_tol: T,
    /// Relative tolerance for two-dimensional integrals.
    pub rel_tol_2d: T,
    /// Maximum number of integrand evaluations per one-dimensional integral.
    pub budget: usize,
}

impl<T: Real> Default for QuadConfig<T> {
    fn default() -> Self {
        let floor = T::tol_floor();
        Self {
            alpha_nodes: 16,
            alpha_log_range: (T::lit(-12.0), T::lit(10.0)),
            beta_window_init: T::lit(64.0),
            beta_window_growth: T::lit(8.0),
            sup_samples: 12,
            refine_rounds: 3,
            abs_tol: T::lit(1e-8).max(floor),
            rel_tol: T::lit(1e-5).max(floor),
            rel_tol_2d: T::lit(1e-4).max(floor),
            budget: 200_000,
        }
    }
}

impl<T: Real> QuadConfig<T> {
    /// Checks the invariants of the configuration.
    pub fn validate(&self) -> crate::Result<()> {
        let bad = |m: &str| Err(crate::BesovError::InvalidParameter(m.to_string()));
        if !(self.abs_tol > T::zero()) || !(self.rel_tol > T::zero()) || !(self.rel_tol_2d > T::zero()) {
            return bad("tolerances must be positive");
        }
        if self.alpha_nodes < 8 {
            return bad("alpha_nodes must be at least 8");
        }
        if !(self.alpha_log_range.0 < self.alpha_log_range.1) {
            return bad("alpha_log_range must be increasing");
        }
        if !(self.beta_window_init > T::zero()) || !(self.beta_window_growth > T::one()) {
            return bad("beta window must be positive and grow");
        }
        if self.budget < 1000 || self.sup_samples < 2 {
            return bad("budget or sup_samples too small");
        }
        Ok(())
    }

    /// Tighter copy: both tolerances scaled by `factor`.
    pub fn tightened(&self, factor: T) -> Self {
        let floor = T::tol_floor();
        Self {
            abs_tol: (self.abs_tol * factor).max(floor),
            rel_tol: (self.rel_tol * factor).max(floor),
            rel_tol_2d: (self.rel_tol_2d * factor).max(floor),
            budget: self.budget * 4,
            ..self.clone()
        }
    }
}

/// Value of a norm together with convergence metadata.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormReport<T> {
    pub value: T,
    pub tail_bound: T,
    pub converged: bool,
    pub evaluations: usize,
}

impl<T: Real> NormReport<T> {
    pub fn exact(value: T) -> Self {
        Self { value, tail_bound: T::zero(), converged: true, evaluations: 0 }
    }

    /// Sum of two reports.
    pub fn plus(self, o: Self) -> Self {
        Self {
            value: self.value + o.value,
            tail_bound: self.tail_bound + o.tail_bound,
            converged: self.converged && o.converged,
            evaluations: self.evaluations + o.evaluations,
        }
    }
}

/// Result of an operator-valued computation.
#[derive(Debug, Clone, PartialEq)]
pub struct CalcReport<T: Real> {
    pub matrix: CMat<T>,
    pub error_estimate: T,
    pub converged: bool,
    pub evaluations: usize,
}

/// Scalar result of a two-dimensional quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarReport<T: Real> {
    pub value: C<T>,
    pub error_estimate: T,
    pub converged: bool,
    pub evaluations: usize,
}
