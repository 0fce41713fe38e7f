use super::{CFn, HalfPlaneFn, Oscillation};
use crate::config::{NormReport, QuadConfig};
use crate::error::{BesovError, Result};
use crate::quad::{golden_max, integrate_alpha, integrate_alpha_between, integrate_line, line_sup, LineSpec};
use crate::scalar::{c, fmax, C, Real};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

/// `sup_{z∈ℂ₊} |f(z)|`, searched on the boundary line (maximum principle)
/// together with the value at infinity.
pub fn sup_norm<T: Real>(f: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    cfg.validate()?;
    let centers = f.line_centers(T::zero());
    let m = |s: T| f.boundary_value(s).norm();
    let s = line_sup(&m, &centers, cfg);
    let value = fmax(s.value, f.at_infinity().norm());
    if !value.is_finite() {
        return Err(BesovError::NotInBesov(format!("{} is unbounded", f.label())));
    }
    Ok(NormReport { value, tail_bound: T::zero(), converged: true, evaluations: s.evals })
}

/// `‖f‖_{B₀} = ∫₀^∞ sup_β |f′(α+iβ)| dα`.
pub fn besov_seminorm<T: Real>(f: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    besov_seminorm_between(f, T::zero(), T::infinity(), cfg)
}

/// `∫_lo^hi sup_β |f′(α+iβ)| dα`.
pub fn besov_seminorm_between<T: Real>(f: &HalfPlaneFn<T>, lo: T, hi: T, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    cfg.validate()?;
    if f.is_constant() {
        return Ok(NormReport::exact(T::zero()));
    }
    let count = AtomicUsize::new(0);
    let g = |alpha: T| {
        let m = |b: T| f.d1(c(alpha, b)).norm();
        let s = line_sup(&m, &f.line_centers(alpha), cfg);
        count.fetch_add(s.evals, Ordering::Relaxed);
        s.value
    };
    let r = if lo == T::zero() && hi == T::infinity() {
        integrate_alpha(&g, cfg, &[], cfg.abs_tol, cfg.rel_tol)
    } else {
        integrate_alpha_between(&g, cfg, lo, hi, cfg.abs_tol, cfg.rel_tol)
    };
    finish(r.value, r.err, r.converged, count.into_inner(), cfg, |m| BesovError::NotInBesov(format!("{}: {m}", f.label())))
}

fn finish<T: Real>(
    value: T,
    err: T,
    converged: bool,
    evals: usize,
    cfg: &QuadConfig<T>,
    fail: impl Fn(&str) -> BesovError,
) -> Result<NormReport<T>> {
    if !value.is_finite() || !err.is_finite() {
        return Err(fail("tail does not converge"));
    }
    let ok = converged && err <= fmax(cfg.abs_tol, cfg.rel_tol * value);
    Ok(NormReport { value, tail_bound: err, converged: ok, evaluations: evals })
}

/// `‖f‖_B = ‖f‖_∞ + ‖f‖_{B₀}`.
pub fn besov_norm<T: Real>(f: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    Ok(sup_norm(f, cfg)?.plus(besov_seminorm(f, cfg)?))
}

/// `‖g‖_{E₀} = sup_α α ∫ |g′(α+iβ)| dβ`.
pub fn e_seminorm<T: Real>(g: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    cfg.validate()?;
    if g.is_constant() {
        return Ok(NormReport::exact(T::zero()));
    }
    let evals = AtomicUsize::new(0);
    let fail = std::sync::Mutex::new(None::<String>);
    let tol = cfg.rel_tol * T::lit(0.1);
    let profile = |u: T| {
        let a = u.exp();
        let spec = LineSpec::new(g.line_centers(a));
        let r = integrate_line(&|b: T| g.d1(c(a, b)).norm(), &spec, cfg.abs_tol, tol, cfg.budget);
        evals.fetch_add(r.evals, Ordering::Relaxed);
        if !r.converged && !r.value.is_finite() {
            *fail.lock().unwrap() = Some(format!("divergent line integral at α = {a}"));
        }
        a * r.value
    };
    let (u0, u1) = cfg.alpha_log_range;
    let n = 4 * cfg.alpha_nodes.max(8);
    let us: Vec<T> = (0..=n).map(|k| u0 + (u1 - u0) * T::from_usize_lossy(k) / T::from_usize_lossy(n)).collect();
    let vals: Vec<T> = us.iter().map(|&u| profile(u)).collect();
    if let Some(m) = fail.lock().unwrap().take() {
        return Err(BesovError::NotInE(m));
    }
    let (imax, vmax) = vals.iter().enumerate().fold((0, T::zero()), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    let mut value = vmax;
    if imax > 0 && imax < n {
        let (_, v, _) = golden_max(&profile, us[imax - 1], us[imax + 1], us[imax], vmax);
        value = fmax(value, v);
    }
    Ok(NormReport { value, tail_bound: value * tol, converged: imax > 0 && imax < n || value == T::zero(), evaluations: evals.into_inner() })
}

/// A function on ℂ₊ for the W-norm, with hints for the quadrature.
#[derive(Clone)]
pub struct WFn<T: Real> {
    pub g: CFn<T>,
    /// Feature locations in β as `(center, width)`.
    pub centers: Vec<(T, T)>,
    /// α-values where `α ↦ sup_β |g|` may jump or kink.
    pub alpha_breaks: Vec<T>,
    /// Oscillation of `g` along vertical lines.
    pub osc: Oscillation<T>,
}

impl<T: Real> WFn<T> {
    pub fn new<F: Fn(C<T>) -> C<T> + Send + Sync + 'static>(g: F) -> Self {
        Self { g: Arc::new(g), centers: vec![(T::zero(), T::one())], alpha_breaks: Vec::new(), osc: Oscillation::Unknown }
    }

    pub fn with_centers(mut self, c: Vec<(T, T)>) -> Self {
        self.centers = c;
        self
    }

    pub fn with_oscillation(mut self, o: Oscillation<T>) -> Self {
        self.osc = o;
        self
    }

    pub fn with_alpha_breaks(mut self, b: Vec<T>) -> Self {
        self.alpha_breaks = b;
        self
    }

    /// `f′` of a half-plane function.
    pub fn derivative_of(f: &HalfPlaneFn<T>) -> Self {
        let f2 = f.clone();
        let mut w = Self::new(move |z| f2.d1(z));
        w.centers = f.line_centers(T::zero());
        w.osc = f.oscillation();
        w
    }

    /// `z ↦ conj(f′(z))`, anti-holomorphic.
    pub fn conj_derivative_of(f: &HalfPlaneFn<T>) -> Self {
        let f2 = f.clone();
        let mut w = Self::new(move |z| f2.d1(z).conj());
        w.centers = f.line_centers(T::zero());
        w.osc = f.osc_conj();
        w
    }
}

/// `‖g‖_W = ∫₀^∞ sup_β |g(α+iβ)| dα` (ess sup taken as sup).
pub fn w_norm<T: Real>(g: &WFn<T>, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    w_weighted(g, &|_| T::one(), T::zero(), T::infinity(), cfg)
}

/// `∫_lo^hi w(α) sup_β |g(α+iβ)| dα`.
pub fn w_weighted<T: Real>(g: &WFn<T>, w: &(dyn Fn(T) -> T + Sync), lo: T, hi: T, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    cfg.validate()?;
    let count = AtomicUsize::new(0);
    let h = |alpha: T| {
        let m = |b: T| (g.g)(c(alpha, b)).norm();
        let mut centers = g.centers.clone();
        centers.push((T::zero(), alpha));
        let s = line_sup(&m, &centers, cfg);
        count.fetch_add(s.evals, Ordering::Relaxed);
        s.value * w(alpha)
    };
    let r = if lo == T::zero() && hi == T::infinity() {
        integrate_alpha(&h, cfg, &g.alpha_breaks, cfg.abs_tol, cfg.rel_tol)
    } else {
        integrate_alpha_between(&h, cfg, lo, hi, cfg.abs_tol, cfg.rel_tol)
    };
    finish(r.value, r.err, r.converged, count.into_inner(), cfg, |m| BesovError::NotInW(m.to_string()))
}

/// `‖f′‖_W`, equal to `‖f‖_{B₀}`.
pub fn w_norm_derivative<T: Real>(f: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    w_norm(&WFn::derivative_of(f), cfg)
}

/// Boundary `L¹` norm `∫ |g^b(s)| ds`.
pub fn h1_norm<T: Real>(g: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    cfg.validate()?;
    let spec = LineSpec::new(g.line_centers(T::zero()));
    let r = integrate_line(&|s: T| g.boundary_value(s).norm(), &spec, cfg.abs_tol, cfg.rel_tol, cfg.budget);
    if !r.converged && r.err > fmax(cfg.abs_tol, cfg.rel_tol * r.value) * T::lit(100.0) {
        return Err(BesovError::NotInH1(format!("{}: boundary values not integrable", g.label())));
    }
    finish(r.value, r.err, r.converged, r.evals, cfg, |m| BesovError::NotInH1(m.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::NamedFamily;
    use crate::scalar::cr;

    fn fam(k: NamedFamily<f64>) -> HalfPlaneFn<f64> {
        k.build().unwrap()
    }

    fn cfg() -> QuadConfig<f64> {
        QuadConfig::default()
    }

    #[test]
    fn sup_norm_examples() {
        for (f, v) in [
            (HalfPlaneFn::constant(cr(1.0)), 1.0),
            (fam(NamedFamily::Resolvent(cr(1.0))), 1.0),
            (fam(NamedFamily::Cayley(1)), 1.0),
        ] {
            let r = sup_norm(&f, &cfg()).unwrap();
            assert!((r.value - v).abs() < 1e-9, "{} {}", f.label(), r.value);
        }
    }

    #[test]
    fn seminorm_examples() {
        let r = besov_seminorm(&fam(NamedFamily::Resolvent(cr(1.0))), &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6, "{r:?}");
        assert!(r.converged);
        let r = besov_seminorm(&fam(NamedFamily::Exponential(1.0)), &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6, "{r:?}");
        assert_eq!(besov_seminorm(&HalfPlaneFn::constant(cr(1.0)), &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn besov_norm_examples() {
        let g1 = besov_norm(&fam(NamedFamily::ExpReciprocal(1.0)), &cfg()).unwrap();
        assert!((g1.value - (2.0 - (-1.0f64).exp())).abs() < 1e-5, "{g1:?}");
        let e1 = besov_norm(&fam(NamedFamily::Exponential(1.0)), &cfg()).unwrap();
        assert!((e1.value - 2.0).abs() < 1e-5);
    }

    #[test]
    fn e_seminorm_examples() {
        let r = e_seminorm(&fam(NamedFamily::ResolventSquare(cr(1.0))), &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6, "{r:?}");
        let r = e_seminorm(&fam(NamedFamily::ResolventSquare(cr(2.0))), &cfg()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-6, "{r:?}");
        assert_eq!(e_seminorm(&HalfPlaneFn::constant(cr(1.0)), &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn w_norm_examples() {
        let r = w_norm_derivative(&fam(NamedFamily::Exponential(1.0)), &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6);
        let r = w_norm_derivative(&fam(NamedFamily::Resolvent(cr(1.0))), &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6);
        let ind = WFn::new(|z: C<f64>| if z.re >= 1.0 && z.re <= 2.0 { cr(1.0) } else { cr(0.0) }).with_alpha_breaks(vec![1.0, 2.0]);
        let r = w_norm(&ind, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn h1_examples() {
        let r = h1_norm(&fam(NamedFamily::ResolventSquare(cr(1.0))), &cfg()).unwrap();
        assert!((r.value - std::f64::consts::PI).abs() < 1e-6, "{r:?}");
        let two = fam(NamedFamily::ResolventSquare(cr(1.0))).scale(cr(2.0));
        assert!((h1_norm(&two, &cfg()).unwrap().value - 2.0 * std::f64::consts::PI).abs() < 1e-6);
        let r = h1_norm(&fam(NamedFamily::ResolventSquare(cr(2.0))), &cfg()).unwrap();
        assert!((r.value - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
        assert!(matches!(h1_norm(&fam(NamedFamily::Resolvent(cr(1.0))), &cfg()), Err(BesovError::NotInH1(_))));
    }
}
