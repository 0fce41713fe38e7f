use super::{HalfPlaneFn, Oscillation};
use crate::config::{QuadConfig, ScalarReport};
use crate::error::{BesovError, Result};
use crate::quad::{integrate_alpha, integrate_line_osc, LineSpec, OscValue, QuadResult};
use crate::scalar::{c, cr, fmax, C, Real};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

/// Which reproducing formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `f(∞) − (2/π)∬ α f′(α+iβ)/(z+α−iβ)²`
    First,
    /// `f(∞) − (4/π)∬ α Re f′(α+iβ)/(z+α−iβ)²`
    Re,
    /// `f(∞) − (4i/π)∬ α Im f′(α+iβ)/(z+α−iβ)²`
    Im,
    /// `f(∞) + (4/π)∬ α(x+α) f″(α+iβ)/((x+α)²+(y−β)²)`
    Second,
}

impl std::str::FromStr for Variant {
    type Err = BesovError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Variant::First),
            "re" => Ok(Variant::Re),
            "im" => Ok(Variant::Im),
            "second" => Ok(Variant::Second),
            _ => Err(BesovError::Parse(format!("unknown variant {s}"))),
        }
    }
}

/// `∫₀^∞ α ∫_ℝ k(α, β) dβ dα` with the inner integrand oscillating at `osc`.
pub(crate) fn double_integral_v<T, V, K>(k: &K, centers: &(dyn Fn(T) -> Vec<(T, T)> + Sync), osc: Oscillation<T>, cfg: &QuadConfig<T>) -> QuadResult<T, V>
where
    T: Real,
    V: OscValue<T>,
    K: Fn(T, T) -> V + Sync,
{
    let evals = AtomicUsize::new(0);
    let inner_ok = AtomicBool::new(true);
    let inner_rel = cfg.rel_tol_2d * T::lit(0.01);
    let outer = |a: T| {
        let spec = LineSpec::new(centers(a)).with_osc(osc.frequency());
        let r = integrate_line_osc(&|b: T| k(a, b), &spec, cfg.abs_tol * T::lit(0.1), inner_rel, cfg.budget);
        evals.fetch_add(r.evals, Ordering::Relaxed);
        if !r.converged {
            inner_ok.store(false, Ordering::Relaxed);
        }
        let mut v = r.value.zeroed();
        v.axpy(a, &r.value);
        v
    };
    let r = integrate_alpha(&outer, cfg, &[], cfg.abs_tol, cfg.rel_tol_2d * T::lit(0.1));
    let converged = r.converged && inner_ok.load(Ordering::Relaxed) && r.err <= fmax(cfg.abs_tol, cfg.rel_tol_2d * r.value.norm());
    QuadResult { value: r.value, err: r.err, evals: evals.into_inner(), converged }
}

fn double_integral<T, K>(k: &K, centers: &(dyn Fn(T) -> Vec<(T, T)> + Sync), osc: Oscillation<T>, cfg: &QuadConfig<T>) -> ScalarReport<T>
where
    T: Real,
    K: Fn(T, T) -> C<T> + Sync,
{
    let r = double_integral_v(k, centers, osc, cfg);
    ScalarReport { value: r.value, error_estimate: r.err, converged: r.converged, evaluations: r.evals }
}

/// Green-type pairing `∫₀^∞ α ∫ g′(α−iβ) f′(α+iβ) dβ dα`.
pub fn green_pairing<T: Real>(g: &HalfPlaneFn<T>, f: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<ScalarReport<T>> {
    cfg.validate()?;
    if f.is_constant() || g.is_constant() {
        return Ok(ScalarReport { value: cr(T::zero()), error_estimate: T::zero(), converged: true, evaluations: 0 });
    }
    let k = |a: T, b: T| g.d1(c(a, -b)) * f.d1(c(a, b));
    let centers = |a: T| {
        let mut v = f.line_centers(a);
        v.extend(g.line_centers(a).into_iter().map(|(cc, w)| (-cc, w)));
        v
    };
    let osc = combine(f.oscillation(), g.osc_conj());
    Ok(double_integral(&k, &centers, osc, cfg))
}

pub(crate) fn combine<T: Real>(a: Oscillation<T>, b: Oscillation<T>) -> Oscillation<T> {
    match (a, b) {
        (Oscillation::Frequency(x), Oscillation::Frequency(y)) => Oscillation::Frequency(x + y),
        (Oscillation::Smooth, o) | (o, Oscillation::Smooth) => o,
        _ => Oscillation::Unknown,
    }
}

/// Boundary pairing `(1/4) ∫ g^b(−y) f^b(y) dy`.
pub fn boundary_pairing<T: Real>(g: &HalfPlaneFn<T>, f: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<ScalarReport<T>> {
    cfg.validate()?;
    if !g.has_boundary() {
        return Err(BesovError::MissingBoundary);
    }
    let mut centers = f.line_centers(T::zero());
    centers.extend(g.line_centers(T::zero()).into_iter().map(|(cc, w)| (-cc, w)));
    let osc = combine(f.oscillation(), g.osc_conj());
    let spec = LineSpec::new(centers).with_osc(osc.frequency());
    let r = integrate_line_osc(&|y: T| g.boundary_value(-y) * f.boundary_value(y), &spec, cfg.abs_tol, cfg.rel_tol, cfg.budget);
    if !r.converged && !(r.err < T::lit(1e3) * fmax(cfg.abs_tol, cfg.rel_tol * r.value.norm())) {
        return Err(BesovError::NotInH1(format!("boundary integral of {} diverges", g.label())));
    }
    let q = T::lit(0.25);
    Ok(ScalarReport { value: r.value * q, error_estimate: r.err * q, converged: r.converged, evaluations: r.evals })
}

/// Evaluates `f(z)` through one of the reproducing formulas.
pub fn reproduce<T: Real>(f: &HalfPlaneFn<T>, z: C<T>, variant: Variant, cfg: &QuadConfig<T>) -> Result<ScalarReport<T>> {
    cfg.validate()?;
    if z.re < T::zero() {
        return Err(BesovError::InvalidParameter("reproduce needs Re z >= 0".into()));
    }
    let finf = f.at_infinity();
    if f.is_constant() {
        return Ok(ScalarReport { value: finf, error_estimate: T::zero(), converged: true, evaluations: 0 });
    }
    let centers = |a: T| {
        let mut v = f.line_centers(a);
        v.push((z.im, a + z.re));
        v
    };
    let pi = T::PI();
    let kern = |a: T, b: T| (z + c(a, -b)).powi(-2);
    let osc = f.oscillation();
    let out = match variant {
        Variant::First => {
            let r = double_integral(&|a, b| f.d1(c(a, b)) * kern(a, b), &centers, osc, cfg);
            scaled(r, cr(-T::lit(2.0) / pi), finf)
        }
        Variant::Re | Variant::Im => {
            // Re f′ = (f′ + conj f′)/2 and Im f′ = (f′ − conj f′)/(2i): the two
            // pieces oscillate with opposite frequencies.
            let a = double_integral(&|a, b| f.d1(c(a, b)) * kern(a, b), &centers, osc, cfg);
            let b = double_integral(&|a, b| f.d1(c(a, b)).conj() * kern(a, b), &centers, f.osc_conj(), cfg);
            let sign = if variant == Variant::Re { T::one() } else { -T::one() };
            let sum = ScalarReport {
                value: a.value + b.value * sign,
                error_estimate: a.error_estimate + b.error_estimate,
                converged: a.converged && b.converged,
                evaluations: a.evaluations + b.evaluations,
            };
            scaled(sum, cr(-T::lit(2.0) / pi), finf)
        }
        Variant::Second => {
            if !f.has_deriv2() {
                return Err(BesovError::MissingDerivative(2));
            }
            let k = |a: T, b: T| {
                let xa = z.re + a;
                let d = z.im - b;
                f.d2(c(a, b)) * (xa / (xa * xa + d * d))
            };
            let r = double_integral(&k, &centers, osc, cfg);
            scaled(r, cr(T::lit(4.0) / pi), finf)
        }
    };
    Ok(out)
}

fn scaled<T: Real>(r: ScalarReport<T>, k: C<T>, add: C<T>) -> ScalarReport<T> {
    ScalarReport { value: r.value * k + add, error_estimate: r.error_estimate * k.norm(), ..r }
}

/// Poisson integral `(1/π) ∫ x/(x²+(y−s)²) f^b(s) ds` at `z = x+iy`.
pub fn poisson_reconstruct<T: Real>(f: &HalfPlaneFn<T>, z: C<T>, cfg: &QuadConfig<T>) -> Result<ScalarReport<T>> {
    cfg.validate()?;
    if !f.has_boundary() {
        return Err(BesovError::MissingBoundary);
    }
    if !(z.re > T::zero()) {
        return Err(BesovError::InvalidParameter("Poisson integral needs Re z > 0".into()));
    }
    let mut centers = f.line_centers(T::zero());
    centers.push((z.im, z.re));
    let spec = LineSpec::new(centers).with_osc(f.oscillation().frequency());
    let k = |s: T| {
        let d = z.im - s;
        f.boundary_value(s) * (z.re / (T::PI() * (z.re * z.re + d * d)))
    };
    let r = integrate_line_osc(&k, &spec, cfg.abs_tol, cfg.rel_tol, cfg.budget);
    Ok(ScalarReport { value: r.value, error_estimate: r.err, converged: r.converged, evaluations: r.evals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::NamedFamily;
    use std::f64::consts::PI;

    fn fam(k: NamedFamily<f64>) -> HalfPlaneFn<f64> {
        k.build().unwrap()
    }

    fn cfg() -> QuadConfig<f64> {
        QuadConfig::default()
    }

    #[test]
    fn pairing_values() {
        let r1 = fam(NamedFamily::Resolvent(cr(1.0)));
        let r2 = fam(NamedFamily::Resolvent(cr(2.0)));
        let r1sq = fam(NamedFamily::ResolventSquare(cr(1.0)));
        let g = green_pairing(&r1, &r1, &cfg()).unwrap();
        assert!((g.value - cr(PI / 4.0)).norm() < 1e-5, "{g:?}");
        let g = green_pairing(&r1sq, &r1, &cfg()).unwrap();
        assert!((g.value - cr(PI / 8.0)).norm() < 1e-5, "{g:?}");
        let b = boundary_pairing(&r1sq, &r1, &cfg()).unwrap();
        assert!((b.value - cr(PI / 8.0)).norm() < 1e-7, "{b:?}");
        let b = boundary_pairing(&r1sq, &r2, &cfg()).unwrap();
        assert!((b.value - cr(PI / 18.0)).norm() < 1e-7, "{b:?}");
    }

    #[test]
    fn pairing_with_exponential() {
        let r1sq = fam(NamedFamily::ResolventSquare(cr(1.0)));
        let e1 = fam(NamedFamily::Exponential(1.0));
        // (1/4)∫ f^b/(1−iy)² dy = −(π/2) f′(1)... with f = e_1: (π/2)e^{-1}
        let b = boundary_pairing(&r1sq, &e1, &cfg()).unwrap();
        assert!((b.value - cr(PI / 2.0 * (-1.0f64).exp())).norm() < 1e-7, "{b:?}");
        let g = green_pairing(&r1sq, &e1, &cfg()).unwrap();
        assert!((g.value - b.value).norm() < 1e-5, "{g:?}");
    }

    #[test]
    fn reproduce_examples() {
        let r1 = fam(NamedFamily::Resolvent(cr(1.0)));
        let v = reproduce(&r1, cr(2.0), Variant::First, &cfg()).unwrap();
        assert!((v.value - cr(1.0 / 3.0)).norm() < 1e-6, "{v:?}");
        let v = reproduce(&r1, cr(1.0), Variant::Second, &cfg()).unwrap();
        assert!((v.value - cr(0.5)).norm() < 1e-6, "{v:?}");
        let e1 = fam(NamedFamily::Exponential(1.0));
        let v = reproduce(&e1, cr(0.0), Variant::First, &cfg()).unwrap();
        assert!((v.value - cr(1.0)).norm() < 1e-5, "{v:?}");
    }

    #[test]
    fn poisson_examples() {
        let r1 = fam(NamedFamily::Resolvent(cr(1.0)));
        let v = poisson_reconstruct(&r1, cr(1.0), &cfg()).unwrap();
        assert!((v.value - cr(0.5)).norm() < 1e-8);
        let k = HalfPlaneFn::constant(c(2.0, -1.0));
        let v = poisson_reconstruct(&k, c(0.3, 4.0), &cfg()).unwrap();
        assert!((v.value - c(2.0, -1.0)).norm() < 1e-8);
        let e1 = fam(NamedFamily::Exponential(1.0));
        let v = poisson_reconstruct(&e1, c(1.0, 1.0), &cfg()).unwrap();
        assert!((v.value - c(-1.0, -1.0).exp()).norm() < 1e-8, "{v:?}");
    }
}
