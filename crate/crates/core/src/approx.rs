//! The Q transform on W, the cut-off operators K^△_m and V_n, their
//! error functionals, and Hille–Phillips approximants Q^△_n.

use crate::config::{NormReport, QuadConfig, ScalarReport};
use crate::error::{BesovError, Result};
use crate::func::pairing::double_integral_v;
use crate::func::{besov_seminorm, besov_seminorm_between, w_weighted, HalfPlaneFn, Oscillation, WFn};
use crate::measures::{Measure, TailBound};
use crate::quad::{adaptive, gauss_legendre, integrate_alpha_between, integrate_line, line_sup, LineSpec};
use crate::scalar::{c, cr, fmax, C, Real};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

/// Left and right sides of an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorCheck<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

impl<T: Real> ErrorCheck<T> {
    fn new(lhs: T, rhs: T, slack: T) -> Self {
        Self { lhs, rhs, holds: lhs <= rhs + slack }
    }
}

fn q_kernel_centers<T: Real>(g: &WFn<T>, z: C<T>) -> impl Fn(T) -> Vec<(T, T)> + Sync + '_ {
    move |a: T| {
        let mut v = g.centers.clone();
        v.push((T::zero(), fmax(a, T::min_positive_value())));
        v.push((z.im, a + z.re));
        v
    }
}

/// `(Qg)(z) = −(2/π) ∫₀^∞ α ∫ g(α+iβ)/(z+α−iβ)² dβ dα`.
pub fn q_transform<T: Real>(g: &WFn<T>, z: C<T>, cfg: &QuadConfig<T>) -> Result<ScalarReport<T>> {
    cfg.validate()?;
    if z.re < T::zero() {
        return Err(BesovError::InvalidParameter("Q transform needs Re z >= 0".into()));
    }
    let k = |a: T, b: T| (g.g)(c(a, b)) * (z + c(a, -b)).powi(-2);
    let centers = q_kernel_centers(g, z);
    let r = double_integral_v(&k, &centers, g.osc, cfg);
    if !r.err.is_finite() {
        return Err(BesovError::NotInW("Q integral diverges".into()));
    }
    let w = T::lit(2.0) / T::PI();
    Ok(ScalarReport { value: -r.value * w, error_estimate: r.err * w, converged: r.converged, evaluations: r.evals })
}

/// `(K^△_m f)(z) = ∫_{2/m}^{2m} t f″(t+z) dt`, evaluated in closed form
/// after integrating by parts:
/// `f(a+z) − f(b+z) − a f′(a+z) + b f′(b+z)` with `a = 2/m`, `b = 2m`.
pub fn k_triangle<T: Real>(f: &HalfPlaneFn<T>, m: T) -> Result<HalfPlaneFn<T>> {
    if !(m >= T::lit(2.0)) || !m.is_finite() {
        return Err(BesovError::InvalidParameter(format!("K^△ needs m >= 2, got {m}")));
    }
    if !f.has_deriv1() {
        return Err(BesovError::MissingDerivative(1));
    }
    if f.is_constant() {
        return Ok(HalfPlaneFn::constant(cr(T::zero())).with_label(format!("K[{}]", f.label())));
    }
    let a = cr(T::lit(2.0) / m);
    let b = cr(T::lit(2.0) * m);
    let d = f.derivative();
    let k = f
        .shift(a)
        .sub(&f.shift(b))
        .sub(&d.shift(a).scale(a))
        .add(&d.shift(b).scale(b));
    Ok(k.with_label(format!("K_{m}[{}]", f.label())))
}

/// `R_m(f) = {∫₀^{1/m} + ∫_m^∞} sup_β |f′(α+iβ)| dα`.
pub fn r_tail<T: Real>(f: &HalfPlaneFn<T>, m: T, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    if !(m >= T::one()) {
        return Err(BesovError::InvalidParameter(format!("R_m needs m >= 1, got {m}")));
    }
    let lo = besov_seminorm_between(f, T::zero(), m.recip(), cfg)?;
    let hi = besov_seminorm_between(f, m, T::infinity(), cfg)?;
    Ok(lo.plus(hi))
}

/// `‖f − K^△_m f‖_{B₀}` against `(8/π) R_m(f)`.
pub fn k_error_check<T: Real>(f: &HalfPlaneFn<T>, m: T, cfg: &QuadConfig<T>) -> Result<ErrorCheck<T>> {
    let k = k_triangle(f, m)?;
    let lhs = besov_seminorm(&f.sub(&k), cfg)?;
    let r = r_tail(f, m, cfg)?;
    let w = T::lit(8.0) / T::PI();
    let slack = lhs.tail_bound + w * r.tail_bound + fmax(cfg.abs_tol, cfg.rel_tol * r.value);
    Ok(ErrorCheck::new(lhs.value, w * r.value, slack))
}

/// `S_n(g) = ∫₀^∞ α/(α+n/2) sup_β |g(α+iβ)| dα`.
pub fn s_tail<T: Real>(g: &WFn<T>, n: T, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    if !(n > T::zero()) {
        return Err(BesovError::InvalidParameter("S_n needs n > 0".into()));
    }
    let half = n * T::lit(0.5);
    w_weighted(g, &|a: T| a / (a + half), T::zero(), T::infinity(), cfg)
}

/// `|(QV_n g)(z) − (Qg)(z)|` against `(8/π) S_n(g)`.
pub fn v_strip_error<T: Real>(g: &WFn<T>, z: C<T>, n: T, cfg: &QuadConfig<T>) -> Result<ErrorCheck<T>> {
    let two_im = T::lit(2.0) * z.im.abs();
    if !(n > two_im) {
        return Err(BesovError::StripViolation { n: n.to_f64_lossy(), two_im: two_im.to_f64_lossy() });
    }
    // the difference is Q applied to g outside the strip |β| ≤ n
    let g2 = g.g.clone();
    let outside = WFn {
        g: Arc::new(move |w: C<T>| if w.im.abs() > n { g2(w) } else { cr(T::zero()) }),
        centers: g.centers.iter().copied().chain([(n, T::one()), (-n, T::one())]).collect(),
        alpha_breaks: g.alpha_breaks.clone(),
        osc: g.osc,
    };
    let obs = q_transform(&outside, z, cfg)?;
    let s = s_tail(g, n, cfg)?;
    let w = T::lit(8.0) / T::PI();
    Ok(ErrorCheck::new(obs.value.norm(), w * s.value, obs.error_estimate + w * s.tail_bound + cfg.abs_tol))
}

/// `(Q^△_n f)(z) = −(2/π) ∫_{1/n}^n α ∫_{−n}^n f′(α+iβ)/(z+α−iβ)² dβ dα`
/// by direct quadrature.
pub fn q_triangle_value<T: Real>(f: &HalfPlaneFn<T>, n: u32, z: C<T>, cfg: &QuadConfig<T>) -> Result<ScalarReport<T>> {
    cfg.validate()?;
    if n < 2 {
        return Err(BesovError::InvalidParameter("Q^△_n needs n >= 2".into()));
    }
    let nf = T::lit(n as f64);
    let inner = |a: T| {
        let mut br: Vec<T> = (0..=16).map(|k| nf * T::lit(-1.0 + k as f64 / 8.0)).collect();
        for (cc, _) in f.line_centers(a).into_iter().chain([(z.im, T::one())]) {
            if cc.abs() < nf {
                br.push(cc);
            }
        }
        br.sort_by(|x, y| x.partial_cmp(y).unwrap());
        br.dedup();
        let r = adaptive(&|b: T| f.d1(c(a, b)) * (z + c(a, -b)).powi(-2), &br, cfg.abs_tol * T::lit(0.01), cfg.rel_tol_2d * T::lit(0.01), cfg.budget, false);
        r.value * a
    };
    let r = integrate_alpha_between(&inner, cfg, nf.recip(), nf, cfg.abs_tol, cfg.rel_tol_2d * T::lit(0.1));
    let w = T::lit(2.0) / T::PI();
    Ok(ScalarReport { value: -r.value * w, error_estimate: r.err * w, converged: r.converged, evaluations: r.evals })
}

/// Filon–Simpson coefficients for the weight `e^{iθx/h}` on a grid of step `h`.
fn filon_coeffs(theta: f64) -> (f64, f64, f64) {
    let t = theta;
    if t.abs() < 1e-2 {
        let t2 = t * t;
        let a = t * t2 * (2.0 / 45.0 - t2 * (2.0 / 315.0) + t2 * t2 * (2.0 / 4725.0));
        let b = 2.0 / 3.0 + t2 * (2.0 / 15.0) - t2 * t2 * (4.0 / 105.0) + t2 * t2 * t2 * (2.0 / 567.0);
        let g = 4.0 / 3.0 - t2 * (2.0 / 15.0) + t2 * t2 / 210.0 - t2 * t2 * t2 / 11340.0;
        return (a, b, g);
    }
    let (s, co) = t.sin_cos();
    let t3 = t * t * t;
    let a = (t * t + t * s * co - 2.0 * s * s) / t3;
    let b = 2.0 * (t * (1.0 + co * co) - 2.0 * s * co) / t3;
    let g = 4.0 * (s - t * co) / t3;
    (a, b, g)
}

/// Hille–Phillips density of `Q^△_n f`:
/// `h(t) = −(2t/π) ∫_{1/n}^n α e^{−αt} ∫_{−n}^n f′(α+iβ) e^{iβt} dβ dα`,
/// tabulated on a uniform t-grid and interpolated by local cubics.
pub fn q_triangle_measure<T: Real>(f: &HalfPlaneFn<T>, n: u32, cfg: &QuadConfig<T>) -> Result<Measure<T>> {
    cfg.validate()?;
    if n < 2 {
        return Err(BesovError::InvalidParameter("Q^△_n needs n >= 2".into()));
    }
    let nf = n as f64;
    // α nodes: Gauss–Legendre panels in u = ln α, refined towards α = 1/n
    let (gx, gw) = gauss_legendre(10);
    let (u0, u1) = (-nf.ln(), nf.ln());
    let mut brk = vec![u0];
    let mut w = 0.005;
    while *brk.last().unwrap() < u1 {
        let next = (brk.last().unwrap() + w).min(u1);
        brk.push(next);
        w = (w * 2.0).min(0.5);
    }
    let mut alphas = Vec::new();
    let mut aweights = Vec::new();
    for p in brk.windows(2) {
        let (a, b) = (p[0], p[1]);
        for (x, wx) in gx.iter().zip(&gw) {
            let u = 0.5 * (a + b) + 0.5 * (b - a) * x;
            let al = u.exp();
            alphas.push(al);
            // dα = α du, and the integrand carries one more α
            aweights.push(0.5 * (b - a) * wx * al * al);
        }
    }
    // β grid for Filon–Simpson, step at most 1/16
    let mb = 2 * ((16.0 * nf).ceil() as usize);
    let db = 2.0 * nf / mb as f64;
    let betas: Vec<f64> = (0..=mb).map(|j| -nf + db * j as f64).collect();
    let fvals: Vec<Vec<C<T>>> = alphas
        .par_iter()
        .map(|&a| betas.iter().map(|&b| f.d1(c(T::lit(a), T::lit(b)))).collect())
        .collect();
    if fvals.iter().flatten().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(BesovError::NotInBesov(format!("{}: derivative not finite on the box", f.label())));
    }
    let sups: Vec<f64> = fvals.iter().map(|row| row.iter().map(|v| v.norm().to_f64_lossy()).fold(0.0, f64::max) * 1.05).collect();
    // |h(t)| ≤ C t e^{−t/n}
    let cbound = 4.0 * nf / std::f64::consts::PI * aweights.iter().zip(&sups).map(|(w, s)| w * s).sum::<f64>();
    let tol = cfg.abs_tol.to_f64_lossy() * 0.1;
    let mut tmax = nf;
    for _ in 0..50 {
        tmax = nf * (cbound * nf * (tmax + nf) / tol).max(1.0).ln();
    }
    let nt = ((tmax * 6.0 * nf / std::f64::consts::PI).ceil() as usize).max(1024);
    let dt = tmax / nt as f64;
    let two_over_pi = 2.0 / std::f64::consts::PI;
    let amin = 1.0 / nf;
    let h: Vec<C<T>> = (0..=nt)
        .into_par_iter()
        .map(|k| {
            let t = dt * k as f64;
            if k == 0 {
                return cr(T::zero());
            }
            let (fa, fb, fc) = filon_coeffs(t * db);
            let step = c(T::zero(), T::lit(db * t)).exp();
            let mut e = c(T::zero(), T::lit(-nf * t)).exp();
            let mut s: Vec<C<T>> = Vec::with_capacity(mb + 1);
            for j in 0..=mb {
                let wj = if j == 0 {
                    c(T::lit(fb * 0.5), T::lit(fa))
                } else if j == mb {
                    c(T::lit(fb * 0.5), T::lit(-fa))
                } else if j % 2 == 0 {
                    cr(T::lit(fb))
                } else {
                    cr(T::lit(fc))
                };
                s.push(e * wj * T::lit(db));
                e *= step;
            }
            let mut acc = cr(T::zero());
            for (i, &a) in alphas.iter().enumerate() {
                if (a - amin) * t > 40.0 {
                    continue;
                }
                let inner = fvals[i].iter().zip(&s).fold(cr(T::zero()), |acc, (x, y)| acc + *x * *y);
                acc += inner * T::lit(aweights[i] * (-a * t).exp());
            }
            acc * T::lit(-two_over_pi * t)
        })
        .collect();
    let h = Arc::new(h);
    let tm = T::lit(tmax);
    let dtt = T::lit(dt);
    let g = move |t: T| {
        if !(t >= T::zero()) || t > tm {
            return cr(T::zero());
        }
        let x = (t / dtt).to_f64_lossy();
        let k = (x.floor() as usize).min(nt - 1);
        // cubic through the four nearest nodes
        let k0 = k.saturating_sub(1).min(nt - 3);
        let xs = x - k0 as f64;
        let mut v = cr(T::zero());
        for i in 0..4 {
            let mut l = 1.0;
            for j in 0..4 {
                if i != j {
                    l *= (xs - j as f64) / (i as f64 - j as f64);
                }
            }
            v += h[k0 + i] * T::lit(l);
        }
        v
    };
    let tail = TailBound::Exponential { c: T::lit(cbound * 2.0 * nf / std::f64::consts::E), rate: T::lit(0.5 / nf) };
    let m = Measure::with_density(g, tail)?;
    Ok(m.with_label(format!("Q^△_{n}[{}]", f.label())))
}

/// `sup |Lμ(z) − (f(z) − f(∞))|` over a grid of the strip `|Im z| ≤ c`,
/// `Re z ∈ [0, 4]`.
pub fn strip_error<T: Real>(mu: &Measure<T>, f: &HalfPlaneFn<T>, strip: T) -> Result<T> {
    let finf = f.at_infinity();
    let mut worst = T::zero();
    for x in [0.0, 0.5, 1.0, 2.0, 4.0] {
        for k in 0..=4 {
            let y = strip * T::lit(-1.0 + k as f64 / 2.0);
            let z = c(T::lit(x), y);
            worst = fmax(worst, (mu.laplace(z)? - (f.eval(z) - finf)).norm());
        }
    }
    Ok(worst)
}

/// `G_{α,φ}(z) = ∫ φ(β)/(z+α−iβ)² dβ` with `|G| ≤ (π/α)‖φ‖_∞`.
#[derive(Debug, Clone, Copy)]
pub struct GKernel<T: Real> {
    pub value: C<T>,
    pub bound: T,
    pub holds: bool,
}

pub type Phi<T> = Arc<dyn Fn(T) -> C<T> + Send + Sync>;

fn phi_sup<T: Real>(phi: &Phi<T>, cfg: &QuadConfig<T>) -> T {
    line_sup(&|b: T| phi(b).norm(), &[(T::zero(), T::one())], cfg).value
}

pub fn g_kernel<T: Real>(alpha: T, phi: &Phi<T>, z: C<T>, cfg: &QuadConfig<T>) -> Result<GKernel<T>> {
    if !(alpha > T::zero()) || z.re < T::zero() {
        return Err(BesovError::InvalidParameter("G kernel needs α > 0 and Re z >= 0".into()));
    }
    let spec = LineSpec::new(vec![(z.im, z.re + alpha), (T::zero(), T::one())]);
    let r = integrate_line(&|b: T| phi(b) * (z + c(alpha, -b)).powi(-2), &spec, cfg.abs_tol, cfg.rel_tol * T::lit(0.01), cfg.budget);
    let bound = T::PI() / alpha * phi_sup(phi, cfg);
    Ok(GKernel { value: r.value, bound, holds: r.value.norm() <= bound + r.err + cfg.abs_tol })
}

/// `G_{α,φ}` as a half-plane function, derivatives under the integral.
pub fn g_kernel_fn<T: Real>(alpha: T, phi: Phi<T>) -> HalfPlaneFn<T> {
    let integ = move |z: C<T>, p: i32, phi: &Phi<T>| {
        let spec = LineSpec::new(vec![(z.im, z.re + alpha), (T::zero(), T::one())]);
        integrate_line(&|b: T| phi(b) * (z + c(alpha, -b)).powi(p), &spec, T::lit(1e-12), T::lit(1e-10).max(T::tol_floor()), 200_000).value
    };
    let (p0, p1, p2) = (phi.clone(), phi.clone(), phi);
    HalfPlaneFn::new(move |z| integ(z, -2, &p0), cr(T::zero()))
        .with_deriv1(move |z| integ(z, -3, &p1) * T::lit(-2.0))
        .with_deriv2(move |z| integ(z, -4, &p2) * T::lit(6.0))
        .with_singularities(vec![cr(-alpha)])
        .with_oscillation(Oscillation::Unknown)
        .with_label(format!("G_{alpha}"))
}

/// `‖G_{α,φ}‖_{B₀}` against `(4/α)‖φ‖_∞`.
pub fn g_kernel_seminorm_check<T: Real>(alpha: T, phi: &Phi<T>, cfg: &QuadConfig<T>) -> Result<ErrorCheck<T>> {
    let g = g_kernel_fn(alpha, phi.clone());
    let s = besov_seminorm(&g, cfg)?;
    let rhs = T::lit(4.0) / alpha * phi_sup(phi, cfg);
    Ok(ErrorCheck::new(s.value, rhs, s.tail_bound + cfg.abs_tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::NamedFamily;
    use crate::func::{sup_norm, w_norm};

    fn cfg() -> QuadConfig<f64> {
        QuadConfig::default()
    }

    fn r1() -> HalfPlaneFn<f64> {
        NamedFamily::Resolvent(cr(1.0)).build().unwrap()
    }

    #[test]
    fn q_reproduces_and_kills_conjugates() {
        let c0 = cfg();
        let f = r1();
        let z = c(0.5, 1.5);
        let q = q_transform(&WFn::derivative_of(&f), z, &c0).unwrap();
        assert!((q.value - f.eval(z)).norm() < 1e-5, "{:?}", q.value);
        let q = q_transform(&WFn::conj_derivative_of(&f), z, &c0).unwrap();
        assert!(q.value.norm() < 1e-5, "{:?}", q.value);
        let zero = WFn::new(|_| cr(0.0));
        assert_eq!(q_transform(&zero, z, &c0).unwrap().value, cr(0.0));
    }

    #[test]
    fn k_triangle_limits() {
        let f = r1();
        let z = c(0.7, -0.4);
        let k = k_triangle(&f, 1e4).unwrap();
        assert!((k.eval(z) - f.eval(z)).norm() < 1e-3);
        // ∫_{a}^{b} 2t/(t+w)³ dt in closed form
        let m = 5.0;
        let (a, b) = (2.0 / m, 2.0 * m);
        let w = z + 1.0;
        let prim = |t: f64| -(2.0 * t + w) / (t + w).powi(2);
        let exact = prim(b) - prim(a);
        let got = k_triangle(&f, m).unwrap().eval(z);
        assert!((got - exact).norm() < 1e-13, "{got} vs {exact}");
        let cst = k_triangle(&HalfPlaneFn::constant(cr(2.0)), 4.0).unwrap();
        assert_eq!(cst.eval(z), cr(0.0));
        assert!(k_triangle(&f, 1.5).is_err());
    }

    #[test]
    fn k_triangle_seminorm_log_bound() {
        let c0 = cfg();
        let f = r1();
        for m in [4.0, 16.0] {
            let s = besov_seminorm(&k_triangle(&f, m).unwrap(), &c0).unwrap();
            let bound = 8.0 / std::f64::consts::PI * sup_norm(&f, &c0).unwrap().value * f64::ln(m);
            assert!(s.value <= bound + 1e-6, "{} > {bound}", s.value);
        }
    }

    #[test]
    fn r_tail_resolvent() {
        let c0 = cfg();
        for m in [2.0, 4.0, 8.0] {
            let r = r_tail(&r1(), m, &c0).unwrap();
            assert!((r.value - 2.0 / (m + 1.0)).abs() < 1e-6, "{} at {m}", r.value);
        }
        assert_eq!(r_tail(&HalfPlaneFn::constant(cr(1.0)), 4.0, &c0).unwrap().value, 0.0);
    }

    #[test]
    fn k_error_examples() {
        let c0 = cfg();
        let e1 = NamedFamily::Exponential(1.0).build().unwrap();
        let g1 = NamedFamily::ExpReciprocal(1.0).build().unwrap();
        for (f, m) in [(r1(), 4.0), (e1, 8.0), (g1, 16.0)] {
            let chk = k_error_check(&f, m, &c0).unwrap();
            assert!(chk.holds, "{}: {chk:?}", f.label());
        }
    }

    #[test]
    fn strip_error_and_s_tail() {
        let c0 = cfg();
        let g = WFn::derivative_of(&r1());
        let chk = v_strip_error(&g, cr(1.0), 8.0, &c0).unwrap();
        assert!(chk.holds, "{chk:?}");
        let s4 = s_tail(&g, 4.0, &c0).unwrap().value;
        let s16 = s_tail(&g, 16.0, &c0).unwrap().value;
        assert!(s16 < s4);
        assert!(matches!(v_strip_error(&g, c(1.0, 4.0), 8.0, &c0), Err(BesovError::StripViolation { .. })));
    }

    #[test]
    fn filon_matches_direct_sum() {
        // ∫_{-1}^{1} e^{iβt} dβ = 2 sin t / t
        for t in [0.001, 0.5, 7.0, 60.0] {
            let m = 64;
            let h = 2.0 / m as f64;
            let (a, b, g) = filon_coeffs(t * h);
            let mut s = C::new(0.0, 0.0);
            for j in 0..=m {
                let x = -1.0 + h * j as f64;
                let e = C::new(0.0, t * x).exp();
                let w = if j == 0 {
                    C::new(b / 2.0, a)
                } else if j == m {
                    C::new(b / 2.0, -a)
                } else if j % 2 == 0 {
                    C::new(b, 0.0)
                } else {
                    C::new(g, 0.0)
                };
                s += e * w * h;
            }
            assert!((s - C::new(2.0 * t.sin() / t, 0.0)).norm() < 1e-12, "t = {t}: {s}");
        }
    }

    #[test]
    fn q_triangle_measure_resolvent() {
        let c0 = cfg();
        let f = r1();
        let mu = q_triangle_measure(&f, 8, &c0).unwrap();
        let z = c(1.0, 0.5);
        let direct = q_triangle_value(&f, 8, z, &c0).unwrap();
        assert!((mu.laplace(z).unwrap() - direct.value).norm() < 1e-4, "{} vs {}", mu.laplace(z).unwrap(), direct.value);
        let e8 = strip_error(&mu, &f, 1.0).unwrap();
        let e16 = strip_error(&q_triangle_measure(&f, 16, &c0).unwrap(), &f, 1.0).unwrap();
        assert!(e16 < e8, "{e16} !< {e8}");
        let hp = mu.hp_norm(&c0).unwrap().value;
        let w = w_norm(&WFn::derivative_of(&f), &c0).unwrap().value;
        assert!(hp <= 4.0 * 64.0 / std::f64::consts::PI * w);
    }

    #[test]
    fn g_kernel_examples() {
        let c0 = cfg();
        let one: Phi<f64> = Arc::new(|_| cr(1.0));
        let g = g_kernel(1.0, &one, c(0.5, 0.3), &c0).unwrap();
        assert!(g.value.norm() < 1e-6 && g.holds, "{g:?}");
        let lor: Phi<f64> = Arc::new(|b| cr(1.0 / (1.0 + b * b)));
        let g = g_kernel(1.0, &lor, cr(1.0), &c0).unwrap();
        assert!((g.value - cr(std::f64::consts::PI / 9.0)).norm() < 1e-8 && g.holds);
        let zero: Phi<f64> = Arc::new(|_| cr(0.0));
        assert_eq!(g_kernel(2.0, &zero, cr(1.0), &c0).unwrap().value, cr(0.0));
    }
}
