//! Rescaled families `f(tA)`: evolution, continuity, the generator limit,
//! long-time decay and the complex inversion formulas.

use crate::config::{CalcReport, QuadConfig};
use crate::error::{BesovError, Result};
use crate::func::{besov_norm, HalfPlaneFn};
use crate::linalg::{vec_norm, CMat};
use crate::operator::MatrixOp;
use crate::quad::{adaptive, integrate_line_osc, LineSpec, OscValue, QuadValue};
use crate::scalar::{c, cr, fmax, C, Real};
use serde::Serialize;

/// `f(zA)`. Real `z = t > 0` goes through `apply_calculus(f(t·), A)`;
/// complex `z` applies `f` to the operator `zA`.
pub fn evolve<T: Real>(f: &HalfPlaneFn<T>, op: &MatrixOp<T>, z: C<T>, cfg: &QuadConfig<T>) -> Result<CalcReport<T>> {
    if op.spectrum().iter().any(|l| (*l * z).re < -T::lit(crate::operator::CLAMP_TOL)) {
        return Err(BesovError::SectorViolation);
    }
    let n = op.dim();
    if z == cr(T::zero()) {
        return Ok(CalcReport { matrix: CMat::identity(n).scale(f.eval(cr(T::zero()))), error_estimate: T::zero(), converged: true, evaluations: 0 });
    }
    if z.im == T::zero() && z.re > T::zero() {
        return op.apply_calculus(&f.rescale(z.re), cfg);
    }
    op.scaled(z)?.apply_calculus(f, cfg)
}

/// `‖f(t_{k+1}A) − f(t_kA)‖` along a grid.
#[derive(Debug, Clone, Serialize)]
pub struct ContinuityReport<T> {
    pub steps: Vec<(T, T)>,
    pub max_step: T,
}

pub fn continuity_scan<T: Real>(f: &HalfPlaneFn<T>, op: &MatrixOp<T>, tgrid: &[T], cfg: &QuadConfig<T>) -> Result<ContinuityReport<T>> {
    if tgrid.len() < 2 || tgrid.windows(2).any(|w| !(w[0] < w[1])) || tgrid[0] < T::zero() {
        return Err(BesovError::InvalidParameter("t grid must be increasing and non-negative".into()));
    }
    let mats: Vec<CMat<T>> = tgrid.iter().map(|&t| evolve(f, op, cr(t), cfg).map(|r| r.matrix)).collect::<Result<_>>()?;
    let steps: Vec<(T, T)> = mats.windows(2).zip(tgrid).map(|(m, &t)| (t, (&m[1] - &m[0]).norm2())).collect();
    let max_step = steps.iter().fold(T::zero(), |m, s| fmax(m, s.1));
    Ok(ContinuityReport { steps, max_step })
}

/// Short-time limit of `t^{−1}(f(tA)x − f(0)x)`.
#[derive(Debug, Clone)]
pub struct DerivativeReport<T: Real> {
    /// `(t, t^{−1}(f(tA)x − f(0)x))` for `t = 2^{−k}`.
    pub quotients: Vec<(T, Vec<C<T>>)>,
    /// First-order Richardson value from the two smallest `t`.
    pub richardson: Vec<C<T>>,
    /// Last diagonal entry of the full Richardson table.
    pub richardson_table: Vec<C<T>>,
    /// `f′(0) A x`.
    pub target: Vec<C<T>>,
    /// `‖richardson − target‖ / ‖target‖` (absolute if the target vanishes).
    pub rel_error: T,
}

pub fn short_time_derivative<T: Real>(f: &HalfPlaneFn<T>, op: &MatrixOp<T>, x: &[C<T>], cfg: &QuadConfig<T>) -> Result<DerivativeReport<T>> {
    if x.len() != op.dim() {
        return Err(BesovError::InvalidParameter("vector length does not match the matrix".into()));
    }
    besov_norm(f, cfg)?;
    let fp = besov_norm(&f.derivative(), cfg).map_err(|e| BesovError::NotInBesov(format!("derivative: {e}")))?;
    if !fp.value.is_finite() {
        return Err(BesovError::NotInBesov("derivative is not in B".into()));
    }
    let mut quotients = Vec::new();
    for k in 3..=12 {
        let t = T::lit(2f64.powi(-k));
        let q = op.difference_quotient(f, t, cfg)?;
        quotients.push((t, q.matrix.matvec(x)));
    }
    let m = quotients.len();
    let first: Vec<C<T>> = quotients[m - 1].1.iter().zip(&quotients[m - 2].1).map(|(a, b)| *a * T::lit(2.0) - *b).collect();
    // Richardson table with ratio 2 in t
    let mut table: Vec<Vec<C<T>>> = quotients.iter().map(|q| q.1.clone()).collect();
    for j in 1..m {
        let p = T::lit(2f64.powi(j as i32));
        table = table.windows(2).map(|w| w[1].iter().zip(&w[0]).map(|(a, b)| (*a * p - *b) / (p - T::one())).collect()).collect();
    }
    let target: Vec<C<T>> = op.matrix().matvec(x).into_iter().map(|v| v * f.d1(cr(T::zero()))).collect();
    let diff: Vec<C<T>> = first.iter().zip(&target).map(|(a, b)| *a - *b).collect();
    let tn = vec_norm(&target);
    let rel_error = if tn > T::zero() { vec_norm(&diff) / tn } else { vec_norm(&diff) };
    Ok(DerivativeReport { quotients, richardson: first, richardson_table: table.pop().unwrap_or_default(), target, rel_error })
}

/// `‖f(tA)‖` over a t grid with the decay verdict.
#[derive(Debug, Clone, Serialize)]
pub struct DecayReport<T> {
    pub norms: Vec<(T, T)>,
    /// Rate `ω = min Re σ(A) − ε` in `‖e^{−tA}‖ ≤ M e^{−ωt}`.
    pub omega: T,
    /// Whether `0 ∈ σ(A)`.
    pub zero_in_spectrum: bool,
    /// Running maximum from the right ends below `abs_tol`.
    pub decays: bool,
    /// `0 ∈ σ(A)` and every norm stays above `|f(0)| − tol`.
    pub plateau: bool,
    pub f_at_zero: T,
}

pub fn long_time_decay<T: Real>(f: &HalfPlaneFn<T>, op: &MatrixOp<T>, tgrid: &[T], cfg: &QuadConfig<T>) -> Result<DecayReport<T>> {
    if f.at_infinity().norm() > cfg.abs_tol {
        return Err(BesovError::InvalidParameter("long-time decay needs f(∞) = 0".into()));
    }
    let mut norms = Vec::with_capacity(tgrid.len());
    let mut worst_err = T::zero();
    for &t in tgrid {
        let r = evolve(f, op, cr(t), cfg)?;
        worst_err = fmax(worst_err, r.error_estimate);
        norms.push((t, r.matrix.norm2()));
    }
    let zero_in_spectrum = op.spectrum().iter().any(|l| l.norm() <= T::lit(crate::operator::CLAMP_TOL));
    let mut env = T::zero();
    let mut envelope = vec![T::zero(); norms.len()];
    for (i, (_, v)) in norms.iter().enumerate().rev() {
        env = fmax(env, *v);
        envelope[i] = env;
    }
    let decays = envelope.last().map_or(false, |v| *v < cfg.abs_tol);
    let f0 = f.eval(cr(T::zero())).norm();
    let tol = fmax(cfg.abs_tol, T::lit(4.0) * worst_err);
    let plateau = zero_in_spectrum && norms.iter().all(|(_, v)| *v >= f0 - tol);
    let omega = op.min_real_part() - T::lit(1e-9);
    Ok(DecayReport { norms, omega, zero_in_spectrum, decays, plateau, f_at_zero: f0 })
}

fn truncated<T, F>(g: &F, n: T, centers: &[(T, T)], osc: Option<T>, fejer: bool) -> CMat<T>
where
    T: Real,
    F: Fn(T) -> CMat<T> + Sync,
{
    let mut br: Vec<T> = vec![-n, n];
    for &(cc, _) in centers {
        if cc.abs() < n {
            br.push(cc);
        }
    }
    let pieces = match osc {
        Some(w) if w != T::zero() => (n * w.abs() / T::PI()).to_f64_lossy().ceil().min(20_000.0) as usize,
        _ => 0,
    }
    .max(32);
    for k in 1..pieces {
        br.push(-n + T::lit(2.0) * n * T::from_usize_lossy(k) / T::from_usize_lossy(pieces));
    }
    br.sort_by(|a, b| a.partial_cmp(b).unwrap());
    br.dedup();
    let h = |b: T| {
        let v = g(b);
        if fejer {
            v.scale_re(T::one() - b.abs() / n)
        } else {
            v
        }
    };
    adaptive(&h, &br, T::lit(1e-12), T::lit(1e-11).max(T::tol_floor()), 2_000_000, false).value
}

/// One truncation level of a principal-value integral.
#[derive(Debug, Clone, Serialize)]
pub struct Truncation<T> {
    pub n: T,
    /// `‖raw(N) − reference‖`.
    pub raw_error: T,
    /// `‖cesaro(N) − reference‖`.
    pub cesaro_error: T,
}

/// Both routes of the complex inversion formula for `f(·+σ)`.
#[derive(Debug, Clone)]
pub struct InversionReport<T: Real> {
    /// `−(1/2π) ∫ (σ−iβ+A)^{−2} f^b(β) dβ`.
    pub route_a: CMat<T>,
    /// Reference `f′(A+σ)`.
    pub reference_a: CMat<T>,
    pub error_a: T,
    /// `(1/2π) ∫ (σ−iβ+A)^{−1} f^b(β) dβ` over ℝ, tails from the asymptotic expansion.
    pub route_b: CMat<T>,
    /// Reference `f(A+σ)`.
    pub reference_b: CMat<T>,
    pub error_b: T,
    pub truncations: Vec<Truncation<T>>,
}

fn reference<T: Real>(op: &MatrixOp<T>, g: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<CMat<T>> {
    match op.oracle_apply(g) {
        Ok(m) => Ok(m),
        Err(BesovError::NotDiagonalizable(_)) => Ok(op.apply_calculus(g, cfg)?.matrix),
        Err(e) => Err(e),
    }
}

pub fn complex_inversion<T: Real>(f: &HalfPlaneFn<T>, op: &MatrixOp<T>, sigma: T, ns: &[T], cfg: &QuadConfig<T>) -> Result<InversionReport<T>> {
    if !f.has_boundary() {
        return Err(BesovError::MissingBoundary);
    }
    if !(sigma > T::zero()) {
        return Err(BesovError::InvalidParameter("σ must be positive".into()));
    }
    let n = op.dim();
    let res = |b: T| op.resolvent(c(sigma, -b)).unwrap_or_else(|_| CMat::zeros(n));
    let centers: Vec<(T, T)> = op.spectrum().iter().map(|l| (l.im, sigma + l.re)).chain(f.line_centers(T::zero())).collect();
    let osc = f.oscillation().frequency();
    let spec = LineSpec::new(centers.clone()).with_osc(osc);
    let two_pi = T::lit(2.0) * T::PI();
    let ka = |b: T| {
        let r = res(b);
        (&r * &r).scale(f.boundary_value(b))
    };
    let kb = |b: T| res(b).scale(f.boundary_value(b));
    let a = integrate_line_osc(&ka, &spec, T::lit(1e-12), T::lit(1e-10).max(T::tol_floor()), cfg.budget * 10);
    let b = integrate_line_osc(&kb, &spec, T::lit(1e-12), T::lit(1e-10).max(T::tol_floor()), cfg.budget * 10);
    let route_a = a.value.scale_re(-two_pi.recip());
    let route_b = b.value.scale_re(two_pi.recip());
    let sh = cr(sigma);
    let reference_a = reference(op, &f.derivative().shift(sh), cfg)?;
    let reference_b = reference(op, &f.shift(sh), cfg)?;
    let truncations = ns
        .iter()
        .map(|&nn| {
            let raw = truncated(&kb, nn, &centers, osc, false).scale_re(two_pi.recip());
            let ces = truncated(&kb, nn, &centers, osc, true).scale_re(two_pi.recip());
            Truncation { n: nn, raw_error: (&raw - &reference_b).norm2(), cesaro_error: (&ces - &reference_b).norm2() }
        })
        .collect();
    Ok(InversionReport {
        error_a: (&route_a - &reference_a).norm2(),
        error_b: (&route_b - &reference_b).norm2(),
        route_a,
        reference_a,
        route_b,
        reference_b,
        truncations,
    })
}

/// Squared-resolvent and classical inversion of `e^{−tA}`.
#[derive(Debug, Clone)]
pub struct SemigroupInversion<T: Real> {
    /// `e^{σt}/(2πt) ∫ e^{itβ} (σ+iβ+A)^{−2} dβ`.
    pub squared: CMat<T>,
    /// `(1/2π) ∫ e^{t(σ+iβ)} (σ+iβ+A)^{−1} dβ`, tails from the asymptotic expansion.
    pub classical: CMat<T>,
    pub expm: CMat<T>,
    pub error_squared: T,
    pub error_classical: T,
    pub truncations: Vec<Truncation<T>>,
}

pub fn semigroup_inversion<T: Real>(op: &MatrixOp<T>, t: T, sigma: T, ns: &[T], cfg: &QuadConfig<T>) -> Result<SemigroupInversion<T>> {
    cfg.validate()?;
    if !(t > T::zero()) || !(sigma > T::zero()) {
        return Err(BesovError::InvalidParameter("t and σ must be positive".into()));
    }
    let n = op.dim();
    let res = |b: T| op.resolvent(c(sigma, b)).unwrap_or_else(|_| CMat::zeros(n));
    let centers: Vec<(T, T)> = op.spectrum().iter().map(|l| (-l.im, sigma + l.re)).chain([(T::zero(), T::one())]).collect();
    // e^{itβ} = e^{−iωβ} with ω = −t
    let spec = LineSpec::new(centers.clone()).with_osc(Some(-t));
    let phase = |b: T| c(T::zero(), t * b).exp();
    let k2 = |b: T| {
        let r = res(b);
        (&r * &r).scale(phase(b))
    };
    let k1 = |b: T| res(b).scale(phase(b));
    let tol = T::lit(1e-12);
    let rel = T::lit(1e-10).max(T::tol_floor());
    let two_pi = T::lit(2.0) * T::PI();
    let growth = (sigma * t).exp();
    let sq = integrate_line_osc(&k2, &spec, tol, rel, cfg.budget * 10);
    let squared = sq.value.scale_re(growth / (two_pi * t));
    let cl = integrate_line_osc(&k1, &spec, tol, rel, cfg.budget * 10);
    let classical = cl.value.scale_re(growth / two_pi);
    let expm = op.matrix().scale_re(-t).expm();
    let truncations = ns
        .iter()
        .map(|&nn| {
            let raw = truncated(&k1, nn, &centers, Some(-t), false).scale_re(growth / two_pi);
            let ces = truncated(&k1, nn, &centers, Some(-t), true).scale_re(growth / two_pi);
            Truncation { n: nn, raw_error: (&raw - &expm).norm2(), cesaro_error: (&ces - &expm).norm2() }
        })
        .collect();
    Ok(SemigroupInversion {
        error_squared: (&squared - &expm).norm2(),
        error_classical: (&classical - &expm).norm2(),
        squared,
        classical,
        expm,
        truncations,
    })
}

/// `β ↦ ‖f(α+iβ)(α−iβ+A)^{−1}‖`.
pub fn norm_continuity_diagnostic<T: Real>(f: &HalfPlaneFn<T>, op: &MatrixOp<T>, alpha: T, betas: &[T]) -> Result<Vec<(T, T)>> {
    if !(alpha > T::zero()) {
        return Err(BesovError::InvalidParameter("α must be positive".into()));
    }
    betas.iter().map(|&b| Ok((b, op.resolvent(c(alpha, -b))?.scale(f.eval(c(alpha, b))).norm2()))).collect()
}

/// Discrete `∂/∂z̄` of `z ↦ f(zA)` from `M` samples on a circle of radius `r`:
/// `‖(1/M) Σ F(z + r e^{iθ_k}) e^{iθ_k}‖ / r`.
pub fn cauchy_riemann_residual<T: Real>(f: &HalfPlaneFn<T>, op: &MatrixOp<T>, z: C<T>, r: T, cfg: &QuadConfig<T>) -> Result<T> {
    let m = 8;
    let mut acc = CMat::zeros(op.dim());
    for k in 0..m {
        let e = c(T::zero(), T::lit(2.0 * std::f64::consts::PI * k as f64 / m as f64)).exp();
        let fz = evolve(f, op, z + e * r, cfg)?;
        acc.axpy(T::one(), &fz.matrix.cmul(e));
    }
    Ok(acc.norm2() / (T::lit(m as f64) * r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::NamedFamily;
    use crate::operator::jordan;

    fn cfg() -> QuadConfig<f64> {
        QuadConfig::default()
    }

    fn op(rows: &[&[f64]]) -> MatrixOp<f64> {
        MatrixOp::new(CMat::from_real_rows(rows).unwrap()).unwrap()
    }

    fn e1() -> HalfPlaneFn<f64> {
        NamedFamily::Exponential(1.0).build().unwrap()
    }

    fn r1() -> HalfPlaneFn<f64> {
        NamedFamily::Resolvent(cr(1.0)).build().unwrap()
    }

    #[test]
    fn evolve_examples() {
        let c0 = cfg();
        let a = op(&[&[1.0]]);
        let v = evolve(&e1(), &a, cr(2.0), &c0).unwrap().matrix[(0, 0)];
        assert!((v - cr((-2.0f64).exp())).norm() < 1e-6);
        let v = evolve(&r1(), &op(&[&[2.0]]), cr(3.0), &c0).unwrap().matrix[(0, 0)];
        assert!((v - cr(1.0 / 7.0)).norm() < 1e-6);
        let z = c(1.0, 0.5);
        let v = evolve(&e1(), &a, z, &c0).unwrap().matrix[(0, 0)];
        assert!((v - (-z).exp()).norm() < 1e-6, "{v}");
        assert!(matches!(evolve(&e1(), &op(&[&[1.0]]), c(0.0, 1.0), &c0), Ok(_)));
        assert!(matches!(evolve(&e1(), &op(&[&[1.0]]), c(-1.0, 0.5), &c0), Err(BesovError::SectorViolation)));
    }

    #[test]
    fn continuity_refines_linearly() {
        let c0 = cfg();
        let a = op(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let coarse: Vec<f64> = (0..=4).map(|k| 0.25 * k as f64).collect();
        let fine: Vec<f64> = (0..=8).map(|k| 0.125 * k as f64).collect();
        let s1 = continuity_scan(&e1(), &a, &coarse, &c0).unwrap().max_step;
        let s2 = continuity_scan(&e1(), &a, &fine, &c0).unwrap().max_step;
        assert!((s1 / s2 - 2.0).abs() < 0.3, "{s1} {s2}");
    }

    #[test]
    fn generator_limits() {
        let c0 = cfg();
        let a = op(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let r = short_time_derivative(&e1(), &a, &[cr(1.0), cr(1.0)], &c0).unwrap();
        assert!(r.rel_error < 1e-4, "{r:?}");
        let r = short_time_derivative(&r1(), &a, &[cr(1.0), cr(0.0)], &c0).unwrap();
        assert!((r.target[0] - cr(-1.0)).norm() < 1e-14 && r.rel_error < 1e-4, "{r:?}");
        let g1 = NamedFamily::ExpReciprocal(1.0).build().unwrap();
        let r = short_time_derivative(&g1, &a, &[cr(1.0), cr(1.0)], &c0).unwrap();
        assert!((g1.d1(cr(0.0)) - cr((-1.0f64).exp())).norm() < 1e-14);
        assert!(r.rel_error < 1e-4, "{r:?}");
    }

    #[test]
    fn decay_dichotomy() {
        let c0 = cfg();
        let grid: Vec<f64> = (0..=10).map(|k| 10f64.powi(k)).collect();
        let d = long_time_decay(&r1(), &op(&[&[1.0, 0.0], &[0.0, 2.0]]), &grid, &c0).unwrap();
        for (t, v) in &d.norms {
            assert!((v - 1.0 / (1.0 + t)).abs() < 1e-6 * (1.0 + v), "t = {t}: {v}");
        }
        assert!(d.decays && !d.zero_in_spectrum);
        let p = long_time_decay(&r1(), &op(&[&[0.0, 0.0], &[0.0, 1.0]]), &grid, &c0).unwrap();
        assert!(p.zero_in_spectrum && p.plateau && !p.decays);
    }

    #[test]
    fn complex_inversion_examples() {
        let c0 = cfg();
        let r = complex_inversion(&r1(), &op(&[&[1.0]]), 1.0, &[10.0, 100.0], &c0).unwrap();
        assert!((r.reference_a[(0, 0)] - cr(-1.0 / 9.0)).norm() < 1e-12);
        assert!(r.error_a < 1e-8 && r.error_b < 1e-8, "{r:?}");
        let r = complex_inversion(&e1(), &op(&[&[1.0]]), 0.5, &[10.0, 20.0, 40.0, 80.0], &c0).unwrap();
        assert!((r.reference_a[(0, 0)] + cr((-1.5f64).exp())).norm() < 1e-12);
        assert!(r.error_a < 1e-8 && r.error_b < 1e-8, "{r:?}");
        // raw truncation error sits under a 1/N envelope
        for t in &r.truncations {
            assert!(t.raw_error * t.n < 0.5, "{:?}", r.truncations);
        }
        assert!(r.truncations[3].raw_error < r.truncations[0].raw_error);
    }

    #[test]
    fn semigroup_inversion_examples() {
        let c0 = cfg();
        let r = semigroup_inversion(&op(&[&[1.0]]), 1.0, 0.5, &[50.0], &c0).unwrap();
        assert!(r.error_squared < 1e-8 && r.error_classical < 1e-6, "{r:?}");
        let j = MatrixOp::new(jordan(2, cr(1.0))).unwrap();
        let r = semigroup_inversion(&j, 2.0, 1.0, &[25.0, 50.0, 100.0], &c0).unwrap();
        let want = CMat::from_real_rows(&[&[1.0, -2.0], &[0.0, 1.0]]).unwrap().scale_re((-2.0f64).exp());
        assert!((&r.expm - &want).max_abs() < 1e-14);
        assert!(r.error_squared < 1e-8 && r.error_classical < 1e-6, "{r:?}");
        assert!(r.truncations[2].raw_error < r.truncations[0].raw_error);
    }

    #[test]
    fn norm_profile_decays() {
        let betas: Vec<f64> = (-4..=4).map(|k: i32| 10f64.powi(k.abs()) * (k as f64).signum()).collect();
        let one = HalfPlaneFn::constant(cr(1.0));
        let p = norm_continuity_diagnostic(&one, &op(&[&[1.0]]), 1.0, &betas).unwrap();
        for (b, v) in &p {
            assert!((v - 1.0 / (4.0 + b * b).sqrt()).abs() < 1e-14);
        }
        for i in 0..p.len() {
            assert!((p[i].1 - p[p.len() - 1 - i].1).abs() < 1e-14);
        }
    }

    #[test]
    fn holomorphic_in_sector() {
        let c0 = cfg();
        let a = op(&[&[1.0, 0.0], &[0.0, 2.0]]);
        for z in [c(1.0, 0.0), c(1.0, 0.5), c(0.5, -0.3)] {
            let r = cauchy_riemann_residual(&e1(), &a, z, 0.1, &c0).unwrap();
            assert!(r < 1e-5, "{z}: {r}");
        }
    }
}
