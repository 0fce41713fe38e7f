//! Matrix operators on ℂⁿ with spectrum in the closed right half-plane:
//! resolvents, the γ_A estimator, the functional calculus by quadrature,
//! the Hille–Phillips calculus and the eigendecomposition oracle.

use crate::config::{CalcReport, QuadConfig};
use crate::error::{BesovError, Result};
use crate::func::pairing::double_integral_v;
use crate::func::{besov_norm, HalfPlaneFn};
use crate::linalg::{cond2, multiset_distance, schur, CMat};
use crate::measures::Measure;
use crate::quad::{adaptive, integrate_line, LineSpec};
use crate::scalar::{c, cr, fmax, C, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::OnceLock;

/// Seed of the random vector pairs used by [`MatrixOp::gamma_estimate`].
pub const GAMMA_SEED: u64 = 0x5eed_0b35;
/// Number of random unit vector pairs sampled on top of the canonical basis.
pub const GAMMA_PAIRS: usize = 64;
/// Eigenvalues with real part below `-CLAMP_TOL` are rejected.
pub const CLAMP_TOL: f64 = 1e-10;

/// Estimated operator constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorConstants<T> {
    /// Sampled lower bound for γ_A.
    pub gamma: T,
    /// `(2/π) sup_α α∫‖(α+iβ+A)^{−2}‖dβ` on the grid.
    pub gamma_upper: T,
    /// `sup_t ‖e^{−tA}‖`.
    pub k: T,
    /// `sup_{Re z>0} ‖z(z+A)^{−1}‖`.
    pub m: T,
    pub alpha_grid: Vec<T>,
}

/// Square matrix with spectrum in the closed right half-plane.
#[derive(Debug, Clone)]
pub struct MatrixOp<T: Real> {
    a: CMat<T>,
    schur_t: CMat<T>,
    schur_z: CMat<T>,
    spectrum: Vec<C<T>>,
    min_re: T,
    clamped: bool,
    eigvecs: CMat<T>,
    cond: T,
    diagonalizable: bool,
    normal: bool,
    k_a: T,
    m_a: T,
    gamma: OnceLock<OperatorConstants<T>>,
}

impl<T: Real> MatrixOp<T> {
    pub fn new(a: CMat<T>) -> Result<Self> {
        let n = a.dim();
        if n == 0 {
            return Err(BesovError::InvalidParameter("empty matrix".into()));
        }
        if a.rows().iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(BesovError::InvalidParameter("matrix has non-finite entries".into()));
        }
        let (mut t, z) = schur(&a);
        let (_, v) = a.eigen();
        let mut spectrum: Vec<C<T>> = (0..n).map(|i| t[(i, i)]).collect();
        let min_re = spectrum.iter().fold(T::infinity(), |m, l| m.min(l.re));
        let tol = T::lit(CLAMP_TOL);
        if min_re < -tol {
            return Err(BesovError::SpectrumOutsideHalfPlane(min_re.to_f64_lossy()));
        }
        let mut clamped = false;
        for (i, l) in spectrum.iter_mut().enumerate() {
            if l.re < T::zero() {
                l.re = T::zero();
                t[(i, i)].re = T::zero();
                clamped = true;
            }
        }
        let cond = cond2(&v);
        let diagonalizable = cond.is_finite() && cond < T::epsilon().sqrt().recip();
        let normal = a.is_normal(T::lit(64.0) * T::epsilon());
        let mut op = Self {
            a,
            schur_t: t,
            schur_z: z,
            spectrum,
            min_re: fmax(min_re, T::zero()),
            clamped,
            eigvecs: v,
            cond,
            diagonalizable,
            normal,
            k_a: T::one(),
            m_a: T::one(),
            gamma: OnceLock::new(),
        };
        op.k_a = op.estimate_k();
        op.m_a = op.estimate_m();
        Ok(op)
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn spectrum(&self) -> &[C<T>] {
        &self.spectrum
    }

    pub fn min_real_part(&self) -> T {
        self.min_re
    }

    /// Whether eigenvalues in `[−1e−10, 0)` were moved onto the imaginary axis.
    pub fn clamped(&self) -> bool {
        self.clamped
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.diagonalizable
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// Spectral condition number of the eigenvector matrix.
    pub fn eigvec_cond(&self) -> T {
        self.cond
    }

    pub fn k_const(&self) -> T {
        self.k_a
    }

    pub fn m_const(&self) -> T {
        self.m_a
    }

    fn estimate_k(&self) -> T {
        if self.normal {
            return T::one();
        }
        (0..=120)
            .map(|k| {
                let t = T::lit(10f64.powf(-3.0 + 6.0 * k as f64 / 120.0));
                self.a.scale_re(-t).expm().norm2()
            })
            .fold(T::one(), fmax)
    }

    fn estimate_m(&self) -> T {
        let mut m = T::zero();
        let eps = 1e-6;
        for i in 0..=28 {
            let r = 10f64.powf(-3.0 + 7.0 * i as f64 / 28.0);
            for j in 0..=40 {
                let th = -std::f64::consts::FRAC_PI_2 + eps + (std::f64::consts::PI - 2.0 * eps) * j as f64 / 40.0;
                let z = c(T::lit(r * th.cos()), T::lit(r * th.sin()));
                match self.tri_inv(z) {
                    Some(x) => m = fmax(m, x.norm2() * z.norm()),
                    None => return T::infinity(),
                }
            }
        }
        m
    }

    /// `(z + T)^{−1}` in the Schur basis.
    fn tri_inv(&self, z: C<T>) -> Option<CMat<T>> {
        tri_inverse(&self.schur_t, z)
    }

    fn from_schur(&self, m: &CMat<T>) -> CMat<T> {
        &(&self.schur_z * m) * &self.schur_z.adjoint()
    }

    /// `(z I + A)^{−1}`.
    pub fn resolvent(&self, z: C<T>) -> Result<CMat<T>> {
        let scale = fmax(self.a.max_abs(), T::one());
        for l in &self.spectrum {
            if (z + *l).norm() <= T::lit(1e3) * T::epsilon() * scale {
                return Err(BesovError::SingularShift(format!("-({z}) is an eigenvalue")));
            }
        }
        self.a.shift(z).inverse().ok_or_else(|| BesovError::SingularShift(format!("zI + A singular at z = {z}")))
    }

    /// Largest sampled ratio `‖(α+iβ+A)^{−n}‖ α^n / K_A`.
    pub fn hille_yosida_ratio(&self, n: i32) -> T {
        let mut worst = T::zero();
        for i in 0..=16 {
            let a = T::lit(10f64.powf(-2.0 + 5.0 * i as f64 / 16.0));
            for j in -8..=8 {
                let b = T::lit(j as f64 * j as f64 * j as f64 / 8.0);
                let Some(r) = self.tri_inv(c(a, b)) else { continue };
                let mut p = r.clone();
                for _ in 1..n {
                    p = &p * &r;
                }
                worst = fmax(worst, p.norm2() * a.powi(n) / self.k_a);
            }
        }
        worst
    }

    fn default_alpha_grid() -> Vec<T> {
        (0..=36).map(|k| T::lit(10f64.powf(-3.0 + 9.0 * k as f64 / 36.0))).collect()
    }

    /// Lower and upper estimates of γ_A on the default α grid (cached).
    pub fn constants(&self, cfg: &QuadConfig<T>) -> Result<OperatorConstants<T>> {
        if let Some(g) = self.gamma.get() {
            return Ok(g.clone());
        }
        let g = self.gamma_estimate(&Self::default_alpha_grid(), cfg)?;
        Ok(self.gamma.get_or_init(|| g).clone())
    }

    /// Maximizes `(2/π) α ∫ |⟨(α+iβ+A)^{−2}x, y⟩| dβ` over the α grid and
    /// sampled unit pairs `(x, y)`; also returns the operator-norm bound.
    pub fn gamma_estimate(&self, alpha_grid: &[T], cfg: &QuadConfig<T>) -> Result<OperatorConstants<T>> {
        cfg.validate()?;
        if alpha_grid.iter().any(|a| !(*a > T::zero())) || alpha_grid.is_empty() {
            return Err(BesovError::InvalidParameter("α grid must be positive and non-empty".into()));
        }
        let n = self.dim();
        // vectors in the Schur basis: x ↦ Z* x
        let zt = self.schur_z.adjoint();
        let mut pairs: Vec<(Vec<C<T>>, Vec<C<T>>)> = Vec::new();
        let unit = |i: usize| (0..n).map(|k| cr(if k == i { T::one() } else { T::zero() })).collect::<Vec<_>>();
        for i in 0..n {
            for j in 0..n {
                pairs.push((unit(i), unit(j)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(GAMMA_SEED);
        let mut rand_unit = || {
            let v: Vec<C<T>> = (0..n).map(|_| c(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0)))).collect();
            let s = crate::linalg::vec_norm(&v);
            v.into_iter().map(|x| x / s).collect::<Vec<_>>()
        };
        for _ in 0..GAMMA_PAIRS {
            let x = rand_unit();
            let y = rand_unit();
            pairs.push((x, y));
        }
        let pairs: Vec<(Vec<C<T>>, Vec<C<T>>)> = pairs.into_iter().map(|(x, y)| (zt.matvec(&x), zt.matvec(&y))).collect();
        let two_over_pi = T::lit(2.0) / T::PI();
        let rows: Vec<Result<(T, T)>> = alpha_grid
            .par_iter()
            .map(|&a| {
                let spec = LineSpec::new(self.spectrum.iter().map(|l| (-l.im, a + l.re)).chain([(T::zero(), a)]).collect());
                let k = |b: T| -> Vec<T> {
                    let Some(r) = self.tri_inv(c(a, b)) else { return vec![T::infinity(); pairs.len() + 1] };
                    let r2 = &r * &r;
                    let mut out: Vec<T> = pairs
                        .iter()
                        .map(|(x, y)| {
                            let rx = r2.matvec(x);
                            y.iter().zip(&rx).fold(cr(T::zero()), |s, (yy, v)| s + yy.conj() * *v).norm()
                        })
                        .collect();
                    out.push(r2.norm2());
                    out
                };
                let r = integrate_line(&k, &spec, cfg.abs_tol / a, cfg.rel_tol, cfg.budget);
                if !r.converged && !(r.err <= T::lit(1e-2) * r.value.iter().fold(T::zero(), |m, v| fmax(m, *v))) {
                    return Err(BesovError::TailDivergence(format!("β integral at α = {a} did not settle")));
                }
                let (last, rest) = r.value.split_last().unwrap();
                let lo = rest.iter().fold(T::zero(), |m, v| fmax(m, *v));
                Ok((two_over_pi * a * lo, two_over_pi * a * *last))
            })
            .collect();
        let mut gamma = T::zero();
        let mut upper = T::zero();
        for r in rows {
            let (lo, up) = r?;
            gamma = fmax(gamma, lo);
            upper = fmax(upper, up);
        }
        Ok(OperatorConstants { gamma, gamma_upper: fmax(upper, gamma), k: self.k_a, m: self.m_a, alpha_grid: alpha_grid.to_vec() })
    }

    /// Upper-triangular `f(T)` in the Schur basis.
    fn calculus_schur(&self, f: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<CalcReport<T>> {
        cfg.validate()?;
        let n = self.dim();
        let finf = f.at_infinity();
        if f.is_constant() {
            return Ok(CalcReport { matrix: CMat::identity(n).scale(finf), error_estimate: T::zero(), converged: true, evaluations: 0 });
        }
        let k = |a: T, b: T| -> CMat<T> {
            match self.tri_inv(c(a, -b)) {
                Some(r) => (&r * &r).scale(f.d1(c(a, b))),
                None => CMat::zeros(n),
            }
        };
        let centers = |a: T| {
            let mut v = f.line_centers(a);
            v.extend(self.spectrum.iter().map(|l| (l.im, a + l.re)));
            v
        };
        let r = double_integral_v(&k, &centers, f.oscillation(), cfg);
        if !r.err.is_finite() {
            return Err(BesovError::NotInBesov(format!("α integral for {} diverges", f.label())));
        }
        let w = -T::lit(2.0) / T::PI();
        let mut m = r.value.scale_re(w);
        for i in 0..n {
            m[(i, i)] += finf;
        }
        Ok(CalcReport { matrix: m, error_estimate: r.err * w.abs(), converged: r.converged, evaluations: r.evals })
    }

    /// `f(A) = f(∞) I − (2/π) ∫₀^∞ α ∫ (α−iβ+A)^{−2} f′(α+iβ) dβ dα`.
    pub fn apply_calculus(&self, f: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<CalcReport<T>> {
        let r = self.calculus_schur(f, cfg)?;
        Ok(CalcReport { matrix: self.from_schur(&r.matrix), ..r })
    }

    /// `zA` as an operator; `z·σ(A)` must stay in the closed right half-plane.
    pub fn scaled(&self, z: C<T>) -> Result<Self> {
        if self.spectrum.iter().any(|l| (*l * z).re < -T::lit(CLAMP_TOL)) {
            return Err(BesovError::SectorViolation);
        }
        if z.im == T::zero() && z.re > T::zero() {
            // K and M are invariant under positive rescaling
            let mut op = self.clone();
            op.a = self.a.scale_re(z.re);
            op.schur_t = self.schur_t.scale_re(z.re);
            op.spectrum = self.spectrum.iter().map(|l| *l * z.re).collect();
            op.min_re = self.min_re * z.re;
            op.gamma = OnceLock::new();
            return Ok(op);
        }
        Self::new(self.a.scale(z))
    }

    /// `t^{−1}(f(tA) − f(0)I)` for `t > 0`, computed without cancellation as
    /// `(2/π) ∬ α (s+tA)^{−2}(2sA + tA²) s^{−2} f′(α+iβ)`, `s = α − iβ`.
    pub fn difference_quotient(&self, f: &HalfPlaneFn<T>, t: T, cfg: &QuadConfig<T>) -> Result<CalcReport<T>> {
        cfg.validate()?;
        if !(t > T::zero()) {
            return Err(BesovError::InvalidParameter("difference quotient needs t > 0".into()));
        }
        let n = self.dim();
        if f.is_constant() {
            return Ok(CalcReport { matrix: CMat::zeros(n), error_estimate: T::zero(), converged: true, evaluations: 0 });
        }
        let tt = self.schur_t.scale_re(t);
        let t2 = &self.schur_t * &tt;
        let k = |a: T, b: T| -> CMat<T> {
            let s = c(a, -b);
            match tri_inverse(&tt, s) {
                Some(r) => {
                    let p = &self.schur_t.scale(s * T::lit(2.0)) + &t2;
                    (&(&r * &r) * &p).scale(f.d1(c(a, b)) / (s * s))
                }
                None => CMat::zeros(n),
            }
        };
        let centers = |a: T| {
            let mut v = f.line_centers(a);
            v.extend(self.spectrum.iter().map(|l| (l.im * t, a + l.re * t)));
            v
        };
        let r = double_integral_v(&k, &centers, f.oscillation(), cfg);
        if !r.err.is_finite() {
            return Err(BesovError::NotInBesov(format!("difference quotient of {} diverges", f.label())));
        }
        let w = T::lit(2.0) / T::PI();
        Ok(CalcReport { matrix: self.from_schur(&r.value.scale_re(w)), error_estimate: r.err * w, converged: r.converged, evaluations: r.evals })
    }

    /// `Σ w_k e^{−t_k A} + ∫ g(t) e^{−tA} dt`.
    pub fn apply_hp(&self, mu: &Measure<T>, cfg: &QuadConfig<T>) -> Result<CalcReport<T>> {
        cfg.validate()?;
        let n = self.dim();
        let mut m = CMat::zeros(n);
        for (t, w) in mu.atom_list() {
            m = &m + &self.a.scale_re(-*t).expm().scale(*w);
        }
        let mut err = T::zero();
        let mut evals = 0;
        let mut converged = true;
        if let Some(d) = mu.density() {
            let tol = cfg.abs_tol * T::lit(0.1) / self.k_a;
            let top = d.tail.cutoff(tol);
            let f = |t: T| self.a.scale_re(-t).expm().scale((d.g)(t));
            let r = adaptive(&f, &mu.breaks(top, T::zero()), cfg.abs_tol * T::lit(0.5), cfg.rel_tol * T::lit(0.1), cfg.budget, false);
            let tail = self.k_a * d.tail.tail_mass(top);
            if !tail.is_finite() {
                return Err(BesovError::TailDivergence("density tail is not controlled".into()));
            }
            m = &m + &r.value;
            err = r.err + tail;
            evals = r.evals;
            converged = r.converged;
        }
        Ok(CalcReport { matrix: m, error_estimate: err, converged, evaluations: evals })
    }

    /// `V diag(f(λ_i)) V^{−1}`.
    pub fn oracle_apply(&self, f: &HalfPlaneFn<T>) -> Result<CMat<T>> {
        if !self.diagonalizable {
            return Err(BesovError::NotDiagonalizable(self.cond.to_f64_lossy()));
        }
        let vi = self.eigvecs.inverse().ok_or(BesovError::NotDiagonalizable(f64::INFINITY))?;
        let d = CMat::diag(&self.spectrum.iter().map(|l| f.eval(*l)).collect::<Vec<_>>());
        Ok(&(&self.eigvecs * &d) * &vi)
    }

    /// `‖(fg)(A) − f(A) g(A)‖`.
    pub fn homomorphism_check(&self, f: &HalfPlaneFn<T>, g: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<T> {
        let fg = self.calculus_schur(&f.mul(g), cfg)?;
        let fa = self.calculus_schur(f, cfg)?;
        let ga = self.calculus_schur(g, cfg)?;
        Ok((&fg.matrix - &(&fa.matrix * &ga.matrix)).norm2())
    }

    /// Compares `‖f(A)‖` with `γ_upper ‖f‖_B`.
    pub fn bound_check(&self, f: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<BoundCheck<T>> {
        let fa = self.calculus_schur(f, cfg)?;
        let lhs = fa.matrix.norm2();
        let g = self.constants(cfg)?;
        let b = besov_norm(f, cfg)?;
        let rhs = g.gamma_upper * b.value;
        let slack = fa.error_estimate + g.gamma_upper * b.tail_bound + fmax(cfg.abs_tol, cfg.rel_tol * rhs);
        Ok(BoundCheck { lhs, rhs, holds: lhs <= rhs + slack })
    }

    /// Eigenvalues of `f(A)` against `f(σ(A))`.
    ///
    /// `f(A)` is computed at 100× tighter tolerances so that the comparison
    /// can use the fixed eigenvalue tolerance `1e−8·max(1, |f(λ)|)`.
    pub fn spectral_check(&self, f: &HalfPlaneFn<T>, cfg: &QuadConfig<T>) -> Result<SpectralReport<T>> {
        let fa = self.calculus_schur(f, &cfg.tightened(T::lit(0.01)))?;
        let computed: Vec<C<T>> = (0..self.dim()).map(|i| fa.matrix[(i, i)]).collect();
        let expected: Vec<C<T>> = self.spectrum.iter().map(|l| f.eval(*l)).collect();
        let distance = multiset_distance(&computed, &expected);
        let scale = expected.iter().fold(T::one(), |m, v| fmax(m, v.norm()));
        let tolerance = fmax(T::lit(1e-8), T::lit(100.0) * T::tol_floor()) * scale;
        Ok(SpectralReport { computed, expected, distance, tolerance, matches: distance <= tolerance, f_in_c0: vanishes_at_infinity(f) })
    }

    /// The resolvent functional stays finite on the α grid.
    pub fn resolvent_condition_check(&self, cfg: &QuadConfig<T>) -> Result<ResolventCheck<T>> {
        let g = self.constants(cfg)?;
        Ok(ResolventCheck { finite: g.gamma.is_finite(), margin: g.gamma })
    }
}

/// `(T + zI)^{−1}` for upper-triangular `T`.
fn tri_inverse<T: Real>(t: &CMat<T>, z: C<T>) -> Option<CMat<T>> {
    let n = t.dim();
    let mut x = CMat::zeros(n);
    for j in 0..n {
        let d = t[(j, j)] + z;
        if d.norm() == T::zero() {
            return None;
        }
        x[(j, j)] = cr(T::one()) / d;
        for i in (0..j).rev() {
            let mut s = cr(T::zero());
            for k in i + 1..=j {
                s += t[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = -s / (t[(i, i)] + z);
        }
    }
    Some(x)
}

/// Numeric check that `|f(z)| → 0` as `|z| → ∞` in the closed half-plane.
pub fn vanishes_at_infinity<T: Real>(f: &HalfPlaneFn<T>) -> bool {
    let near = f.eval(cr(T::one())).norm();
    let far = (0..=32)
        .map(|j| {
            let th = T::PI() * T::lit(-0.5 + j as f64 / 32.0);
            let r = T::lit(1e8);
            f.eval(c(fmax(r * th.cos(), T::zero()), r * th.sin())).norm()
        })
        .fold(T::zero(), fmax);
    far <= T::lit(1e-6) * (T::one() + near)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport<T: Real> {
    pub computed: Vec<C<T>>,
    pub expected: Vec<C<T>>,
    pub distance: T,
    pub tolerance: T,
    pub matches: bool,
    /// `f` vanishes at infinity on the closed half-plane.
    pub f_in_c0: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolventCheck<T> {
    pub finite: bool,
    pub margin: T,
}

/// Jordan block of size `n` with eigenvalue `lambda`.
pub fn jordan<T: Real>(n: usize, lambda: C<T>) -> CMat<T> {
    let mut m = CMat::identity(n).scale(lambda);
    for i in 0..n.saturating_sub(1) {
        m[(i, i + 1)] = cr(T::one());
    }
    m
}

/// Random diagonalizable matrix `V D V^{−1}` with `Re σ ∈ [0.1, 10]`.
pub fn random_stable<T: Real>(seed: u64, dim: usize) -> CMat<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d: Vec<C<T>> = (0..dim).map(|_| c(T::lit(rng.gen_range(0.1..10.0)), T::lit(rng.gen_range(-3.0..3.0)))).collect();
    loop {
        let mut v = CMat::identity(dim);
        for i in 0..dim {
            for j in 0..dim {
                v[(i, j)] += c(T::lit(rng.gen_range(-0.4..0.4)), T::lit(rng.gen_range(-0.4..0.4)));
            }
        }
        if let Some(vi) = v.inverse() {
            if cond2(&v) < T::lit(50.0) {
                return &(&v * &CMat::diag(&d)) * &vi;
            }
        }
    }
}

/// Parses a JSON array of rows; entries are numbers or `[re, im]` pairs.
pub fn parse_matrix_json<T: Real>(s: &str) -> Result<CMat<T>> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| BesovError::Parse(e.to_string()))?;
    let rows = v.as_array().ok_or_else(|| BesovError::Parse("matrix must be an array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let r = r.as_array().ok_or_else(|| BesovError::Parse("row must be an array".into()))?;
        let mut row = Vec::with_capacity(r.len());
        for e in r {
            let z = match e {
                serde_json::Value::Number(x) => cr(T::lit(x.as_f64().unwrap_or(f64::NAN))),
                serde_json::Value::Array(p) if p.len() == 2 => {
                    let re = p[0].as_f64().ok_or_else(|| BesovError::Parse("bad real part".into()))?;
                    let im = p[1].as_f64().ok_or_else(|| BesovError::Parse("bad imaginary part".into()))?;
                    c(T::lit(re), T::lit(im))
                }
                _ => return Err(BesovError::Parse(format!("bad matrix entry {e}"))),
            };
            row.push(z);
        }
        out.push(row);
    }
    CMat::from_rows(&out).ok_or_else(|| BesovError::Parse("matrix must be square".into()))
}
