//! Bounded measures on ℝ₊ (atoms plus an integrable density), their
//! Hille–Phillips norms, Laplace transforms and convolutions.

use crate::config::{NormReport, QuadConfig};
use crate::error::{BesovError, Result};
use crate::families::special::laguerre;
use crate::func::{HalfPlaneFn, Oscillation};
use crate::quad::adaptive;
use crate::scalar::{c, cr, fmax, C, Real};
use std::sync::Arc;

/// Certified envelope of a density: `|g(t)| ≤ bound(t)` for all `t ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailBound<T> {
    /// `c · e^{−rate·t}`
    Exponential { c: T, rate: T },
    /// `c · (1+t)^{−p}`, `p > 1`
    Power { c: T, p: T },
}

impl<T: Real> TailBound<T> {
    /// Upper bound for `∫_T^∞ bound(t) dt`.
    pub fn tail_mass(&self, t: T) -> T {
        match *self {
            TailBound::Exponential { c, rate } => c * (-rate * t).exp() / rate,
            TailBound::Power { c, p } => c * (T::one() + t).powf(T::one() - p) / (p - T::one()),
        }
    }

    /// Smallest `T` with `tail_mass(T) ≤ tol`.
    pub fn cutoff(&self, tol: T) -> T {
        let t = match *self {
            TailBound::Exponential { c, rate } => (c / (rate * tol)).ln() / rate,
            TailBound::Power { c, p } => (c / ((p - T::one()) * tol)).powf(T::one() / (p - T::one())) - T::one(),
        };
        fmax(t, T::one())
    }

    fn as_power(&self, p: T) -> (T, T) {
        match *self {
            TailBound::Power { c, p } => (c, p),
            TailBound::Exponential { c, rate } => {
                // sup_t (1+t)^p e^{−rate t}
                let tstar = fmax(p / rate - T::one(), T::zero());
                (c * (T::one() + tstar).powf(p) * (-rate * tstar).exp(), p)
            }
        }
    }

    fn plus(&self, o: &Self) -> Self {
        match (*self, *o) {
            (TailBound::Exponential { c: a, rate: r }, TailBound::Exponential { c: b, rate: s }) => {
                TailBound::Exponential { c: a + b, rate: r.min(s) }
            }
            _ => {
                let p = match (*self, *o) {
                    (TailBound::Power { p, .. }, TailBound::Power { p: q, .. }) => p.min(q),
                    (TailBound::Power { p, .. }, _) | (_, TailBound::Power { p, .. }) => p,
                    _ => unreachable!(),
                };
                let (a, _) = self.as_power(p);
                let (b, _) = o.as_power(p);
                TailBound::Power { c: a + b, p }
            }
        }
    }

    fn scaled(&self, s: T) -> Self {
        match *self {
            TailBound::Exponential { c, rate } => TailBound::Exponential { c: c * s, rate },
            TailBound::Power { c, p } => TailBound::Power { c: c * s, p },
        }
    }
}

pub type DensityFn<T> = Arc<dyn Fn(T) -> C<T> + Send + Sync>;
/// Closed-form moments `(z, k) ↦ ∫ t^k e^{−zt} g(t) dt`, `k ≤ 2`.
pub type MomentFn<T> = Arc<dyn Fn(C<T>, i32) -> C<T> + Send + Sync>;

/// Integrable density with its certificate and points of non-smoothness.
#[derive(Clone)]
pub struct Density<T: Real> {
    pub g: DensityFn<T>,
    pub tail: TailBound<T>,
    pub breaks: Vec<T>,
    pub moments: Option<MomentFn<T>>,
}

/// Bounded measure `Σ w_k δ_{t_k} + g(t) dt` on `[0, ∞)`.
#[derive(Clone)]
pub struct Measure<T: Real> {
    atoms: Vec<(T, C<T>)>,
    density: Option<Density<T>>,
    label: String,
}

impl<T: Real> std::fmt::Debug for Measure<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Measure").field("label", &self.label).field("atoms", &self.atoms).field("has_density", &self.density.is_some()).finish()
    }
}

impl<T: Real> Measure<T> {
    pub fn zero() -> Self {
        Self { atoms: Vec::new(), density: None, label: "0".into() }
    }

    /// `δ_a`
    pub fn dirac(a: T) -> Result<Self> {
        Self::atoms(vec![(a, cr(T::one()))])
    }

    pub fn atoms(atoms: Vec<(T, C<T>)>) -> Result<Self> {
        if atoms.iter().any(|(t, _)| !(*t >= T::zero()) || !t.is_finite()) {
            return Err(BesovError::InvalidParameter("atoms must sit in [0, ∞)".into()));
        }
        let label = atoms.iter().map(|(t, w)| format!("{w}δ_{t}")).collect::<Vec<_>>().join("+");
        Ok(Self { atoms: merge_atoms(atoms), density: None, label })
    }

    /// Absolutely continuous measure with a certified envelope.
    pub fn with_density<F>(g: F, tail: TailBound<T>) -> Result<Self>
    where
        F: Fn(T) -> C<T> + Send + Sync + 'static,
    {
        let ok = match tail {
            TailBound::Exponential { c, rate } => c >= T::zero() && rate > T::zero(),
            TailBound::Power { c, p } => c >= T::zero() && p > T::one(),
        };
        if !ok {
            return Err(BesovError::TailDivergence("density envelope is not integrable".into()));
        }
        Ok(Self { atoms: Vec::new(), density: Some(Density { g: Arc::new(g), tail, breaks: Vec::new(), moments: None }), label: "g dt".into() })
    }

    /// `w e^{−λt} dt`
    pub fn exp_density(w: C<T>, lambda: T) -> Result<Self> {
        if !(lambda > T::zero()) {
            return Err(BesovError::TailDivergence(format!("rate {lambda} must be positive")));
        }
        let m = Self::with_density(move |t| w * (-lambda * t).exp(), TailBound::Exponential { c: w.norm(), rate: lambda })?;
        // k! w / (z+λ)^{k+1}
        let m = m.with_moments(move |z, k| {
            let fact = if k == 2 { T::lit(2.0) } else { T::one() };
            w * fact / (z + lambda).powi(k + 1)
        });
        Ok(m.with_label(format!("{w}e^(-{lambda}t)dt")))
    }

    /// `δ₀ − 2 e^{−t} L_{n−1}^{(1)}(2t) dt`, whose transform is the Cayley power `f_n`.
    pub fn cayley(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(BesovError::InvalidParameter("Cayley index must be >= 1".into()));
        }
        let m = (n - 1) as usize;
        let g = move |t: T| cr(-T::lit(2.0) * (-t).exp() * laguerre(m, T::one(), T::lit(2.0) * t));
        // envelope c e^{−t/2}: the polynomial factor is dominated past 8m + 80
        let top = 8.0 * m as f64 + 80.0;
        let mut cmax = T::zero();
        let steps = 4000;
        for k in 0..=steps {
            let t = T::lit(top * k as f64 / steps as f64);
            cmax = fmax(cmax, g(t).norm() * (t * T::lit(0.5)).exp());
        }
        let d = Self::with_density(g, TailBound::Exponential { c: cmax * T::lit(1.05), rate: T::lit(0.5) })?;
        // transform of the density is u^n − 1 with u = (z−1)/(z+1)
        let d = d.with_moments(move |z, k| {
            let one = cr(T::one());
            let zp = z + one;
            let u = (z - one) / zp;
            let nn = T::from_usize_lossy(n as usize);
            let (du, d2u) = (cr(T::lit(2.0)) / (zp * zp), cr(T::lit(-4.0)) / (zp * zp * zp));
            match k {
                0 => u.powi(n as i32) - one,
                1 => -(du * nn * u.powi(n as i32 - 1)),
                _ => {
                    let a = if n >= 2 { du * du * nn * (nn - T::one()) * u.powi(n as i32 - 2) } else { cr(T::zero()) };
                    a + d2u * nn * u.powi(n as i32 - 1)
                }
            }
        });
        Ok(Self::dirac(T::zero())?.plus(&d).with_label(format!("cayley_measure:n={n}")))
    }

    /// Attaches closed-form moments to the density part.
    pub fn with_moments<F>(mut self, m: F) -> Self
    where
        F: Fn(C<T>, i32) -> C<T> + Send + Sync + 'static,
    {
        if let Some(d) = &mut self.density {
            d.moments = Some(Arc::new(m));
        }
        self
    }

    pub fn with_label(mut self, l: impl Into<String>) -> Self {
        self.label = l.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn atom_list(&self) -> &[(T, C<T>)] {
        &self.atoms
    }

    pub fn density(&self) -> Option<&Density<T>> {
        self.density.as_ref()
    }

    /// Sum of two measures.
    pub fn plus(&self, o: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend(o.atoms.iter().copied());
        let density = match (&self.density, &o.density) {
            (None, None) => None,
            (Some(d), None) | (None, Some(d)) => Some(d.clone()),
            (Some(a), Some(b)) => {
                let (ga, gb) = (a.g.clone(), b.g.clone());
                let mut breaks = a.breaks.clone();
                breaks.extend(b.breaks.iter().copied());
                let moments: Option<MomentFn<T>> = match (&a.moments, &b.moments) {
                    (Some(ma), Some(mb)) => {
                        let (ma, mb) = (ma.clone(), mb.clone());
                        Some(Arc::new(move |z, k| ma(z, k) + mb(z, k)))
                    }
                    _ => None,
                };
                Some(Density { g: Arc::new(move |t| ga(t) + gb(t)), tail: a.tail.plus(&b.tail), breaks, moments })
            }
        };
        Self { atoms: merge_atoms(atoms), density, label: format!("({}+{})", self.label, o.label) }
    }

    /// `λ μ`.
    pub fn scale(&self, lam: C<T>) -> Self {
        let density = self.density.as_ref().map(|d| {
            let g = d.g.clone();
            let moments: Option<MomentFn<T>> = d.moments.clone().map(|m| Arc::new(move |z, k| m(z, k) * lam) as MomentFn<T>);
            Density { g: Arc::new(move |t| g(t) * lam), tail: d.tail.scaled(lam.norm()), breaks: d.breaks.clone(), moments }
        });
        Self { atoms: self.atoms.iter().map(|(t, w)| (*t, *w * lam)).collect(), density, label: format!("{lam}*{}", self.label) }
    }

    /// Cut-off beyond which the density mass is below `tol`.
    pub fn cutoff(&self, tol: T) -> T {
        self.density.as_ref().map_or(T::zero(), |d| d.tail.cutoff(tol))
    }

    pub(crate) fn breaks(&self, upto: T, osc: T) -> Vec<T> {
        let mut b = vec![T::zero(), upto];
        if let Some(d) = &self.density {
            b.extend(d.breaks.iter().copied().filter(|x| *x > T::zero() && *x < upto));
        }
        // initial partition: unit pieces near 0, then geometric, plus half periods
        let mut x = T::one();
        while x < upto {
            b.push(x);
            x = x * T::lit(2.0);
        }
        let osc = osc.abs();
        if osc > T::zero() {
            let step = T::PI() / osc;
            let n = (upto / step).to_f64().unwrap_or(0.0).min(50_000.0) as usize;
            for k in 1..n {
                b.push(step * T::from_usize_lossy(k));
            }
        }
        b.sort_by(|a, b| a.partial_cmp(b).unwrap());
        b.dedup();
        b
    }

    /// `Σ |w_k| + ∫ |g|`.
    pub fn hp_norm(&self, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
        let atoms: T = self.atoms.iter().map(|(_, w)| w.norm()).sum();
        let Some(d) = &self.density else {
            return Ok(NormReport::exact(atoms));
        };
        let tol = cfg.abs_tol;
        let top = d.tail.cutoff(tol * T::lit(0.1));
        let r = adaptive(&|t: T| (d.g)(t).norm(), &self.breaks(top, T::zero()), tol * T::lit(0.5), cfg.rel_tol * T::lit(0.1), cfg.budget * 4, false);
        let tail = d.tail.tail_mass(top);
        let value = atoms + r.value;
        Ok(NormReport { value, tail_bound: r.err + tail, converged: r.converged, evaluations: r.evals })
    }

    /// `∫ t^k e^{−zt} dμ(t)` for `k = 0, 1, 2`.
    fn moment(&self, z: C<T>, k: i32, tol: T, rel: T) -> C<T> {
        let mut s = cr(T::zero());
        for (t, w) in &self.atoms {
            if k > 0 && *t == T::zero() {
                continue;
            }
            s += *w * (-z * *t).exp() * t.powi(k);
        }
        if let Some(m) = self.density.as_ref().and_then(|d| d.moments.as_ref()) {
            s += m(z, k);
        } else if let Some(d) = &self.density {
            let top = match d.tail {
                TailBound::Exponential { .. } => d.tail.cutoff(tol * T::lit(0.01)) * T::lit(1.0 + 0.5 * k as f64) + T::lit(10.0 * k as f64),
                TailBound::Power { .. } => d.tail.cutoff(tol * T::lit(0.01)),
            };
            let top = if z.re > T::zero() { top.min(fmax(T::lit(60.0) / z.re, T::lit(40.0)) + T::lit(20.0 * k as f64) / z.re) } else { top };
            let f = |t: T| (d.g)(t) * (-z * t).exp() * t.powi(k);
            let r = adaptive(&f, &self.breaks(top, z.im), tol, rel, 400_000, false);
            s += r.value;
        }
        s
    }

    /// Laplace transform `Σ w_k e^{−z t_k} + ∫ e^{−zt} g(t) dt`.
    pub fn laplace(&self, z: C<T>) -> Result<C<T>> {
        if z.re < T::zero() {
            return Err(BesovError::InvalidParameter("Laplace transform needs Re z >= 0".into()));
        }
        Ok(self.moment(z, 0, T::lit(1e-11).max(T::tol_floor()), T::lit(1e-10).max(T::tol_floor())))
    }

    /// The transform packaged as a half-plane function.
    pub fn laplace_fn(&self) -> HalfPlaneFn<T> {
        let (m0, m1, m2, mb) = (self.clone(), self.clone(), self.clone(), self.clone());
        let tol = T::lit(1e-11).max(T::tol_floor());
        let rel = T::lit(1e-10).max(T::tol_floor());
        let at_inf = self.atoms.iter().filter(|(t, _)| *t == T::zero()).fold(cr(T::zero()), |s, (_, w)| s + *w);
        let moving: Vec<T> = self.atoms.iter().filter(|(t, _)| *t > T::zero()).map(|(t, _)| *t).collect();
        let osc = match moving.as_slice() {
            [] => Oscillation::Smooth,
            [a] if self.density.is_none() => Oscillation::Frequency(*a),
            _ => Oscillation::Unknown,
        };
        HalfPlaneFn::new(move |z| m0.moment(z, 0, tol, rel), at_inf)
            .with_deriv1(move |z| -m1.moment(z, 1, tol, rel))
            .with_deriv2(move |z| m2.moment(z, 2, tol, rel))
            .with_boundary(move |s| mb.moment(c(T::zero(), s), 0, tol, rel))
            .with_oscillation(osc)
            .with_label(format!("L[{}]", self.label))
    }

    /// Convolution `μ * ν`.
    pub fn convolve(&self, o: &Self, cfg: &QuadConfig<T>) -> Result<Self> {
        let mut atoms = Vec::new();
        for (s, v) in &self.atoms {
            for (t, w) in &o.atoms {
                atoms.push((*s + *t, *v * *w));
            }
        }
        let mut out = Self::atoms(atoms)?;
        for (a, b) in [(self, o), (o, self)] {
            if let Some(d) = &b.density {
                for (s, w) in &a.atoms {
                    out = out.plus(&shifted(d, *s, *w));
                }
            }
        }
        if let (Some(da), Some(db)) = (&self.density, &o.density) {
            out = out.plus(&grid_convolution(da, db, cfg)?);
        }
        Ok(out.with_label(format!("({}*{})", self.label, o.label)))
    }

    /// Samples `|∫ e^{−ist} dμ(t)|` on `freqs` and reports the decay.
    pub fn rajchman_diagnostic(&self, freqs: &[T]) -> Result<RajchmanReport<T>> {
        if freqs.is_empty() {
            return Err(BesovError::InvalidParameter("empty frequency grid".into()));
        }
        let vals: Vec<(T, T)> = freqs.iter().map(|&s| Ok((s, self.laplace(c(T::zero(), s))?.norm()))).collect::<Result<_>>()?;
        let smax = freqs.iter().fold(T::zero(), |m, s| fmax(m, s.abs()));
        let smin = freqs.iter().fold(T::infinity(), |m, s| m.min(s.abs()));
        let last: T = vals.iter().filter(|(s, _)| s.abs() >= smax / T::lit(10.0)).fold(T::zero(), |m, v| fmax(m, v.1));
        let first: T = vals.iter().filter(|(s, _)| s.abs() <= smin * T::lit(10.0)).fold(T::zero(), |m, v| fmax(m, v.1));
        let flagged = last > T::lit(0.5) * first && last > T::lit(1e-6);
        Ok(RajchmanReport { samples: vals, sup_last_decade: last, not_rajchman: flagged })
    }
}

/// Fourier decay profile of a measure.
#[derive(Debug, Clone)]
pub struct RajchmanReport<T> {
    pub samples: Vec<(T, T)>,
    pub sup_last_decade: T,
    /// Set when the transform stays bounded away from zero.
    pub not_rajchman: bool,
}

fn merge_atoms<T: Real>(mut atoms: Vec<(T, C<T>)>) -> Vec<(T, C<T>)> {
    atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut out: Vec<(T, C<T>)> = Vec::new();
    for (t, w) in atoms {
        match out.last_mut() {
            Some((s, v)) if *s == t => *v += w,
            _ => out.push((t, w)),
        }
    }
    out.retain(|(_, w)| w.norm() > T::zero());
    out
}

fn shifted<T: Real>(d: &Density<T>, s: T, w: C<T>) -> Measure<T> {
    let g = d.g.clone();
    let tail = match d.tail {
        // e^{−r(t−s)} = e^{rs} e^{−rt}
        TailBound::Exponential { c, rate } => TailBound::Exponential { c: c * w.norm() * (rate * s).exp(), rate },
        TailBound::Power { c, p } => TailBound::Power { c: c * w.norm() * (T::one() + s).powf(p), p },
    };
    let mut breaks: Vec<T> = d.breaks.iter().map(|b| *b + s).collect();
    breaks.push(s);
    // ∫ t^k g(t−s) e^{−zt} dt = e^{−zs} Σ_j C(k,j) s^{k−j} M_j(z)
    let moments: Option<MomentFn<T>> = d.moments.clone().map(|m| {
        Arc::new(move |z: C<T>, k: i32| {
            let e = (-z * s).exp() * w;
            let sum = match k {
                0 => m(z, 0),
                1 => m(z, 1) + m(z, 0) * s,
                _ => m(z, 2) + m(z, 1) * (T::lit(2.0) * s) + m(z, 0) * (s * s),
            };
            e * sum
        }) as MomentFn<T>
    });
    Measure {
        atoms: Vec::new(),
        density: Some(Density { g: Arc::new(move |t| if t < s { cr(T::zero()) } else { g(t - s) * w }), tail, breaks, moments }),
        label: format!("shift({s})"),
    }
}

const GRID: usize = 4096;

/// Density-density convolution by the trapezoid rule on a uniform grid and
/// its half-step refinement, combined by Richardson extrapolation, then
/// interpolated by local cubics.
fn grid_convolution<T: Real>(a: &Density<T>, b: &Density<T>, cfg: &QuadConfig<T>) -> Result<Measure<T>> {
    let tol = cfg.abs_tol;
    let top = a.tail.cutoff(tol) + b.tail.cutoff(tol);
    let h = top / T::from_usize_lossy(GRID);
    let fine = 2 * GRID;
    let hf = h * T::lit(0.5);
    let ga: Vec<C<T>> = (0..=fine).map(|k| (a.g)(hf * T::from_usize_lossy(k))).collect();
    let gb: Vec<C<T>> = (0..=fine).map(|k| (b.g)(hf * T::from_usize_lossy(k))).collect();
    let half = T::lit(0.5);
    // trapezoid sum for (g_a * g_b)(n hf) using every `step`-th sample
    let trap = |n: usize, step: usize| {
        let mut s = (ga[0] * gb[n] + ga[n] * gb[0]) * half;
        let mut j = step;
        while j < n {
            s += ga[j] * gb[n - j];
            j += step;
        }
        s * (hf * T::from_usize_lossy(step))
    };
    let third = T::one() / T::lit(3.0);
    let vals: Vec<C<T>> = (0..=GRID)
        .map(|k| if k == 0 { cr(T::zero()) } else { (trap(2 * k, 1) * T::lit(4.0) - trap(2 * k, 2)) * third })
        .collect();
    let vals = Arc::new(vals);
    let tail = match (a.tail, b.tail) {
        (TailBound::Exponential { c: ca, rate: ra }, TailBound::Exponential { c: cb, rate: rb }) => {
            let r = ra.min(rb);
            // t e^{−rt} ≤ (2/(r e)) e^{−rt/2}
            TailBound::Exponential { c: ca * cb * T::lit(2.0) / (r * T::E()), rate: r * half }
        }
        _ => {
            let (ca, p) = a.tail.as_power(T::lit(2.0));
            let (cb, q) = b.tail.as_power(T::lit(2.0));
            let p = p.min(q);
            // (1+t)^{-p} * (1+t)^{-p} ≤ 2^{p+1}/(p−1) (1+t)^{-p}
            TailBound::Power { c: ca * cb * T::lit(2.0).powf(p + T::one()) / (p - T::one()), p }
        }
    };
    let g = move |t: T| {
        if !(t >= T::zero()) || t >= top {
            return cr(T::zero());
        }
        let x = t / h;
        // four-point Lagrange stencil starting at j0
        let j0 = x.floor().to_usize().unwrap_or(0).saturating_sub(1).min(GRID - 3);
        let u = x - T::from_usize_lossy(j0);
        let mut s = cr(T::zero());
        for i in 0..4 {
            let mut w = T::one();
            for m in 0..4 {
                if m != i {
                    w = w * (u - T::from_usize_lossy(m)) / (T::from_usize_lossy(i) - T::from_usize_lossy(m));
                }
            }
            s += vals[j0 + i] * w;
        }
        s
    };
    Ok(Measure { atoms: Vec::new(), density: Some(Density { g: Arc::new(g), tail, breaks: vec![top], moments: None }), label: "conv".into() })
}
