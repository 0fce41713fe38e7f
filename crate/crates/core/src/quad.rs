//! Quadrature kernels: adaptive Gauss–Kronrod, real-line integrals with
//! certified tails, the outer α-integral on a logarithmic scale, and the
//! supremum search along vertical lines.

use crate::config::QuadConfig;
use crate::scalar::{c, fmax, C, Real};
use rayon::prelude::*;

/// Values that can be integrated: scalars, complex numbers, matrices.
pub trait QuadValue<T: Real>: Clone + Send + Sync {
    fn zeroed(&self) -> Self;
    /// `self += w * x`
    fn axpy(&mut self, w: T, x: &Self);
    fn norm(&self) -> T;
}

/// Integrable values that admit multiplication by a complex scalar.
pub trait OscValue<T: Real>: QuadValue<T> {
    fn cmul(&self, z: C<T>) -> Self;
}

impl<T: Real> QuadValue<T> for T {
    fn zeroed(&self) -> Self {
        T::zero()
    }
    fn axpy(&mut self, w: T, x: &Self) {
        *self += w * *x;
    }
    fn norm(&self) -> T {
        self.abs()
    }
}

impl<T: Real> QuadValue<T> for C<T> {
    fn zeroed(&self) -> Self {
        C::new(T::zero(), T::zero())
    }
    fn axpy(&mut self, w: T, x: &Self) {
        *self += x.scale(w);
    }
    fn norm(&self) -> T {
        C::norm(*self)
    }
}

impl<T: Real> OscValue<T> for C<T> {
    fn cmul(&self, z: C<T>) -> Self {
        *self * z
    }
}

/// Several real integrands at once; the norm is the largest component.
impl<T: Real> QuadValue<T> for Vec<T> {
    fn zeroed(&self) -> Self {
        vec![T::zero(); self.len()]
    }
    fn axpy(&mut self, w: T, x: &Self) {
        for (a, b) in self.iter_mut().zip(x) {
            *a += w * *b;
        }
    }
    fn norm(&self) -> T {
        self.iter().fold(T::zero(), |m, v| fmax(m, v.abs()))
    }
}

/// Integral value with an error estimate.
#[derive(Debug, Clone)]
pub struct QuadResult<T: Real, V> {
    pub value: V,
    pub err: T,
    pub evals: usize,
    pub converged: bool,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15_nodes<T: Real>(a: T, b: T) -> [T; 15] {
    let m = (a + b) * T::lit(0.5);
    let h = (b - a) * T::lit(0.5);
    let mut xs = [m; 15];
    for j in 0..7 {
        xs[2 * j] = m - h * T::lit(XGK[j]);
        xs[2 * j + 1] = m + h * T::lit(XGK[j]);
    }
    xs
}

fn gk15_combine<T: Real, V: QuadValue<T>>(a: T, b: T, fx: &[V]) -> (V, T) {
    let h = (b - a) * T::lit(0.5);
    let mut k = fx[14].zeroed();
    let mut g = fx[14].zeroed();
    k.axpy(T::lit(WGK[7]), &fx[14]);
    g.axpy(T::lit(WG[3]), &fx[14]);
    for j in 0..7 {
        let wk = T::lit(WGK[j]);
        k.axpy(wk, &fx[2 * j]);
        k.axpy(wk, &fx[2 * j + 1]);
        if j % 2 == 1 {
            let wg = T::lit(WG[j / 2]);
            g.axpy(wg, &fx[2 * j]);
            g.axpy(wg, &fx[2 * j + 1]);
        }
    }
    let mut kh = k.zeroed();
    kh.axpy(h, &k);
    let mut e = k;
    e.axpy(-T::one(), &g);
    let err = (e.norm() * h).abs();
    (kh, err)
}

fn gk15<T: Real, V: QuadValue<T>, F: Fn(T) -> V + Sync>(f: &F, a: T, b: T, par: bool) -> (V, T) {
    let xs = gk15_nodes(a, b);
    let fx: Vec<V> = if par {
        xs.par_iter().map(|&x| f(x)).collect()
    } else {
        xs.iter().map(|&x| f(x)).collect()
    };
    gk15_combine(a, b, &fx)
}

struct Piece<T, V> {
    a: T,
    b: T,
    v: V,
    e: T,
    frozen: bool,
}

/// Globally adaptive Gauss–Kronrod (7/15) integration over consecutive
/// intervals `breaks[i]..breaks[i+1]`.
pub fn adaptive<T, V, F>(f: &F, breaks: &[T], abs_tol: T, rel_tol: T, budget: usize, par: bool) -> QuadResult<T, V>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + Sync,
{
    assert!(breaks.len() >= 2, "need at least one interval");
    let mut pieces: Vec<Piece<T, V>> = Vec::with_capacity(breaks.len() * 4);
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let (v, e) = gk15(f, w[0], w[1], par);
            pieces.push(Piece { a: w[0], b: w[1], v, e, frozen: false });
        }
    }
    let mut evals = 15 * pieces.len();
    if pieces.is_empty() {
        let v = f(breaks[0]).zeroed();
        return QuadResult { value: v, err: T::zero(), evals: 1, converged: true };
    }
    let total = |ps: &[Piece<T, V>]| {
        let mut s = ps[0].v.zeroed();
        for p in ps {
            s.axpy(T::one(), &p.v);
        }
        s
    };
    let mut sum = total(&pieces);
    let mut err: T = pieces.iter().map(|p| p.e).sum();
    let mut converged = false;
    loop {
        let tol = fmax(abs_tol, rel_tol * sum.norm());
        if err <= tol {
            converged = true;
            break;
        }
        if evals + 30 > budget {
            break;
        }
        let mut best: Option<usize> = None;
        for (i, p) in pieces.iter().enumerate() {
            if !p.frozen && best.map_or(true, |j| p.e > pieces[j].e) {
                best = Some(i);
            }
        }
        let Some(i) = best else { break };
        let (a, b) = (pieces[i].a, pieces[i].b);
        let m = (a + b) * T::lit(0.5);
        let scale = fmax(a.abs(), b.abs());
        if (b - a) <= scale * T::epsilon() * T::lit(256.0) || !(m > a && m < b) {
            pieces[i].frozen = true;
            if pieces.iter().all(|p| p.frozen || p.e == T::zero()) {
                break;
            }
            continue;
        }
        let (v1, e1) = gk15(f, a, m, par);
        let (v2, e2) = gk15(f, m, b, par);
        evals += 30;
        let old = std::mem::replace(&mut pieces[i], Piece { a, b: m, v: v1, e: e1, frozen: false });
        sum.axpy(-T::one(), &old.v);
        sum.axpy(T::one(), &pieces[i].v);
        sum.axpy(T::one(), &v2);
        err = err - old.e + e1 + e2;
        pieces.push(Piece { a: m, b, v: v2, e: e2, frozen: false });
        if pieces.len() % 64 == 0 {
            err = pieces.iter().map(|p| p.e).sum();
        }
    }
    pieces.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(std::cmp::Ordering::Equal));
    let value = total(&pieces);
    let err = pieces.iter().map(|p| p.e).sum();
    QuadResult { value, err, evals, converged }
}

/// Placement hints for a line integral over ℝ.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSpec<T> {
    /// Feature locations `(center, width)`.
    pub centers: Vec<(T, T)>,
    /// Frequency ω with integrand ≈ e^{-iωβ}·(non-oscillatory) for |β| large.
    pub osc: Option<T>,
}

impl<T: Real> LineSpec<T> {
    pub fn new(centers: Vec<(T, T)>) -> Self {
        Self { centers, osc: None }
    }

    pub fn with_osc(mut self, osc: Option<T>) -> Self {
        self.osc = osc.filter(|w| *w != T::zero());
        self
    }

    fn core_window(&self) -> T {
        let mut b = T::one();
        for &(cc, w) in &self.centers {
            b = fmax(b, cc.abs() + T::lit(64.0) * w);
        }
        if let Some(om) = self.osc {
            b = fmax(b, T::lit(48.0) / om.abs());
        }
        b
    }

    fn breakpoints(&self, bw: T) -> Vec<T> {
        let mut xs = vec![-bw, bw];
        for &(cc, w) in &self.centers {
            if cc.abs() < bw {
                xs.push(cc);
            }
            let mut d = w * T::lit(1.0 / 64.0);
            while d < bw * T::lit(2.0) {
                for x in [cc - d, cc + d] {
                    if x.abs() < bw {
                        xs.push(x);
                    }
                }
                d *= T::lit(4.0);
            }
        }
        if let Some(om) = self.osc {
            let step = T::PI() / om.abs();
            let n = (bw / step).to_f64().unwrap_or(0.0);
            if n < 20_000.0 {
                let n = n as i64;
                for k in -n..=n {
                    let x = step * T::lit(k as f64);
                    if x.abs() < bw {
                        xs.push(x);
                    }
                }
            }
        }
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup_by(|a, b| (*a - *b).abs() <= T::epsilon() * fmax(a.abs(), T::one()) * T::lit(8.0));
        xs
    }
}

/// Integral over ℝ of a non-oscillatory integrand; tails are summed over
/// geometrically growing pieces with ratio extrapolation.
pub fn integrate_line<T, V, F>(f: &F, spec: &LineSpec<T>, abs_tol: T, rel_tol: T, budget: usize) -> QuadResult<T, V>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + Sync,
{
    let bw = spec.core_window();
    let core = adaptive(f, &spec.breakpoints(bw), abs_tol * T::lit(0.5), rel_tol * T::lit(0.5), budget, false);
    let target = fmax(abs_tol, rel_tol * core.value.norm()) * T::lit(0.25);
    let right = tail_doubling(f, bw, T::one(), target, rel_tol, budget);
    let left = tail_doubling(f, bw, -T::one(), target, rel_tol, budget);
    let mut value = core.value;
    value.axpy(T::one(), &right.value);
    value.axpy(T::one(), &left.value);
    QuadResult {
        value,
        err: core.err + right.err + left.err,
        evals: core.evals + right.evals + left.evals,
        converged: core.converged && right.converged && left.converged,
    }
}

fn tail_doubling<T, V, F>(f: &F, start: T, dir: T, target: T, rel_tol: T, budget: usize) -> QuadResult<T, V>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + Sync,
{
    let g = |x: T| f(dir * x);
    let mut a = start;
    let mut acc: Option<V> = None;
    let mut evals = 0;
    let mut prev_norm: Option<T> = None;
    let mut prev_ratio: Option<T> = None;
    let mut last_norm = T::zero();
    let max_steps = if T::epsilon() < T::lit(1e-10) { 90 } else { 40 };
    for _ in 0..max_steps {
        let b = a * T::lit(2.0);
        let p = adaptive(&g, &[a, b], target * T::lit(0.05), rel_tol * T::lit(0.1), budget / 8 + 200, false);
        evals += p.evals;
        let n = p.value.norm();
        last_norm = n;
        match acc.as_mut() {
            Some(s) => s.axpy(T::one(), &p.value),
            None => acc = Some(p.value.clone()),
        }
        if n <= target * T::lit(0.05) && prev_norm.map_or(true, |pn| n <= pn) {
            return QuadResult { value: acc.unwrap(), err: n + p.err, evals, converged: true };
        }
        if let Some(pn) = prev_norm {
            if pn > T::zero() {
                let r = n / pn;
                if let Some(pr) = prev_ratio {
                    if r < T::lit(0.9) && (r - pr).abs() < T::lit(0.02) {
                        let k = r / (T::one() - r);
                        let rem_err = n * k * ((r - pr).abs() / (T::one() - r)) * T::lit(4.0);
                        if rem_err <= target {
                            let s = acc.as_mut().unwrap();
                            s.axpy(k, &p.value);
                            return QuadResult { value: acc.unwrap(), err: rem_err + p.err, evals, converged: true };
                        }
                    }
                }
                prev_ratio = Some(r);
            }
        }
        prev_norm = Some(n);
        a = b;
        if evals > budget {
            break;
        }
    }
    QuadResult { value: acc.unwrap(), err: last_norm, evals, converged: false }
}

/// Integral over ℝ of `f(β) = e^{-iωβ} h(β)` with `h` smooth and decaying;
/// the tails come from the integration-by-parts expansion in 1/ω.
/// Falls back to [`integrate_line`] when no frequency is given.
pub fn integrate_line_osc<T, V, F>(f: &F, spec: &LineSpec<T>, abs_tol: T, rel_tol: T, budget: usize) -> QuadResult<T, V>
where
    T: Real,
    V: OscValue<T>,
    F: Fn(T) -> V + Sync,
{
    let Some(om) = spec.osc else {
        return integrate_line(f, spec, abs_tol, rel_tol, budget);
    };
    let mut bw = spec.core_window();
    let mut res = adaptive(f, &spec.breakpoints(bw), abs_tol * T::lit(0.5), rel_tol * T::lit(0.5), budget, false);
    for _ in 0..24 {
        let target = fmax(abs_tol, rel_tol * res.value.norm()) * T::lit(0.25);
        let (rv, re, ne1) = ibp_tail(f, bw, om, T::one());
        let (lv, le, ne2) = ibp_tail(f, bw, om, -T::one());
        res.evals += ne1 + ne2;
        if re + le <= target || res.evals > budget * 4 {
            let mut value = res.value.clone();
            value.axpy(T::one(), &rv);
            value.axpy(T::one(), &lv);
            return QuadResult {
                value,
                err: res.err + re + le,
                evals: res.evals,
                converged: res.converged && re + le <= target,
            };
        }
        let step = T::PI() / om.abs();
        let nb = bw * T::lit(2.0);
        let mut brk = vec![bw];
        let n = ((nb - bw) / step).to_f64().unwrap_or(0.0).min(20_000.0) as usize;
        for k in 1..n {
            brk.push(bw + step * T::from_usize_lossy(k));
        }
        brk.push(nb);
        let r = adaptive(f, &brk, target * T::lit(0.1), rel_tol * T::lit(0.1), budget, false);
        let nbrk: Vec<T> = brk.iter().rev().map(|x| -*x).collect();
        let l = adaptive(f, &nbrk, target * T::lit(0.1), rel_tol * T::lit(0.1), budget, false);
        res.value.axpy(T::one(), &r.value);
        res.value.axpy(T::one(), &l.value);
        res.err += r.err + l.err;
        res.evals += r.evals + l.evals;
        res.converged &= r.converged && l.converged;
        bw = nb;
    }
    res.converged = false;
    res
}

/// Integration-by-parts tail `∫_{B}^{∞}` (dir = +1) or `∫_{-∞}^{-B}` (dir = −1).
fn ibp_tail<T, V, F>(f: &F, b: T, om: T, dir: T) -> (V, T, usize)
where
    T: Real,
    V: OscValue<T>,
    F: Fn(T) -> V + Sync,
{
    let x0 = dir * b;
    let d = b / T::lit(8.0);
    let h = |x: T| f(x).cmul(c(T::zero(), om * x).exp());
    let hs: Vec<V> = (-2..=2).map(|j| h(x0 + d * T::lit(j as f64))).collect();
    // five-point stencils
    let mut d1 = hs[0].zeroed();
    d1.axpy(T::one() / (T::lit(12.0) * d), &hs[0]);
    d1.axpy(T::lit(-8.0) / (T::lit(12.0) * d), &hs[1]);
    d1.axpy(T::lit(8.0) / (T::lit(12.0) * d), &hs[3]);
    d1.axpy(-T::one() / (T::lit(12.0) * d), &hs[4]);
    let d2s = T::lit(12.0) * d * d;
    let mut d2 = hs[0].zeroed();
    d2.axpy(-T::one() / d2s, &hs[0]);
    d2.axpy(T::lit(16.0) / d2s, &hs[1]);
    d2.axpy(T::lit(-30.0) / d2s, &hs[2]);
    d2.axpy(T::lit(16.0) / d2s, &hs[3]);
    d2.axpy(-T::one() / d2s, &hs[4]);
    let iw = c(T::zero(), om);
    let t0 = hs[2].cmul(iw.inv());
    let t1 = d1.cmul(iw.powi(-2));
    let t2 = d2.cmul(iw.powi(-3));
    let mut s = t0;
    s.axpy(T::one(), &t1);
    s.axpy(T::one(), &t2);
    let phase = c(T::zero(), -om * x0).exp();
    let v = if dir > T::zero() { s.cmul(phase) } else { s.cmul(-phase) };
    let err = t2.norm() + t1.norm() * T::lit(0.01);
    (v, err, 5)
}

/// Outer integral `∫₀^∞ g(α) dα` computed in u = log α with adaptive
/// Gauss–Kronrod on the configured range and extension pieces for the tails.
/// `alpha_breaks` are α-values where `g` may be non-smooth.
pub fn integrate_alpha<T, V, F>(g: &F, cfg: &QuadConfig<T>, alpha_breaks: &[T], abs_tol: T, rel_tol: T) -> QuadResult<T, V>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + Sync,
{
    let gu = |u: T| {
        let a = u.exp();
        let v = g(a);
        let mut out = v.zeroed();
        out.axpy(a, &v);
        out
    };
    integrate_log_range(&gu, cfg, cfg.alpha_log_range, alpha_breaks, abs_tol, rel_tol)
}

/// As [`integrate_alpha`] but over a finite α-interval `[lo, hi]`
/// (`hi` may be infinite).
pub fn integrate_alpha_between<T, V, F>(g: &F, cfg: &QuadConfig<T>, lo: T, hi: T, abs_tol: T, rel_tol: T) -> QuadResult<T, V>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + Sync,
{
    let gu = |u: T| {
        let a = u.exp();
        let v = g(a);
        let mut out = v.zeroed();
        out.axpy(a, &v);
        out
    };
    let (u0, u1) = cfg.alpha_log_range;
    let ulo = if lo > T::zero() { lo.ln() } else { T::neg_infinity() };
    let uhi = if hi.is_finite() { hi.ln() } else { T::infinity() };
    if !(ulo < uhi) {
        let v = g(T::one()).zeroed();
        return QuadResult { value: v, err: T::zero(), evals: 1, converged: true };
    }
    if ulo.is_finite() && uhi.is_finite() {
        let n = 8;
        let brk: Vec<T> = (0..=n).map(|k| ulo + (uhi - ulo) * T::lit(k as f64 / n as f64)).collect();
        return adaptive(&gu, &brk, abs_tol, rel_tol, cfg.budget, true);
    }
    let a = if ulo.is_finite() { ulo } else { fmax(u0, T::lit(-4.0)).min(uhi - T::one()) };
    let b = if uhi.is_finite() { uhi } else { u1.max(ulo + T::one()) };
    integrate_log_range_open(&gu, cfg, (a, b), &[], abs_tol, rel_tol, !ulo.is_finite(), !uhi.is_finite())
}

fn integrate_log_range<T, V, F>(gu: &F, cfg: &QuadConfig<T>, range: (T, T), alpha_breaks: &[T], abs_tol: T, rel_tol: T) -> QuadResult<T, V>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + Sync,
{
    integrate_log_range_open(gu, cfg, range, alpha_breaks, abs_tol, rel_tol, true, true)
}

#[allow(clippy::too_many_arguments)]
fn integrate_log_range_open<T, V, F>(
    gu: &F,
    cfg: &QuadConfig<T>,
    range: (T, T),
    alpha_breaks: &[T],
    abs_tol: T,
    rel_tol: T,
    open_lo: bool,
    open_hi: bool,
) -> QuadResult<T, V>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + Sync,
{
    let (u0, u1) = range;
    let n = cfg.alpha_nodes.max(8);
    let mut brk: Vec<T> = (0..=n).map(|k| u0 + (u1 - u0) * T::from_usize_lossy(k) / T::from_usize_lossy(n)).collect();
    for &a in alpha_breaks {
        if a > T::zero() {
            let u = a.ln();
            if u > u0 && u < u1 {
                brk.push(u);
            }
        }
    }
    brk.sort_by(|a, b| a.partial_cmp(b).unwrap());
    brk.dedup();
    let core = adaptive(gu, &brk, abs_tol * T::lit(0.5), rel_tol * T::lit(0.5), cfg.budget, true);
    let mut value = core.value;
    let mut err = core.err;
    let mut evals = core.evals;
    let mut converged = core.converged;
    let cap = (T::max_value().ln() * T::lit(0.4)).min(T::lit(120.0));
    for (open, dir, start) in [(open_hi, T::one(), u1), (open_lo, -T::one(), u0)] {
        if !open {
            continue;
        }
        let mut u = start;
        let mut prev: Option<T> = None;
        let mut done = false;
        while (u * dir) < cap {
            let target = fmax(abs_tol, rel_tol * value.norm()) * T::lit(0.1);
            let v = u + dir * T::lit(4.0);
            let (a, b) = if dir > T::zero() { (u, v) } else { (v, u) };
            let p = adaptive(gu, &[a, b], target * T::lit(0.1), rel_tol * T::lit(0.1), cfg.budget / 4, true);
            evals += p.evals;
            err += p.err;
            converged &= p.converged;
            value.axpy(T::one(), &p.value);
            let pn = p.value.norm();
            if pn <= target {
                let r = prev.map_or(T::zero(), |q| if q > T::zero() { (pn / q).min(T::lit(0.99)) } else { T::zero() });
                err += pn * r / (T::one() - r);
                done = true;
                break;
            }
            prev = Some(pn);
            u = v;
        }
        if !done {
            converged = false;
            err = T::infinity();
        }
    }
    QuadResult { value, err, evals, converged }
}

/// Result of a supremum search on a line.
#[derive(Debug, Clone, Copy)]
pub struct SupResult<T> {
    pub value: T,
    pub arg: T,
    pub evals: usize,
    pub window: T,
}

/// Supremum over β ∈ ℝ of a non-negative function `m(β)`.
///
/// Samples logarithmically around each `(center, width)` hint, grows the
/// window while the maximum sits on its edge, then refines the best local
/// maxima by golden-section search.
pub fn line_sup<T: Real, F: Fn(T) -> T>(m: &F, centers: &[(T, T)], cfg: &QuadConfig<T>) -> SupResult<T> {
    let spd = cfg.sup_samples.max(2);
    let mut w0 = cfg.beta_window_init;
    for &(cc, w) in centers {
        w0 = fmax(w0, cc.abs() + T::lit(16.0) * w);
    }
    let ratio = T::lit(10f64.powf(1.0 / spd as f64));
    let mut xs: Vec<T> = vec![T::zero()];
    let add_log = |xs: &mut Vec<T>, cc: T, w: T, lo: T, hi: T| {
        let mut d = w * T::lit(1e-3);
        while d < lo {
            d *= ratio;
        }
        while d <= hi {
            xs.push(cc - d);
            xs.push(cc + d);
            d *= ratio;
        }
    };
    for &(cc, w) in centers {
        xs.push(cc);
        add_log(&mut xs, cc, w, T::zero(), w0);
    }
    add_log(&mut xs, T::zero(), T::one(), T::zero(), w0);
    let uni = 4 * spd;
    for k in 0..=uni {
        let x = w0 * T::lit(-1.0 + 2.0 * k as f64 / uni as f64);
        xs.push(x);
    }
    let mut pts: Vec<(T, T)> = Vec::new();
    let mut evals = 0;
    let push_all = |pts: &mut Vec<(T, T)>, xs: &[T], evals: &mut usize| {
        for &x in xs {
            let v = m(x);
            *evals += 1;
            pts.push((x, if v.is_nan() { T::zero() } else { v }));
        }
    };
    push_all(&mut pts, &xs, &mut evals);
    let mut window = w0;
    let w_max = window * T::lit(1e15).min(T::max_value().sqrt());
    loop {
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        pts.dedup_by(|a, b| a.0 == b.0);
        let n = pts.len();
        let edge = fmax(pts[0].1, pts[n - 1].1);
        let inner = pts[1..n - 1].iter().fold(T::zero(), |acc, p| fmax(acc, p.1));
        if edge <= inner * (T::one() + T::lit(4.0) * T::epsilon()) || window >= w_max {
            break;
        }
        let nw = window * cfg.beta_window_growth;
        let mut more = Vec::new();
        let mut d = window * ratio;
        while d <= nw {
            more.push(d);
            more.push(-d);
            d *= ratio;
        }
        push_all(&mut pts, &more, &mut evals);
        window = nw;
    }
    let n = pts.len();
    let mut cands: Vec<usize> = (0..n)
        .filter(|&i| {
            let l = if i > 0 { pts[i - 1].1 } else { T::neg_infinity() };
            let r = if i + 1 < n { pts[i + 1].1 } else { T::neg_infinity() };
            pts[i].1 >= l && pts[i].1 >= r
        })
        .collect();
    cands.sort_by(|&a, &b| pts[b].1.partial_cmp(&pts[a].1).unwrap());
    cands.truncate(cfg.refine_rounds.max(1));
    let mut best = (pts[cands[0]].0, pts[cands[0]].1);
    for &i in &cands {
        if i == 0 || i + 1 == n {
            continue;
        }
        let (x, v, e) = golden_max(m, pts[i - 1].0, pts[i + 1].0, pts[i].0, pts[i].1);
        evals += e;
        if v > best.1 {
            best = (x, v);
        }
    }
    SupResult { value: best.1, arg: best.0, evals, window }
}

/// Golden-section maximization on `[a, b]` seeded with an interior point.
pub fn golden_max<T: Real, F: Fn(T) -> T>(m: &F, mut a: T, mut b: T, x0: T, v0: T) -> (T, T, usize) {
    let gr = T::lit(0.618_033_988_749_894_8);
    let mut best = (x0, v0);
    let mut x1 = b - gr * (b - a);
    let mut x2 = a + gr * (b - a);
    let mut f1 = m(x1);
    let mut f2 = m(x2);
    let mut evals = 2;
    for _ in 0..80 {
        if (b - a).abs() <= T::epsilon() * T::lit(4.0) * (a.abs() + b.abs()) {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = m(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = m(x2);
        }
        evals += 1;
        for (x, f) in [(x1, f1), (x2, f2)] {
            if f > best.1 {
                best = (x, f);
            }
        }
    }
    (best.0, best.1, evals)
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadConfig<f64> {
        QuadConfig::default()
    }

    #[test]
    fn gk_polynomial_exact() {
        let r = adaptive(&|x: f64| x.powi(5) - 2.0 * x, &[0.0, 2.0], 1e-14, 1e-14, 10_000, false);
        assert!((r.value - (64.0 / 6.0 - 4.0)).abs() < 1e-12);
    }

    #[test]
    fn line_lorentzian() {
        let spec = LineSpec::new(vec![(0.0, 1.0)]);
        let r = integrate_line(&|b: f64| 1.0 / (1.0 + b * b), &spec, 1e-12, 1e-12, 100_000);
        assert!((r.value - std::f64::consts::PI).abs() < 1e-9, "{}", r.value);
        assert!(r.converged);
    }

    #[test]
    fn line_oscillatory_fourier() {
        // ∫ e^{-iβ}/(1+β²) dβ = π e^{-1}
        let spec = LineSpec::new(vec![(0.0, 1.0)]).with_osc(Some(1.0));
        let f = |b: f64| C::new(0.0, -b).exp() / (1.0 + b * b);
        let r = integrate_line_osc(&f, &spec, 1e-12, 1e-12, 400_000);
        let exact = std::f64::consts::PI * (-1.0f64).exp();
        assert!((r.value - C::new(exact, 0.0)).norm() < 1e-9, "{:?}", r.value);
    }

    #[test]
    fn line_oscillatory_slow_decay() {
        // ∫ e^{iβ}/(1+iβ) dβ = 2π e^{-1}
        let spec = LineSpec::new(vec![(0.0, 1.0)]).with_osc(Some(-1.0));
        let f = |b: f64| C::new(0.0, b).exp() / C::new(1.0, b);
        let r = integrate_line_osc(&f, &spec, 1e-11, 1e-11, 400_000);
        let exact = 2.0 * std::f64::consts::PI * (-1.0f64).exp();
        assert!((r.value - C::new(exact, 0.0)).norm() < 1e-8, "{:?}", r.value);
    }

    #[test]
    fn line_oscillatory_pole_on_wrong_side() {
        // the contour closes away from the pole
        let spec = LineSpec::new(vec![(0.0, 1.0)]).with_osc(Some(1.0));
        let f = |b: f64| C::new(0.0, -b).exp() / C::new(1.0, b);
        let r = integrate_line_osc(&f, &spec, 1e-11, 1e-11, 400_000);
        assert!(r.value.norm() < 1e-8, "{:?}", r.value);
    }

    #[test]
    fn alpha_integral_exponential() {
        let r = integrate_alpha(&|a: f64| (-a).exp(), &cfg(), &[], 1e-12, 1e-12);
        assert!((r.value - 1.0).abs() < 1e-10, "{}", r.value);
        let r = integrate_alpha(&|a: f64| 1.0 / (1.0 + a).powi(2), &cfg(), &[], 1e-12, 1e-12);
        assert!((r.value - 1.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn alpha_integral_between() {
        let c = cfg();
        let r = integrate_alpha_between(&|a: f64| 1.0 / (1.0 + a).powi(2), &c, 0.0, 0.25, 1e-13, 1e-13);
        assert!((r.value - 0.2).abs() < 1e-10);
        let r = integrate_alpha_between(&|a: f64| 1.0 / (1.0 + a).powi(2), &c, 4.0, f64::INFINITY, 1e-13, 1e-13);
        assert!((r.value - 0.2).abs() < 1e-10);
    }

    #[test]
    fn sup_finds_offset_peak() {
        let m = |b: f64| (-(b - 37.0).powi(2)).exp();
        let s = line_sup(&m, &[(0.0, 1.0)], &cfg());
        assert!((s.value - 1.0).abs() < 1e-10 && (s.arg - 37.0).abs() < 1e-4);
    }

    #[test]
    fn sup_monotone_to_infinity() {
        let m = |b: f64| b.abs() / (1.0 + b * b).sqrt();
        let s = line_sup(&m, &[(0.0, 1.0)], &cfg());
        assert!((s.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn legendre_weights_sum() {
        let (x, w) = gauss_legendre(16);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let i: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((i - 2.0 / 31.0).abs() < 1e-14);
    }
}
