//! Holomorphic functions on the right half-plane and their norms,
//! pairings and reproducing formulas.

mod norms;
pub(crate) mod pairing;

pub use norms::{besov_norm, besov_seminorm, besov_seminorm_between, e_seminorm, h1_norm, sup_norm, w_norm, w_norm_derivative, w_weighted, WFn};
pub use pairing::{boundary_pairing, green_pairing, poisson_reconstruct, reproduce, Variant};

use crate::error::{BesovError, Result};
use crate::scalar::{c, cr, C, Real};
use std::fmt;
use std::sync::Arc;

pub type CFn<T> = Arc<dyn Fn(C<T>) -> C<T> + Send + Sync>;
pub type BFn<T> = Arc<dyn Fn(T) -> C<T> + Send + Sync>;

/// Decay of `|f′(α+iβ)|` in `|β|`: bounded by `C |β|^{-power}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayHint<T> {
    pub power: T,
}

/// Oscillation of `f′(α+iβ)` as `|β| → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oscillation<T> {
    /// Not oscillating (or identically zero derivative).
    Smooth,
    /// Behaves like `e^{-iωβ}` times a non-oscillating factor.
    Frequency(T),
    /// Oscillating in an unknown way.
    Unknown,
}

impl<T: Real> Oscillation<T> {
    pub fn frequency(self) -> Option<T> {
        match self {
            Oscillation::Frequency(w) if w != T::zero() => Some(w),
            _ => None,
        }
    }

    fn neg(self) -> Self {
        match self {
            Oscillation::Frequency(w) => Oscillation::Frequency(-w),
            o => o,
        }
    }
}

/// A holomorphic function on ℂ₊ given through evaluators.
#[derive(Clone)]
pub struct HalfPlaneFn<T: Real> {
    eval: CFn<T>,
    deriv1: Option<CFn<T>>,
    deriv2: Option<CFn<T>>,
    at_infinity: C<T>,
    boundary: Option<BFn<T>>,
    decay_hint: Option<DecayHint<T>>,
    singularities: Vec<C<T>>,
    oscillation: Oscillation<T>,
    constant: bool,
    label: String,
}

impl<T: Real> fmt::Debug for HalfPlaneFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HalfPlaneFn")
            .field("label", &self.label)
            .field("at_infinity", &self.at_infinity)
            .field("singularities", &self.singularities)
            .field("oscillation", &self.oscillation)
            .finish()
    }
}

impl<T: Real> HalfPlaneFn<T> {
    pub fn new<F>(eval: F, at_infinity: C<T>) -> Self
    where
        F: Fn(C<T>) -> C<T> + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            deriv1: None,
            deriv2: None,
            at_infinity,
            boundary: None,
            decay_hint: None,
            singularities: Vec::new(),
            oscillation: Oscillation::Smooth,
            constant: false,
            label: "f".into(),
        }
    }

    /// The constant function `c`.
    pub fn constant(value: C<T>) -> Self {
        let zero = cr(T::zero());
        let mut f = Self::new(move |_| value, value)
            .with_deriv1(move |_| zero)
            .with_deriv2(move |_| zero)
            .with_boundary(move |_| value)
            .with_label(format!("const({value})"));
        f.constant = true;
        f
    }

    pub fn with_deriv1<F: Fn(C<T>) -> C<T> + Send + Sync + 'static>(mut self, d: F) -> Self {
        self.deriv1 = Some(Arc::new(d));
        self
    }

    pub fn with_deriv2<F: Fn(C<T>) -> C<T> + Send + Sync + 'static>(mut self, d: F) -> Self {
        self.deriv2 = Some(Arc::new(d));
        self
    }

    pub fn with_boundary<F: Fn(T) -> C<T> + Send + Sync + 'static>(mut self, b: F) -> Self {
        self.boundary = Some(Arc::new(b));
        self
    }

    pub fn with_decay(mut self, power: T) -> Self {
        self.decay_hint = Some(DecayHint { power });
        self
    }

    /// Points of the closed left half-plane where the function is singular.
    pub fn with_singularities(mut self, s: Vec<C<T>>) -> Self {
        self.singularities = s;
        self
    }

    pub fn with_oscillation(mut self, o: Oscillation<T>) -> Self {
        self.oscillation = o;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn at_infinity(&self) -> C<T> {
        self.at_infinity
    }

    pub fn decay_hint(&self) -> Option<DecayHint<T>> {
        self.decay_hint
    }

    pub fn singularities(&self) -> &[C<T>] {
        &self.singularities
    }

    pub fn oscillation(&self) -> Oscillation<T> {
        self.oscillation
    }

    pub fn is_constant(&self) -> bool {
        self.constant
    }

    pub fn has_deriv1(&self) -> bool {
        self.deriv1.is_some()
    }

    pub fn has_deriv2(&self) -> bool {
        self.deriv2.is_some()
    }

    pub fn has_boundary(&self) -> bool {
        self.boundary.is_some()
    }

    pub fn eval(&self, z: C<T>) -> C<T> {
        if z.re == T::zero() {
            if let Some(b) = &self.boundary {
                return b(z.im);
            }
        }
        (self.eval)(z)
    }

    /// `f′(z)`, exact when available, otherwise by Cauchy's formula.
    pub fn d1(&self, z: C<T>) -> C<T> {
        match &self.deriv1 {
            Some(d) => d(z),
            None => cauchy_derivative(self, z, 1, T::lit(1e-10)).unwrap_or(c(T::nan(), T::nan())),
        }
    }

    /// `f″(z)`, exact when available, otherwise by Cauchy's formula.
    pub fn d2(&self, z: C<T>) -> C<T> {
        match &self.deriv2 {
            Some(d) => d(z),
            None => cauchy_derivative(self, z, 2, T::lit(1e-10)).unwrap_or(c(T::nan(), T::nan())),
        }
    }

    /// Boundary value `f^b(s) = f(is)`, from the boundary map when present,
    /// else from `Re z = 1e-6`.
    pub fn boundary_value(&self, s: T) -> C<T> {
        match &self.boundary {
            Some(b) => b(s),
            None => (self.eval)(c(T::lit(1e-6), s)),
        }
    }

    /// `(feature center, width)` pairs for the vertical line `Re z = α`.
    pub fn line_centers(&self, alpha: T) -> Vec<(T, T)> {
        let mut v: Vec<(T, T)> = self
            .singularities
            .iter()
            .map(|s| {
                let w = alpha - s.re;
                (s.im, if w > T::zero() { w } else { T::one() })
            })
            .collect();
        if alpha > T::zero() {
            v.push((T::zero(), alpha));
        }
        v.push((T::zero(), T::one()));
        v
    }

    /// `z ↦ f(z + a)`, `Re a ≥ 0`.
    pub fn shift(&self, a: C<T>) -> Self {
        let (f0, f1, f2) = (self.clone(), self.clone(), self.clone());
        let fb = self.clone();
        let mut g = Self::new(move |z| f0.eval(z + a), self.at_infinity)
            .with_deriv1(move |z| f1.d1(z + a))
            .with_deriv2(move |z| f2.d2(z + a))
            .with_boundary(move |s| fb.eval(c(a.re, s + a.im)))
            .with_singularities(self.singularities.iter().map(|s| *s - a).collect())
            .with_oscillation(self.oscillation)
            .with_label(format!("shift({},{})", self.label, a));
        g.decay_hint = self.decay_hint;
        g.constant = self.constant;
        g
    }

    /// `z ↦ f(bz)`, `b > 0`.
    pub fn rescale(&self, b: T) -> Self {
        let (f0, f1, f2, fb) = (self.clone(), self.clone(), self.clone(), self.clone());
        let osc = match self.oscillation {
            Oscillation::Frequency(w) => Oscillation::Frequency(w * b),
            o => o,
        };
        let mut g = Self::new(move |z| f0.eval(z * b), self.at_infinity)
            .with_deriv1(move |z| f1.d1(z * b) * b)
            .with_deriv2(move |z| f2.d2(z * b) * (b * b))
            .with_boundary(move |s| fb.boundary_value(s * b))
            .with_singularities(self.singularities.iter().map(|s| *s / b).collect())
            .with_oscillation(osc)
            .with_label(format!("rescale({},{})", self.label, b));
        g.decay_hint = self.decay_hint;
        g.constant = self.constant;
        g
    }

    /// `λ f`.
    pub fn scale(&self, lam: C<T>) -> Self {
        let (f0, f1, f2, fb) = (self.clone(), self.clone(), self.clone(), self.clone());
        let mut g = Self::new(move |z| f0.eval(z) * lam, self.at_infinity * lam)
            .with_deriv1(move |z| f1.d1(z) * lam)
            .with_deriv2(move |z| f2.d2(z) * lam)
            .with_boundary(move |s| fb.boundary_value(s) * lam)
            .with_singularities(self.singularities.clone())
            .with_oscillation(self.oscillation)
            .with_label(format!("{}*{}", lam, self.label));
        g.decay_hint = self.decay_hint;
        g.constant = self.constant;
        g
    }

    /// `f + g`.
    pub fn add(&self, other: &Self) -> Self {
        let (a0, a1, a2, ab) = (self.clone(), self.clone(), self.clone(), self.clone());
        let (b0, b1, b2, bb) = (other.clone(), other.clone(), other.clone(), other.clone());
        let osc = match (self.constant, other.constant, self.oscillation, other.oscillation) {
            (true, _, _, o) | (_, true, o, _) => o,
            (_, _, Oscillation::Frequency(x), Oscillation::Frequency(y)) if x == y => Oscillation::Frequency(x),
            (_, _, Oscillation::Smooth, Oscillation::Smooth) => Oscillation::Smooth,
            _ => Oscillation::Unknown,
        };
        let mut g = Self::new(move |z| a0.eval(z) + b0.eval(z), self.at_infinity + other.at_infinity)
            .with_deriv1(move |z| a1.d1(z) + b1.d1(z))
            .with_deriv2(move |z| a2.d2(z) + b2.d2(z))
            .with_boundary(move |s| ab.boundary_value(s) + bb.boundary_value(s))
            .with_singularities(merge_sing(&self.singularities, &other.singularities))
            .with_oscillation(osc)
            .with_label(format!("({}+{})", self.label, other.label));
        g.decay_hint = min_decay(self, other);
        g.constant = self.constant && other.constant;
        g
    }

    /// `f − g`.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(cr(-T::one()))).with_label(format!("({}-{})", self.label, other.label))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        let (a0, a1, a2, ab) = (self.clone(), self.clone(), self.clone(), self.clone());
        let (b0, b1, b2, bb) = (other.clone(), other.clone(), other.clone(), other.clone());
        let osc = match (self.constant, other.constant, self.oscillation, other.oscillation) {
            (true, _, _, o) | (_, true, o, _) => o,
            (_, _, Oscillation::Frequency(x), Oscillation::Frequency(y)) => Oscillation::Frequency(x + y),
            (_, _, Oscillation::Smooth, o) | (_, _, o, Oscillation::Smooth) => o,
            _ => Oscillation::Unknown,
        };
        let two = T::lit(2.0);
        let mut g = Self::new(move |z| a0.eval(z) * b0.eval(z), self.at_infinity * other.at_infinity)
            .with_deriv1(move |z| a1.d1(z) * b1.eval(z) + a1.eval(z) * b1.d1(z))
            .with_deriv2(move |z| a2.d2(z) * b2.eval(z) + a2.d1(z) * b2.d1(z) * two + a2.eval(z) * b2.d2(z))
            .with_boundary(move |s| ab.boundary_value(s) * bb.boundary_value(s))
            .with_singularities(merge_sing(&self.singularities, &other.singularities))
            .with_oscillation(osc)
            .with_label(format!("({}*{})", self.label, other.label));
        g.decay_hint = min_decay(self, other);
        g.constant = self.constant && other.constant;
        g
    }

    /// The derivative `f′` as a function (its own derivative is `f″`).
    pub fn derivative(&self) -> Self {
        let (f1, f2, fb) = (self.clone(), self.clone(), self.clone());
        let f3 = self.clone();
        let mut g = Self::new(move |z| f1.d1(z), cr(T::zero()))
            .with_deriv1(move |z| f2.d2(z))
            .with_deriv2(move |z| cauchy_derivative_of(&|w| f3.d2(w), z, 1, T::lit(1e-10)).unwrap_or(c(T::nan(), T::nan())))
            .with_boundary(move |s| fb.d1(c(T::lit(1e-9), s)))
            .with_singularities(self.singularities.clone())
            .with_oscillation(self.oscillation)
            .with_label(format!("d({})", self.label));
        g.constant = self.constant;
        g
    }

    pub(crate) fn osc_conj(&self) -> Oscillation<T> {
        self.oscillation.neg()
    }
}

fn merge_sing<T: Real>(a: &[C<T>], b: &[C<T>]) -> Vec<C<T>> {
    let mut v = a.to_vec();
    for s in b {
        if !v.iter().any(|t| (*t - *s).norm() <= T::epsilon()) {
            v.push(*s);
        }
    }
    v
}

fn min_decay<T: Real>(a: &HalfPlaneFn<T>, b: &HalfPlaneFn<T>) -> Option<DecayHint<T>> {
    match (a.decay_hint, b.decay_hint) {
        (Some(x), Some(y)) => Some(DecayHint { power: x.power.min(y.power) }),
        (x, None) if b.constant => x,
        (None, y) if a.constant => y,
        _ => None,
    }
}

/// Derivative of order 1 or 2 by the trapezoidal rule on Cauchy's circle
/// of radius `min(Re z, 1)/2`, doubling the node count from 128 until two
/// successive values agree to `rel_tol`.
pub fn cauchy_derivative<T: Real>(f: &HalfPlaneFn<T>, z: C<T>, order: u32, rel_tol: T) -> Result<C<T>> {
    cauchy_derivative_of(&|w| f.eval(w), z, order, rel_tol)
}

pub(crate) fn cauchy_derivative_of<T: Real, F: Fn(C<T>) -> C<T>>(f: &F, z: C<T>, order: u32, rel_tol: T) -> Result<C<T>> {
    if !(order == 1 || order == 2) {
        return Err(BesovError::InvalidParameter(format!("order {order}")));
    }
    if !(z.re > T::lit(1e3) * T::min_positive_value().sqrt()) {
        return Err(BesovError::TooCloseToBoundary(z.re.to_f64_lossy()));
    }
    let rho = z.re.min(T::one()) * T::lit(0.5);
    let tol = rel_tol.max(T::tol_floor());
    let fact = if order == 1 { T::one() } else { T::lit(2.0) };
    let approx = |n: usize| {
        let mut s = cr(T::zero());
        for j in 0..n {
            let th = T::lit(2.0) * T::PI() * T::from_usize_lossy(j) / T::from_usize_lossy(n);
            let e = c(th.cos(), th.sin());
            let e_k = if order == 1 { e } else { e * e };
            s += f(z + e * rho) / e_k;
        }
        s * (fact / (T::from_usize_lossy(n) * rho.powi(order as i32)))
    };
    let mut n = 128;
    let mut prev = approx(n);
    let scale = |v: C<T>| v.norm().max(T::one() / rho.powi(order as i32) * T::epsilon() * T::lit(64.0));
    while n < 8192 {
        n *= 2;
        let cur = approx(n);
        if (cur - prev).norm() <= tol * scale(cur) {
            return Ok(cur);
        }
        prev = cur;
    }
    Ok(prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::NamedFamily;

    #[test]
    fn cauchy_matches_analytic() {
        let r1: HalfPlaneFn<f64> = NamedFamily::Resolvent(cr(1.0)).build().unwrap();
        let d = cauchy_derivative(&r1, cr(1.0), 1, 1e-10).unwrap();
        assert!((d - cr(-0.25)).norm() < 1e-12);
        let e1: HalfPlaneFn<f64> = NamedFamily::Exponential(1.0).build().unwrap();
        let d2 = cauchy_derivative(&e1, cr(2.0), 2, 1e-10).unwrap();
        assert!((d2 - cr((-2.0f64).exp())).norm() < 1e-12);
        let g1: HalfPlaneFn<f64> = NamedFamily::ExpReciprocal(1.0).build().unwrap();
        let d = cauchy_derivative(&g1, cr(1.0), 1, 1e-10).unwrap();
        assert!((d - cr((-0.5f64).exp() * 0.25)).norm() < 1e-12);
    }

    #[test]
    fn cauchy_rejects_boundary() {
        let r1: HalfPlaneFn<f64> = NamedFamily::Resolvent(cr(1.0)).build().unwrap();
        assert!(matches!(cauchy_derivative(&r1, c(0.0, 1.0), 1, 1e-8), Err(BesovError::TooCloseToBoundary(_))));
    }

    #[test]
    fn shift_of_exponential() {
        let e1: HalfPlaneFn<f64> = NamedFamily::Exponential(1.0).build().unwrap();
        let s = e1.shift(cr(1.0));
        let z = c(0.3, -2.0);
        assert!((s.eval(z) - e1.eval(z) * (-1.0f64).exp()).norm() < 1e-15);
        assert!((s.d1(z) - e1.d1(z) * (-1.0f64).exp()).norm() < 1e-15);
    }

    #[test]
    fn product_rule_against_cauchy() {
        let f: HalfPlaneFn<f64> = NamedFamily::Cayley(3).build().unwrap();
        let g: HalfPlaneFn<f64> = NamedFamily::ExpReciprocal(2.0).build().unwrap();
        let p = f.mul(&g).rescale(1.7).shift(c(0.2, 0.5));
        let bare = {
            let p2 = p.clone();
            HalfPlaneFn::new(move |z| p2.eval(z), p.at_infinity())
        };
        for z in [c(0.4, 0.1), c(2.0, -3.0), c(0.05, 1.0)] {
            let d1 = cauchy_derivative(&bare, z, 1, 1e-11).unwrap();
            let d2 = cauchy_derivative(&bare, z, 2, 1e-11).unwrap();
            assert!((d1 - p.d1(z)).norm() < 1e-8 * (1.0 + d1.norm()));
            assert!((d2 - p.d2(z)).norm() < 1e-6 * (1.0 + d2.norm()));
        }
    }

    #[test]
    fn oscillation_propagates() {
        let e1: HalfPlaneFn<f64> = NamedFamily::Exponential(1.0).build().unwrap();
        let r1: HalfPlaneFn<f64> = NamedFamily::Resolvent(cr(1.0)).build().unwrap();
        assert_eq!(r1.mul(&e1).oscillation(), Oscillation::Frequency(1.0));
        assert_eq!(e1.mul(&e1).rescale(0.5).oscillation(), Oscillation::Frequency(1.0));
        assert_eq!(r1.add(&e1).oscillation(), Oscillation::Unknown);
        let one = HalfPlaneFn::constant(cr(1.0));
        assert_eq!(e1.sub(&one).oscillation(), Oscillation::Frequency(1.0));
    }
}
