//! Named function families, their closed-form norms and Hille–Phillips norms.

mod gap;
mod hp;
pub mod special;

pub use gap::{gap_table, GapFamily, GapRow};
pub use hp::{abs_integral, cayley_hp, exprecip_hp, g_prime_l1, regexp_hp};
pub use special::{bessel_j, g_prime, laguerre};

use crate::config::{NormReport, QuadConfig};
use crate::error::{BesovError, Result};
use crate::func::{besov_norm, HalfPlaneFn, Oscillation};
use crate::scalar::{c, cr, C, Real};

/// The built-in test functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedFamily<T: Real> {
    /// `((z−1)/(z+1))ⁿ`
    Cayley(u32),
    /// `e^{−t/(z+1)}`
    ExpReciprocal(T),
    /// `z/(z+1) · e^{−t/z}`
    RegularizedExp(T),
    /// `e^{−az}`, `a ≥ 0` real
    Exponential(T),
    /// `1/(z+a)`, `Re a > 0`
    Resolvent(C<T>),
    /// `1/(z+a)²`, `Re a > 0`
    ResolventSquare(C<T>),
    Constant(C<T>),
}

impl<T: Real> NamedFamily<T> {
    /// Short kind name used in function specs.
    pub fn kind(&self) -> &'static str {
        match self {
            NamedFamily::Cayley(_) => "cayley",
            NamedFamily::ExpReciprocal(_) => "exprecip",
            NamedFamily::RegularizedExp(_) => "regexp",
            NamedFamily::Exponential(_) => "exp",
            NamedFamily::Resolvent(_) => "resolvent",
            NamedFamily::ResolventSquare(_) => "resolvent2",
            NamedFamily::Constant(_) => "const",
        }
    }

    /// Builds the function with exact derivatives and boundary values.
    pub fn build(&self) -> Result<HalfPlaneFn<T>> {
        let one = cr(T::one());
        let bad = |m: String| Err(BesovError::InvalidParameter(m));
        Ok(match *self {
            NamedFamily::Cayley(n) => {
                if n == 0 {
                    return bad("Cayley index must be >= 1".into());
                }
                let ni = n as i32;
                let nf = T::lit(n as f64);
                let w = move |z: C<T>| (z - one) / (z + one);
                HalfPlaneFn::new(move |z| w(z).powi(ni), one)
                    .with_deriv1(move |z| (z + one).powi(-2) * w(z).powi(ni - 1) * (nf * T::lit(2.0)))
                    .with_deriv2(move |z| {
                        if ni == 1 {
                            -(z + one).powi(-3) * T::lit(4.0)
                        } else {
                            (cr(nf) - z) * (z - one).powi(ni - 2) * (z + one).powi(-ni - 2) * (nf * T::lit(4.0))
                        }
                    })
                    .with_boundary(move |s| w(c(T::zero(), s)).powi(ni))
                    .with_singularities(vec![-one])
                    .with_decay(T::lit(2.0))
                    .with_label(format!("cayley:n={n}"))
            }
            NamedFamily::ExpReciprocal(t) => {
                if !(t > T::zero()) {
                    return bad(format!("exprecip needs t > 0, got {t}"));
                }
                let e = move |z: C<T>| (-(z + one).inv() * t).exp();
                HalfPlaneFn::new(e, one)
                    .with_deriv1(move |z| e(z) * (z + one).powi(-2) * t)
                    .with_deriv2(move |z| e(z) * (z + one).powi(-4) * t * (cr(t) - (z + one) * T::lit(2.0)))
                    .with_boundary(move |s| e(c(T::zero(), s)))
                    .with_singularities(vec![-one])
                    .with_decay(T::lit(2.0))
                    .with_label(format!("exprecip:t={t}"))
            }
            NamedFamily::RegularizedExp(t) => {
                if !(t > T::zero()) {
                    return bad(format!("regexp needs t > 0, got {t}"));
                }
                let e = move |z: C<T>| (-z.inv() * t).exp();
                let two = T::lit(2.0);
                HalfPlaneFn::new(move |z| z / (z + one) * e(z), one)
                    .with_deriv1(move |z| e(z) * ((z + one).powi(-2) + (z * (z + one)).inv() * t))
                    .with_deriv2(move |z| {
                        let zp = z + one;
                        e(z) * (-zp.powi(-3) * two + (z * z * zp * zp).inv() * (two * t) + (z.powi(3) * zp).inv() * (t * t)
                            - (z * z * zp).inv() * (two * t))
                    })
                    .with_boundary(move |s| {
                        if s == T::zero() {
                            cr(T::zero())
                        } else {
                            let z = c(T::zero(), s);
                            z / (z + one) * c(T::zero(), t / s).exp()
                        }
                    })
                    .with_singularities(vec![cr(T::zero()), -one])
                    .with_decay(T::lit(2.0))
                    .with_label(format!("regexp:t={t}"))
            }
            NamedFamily::Exponential(a) => {
                if !(a >= T::zero()) || !a.is_finite() {
                    return bad(format!("e_a needs real a >= 0, got {a}"));
                }
                if a == T::zero() {
                    return Ok(HalfPlaneFn::constant(one).with_label("exp:a=0"));
                }
                let e = move |z: C<T>| (-z * a).exp();
                HalfPlaneFn::new(e, cr(T::zero()))
                    .with_deriv1(move |z| -e(z) * a)
                    .with_deriv2(move |z| e(z) * (a * a))
                    .with_boundary(move |s| c(T::zero(), -a * s).exp())
                    .with_oscillation(Oscillation::Frequency(a))
                    .with_decay(T::zero())
                    .with_label(format!("exp:a={a}"))
            }
            NamedFamily::Resolvent(a) => {
                if !(a.re > T::zero()) {
                    return bad(format!("r_a needs Re a > 0, got {a}"));
                }
                HalfPlaneFn::new(move |z| (z + a).inv(), cr(T::zero()))
                    .with_deriv1(move |z| -(z + a).powi(-2))
                    .with_deriv2(move |z| (z + a).powi(-3) * T::lit(2.0))
                    .with_boundary(move |s| (c(T::zero(), s) + a).inv())
                    .with_singularities(vec![-a])
                    .with_decay(T::lit(2.0))
                    .with_label(format!("resolvent:a={a}"))
            }
            NamedFamily::ResolventSquare(a) => {
                if !(a.re > T::zero()) {
                    return bad(format!("r_a^2 needs Re a > 0, got {a}"));
                }
                HalfPlaneFn::new(move |z| (z + a).powi(-2), cr(T::zero()))
                    .with_deriv1(move |z| -(z + a).powi(-3) * T::lit(2.0))
                    .with_deriv2(move |z| (z + a).powi(-4) * T::lit(6.0))
                    .with_boundary(move |s| (c(T::zero(), s) + a).powi(-2))
                    .with_singularities(vec![-a])
                    .with_decay(T::lit(3.0))
                    .with_label(format!("resolvent2:a={a}"))
            }
            NamedFamily::Constant(v) => HalfPlaneFn::constant(v).with_label(format!("const:c={v}")),
        })
    }
}

/// Exact B-norm of the Cayley power `f_n`.
///
/// `3 + n (n−1)^{(n−1)/2}/(n+1)^{(n+1)/2} · log(b_n/a_n) − ((1−a_n)/(1+a_n))ⁿ − ((b_n−1)/(b_n+1))ⁿ`
/// with `b_n = n + √(n²−1)`, `a_n = 1/b_n`.
pub fn cayley_besov_exact(n: u32) -> f64 {
    if n <= 1 {
        return 3.0;
    }
    let nf = n as f64;
    let b = nf + (nf * nf - 1.0).sqrt();
    let a = 1.0 / b;
    let coef = nf * ((nf - 1.0).ln() * (nf - 1.0) / 2.0 - (nf + 1.0).ln() * (nf + 1.0) / 2.0).exp();
    3.0 + coef * (b / a).ln() - ((1.0 - a) / (1.0 + a)).powi(n as i32) - ((b - 1.0) / (b + 1.0)).powi(n as i32)
}

/// Lower and upper bounds `1 + e^{−1} log n` and `3 + 2 log(2n)` for the Cayley B-norm.
pub fn cayley_besov_bounds(n: u32) -> (f64, f64) {
    let nf = n.max(1) as f64;
    (1.0 + (-1.0f64).exp() * nf.ln(), 3.0 + 2.0 * (2.0 * nf).ln())
}

/// Exact B-norm of `g_t = e^{−t/(z+1)}`.
pub fn exprecip_besov_exact(t: f64) -> f64 {
    let e1 = (-1.0f64).exp();
    if t <= 1.0 {
        2.0 - (-t).exp()
    } else {
        2.0 - e1 + e1 * t.ln()
    }
}

/// Bounds `e^{−1} log(1+t/4) ≤ ‖φ_t‖_B ≤ 3 + 2e^{−1/2} log(t + √(t²+1))`.
pub fn regexp_besov_bounds(t: f64) -> (f64, f64) {
    ((-1.0f64).exp() * (1.0 + t / 4.0).ln(), 3.0 + 2.0 * (-0.5f64).exp() * (t + (t * t + 1.0).sqrt()).ln())
}

/// Numerical B-norm of `φ_t`.
pub fn regexp_besov_numeric<T: Real>(t: T, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    besov_norm(&NamedFamily::RegularizedExp(t).build()?, cfg)
}

/// HP norm of a named family member.
///
/// Closed forms where the representing measure is elementary:
/// `δ_a` for `e_a`, `e^{−at}dt` for `r_a`, `t e^{−at}dt` for `r_a²`.
pub fn family_hp_norm<T: Real>(k: &NamedFamily<T>, cfg: &QuadConfig<T>) -> Result<NormReport<T>> {
    match *k {
        NamedFamily::Cayley(n) => cayley_hp(n, cfg),
        NamedFamily::ExpReciprocal(t) => exprecip_hp(t, cfg),
        NamedFamily::RegularizedExp(t) => regexp_hp(t, cfg),
        NamedFamily::Exponential(a) if a >= T::zero() => Ok(NormReport::exact(T::one())),
        NamedFamily::Resolvent(a) if a.re > T::zero() => Ok(NormReport::exact(a.re.recip())),
        NamedFamily::ResolventSquare(a) if a.re > T::zero() => Ok(NormReport::exact((a.re * a.re).recip())),
        NamedFamily::Constant(v) => Ok(NormReport::exact(v.norm())),
        _ => Err(BesovError::InvalidParameter(format!("{} parameters out of range", k.kind()))),
    }
}

/// One instance of each of the seven family kinds, for suites.
pub fn family_set<T: Real>() -> Vec<HalfPlaneFn<T>> {
    [
        NamedFamily::Cayley(3),
        NamedFamily::ExpReciprocal(T::lit(2.0)),
        NamedFamily::RegularizedExp(T::one()),
        NamedFamily::Exponential(T::one()),
        NamedFamily::Resolvent(c(T::one(), T::lit(0.5))),
        NamedFamily::ResolventSquare(cr(T::lit(1.5))),
        NamedFamily::Constant(c(T::lit(0.7), T::lit(-0.2))),
    ]
    .iter()
    .map(|k| k.build().expect("valid parameters"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::cauchy_derivative;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cayley_exact_values() {
        assert_eq!(cayley_besov_exact(1), 3.0);
        assert!((cayley_besov_exact(2) - 3.347).abs() < 1e-3);
        for n in 1..=64 {
            let v = cayley_besov_exact(n);
            let (lo, hi) = cayley_besov_bounds(n);
            assert!(lo <= v && v <= hi, "n = {n}: {lo} <= {v} <= {hi}");
        }
    }

    #[test]
    fn exprecip_exact_values() {
        let e1 = (-1.0f64).exp();
        assert!((exprecip_besov_exact(1.0) - (2.0 - e1)).abs() < 1e-15);
        assert!((exprecip_besov_exact(std::f64::consts::E) - 2.0).abs() < 1e-15);
        assert!((exprecip_besov_exact(0.5) - (2.0 - (-0.5f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn regexp_bound_values() {
        let (lo, hi) = regexp_besov_bounds(1.0);
        assert!((lo - (-1.0f64).exp() * 1.25f64.ln()).abs() < 1e-15);
        assert!((hi - (3.0 + 2.0 * (-0.5f64).exp() * (1.0 + 2f64.sqrt()).ln())).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(NamedFamily::<f64>::Cayley(0).build().is_err());
        assert!(NamedFamily::<f64>::Exponential(-1.0).build().is_err());
        assert!(NamedFamily::<f64>::Resolvent(c(0.0, 1.0)).build().is_err());
        assert!(NamedFamily::<f64>::ExpReciprocal(0.0).build().is_err());
    }

    #[test]
    fn exact_derivatives_match_cauchy() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in family_set::<f64>() {
            let bare = {
                let g = f.clone();
                HalfPlaneFn::new(move |z| g.eval(z), f.at_infinity())
            };
            for _ in 0..10 {
                let z = c(rng.gen_range(0.2..4.0), rng.gen_range(-4.0..4.0));
                for (order, exact) in [(1, f.d1(z)), (2, f.d2(z))] {
                    let num = cauchy_derivative(&bare, z, order, 1e-12).unwrap();
                    assert!((num - exact).norm() <= 1e-6 * exact.norm().max(1e-3), "{} order {order} at {z}: {num} vs {exact}", f.label());
                }
            }
        }
    }

    #[test]
    fn boundary_matches_interior_limit() {
        for f in family_set::<f64>() {
            for s in [-3.0, -0.4, 0.7, 5.0] {
                let b = f.boundary_value(s);
                let near = f.eval(c(1e-9, s));
                assert!((b - near).norm() < 1e-6, "{} at {s}", f.label());
            }
        }
    }

    #[test]
    fn named_hp_norms() {
        let c0 = QuadConfig::<f64>::default();
        let r: f64 = family_hp_norm(&NamedFamily::Resolvent(c(2.0, 1.0)), &c0).unwrap().value;
        let m = crate::measures::Measure::exp_density(cr(1.0), 2.0).unwrap().hp_norm(&c0).unwrap().value;
        assert!((r - 0.5).abs() < 1e-15 && (m - r).abs() < 1e-7);
        assert_eq!(family_hp_norm(&NamedFamily::Exponential(3.0), &c0).unwrap().value, 1.0);
        assert_eq!(family_hp_norm(&NamedFamily::ResolventSquare(cr(0.5)), &c0).unwrap().value, 4.0);
        assert!((family_hp_norm(&NamedFamily::Cayley(1), &c0).unwrap().value - 3.0).abs() < 1e-6);
        assert!(family_hp_norm(&NamedFamily::Resolvent(cr(-1.0)), &c0).is_err());
    }
}
