//! Named invariant suites for `besov verify`.

use crate::output::Table;
use anyhow::{bail, Result};
use besov_core::approx::{k_error_check, k_triangle, v_strip_error};
use besov_core::dynamics::{cauchy_riemann_residual, long_time_decay, semigroup_inversion, short_time_derivative};
use besov_core::families::{family_set, NamedFamily};
use besov_core::func::{besov_seminorm, boundary_pairing, green_pairing, reproduce, sup_norm, w_norm_derivative, HalfPlaneFn, Variant, WFn};
use besov_core::operator::{jordan, random_stable, MatrixOp};
use besov_core::scalar::{c, cr};
use besov_core::{Matrix, QuadratureConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

type F = HalfPlaneFn<f64>;

pub const AREAS: &[(&str, &[&str])] = &[
    ("reproduce", &["first", "re", "im", "second", "all"]),
    ("pairing", &["grid", "values"]),
    ("approx", &["k-error", "log-bound", "q-bound", "strip", "all"]),
    ("calculus", &["oracle", "homomorphism", "resolvent", "bound", "spectral"]),
    ("semigroup", &["inversion", "derivative", "decay", "holomorphy"]),
];

struct Suite {
    table: Table,
    all_pass: bool,
}

impl Suite {
    fn new() -> Self {
        Self { table: Table::new(&["suite", "case", "value", "tolerance", "pass"]), all_pass: true }
    }

    /// Records `value <= tol`.
    fn le(&mut self, suite: &str, case: String, value: f64, tol: f64) {
        let pass = value <= tol;
        self.all_pass &= pass;
        self.table.push(vec![suite.into(), case.into(), value.into(), tol.into(), pass.into()]);
    }
}

fn fam(k: NamedFamily<f64>) -> F {
    k.build().expect("valid family parameters")
}

fn diag(d: &[f64]) -> MatrixOp<f64> {
    MatrixOp::new(Matrix::diag(&d.iter().map(|&v| cr(v)).collect::<Vec<_>>())).expect("valid matrix")
}

/// Runs `area`/`suite`; returns the result table and whether every row passed.
pub fn run(area: &str, suite: &str, cfg: &QuadratureConfig, seed: u64) -> Result<(Table, bool)> {
    let Some((_, names)) = AREAS.iter().find(|(a, _)| *a == area) else {
        bail!("unknown verification area '{area}'");
    };
    if !names.contains(&suite) {
        bail!("unknown suite '{suite}' for {area} (choose from {})", names.join(", "));
    }
    let mut s = Suite::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match area {
        "reproduce" => {
            let variants: Vec<Variant> = if suite == "all" { vec![Variant::First, Variant::Re, Variant::Im, Variant::Second] } else { vec![suite.parse()?] };
            for f in family_set::<f64>() {
                for _ in 0..3 {
                    let z = c(rng.gen_range(0.05..5.0), rng.gen_range(-5.0..5.0));
                    for &v in &variants {
                        let got = reproduce(&f, z, v, cfg)?.value;
                        let want = f.eval(z);
                        s.le(suite, format!("{} {v:?} z={z}", f.label()), (got - want).norm(), 1e-4 * (1.0 + want.norm()));
                    }
                }
            }
        }
        "pairing" if suite == "grid" => {
            for a in [cr(1.0), c(2.0, 1.0)] {
                let g = fam(NamedFamily::ResolventSquare(a));
                for f in [fam(NamedFamily::Resolvent(cr(1.0))), fam(NamedFamily::Exponential(1.0)), fam(NamedFamily::ExpReciprocal(2.0))] {
                    let x = green_pairing(&g, &f, cfg)?.value;
                    let y = boundary_pairing(&g, &f, cfg)?.value;
                    s.le(suite, format!("<{}, {}>", g.label(), f.label()), (x - y).norm(), 1e-4);
                }
            }
        }
        "pairing" => {
            let r1 = fam(NamedFamily::Resolvent(cr(1.0)));
            let r1sq = fam(NamedFamily::ResolventSquare(cr(1.0)));
            s.le(suite, "green <r_1, r_1> - pi/4".into(), (green_pairing(&r1, &r1, cfg)?.value - PI / 4.0).norm(), 1e-4);
            s.le(suite, "green <r_1^2, r_1> - pi/8".into(), (green_pairing(&r1sq, &r1, cfg)?.value - PI / 8.0).norm(), 1e-4);
            s.le(suite, "boundary <r_1^2, r_1> - pi/8".into(), (boundary_pairing(&r1sq, &r1, cfg)?.value - PI / 8.0).norm(), 1e-4);
        }
        "approx" => {
            let fs = [fam(NamedFamily::Resolvent(cr(1.0))), fam(NamedFamily::Exponential(1.0)), fam(NamedFamily::ExpReciprocal(1.0))];
            let all = suite == "all";
            if all || suite == "k-error" {
                for (f, m) in fs.iter().zip([4.0, 8.0, 16.0]) {
                    let k = k_error_check(f, m, cfg)?;
                    s.le("k-error", format!("{} m={m}", f.label()), k.lhs - k.rhs, 1e-6);
                }
            }
            if all || suite == "log-bound" {
                for f in &fs {
                    let sup = sup_norm(f, cfg)?.value;
                    for m in [4.0, 16.0] {
                        let v = besov_seminorm(&k_triangle(f, m)?, cfg)?.value;
                        s.le("log-bound", format!("{} m={m}", f.label()), v - 8.0 / PI * sup * f64::ln(m), 1e-6);
                    }
                }
            }
            if all || suite == "q-bound" {
                for f in &fs {
                    let v = besov_seminorm(f, cfg)?.value - 8.0 / PI * w_norm_derivative(f, cfg)?.value;
                    s.le("q-bound", f.label().to_string(), v, 1e-6);
                }
            }
            if all || suite == "strip" {
                let g = WFn::derivative_of(&fs[0]);
                for (z, n) in [(cr(1.0), 8.0), (c(0.5, 1.0), 4.0)] {
                    let v = v_strip_error(&g, z, n, cfg)?;
                    s.le("strip", format!("r_1' z={z} n={n}"), v.lhs - v.rhs, 1e-6);
                }
            }
        }
        "calculus" => {
            let fs = family_set::<f64>();
            let ops: Vec<MatrixOp<f64>> = (0..3).map(|k| MatrixOp::new(random_stable(seed.wrapping_add(k), 2 + k as usize))).collect::<Result<_, _>>()?;
            match suite {
                "oracle" => {
                    for (k, op) in ops.iter().enumerate() {
                        for f in &fs {
                            let want = op.oracle_apply(f)?;
                            let got = op.apply_calculus(f, cfg)?.matrix;
                            s.le(suite, format!("matrix {k}, {}", f.label()), (&got - &want).norm2(), 1e-4 * (1.0 + want.norm2()));
                        }
                    }
                }
                "homomorphism" => {
                    let j = MatrixOp::new(jordan(2, cr(1.0)))?;
                    for op in [&ops[0], &j] {
                        for (i, k) in [(0, 3), (1, 4), (4, 4)] {
                            s.le(suite, format!("{} * {}", fs[i].label(), fs[k].label()), op.homomorphism_check(&fs[i], &fs[k], cfg)?, 1e-4);
                        }
                    }
                }
                "resolvent" => {
                    let tight = cfg.tightened(0.01);
                    for _ in 0..4 {
                        let z = c(rng.gen_range(0.1..4.0), rng.gen_range(-4.0..4.0));
                        let got = ops[1].apply_calculus(&fam(NamedFamily::Resolvent(z)), &tight)?.matrix;
                        s.le(suite, format!("z={z}"), (&got - &ops[1].resolvent(z)?).norm2(), 1e-6);
                    }
                }
                "bound" => {
                    for op in &ops {
                        for f in &fs {
                            let b = op.bound_check(f, cfg)?;
                            s.le(suite, f.label().to_string(), b.lhs - b.rhs, 0.0);
                        }
                    }
                }
                _ => {
                    for op in &ops {
                        for f in &fs {
                            let r = op.spectral_check(f, cfg)?;
                            s.le(suite, f.label().to_string(), r.distance, r.tolerance.max(1e-8));
                        }
                    }
                }
            }
        }
        _ => match suite {
            "inversion" => {
                for (op, t, sigma) in [(diag(&[1.0]), 1.0, 0.5), (MatrixOp::new(jordan(2, cr(1.0)))?, 2.0, 1.0)] {
                    let r = semigroup_inversion(&op, t, sigma, &[], cfg)?;
                    s.le(suite, format!("squared resolvent, t={t} sigma={sigma}"), r.error_squared, 1e-5);
                    s.le(suite, format!("classical, t={t} sigma={sigma}"), r.error_classical, 1e-5);
                }
            }
            "derivative" => {
                let op = diag(&[1.0, 2.0]);
                for f in [fam(NamedFamily::Exponential(1.0)), fam(NamedFamily::Resolvent(cr(1.0)))] {
                    let r = short_time_derivative(&f, &op, &[cr(1.0), cr(1.0)], cfg)?;
                    s.le(suite, f.label().to_string(), r.rel_error, 1e-4);
                }
            }
            "decay" => {
                let r1 = fam(NamedFamily::Resolvent(cr(1.0)));
                let grid: Vec<f64> = (0..=10).map(|k| 10f64.powi(k)).collect();
                for op in [diag(&[1.0, 2.0]), diag(&[0.0, 1.0]), MatrixOp::new(jordan(2, cr(1.0)))?] {
                    let d = long_time_decay(&r1, &op, &grid, cfg)?;
                    let stable = op.min_real_part() > 0.0;
                    let ok = d.decays == stable && d.plateau == !stable;
                    s.le(suite, format!("min Re = {}", op.min_real_part()), if ok { 0.0 } else { 1.0 }, 0.0);
                }
            }
            _ => {
                let e1 = fam(NamedFamily::Exponential(1.0));
                let op = diag(&[1.0, 2.0]);
                for z in [c(1.0, 0.0), c(1.0, 0.5), c(2.0, -1.0)] {
                    s.le(suite, format!("z={z}"), cauchy_riemann_residual(&e1, &op, z, 0.1, cfg)?, 1e-5);
                }
            }
        },
    }
    Ok((s.table, s.all_pass))
}
