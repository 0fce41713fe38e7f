use super::{cayley_besov_exact, cayley_hp, exprecip_besov_exact, exprecip_hp, regexp_besov_bounds, regexp_hp, NamedFamily};
use crate::config::QuadConfig;
use crate::error::{BesovError, Result};
use crate::func::besov_norm;
use crate::scalar::Real;
use serde::Serialize;

/// Families with closed-form or bounded B-norms and computable HP norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapFamily {
    Cayley,
    ExpReciprocal,
    RegularizedExp,
}

impl std::str::FromStr for GapFamily {
    type Err = BesovError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cayley" => Ok(GapFamily::Cayley),
            "exprecip" => Ok(GapFamily::ExpReciprocal),
            "regexp" => Ok(GapFamily::RegularizedExp),
            _ => Err(BesovError::Parse(format!("unknown gap family {s}"))),
        }
    }
}

/// One row of a B-norm versus HP-norm comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRow {
    pub param: f64,
    /// Exact B-norm, or the lower bound when only bounds are known.
    pub besov_lower: f64,
    /// Exact B-norm, or the upper bound.
    pub besov_upper: f64,
    pub besov_numeric: f64,
    pub hp_numeric: f64,
    /// `hp_numeric / besov_numeric`
    pub ratio: f64,
}

/// Rows `(param, B-norm exact or bounds, B-norm numeric, HP norm, ratio)`.
pub fn gap_table<T: Real>(family: GapFamily, params: &[f64], cfg: &QuadConfig<T>) -> Result<Vec<GapRow>> {
    use rayon::prelude::*;
    params
        .par_iter()
        .map(|&p| {
            let (lo, hi, kind, hp) = match family {
                GapFamily::Cayley => {
                    if p < 1.0 || p.fract() != 0.0 {
                        return Err(BesovError::InvalidParameter(format!("Cayley index {p}")));
                    }
                    let n = p as u32;
                    let e = cayley_besov_exact(n);
                    (e, e, NamedFamily::Cayley(n), cayley_hp(n, cfg)?)
                }
                GapFamily::ExpReciprocal => {
                    let e = exprecip_besov_exact(p);
                    (e, e, NamedFamily::ExpReciprocal(T::lit(p)), exprecip_hp(T::lit(p), cfg)?)
                }
                GapFamily::RegularizedExp => {
                    let (lo, hi) = regexp_besov_bounds(p);
                    (lo, hi, NamedFamily::RegularizedExp(T::lit(p)), regexp_hp(T::lit(p), cfg)?)
                }
            };
            let b = besov_norm(&kind.build()?, cfg)?.value.to_f64_lossy();
            let h = hp.value.to_f64_lossy();
            Ok(GapRow { param: p, besov_lower: lo, besov_upper: hi, besov_numeric: b, hp_numeric: h, ratio: h / b })
        })
        .collect()
}
