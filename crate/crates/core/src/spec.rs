//! String specs for functions and matrices.
//!
//! Functions:
//!
//! ```text
//! cayley:n=4          ((z−1)/(z+1))⁴
//! exprecip:t=1        e^{−1/(z+1)}
//! regexp:t=2          z/(z+1) e^{−2/z}
//! exp:a=1             e^{−z}
//! resolvent:a=1+2i    1/(z+1+2i)
//! resolvent2:a=1      1/(z+1)²
//! const:c=0.5
//! sum(exp:a=1; resolvent:a=2)
//! product(exp:a=1; cayley:n=2)
//! shift:0.5(exp:a=1)  e^{−(z+0.5)}
//! rescale:2(exprecip:t=1)
//! scale:-1(exp:a=1)
//! deriv(resolvent:a=1)
//! ```
//!
//! Matrices: `diag:1,2`, `jordan:n=2,lambda=1`, `random_stable:seed=3,dim=4`,
//! or a JSON file (see [`parse_matrix_json`]).

use crate::error::{BesovError, Result};
use crate::families::NamedFamily;
use crate::func::HalfPlaneFn;
use crate::linalg::CMat;
use crate::operator::{jordan, parse_matrix_json, random_stable};
use crate::scalar::{c, C, Real};

fn perr<X>(m: impl Into<String>) -> Result<X> {
    Err(BesovError::Parse(m.into()))
}

/// Parses `1`, `-0.5`, `2i`, `1+2i`, `1-0.5i`, `i`.
pub fn parse_complex(s: &str) -> Result<C<f64>> {
    let s: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
    if s.is_empty() {
        return perr("empty number");
    }
    let num = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| BesovError::Parse(format!("bad number '{t}'"))),
        }
    };
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not an exponent sign or the leading sign
        let bytes = body.as_bytes();
        let mut cut = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                cut = Some(k);
                break;
            }
        }
        return match cut {
            Some(k) => Ok(c(num(&body[..k])?, num(&body[k..])?)),
            None => Ok(c(0.0, num(body)?)),
        };
    }
    Ok(c(num(&s)?, 0.0))
}

fn params(s: &str) -> Result<Vec<(String, String)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| match p.split_once('=') {
            Some((k, v)) => Ok((k.trim().to_string(), v.trim().to_string())),
            None => perr(format!("expected key=value, got '{p}'")),
        })
        .collect()
}

fn param<'a>(ps: &'a [(String, String)], key: &str, kind: &str) -> Result<&'a str> {
    for (k, _) in ps {
        if k != key {
            return perr(format!("unknown parameter '{k}' for {kind}"));
        }
    }
    match ps.iter().find(|(k, _)| k == key) {
        Some((_, v)) => Ok(v),
        None => perr(format!("{kind} needs {key}=...")),
    }
}

fn real(s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|_| BesovError::Parse(format!("bad number '{s}'")))
}

fn lift<T: Real>(z: C<f64>) -> C<T> {
    c(T::lit(z.re), T::lit(z.im))
}

/// Parses a named family atom such as `cayley:n=4`.
pub fn parse_family<T: Real>(s: &str) -> Result<NamedFamily<T>> {
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    let kind = kind.trim();
    let ps = params(rest)?;
    Ok(match kind {
        "cayley" => {
            let n = param(&ps, "n", kind)?;
            NamedFamily::Cayley(n.parse().map_err(|_| BesovError::Parse(format!("bad index '{n}'")))?)
        }
        "exprecip" => NamedFamily::ExpReciprocal(T::lit(real(param(&ps, "t", kind)?)?)),
        "regexp" => NamedFamily::RegularizedExp(T::lit(real(param(&ps, "t", kind)?)?)),
        "exp" => NamedFamily::Exponential(T::lit(real(param(&ps, "a", kind)?)?)),
        "resolvent" => NamedFamily::Resolvent(lift(parse_complex(param(&ps, "a", kind)?)?)),
        "resolvent2" => NamedFamily::ResolventSquare(lift(parse_complex(param(&ps, "a", kind)?)?)),
        "const" => NamedFamily::Constant(lift(parse_complex(param(&ps, "c", kind)?)?)),
        _ => return perr(format!("unknown family '{kind}'")),
    })
}

/// Splits `a; b; c` at top-level semicolons.
fn split_args(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return perr("unbalanced parentheses");
        }
    }
    if depth != 0 {
        return perr("unbalanced parentheses");
    }
    out.push(s[start..].trim());
    Ok(out)
}

/// Parses a function spec (see the module docs).
pub fn parse_function<T: Real>(s: &str) -> Result<HalfPlaneFn<T>> {
    let s = s.trim();
    let Some(open) = s.find('(') else {
        let f = parse_family::<T>(s)?.build()?;
        return Ok(f.with_label(s));
    };
    if !s.ends_with(')') {
        return perr(format!("expected ')' at the end of '{s}'"));
    }
    let head = s[..open].trim();
    let args = split_args(&s[open + 1..s.len() - 1])?;
    let fs: Vec<HalfPlaneFn<T>> = args.iter().map(|a| parse_function::<T>(a)).collect::<Result<_>>()?;
    let one = |name: &str| -> Result<&HalfPlaneFn<T>> {
        match fs.as_slice() {
            [f] => Ok(f),
            _ => perr(format!("{name} takes one argument")),
        }
    };
    let (op, arg) = head.split_once(':').unwrap_or((head, ""));
    let f = match op {
        "sum" | "product" if fs.len() >= 2 => {
            let mut acc = fs[0].clone();
            for g in &fs[1..] {
                acc = if op == "sum" { acc.add(g) } else { acc.mul(g) };
            }
            acc
        }
        "sum" | "product" => return perr(format!("{op} needs at least two arguments")),
        "shift" => {
            let a = parse_complex(arg)?;
            if a.re < 0.0 {
                return perr("shift must have Re a >= 0");
            }
            one(op)?.shift(lift(a))
        }
        "rescale" => {
            let b = real(arg)?;
            if !(b > 0.0) {
                return perr("rescale factor must be positive");
            }
            one(op)?.rescale(T::lit(b))
        }
        "scale" => one(op)?.scale(lift(parse_complex(arg)?)),
        "deriv" => {
            let f = one(op)?;
            if !f.has_deriv1() {
                return Err(BesovError::MissingDerivative(1));
            }
            f.derivative()
        }
        _ => return perr(format!("unknown combinator '{head}'")),
    };
    Ok(f.with_label(s))
}

/// Parses a matrix spec: `diag:..`, `jordan:..`, `random_stable:..`, or a path to JSON.
pub fn parse_matrix<T: Real>(s: &str) -> Result<CMat<T>> {
    let s = s.trim();
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    match kind {
        "diag" => {
            let d: Vec<C<T>> = rest.split(',').map(|v| parse_complex(v).map(lift)).collect::<Result<_>>()?;
            Ok(CMat::diag(&d))
        }
        "jordan" => {
            let ps = params(rest)?;
            let mut n = None;
            let mut lambda = None;
            for (k, v) in &ps {
                match k.as_str() {
                    "n" => n = Some(v.parse::<usize>().map_err(|_| BesovError::Parse(format!("bad size '{v}'")))?),
                    "lambda" => lambda = Some(parse_complex(v)?),
                    _ => return perr(format!("unknown parameter '{k}' for jordan")),
                }
            }
            match (n, lambda) {
                (Some(n), Some(l)) if n >= 1 => Ok(jordan(n, lift(l))),
                _ => perr("jordan needs n>=1 and lambda"),
            }
        }
        "random_stable" => {
            let ps = params(rest)?;
            let mut seed = 0u64;
            let mut dim = None;
            for (k, v) in &ps {
                match k.as_str() {
                    "seed" => seed = v.parse().map_err(|_| BesovError::Parse(format!("bad seed '{v}'")))?,
                    "dim" => dim = Some(v.parse::<usize>().map_err(|_| BesovError::Parse(format!("bad dim '{v}'")))?),
                    _ => return perr(format!("unknown parameter '{k}' for random_stable")),
                }
            }
            match dim {
                Some(d) if d >= 1 => Ok(random_stable(seed, d)),
                _ => perr("random_stable needs dim>=1"),
            }
        }
        _ => {
            let text = std::fs::read_to_string(s).map_err(|e| BesovError::Parse(format!("cannot read matrix file '{s}': {e}")))?;
            parse_matrix_json(&text)
        }
    }
}
