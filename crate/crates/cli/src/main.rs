mod config;
mod output;
mod verify;

use anyhow::{bail, Context, Result};
use besov_core::dynamics::{evolve, semigroup_inversion};
use besov_core::families::{family_hp_norm, gap_table, GapFamily};
use besov_core::func::{besov_norm, e_seminorm, h1_norm, w_norm, HalfPlaneFn, WFn};
use besov_core::operator::MatrixOp;
use besov_core::scalar::cr;
use besov_core::spec::{parse_family, parse_function, parse_matrix};
use besov_core::{BesovError, NormReport};
use clap::{Parser, Subcommand, ValueEnum};
use config::RunConfig;
use output::{emit, Cell, Table};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "besov", version, about = "Besov-algebra norms, functional calculus and semigroup diagnostics")]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write an SVG line plot of the main series.
    #[arg(long, global = true)]
    plot: Option<PathBuf>,
    /// Log-scaled plot axes.
    #[arg(long, global = true)]
    log_axes: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum NormKind {
    Besov,
    Hp,
    E,
    W,
    H1,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Cayley,
    Exprecip,
    Regexp,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// One norm of a function.
    Norm {
        kind: NormKind,
        #[arg(long)]
        function: String,
    },
    /// B-norm versus HP-norm table of a family.
    Table {
        kind: TableKind,
        #[arg(long)]
        nmax: Option<u32>,
        /// Parameter grid: `a,b,c`, `log:lo:hi:n` or `lin:lo:hi:n`.
        #[arg(long)]
        tgrid: Option<String>,
    },
    /// Runs a named invariant suite; exit code 1 if any check fails.
    Verify {
        area: String,
        #[arg(long)]
        suite: String,
    },
    /// Functional calculus.
    Calc {
        #[command(subcommand)]
        op: CalcOp,
    },
    /// `‖f(tA)‖` over a t grid.
    Evolve {
        #[arg(long)]
        function: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        tgrid: String,
    },
    /// Inversion formulas for `e^{−tA}`.
    Invert {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long = "Ngrid", alias = "ngrid")]
        ngrid: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum CalcOp {
    /// `f(A)` entrywise.
    Apply {
        #[arg(long)]
        function: String,
        #[arg(long)]
        matrix: String,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Config(anyhow::Error),
    Run(anyhow::Error),
}

fn classify(e: anyhow::Error) -> Failure {
    match e.downcast_ref::<BesovError>() {
        Some(BesovError::Parse(_) | BesovError::InvalidParameter(_)) => Failure::Config(e),
        Some(_) => Failure::Run(e),
        // grid, file and JSON problems
        None => Failure::Config(e),
    }
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let g = match parts.as_slice() {
        [kind @ ("log" | "lin"), lo, hi, n] => {
            let (lo, hi): (f64, f64) = (lo.parse()?, hi.parse()?);
            let n: usize = n.parse()?;
            if n < 2 || !(lo < hi) || (*kind == "log" && lo <= 0.0) {
                bail!("bad grid '{s}'");
            }
            (0..n)
                .map(|k| {
                    let u = k as f64 / (n - 1) as f64;
                    if *kind == "log" {
                        (lo.ln() + u * (hi.ln() - lo.ln())).exp()
                    } else {
                        lo + u * (hi - lo)
                    }
                })
                .collect()
        }
        [list] => list.split(',').map(|v| v.trim().parse::<f64>().with_context(|| format!("bad grid value '{v}'"))).collect::<Result<Vec<_>>>()?,
        _ => bail!("bad grid '{s}'"),
    };
    if g.is_empty() || g.iter().any(|v| !v.is_finite()) {
        bail!("bad grid '{s}'");
    }
    Ok(g)
}

fn norm_row(t: &mut Table, kind: &str, f: &str, r: NormReport) {
    t.push(vec![kind.into(), f.into(), r.value.into(), r.tail_bound.into(), r.converged.into(), r.evaluations.into()]);
}

fn w_of(f: &HalfPlaneFn<f64>) -> WFn<f64> {
    let g = f.clone();
    WFn::new(move |z| g.eval(z)).with_centers(f.line_centers(0.0)).with_oscillation(f.oscillation())
}

fn run(cli: &Cli) -> Result<(Table, bool)> {
    let rc = RunConfig::load(cli.config.as_deref())?;
    let cfg = rc.quad()?;
    let op_of = |s: &str| -> Result<MatrixOp<f64>> { Ok(MatrixOp::new(parse_matrix(s)?)?) };
    let table = match &cli.cmd {
        Cmd::Norm { kind, function } => {
            let f = parse_function::<f64>(function)?;
            let mut t = Table::new(&["norm", "function", "value", "tail_bound", "converged", "evaluations"]);
            let (name, r) = match kind {
                NormKind::Besov => ("besov", besov_norm(&f, &cfg)?),
                NormKind::Hp => {
                    let fam = parse_family::<f64>(function).map_err(|_| BesovError::InvalidParameter("the HP norm is available for named family members only".into()))?;
                    ("hp", family_hp_norm(&fam, &cfg)?)
                }
                NormKind::E => ("e", e_seminorm(&f, &cfg)?),
                NormKind::W => ("w", w_norm(&w_of(&f), &cfg)?),
                NormKind::H1 => ("h1", h1_norm(&f, &cfg)?),
            };
            norm_row(&mut t, name, function, r);
            t
        }
        Cmd::Table { kind, nmax, tgrid } => {
            let (fam, params) = match kind {
                TableKind::Cayley => {
                    let n = nmax.context("table cayley needs --nmax")?;
                    if n == 0 {
                        bail!(BesovError::InvalidParameter("--nmax must be at least 1".into()));
                    }
                    (GapFamily::Cayley, (1..=n).map(f64::from).collect())
                }
                TableKind::Exprecip => (GapFamily::ExpReciprocal, parse_grid(tgrid.as_deref().context("table exprecip needs --tgrid")?)?),
                TableKind::Regexp => (GapFamily::RegularizedExp, parse_grid(tgrid.as_deref().context("table regexp needs --tgrid")?)?),
            };
            let mut t = Table::new(&["param", "besov_exact_or_bounds", "besov_numeric", "hp_numeric", "ratio"]).with_plot(0, 3);
            for r in gap_table(fam, &params, &cfg)? {
                let exact = if r.besov_lower == r.besov_upper { Cell::Num(r.besov_lower) } else { Cell::Text(format!("[{};{}]", output::fmt_num(r.besov_lower), output::fmt_num(r.besov_upper))) };
                t.push(vec![r.param.into(), exact, r.besov_numeric.into(), r.hp_numeric.into(), r.ratio.into()]);
            }
            t
        }
        Cmd::Verify { area, suite } => {
            let (t, ok) = verify::run(area, suite, &cfg, rc.seed()).map_err(|e| match e.downcast::<BesovError>() {
                Ok(b) => anyhow::Error::new(b),
                Err(e) => anyhow::Error::new(BesovError::InvalidParameter(e.to_string())),
            })?;
            return Ok((t, ok));
        }
        Cmd::Calc { op: CalcOp::Apply { function, matrix } } => {
            let f = parse_function::<f64>(function)?;
            let op = op_of(matrix)?;
            let r = op.apply_calculus(&f, &cfg)?;
            let mut t = Table::new(&["row", "col", "re", "im", "error_estimate", "converged"]);
            for i in 0..op.dim() {
                for j in 0..op.dim() {
                    let v = r.matrix[(i, j)];
                    t.push(vec![i.into(), j.into(), v.re.into(), v.im.into(), r.error_estimate.into(), r.converged.into()]);
                }
            }
            t
        }
        Cmd::Evolve { function, matrix, tgrid } => {
            let f = parse_function::<f64>(function)?;
            let op = op_of(matrix)?;
            let mut t = Table::new(&["t", "norm", "error_estimate", "converged"]).with_plot(0, 1);
            for s in parse_grid(tgrid)? {
                if s < 0.0 {
                    bail!(BesovError::InvalidParameter("t must be non-negative".into()));
                }
                let r = evolve(&f, &op, cr(s), &cfg)?;
                t.push(vec![s.into(), r.matrix.norm2().into(), r.error_estimate.into(), r.converged.into()]);
            }
            t
        }
        Cmd::Invert { matrix, t, sigma, ngrid } => {
            let op = op_of(matrix)?;
            let ns = match ngrid {
                Some(g) => parse_grid(g)?,
                None => Vec::new(),
            };
            if ns.iter().any(|n| !(*n > 0.0)) {
                bail!(BesovError::InvalidParameter("N must be positive".into()));
            }
            let r = semigroup_inversion(&op, *t, *sigma, &ns, &cfg)?;
            let mut tab = Table::new(&["method", "N", "error"]).with_plot(1, 2);
            tab.push(vec!["squared_resolvent".into(), f64::INFINITY.into(), r.error_squared.into()]);
            tab.push(vec!["classical_limit".into(), f64::INFINITY.into(), r.error_classical.into()]);
            for tr in &r.truncations {
                tab.push(vec!["classical_raw".into(), tr.n.into(), tr.raw_error.into()]);
            }
            for tr in &r.truncations {
                tab.push(vec!["classical_cesaro".into(), tr.n.into(), tr.cesaro_error.into()]);
            }
            tab
        }
    };
    Ok((table, true))
}

fn write_outputs(cli: &Cli, t: &Table) -> Result<()> {
    let text = match cli.format {
        Format::Csv => t.to_csv()?,
        Format::Json => t.to_json()?,
    };
    emit(&text, cli.out.as_deref())?;
    if let Some(p) = &cli.plot {
        std::fs::write(p, t.to_svg(cli.log_axes)?).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("BESOV_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = run(&cli).and_then(|(t, ok)| write_outputs(&cli, &t).map(|_| ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => match classify(e) {
            Failure::Config(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
            Failure::Run(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("1,2.5,10").unwrap(), vec![1.0, 2.5, 10.0]);
        let g = parse_grid("log:1:100:3").unwrap();
        assert!((g[1] - 10.0).abs() < 1e-12 && (g[2] - 100.0).abs() < 1e-12);
        assert_eq!(parse_grid("lin:0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        for bad in ["", "log:0:1:3", "lin:1:0:3", "lin:0:1:1", "a,b", "x:1:2"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }
}
