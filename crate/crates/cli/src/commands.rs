use std::fmt;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use mubfunc_core::families::{self, GenParams, Variant};
use mubfunc_core::functions::{eval_fn, xi_convolved, Builtin, FnSpec};
use mubfunc_core::gauss::{gauss_closed, gauss_direct};
use mubfunc_core::verify::{run_suite, Suite, VerifyOptions};
use mubfunc_core::weyl;
use mubfunc_core::{euler_phi, jacobi_symbol, moebius, squarefree_decompose};
use serde_json::json;

use crate::output::{fmt_float, write_record, write_records, Format, OutputRecord};
use crate::{Cli, Command, FnOpts, Global, Report, Via};

/// Bad input detected by the front end itself.
#[derive(Debug)]
struct Invalid(String);

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

/// An argument above `--max-n` / `MUBFUNC_MAX_N` or a hard limit.
#[derive(Debug)]
struct OverBound(String);

impl fmt::Display for OverBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for OverBound {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Invalid(msg.into()).into()
}

pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(core) = cause.downcast_ref::<mubfunc_core::Error>() {
            return if core.is_bound_exceeded() { 3 } else { 2 };
        }
        if cause.is::<OverBound>() {
            return 3;
        }
    }
    2
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let g = &cli.global;
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Eval { name, args, fopts } => {
            let rec = eval(name, args, fopts, g)?;
            write_record(&mut out, &rec, g.format.unwrap_or(Format::Text))?;
        }
        Command::Table {
            name,
            from,
            to,
            fopts,
        } => {
            if from > to || *from == 0 {
                return Err(invalid(format!("need 1 <= from <= to, got {from}..{to}")));
            }
            check_bound(*to, g)?;
            let mut recs = Vec::with_capacity((to - from + 1) as usize);
            for n in *from..=*to {
                recs.push(eval_one(name, n, fopts)?);
            }
            write_records(&mut out, &recs, g.format.unwrap_or(Format::Csv), true)?;
        }
        Command::Verify { suite } => return verify(&mut out, suite, g),
        Command::Gauss {
            m,
            n,
            closed,
            direct,
            both: _,
        } => return gauss(&mut out, *m, *n, *closed, *direct, g),
        Command::Mub { n, report } => return mub(&mut out, *n, *report, g),
        Command::Squarefree { n, via } => squarefree(&mut out, *n, *via, g)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn check_bound(n: u64, g: &Global) -> Result<()> {
    match g.max_n {
        Some(max) if n > max => Err(OverBound(format!("n = {n} exceeds --max-n {max}")).into()),
        _ => Ok(()),
    }
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| invalid(format!("{what} must be a non-negative integer, got `{s}`")))
}

fn parse_i64(s: &str, what: &str) -> Result<i64> {
    s.parse()
        .map_err(|_| invalid(format!("{what} must be an integer, got `{s}`")))
}

fn eval(name: &str, args: &[String], fopts: &FnOpts, g: &Global) -> Result<OutputRecord> {
    match name {
        "jacobi" => {
            let [j, k] = args else {
                return Err(invalid("jacobi takes two arguments: j k"));
            };
            let (j, k) = (parse_i64(j, "j")?, parse_u64(k, "k")?);
            check_bound(k, g)?;
            Ok(OutputRecord::integer(k, jacobi_symbol(j, k)?.into()))
        }
        "gauss" => {
            let [m, n] = args else {
                return Err(invalid("gauss takes two arguments: m n"));
            };
            let (m, n) = (parse_i64(m, "m")?, parse_u64(n, "n")?);
            check_bound(n, g)?;
            Ok(OutputRecord::complex(n, &gauss_closed(m, n)?))
        }
        _ => {
            let [n] = args else {
                return Err(invalid(format!("{name} takes one argument: n")));
            };
            let n = parse_u64(n, "n")?;
            check_bound(n, g)?;
            eval_one(name, n, fopts)
        }
    }
}

fn eval_one(name: &str, n: u64, fopts: &FnOpts) -> Result<OutputRecord> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    Ok(match name {
        "phi" => OutputRecord::integer(n, euler_phi(n)? as i64),
        "mu" => OutputRecord::integer(n, moebius(n)?.into()),
        "xi" => OutputRecord::complex(n, &xi_convolved(&inner_fn(fopts)?, n)?),
        "h" => OutputRecord::radical(n, &families::h_simplified(n)?),
        "h1" | "h2" => {
            let variant = if name == "h1" {
                Variant::H1
            } else {
                Variant::H2
            };
            let params = load_params(fopts, variant)?;
            OutputRecord::complex(n, &families::h_general(&params, &inner_fn(fopts)?, n)?)
        }
        "hsharp" => OutputRecord::radical(n, &families::h_sharp_closed(n)?),
        "fsharp" => OutputRecord::complex(n, &eval_fn(&families::f_sharp_spec(), n)?),
        "s" => OutputRecord::complex(n, &families::gauss_row_sum_exact(n)?),
        "jacobi" | "gauss" => return Err(invalid(format!("{name} takes two arguments"))),
        other => return Err(invalid(format!("unknown function `{other}`"))),
    })
}

fn inner_fn(fopts: &FnOpts) -> Result<FnSpec> {
    let Some(spec) = fopts.f.as_deref() else {
        return Ok(FnSpec::builtin(Builtin::Sqrt));
    };
    if let Some(b) = Builtin::from_name(spec) {
        return Ok(FnSpec::builtin(b));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| {
        invalid(format!(
            "--f `{spec}` is neither a builtin nor a readable file: {e}"
        ))
    })?;
    Ok(FnSpec::from_json(&text)?)
}

fn load_params(fopts: &FnOpts, variant: Variant) -> Result<GenParams> {
    let path = fopts
        .params
        .as_ref()
        .ok_or_else(|| invalid("h1 and h2 need --params <file.json>"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    let params = GenParams::from_json(&text).with_context(|| format!("in {}", path.display()))?;
    if params.variant != variant {
        return Err(invalid(format!(
            "{} holds {:?} parameters",
            path.display(),
            params.variant
        )));
    }
    Ok(params)
}

fn verify(out: &mut impl Write, suite: &str, g: &Global) -> Result<ExitCode> {
    let suite: Suite = suite.parse()?;
    let opts = VerifyOptions {
        max_n: g.max_n.unwrap_or(VerifyOptions::default().max_n),
        seed: g.seed,
        tolerance: g.tolerance,
    };
    let report = run_suite(suite, &opts)?;
    match g.format.unwrap_or(Format::Text) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        _ => {
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                write!(
                    out,
                    "{status}  {:<8} {} ({} cases)",
                    c.suite.name(),
                    c.name,
                    c.cases
                )?;
                match &c.witness {
                    Some(w) => writeln!(out, ": witness {w}")?,
                    None => writeln!(out)?,
                }
            }
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn gauss(
    out: &mut impl Write,
    m: i64,
    n: u64,
    closed: bool,
    direct: bool,
    g: &Global,
) -> Result<ExitCode> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    check_bound(n, g)?;
    if n > families::GAUSS_SUM_BOUND && !closed {
        return Err(OverBound(format!(
            "direct summation supports n <= {}",
            families::GAUSS_SUM_BOUND
        ))
        .into());
    }
    let exact = if direct {
        None
    } else {
        Some(gauss_closed(m, n)?)
    };
    let approx = if closed {
        None
    } else {
        Some(gauss_direct(m, n))
    };
    let deviation = match (&exact, approx) {
        (Some(e), Some(a)) => Some((e.approx() - a).norm()),
        _ => None,
    };
    match g.format.unwrap_or(Format::Text) {
        Format::Json => {
            let v = json!({
                "m": m,
                "n": n,
                "closed": exact.as_ref().map(|e| json!({"exact": e.to_string(), "json": e})),
                "direct": approx.map(|a| json!({"re": fmt_float(a.re), "im": fmt_float(a.im)})),
                "deviation": deviation.map(|d| format!("{d:.3e}")),
            });
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)?;
        }
        _ => {
            if let Some(e) = &exact {
                let z = e.approx();
                writeln!(
                    out,
                    "closed  {e}  (≈ {} + {}i)",
                    fmt_float(z.re),
                    fmt_float(z.im)
                )?;
            }
            if let Some(a) = approx {
                writeln!(out, "direct  {} + {}i", fmt_float(a.re), fmt_float(a.im))?;
            }
            if let Some(d) = deviation {
                writeln!(out, "|Δ|     {d:.3e}")?;
            }
        }
    }
    Ok(match deviation {
        Some(d) if d > g.tolerance => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}

fn mub(out: &mut impl Write, n: usize, report: Report, g: &Global) -> Result<ExitCode> {
    if n < 2 {
        return Err(invalid("dimension must be at least 2"));
    }
    check_bound(n as u64, g)?;
    if n > weyl::MAX_DIM {
        return Err(OverBound(format!("dimension {n} exceeds {}", weyl::MAX_DIM)).into());
    }
    let t = weyl::build_triple(n)?;
    let ids = weyl::check_identities(&t)?;
    let cls = if n <= 32 {
        Some(weyl::unbiasedness_classification(&t)?)
    } else {
        None
    };
    let ok = ids.passed() && cls.as_ref().is_none_or(|c| c.matches_rules());
    match report {
        Report::Json => {
            let v = json!({"identities": ids, "classification": cls, "passed": ok});
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)?;
        }
        Report::Text => {
            writeln!(out, "n = {n}")?;
            for c in &ids.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status}  {:.3e}  {}", c.max_deviation, c.name)?;
            }
            if let Some(c) = &cls {
                writeln!(
                    out,
                    "unbiased pairs (observed; gcd rules {}):",
                    if c.matches_rules() {
                        "agree"
                    } else {
                        "DISAGREE"
                    }
                )?;
                write!(out, "{:>4}", "")?;
                for l in &c.labels {
                    write!(out, "{l:>4}")?;
                }
                writeln!(out)?;
                for (x, row) in c.unbiased.iter().enumerate() {
                    write!(out, "{:>4}", c.labels[x])?;
                    for (y, &u) in row.iter().enumerate() {
                        let mark = if x == y {
                            "."
                        } else if u {
                            "U"
                        } else {
                            "-"
                        };
                        write!(out, "{mark:>4}")?;
                    }
                    writeln!(out)?;
                }
            }
        }
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn squarefree(out: &mut impl Write, n: u64, via: Via, g: &Global) -> Result<()> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    check_bound(n, g)?;
    let lambda = match via {
        Via::Factor => squarefree_decompose(n)?.lambda,
        Via::Hsharp => families::squarefree_part_via_hsharp(n)?,
    };
    let nu = (n / lambda).isqrt();
    if lambda * nu * nu != n {
        return Err(anyhow!("inconsistent decomposition of {n}"));
    }
    match g.format.unwrap_or(Format::Text) {
        Format::Json => {
            let via = match via {
                Via::Factor => "factor",
                Via::Hsharp => "hsharp",
            };
            serde_json::to_writer(
                &mut *out,
                &json!({"n": n, "lambda": lambda, "nu": nu, "via": via}),
            )?;
            writeln!(out)?;
        }
        _ => writeln!(out, "{n} = {lambda} * {nu}^2")?,
    }
    Ok(())
}
