//! The `binconv` command line: `eval`, `conv`, `check`, `series`, `invert`.
//!
//! Exit status is 0 on success, 1 when a checked identity fails, 2 on usage
//! or input errors.

pub mod spec;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    binomial_inverse, binomial_inverse_via_isomorphism, convolve_with, dirichlet_inverse,
    dirichlet_inverse_via_isomorphism, ArithFn, Kind,
};
use crate::checks::{self, CheckParams};
use crate::multiplicativity::{closed_form_inverse_prime_supported, InverseMode};
use crate::series::{
    capital_xi, egf_partial, exp_dirichlet_partial, prime_zeta, prime_zeta_direct, zeta_tilde,
    SeriesApprox, DEFAULT_PRIME_CUTOFF,
};
use spec::{parse, resolve, series_fn, Resolved};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the prime cutoff of direct prime sums.
pub const SIEVE_ENV: &str = "BINCONV_SIEVE_BOUND";

#[derive(Debug, Parser)]
#[command(
    name = "binconv",
    version,
    about = "Binomial and Dirichlet convolutions of arithmetical functions"
)]
struct Cli {
    /// One JSON object per line.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Comma-separated values with a header row.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a function on 1..=N.
    Eval {
        /// Function spec, e.g. "bconv(I,lambda)".
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        to: u64,
    },
    /// Tabulate the convolution of two functions on 1..=N.
    Conv {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, value_enum, default_value = "binomial")]
        kind: KindArg,
        #[arg(long)]
        to: u64,
    },
    /// Run a named identity check.
    Check {
        /// Identity name; omit with --list.
        identity: Option<String>,
        /// List the registered identities.
        #[arg(long)]
        list: bool,
        /// Upper end of the checked range.
        #[arg(long, visible_alias = "n-max")]
        to: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        z: Option<f64>,
        /// Number of series terms.
        #[arg(long)]
        terms: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Evaluate a series with a rigorous error bound.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        /// Function spec for edirichlet and egf.
        #[arg(long = "fn", default_value = "I")]
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<f64>,
        /// Real part of z.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<f64>,
        /// Imaginary part of z.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        zi: f64,
        #[arg(long)]
        terms: Option<u64>,
        /// Sum primes directly up to the sieve bound (primezeta).
        #[arg(long)]
        direct: bool,
    },
    /// Tabulate an inverse on 1..=N.
    Invert {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value = "binomial")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "recursive")]
        via: InverseRoute,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Binomial,
    Dirichlet,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Binomial => Kind::Binomial,
            KindArg::Dirichlet => Kind::Dirichlet,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InverseRoute {
    Recursive,
    Isomorphism,
    /// Only for multiplicative functions vanishing on higher prime powers.
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    Edirichlet,
    Primezeta,
    Zetatilde,
    Egf,
    #[value(name = "xi_egf")]
    XiEgf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Human,
    Json,
    Csv,
}

/// A table row as written by `--json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    /// Exact value, `p/q` or an integer; log-valued functions use
    /// `c*log(p)+…`.
    pub value: String,
}

/// A check result as written by `--json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub identity: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// A series value as written by `--json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesLine {
    pub series: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value_im: Option<f64>,
    pub error_bound: f64,
    pub terms_used: u64,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(format!("output error: {e}"))
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Human
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli.command, format, &mut out) {
        Ok(code) => code,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn sieve_bound() -> Result<u64, Failure> {
    match std::env::var(SIEVE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&b| b >= 2)
            .ok_or_else(|| {
                Failure::usage(format!("{SIEVE_ENV} must be an integer >= 2, got `{v}`"))
            }),
        Err(_) => Ok(DEFAULT_PRIME_CUTOFF),
    }
}

fn require_range(to: u64) -> Result<(), Failure> {
    if to == 0 {
        return Err(Failure::usage("--to must be at least 1"));
    }
    Ok(())
}

fn spec_error(src: &str, e: spec::SpecError) -> Failure {
    Failure::usage(format!(
        "in spec `{src}` {e}\n  {src}\n  {}^",
        " ".repeat(e.pos)
    ))
}

fn resolve_exact(src: &str, to: u64) -> Result<ArithFn, Failure> {
    let expr = parse(src).map_err(|e| spec_error(src, e))?;
    match resolve(&expr, to).map_err(|e| spec_error(src, e))? {
        Resolved::Exact(f) => Ok(f),
        Resolved::Log(_) => Err(Failure::usage(format!(
            "`{src}` is log-valued; only `eval` supports it"
        ))),
    }
}

fn dispatch(cmd: Command, format: Format, out: &mut impl Write) -> Result<i32, Failure> {
    match cmd {
        Command::Eval { function, to } => {
            require_range(to)?;
            let expr = parse(&function).map_err(|e| spec_error(&function, e))?;
            let rows = match resolve(&expr, to).map_err(|e| spec_error(&function, e))? {
                Resolved::Exact(f) => exact_rows(&f, to)?,
                Resolved::Log(l) => (1..=to)
                    .map(|n| {
                        Ok(Row {
                            n,
                            value: l.eval(n)?.to_string(),
                        })
                    })
                    .collect::<crate::Result<Vec<_>>>()?,
            };
            write_rows(out, format, &function, &rows)?;
            Ok(EXIT_OK)
        }
        Command::Conv { f, g, kind, to } => {
            require_range(to)?;
            let (ff, gf) = (resolve_exact(&f, to)?, resolve_exact(&g, to)?);
            let h = convolve_with(kind.into(), &ff, &gf);
            let sym = if matches!(kind, KindArg::Binomial) {
                "∘"
            } else {
                "*"
            };
            write_rows(
                out,
                format,
                &format!("({f} {sym} {g})"),
                &exact_rows(&h, to)?,
            )?;
            Ok(EXIT_OK)
        }
        Command::Invert {
            function,
            to,
            kind,
            via,
        } => {
            require_range(to)?;
            let f = resolve_exact(&function, to)?;
            let inv = match (kind, via) {
                (KindArg::Binomial, InverseRoute::Recursive) => binomial_inverse(&f)?,
                (KindArg::Binomial, InverseRoute::Isomorphism) => {
                    binomial_inverse_via_isomorphism(&f)?
                }
                (KindArg::Dirichlet, InverseRoute::Recursive) => dirichlet_inverse(&f)?,
                (KindArg::Dirichlet, InverseRoute::Isomorphism) => {
                    dirichlet_inverse_via_isomorphism(&f)?
                }
                (k, InverseRoute::ClosedForm) => {
                    let mode = match k {
                        KindArg::Binomial => InverseMode::Binomial,
                        KindArg::Dirichlet => InverseMode::Dirichlet,
                    };
                    closed_form_inverse_prime_supported(&f, mode, to.max(2))?
                }
            };
            write_rows(
                out,
                format,
                &format!("{function}^-1"),
                &exact_rows(&inv, to)?,
            )?;
            Ok(EXIT_OK)
        }
        Command::Check {
            identity,
            list,
            to,
            samples,
            n,
            s,
            z,
            terms,
            tol,
            seed,
        } => {
            if list {
                for id in checks::REGISTRY {
                    writeln!(out, "{:<13} {}", id.name, id.summary)?;
                }
                return Ok(EXIT_OK);
            }
            let name = identity.ok_or_else(|| {
                Failure::usage(format!("name an identity: {}", checks::names().join(", ")))
            })?;
            let params = CheckParams {
                bound: to,
                samples,
                n,
                s,
                z,
                terms,
                tol,
                sieve_bound: Some(sieve_bound()?),
                seed,
            };
            let report = checks::run(&name, &params)?;
            let line = CheckLine {
                identity: report.identity.clone(),
                pass: report.pass,
                witness: report.witness.clone(),
            };
            match format {
                Format::Json => writeln!(out, "{}", to_json(&line))?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["identity", "pass", "witness"])
                        .map_err(csv_err)?;
                    w.serialize((
                        &line.identity,
                        line.pass,
                        line.witness.as_deref().unwrap_or(""),
                    ))
                    .map_err(csv_err)?;
                    w.flush()?;
                }
                Format::Human => {
                    let verdict = if report.pass { "PASS" } else { "FAIL" };
                    writeln!(out, "{verdict} {}", report.identity)?;
                    if let Some(w) = &report.witness {
                        writeln!(out, "  witness: {w}")?;
                    }
                    if !report.detail.is_empty() {
                        writeln!(out, "  {}", report.detail)?;
                    }
                }
            }
            Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Series {
            kind,
            function,
            s,
            z,
            zi,
            terms,
            direct,
        } => {
            let line = series(kind, &function, s, z, zi, terms, direct)?;
            match format {
                Format::Json => writeln!(out, "{}", to_json(&line))?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["series", "value", "value_im", "error_bound", "terms_used"])
                        .map_err(csv_err)?;
                    w.serialize((
                        &line.series,
                        line.value,
                        line.value_im.map(|v| v.to_string()).unwrap_or_default(),
                        line.error_bound,
                        line.terms_used,
                    ))
                    .map_err(csv_err)?;
                    w.flush()?;
                }
                Format::Human => {
                    let value = match line.value_im {
                        Some(im) => format!(
                            "{} {} {}i",
                            line.value,
                            if im < 0.0 { "-" } else { "+" },
                            im.abs()
                        ),
                        None => format!("{}", line.value),
                    };
                    writeln!(
                        out,
                        "{} = {value} ± {:.3e} ({} terms)",
                        line.series, line.error_bound, line.terms_used
                    )?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn series(
    kind: SeriesKind,
    function: &str,
    s: Option<f64>,
    z: Option<f64>,
    zi: f64,
    terms: Option<u64>,
    direct: bool,
) -> Result<SeriesLine, Failure> {
    let need_s = || s.ok_or_else(|| Failure::usage("this series needs --s"));
    let need_z = || {
        z.map(|re| Complex64::new(re, zi))
            .ok_or_else(|| Failure::usage("this series needs --z"))
    };
    let show = |z: Complex64| {
        if z.im == 0.0 {
            z.re.to_string()
        } else {
            z.to_string()
        }
    };
    let real = |name: String, a: SeriesApprox| SeriesLine {
        series: name,
        value: a.value,
        value_im: None,
        error_bound: a.error_bound,
        terms_used: a.terms_used,
    };
    let complex = |name: String, a: crate::series::ComplexApprox| SeriesLine {
        series: name,
        value: a.value.re,
        value_im: (a.value.im != 0.0).then_some(a.value.im),
        error_bound: a.error_bound,
        terms_used: a.terms_used,
    };
    Ok(match kind {
        SeriesKind::Primezeta => {
            let s = need_s()?;
            let v = if direct {
                prime_zeta_direct(s, sieve_bound()?)?
            } else {
                prime_zeta(s)?
            };
            real(format!("primezeta({s})"), v)
        }
        SeriesKind::Zetatilde => {
            let s = need_s()?;
            real(format!("zetatilde({s})"), zeta_tilde(s)?)
        }
        SeriesKind::Edirichlet => {
            let s = need_s()?;
            let expr = parse(function).map_err(|e| spec_error(function, e))?;
            let f = series_fn(&expr).map_err(|e| spec_error(function, e))?;
            real(
                format!("edirichlet({function},{s})"),
                exp_dirichlet_partial(&f, s, terms.unwrap_or(1_000_000))?,
            )
        }
        SeriesKind::Egf => {
            let z = need_z()?;
            let expr = parse(function).map_err(|e| spec_error(function, e))?;
            let f = series_fn(&expr).map_err(|e| spec_error(function, e))?;
            complex(
                format!("egf({function},{})", show(z)),
                egf_partial(&f, z, terms.unwrap_or(2000))?,
            )
        }
        SeriesKind::XiEgf => {
            let z = need_z()?;
            complex(
                format!("Xi({})", show(z)),
                capital_xi(z, terms.unwrap_or(2000))?,
            )
        }
    })
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::usage(format!("csv output error: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain structs serialize")
}

fn exact_rows(f: &ArithFn, to: u64) -> Result<Vec<Row>, Failure> {
    Ok(f.values(to)?
        .into_iter()
        .zip(1..)
        .map(|(v, n)| Row {
            n,
            value: v.to_string(),
        })
        .collect())
}

fn write_rows(
    out: &mut impl Write,
    format: Format,
    title: &str,
    rows: &[Row],
) -> Result<(), Failure> {
    match format {
        Format::Json => {
            for r in rows {
                writeln!(out, "{}", to_json(r))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["n", "value"]).map_err(csv_err)?;
            for r in rows {
                w.serialize((r.n, &r.value)).map_err(csv_err)?;
            }
            w.flush()?;
        }
        Format::Human => {
            let width = rows.last().map_or(1, |r| r.n.to_string().len());
            writeln!(out, "{:>width$}  {title}", "n")?;
            for r in rows {
                writeln!(out, "{:>width$}  {}", r.n, r.value)?;
            }
        }
    }
    Ok(())
}
