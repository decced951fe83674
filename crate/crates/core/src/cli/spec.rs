//! The function-spec grammar:
//!
//! ```text
//! spec  := name [':' arg] ['(' spec {',' spec} ')']
//! ```
//!
//! Built-ins: `delta I mu lambda xi tau mu2 nr:<r> romega:<r> mangoldt
//! mangoldt_tilde`. Combinators: `dconv bconv times` (two arguments),
//! `dinv binv bpow:<k> toxi fromxi` (one argument). `table:<path>` reads a
//! two-column CSV `n,value` with `n = 1, 2, …`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::algebra::{
    binomial_convolve, binomial_inverse, binomial_power, builtins, dirichlet_convolve,
    dirichlet_inverse, from_dirichlet_side, pointwise_product, to_dirichlet_side, ArithFn,
};
use crate::error::Error;
use crate::numeric::{LogLinear, Rational};
use crate::series::{divisor_bound_constant, GrowthCertificate, SeriesFn};

pub const BUILTINS: &[&str] = &[
    "delta",
    "I",
    "mu",
    "lambda",
    "xi",
    "tau",
    "mu2",
    "nr:<r>",
    "romega:<r>",
    "mangoldt",
    "mangoldt_tilde",
];
pub const COMBINATORS: &[&str] = &[
    "dconv(f,g)",
    "bconv(f,g)",
    "times(f,g)",
    "dinv(f)",
    "binv(f)",
    "bpow:<k>(f)",
    "toxi(f)",
    "fromxi(f)",
];

/// A parse or resolution error at a byte offset of the spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for SpecError {}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError {
        pos,
        message: message.into(),
    })
}

/// A parsed spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub name: String,
    pub arg: Option<String>,
    pub args: Vec<Expr>,
    pub pos: usize,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if let Some(a) = &self.arg {
            write!(f, ":{a}")?;
        }
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    fn take_while(&mut self, ok: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek().filter(|&c| ok(c)) {
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<Expr, SpecError> {
        self.skip_ws();
        let pos = self.pos;
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if name.is_empty() {
            return match self.peek() {
                None => err(pos, "expected a function name, found end of input"),
                Some(c) => err(pos, format!("expected a function name, found `{c}`")),
            };
        }
        let mut arg = None;
        if self.peek() == Some(':') {
            self.pos += 1;
            let apos = self.pos;
            let a = if name == "table" {
                self.take_while(|c| c != ',' && c != ')' && c != '(').trim()
            } else {
                self.take_while(|c| c.is_ascii_alphanumeric() || "+-/._".contains(c))
            };
            if a.is_empty() {
                return err(apos, format!("`{name}:` needs an argument"));
            }
            arg = Some(a.to_string());
        }
        self.skip_ws();
        let mut args = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                args.push(self.expr()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(c) => return err(self.pos, format!("expected `,` or `)`, found `{c}`")),
                    None => return err(self.pos, "unclosed `(`"),
                }
            }
        }
        Ok(Expr {
            name: name.to_string(),
            arg,
            args,
            pos,
        })
    }
}

pub fn parse(src: &str) -> Result<Expr, SpecError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return err(p.pos, format!("unexpected `{c}` after the spec"));
    }
    Ok(e)
}

/// A resolved function: rational-valued, or one of the log-valued built-ins.
#[derive(Debug, Clone)]
pub enum Resolved {
    Exact(ArithFn),
    Log(LogFn),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogFn {
    Mangoldt,
    MangoldtTilde,
}

impl LogFn {
    pub fn eval(self, n: u64) -> crate::error::Result<LogLinear> {
        match self {
            LogFn::Mangoldt => crate::series::mangoldt(n),
            LogFn::MangoldtTilde => crate::series::mangoldt_tilde(n),
        }
    }
}

fn unknown(e: &Expr) -> SpecError {
    SpecError {
        pos: e.pos,
        message: format!(
            "unknown function `{}`; valid built-ins: {}; combinators: {}; or table:<path>",
            e.name,
            BUILTINS.join(", "),
            COMBINATORS.join(", ")
        ),
    }
}

fn arity(e: &Expr, n: usize) -> Result<(), SpecError> {
    if e.args.len() != n {
        return err(
            e.pos,
            format!("`{}` takes {n} argument(s), got {}", e.name, e.args.len()),
        );
    }
    Ok(())
}

fn no_param(e: &Expr) -> Result<(), SpecError> {
    match &e.arg {
        Some(_) => err(e.pos, format!("`{}` takes no `:` parameter", e.name)),
        None => Ok(()),
    }
}

fn param<T: FromStr>(e: &Expr, what: &str) -> Result<T, SpecError> {
    let a = e.arg.as_deref().ok_or_else(|| SpecError {
        pos: e.pos,
        message: format!("`{}` needs a parameter, as in `{}:{what}`", e.name, e.name),
    })?;
    a.parse().map_err(|_| SpecError {
        pos: e.pos + e.name.len() + 1,
        message: format!("`{a}` is not a valid {what}"),
    })
}

fn exact(e: &Expr, table_bound: u64) -> Result<ArithFn, SpecError> {
    match resolve(e, table_bound)? {
        Resolved::Exact(f) => Ok(f),
        Resolved::Log(_) => err(
            e.pos,
            format!("log-valued `{}` can only be evaluated on its own", e.name),
        ),
    }
}

fn lib(pos: usize, r: crate::error::Result<ArithFn>) -> Result<ArithFn, SpecError> {
    r.map_err(|e| SpecError {
        pos,
        message: e.to_string(),
    })
}

/// Resolves a spec to a function. `table_bound` is the number of rows a
/// `table:` reference must provide.
pub fn resolve(e: &Expr, table_bound: u64) -> Result<Resolved, SpecError> {
    let leaf = |f: ArithFn| -> Result<Resolved, SpecError> {
        arity(e, 0)?;
        Ok(Resolved::Exact(f))
    };
    match e.name.as_str() {
        "delta" | "I" | "mu" | "lambda" | "xi" | "tau" | "mu2" => {
            no_param(e)?;
            leaf(match e.name.as_str() {
                "delta" => builtins::delta(),
                "I" => builtins::one(),
                "mu" => builtins::moebius(),
                "lambda" => builtins::liouville(),
                "xi" => builtins::xi(),
                "tau" => builtins::tau(),
                _ => builtins::mu_squared(),
            })
        }
        "nr" => leaf(builtins::power(param::<i32>(e, "integer exponent")?)),
        "romega" => leaf(builtins::r_omega(param::<Rational>(e, "rational")?)),
        "mangoldt" | "mangoldt_tilde" => {
            no_param(e)?;
            arity(e, 0)?;
            Ok(Resolved::Log(if e.name == "mangoldt" {
                LogFn::Mangoldt
            } else {
                LogFn::MangoldtTilde
            }))
        }
        "table" => {
            arity(e, 0)?;
            let path = e.arg.as_deref().unwrap_or_default();
            if path.is_empty() {
                return err(e.pos, "`table` needs a path, as in `table:values.csv`");
            }
            let f = read_table(Path::new(path)).map_err(|m| SpecError {
                pos: e.pos + 6,
                message: m,
            })?;
            if f.table_bound().unwrap_or(0) < table_bound {
                return err(
                    e.pos,
                    format!(
                        "table {path} has {} rows, {table_bound} needed",
                        f.table_bound().unwrap_or(0)
                    ),
                );
            }
            Ok(Resolved::Exact(f))
        }
        "dconv" | "bconv" | "times" => {
            no_param(e)?;
            arity(e, 2)?;
            let (f, g) = (
                exact(&e.args[0], table_bound)?,
                exact(&e.args[1], table_bound)?,
            );
            Ok(Resolved::Exact(match e.name.as_str() {
                "dconv" => dirichlet_convolve(&f, &g),
                "bconv" => binomial_convolve(&f, &g),
                _ => pointwise_product(&f, &g),
            }))
        }
        "dinv" | "binv" | "toxi" | "fromxi" => {
            no_param(e)?;
            arity(e, 1)?;
            let f = exact(&e.args[0], table_bound)?;
            Ok(Resolved::Exact(match e.name.as_str() {
                "dinv" => lib(e.pos, dirichlet_inverse(&f))?,
                "binv" => lib(e.pos, binomial_inverse(&f))?,
                "toxi" => to_dirichlet_side(&f),
                _ => from_dirichlet_side(&f),
            }))
        }
        "bpow" => {
            arity(e, 1)?;
            let k = param::<i64>(e, "integer power")?;
            let f = exact(&e.args[0], table_bound)?;
            Ok(Resolved::Exact(lib(e.pos, binomial_power(&f, k))?))
        }
        _ => Err(unknown(e)),
    }
}

/// Reads a two-column CSV `n,value`; a header row is allowed.
pub fn read_table(path: &Path) -> Result<ArithFn, String> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut values = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| format!("{}: {e}", path.display()))?;
        if rec.len() != 2 {
            return Err(format!(
                "{}: row {} needs two columns",
                path.display(),
                i + 1
            ));
        }
        let n: u64 = match rec[0].parse() {
            Ok(n) => n,
            Err(_) if i == 0 => continue,
            Err(_) => return Err(format!("{}: bad n `{}`", path.display(), &rec[0])),
        };
        if n != values.len() as u64 + 1 {
            return Err(format!(
                "{}: expected n = {}, found {n}",
                path.display(),
                values.len() + 1
            ));
        }
        let v: Rational = rec[1]
            .parse()
            .map_err(|_| format!("{}: bad value `{}` at n = {n}", path.display(), &rec[1]))?;
        values.push(v);
    }
    let name = path
        .file_stem()
        .map_or("table".into(), |s| s.to_string_lossy().into_owned());
    ArithFn::from_table(name, values).map_err(|e: Error| e.to_string())
}

/// The series view of a spec, for the built-ins that carry growth
/// certificates and for `bconv` of such; tables get finite support.
pub fn series_fn(e: &Expr) -> Result<SeriesFn, SpecError> {
    let plain = |f: SeriesFn| -> Result<SeriesFn, SpecError> {
        arity(e, 0)?;
        Ok(f)
    };
    match e.name.as_str() {
        "delta" => plain(SeriesFn::delta()),
        "I" => plain(SeriesFn::one()),
        "mu" => plain(SeriesFn::moebius()),
        "lambda" => plain(SeriesFn::liouville()),
        "xi" => plain(SeriesFn::xi()),
        "mangoldt" => plain(SeriesFn::mangoldt()),
        "mangoldt_tilde" => plain(SeriesFn::mangoldt_tilde()),
        "nr" => plain(SeriesFn::power(param::<f64>(e, "real exponent")?)),
        "romega" => plain(SeriesFn::r_omega(param::<f64>(e, "real base")?)),
        "tau" | "mu2" => {
            let f = exact(e, 0)?;
            let cert = if e.name == "tau" {
                GrowthCertificate::new(divisor_bound_constant(0.25), 0.25)
            } else {
                GrowthCertificate::new(1.0, 0.0).map(GrowthCertificate::nonnegative)
            };
            let cert = cert.map_err(|m| SpecError {
                pos: e.pos,
                message: m.to_string(),
            })?;
            SeriesFn::from_arith(&f, cert, 1000).map_err(|m| SpecError {
                pos: e.pos,
                message: m.to_string(),
            })
        }
        "table" => {
            let f = exact(e, 0)?;
            let bound = f.table_bound().unwrap_or(0);
            let mut c = 0.0f64;
            for n in 1..=bound {
                let w = num::ToPrimitive::to_f64(&f.eval(n).map_err(|m| SpecError {
                    pos: e.pos,
                    message: m.to_string(),
                })?)
                .unwrap_or(f64::INFINITY)
                    / crate::numeric::xi(n)
                        .ok()
                        .and_then(|x| num::ToPrimitive::to_f64(&x))
                        .unwrap_or(1.0);
                c = c.max(w.abs());
            }
            let cert = GrowthCertificate::new(c * (1.0 + 1e-12) + f64::MIN_POSITIVE, 0.0).map_err(
                |m| SpecError {
                    pos: e.pos,
                    message: m.to_string(),
                },
            )?;
            let fs = SeriesFn::from_arith(&f, cert, bound).map_err(|m| SpecError {
                pos: e.pos,
                message: m.to_string(),
            })?;
            Ok(fs.with_support(bound))
        }
        "bconv" => {
            no_param(e)?;
            arity(e, 2)?;
            Ok(series_fn(&e.args[0])?.binomial_product(&series_fn(&e.args[1])?))
        }
        "dconv" | "times" | "dinv" | "binv" | "bpow" | "toxi" | "fromxi" => err(
            e.pos,
            format!(
                "`{}` has no growth certificate for series; use built-ins, tables or bconv",
                e.name
            ),
        ),
        _ => Err(unknown(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn values(src: &str, n: u64) -> Vec<Rational> {
        match resolve(&parse(src).unwrap(), n).unwrap() {
            Resolved::Exact(f) => f.values(n).unwrap(),
            Resolved::Log(_) => panic!("log-valued"),
        }
    }

    #[test]
    fn parses_nested() {
        let e = parse(" bconv( binv(I), bpow:-2(romega:5/2) ) ").unwrap();
        assert_eq!(e.to_string(), "bconv(binv(I),bpow:-2(romega:5/2))");
        assert_eq!(e.args[1].pos, 17);
    }

    #[test]
    fn examples() {
        let ints = |v: &[i64]| v.iter().map(|&x| q(x)).collect::<Vec<_>>();
        assert_eq!(
            values("binv(I)", 10),
            ints(&[1, -1, -1, 1, -1, 1, -1, -1, 1, 1])
        );
        assert_eq!(values("delta", 3), ints(&[1, 0, 0]));
        assert_eq!(values("bconv(I,I)", 8), ints(&[1, 2, 2, 4, 2, 4, 2, 8]));
        assert_eq!(values("dconv(I,I)", 8), ints(&[1, 2, 2, 3, 2, 4, 2, 4]));
        assert_eq!(values("toxi(xi)", 8), ints(&[1; 8]));
        assert_eq!(values("fromxi(I)", 4), ints(&[1, 1, 1, 2]));
        assert_eq!(values("times(mu,mu)", 4), ints(&[1, 1, 1, 0]));
        assert_eq!(values("dconv(mu,I)", 4), ints(&[1, 0, 0, 0]));
        assert_eq!(values("nr:2", 3), ints(&[1, 4, 9]));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse("bconv(I,,I)").unwrap_err();
        assert_eq!(e.pos, 8);
        let e = parse("bconv(I,I").unwrap_err();
        assert!(e.message.contains("unclosed"));
        let e = resolve(&parse("bconv(I, foo)").unwrap(), 5).unwrap_err();
        assert_eq!(e.pos, 9);
        assert!(e.message.contains("lambda") && e.message.contains("bpow"));
        let e = resolve(&parse("binv(mangoldt)").unwrap(), 5).unwrap_err();
        assert!(e.message.contains("log-valued"));
        assert!(resolve(&parse("bconv(I)").unwrap(), 5).is_err());
        assert!(resolve(&parse("nr:1/2").unwrap(), 5).is_err());
        assert!(parse("I)").is_err());
    }

    #[test]
    fn tables() {
        let dir = std::env::temp_dir().join(format!("binconv-spec-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.csv");
        std::fs::write(&path, "n,value\n1,1\n2,-1/2\n3,3\n").unwrap();
        let src = format!("table:{}", path.display());
        assert_eq!(
            values(&src, 3),
            vec![q(1), Rational::new(q(-1).to_integer(), 2.into()), q(3)]
        );
        assert!(resolve(&parse(&src).unwrap(), 4).is_err());
        std::fs::write(&path, "1,1\n3,2\n").unwrap();
        assert!(resolve(&parse(&src).unwrap(), 1).is_err());
        let fs = series_fn(&parse(&src.replace("t.csv", "u.csv")).unwrap());
        assert!(fs.is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
