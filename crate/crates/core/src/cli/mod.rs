//! Single-shot command-line front end.
//!
//! Exit codes: 0 ok, 1 usage, 2 parse, 3 not analytic, 4 undecidable,
//! 5 point identity undecidable, 6 disagreement with the exact oracle.

mod crosscheck;

use crate::expr::{parse, Expr, ExprError};
use crate::ideals::{self, Generator, Ideal, IdealError};
use crate::rational::exact_string;
use crate::roots::{self, check_analytic, interval_json, Config, Divisor, RootsError, Zeros};
use crate::taylor::{self, Center, Coef, Dyadic, Scalar, TaylorError, LADDER};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;

#[derive(Parser, Debug)]
#[command(
    name = "analytic-ideals",
    version,
    about = "Certified zero divisors and ideal algebra on [0,1]"
)]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Options {
    /// First precision in bits (53, 128, 256, 512 or 1024).
    #[arg(long, global = true, default_value_t = 53)]
    pub precision: u32,
    /// Largest precision in bits.
    #[arg(long, global = true, default_value_t = 1024)]
    pub max_precision: u32,
    /// Maximum enclosure width, a dyadic such as 2^-53 or 1/1024.
    #[arg(long, global = true, default_value = "2^-53")]
    pub tolerance: String,
    /// Largest multiplicity that will be certified.
    #[arg(long, global = true, default_value_t = 16)]
    pub mult_cap: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cross-check polynomial inputs against exact rational arithmetic.
    #[arg(long, global = true)]
    pub oracle: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Zeros of an expression on [0,1] with multiplicities.
    Roots {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Taylor coefficients at gamma of (f(x) - f(gamma))/(x - gamma).
    Deflate {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        gamma: String,
        /// Number of coefficients.
        order: usize,
    },
    /// Enclosure of the value at a rational point.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        point: String,
    },
    /// Ideal operations on generators.
    #[command(subcommand)]
    Ideal(IdealCommand),
}

#[derive(Subcommand, Debug)]
pub enum IdealCommand {
    /// The ideal generated by an expression.
    From {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    Sum {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    Product {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    Intersect {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// The colon ideal (<f> : <g>).
    Quotient {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Whether f lies in the ideal generated by the --in expression.
    Member {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long = "in", allow_hyphen_values = true)]
        ideal: String,
    },
    /// Factorization into maximal ideals.
    Factor {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    IsMaximal {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    IsPrime {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    Radical {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// The canonical generator prod (x - g)^m, when every zero is rational.
    Generator {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
}

/// Everything that ends a command early, with its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(ExprError),
    Roots(RootsError),
    Oracle(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Roots(RootsError::NotAnalytic { .. }) => 3,
            Failure::Roots(RootsError::Undecidable { .. } | RootsError::PrecisionExhausted) => 4,
            Failure::Roots(RootsError::PointIdentityUndecidable { .. }) => 5,
            Failure::Oracle(_) => 6,
        }
    }

    fn kind(&self) -> &'static str {
        match self.code() {
            1 => "usage",
            2 => "parse",
            3 => "not_analytic",
            4 => "undecidable",
            5 => "point_identity_undecidable",
            _ => "oracle_disagreement",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Oracle(m) => m.clone(),
            Failure::Parse(e) => e.to_string(),
            Failure::Roots(e) => e.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({"error": self.kind(), "message": self.message()});
        match self {
            Failure::Roots(RootsError::NotAnalytic { witness }) => {
                v["interval"] = interval_json(witness)
            }
            Failure::Roots(RootsError::Undecidable { interval, .. }) => {
                v["interval"] = interval_json(interval)
            }
            _ => {}
        }
        v
    }
}

impl From<RootsError> for Failure {
    fn from(e: RootsError) -> Failure {
        Failure::Roots(e)
    }
}

impl From<IdealError> for Failure {
    fn from(e: IdealError) -> Failure {
        match e {
            IdealError::Roots(r) => Failure::Roots(r),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<TaylorError> for Failure {
    fn from(e: TaylorError) -> Failure {
        let TaylorError::NotAnalytic { witness } = e;
        Failure::Roots(RootsError::NotAnalytic { witness })
    }
}

/// Parse `args` (program name first), run the command, return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let format = cli.options.format;
    match execute(&cli) {
        Ok(rendered) => {
            let _ = writeln!(out, "{rendered}");
            0
        }
        Err(f) => {
            if format == Format::Json {
                let _ = writeln!(out, "{}", f.to_json());
            }
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn config(o: &Options) -> Result<Config, Failure> {
    for bits in [o.precision, o.max_precision] {
        if !LADDER.contains(&bits) {
            return Err(Failure::Usage(format!(
                "precision {bits} is not one of {LADDER:?}"
            )));
        }
    }
    if o.precision > o.max_precision {
        return Err(Failure::Usage("--precision exceeds --max-precision".into()));
    }
    if o.mult_cap == 0 {
        return Err(Failure::Usage("--mult-cap must be at least 1".into()));
    }
    Ok(Config {
        precision: o.precision,
        max_precision: o.max_precision,
        tolerance: parse_tolerance(&o.tolerance)?,
        mult_cap: o.mult_cap,
    })
}

/// `2^-k`, or a rational whose denominator is a power of two.
fn parse_tolerance(text: &str) -> Result<Dyadic, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "tolerance {text:?} is not a positive dyadic rational"
        ))
    };
    let t = text.trim();
    let d = match t.strip_prefix("2^") {
        Some(k) => Dyadic::pow2(k.parse::<i64>().map_err(|_| bad())?),
        None => {
            let q = match t.parse::<BigRational>() {
                Ok(q) => q,
                Err(_) => rational_arg(t).map_err(|_| bad())?,
            };
            Dyadic::try_from_rational(&q).ok_or_else(bad)?
        }
    };
    if d.is_positive() {
        Ok(d)
    } else {
        Err(bad())
    }
}

fn expression(text: &str) -> Result<Expr, Failure> {
    parse(text).map_err(Failure::Parse)
}

/// A rational written as an expression that folds to a constant.
fn rational_arg(text: &str) -> Result<BigRational, Failure> {
    let e = crate::expr::normalize(&expression(text)?).map_err(Failure::Parse)?;
    e.as_const()
        .cloned()
        .ok_or_else(|| Failure::Usage(format!("{text:?} is not a rational number")))
}

fn unit_point(text: &str) -> Result<BigRational, Failure> {
    let q = rational_arg(text)?;
    if q < BigRational::zero() || q > BigRational::one() {
        return Err(Failure::Usage(format!("{text} lies outside [0,1]")));
    }
    Ok(q)
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let cfg = config(&cli.options)?;
    let json = cli.options.format == Format::Json;
    let oracle = cli.options.oracle;
    match &cli.command {
        Command::Roots { expr } => {
            let f = expression(expr)?;
            let zeros = roots::isolate_zeros(&f, &cfg)?;
            if oracle {
                crosscheck::roots(&f, &zeros)?;
            }
            Ok(match (&zeros, json) {
                (Zeros::ZeroFunction, true) => json!({"zero_function": true}).to_string(),
                (Zeros::ZeroFunction, false) => "zero function".into(),
                (Zeros::Divisor(d), true) => json!({"divisor": d.to_json()}).to_string(),
                (Zeros::Divisor(d), false) => divisor_table(d),
            })
        }
        Command::Deflate { expr, gamma, order } => {
            let f = expression(expr)?;
            let g = unit_point(gamma)?;
            if *order == 0 {
                return Err(Failure::Usage("order must be at least 1".into()));
            }
            check_analytic(&f, &cfg)?;
            let exact = taylor::taylor_coeffs_exact(&f, &g, *order, cfg.precision)?;
            let boxed =
                taylor::taylor_coeffs(&f, &Center::Rational(g.clone()), *order, cfg.precision)?;
            let dominated =
                taylor::domination_check(&boxed, &taylor::deflate(&boxed), cfg.precision);
            let coeffs = taylor::deflate(&exact);
            if oracle {
                crosscheck::deflate(&f, &g, &coeffs, cfg.precision)?;
            }
            Ok(if json {
                let list: Vec<Value> = coeffs
                    .iter()
                    .map(|c| scalar_json(c, cfg.precision))
                    .collect();
                json!({"gamma": exact_string(&g), "coefficients": list, "domination_check": dominated}).to_string()
            } else {
                let rows: Vec<(String, String, String)> = coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, c)| {
                        let (value, width) = scalar_text(c, cfg.precision);
                        (n.to_string(), value, width)
                    })
                    .collect();
                table(("n", "coefficient", "width"), &rows)
            })
        }
        Command::Eval { expr, point } => {
            let f = expression(expr)?;
            let at = unit_point(point)?;
            check_analytic(&f, &cfg)?;
            let v = taylor::eval_exact(&f, &at, cfg.precision)?;
            if oracle {
                crosscheck::eval(&f, &at, &v, cfg.precision)?;
            }
            Ok(if json {
                scalar_json(&v, cfg.precision).to_string()
            } else {
                let (value, width) = scalar_text(&v, cfg.precision);
                format!("{value}  width {width}")
            })
        }
        Command::Ideal(sub) => ideal_command(sub, &cfg, json, oracle),
    }
}

fn ideal_command(
    sub: &IdealCommand,
    cfg: &Config,
    json: bool,
    oracle: bool,
) -> Result<String, Failure> {
    let build = |text: &str| -> Result<(Expr, Ideal), Failure> {
        let f = expression(text)?;
        let i = ideals::from_generator(&f, cfg)?;
        if oracle {
            crosscheck::ideal(&f, &i)?;
        }
        Ok((f, i))
    };
    let show = |i: &Ideal| {
        if json {
            i.to_json().to_string()
        } else {
            ideal_text(i)
        }
    };
    let verdict = |b: bool| {
        if json {
            json!({"verdict": b}).to_string()
        } else {
            b.to_string()
        }
    };
    type Op = fn(&Ideal, &Ideal, &Config) -> Result<Ideal, IdealError>;
    let binary = |f: &str, g: &str, op: Op, kind: crosscheck::Op| -> Result<String, Failure> {
        let (fe, fi) = build(f)?;
        let (ge, gi) = build(g)?;
        let r = op(&fi, &gi, cfg)?;
        if oracle {
            crosscheck::binary(&fe, &ge, &r, kind)?;
        }
        Ok(show(&r))
    };
    match sub {
        IdealCommand::From { f } => Ok(show(&build(f)?.1)),
        IdealCommand::Sum { f, g } => binary(f, g, ideals::sum, crosscheck::Op::Sum),
        IdealCommand::Product { f, g } => binary(f, g, ideals::product, crosscheck::Op::Product),
        IdealCommand::Intersect { f, g } => {
            binary(f, g, ideals::intersect, crosscheck::Op::Intersect)
        }
        IdealCommand::Quotient { f, g } => binary(f, g, ideals::quotient, crosscheck::Op::Quotient),
        IdealCommand::Member { f, ideal } => {
            let fe = expression(f)?;
            let (ge, gi) = build(ideal)?;
            let b = ideals::membership(&fe, &gi, cfg)?;
            if oracle {
                crosscheck::membership(&fe, &ge, b)?;
            }
            Ok(verdict(b))
        }
        IdealCommand::Factor { f } => {
            let factors = ideals::factor_maximals(&build(f)?.1)?;
            Ok(if json {
                ideals::factors_json(&factors).to_string()
            } else {
                ideals::render_factors(&factors)
            })
        }
        IdealCommand::IsMaximal { f } => Ok(verdict(ideals::is_maximal(&build(f)?.1))),
        IdealCommand::IsPrime { f } => Ok(verdict(ideals::is_prime(&build(f)?.1))),
        IdealCommand::Radical { f } => {
            let (fe, fi) = build(f)?;
            let r = ideals::radical(&fi);
            if oracle {
                crosscheck::binary(&fe, &fe, &r, crosscheck::Op::Radical)?;
            }
            Ok(show(&r))
        }
        IdealCommand::Generator { f } => {
            let (_, i) = build(f)?;
            Ok(match (ideals::canonical_generator(&i), json) {
                (Generator::Expr(g), true) => json!({"generator": g.to_string()}).to_string(),
                (Generator::Expr(g), false) => g.to_string(),
                (Generator::Unrepresentable(fs), true) => {
                    json!({"generator": null, "unrepresentable": ideals::factors_json(&fs)})
                        .to_string()
                }
                (Generator::Unrepresentable(fs), false) => {
                    format!("unrepresentable: {}", ideals::render_factors(&fs))
                }
            })
        }
    }
}

fn scalar_json(v: &Scalar, prec: u32) -> Value {
    let mut j = interval_json(&v.enclosure(prec));
    if let Scalar::Exact(q) = v {
        j["exact"] = json!(q.to_string());
    }
    j
}

/// Exact form when known, else the decimal enclosure; plus the width.
fn scalar_text(v: &Scalar, prec: u32) -> (String, String) {
    let j = interval_json(&v.enclosure(prec));
    let field = |k: &str| j[k].as_str().unwrap_or_default().to_string();
    match v {
        Scalar::Exact(q) if q.pi_coeff.is_zero() => (q.to_string(), "0".into()),
        Scalar::Exact(q) => (
            format!("{q} in [{}, {}]", field("lo"), field("hi")),
            field("width"),
        ),
        Scalar::Approx(_) => (
            format!("[{}, {}]", field("lo"), field("hi")),
            field("width"),
        ),
    }
}

fn table(head: (&str, &str, &str), rows: &[(String, String, String)]) -> String {
    let w0 = rows
        .iter()
        .map(|r| r.0.len())
        .chain([head.0.len()])
        .max()
        .unwrap_or(0);
    let w1 = rows
        .iter()
        .map(|r| r.1.len())
        .chain([head.1.len()])
        .max()
        .unwrap_or(0);
    let mut lines = vec![format!("{:<w0$}  {:<w1$}  {}", head.0, head.1, head.2)];
    lines.extend(
        rows.iter()
            .map(|r| format!("{:<w0$}  {:<w1$}  {}", r.0, r.1, r.2)),
    );
    lines.join("\n")
}

fn divisor_table(d: &Divisor) -> String {
    if d.is_empty() {
        return "no zeros on [0,1]".into();
    }
    let rows: Vec<(String, String, String)> = d
        .entries()
        .iter()
        .map(|(p, m)| {
            let width = match p {
                roots::Point::Exact(_) => "exact".to_string(),
                roots::Point::Enclosure(e) => interval_json(&e.interval)["width"]
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
            };
            (p.to_string(), m.to_string(), width)
        })
        .collect();
    table(("point", "multiplicity", "width"), &rows)
}

fn ideal_text(i: &Ideal) -> String {
    match i {
        Ideal::Zero => "zero ideal".into(),
        Ideal::Principal { divisor, generator } => {
            let head = match generator {
                Some(g) => format!("ideal generated by {g}"),
                None => "ideal with divisor".to_string(),
            };
            if divisor.is_empty() {
                format!("{head}: unit ideal")
            } else {
                format!("{head}\n{}", divisor_table(divisor))
            }
        }
    }
}
