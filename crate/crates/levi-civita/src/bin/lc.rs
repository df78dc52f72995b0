//! `lc`: command-line front end for Levi-Civita field computations.
//!
//! Exit codes: 0 success, 2 syntax error, 3 domain/evaluation error,
//! 4 identity violation in a `dirac` demo.

use std::collections::HashMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use levi_civita::approx::RealFunction;
use levi_civita::dist::{
    dirac_bump, dirac_heaviside_product_check, heaviside, moment_identity, pair_derivative,
    PairingReport,
};
use levi_civita::error::Error;
use levi_civita::exponent::{Exponent, Valuation};
use levi_civita::lp::{lp_norm, weak_limit, LimitVerdict, LpExponent, NumberSequence};
use levi_civita::measure::{Interval, MeasurableSet, PiecewiseSimple};
use levi_civita::number::LcNumber;
use levi_civita::parse::{eval_expr, eval_real, expr_to_polynomial, parse, EvalValue, Expr};
use levi_civita::series::{derivatives_at, PowerSeries};

#[derive(Parser)]
#[command(name = "lc", version, about = "Levi-Civita field calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: Config,
}

#[derive(Args, Clone)]
struct Config {
    /// Working horizon as a rational `p/q` (or `inf`); defaults to
    /// `LC_DEFAULT_HORIZON` or 12.
    #[arg(long, global = true)]
    horizon: Option<String>,
    /// Tolerance for pairing stabilization and identity checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Chebyshev degree schedule for pairings.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [2usize, 4, 8, 16, 32])]
    schedule: Vec<usize>,
}

impl Config {
    fn horizon(&self) -> Result<Valuation, Error> {
        match &self.horizon {
            Some(s) => s.parse(),
            None => match std::env::var("LC_DEFAULT_HORIZON") {
                Ok(s) => s.parse(),
                Err(_) => Ok(Valuation::finite(12)),
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression.
    Eval { expr: String },
    /// Derivatives of an expression in `x` at a real point.
    Diff {
        expr: String,
        #[arg(long)]
        at: f64,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Integrate a polynomial expression in `x` over a real interval.
    Integrate {
        expr: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
    },
    /// L^p norm of a polynomial expression in `x` over a real interval.
    Norm {
        expr: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value = "2")]
        p: String,
    },
    /// Weak-limit verdict for a built-in sequence family.
    Seq {
        /// one-over-n | shifted-reciprocal | linear-d | escaping
        family: String,
        #[arg(long, default_value_t = 8)]
        cutoff: i64,
        #[arg(long, default_value_t = 512)]
        n_max: usize,
        #[arg(long, default_value_t = 1e-2)]
        seq_tol: f64,
    },
    /// Distribution demos: product, moments, derivative.
    Dirac {
        #[command(subcommand)]
        demo: DiracDemo,
    },
}

#[derive(Subcommand)]
enum DiracDemo {
    /// H·δ paired with a test function: expects f(0)/2.
    Product {
        #[arg(long, default_value = "cos(x)")]
        f: String,
    },
    /// ∫ (H^m − H^n)·δ: expects 1/(m+1) − 1/(n+1).
    Moments {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// k-th derivative pairing: expects (−1)^k f(at).
    Derivative {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "cos(x)")]
        f: String,
        #[arg(long, default_value_t = 0.0)]
        at: f64,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Syntax { .. } => 2,
        _ => 3,
    }
}

fn print_error(err: &Error) {
    match err {
        Error::Syntax { offset, expected } => {
            eprintln!("1:{}: syntax error: expected {expected}", offset + 1);
        }
        other => eprintln!("error: {other}"),
    }
}

#[derive(Serialize)]
struct EvalOutput {
    command: &'static str,
    expr: String,
    horizon: Valuation,
    result: serde_json::Value,
    text: String,
}

#[derive(Serialize)]
struct DiffOutput {
    command: &'static str,
    expr: String,
    at: f64,
    derivatives: Vec<f64>,
}

#[derive(Serialize)]
struct NumberOutput {
    command: &'static str,
    expr: String,
    from: f64,
    to: f64,
    p: Option<String>,
    result: LcNumber,
    text: String,
}

#[derive(Serialize)]
struct SeqOutput {
    command: &'static str,
    family: String,
    #[serde(flatten)]
    verdict: LimitVerdict,
}

#[derive(Serialize)]
struct DiracOutput {
    command: &'static str,
    demo: &'static str,
    identity: String,
    m: Option<u32>,
    n: Option<u32>,
    k: Option<u32>,
    expected: String,
    expected_value: f64,
    computed: Option<LcNumber>,
    limit: Option<f64>,
    defect: f64,
    schedule_values: Option<PairingReport>,
    pass: bool,
}

fn eval_value_json(v: &EvalValue) -> serde_json::Value {
    match v {
        EvalValue::Number(x) => serde_json::to_value(x).expect("number serializes"),
        EvalValue::PosInfinity => serde_json::Value::String("+inf".into()),
        EvalValue::NegInfinity => serde_json::Value::String("-inf".into()),
    }
}

fn eval_value_text(v: &EvalValue) -> String {
    match v {
        EvalValue::Number(x) => x.to_string(),
        EvalValue::PosInfinity => "+inf".to_string(),
        EvalValue::NegInfinity => "-inf".to_string(),
    }
}

fn polynomial_on(expr: &Expr, from: f64, to: f64, target: Valuation) -> Result<PiecewiseSimple, Error> {
    if !(from < to) {
        return Err(Error::Domain("`--from` must be below `--to`".into()));
    }
    let coeffs = expr_to_polynomial(expr, "x", target)?;
    PiecewiseSimple::new(vec![(
        Interval::closed_real(from, to),
        PowerSeries::polynomial(LcNumber::zero(), coeffs),
    )])
}

fn test_function(expr_src: &str) -> Result<(Expr, RealFunction), Error> {
    let expr = parse(expr_src)?;
    let check = eval_real(&expr, "x", 0.0)?;
    if !check.is_finite() {
        return Err(Error::Domain("test function is not finite at 0".into()));
    }
    let inner = expr.clone();
    let f = RealFunction::continuous((-1.0, 1.0), move |x| {
        eval_real(&inner, "x", x).unwrap_or(f64::NAN)
    });
    Ok((expr, f))
}

fn run(cli: Cli) -> Result<u8, Error> {
    let cfg = &cli.config;
    let target = cfg.horizon()?;
    match cli.command {
        Command::Eval { expr } => {
            let tree = parse(&expr)?;
            let value = eval_expr(&tree, &HashMap::new(), target)?;
            if cfg.json {
                let out = EvalOutput {
                    command: "eval",
                    expr,
                    horizon: target,
                    result: eval_value_json(&value),
                    text: eval_value_text(&value),
                };
                println!("{}", serde_json::to_string(&out).expect("serializable"));
            } else {
                println!("{}", eval_value_text(&value));
            }
            Ok(0)
        }
        Command::Diff { expr, at, order } => {
            let tree = parse(&expr)?;
            let derivs = derivatives_at(
                |x, t| {
                    let mut env = HashMap::new();
                    env.insert("x".to_string(), x.clone());
                    eval_expr(&tree, &env, t)?.into_number()
                },
                at,
                order,
            )?;
            if cfg.json {
                let out = DiffOutput { command: "diff", expr, at, derivatives: derivs };
                println!("{}", serde_json::to_string(&out).expect("serializable"));
            } else {
                for (i, v) in derivs.iter().enumerate() {
                    println!("f^({i})({at}) = {v}");
                }
            }
            Ok(0)
        }
        Command::Integrate { expr, from, to } => {
            let tree = parse(&expr)?;
            let f = polynomial_on(&tree, from, to, target)?;
            let v = f.integrate(&MeasurableSet::interval_real(from, to))?;
            if cfg.json {
                let out = NumberOutput {
                    command: "integrate",
                    expr,
                    from,
                    to,
                    p: None,
                    text: v.to_string(),
                    result: v,
                };
                println!("{}", serde_json::to_string(&out).expect("serializable"));
            } else {
                println!("{v}");
            }
            Ok(0)
        }
        Command::Norm { expr, from, to, p } => {
            let lp: LpExponent = p.parse()?;
            let tree = parse(&expr)?;
            let f = polynomial_on(&tree, from, to, target)?;
            let v = lp_norm(&f, &MeasurableSet::interval_real(from, to), lp, target)?;
            if cfg.json {
                let out = NumberOutput {
                    command: "norm",
                    expr,
                    from,
                    to,
                    p: Some(p),
                    text: v.to_string(),
                    result: v,
                };
                println!("{}", serde_json::to_string(&out).expect("serializable"));
            } else {
                println!("{v}");
            }
            Ok(0)
        }
        Command::Seq { family, cutoff, n_max, seq_tol } => {
            let seq = match family.as_str() {
                "one-over-n" => NumberSequence::new("1/(n+1)", |n| {
                    LcNumber::from_real(1.0 / (n as f64 + 1.0))
                }),
                "shifted-reciprocal" => NumberSequence::new("1/((n+1)d) - 1", |n| {
                    &LcNumber::monomial(1.0 / (n as f64 + 1.0), -1) - &LcNumber::one()
                }),
                "linear-d" => {
                    NumberSequence::new("(n+1)d", |n| LcNumber::monomial(n as f64 + 1.0, 1))
                }
                "escaping" => NumberSequence::new("d^-(n+1)/(n+1)", |n| {
                    let k = n as i64 + 1;
                    LcNumber::monomial(1.0 / k as f64, Exponent::int(-k))
                }),
                other => {
                    return Err(Error::Domain(format!(
                        "unknown sequence family `{other}`; use one-over-n, shifted-reciprocal, linear-d or escaping"
                    )))
                }
            };
            let verdict = weak_limit(&seq, Exponent::int(cutoff), seq_tol, n_max);
            if cfg.json {
                let out = SeqOutput { command: "seq", family, verdict };
                println!("{}", serde_json::to_string(&out).expect("serializable"));
            } else {
                match &verdict {
                    LimitVerdict::Limit { value, regular, .. } => {
                        let flag = if *regular { "" } else { " (non-regular)" };
                        println!("limit: {value}{flag}");
                    }
                    LimitVerdict::NoLimit { .. } => println!("no limit detected"),
                    LimitVerdict::Divergent { .. } => println!("divergent"),
                }
            }
            Ok(0)
        }
        Command::Dirac { demo } => run_dirac(demo, cfg),
    }
}

fn run_dirac(demo: DiracDemo, cfg: &Config) -> Result<u8, Error> {
    let origin = LcNumber::zero();
    let width = LcNumber::d();
    match demo {
        DiracDemo::Product { f } => {
            let (expr, func) = test_function(&f)?;
            let bump = dirac_bump(&origin, &width)?;
            let h = heaviside(&bump)?;
            let report = dirac_heaviside_product_check(&bump, &h, &func, &cfg.schedule, cfg.tol)?;
            let expected = eval_real(&expr, "x", 0.0)? / 2.0;
            let limit = report.limit.unwrap_or(f64::NAN);
            let defect = (limit - expected).abs();
            let pass = report.converged && defect <= cfg.tol;
            emit_dirac(
                cfg,
                DiracOutput {
                    command: "dirac",
                    demo: "product",
                    identity: "lim ∫ (H·δ)·ext(p_n) = f(0)/2".into(),
                    m: None,
                    n: None,
                    k: None,
                    expected: format!("{expected}"),
                    expected_value: expected,
                    computed: None,
                    limit: report.limit,
                    defect,
                    schedule_values: Some(report),
                    pass,
                },
            )
        }
        DiracDemo::Moments { m, n } => {
            let bump = dirac_bump(&origin, &width)?;
            let h = heaviside(&bump)?;
            let v = moment_identity(&bump, &h, m, n)?;
            let expected = 1.0 / (m as f64 + 1.0) - 1.0 / (n as f64 + 1.0);
            let defect = (v.std_part() - expected).abs();
            let pass = defect <= 1e-12;
            emit_dirac(
                cfg,
                DiracOutput {
                    command: "dirac",
                    demo: "moments",
                    identity: "∫ (H^m − H^n)·δ = 1/(m+1) − 1/(n+1)".into(),
                    m: Some(m),
                    n: Some(n),
                    k: None,
                    expected: format!("1/{} - 1/{}", m + 1, n + 1),
                    expected_value: expected,
                    computed: Some(v),
                    limit: None,
                    defect,
                    schedule_values: None,
                    pass,
                },
            )
        }
        DiracDemo::Derivative { k, f, at } => {
            let (expr, func) = test_function(&f)?;
            let bump = dirac_bump_for_order(&LcNumber::from_real(at), &width, k)?;
            let report = pair_derivative(&bump, k, &func, &cfg.schedule, cfg.tol)?;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let expected = sign * eval_real(&expr, "x", at)?;
            let limit = report.limit.unwrap_or(f64::NAN);
            let defect = (limit - expected).abs();
            let pass = report.converged && defect <= cfg.tol;
            emit_dirac(
                cfg,
                DiracOutput {
                    command: "dirac",
                    demo: "derivative",
                    identity: "lim ∫ δ^(k)·ext(P_n) = (−1)^k f(r)".into(),
                    m: None,
                    n: None,
                    k: Some(k),
                    expected: format!("{expected}"),
                    expected_value: expected,
                    computed: None,
                    limit: report.limit,
                    defect,
                    schedule_values: Some(report),
                    pass,
                },
            )
        }
    }
}

fn dirac_bump_for_order(r: &LcNumber, h: &LcNumber, k: u32) -> Result<levi_civita::dist::DiracLike, Error> {
    levi_civita::dist::dirac_bump_of_class(r, h, k.max(1))
}

fn emit_dirac(cfg: &Config, out: DiracOutput) -> Result<u8, Error> {
    let pass = out.pass;
    if cfg.json {
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        println!("identity: {}", out.identity);
        if let Some(v) = &out.computed {
            println!("computed: {v}");
        }
        if let Some(l) = out.limit {
            println!("limit:    {l}");
        }
        println!("expected: {}", out.expected_value);
        println!("defect:   {:e}", out.defect);
        println!("{}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { 4 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            print_error(&err);
            ExitCode::from(exit_code_for(&err))
        }
    }
}
