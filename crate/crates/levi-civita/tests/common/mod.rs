//! Shared helpers for the integration suites: a deterministic generator,
//! random field elements and polynomials, a symbolic-differentiation
//! oracle over the expression tree, and an adaptive quadrature oracle.
//! The oracles are independent of the code paths they check.

#![allow(dead_code)]

use levi_civita::exponent::Exponent;
use levi_civita::number::LcNumber;
use levi_civita::parse::{Expr, Func};

/// Small deterministic xorshift generator so suites are reproducible.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn f64_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn f64_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.f64_unit()
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn i64_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.f64_unit() < p
    }
}

/// A random field element: up to 8 terms, exponent denominators ≤ 4,
/// coefficients bounded away from zero.
pub fn random_lc(rng: &mut Rng) -> LcNumber {
    let n_terms = 1 + rng.usize_below(8);
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let den = rng.i64_in(1, 4);
        let num = rng.i64_in(-8, 8);
        let mag = rng.f64_in(0.25, 4.0);
        let coeff = if rng.chance(0.5) { mag } else { -mag };
        terms.push((Exponent::new(num, den), coeff));
    }
    LcNumber::from_terms(terms)
}

/// A random real polynomial, coefficients ascending.
pub fn random_real_poly(rng: &mut Rng, max_degree: usize) -> Vec<f64> {
    let deg = 1 + rng.usize_below(max_degree);
    (0..=deg)
        .map(|_| {
            let mag = rng.f64_in(0.2, 2.0);
            if rng.chance(0.5) {
                mag
            } else {
                -mag
            }
        })
        .collect()
}

/// Exact integral of a real polynomial over `[a, b]`.
pub fn poly_integral(coeffs: &[f64], a: f64, b: f64) -> f64 {
    let mut acc = 0.0;
    for (i, &c) in coeffs.iter().enumerate() {
        let k = i as f64 + 1.0;
        acc += c * (b.powf(k) - a.powf(k)) / k;
    }
    acc
}

pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Adaptive Simpson quadrature, an integration oracle independent of the
/// antiderivative path.
pub fn simpson<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson_step(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let m = (a + b) / 2.0;
        (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
    }
    fn recurse<F: Fn(f64) -> f64 + Copy>(
        f: F,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = (a + b) / 2.0;
        let left = simpson_step(f, a, m);
        let right = simpson_step(f, m, b);
        if depth > 40 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, m, left, tol / 2.0, depth + 1)
                + recurse(f, m, b, right, tol / 2.0, depth + 1)
        }
    }
    recurse(f, a, b, simpson_step(f, a, b), tol, 0)
}

/// Random composition of the autodiff-supported operations, built to stay
/// pole-free on `[-1, 1]`.
pub fn random_expr(rng: &mut Rng, depth: usize) -> Expr {
    if depth == 0 {
        return if rng.chance(0.6) {
            Expr::Var("x".into())
        } else {
            Expr::Literal(rng.f64_in(-2.0, 2.0))
        };
    }
    match rng.usize_below(8) {
        0 => Expr::Add(
            Box::new(random_expr(rng, depth - 1)),
            Box::new(random_expr(rng, depth - 1)),
        ),
        1 => Expr::Sub(
            Box::new(random_expr(rng, depth - 1)),
            Box::new(random_expr(rng, depth - 1)),
        ),
        2 => Expr::Mul(
            Box::new(random_expr(rng, depth - 1)),
            Box::new(random_expr(rng, depth - 1)),
        ),
        // Division with a denominator bounded below by 2 on the reals.
        3 => Expr::Div(
            Box::new(random_expr(rng, depth - 1)),
            Box::new(Expr::Add(
                Box::new(Expr::Literal(rng.f64_in(2.0, 4.0))),
                Box::new(Expr::Pow(
                    Box::new(random_expr(rng, depth - 1)),
                    Exponent::int(2),
                )),
            )),
        ),
        4 => Expr::Pow(
            Box::new(random_expr(rng, depth - 1)),
            Exponent::int(rng.i64_in(2, 3)),
        ),
        // Elementary calls with damped arguments to avoid overflow.
        5 => Expr::Call(
            Func::Exp,
            Box::new(Expr::Mul(
                Box::new(Expr::Literal(0.3)),
                Box::new(random_expr(rng, depth - 1)),
            )),
        ),
        6 => Expr::Call(Func::Sin, Box::new(random_expr(rng, depth - 1))),
        _ => Expr::Call(Func::Cos, Box::new(random_expr(rng, depth - 1))),
    }
}

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Literal(c) if *c == 0.0)
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Literal(c) if *c == 1.0)
}

// Smart constructors with constant folding, so repeated differentiation
// does not blow the oracle tree up.
fn add(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        b
    } else if is_zero(&b) {
        a
    } else {
        Expr::Add(Box::new(a), Box::new(b))
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    if is_zero(&b) {
        a
    } else if is_zero(&a) {
        Expr::Neg(Box::new(b))
    } else {
        Expr::Sub(Box::new(a), Box::new(b))
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) || is_zero(&b) {
        Expr::Literal(0.0)
    } else if is_one(&a) {
        b
    } else if is_one(&b) {
        a
    } else {
        Expr::Mul(Box::new(a), Box::new(b))
    }
}

/// Symbolic differentiation over the expression tree: the independent
/// oracle for derivative extraction.
pub fn symbolic_diff(e: &Expr, var: &str) -> Expr {
    let zero = || Expr::Literal(0.0);
    match e {
        Expr::Literal(_) | Expr::D => zero(),
        Expr::Var(name) => {
            if name == var {
                Expr::Literal(1.0)
            } else {
                zero()
            }
        }
        Expr::Neg(a) => {
            let da = symbolic_diff(a, var);
            if is_zero(&da) {
                da
            } else {
                Expr::Neg(Box::new(da))
            }
        }
        Expr::Add(a, b) => add(symbolic_diff(a, var), symbolic_diff(b, var)),
        Expr::Sub(a, b) => sub(symbolic_diff(a, var), symbolic_diff(b, var)),
        Expr::Mul(a, b) => add(
            mul(symbolic_diff(a, var), (**b).clone()),
            mul((**a).clone(), symbolic_diff(b, var)),
        ),
        Expr::Div(a, b) => {
            let num = sub(
                mul(symbolic_diff(a, var), (**b).clone()),
                mul((**a).clone(), symbolic_diff(b, var)),
            );
            if is_zero(&num) {
                zero()
            } else {
                Expr::Div(
                    Box::new(num),
                    Box::new(Expr::Pow(b.clone(), Exponent::int(2))),
                )
            }
        }
        Expr::Pow(a, r) => {
            // (a^r)' = r · a^(r−1) · a'
            let reduced = *r - Exponent::int(1);
            let power = if reduced == Exponent::int(1) {
                (**a).clone()
            } else {
                Expr::Pow(a.clone(), reduced)
            };
            mul(
                mul(Expr::Literal(r.as_f64()), power),
                symbolic_diff(a, var),
            )
        }
        Expr::Call(Func::Exp, a) => mul(Expr::Call(Func::Exp, a.clone()), symbolic_diff(a, var)),
        Expr::Call(Func::Sin, a) => mul(Expr::Call(Func::Cos, a.clone()), symbolic_diff(a, var)),
        Expr::Call(Func::Cos, a) => {
            let inner = mul(Expr::Call(Func::Sin, a.clone()), symbolic_diff(a, var));
            if is_zero(&inner) {
                zero()
            } else {
                Expr::Neg(Box::new(inner))
            }
        }
        Expr::Call(Func::Sh, a) | Expr::Call(Func::Val, a) => {
            let _ = a;
            unreachable!("oracle expressions do not use sh/val")
        }
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Runs the `lc` binary with the given arguments and returns
/// `(exit_code, stdout, stderr)`.
pub fn run_lc(args: &[&str]) -> (i32, String, String) {
    run_lc_env(args, &[])
}

pub fn run_lc_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_lc"));
    cmd.args(args);
    cmd.env_remove("LC_DEFAULT_HORIZON");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("lc binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}
