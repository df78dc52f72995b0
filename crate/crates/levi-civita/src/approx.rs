//! Representing real functions: Chebyshev near-best polynomial
//! approximants of continuous functions, canonical extensions of real
//! polynomials, and midpoint step-function approximants. These supply the
//! weakly Cauchy sequences through which real functions act in pairings.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::measure::{Interval, PiecewiseSimple};
use crate::number::LcNumber;
use crate::series::PowerSeries;

/// Smoothness annotation for a real function handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Smoothness {
    Continuous,
    CK(u32),
    Analytic,
}

/// A real function on a closed interval, given by an evaluator.
#[derive(Clone)]
pub struct RealFunction {
    evaluator: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    domain: (f64, f64),
    smoothness: Smoothness,
}

impl RealFunction {
    pub fn new(
        domain: (f64, f64),
        smoothness: Smoothness,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        assert!(domain.0 < domain.1, "domain must be a nondegenerate interval");
        RealFunction { evaluator: Arc::new(f), domain, smoothness }
    }

    pub fn continuous(domain: (f64, f64), f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        RealFunction::new(domain, Smoothness::Continuous, f)
    }

    pub fn analytic(domain: (f64, f64), f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        RealFunction::new(domain, Smoothness::Analytic, f)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.evaluator)(x)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }
}

impl std::fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RealFunction")
            .field("domain", &self.domain)
            .field("smoothness", &self.smoothness)
            .finish_non_exhaustive()
    }
}

/// A real polynomial in the monomial basis (ascending degree) together
/// with the interval it approximates on.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealPolynomial {
    pub coeffs: Vec<f64>,
    pub domain: (f64, f64),
}

impl RealPolynomial {
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|&c| c != 0.0)
            .unwrap_or(0)
    }

    /// Coefficient-wise antiderivative with zero constant.
    pub fn antiderivative(&self) -> RealPolynomial {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / (i as f64 + 1.0));
        }
        RealPolynomial { coeffs, domain: self.domain }
    }
}

/// Degree-`n` Chebyshev interpolant of `f` on its domain: a near-best
/// uniform approximation whose error tends to zero for continuous `f`.
pub fn chebyshev_approx(f: &RealFunction, n: usize) -> RealPolynomial {
    let (a, b) = f.domain;
    let m = n + 1;
    // Chebyshev–Gauss nodes and sampled values.
    let nodes: Vec<f64> = (0..m)
        .map(|j| (std::f64::consts::PI * (2.0 * j as f64 + 1.0) / (2.0 * m as f64)).cos())
        .collect();
    let values: Vec<f64> = nodes
        .iter()
        .map(|&t| f.eval(a + (b - a) * (t + 1.0) / 2.0))
        .collect();
    // Chebyshev coefficients by discrete orthogonality.
    let mut cheb = vec![0.0f64; m];
    for (k, ck) in cheb.iter_mut().enumerate() {
        let mut s = 0.0;
        for j in 0..m {
            let theta = std::f64::consts::PI * (2.0 * j as f64 + 1.0) / (2.0 * m as f64);
            s += values[j] * (k as f64 * theta).cos();
        }
        *ck = s * if k == 0 { 1.0 } else { 2.0 } / m as f64;
    }
    // Convert Σ c_k T_k(t) to monomials in t via the three-term recurrence.
    let mut mono_t = vec![0.0f64; m];
    let mut t_prev = vec![1.0f64]; // T_0
    let mut t_cur = vec![0.0, 1.0]; // T_1
    for (k, &ck) in cheb.iter().enumerate() {
        let tk: &[f64] = match k {
            0 => &t_prev,
            1 => &t_cur,
            _ => {
                // T_{k} = 2 t T_{k−1} − T_{k−2}
                let mut next = vec![0.0; k + 1];
                for (i, &c) in t_cur.iter().enumerate() {
                    next[i + 1] += 2.0 * c;
                }
                for (i, &c) in t_prev.iter().enumerate() {
                    next[i] -= c;
                }
                t_prev = std::mem::replace(&mut t_cur, next);
                &t_cur
            }
        };
        for (i, &c) in tk.iter().enumerate() {
            mono_t[i] += ck * c;
        }
    }
    // Substitute t = αx + β with α = 2/(b−a), β = −(a+b)/(b−a).
    let alpha = 2.0 / (b - a);
    let beta = -(a + b) / (b - a);
    let mut out = vec![0.0f64; m];
    // Horner over polynomials: out = (((c_m) · (αx+β) + c_{m−1}) · … ).
    for &c in mono_t.iter().rev() {
        // out = out * (αx + β) + c
        let mut next = vec![0.0f64; m];
        for (i, &o) in out.iter().enumerate() {
            if o == 0.0 {
                continue;
            }
            next[i] += o * beta;
            if i + 1 < m {
                next[i + 1] += o * alpha;
            }
        }
        next[0] += c;
        out = next;
    }
    RealPolynomial { coeffs: out, domain: (a, b) }
}

/// The canonical extension of a real polynomial: one piece over
/// `[a, b]` in the field, agreeing with the polynomial at real points.
pub fn extend_polynomial(p: &RealPolynomial) -> PiecewiseSimple {
    let (a, b) = p.domain;
    PiecewiseSimple::new(vec![(
        Interval::closed_real(a, b),
        PowerSeries::real_polynomial(&p.coeffs),
    )])
    .expect("real interval endpoints are always comparable")
}

/// Midpoint step-function approximant on `2^n` equal subintervals.
pub fn step_approx(f: &RealFunction, n: u32) -> Result<PiecewiseSimple> {
    let (a, b) = f.domain;
    let parts = 1usize << n;
    let width = (b - a) / parts as f64;
    let mut pieces = Vec::with_capacity(parts);
    for k in 0..parts {
        let lo = a + width * k as f64;
        let hi = if k + 1 == parts { b } else { a + width * (k as f64 + 1.0) };
        let interval = Interval::new(
            LcNumber::from_real(lo),
            LcNumber::from_real(hi),
            true,
            k + 1 == parts,
        )?;
        let mid = lo + (hi - lo) / 2.0;
        pieces.push((interval, PowerSeries::constant(LcNumber::from_real(f.eval(mid)))));
    }
    PiecewiseSimple::new(pieces)
}
