//! Power series: the simple functions of the measure theory.
//!
//! A series holds a center, finitely many coefficients, a kind and an
//! optional real convergence radius. `Polynomial` series evaluate exactly;
//! `Truncation` series stand for a prefix of an infinite object (such as
//! an elementary function's Maclaurin expansion) and their evaluation
//! carries a finite horizon.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Valuation};
use crate::number::LcNumber;

/// What the coefficient list stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// The list is the whole function; evaluation is exact.
    Polynomial,
    /// The list truncates an infinite expansion of `source` at `order`.
    Truncation { source: String, order: usize },
}

/// A power series `Σ aᵢ (x − center)ⁱ` with finitely many stored
/// coefficients.
#[derive(Clone, Debug)]
pub struct PowerSeries {
    center: LcNumber,
    coeffs: Vec<LcNumber>,
    kind: SeriesKind,
    real_radius: Option<f64>,
}

impl PowerSeries {
    pub fn polynomial(center: LcNumber, coeffs: Vec<LcNumber>) -> Self {
        PowerSeries { center, coeffs, kind: SeriesKind::Polynomial, real_radius: None }
    }

    /// A truncation of an infinite expansion; `order = coeffs.len() − 1`.
    pub fn truncation(center: LcNumber, coeffs: Vec<LcNumber>, source: impl Into<String>) -> Self {
        let order = coeffs.len().saturating_sub(1);
        PowerSeries {
            center,
            coeffs,
            kind: SeriesKind::Truncation { source: source.into(), order },
            real_radius: None,
        }
    }

    /// Attaches a real convergence radius. Evaluation then insists that
    /// the offset's standard part stays strictly inside it.
    pub fn with_radius(mut self, r: f64) -> Self {
        assert!(r > 0.0);
        self.real_radius = Some(r);
        self
    }

    pub fn constant(c: LcNumber) -> Self {
        PowerSeries::polynomial(LcNumber::zero(), vec![c])
    }

    /// The identity `x` centered at 0.
    pub fn identity() -> Self {
        PowerSeries::polynomial(LcNumber::zero(), vec![LcNumber::zero(), LcNumber::one()])
    }

    /// A real-coefficient polynomial centered at 0, coefficients ascending.
    pub fn real_polynomial(coeffs: &[f64]) -> Self {
        PowerSeries::polynomial(
            LcNumber::zero(),
            coeffs.iter().map(|&c| LcNumber::from_real(c)).collect(),
        )
    }

    pub fn center(&self) -> &LcNumber {
        &self.center
    }

    pub fn coeffs(&self) -> &[LcNumber] {
        &self.coeffs
    }

    pub fn kind(&self) -> &SeriesKind {
        &self.kind
    }

    pub fn real_radius(&self) -> Option<f64> {
        self.real_radius
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.kind, SeriesKind::Polynomial)
    }

    /// All coefficients known to be exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the highest nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.terms().is_empty())
    }

    /// Evaluates the series at `x`, summing until the tail falls beyond
    /// `target`. Polynomial series sum every term exactly.
    pub fn eval(&self, x: &LcNumber, target: Valuation) -> Result<LcNumber> {
        let off = x - &self.center;
        if let Some(r) = self.real_radius {
            if !(off.std_part().abs() < r) {
                return Err(Error::NotInWeakConvergenceRegion);
            }
        }
        let cap = match &self.kind {
            SeriesKind::Polynomial => Valuation::Infinite,
            SeriesKind::Truncation { order, .. } => {
                match off.valuation_floor() {
                    Valuation::Finite(q) if !q.is_positive() => {
                        return Err(Error::NonInfinitesimalOffset)
                    }
                    _ => {}
                }
                if off.is_zero() {
                    // Exact at the center: no tail beyond the constant term.
                    Valuation::Infinite
                } else if target.is_infinite() {
                    return Err(Error::NonTerminating);
                } else {
                    target.min(off.valuation_floor() * (*order as i64 + 1))
                }
            }
        };
        let truncating = !cap.is_infinite();
        // Tail bound for the early stop: terms can only reach below the
        // running power's valuation by the smallest coefficient valuation.
        let min_cv = self
            .coeffs
            .iter()
            .map(|c| c.valuation_floor())
            .min()
            .unwrap_or(Valuation::Infinite);
        let mut acc = LcNumber::zero();
        let mut pw = LcNumber::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                pw = &pw * &off;
                if truncating {
                    pw = pw.truncated(cap);
                }
                if truncating && pw.valuation_floor() + min_cv >= cap {
                    break;
                }
            }
            acc = &acc + &(a * &pw);
        }
        if truncating {
            acc = acc.truncated(cap);
        }
        Ok(acc)
    }

    /// Term-wise derivative.
    pub fn derivative(&self) -> PowerSeries {
        let coeffs: Vec<LcNumber> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.scale(i as f64))
            .collect();
        let kind = match &self.kind {
            SeriesKind::Polynomial => SeriesKind::Polynomial,
            SeriesKind::Truncation { source, order } => SeriesKind::Truncation {
                source: source.clone(),
                order: order.saturating_sub(1),
            },
        };
        PowerSeries { center: self.center.clone(), coeffs, kind, real_radius: self.real_radius }
    }

    /// Term-wise antiderivative with zero constant term.
    pub fn antiderivative(&self) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(LcNumber::zero());
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs.push(a.scale(1.0 / (i as f64 + 1.0)));
        }
        let kind = match &self.kind {
            SeriesKind::Polynomial => SeriesKind::Polynomial,
            SeriesKind::Truncation { source, order } => {
                SeriesKind::Truncation { source: source.clone(), order: order + 1 }
            }
        };
        PowerSeries { center: self.center.clone(), coeffs, kind, real_radius: self.real_radius }
    }

    fn combined_kind(&self, other: &PowerSeries) -> SeriesKind {
        match (&self.kind, &other.kind) {
            (SeriesKind::Polynomial, SeriesKind::Polynomial) => SeriesKind::Polynomial,
            (SeriesKind::Truncation { source, order }, SeriesKind::Polynomial)
            | (SeriesKind::Polynomial, SeriesKind::Truncation { source, order }) => {
                SeriesKind::Truncation { source: source.clone(), order: *order }
            }
            (
                SeriesKind::Truncation { source: sa, order: oa },
                SeriesKind::Truncation { source: sb, order: ob },
            ) => SeriesKind::Truncation {
                source: format!("{sa}*{sb}"),
                order: *oa.min(ob),
            },
        }
    }

    fn combined_radius(&self, other: &PowerSeries) -> Option<f64> {
        match (self.real_radius, other.real_radius) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (r, None) | (None, r) => r,
        }
    }

    fn same_center(&self, other: &PowerSeries) -> bool {
        (&self.center - &other.center).is_zero()
    }

    /// Re-expands the polynomial around `new_center` (Taylor shift).
    pub fn recenter(&self, new_center: &LcNumber) -> PowerSeries {
        let s = new_center - &self.center;
        if s.is_zero() {
            let mut out = self.clone();
            out.center = new_center.clone();
            return out;
        }
        let n = self.coeffs.len();
        let mut out = vec![LcNumber::zero(); n];
        // b_j = Σ_{i≥j} C(i,j) a_i s^{i−j}
        for j in 0..n {
            let mut binom = 1.0f64;
            let mut spow = LcNumber::one();
            let mut acc = LcNumber::zero();
            for i in j..n {
                if i > j {
                    binom = binom * i as f64 / (i - j) as f64;
                    spow = &spow * &s;
                }
                acc = &acc + &self.coeffs[i].scale(binom) * &spow;
            }
            out[j] = acc;
        }
        PowerSeries {
            center: new_center.clone(),
            coeffs: out,
            kind: self.kind.clone(),
            real_radius: self.real_radius,
        }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let other = if self.same_center(other) {
            other.clone()
        } else {
            other.recenter(&self.center)
        };
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = LcNumber::zero();
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
            })
            .collect();
        PowerSeries {
            center: self.center.clone(),
            coeffs,
            kind: self.combined_kind(&other),
            real_radius: self.combined_radius(&other),
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        self.add(&other.scale_real(-1.0))
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let other = if self.same_center(other) {
            other.clone()
        } else {
            other.recenter(&self.center)
        };
        if self.is_zero() || other.is_zero() {
            return PowerSeries {
                center: self.center.clone(),
                coeffs: vec![LcNumber::zero()],
                kind: self.combined_kind(&other),
                real_radius: self.combined_radius(&other),
            };
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![LcNumber::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.terms().is_empty() && a.is_exact() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PowerSeries {
            center: self.center.clone(),
            coeffs,
            kind: self.combined_kind(&other),
            real_radius: self.combined_radius(&other),
        }
    }

    pub fn scale(&self, c: &LcNumber) -> PowerSeries {
        PowerSeries {
            center: self.center.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            kind: self.kind.clone(),
            real_radius: self.real_radius,
        }
    }

    pub fn scale_real(&self, c: f64) -> PowerSeries {
        PowerSeries {
            center: self.center.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
            kind: self.kind.clone(),
            real_radius: self.real_radius,
        }
    }

    pub fn pow(&self, m: u32) -> PowerSeries {
        let mut acc = PowerSeries {
            center: self.center.clone(),
            coeffs: vec![LcNumber::one()],
            kind: SeriesKind::Polynomial,
            real_radius: self.real_radius,
        };
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }

    /// Structural coefficient equality after recentering, exact.
    pub fn same_function(&self, other: &PowerSeries) -> bool {
        self.sub(other).is_zero()
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PowerSeries", 3)?;
        st.serialize_field("center", &self.center)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.serialize_field("radius", &self.real_radius)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            center: LcNumber,
            coeffs: Vec<LcNumber>,
            radius: Option<f64>,
        }
        let w = Wire::deserialize(deserializer)?;
        let mut s = PowerSeries::polynomial(w.center, w.coeffs);
        if let Some(r) = w.radius {
            s = s.with_radius(r);
        }
        Ok(s)
    }
}

/// The elementary functions with canonical extensions to `λ(x) ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Exp,
    Sin,
    Cos,
}

fn exp_series(eps: &LcNumber, cap: Valuation) -> LcNumber {
    let mut sum = LcNumber::one();
    let mut term = LcNumber::one();
    let mut i = 0u64;
    loop {
        i += 1;
        term = (&term * eps).scale(1.0 / i as f64).truncated(cap);
        sum = &sum + &term;
        if term.terms().is_empty() {
            return sum;
        }
    }
}

fn cos_series(eps: &LcNumber, cap: Valuation) -> LcNumber {
    let eps2 = (eps * eps).truncated(cap);
    let mut sum = LcNumber::one();
    let mut term = LcNumber::one();
    let mut k = 0u64;
    loop {
        let denom = ((2 * k + 1) * (2 * k + 2)) as f64;
        term = (&term * &eps2).scale(-1.0 / denom).truncated(cap);
        sum = &sum + &term;
        k += 1;
        if term.terms().is_empty() {
            return sum;
        }
    }
}

fn sin_series(eps: &LcNumber, cap: Valuation) -> LcNumber {
    let eps2 = (eps * eps).truncated(cap);
    let mut sum = eps.truncated(cap);
    let mut term = sum.clone();
    let mut k = 0u64;
    loop {
        let denom = ((2 * k + 2) * (2 * k + 3)) as f64;
        term = (&term * &eps2).scale(-1.0 / denom).truncated(cap);
        sum = &sum + &term;
        k += 1;
        if term.terms().is_empty() {
            return sum;
        }
    }
}

/// Canonical extension of `exp`, `sin` or `cos` at a point with
/// `λ(x) ≥ 0`, splitting `x = r + ε` and applying the functional
/// identities with Maclaurin tails computed to `target`.
pub fn elementary(f: Elementary, x: &LcNumber, target: Valuation) -> Result<LcNumber> {
    if let Some((q, _)) = x.leading() {
        if q.is_negative() {
            return Err(Error::Domain(format!(
                "canonical extensions are defined for λ(x) ≥ 0, got λ = {q}"
            )));
        }
    }
    if x.terms().is_empty() && x.horizon() <= Valuation::finite(0) {
        return Err(Error::InsufficientHorizon);
    }
    let r = x.coefficient(Exponent::ZERO);
    let eps = x - &LcNumber::from_real(r);
    if eps.is_zero() {
        let value = match f {
            Elementary::Exp => r.exp(),
            Elementary::Sin => r.sin(),
            Elementary::Cos => r.cos(),
        };
        return Ok(LcNumber::from_real(value));
    }
    if target.is_infinite() {
        return Err(Error::NonTerminating);
    }
    let out = match f {
        Elementary::Exp => exp_series(&eps, target).scale(r.exp()),
        Elementary::Sin => {
            let s = sin_series(&eps, target).scale(r.cos());
            let c = cos_series(&eps, target).scale(r.sin());
            &s + &c
        }
        Elementary::Cos => {
            let c = cos_series(&eps, target).scale(r.cos());
            let s = sin_series(&eps, target).scale(r.sin());
            &c - &s
        }
    };
    Ok(out.truncated(target))
}

/// Extracts `f(r), f'(r), …, f^(k_max)(r)` from a single evaluation of
/// `f` at `r + d`: the coefficient at `dⁱ` is `f^(i)(r)/i!`.
///
/// The callback receives the probe point and the working horizon
/// (`k_max + 1`) and must evaluate `f` with it.
pub fn derivatives_at<F>(f: F, r: f64, k_max: usize) -> Result<Vec<f64>>
where
    F: Fn(&LcNumber, Valuation) -> Result<LcNumber>,
{
    let target = Valuation::finite(k_max as i64 + 1);
    let probe = &LcNumber::from_real(r) + &LcNumber::d();
    let jet = f(&probe, target)?;
    if let Valuation::Finite(h) = jet.horizon() {
        if h <= Exponent::int(k_max as i64) {
            return Err(Error::Domain(format!(
                "evaluation lost precision: horizon {h} below requested order {k_max}"
            )));
        }
    }
    for &(q, _) in jet.terms() {
        if q.is_negative() {
            return Err(Error::Domain(format!("function has a pole at {r}")));
        }
        if !q.is_integer() {
            return Err(Error::Domain(format!(
                "jet contains fractional exponent {q}: function is not smooth at {r}"
            )));
        }
    }
    let mut out = Vec::with_capacity(k_max + 1);
    let mut factorial = 1.0f64;
    for i in 0..=k_max {
        if i > 0 {
            factorial *= i as f64;
        }
        out.push(factorial * jet.coefficient(Exponent::int(i as i64)));
    }
    Ok(out)
}
