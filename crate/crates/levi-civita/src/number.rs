//! Levi-Civita numbers with an explicit exactness horizon.
//!
//! A number is a finite list of `(exponent, coefficient)` terms, strictly
//! ascending by exponent, together with a horizon: every coefficient at an
//! exponent strictly below the horizon is exact, coefficients at or above
//! it are unknown. Literals and polynomial combinations carry horizon
//! `inf`; only inversion, roots and truncated elementary evaluations
//! introduce finite horizons.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Valuation};

/// Outcome of comparing two numbers whose coefficient lists may be
/// truncated. `Indeterminate` carries the exponent at which knowledge of
/// the difference runs out.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComparisonOutcome {
    Less,
    Equal,
    Greater,
    Indeterminate(Exponent),
}

impl ComparisonOutcome {
    pub fn is_decided(&self) -> bool {
        !matches!(self, ComparisonOutcome::Indeterminate(_))
    }
}

/// The order-of-magnitude relations between two numbers: `sim` (`~`, equal
/// valuations), `approx` (`≈`, equal valuations and leading coefficients)
/// and `ll` (`≪`, the left operand is infinitely smaller).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Relations {
    pub sim: bool,
    pub approx: bool,
    pub ll: bool,
}

/// A Levi-Civita number: finite support with rational exponents, real
/// coefficients, and a horizon tracking how far the list is exact.
///
/// `==` is representation equality (identical term lists and horizons).
/// Field order, which can be undecidable on truncated data, goes through
/// [`compare`](Self::compare).
#[derive(Clone, Debug, PartialEq)]
pub struct LcNumber {
    terms: Vec<(Exponent, f64)>,
    horizon: Valuation,
}

fn prune(terms: &mut Vec<(Exponent, f64)>, horizon: Valuation) {
    terms.retain(|&(q, c)| c != 0.0 && Valuation::Finite(q) < horizon);
}

/// `1 + Σ_{qa+qb=q} |a·b|`: the natural magnitude against which a
/// defect of the product coefficient at `q` is measured.
pub(crate) fn convolution_scale(x: &LcNumber, y: &LcNumber, q: Exponent) -> f64 {
    let mut s = 1.0f64;
    for &(qa, ca) in &x.terms {
        for &(qb, cb) in &y.terms {
            if qa + qb == q {
                s += (ca * cb).abs();
            }
        }
    }
    s
}

/// Newton-iteration budget for a residual starting at `λ(ε)` that must
/// double past the frame cap, with slack for the roundoff plateau.
fn newton_steps(eps: &LcNumber, frame_h: Valuation) -> u32 {
    let start = match eps.valuation_floor() {
        Valuation::Finite(q) if q.is_positive() => q.as_f64(),
        _ => return 2,
    };
    let goal = match frame_h {
        Valuation::Finite(q) => q.as_f64().max(start),
        Valuation::Infinite => return 2,
    };
    (goal / start).log2().ceil() as u32 + 2
}

impl LcNumber {
    pub fn zero() -> Self {
        LcNumber { terms: Vec::new(), horizon: Valuation::Infinite }
    }

    pub fn one() -> Self {
        LcNumber::from_real(1.0)
    }

    /// The canonical positive infinitesimal: coefficient 1 at exponent 1.
    pub fn d() -> Self {
        LcNumber::monomial(1.0, Exponent::ONE)
    }

    pub fn from_real(c: f64) -> Self {
        LcNumber::monomial(c, Exponent::ZERO)
    }

    pub fn monomial(c: f64, q: impl Into<Exponent>) -> Self {
        assert!(c.is_finite(), "coefficients must be finite reals");
        let mut terms = Vec::new();
        if c != 0.0 {
            terms.push((q.into(), c));
        }
        LcNumber { terms, horizon: Valuation::Infinite }
    }

    pub fn d_pow(q: impl Into<Exponent>) -> Self {
        LcNumber::monomial(1.0, q)
    }

    /// Builds a number from arbitrary `(exponent, coefficient)` pairs;
    /// duplicate exponents are summed, zeros pruned, horizon `inf`.
    pub fn from_terms(it: impl IntoIterator<Item = (Exponent, f64)>) -> Self {
        let mut map: BTreeMap<Exponent, f64> = BTreeMap::new();
        for (q, c) in it {
            assert!(c.is_finite(), "coefficients must be finite reals");
            *map.entry(q).or_insert(0.0) += c;
        }
        let mut terms: Vec<_> = map.into_iter().collect();
        prune(&mut terms, Valuation::Infinite);
        LcNumber { terms, horizon: Valuation::Infinite }
    }

    /// Same list of terms, truncated so nothing at or above `h` survives.
    pub fn truncated(&self, h: Valuation) -> Self {
        let horizon = self.horizon.min(h);
        let mut terms = self.terms.clone();
        prune(&mut terms, horizon);
        LcNumber { terms, horizon }
    }

    pub fn with_horizon(self, h: Valuation) -> Self {
        self.truncated(h)
    }

    pub fn terms(&self) -> &[(Exponent, f64)] {
        &self.terms
    }

    pub fn horizon(&self) -> Valuation {
        self.horizon
    }

    pub fn is_exact(&self) -> bool {
        self.horizon.is_infinite()
    }

    /// True only for the number known to be exactly zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.horizon.is_infinite()
    }

    /// The coefficient `x[q]`, zero off the support.
    pub fn coefficient(&self, q: impl Into<Exponent>) -> f64 {
        let q = q.into();
        match self.terms.binary_search_by(|(e, _)| e.cmp(&q)) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0.0,
        }
    }

    /// `λ(x)`: the least exponent of the known support, `inf` for a number
    /// with no known terms (in particular for zero).
    pub fn valuation(&self) -> Valuation {
        match self.terms.first() {
            Some(&(q, _)) => Valuation::Finite(q),
            None => Valuation::Infinite,
        }
    }

    /// Leading `(exponent, coefficient)` pair, if any term is known.
    pub fn leading(&self) -> Option<(Exponent, f64)> {
        self.terms.first().copied()
    }

    /// A sound lower bound for the valuation of the true value: the first
    /// known exponent, or the horizon when no term is known.
    pub(crate) fn valuation_floor(&self) -> Valuation {
        match self.terms.first() {
            Some(&(q, _)) => Valuation::Finite(q),
            None => self.horizon,
        }
    }

    /// The standard part `sh(x)`: `x[0]` when `λ(x) ≥ 0`, otherwise `±∞`
    /// by the sign of the leading coefficient.
    pub fn std_part(&self) -> f64 {
        match self.terms.first() {
            Some(&(q, c)) if q.is_negative() => {
                if c > 0.0 {
                    f64::INFINITY
                } else {
                    f64::NEG_INFINITY
                }
            }
            _ => self.coefficient(Exponent::ZERO),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        assert!(c.is_finite());
        if c == 0.0 {
            // An exact scalar zero wipes the unknown tail as well.
            return LcNumber::zero();
        }
        let mut terms: Vec<_> = self.terms.iter().map(|&(q, a)| (q, a * c)).collect();
        prune(&mut terms, self.horizon);
        LcNumber { terms, horizon: self.horizon }
    }

    /// Order comparison on the known coefficients of `x − y`.
    pub fn compare(&self, other: &LcNumber) -> ComparisonOutcome {
        let diff = self - other;
        match diff.terms.first() {
            Some(&(_, c)) if c > 0.0 => ComparisonOutcome::Greater,
            Some(_) => ComparisonOutcome::Less,
            None => match diff.horizon {
                Valuation::Infinite => ComparisonOutcome::Equal,
                Valuation::Finite(h) => ComparisonOutcome::Indeterminate(h),
            },
        }
    }

    /// Sign of the number itself (compare against zero).
    pub fn sign(&self) -> ComparisonOutcome {
        self.compare(&LcNumber::zero())
    }

    /// `|x|`, when the sign is decidable.
    pub fn abs(&self) -> Result<LcNumber> {
        match self.sign() {
            ComparisonOutcome::Less => Ok(-self),
            ComparisonOutcome::Equal | ComparisonOutcome::Greater => Ok(self.clone()),
            ComparisonOutcome::Indeterminate(h) => Err(Error::IndeterminateOrder(h)),
        }
    }

    fn leading_exact(&self) -> Result<Option<(Exponent, f64)>> {
        match self.terms.first() {
            // The invariant `term exponent < horizon` makes any known
            // leading term exact.
            Some(&t) => Ok(Some(t)),
            None if self.horizon.is_infinite() => Ok(None),
            None => Err(Error::InsufficientHorizon),
        }
    }

    /// The `~`, `≈`, `≪` relations, requiring both leading terms exact.
    pub fn relations(&self, other: &LcNumber) -> Result<Relations> {
        self.relations_with_tol(other, 0.0)
    }

    /// As [`relations`](Self::relations) with a relative tolerance on the
    /// leading-coefficient equality used by `≈`.
    pub fn relations_with_tol(&self, other: &LcNumber, rel: f64) -> Result<Relations> {
        let a = self.leading_exact()?;
        let b = other.leading_exact()?;
        let (la, lb) = (self.valuation(), other.valuation());
        let sim = la == lb;
        let approx = sim
            && match (a, b) {
                (None, None) => true,
                (Some((_, ca)), Some((_, cb))) => {
                    (ca - cb).abs() <= rel * ca.abs().max(cb.abs())
                }
                _ => false,
            };
        Ok(Relations { sim, approx, ll: la > lb })
    }

    /// Integer power with truncation cap `target` applied along the way.
    pub fn pow_i(&self, k: i64, target: Valuation) -> Result<LcNumber> {
        if k < 0 {
            let p = self.pow_i(-k, target)?;
            return p.inv(target);
        }
        let mut acc = LcNumber::one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = (&acc * &base).truncated(target.max(acc.horizon.min(base.horizon)));
            }
            k >>= 1;
            if k > 0 {
                base = (&base * &base).truncated(target.max(base.horizon));
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse, computed to `target`.
    ///
    /// Writes `x = c·d^λ·(1 + ε)` with `λ(ε) > 0`; the result is the
    /// truncation of `c⁻¹·d^{−λ}·Σ (−ε)ⁿ` at the horizon
    /// `min(target, H − 2λ)`, evaluated by Newton reciprocal iteration
    /// (`y ← y + y(1 − xy)`), whose residual valuation doubles per step
    /// and whose rounding stays relative to the answer. Requesting
    /// `target = inf` only works when the series terminates (`ε = 0`).
    pub fn inv(&self, target: Valuation) -> Result<LcNumber> {
        let (lam, c) = match self.leading_exact()? {
            Some(t) => t,
            None => return Err(Error::ZeroDivision),
        };
        // ε = x / (c·d^λ) − 1: shift exponents and rescale the tail.
        let eps_terms: Vec<_> = self.terms[1..]
            .iter()
            .map(|&(q, a)| (q - lam, a / c))
            .collect();
        let eps = LcNumber { terms: eps_terms, horizon: self.horizon - lam };
        if eps.is_zero() {
            // Monomial: the inverse is exact, whatever the target.
            return Ok(LcNumber {
                terms: vec![(-lam, 1.0 / c)],
                horizon: Valuation::Infinite,
            });
        }
        let result_h = target.min((self.horizon - lam) - lam);
        if result_h.is_infinite() {
            return Err(Error::NonTerminating);
        }
        // Invert u = 1 + ε in its own frame; the final d^{−λ}/c factor
        // shifts exponents down by λ. The residual 1 − u·y squares each
        // step, so its valuation doubles from λ(ε) up to the frame cap.
        let frame_h = result_h + lam;
        let u = &LcNumber::one() + &eps;
        let one = LcNumber::one();
        let mut y = LcNumber::one();
        for _ in 0..newton_steps(&eps, frame_h) {
            let residual = (&one - &(&u * &y)).truncated(frame_h);
            if residual.terms.is_empty() {
                break;
            }
            y = (&y + &(&y * &residual)).truncated(frame_h);
        }
        let mut out_terms: Vec<_> = y.terms.iter().map(|&(q, a)| (q - lam, a / c)).collect();
        prune(&mut out_terms, result_h);
        let out = LcNumber { terms: out_terms, horizon: result_h };
        debug_assert!(
            {
                let check = &(self * &out) - &LcNumber::one();
                check.truncated(result_h).terms.iter().all(|&(q, cc)| {
                    cc.abs() <= 1e-9 * convolution_scale(self, &out, q)
                })
            },
            "inverse failed its round-trip check"
        );
        Ok(out)
    }

    /// `n`-th root of a positive number, computed to `target`: the
    /// truncated binomial series `c^{1/n}·d^{λ/n}·(1+ε)^{1/n}`, evaluated
    /// by the division-free reciprocal-root Newton iteration
    /// `z ← z·((n+1) − u·zⁿ)/n`, `u^{1/n} = u·z^{n−1}`.
    pub fn nth_root(&self, n: u32, target: Valuation) -> Result<LcNumber> {
        assert!(n > 0, "root order must be positive");
        let (lam, c) = match self.leading_exact()? {
            Some(t) => t,
            None => return Err(Error::NonPositive),
        };
        if c <= 0.0 {
            return Err(Error::NonPositive);
        }
        let croot = c.powf(1.0 / n as f64);
        let root_lam = lam / n as i64;
        let eps_terms: Vec<_> = self.terms[1..]
            .iter()
            .map(|&(q, a)| (q - lam, a / c))
            .collect();
        let eps = LcNumber { terms: eps_terms, horizon: self.horizon - lam };
        if eps.is_zero() {
            return Ok(LcNumber {
                terms: vec![(root_lam, croot)],
                horizon: Valuation::Infinite,
            });
        }
        // Knowledge of the tail ends at H − λ in the (1 + ε) frame.
        let result_h = target.min((self.horizon - lam) + root_lam);
        if result_h.is_infinite() {
            return Err(Error::NonTerminating);
        }
        let frame_h = result_h - root_lam;
        let u = &LcNumber::one() + &eps;
        let scale_inv = 1.0 / n as f64;
        let shift = n as f64 + 1.0;
        let mut z = LcNumber::one();
        for _ in 0..newton_steps(&eps, frame_h) {
            let zn = z.pow_i(n as i64, frame_h)?;
            let residual = (&LcNumber::one() - &(&u * &zn)).truncated(frame_h);
            if residual.terms.is_empty() {
                break;
            }
            let correction = &LcNumber::from_real(shift) - &(&u * &zn);
            z = (&z * &correction).scale(scale_inv).truncated(frame_h);
        }
        // u^{1/n} = u · z^{n−1} once z ≈ u^{−1/n}.
        let root_u = (&u * &z.pow_i(n as i64 - 1, frame_h)?).truncated(frame_h);
        let mut out_terms: Vec<_> = root_u
            .terms
            .iter()
            .map(|&(q, a)| (q + root_lam, a * croot))
            .collect();
        prune(&mut out_terms, result_h);
        let out = LcNumber { terms: out_terms, horizon: result_h };
        debug_assert!(
            {
                let back = out.pow_i(n as i64, result_h).unwrap();
                let scale = out.coeff_scale().powi(n as i32).max(self.coeff_scale());
                (&back - self)
                    .truncated(result_h)
                    .terms
                    .iter()
                    .all(|&(_, cc)| cc.abs() <= 1e-9 * scale.max(1.0))
            },
            "nth root failed its round-trip check"
        );
        Ok(out)
    }

    /// Coefficient-wise comparison with a relative tolerance, on the
    /// common knowledge horizon.
    pub fn approx_eq(&self, other: &LcNumber, rel: f64) -> bool {
        let h = self.horizon.min(other.horizon);
        let a = self.truncated(h);
        let b = other.truncated(h);
        let mut qs: Vec<Exponent> = a.terms.iter().chain(b.terms.iter()).map(|t| t.0).collect();
        qs.sort();
        qs.dedup();
        qs.into_iter().all(|q| {
            let (x, y) = (a.coefficient(q), b.coefficient(q));
            (x - y).abs() <= rel * x.abs().max(y.abs()).max(1.0)
        })
    }

    pub(crate) fn from_sorted_terms(terms: Vec<(Exponent, f64)>, horizon: Valuation) -> Self {
        let mut terms = terms;
        prune(&mut terms, horizon);
        LcNumber { terms, horizon }
    }

    /// Largest coefficient magnitude; 1 for the zero number.
    pub fn coeff_scale(&self) -> f64 {
        self.terms
            .iter()
            .map(|&(_, c)| c.abs())
            .fold(1.0f64, f64::max)
    }
}

impl Add for &LcNumber {
    type Output = LcNumber;
    fn add(self, rhs: &LcNumber) -> LcNumber {
        let horizon = self.horizon.min(rhs.horizon);
        let mut map: BTreeMap<Exponent, f64> = BTreeMap::new();
        for &(q, c) in self.terms.iter().chain(rhs.terms.iter()) {
            *map.entry(q).or_insert(0.0) += c;
        }
        let mut terms: Vec<_> = map.into_iter().collect();
        prune(&mut terms, horizon);
        LcNumber { terms, horizon }
    }
}

impl Sub for &LcNumber {
    type Output = LcNumber;
    fn sub(self, rhs: &LcNumber) -> LcNumber {
        self + &(-rhs)
    }
}

impl Neg for &LcNumber {
    type Output = LcNumber;
    fn neg(self) -> LcNumber {
        LcNumber {
            terms: self.terms.iter().map(|&(q, c)| (q, -c)).collect(),
            horizon: self.horizon,
        }
    }
}

impl Mul for &LcNumber {
    type Output = LcNumber;
    fn mul(self, rhs: &LcNumber) -> LcNumber {
        let horizon = (self.horizon + rhs.valuation_floor())
            .min(rhs.horizon + self.valuation_floor());
        let mut map: BTreeMap<Exponent, f64> = BTreeMap::new();
        for &(qa, ca) in &self.terms {
            for &(qb, cb) in &rhs.terms {
                let q = qa + qb;
                if Valuation::Finite(q) < horizon {
                    *map.entry(q).or_insert(0.0) += ca * cb;
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().collect();
        prune(&mut terms, horizon);
        LcNumber { terms, horizon }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LcNumber {
            type Output = LcNumber;
            fn $method(self, rhs: LcNumber) -> LcNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LcNumber> for LcNumber {
            type Output = LcNumber;
            fn $method(self, rhs: &LcNumber) -> LcNumber {
                (&self).$method(rhs)
            }
        }
        impl $trait<LcNumber> for &LcNumber {
            type Output = LcNumber;
            fn $method(self, rhs: LcNumber) -> LcNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LcNumber {
    type Output = LcNumber;
    fn neg(self) -> LcNumber {
        -&self
    }
}

impl fmt::Display for LcNumber {
    /// Canonical text form, e.g. `1 - d + d^2 - d^3 [horizon 4]`. The part
    /// before the bracket is valid expression syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, &(q, c)) in self.terms.iter().enumerate() {
                let (sign, mag) = if c < 0.0 { ("-", -c) } else { ("+", c) };
                if i == 0 {
                    if c < 0.0 {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {sign} ")?;
                }
                let unit = mag == 1.0;
                if q.is_zero() {
                    write!(f, "{mag}")?;
                } else {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "d")?;
                    if q != Exponent::ONE {
                        if q.is_integer() {
                            write!(f, "^{}", q.numer())?;
                        } else {
                            write!(f, "^({q})")?;
                        }
                    }
                }
            }
        }
        write!(f, " [horizon {}]", self.horizon)
    }
}

impl Serialize for LcNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LcNumber", 2)?;
        let terms: Vec<(String, f64)> = self
            .terms
            .iter()
            .map(|&(q, c)| (q.to_string(), c))
            .collect();
        st.serialize_field("terms", &terms)?;
        st.serialize_field("horizon", &self.horizon)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LcNumber {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            terms: Vec<(String, f64)>,
            horizon: Valuation,
        }
        let w = Wire::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(w.terms.len());
        for (q, c) in w.terms {
            if !c.is_finite() {
                return Err(de::Error::custom("coefficients must be finite"));
            }
            terms.push((q.parse::<Exponent>().map_err(de::Error::custom)?, c));
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in terms.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(de::Error::custom("duplicate exponents"));
            }
        }
        Ok(LcNumber::from_sorted_terms(terms, w.horizon))
    }
}
