//! `L^p` norms of piecewise-simple functions and the sequence layer:
//! weak-limit detection for scalar sequences, norms and inner products of
//! strongly Cauchy function sequences.
//!
//! Finite-`p` norms integrate `|f|^p` piecewise. The absolute value is
//! certified by root isolation on the standard part: each piece is scaled
//! by the inverse of its smallest coefficient order, the resulting real
//! polynomial's sign changes are isolated by bisection with derivative
//! bounds, and the cut points are lifted back into the field by Newton
//! steps when that terminates exactly.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Valuation};
use crate::measure::{Interval, MeasurableSet, PiecewiseSimple};
use crate::number::{ComparisonOutcome, LcNumber};
use crate::series::PowerSeries;

/// The exponent of an `L^p` space: a positive integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpExponent {
    P(u32),
    Infinity,
}

impl LpExponent {
    pub fn conjugate(&self) -> Option<LpExponent> {
        match self {
            LpExponent::P(1) => Some(LpExponent::Infinity),
            LpExponent::P(2) => Some(LpExponent::P(2)),
            LpExponent::Infinity => Some(LpExponent::P(1)),
            LpExponent::P(_) => None,
        }
    }
}

impl fmt::Display for LpExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpExponent::P(p) => write!(f, "{p}"),
            LpExponent::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for LpExponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") {
            return Ok(LpExponent::Infinity);
        }
        let p: u32 = t
            .parse()
            .map_err(|_| Error::Domain(format!("invalid L^p exponent `{s}`")))?;
        if p == 0 {
            return Err(Error::Domain("L^p exponent must be positive".into()));
        }
        Ok(LpExponent::P(p))
    }
}

fn poly_eval(c: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &ci in c.iter().rev() {
        acc = acc * x + ci;
    }
    acc
}

fn poly_deriv(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &ci)| i as f64 * ci)
        .collect()
}

/// Upper bound for `|g'|` on `[lo, hi]` from the coefficient magnitudes.
fn deriv_bound(dc: &[f64], lo: f64, hi: f64) -> f64 {
    let m = lo.abs().max(hi.abs()).max(1e-300);
    let mut b = 0.0;
    let mut pw = 1.0;
    for &c in dc {
        b += c.abs() * pw;
        pw *= m;
    }
    b
}

/// Interior points of `(a, b)` where the real polynomial `g` changes
/// sign, isolated by adaptive bisection with a derivative-bound exclusion
/// test and polished by Newton steps.
fn sign_flip_points(g: &[f64], a: f64, b: f64) -> Result<Vec<f64>> {
    let trimmed: Vec<f64> = {
        let last = g.iter().rposition(|&c| c != 0.0);
        match last {
            None => return Ok(Vec::new()),
            Some(k) => g[..=k].to_vec(),
        }
    };
    if trimmed.len() == 1 {
        return Ok(Vec::new());
    }
    let dg = poly_deriv(&trimmed);
    let span = b - a;
    let w_min = span * 1e-10;
    let mut roots = Vec::new();
    let mut budget = 200_000u32;
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        budget = budget.checked_sub(1).ok_or_else(|| {
            Error::SignUndecidable(
                "cell budget exhausted: polynomial is beyond certification resolution".into(),
            )
        })?;
        if depth > 80 {
            return Err(Error::SignUndecidable(
                "bisection depth exhausted while isolating sign changes".into(),
            ));
        }
        let width = hi - lo;
        let (vlo, vhi) = (poly_eval(&trimmed, lo), poly_eval(&trimmed, hi));
        if width < w_min {
            if vlo * vhi < 0.0 {
                roots.push(refine_root(&trimmed, &dg, lo, hi));
            }
            // Otherwise an even-order touch or no root: no sign change.
            continue;
        }
        // Split off-center when the midpoint hits a root exactly, so the
        // sign flip stays interior to one of the halves.
        let mut mid = lo + width / 2.0;
        let mut vmid = poly_eval(&trimmed, mid);
        for k in 1..=4 {
            if vmid != 0.0 {
                break;
            }
            mid = lo + width * (0.5 + 0.061 * k as f64);
            vmid = poly_eval(&trimmed, mid);
        }
        let bound = deriv_bound(&dg, lo, hi);
        if vmid.abs() > bound * (mid - lo).max(hi - mid) {
            continue; // certified: no zero inside, hence no sign change
        }
        stack.push((lo, mid, depth + 1));
        stack.push((mid, hi, depth + 1));
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // Collapse near-duplicates from adjacent cells.
    roots.dedup_by(|x, y| (*x - *y).abs() <= w_min);
    Ok(roots)
}

fn refine_root(g: &[f64], dg: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = poly_eval(g, lo);
    for _ in 0..80 {
        let mid = lo + (hi - lo) / 2.0;
        if mid == lo || mid == hi {
            break;
        }
        let fm = poly_eval(g, mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    let mut x = lo + (hi - lo) / 2.0;
    for _ in 0..4 {
        let dv = poly_eval(dg, x);
        if dv == 0.0 {
            break;
        }
        let step = poly_eval(g, x) / dv;
        let next = x - step;
        if next < lo || next > hi {
            break;
        }
        x = next;
    }
    x
}

/// Tries to turn a real root estimate into the exact field element where
/// the piece vanishes. Succeeds only when the Newton iteration lands on an
/// exactly-zero residual within a few steps (for example a linear piece
/// with infinitesimal shift); otherwise the caller keeps the real cut.
fn lift_root(s: &PowerSeries, rho: f64) -> Option<LcNumber> {
    let ds = s.derivative();
    let mut x = LcNumber::from_real(rho);
    for _ in 0..6 {
        let fx = s.eval(&x, Valuation::Infinite).ok()?;
        if fx.is_zero() {
            return Some(x);
        }
        let dfx = ds.eval(&x, Valuation::Infinite).ok()?;
        if !dfx.is_exact() || dfx.terms().is_empty() {
            return None;
        }
        let inv = dfx.inv(Valuation::finite(128)).ok()?;
        if !inv.is_exact() {
            return None;
        }
        x = &x - &(&fx * &inv);
        if x.terms().len() > 64 {
            return None;
        }
    }
    None
}

struct FactoredPiece {
    /// Piece series scaled by `d^{-ν}` and recentered to a real point.
    normalized: PowerSeries,
    /// The common order `ν` of the original coefficients.
    order: Exponent,
    /// Standard parts of the normalized coefficients.
    std_poly: Vec<f64>,
    /// Real center the series was moved to.
    real_center: f64,
}

fn factor_piece(series: &PowerSeries) -> Result<Option<FactoredPiece>> {
    if !series.is_polynomial() {
        return Err(Error::NonPolynomialPiece);
    }
    if series.coeffs().iter().any(|c| !c.is_exact()) {
        return Err(Error::NonPolynomialPiece);
    }
    if series.is_zero() {
        return Ok(None);
    }
    let c0 = series.center().std_part();
    if !c0.is_finite() {
        return Err(Error::SignUndecidable(
            "piece center has no finite standard part".into(),
        ));
    }
    let recentered = series.recenter(&LcNumber::from_real(c0));
    let nu = recentered
        .coeffs()
        .iter()
        .map(|c| c.valuation())
        .min()
        .unwrap_or(Valuation::Infinite);
    let nu = match nu {
        Valuation::Finite(e) => e,
        Valuation::Infinite => return Ok(None),
    };
    let normalized = recentered.scale(&LcNumber::d_pow(-nu));
    let std_poly: Vec<f64> = normalized
        .coeffs()
        .iter()
        .map(|c| c.coefficient(Exponent::ZERO))
        .collect();
    Ok(Some(FactoredPiece { normalized, order: nu, std_poly, real_center: c0 }))
}

fn decide_sign(series: &PowerSeries, at: &LcNumber) -> Result<f64> {
    let v = series.eval(at, Valuation::Infinite)?;
    match v.sign() {
        ComparisonOutcome::Greater | ComparisonOutcome::Equal => Ok(1.0),
        ComparisonOutcome::Less => Ok(-1.0),
        ComparisonOutcome::Indeterminate(_) => Err(Error::SignUndecidable(
            "piece value has indeterminate sign".into(),
        )),
    }
}

/// Cut points inside `(lo, hi)` where the piece changes sign.
fn piece_cuts(series: &PowerSeries, interval: &Interval) -> Result<Vec<LcNumber>> {
    let factored = match factor_piece(series)? {
        Some(f) => f,
        None => return Ok(Vec::new()),
    };
    let wlo = interval.lo().std_part() - factored.real_center;
    let whi = interval.hi().std_part() - factored.real_center;
    if !(wlo.is_finite() && whi.is_finite()) {
        return Err(Error::SignUndecidable(
            "interval is not nearstandard; sign analysis works on the standard interval".into(),
        ));
    }
    if wlo >= whi {
        return Ok(Vec::new());
    }
    let flips = sign_flip_points(&factored.std_poly, wlo, whi)?;
    let mut cuts = Vec::new();
    for rho in flips {
        let abs = factored.real_center + rho;
        let cut = lift_root(series, abs).unwrap_or_else(|| LcNumber::from_real(abs));
        // Keep only cuts strictly inside the piece.
        let inside = matches!(interval.lo().compare(&cut), ComparisonOutcome::Less)
            && matches!(cut.compare(interval.hi()), ComparisonOutcome::Less);
        if inside {
            cuts.push(cut);
        }
    }
    Ok(cuts)
}

/// `∫_A |f|^p` for a finite `p`, by sign-certified subdivision.
fn integral_abs_pow(f: &PiecewiseSimple, a: &MeasurableSet, p: u32) -> Result<LcNumber> {
    let restricted = f.restrict(a)?;
    let mut total = LcNumber::zero();
    for piece in restricted.pieces() {
        if piece.interval.is_degenerate() || piece.series.is_zero() {
            continue;
        }
        let cuts = piece_cuts(&piece.series, &piece.interval)?;
        let mut bounds = Vec::with_capacity(cuts.len() + 2);
        bounds.push(piece.interval.lo().clone());
        bounds.extend(cuts);
        bounds.push(piece.interval.hi().clone());
        let anti_of = |sigma: f64| -> Result<PowerSeries> {
            let signed = piece.series.scale_real(sigma);
            Ok(signed.pow(p).antiderivative())
        };
        for pair in bounds.windows(2) {
            let (u, v) = (&pair[0], &pair[1]);
            if matches!(u.compare(v), ComparisonOutcome::Equal) {
                continue;
            }
            let mid = (u + v).scale(0.5);
            let sigma = decide_sign(&piece.series, &mid)?;
            let anti = anti_of(sigma)?;
            let upper = anti.eval(v, Valuation::Infinite)?;
            let lower = anti.eval(u, Valuation::Infinite)?;
            total = &total + &(&upper - &lower);
        }
    }
    Ok(total)
}

fn infinity_norm(f: &PiecewiseSimple, a: &MeasurableSet) -> Result<LcNumber> {
    let restricted = f.restrict(a)?;
    let mut best: Option<LcNumber> = None;
    for piece in restricted.pieces() {
        if piece.interval.is_degenerate() {
            continue;
        }
        let factored = match factor_piece(&piece.series)? {
            Some(g) => g,
            None => continue,
        };
        // The infinity norm requires a single order of magnitude: after
        // factoring, every surviving coefficient must be real.
        let uniform = factored
            .normalized
            .coeffs()
            .iter()
            .all(|c| c.terms().iter().all(|&(q, _)| q.is_zero()));
        if !uniform {
            return Err(Error::NoInfimum);
        }
        let wlo = piece.interval.lo().std_part() - factored.real_center;
        let whi = piece.interval.hi().std_part() - factored.real_center;
        if !(wlo.is_finite() && whi.is_finite()) {
            return Err(Error::SignUndecidable(
                "interval is not nearstandard".into(),
            ));
        }
        let mut candidates = vec![wlo, whi];
        if wlo < whi {
            candidates.extend(sign_flip_points(&poly_deriv(&factored.std_poly), wlo, whi)?);
        }
        let m = candidates
            .into_iter()
            .map(|t| poly_eval(&factored.std_poly, t).abs())
            .fold(0.0f64, f64::max);
        let candidate = LcNumber::monomial(m, factored.order);
        best = Some(match best {
            None => candidate,
            Some(cur) => match cur.compare(&candidate) {
                ComparisonOutcome::Less => candidate,
                ComparisonOutcome::Indeterminate(h) => {
                    return Err(Error::IndeterminateOrder(h))
                }
                _ => cur,
            },
        });
    }
    Ok(best.unwrap_or_else(LcNumber::zero))
}

/// The `L^p` norm of `f` over `A`.
///
/// Finite `p` integrates `|f|^p` (pieces must be polynomials with exact
/// coefficients) and takes the `p`-th root to `target`. The infinity norm
/// is the largest standard-interval maximum across pieces, exact, and
/// fails with [`Error::NoInfimum`] when coefficient orders are mixed.
pub fn lp_norm(
    f: &PiecewiseSimple,
    a: &MeasurableSet,
    p: LpExponent,
    target: Valuation,
) -> Result<LcNumber> {
    match p {
        LpExponent::Infinity => infinity_norm(f, a),
        LpExponent::P(0) => Err(Error::Domain("L^p exponent must be positive".into())),
        LpExponent::P(p) => {
            let total = integral_abs_pow(f, a, p)?;
            if p == 1 || total.is_zero() {
                Ok(total)
            } else {
                total.nth_root(p, target)
            }
        }
    }
}

/// `‖f‖_p ‖g‖_q − ‖fg‖₁` for a conjugate pair; Hölder's inequality says
/// the result is nonnegative.
pub fn holder_defect(
    f: &PiecewiseSimple,
    g: &PiecewiseSimple,
    a: &MeasurableSet,
    p: LpExponent,
    q: LpExponent,
    target: Valuation,
) -> Result<LcNumber> {
    if p.conjugate() != Some(q) {
        return Err(Error::Domain(format!(
            "({p}, {q}) is not a supported conjugate pair; use (1, inf), (inf, 1) or (2, 2)"
        )));
    }
    let nf = lp_norm(f, a, p, target)?;
    let ng = lp_norm(g, a, q, target)?;
    let nfg = lp_norm(&f.product(g)?, a, LpExponent::P(1), target)?;
    Ok(&(&nf * &ng) - &nfg)
}

/// An indexed generator of field elements. Generators must be pure: the
/// same index always yields the same value.
#[derive(Clone)]
pub struct NumberSequence {
    gen: Arc<dyn Fn(usize) -> LcNumber + Send + Sync>,
    pub description: String,
}

impl NumberSequence {
    pub fn new(
        description: impl Into<String>,
        gen: impl Fn(usize) -> LcNumber + Send + Sync + 'static,
    ) -> Self {
        NumberSequence { gen: Arc::new(gen), description: description.into() }
    }

    pub fn at(&self, n: usize) -> LcNumber {
        (self.gen)(n)
    }
}

/// An indexed generator of piecewise-simple functions.
#[derive(Clone)]
pub struct FunctionSequence {
    gen: Arc<dyn Fn(usize) -> PiecewiseSimple + Send + Sync>,
    pub description: String,
}

impl FunctionSequence {
    pub fn new(
        description: impl Into<String>,
        gen: impl Fn(usize) -> PiecewiseSimple + Send + Sync + 'static,
    ) -> Self {
        FunctionSequence { gen: Arc::new(gen), description: description.into() }
    }

    pub fn at(&self, n: usize) -> PiecewiseSimple {
        (self.gen)(n)
    }
}

/// Finite-prefix evidence behind a [`LimitVerdict`]. All checks are
/// heuristic: the definitions quantify over every index, a prefix cannot.
#[derive(Clone, Debug, Serialize)]
pub struct LimitEvidence {
    pub n_max: usize,
    pub cutoff: Exponent,
    pub tol: f64,
    pub window: usize,
    pub max_tail_variation: f64,
    pub unstable_exponent: Option<Exponent>,
    pub half_prefix_consistent: bool,
    /// `max_q |a_last[q] − l[q]|` under the cutoff: a candidate truncated
    /// at the tolerance boundary leaves a residual near `tol` and is
    /// rejected rather than reported as a limit.
    pub final_residual: f64,
    pub valuation_first: f64,
    pub valuation_last: f64,
}

/// Verdict of weak-limit detection on a finite prefix.
#[derive(Clone, Debug)]
pub enum LimitVerdict {
    /// Coefficient-wise stabilization under the cutoff; `regular` is false
    /// when the support kept escaping downward (the limit still holds
    /// coefficient-wise, as for non-regular weakly convergent sequences).
    Limit { value: LcNumber, regular: bool, evidence: LimitEvidence },
    NoLimit { evidence: LimitEvidence },
    Divergent { evidence: LimitEvidence },
}

impl LimitVerdict {
    pub fn value(&self) -> Option<&LcNumber> {
        match self {
            LimitVerdict::Limit { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn evidence(&self) -> &LimitEvidence {
        match self {
            LimitVerdict::Limit { evidence, .. }
            | LimitVerdict::NoLimit { evidence }
            | LimitVerdict::Divergent { evidence } => evidence,
        }
    }
}

impl Serialize for LimitVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LimitVerdict", 3)?;
        match self {
            LimitVerdict::Limit { value, evidence, .. } => {
                st.serialize_field("verdict", "limit")?;
                st.serialize_field("value", value)?;
                st.serialize_field("evidence", evidence)?;
            }
            LimitVerdict::NoLimit { evidence } => {
                st.serialize_field("verdict", "no_limit")?;
                st.serialize_field("value", &Option::<LcNumber>::None)?;
                st.serialize_field("evidence", evidence)?;
            }
            LimitVerdict::Divergent { evidence } => {
                st.serialize_field("verdict", "divergent")?;
                st.serialize_field("value", &Option::<LcNumber>::None)?;
                st.serialize_field("evidence", evidence)?;
            }
        }
        st.end()
    }
}

struct Candidate {
    coeffs: Vec<(Exponent, f64)>,
    stabilized: bool,
    max_variation: f64,
    unstable: Option<Exponent>,
}

fn candidate_limit(values: &[LcNumber], cutoff: Exponent, tol: f64) -> Candidate {
    let window = values.len().max(4) / 4;
    let start = values.len() - window.max(3).min(values.len());
    let mut qs: Vec<Exponent> = values
        .iter()
        .flat_map(|v| v.terms().iter().map(|t| t.0))
        .filter(|q| *q <= cutoff)
        .collect();
    qs.sort();
    qs.dedup();
    let mut coeffs = Vec::new();
    let mut stabilized = true;
    let mut max_variation = 0.0f64;
    let mut unstable = None;
    for q in qs {
        let tail: Vec<f64> = values[start..].iter().map(|v| v.coefficient(q)).collect();
        let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let var = hi - lo;
        if var > max_variation {
            max_variation = var;
        }
        if var > tol {
            stabilized = false;
            if unstable.is_none() {
                unstable = Some(q);
            }
            continue;
        }
        let last = *tail.last().unwrap();
        if last.abs() > tol {
            coeffs.push((q, last));
        }
    }
    Candidate { coeffs, stabilized, max_variation, unstable }
}

/// Detects the weak limit of a scalar sequence from the prefix
/// `a_0 … a_{n_max−1}`: coefficient-wise stabilization under `cutoff`
/// within `tol`, cross-checked against the half prefix, with a valuation
/// trend test for divergence.
pub fn weak_limit(
    seq: &NumberSequence,
    cutoff: Exponent,
    tol: f64,
    n_max: usize,
) -> LimitVerdict {
    let n_max = n_max.max(8);
    let values: Vec<LcNumber> = (0..n_max).map(|n| seq.at(n)).collect();
    let full = candidate_limit(&values, cutoff, tol);
    let half = candidate_limit(&values[..n_max / 2], cutoff, tol);

    let consistent = {
        let mut qs: Vec<Exponent> = full
            .coeffs
            .iter()
            .chain(half.coeffs.iter())
            .map(|t| t.0)
            .collect();
        qs.sort();
        qs.dedup();
        let get = |list: &[(Exponent, f64)], q: Exponent| {
            list.iter().find(|t| t.0 == q).map(|t| t.1).unwrap_or(0.0)
        };
        qs.into_iter()
            .all(|q| (get(&full.coeffs, q) - get(&half.coeffs, q)).abs() <= 2.0 * tol)
    };

    let v_first = values.first().map(|v| v.valuation_floor().as_f64()).unwrap_or(0.0);
    let v_last = values.last().map(|v| v.valuation_floor().as_f64()).unwrap_or(0.0);
    let escaping = v_last.is_finite() && v_last <= v_first - (n_max as f64) / 2.0;

    let final_residual = {
        let last = values.last().expect("n_max ≥ 8");
        let get = |q: Exponent| {
            full.coeffs.iter().find(|t| t.0 == q).map(|t| t.1).unwrap_or(0.0)
        };
        let mut r = 0.0f64;
        for &(q, c) in last.terms() {
            if q <= cutoff {
                r = r.max((c - get(q)).abs());
            }
        }
        for &(q, c) in &full.coeffs {
            r = r.max((last.coefficient(q) - c).abs());
        }
        r
    };

    let evidence = LimitEvidence {
        n_max,
        cutoff,
        tol,
        window: values.len().max(4) / 4,
        max_tail_variation: full.max_variation,
        unstable_exponent: full.unstable,
        half_prefix_consistent: consistent,
        final_residual,
        valuation_first: v_first,
        valuation_last: v_last,
    };

    if full.stabilized && consistent && final_residual <= tol / 2.0 {
        let value = LcNumber::from_terms(full.coeffs);
        LimitVerdict::Limit { value, regular: !escaping, evidence }
    } else if escaping && !full.stabilized {
        LimitVerdict::Divergent { evidence }
    } else {
        // Either some coefficient kept moving, the two prefix scales
        // disagreed, or the candidate was only stable because the
        // tolerance truncated it (residual at the tolerance boundary).
        LimitVerdict::NoLimit { evidence }
    }
}

/// Strong-Cauchy evidence: the valuations of consecutive differences must
/// climb (eventual coefficient constancy). Returns the difference
/// valuations for the error message.
fn strong_cauchy_evidence(norms_of_diffs: &[Valuation]) -> Result<()> {
    let mut prev: Option<Valuation> = None;
    let mut climbed = false;
    for &v in norms_of_diffs {
        if let Some(p) = prev {
            if v < p {
                return Err(Error::NotStronglyCauchy(format!(
                    "difference magnitudes grow: valuation dropped from {p} to {v}"
                )));
            }
            if v > p {
                climbed = true;
            }
        }
        prev = Some(v);
    }
    if climbed || norms_of_diffs.iter().all(|v| v.is_infinite()) {
        Ok(())
    } else {
        Err(Error::NotStronglyCauchy(
            "difference magnitudes do not shrink along the prefix".into(),
        ))
    }
}

/// Extracts the stable value from a strongly convergent list: the last
/// entry with its escaping tail (at or above the last difference's
/// valuation) removed.
fn stabilized_value(values: &[LcNumber]) -> LcNumber {
    let last = values.last().expect("nonempty prefix");
    if values.len() < 2 {
        return last.clone();
    }
    let cut = (last - &values[values.len() - 2]).valuation_floor();
    match cut {
        Valuation::Infinite => last.clone(),
        Valuation::Finite(_) => {
            let kept: Vec<(Exponent, f64)> = last
                .terms()
                .iter()
                .copied()
                .filter(|&(q, _)| Valuation::Finite(q) < cut)
                .collect();
            LcNumber::from_terms(kept).with_horizon(last.horizon())
        }
    }
}

/// The `L^p` norm of the strong limit of a Cauchy sequence of functions:
/// detects stabilization of the norm coefficient lists and returns the
/// stable value. Fails with [`Error::NotStronglyCauchy`] when consecutive
/// differences do not shrink in the order topology.
pub fn sequence_norm(
    seq: &FunctionSequence,
    a: &MeasurableSet,
    p: LpExponent,
    target: Valuation,
    n_max: usize,
) -> Result<LcNumber> {
    let n_max = n_max.max(8);
    let fns: Vec<PiecewiseSimple> = (0..n_max).map(|n| seq.at(n)).collect();
    let mut diff_norms = Vec::with_capacity(n_max - 1);
    for pair in fns.windows(2) {
        let diff = pair[1].sub(&pair[0])?;
        diff_norms.push(lp_norm(&diff, a, p, target)?.valuation_floor());
    }
    strong_cauchy_evidence(&diff_norms)?;
    let norms: Vec<LcNumber> = fns
        .iter()
        .map(|f| lp_norm(f, a, p, target))
        .collect::<Result<_>>()?;
    Ok(stabilized_value(&norms))
}

/// The inner product `∫_A ⟨f_n⟩⟨g_n⟩` of two sequences that are strongly
/// Cauchy in the 2-norm: the stabilized value of `∫_A f_n g_n`.
pub fn inner_product(
    s: &FunctionSequence,
    t: &FunctionSequence,
    a: &MeasurableSet,
    target: Valuation,
    n_max: usize,
) -> Result<LcNumber> {
    let n_max = n_max.max(8);
    let fs: Vec<PiecewiseSimple> = (0..n_max).map(|n| s.at(n)).collect();
    let gs: Vec<PiecewiseSimple> = (0..n_max).map(|n| t.at(n)).collect();
    for fns in [&fs, &gs] {
        let mut diff_norms = Vec::with_capacity(n_max - 1);
        for pair in fns.windows(2) {
            let diff = pair[1].sub(&pair[0])?;
            diff_norms.push(lp_norm(&diff, a, LpExponent::P(2), target)?.valuation_floor());
        }
        strong_cauchy_evidence(&diff_norms)?;
    }
    let mut products = Vec::with_capacity(n_max);
    for (f, g) in fs.iter().zip(gs.iter()) {
        products.push(f.product(g)?.integrate(a)?);
    }
    Ok(stabilized_value(&products))
}
