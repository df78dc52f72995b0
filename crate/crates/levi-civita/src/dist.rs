//! Measurable representatives of the Dirac and Heaviside distributions:
//! polynomial bumps of unit mass on infinitesimal support, the Heaviside
//! function as the bump's antiderivative, their nonlinear products, moment
//! identities, and derivative pairings against represented test functions.

use num_rational::Ratio;
use serde::Serialize;

use crate::approx::{chebyshev_approx, extend_polynomial, RealFunction, RealPolynomial};
use crate::error::{Error, Result};
use crate::exponent::{Exponent, Valuation};
use crate::measure::{Interval, MeasurableSet, PiecewiseSimple};
use crate::number::{ComparisonOutcome, LcNumber};
use crate::series::PowerSeries;

/// Re-export: the pointwise product of piecewise functions on their
/// common refinement.
pub fn pw_product(f: &PiecewiseSimple, g: &PiecewiseSimple) -> Result<PiecewiseSimple> {
    f.product(g)
}

/// A Dirac-like measurable function: nonnegative, unit integral, support
/// inside `[r−h, r+h]` with infinitesimal `h`. `class` is the seam
/// smoothness: the bump `(1−u²)^{class+1}` is `C^class` at `±h`.
#[derive(Clone, Debug)]
pub struct DiracLike {
    body: PiecewiseSimple,
    center: LcNumber,
    half_width: LcNumber,
    class: u32,
}

impl DiracLike {
    pub fn body(&self) -> &PiecewiseSimple {
        &self.body
    }

    pub fn center(&self) -> &LcNumber {
        &self.center
    }

    pub fn half_width(&self) -> &LcNumber {
        &self.half_width
    }

    pub fn class(&self) -> u32 {
        self.class
    }

    pub fn support(&self) -> Interval {
        Interval::closed(&self.center - &self.half_width, &self.center + &self.half_width)
            .expect("support endpoints are ordered by construction")
    }
}

fn binom(n: u32, k: u32) -> i64 {
    let mut acc: i64 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i64 / (j + 1) as i64;
    }
    acc
}

/// `∫_{−1}^{1} (1 − u²)^m du` as an exact rational.
fn bump_mass(m: u32) -> Ratio<i64> {
    let mut acc = Ratio::new(0, 1);
    for j in 0..=m {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += Ratio::new(sign * 2 * binom(m, j), 2 * j as i64 + 1);
    }
    acc
}

fn monomial_parts(h: &LcNumber) -> Result<(f64, Exponent)> {
    if !h.is_exact() || h.terms().len() != 1 {
        return Err(Error::NotInfinitesimal);
    }
    let (q, c) = h.terms()[0];
    if c <= 0.0 || !q.is_positive() {
        return Err(Error::NotInfinitesimal);
    }
    Ok((c, q))
}

/// The canonical bump `c·(1 − ((x−r)/h)²)^(k+1) / h` on `[r−h, r+h]`,
/// normalized analytically to unit mass. The half-width must be a
/// positive monomial infinitesimal so every coefficient is exact.
pub fn dirac_bump_of_class(r: &LcNumber, h: &LcNumber, class: u32) -> Result<DiracLike> {
    let (hc, hq) = monomial_parts(h)?;
    let m = class + 1;
    let mass = bump_mass(m);
    let norm = *mass.denom() as f64 / *mass.numer() as f64;
    // Coefficient of (x−r)^{2j}: norm · C(m, j) · (−1)^j · h^{−(2j+1)}.
    let mut coeffs = vec![LcNumber::zero(); 2 * m as usize + 1];
    for j in 0..=m {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let power = -(2 * j as i64 + 1);
        let c = norm * sign * binom(m, j) as f64 * hc.powi(power as i32);
        coeffs[2 * j as usize] = LcNumber::monomial(c, hq * power);
    }
    let series = PowerSeries::polynomial(r.clone(), coeffs);
    let support = Interval::closed(r - h, r + h)?;
    let body = PiecewiseSimple::new(vec![(support, series)])?;
    let bump = DiracLike {
        body,
        center: r.clone(),
        half_width: h.clone(),
        class,
    };
    debug_assert!({
        let mass = bump.body.integrate(&MeasurableSet::from_interval(bump.support()))?;
        (mass.coefficient(0) - 1.0).abs() < 1e-12 && mass.terms().len() == 1
    });
    Ok(bump)
}

/// The quartic bump `(15/(16h))·(1 − ((x−r)/h)²)²`, `C¹` at its seams.
pub fn dirac_bump(r: &LcNumber, h: &LcNumber) -> Result<DiracLike> {
    dirac_bump_of_class(r, h, 1)
}

/// A Heaviside representative: the antiderivative of a continuous
/// Dirac-like function, presented as 0 / polynomial ramp / 1 on an
/// ambient interval.
#[derive(Clone, Debug)]
pub struct Heaviside {
    body: PiecewiseSimple,
    source: DiracLike,
    ambient: Interval,
}

impl Heaviside {
    pub fn body(&self) -> &PiecewiseSimple {
        &self.body
    }

    pub fn source(&self) -> &DiracLike {
        &self.source
    }

    pub fn ambient(&self) -> &Interval {
        &self.ambient
    }

    /// `H^m` as a piecewise function; `H⁰` is the constant 1 on the
    /// ambient interval.
    pub fn power_fn(&self, m: u32) -> Result<PiecewiseSimple> {
        if m == 0 {
            Ok(PiecewiseSimple::constant_on(self.ambient.clone(), LcNumber::one()))
        } else {
            self.body.pow(m)
        }
    }
}

/// Builds the Heaviside function of a bump on the ambient interval
/// `[−1, 1]`.
pub fn heaviside(source: &DiracLike) -> Result<Heaviside> {
    heaviside_on(source, Interval::closed_real(-1.0, 1.0))
}

/// As [`heaviside`], with an explicit ambient interval that must strictly
/// contain the bump's support.
pub fn heaviside_on(source: &DiracLike, ambient: Interval) -> Result<Heaviside> {
    let lo = &source.center - &source.half_width;
    let hi = &source.center + &source.half_width;
    let strictly_inside = matches!(ambient.lo().compare(&lo), ComparisonOutcome::Less)
        && matches!(hi.compare(ambient.hi()), ComparisonOutcome::Less);
    if !strictly_inside {
        return Err(Error::Domain(
            "bump support must lie strictly inside the ambient interval".into(),
        ));
    }
    let bump_series = &source.body.pieces()[0].series;
    let anti = bump_series.antiderivative();
    // Normalize so the ramp starts at exactly zero.
    let at_lo = anti.eval(&lo, Valuation::Infinite)?;
    let ramp = anti.sub(&PowerSeries::polynomial(bump_series.center().clone(), vec![at_lo]));
    let body = PiecewiseSimple::new(vec![
        (
            Interval::new(ambient.lo().clone(), lo.clone(), ambient.lo_closed(), false)?,
            PowerSeries::constant(LcNumber::zero()),
        ),
        (Interval::closed(lo, hi.clone())?, ramp),
        (
            Interval::new(hi, ambient.hi().clone(), false, ambient.hi_closed())?,
            PowerSeries::constant(LcNumber::one()),
        ),
    ])?;
    Ok(Heaviside { body, source: source.clone(), ambient })
}

/// One pairing run: the standard parts of `∫ g · ext(p_n)` along the
/// degree schedule, with the stabilized limit when the last three entries
/// agree within the tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub degrees: Vec<usize>,
    pub values: Vec<f64>,
    pub limit: Option<f64>,
    pub converged: bool,
    pub tol: f64,
}

fn stabilized(values: &[f64], tol: f64) -> (Option<f64>, bool) {
    if values.len() < 3 {
        return (values.last().copied(), false);
    }
    let tail = &values[values.len() - 3..];
    let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let converged = hi - lo <= tol;
    (values.last().copied(), converged)
}

/// Pairs a measurable function against a real test function: for each
/// degree in the schedule, integrates `g · ext(p_n)` over the test
/// function's domain and reports the standard parts.
pub fn pair(
    g: &PiecewiseSimple,
    f: &RealFunction,
    schedule: &[usize],
    tol: f64,
) -> Result<PairingReport> {
    let (a, b) = f.domain();
    let dom = MeasurableSet::interval_real(a, b);
    let mut values = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let p = chebyshev_approx(f, n);
        let prod = g.product(&extend_polynomial(&p))?;
        let v = prod.integrate(&dom)?;
        values.push(v.std_part());
    }
    let (limit, converged) = stabilized(&values, tol);
    Ok(PairingReport { degrees: schedule.to_vec(), values, limit, converged, tol })
}

/// Pairs `H·δ` against a test function; the limit is `f(0)/2` when `H`
/// is built from `δ`.
pub fn dirac_heaviside_product_check(
    delta: &DiracLike,
    h: &Heaviside,
    f: &RealFunction,
    schedule: &[usize],
    tol: f64,
) -> Result<PairingReport> {
    let g = h.body.product(&delta.body)?;
    pair(&g, f, schedule, tol)
}

/// `∫ (H^m − H^n)·δ` over the bump's support; equals
/// `1/(m+1) − 1/(n+1)` exactly for the antiderivative evaluation.
pub fn moment_identity(delta: &DiracLike, h: &Heaviside, m: u32, n: u32) -> Result<LcNumber> {
    let hm = h.power_fn(m)?;
    let hn = h.power_fn(n)?;
    let diff = hm.sub(&hn)?;
    let integrand = diff.product(&delta.body)?;
    integrand.integrate(&MeasurableSet::from_interval(delta.support()))
}

/// Pairs the `k`-th pointwise derivative of the bump against `ext(P_n)`
/// with `P_n^(k) = p_n ≈ f`; the limit is `(−1)^k f(r)`.
pub fn pair_derivative(
    delta: &DiracLike,
    k: u32,
    f: &RealFunction,
    schedule: &[usize],
    tol: f64,
) -> Result<PairingReport> {
    if k > delta.class {
        return Err(Error::InsufficientSmoothness { requested: k, available: delta.class });
    }
    let mut dbody = delta.body.clone();
    for _ in 0..k {
        dbody = dbody.derivative();
    }
    let (a, b) = f.domain();
    let dom = MeasurableSet::interval_real(a, b);
    let support = delta.support();
    let inside = matches!(
        LcNumber::from_real(a).compare(support.lo()),
        ComparisonOutcome::Less
    ) && matches!(
        support.hi().compare(&LcNumber::from_real(b)),
        ComparisonOutcome::Less
    );
    if !inside {
        return Err(Error::Domain(
            "bump support must lie strictly inside the test function's domain".into(),
        ));
    }
    let mut values = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let mut p: RealPolynomial = chebyshev_approx(f, n);
        for _ in 0..k {
            p = p.antiderivative();
        }
        let prod = dbody.product(&extend_polynomial(&p))?;
        let v = prod.integrate(&dom)?;
        values.push(v.std_part());
    }
    let (limit, converged) = stabilized(&values, tol);
    Ok(PairingReport { degrees: schedule.to_vec(), values, limit, converged, tol })
}
