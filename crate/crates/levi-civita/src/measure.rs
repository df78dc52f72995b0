//! Intervals with Levi-Civita endpoints, finite disjoint unions carrying
//! the uniform measure, and piecewise-simple functions integrated through
//! the fundamental theorem of calculus.
//!
//! The measure of an interval is the difference of its endpoints; the
//! measure of a finite disjoint union is the sum of the lengths. Countable
//! unions are outside this data model, so the non-measurable pathologies
//! of the field (monads, countable escape) appear here as constructor-level
//! impossibilities rather than runtime cases.

use std::cmp::Ordering;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exponent::Valuation;
use crate::number::{ComparisonOutcome, LcNumber};
use crate::series::PowerSeries;

fn decide(a: &LcNumber, b: &LcNumber) -> Result<Ordering> {
    match a.compare(b) {
        ComparisonOutcome::Less => Ok(Ordering::Less),
        ComparisonOutcome::Equal => Ok(Ordering::Equal),
        ComparisonOutcome::Greater => Ok(Ordering::Greater),
        ComparisonOutcome::Indeterminate(h) => Err(Error::IndeterminateOrder(h)),
    }
}

/// An interval `I(a, b)` with Levi-Civita endpoints and independent
/// closedness flags. Degenerate intervals (`a = b`) must be closed on
/// both sides.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: LcNumber,
    hi: LcNumber,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: LcNumber, hi: LcNumber, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        match decide(&lo, &hi)? {
            Ordering::Less => Ok(Interval { lo, hi, lo_closed, hi_closed }),
            Ordering::Equal if lo_closed && hi_closed => {
                Ok(Interval { lo, hi, lo_closed, hi_closed })
            }
            Ordering::Equal => Err(Error::Domain(
                "degenerate interval must be closed on both sides".into(),
            )),
            Ordering::Greater => Err(Error::Domain("interval endpoints out of order".into())),
        }
    }

    pub fn closed(lo: LcNumber, hi: LcNumber) -> Result<Self> {
        Interval::new(lo, hi, true, true)
    }

    pub fn open(lo: LcNumber, hi: LcNumber) -> Result<Self> {
        Interval::new(lo, hi, false, false)
    }

    pub fn closed_real(a: f64, b: f64) -> Self {
        Interval::closed(LcNumber::from_real(a), LcNumber::from_real(b))
            .expect("real endpoints out of order")
    }

    pub fn point(x: LcNumber) -> Self {
        Interval { lo: x.clone(), hi: x, lo_closed: true, hi_closed: true }
    }

    pub fn lo(&self) -> &LcNumber {
        &self.lo
    }

    pub fn hi(&self) -> &LcNumber {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    /// `l(I(a, b)) = b − a`.
    pub fn length(&self) -> LcNumber {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.lo.compare(&self.hi), ComparisonOutcome::Equal)
    }

    pub fn midpoint(&self) -> LcNumber {
        (&self.lo + &self.hi).scale(0.5)
    }

    pub fn contains(&self, x: &LcNumber) -> Result<bool> {
        let lo_ok = match decide(&self.lo, x)? {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        if !lo_ok {
            return Ok(false);
        }
        Ok(match decide(x, &self.hi)? {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        })
    }

    pub fn intersect(&self, other: &Interval) -> Result<Option<Interval>> {
        let (lo, lo_closed) = match decide(&self.lo, &other.lo)? {
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match decide(&self.hi, &other.hi)? {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        match decide(&lo, &hi)? {
            Ordering::Less => Ok(Some(Interval { lo, hi, lo_closed, hi_closed })),
            Ordering::Equal if lo_closed && hi_closed => {
                Ok(Some(Interval { lo, hi, lo_closed, hi_closed }))
            }
            _ => Ok(None),
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Interval", 4)?;
        st.serialize_field("lo", &self.lo)?;
        st.serialize_field("hi", &self.hi)?;
        st.serialize_field("lc", &self.lo_closed)?;
        st.serialize_field("hc", &self.hi_closed)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            lo: LcNumber,
            hi: LcNumber,
            lc: bool,
            hc: bool,
        }
        let w = Wire::deserialize(deserializer)?;
        Interval::new(w.lo, w.hi, w.lc, w.hc).map_err(serde::de::Error::custom)
    }
}

/// A finite union of pairwise disjoint intervals, kept sorted.
#[derive(Clone, Debug, Default)]
pub struct MeasurableSet {
    intervals: Vec<Interval>,
}

fn sort_intervals(mut v: Vec<Interval>) -> Result<Vec<Interval>> {
    // Selection sort so that the indeterminate-comparison error can
    // surface; interval counts are small.
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            let swap = match decide(&v[j].lo, &v[i].lo)? {
                Ordering::Less => true,
                Ordering::Equal => v[j].lo_closed && !v[i].lo_closed,
                Ordering::Greater => false,
            };
            if swap {
                v.swap(i, j);
            }
        }
    }
    Ok(v)
}

impl MeasurableSet {
    pub fn empty() -> Self {
        MeasurableSet { intervals: Vec::new() }
    }

    /// Builds a set from intervals that must already be pairwise disjoint
    /// (touching closed endpoints are rejected; use [`union`](Self::union)
    /// to merge).
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        let intervals = sort_intervals(intervals)?;
        for pair in intervals.windows(2) {
            match decide(&pair[0].hi, &pair[1].lo)? {
                Ordering::Less => {}
                Ordering::Equal if !(pair[0].hi_closed && pair[1].lo_closed) => {}
                _ => return Err(Error::Domain("intervals overlap".into())),
            }
        }
        Ok(MeasurableSet { intervals })
    }

    pub fn from_interval(i: Interval) -> Self {
        MeasurableSet { intervals: vec![i] }
    }

    pub fn interval_real(a: f64, b: f64) -> Self {
        MeasurableSet::from_interval(Interval::closed_real(a, b))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `m(A)`: the sum of the interval lengths.
    pub fn measure(&self) -> LcNumber {
        let mut acc = LcNumber::zero();
        for i in &self.intervals {
            acc = &acc + &i.length();
        }
        acc
    }

    pub fn contains(&self, x: &LcNumber) -> Result<bool> {
        for i in &self.intervals {
            if i.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Union, merging intervals that overlap or touch with at least one
    /// closed endpoint.
    pub fn union(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        let mut all: Vec<Interval> = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        let all = sort_intervals(all)?;
        let mut out: Vec<Interval> = Vec::new();
        for next in all {
            match out.last_mut() {
                None => out.push(next),
                Some(cur) => {
                    let joined = match decide(&next.lo, &cur.hi)? {
                        Ordering::Less => true,
                        Ordering::Equal => next.lo_closed || cur.hi_closed,
                        Ordering::Greater => false,
                    };
                    if !joined {
                        out.push(next);
                        continue;
                    }
                    match decide(&next.hi, &cur.hi)? {
                        Ordering::Greater => {
                            cur.hi = next.hi;
                            cur.hi_closed = next.hi_closed;
                        }
                        Ordering::Equal => cur.hi_closed = cur.hi_closed || next.hi_closed,
                        Ordering::Less => {}
                    }
                }
            }
        }
        Ok(MeasurableSet { intervals: out })
    }

    pub fn intersect(&self, other: &MeasurableSet) -> Result<MeasurableSet> {
        let mut out = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                if let Some(k) = a.intersect(b)? {
                    out.push(k);
                }
            }
        }
        Ok(MeasurableSet { intervals: sort_intervals(out)? })
    }

    /// Relative complement `bound \ self`. Finite unions are closed under
    /// it; absolute complements are not representable.
    pub fn complement_within(&self, bound: &Interval) -> Result<MeasurableSet> {
        let clipped = self.intersect(&MeasurableSet::from_interval(bound.clone()))?;
        let mut out = Vec::new();
        let mut cursor = bound.lo().clone();
        let mut cursor_closed = bound.lo_closed();
        for i in &clipped.intervals {
            match decide(&cursor, i.lo())? {
                Ordering::Less => {
                    let gap = Interval::new(
                        cursor.clone(),
                        i.lo().clone(),
                        cursor_closed,
                        !i.lo_closed(),
                    );
                    if let Ok(g) = gap {
                        out.push(g);
                    }
                }
                Ordering::Equal => {
                    if cursor_closed && !i.lo_closed() {
                        out.push(Interval::point(cursor.clone()));
                    }
                }
                Ordering::Greater => {}
            }
            cursor = i.hi().clone();
            cursor_closed = !i.hi_closed();
        }
        match decide(&cursor, bound.hi())? {
            Ordering::Less => {
                out.push(Interval::new(
                    cursor,
                    bound.hi().clone(),
                    cursor_closed,
                    bound.hi_closed(),
                )?);
            }
            Ordering::Equal => {
                if cursor_closed && bound.hi_closed() {
                    out.push(Interval::point(cursor));
                }
            }
            Ordering::Greater => {}
        }
        Ok(MeasurableSet { intervals: out })
    }
}

impl Serialize for MeasurableSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.intervals.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MeasurableSet {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Interval>::deserialize(deserializer)?;
        MeasurableSet::new(v).map_err(serde::de::Error::custom)
    }
}

/// A measurable piecewise function: finitely many disjoint intervals,
/// each carrying a power series; zero off the pieces.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PiecewiseSimple {
    pieces: Vec<Piece>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Piece {
    pub interval: Interval,
    pub series: PowerSeries,
}

/// One refined segment of a common refinement: the sub-interval together
/// with each operand's series on it (`None` = identically zero there).
struct Segment {
    interval: Interval,
    left: Option<PowerSeries>,
    right: Option<PowerSeries>,
}

impl PiecewiseSimple {
    pub fn new(pieces: Vec<(Interval, PowerSeries)>) -> Result<Self> {
        let mut ps: Vec<Piece> = pieces
            .into_iter()
            .map(|(interval, series)| Piece { interval, series })
            .collect();
        for i in 0..ps.len() {
            for j in (i + 1)..ps.len() {
                let swap = match decide(&ps[j].interval.lo, &ps[i].interval.lo)? {
                    Ordering::Less => true,
                    Ordering::Equal => ps[j].interval.lo_closed && !ps[i].interval.lo_closed,
                    Ordering::Greater => false,
                };
                if swap {
                    ps.swap(i, j);
                }
            }
        }
        for pair in ps.windows(2) {
            if pair[0].interval.intersect(&pair[1].interval)?.is_some() {
                return Err(Error::Domain("piece intervals overlap".into()));
            }
        }
        Ok(PiecewiseSimple { pieces: ps })
    }

    pub fn constant_on(interval: Interval, value: LcNumber) -> Self {
        PiecewiseSimple {
            pieces: vec![Piece { interval, series: PowerSeries::constant(value) }],
        }
    }

    /// The zero function (no pieces).
    pub fn zero() -> Self {
        PiecewiseSimple { pieces: Vec::new() }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn domain(&self) -> Result<MeasurableSet> {
        let mut out = MeasurableSet::empty();
        for p in &self.pieces {
            out = out.union(&MeasurableSet::from_interval(p.interval.clone()))?;
        }
        Ok(out)
    }

    /// Pointwise value; zero off the pieces.
    pub fn eval_at(&self, x: &LcNumber, target: Valuation) -> Result<LcNumber> {
        for p in &self.pieces {
            if p.interval.contains(x)? {
                return p.series.eval(x, target);
            }
        }
        Ok(LcNumber::zero())
    }

    /// `∫_A f` by antiderivative evaluation on every piece ∩ A.
    pub fn integrate(&self, a: &MeasurableSet) -> Result<LcNumber> {
        let mut acc = LcNumber::zero();
        for p in &self.pieces {
            let anti = p.series.antiderivative();
            for j in a.intervals() {
                if let Some(k) = p.interval.intersect(j)? {
                    if k.is_degenerate() {
                        continue;
                    }
                    let upper = anti.eval(k.hi(), Valuation::Infinite)?;
                    let lower = anti.eval(k.lo(), Valuation::Infinite)?;
                    acc = &acc + &(&upper - &lower);
                }
            }
        }
        Ok(acc)
    }

    pub fn integrate_interval(&self, i: &Interval) -> Result<LcNumber> {
        self.integrate(&MeasurableSet::from_interval(i.clone()))
    }

    /// Piecewise term-wise derivative.
    pub fn derivative(&self) -> PiecewiseSimple {
        PiecewiseSimple {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { interval: p.interval.clone(), series: p.series.derivative() })
                .collect(),
        }
    }

    pub fn restrict(&self, a: &MeasurableSet) -> Result<PiecewiseSimple> {
        let mut out = Vec::new();
        for p in &self.pieces {
            for j in a.intervals() {
                if let Some(k) = p.interval.intersect(j)? {
                    out.push(Piece { interval: k, series: p.series.clone() });
                }
            }
        }
        Ok(PiecewiseSimple { pieces: out })
    }

    fn series_at(&self, x: &LcNumber) -> Result<Option<PowerSeries>> {
        for p in &self.pieces {
            if p.interval.contains(x)? {
                return Ok(Some(p.series.clone()));
            }
        }
        Ok(None)
    }

    /// Common refinement of two piecewise functions, optionally clipped
    /// to a set. Cut points are all piece and set endpoints; segments are
    /// the open intervals between consecutive cuts plus the cut points
    /// themselves as degenerate pieces.
    fn refine(
        &self,
        other: &PiecewiseSimple,
        within: Option<&MeasurableSet>,
    ) -> Result<Vec<Segment>> {
        let mut cuts: Vec<LcNumber> = Vec::new();
        {
            let mut push = |x: &LcNumber| cuts.push(x.clone());
            for p in self.pieces.iter().chain(other.pieces.iter()) {
                push(&p.interval.lo);
                push(&p.interval.hi);
            }
            if let Some(a) = within {
                for i in a.intervals() {
                    push(&i.lo);
                    push(&i.hi);
                }
            }
        }
        // Sort and deduplicate with decidable comparisons.
        for i in 0..cuts.len() {
            for j in (i + 1)..cuts.len() {
                if decide(&cuts[j], &cuts[i])? == Ordering::Less {
                    cuts.swap(i, j);
                }
            }
        }
        let mut dedup: Vec<LcNumber> = Vec::new();
        for c in cuts {
            if let Some(last) = dedup.last() {
                if decide(last, &c)? == Ordering::Equal {
                    continue;
                }
            }
            dedup.push(c);
        }

        let mut segments = Vec::new();
        let mut consider = |interval: Interval, rep: LcNumber| -> Result<()> {
            if let Some(a) = within {
                if !a.contains(&rep)? {
                    return Ok(());
                }
            }
            let left = self.series_at(&rep)?;
            let right = other.series_at(&rep)?;
            if left.is_some() || right.is_some() {
                segments.push(Segment { interval, left, right });
            }
            Ok(())
        };
        for (i, c) in dedup.iter().enumerate() {
            consider(Interval::point(c.clone()), c.clone())?;
            if let Some(next) = dedup.get(i + 1) {
                let open = Interval::new(c.clone(), next.clone(), false, false)?;
                let rep = open.midpoint();
                consider(open, rep)?;
            }
        }
        Ok(segments)
    }

    /// Merges adjacent refined pieces that carry the same function.
    fn coalesce(pieces: Vec<Piece>) -> Result<Vec<Piece>> {
        let mut out: Vec<Piece> = Vec::new();
        for next in pieces {
            match out.last_mut() {
                Some(cur)
                    if decide(&cur.interval.hi, &next.interval.lo)? == Ordering::Equal
                        && (cur.interval.hi_closed || next.interval.lo_closed)
                        && cur.series.same_function(&next.series) =>
                {
                    cur.interval.hi = next.interval.hi;
                    cur.interval.hi_closed = next.interval.hi_closed;
                }
                _ => out.push(next),
            }
        }
        Ok(out)
    }

    fn combine(
        &self,
        other: &PiecewiseSimple,
        f: impl Fn(Option<&PowerSeries>, Option<&PowerSeries>) -> Option<PowerSeries>,
    ) -> Result<PiecewiseSimple> {
        let segments = self.refine(other, None)?;
        let mut pieces = Vec::new();
        for seg in segments {
            if let Some(series) = f(seg.left.as_ref(), seg.right.as_ref()) {
                if !series.is_zero() {
                    pieces.push(Piece { interval: seg.interval, series });
                }
            }
        }
        Ok(PiecewiseSimple { pieces: Self::coalesce(pieces)? })
    }

    pub fn add(&self, other: &PiecewiseSimple) -> Result<PiecewiseSimple> {
        self.combine(other, |a, b| match (a, b) {
            (Some(x), Some(y)) => Some(x.add(y)),
            (Some(x), None) => Some(x.clone()),
            (None, Some(y)) => Some(y.clone()),
            (None, None) => None,
        })
    }

    pub fn sub(&self, other: &PiecewiseSimple) -> Result<PiecewiseSimple> {
        self.add(&other.scale_real(-1.0))
    }

    /// Pointwise product on the common refinement; exact for polynomial
    /// pieces.
    pub fn product(&self, other: &PiecewiseSimple) -> Result<PiecewiseSimple> {
        self.combine(other, |a, b| match (a, b) {
            (Some(x), Some(y)) => Some(x.mul(y)),
            _ => None,
        })
    }

    pub fn pow(&self, m: u32) -> Result<PiecewiseSimple> {
        if m == 0 {
            return Err(Error::Domain(
                "zeroth power of a piecewise function has no bounded support".into(),
            ));
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &LcNumber) -> PiecewiseSimple {
        PiecewiseSimple {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { interval: p.interval.clone(), series: p.series.scale(c) })
                .collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> PiecewiseSimple {
        PiecewiseSimple {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { interval: p.interval.clone(), series: p.series.scale_real(c) })
                .collect(),
        }
    }

    /// Equality almost everywhere on `A`: on a common refinement, the
    /// pieces where the series differ are all degenerate.
    pub fn ae_eq(&self, other: &PiecewiseSimple, a: &MeasurableSet) -> Result<bool> {
        let segments = self.refine(other, Some(a))?;
        for seg in segments {
            if seg.interval.is_degenerate() {
                continue;
            }
            let zero = PowerSeries::constant(LcNumber::zero());
            let l = seg.left.as_ref().unwrap_or(&zero);
            let r = seg.right.as_ref().unwrap_or(&zero);
            if !l.same_function(r) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;

    fn num(c: f64) -> LcNumber {
        LcNumber::from_real(c)
    }

    #[test]
    fn measure_examples() {
        let a = MeasurableSet::new(vec![
            Interval::closed_real(0.0, 1.0),
            Interval::closed_real(2.0, 3.0),
        ])
        .unwrap();
        assert_eq!(a.measure().coefficient(0), 2.0);

        let i = Interval::closed(num(0.0), LcNumber::d()).unwrap();
        assert_eq!(
            MeasurableSet::from_interval(i).measure().terms(),
            &[(Exponent::int(1), 1.0)]
        );

        // [0,1] ∪ [1+d, 2] has measure 2 − d.
        let b = MeasurableSet::new(vec![
            Interval::closed_real(0.0, 1.0),
            Interval::closed(&num(1.0) + &LcNumber::d(), num(2.0)).unwrap(),
        ])
        .unwrap();
        let m = b.measure();
        assert_eq!(m.coefficient(0), 2.0);
        assert_eq!(m.coefficient(1), -1.0);
    }

    #[test]
    fn union_intersect_examples() {
        let a = MeasurableSet::interval_real(0.0, 2.0);
        let b = MeasurableSet::interval_real(1.0, 3.0);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.intervals().len(), 1);
        assert_eq!(i.measure().coefficient(0), 1.0);

        let u = MeasurableSet::interval_real(0.0, 1.0)
            .union(&MeasurableSet::interval_real(1.0, 2.0))
            .unwrap();
        assert_eq!(u.intervals().len(), 1);
        assert_eq!(u.measure().coefficient(0), 2.0);

        // Inclusion–exclusion: m([0,2] ∪ [1,3]) = 2 + 2 − 1 = 3.
        let un = a.union(&b).unwrap();
        assert_eq!(un.measure().coefficient(0), 3.0);

        // Open adjacency does not merge.
        let o1 = MeasurableSet::from_interval(Interval::open(num(0.0), num(1.0)).unwrap());
        let o2 = MeasurableSet::from_interval(Interval::open(num(1.0), num(2.0)).unwrap());
        assert_eq!(o1.union(&o2).unwrap().intervals().len(), 2);
    }

    #[test]
    fn integrate_examples() {
        let x = PiecewiseSimple::new(vec![(
            Interval::closed_real(0.0, 1.0),
            PowerSeries::identity(),
        )])
        .unwrap();
        let v = x.integrate(&MeasurableSet::interval_real(0.0, 1.0)).unwrap();
        assert!((v.coefficient(0) - 0.5).abs() < 1e-15);

        let one = PiecewiseSimple::constant_on(
            Interval::closed(num(0.0), LcNumber::d()).unwrap(),
            num(1.0),
        );
        let set = MeasurableSet::from_interval(Interval::closed(num(0.0), LcNumber::d()).unwrap());
        let v = one.integrate(&set).unwrap();
        assert_eq!(v.terms(), &[(Exponent::int(1), 1.0)]);
    }

    #[test]
    fn ae_eq_examples() {
        let whole = MeasurableSet::interval_real(0.0, 1.0);
        let f = PiecewiseSimple::constant_on(Interval::closed_real(0.0, 1.0), num(1.0));
        let g = PiecewiseSimple::new(vec![
            (
                Interval::new(num(0.0), num(1.0), true, false).unwrap(),
                PowerSeries::constant(num(1.0)),
            ),
            (Interval::point(num(1.0)), PowerSeries::constant(num(7.0))),
        ])
        .unwrap();
        assert!(f.ae_eq(&g, &whole).unwrap());

        let x = PiecewiseSimple::new(vec![(
            Interval::closed_real(0.0, 1.0),
            PowerSeries::identity(),
        )])
        .unwrap();
        let x2 = PiecewiseSimple::new(vec![(
            Interval::closed_real(0.0, 1.0),
            PowerSeries::real_polynomial(&[0.0, 0.0, 1.0]),
        )])
        .unwrap();
        assert!(!x.ae_eq(&x2, &whole).unwrap());

        // Equal a.e. implies equal integrals.
        let vf = f.integrate(&whole).unwrap();
        let vg = g.integrate(&whole).unwrap();
        assert!(vf.approx_eq(&vg, 1e-15));
    }

    #[test]
    fn product_refines_and_coalesces() {
        let f = PiecewiseSimple::constant_on(Interval::closed_real(0.0, 2.0), num(2.0));
        let g = PiecewiseSimple::constant_on(Interval::closed_real(1.0, 3.0), num(3.0));
        let p = f.product(&g).unwrap();
        assert_eq!(p.pieces().len(), 1);
        let v = p.integrate(&MeasurableSet::interval_real(0.0, 3.0)).unwrap();
        assert_eq!(v.coefficient(0), 6.0);
    }

    #[test]
    fn indeterminate_endpoints_error() {
        let fuzzy = LcNumber::one().with_horizon(Valuation::finite(2));
        let exact = LcNumber::one();
        assert!(matches!(
            Interval::closed(fuzzy, exact),
            Err(Error::IndeterminateOrder(_))
        ));
    }

    #[test]
    fn complement_within_bound() {
        let a = MeasurableSet::interval_real(0.25, 0.5);
        let c = a.complement_within(&Interval::closed_real(0.0, 1.0)).unwrap();
        assert_eq!(c.intervals().len(), 2);
        let total = &c.measure() + &a.measure();
        assert_eq!(total.coefficient(0), 1.0);
    }
}
