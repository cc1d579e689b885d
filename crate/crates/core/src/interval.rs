//! Finite unions of open intervals with rational (or infinite) endpoints.
//!
//! An [`IntervalSet`] is stored as the sorted list of its connected components,
//! so two sets are equal exactly when their component lists are equal. Note
//! that `(0, 1) ∪ (1, 2)` has two components: the shared endpoint is not in the
//! set.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::rational::{self, Rational};

/// An endpoint of an open interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(q) => Some(q),
            _ => None,
        }
    }

    fn negate(&self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Finite(q) => Bound::Finite(-q),
        }
    }

    fn encode(&self) -> String {
        match self {
            Bound::NegInf => "-inf".to_string(),
            Bound::PosInf => "inf".to_string(),
            Bound::Finite(q) => rational::format(q),
        }
    }

    fn decode(s: &str) -> Result<Bound, Error> {
        match s.trim() {
            "-inf" => Ok(Bound::NegInf),
            "inf" | "+inf" => Ok(Bound::PosInf),
            other => rational::parse(other).map(Bound::Finite),
        }
    }

    /// Compares the bound with a finite value.
    pub fn cmp_value(&self, x: &Rational) -> Ordering {
        match self {
            Bound::NegInf => Ordering::Less,
            Bound::PosInf => Ordering::Greater,
            Bound::Finite(q) => q.cmp(x),
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Bound) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Bound) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-∞"),
            Bound::PosInf => f.write_str("∞"),
            Bound::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl From<Rational> for Bound {
    fn from(q: Rational) -> Bound {
        Bound::Finite(q)
    }
}

/// A nonempty open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn new(lo: impl Into<Bound>, hi: impl Into<Bound>) -> Option<Interval> {
        let (lo, hi) = (lo.into(), hi.into());
        (lo < hi && lo != Bound::PosInf && hi != Bound::NegInf).then_some(Interval { lo, hi })
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.cmp_value(x) == Ordering::Less && self.hi.cmp_value(x) == Ordering::Greater
    }

    pub fn closure_contains(&self, x: &Rational) -> bool {
        self.lo.cmp_value(x) != Ordering::Greater && self.hi.cmp_value(x) != Ordering::Less
    }

    /// Some rational strictly inside the interval.
    pub fn sample(&self) -> Rational {
        match (&self.lo, &self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) => rational::midpoint(a, b),
            (Bound::Finite(a), _) => a + rational::one(),
            (_, Bound::Finite(b)) => b - rational::one(),
            _ => rational::zero(),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A finite union of disjoint open intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    components: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet::default()
    }

    pub fn full() -> IntervalSet {
        IntervalSet { components: vec![Interval { lo: Bound::NegInf, hi: Bound::PosInf }] }
    }

    /// The open interval `(lo, hi)`, or the empty set when `lo >= hi`.
    pub fn interval(lo: impl Into<Bound>, hi: impl Into<Bound>) -> IntervalSet {
        IntervalSet::from_intervals(Interval::new(lo, hi))
    }

    pub fn above(lo: Rational) -> IntervalSet {
        IntervalSet::interval(lo, Bound::PosInf)
    }

    pub fn below(hi: Rational) -> IntervalSet {
        IntervalSet::interval(Bound::NegInf, hi)
    }

    /// Union of arbitrary (possibly overlapping) open intervals.
    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> IntervalSet {
        let mut items: Vec<Interval> = intervals.into_iter().collect();
        items.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut components: Vec<Interval> = Vec::with_capacity(items.len());
        for iv in items {
            match components.last_mut() {
                Some(last) if iv.lo < last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => components.push(iv),
            }
        }
        IntervalSet { components }
    }

    /// Builds a set from `(lo, hi)` pairs, rejecting empty intervals.
    pub fn try_from_pairs(pairs: impl IntoIterator<Item = (Bound, Bound)>) -> Result<IntervalSet, Error> {
        let mut out = Vec::new();
        for (lo, hi) in pairs {
            let display = format!("({lo}, {hi})");
            out.push(
                Interval::new(lo, hi).ok_or_else(|| Error::InvalidIntervals(format!("empty interval {display}")))?,
            );
        }
        Ok(IntervalSet::from_intervals(out))
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_full(&self) -> bool {
        matches!(self.components.as_slice(), [Interval { lo: Bound::NegInf, hi: Bound::PosInf }])
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.components.partition_point(|iv| iv.hi.cmp_value(x) != Ordering::Greater);
        self.components.get(idx).is_some_and(|iv| iv.contains(x))
    }

    pub fn closure_contains(&self, x: &Rational) -> bool {
        self.components.iter().any(|iv| iv.closure_contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_intervals(self.components.iter().chain(&other.components).cloned())
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.components.len() && j < other.components.len() {
            let (a, b) = (&self.components[i], &other.components[j]);
            let lo = a.lo.clone().max(b.lo.clone());
            let hi = a.hi.clone().min(b.hi.clone());
            if let Some(iv) = Interval::new(lo, hi) {
                out.push(iv);
            }
            if a.hi <= b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { components: out }
    }

    pub fn intersects(&self, other: &IntervalSet) -> bool {
        !self.intersection(other).is_empty()
    }

    /// Complement of the closure: the largest open set disjoint from `self`'s
    /// closure.
    pub fn exterior(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = Bound::NegInf;
        for iv in &self.components {
            if let Some(gap) = Interval::new(cursor.clone(), iv.lo.clone()) {
                out.push(gap);
            }
            cursor = iv.hi.clone();
        }
        if let Some(gap) = Interval::new(cursor, Bound::PosInf) {
            out.push(gap);
        }
        IntervalSet { components: out }
    }

    /// `self \ closure(other)`, which is open.
    pub fn minus_closure(&self, other: &IntervalSet) -> IntervalSet {
        self.intersection(&other.exterior())
    }

    /// True when the closure of the set is the whole line.
    pub fn is_dense(&self) -> bool {
        self.exterior().is_empty()
    }

    /// Finite endpoints of all components, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut pts: Vec<Rational> = self
            .components
            .iter()
            .flat_map(|iv| [iv.lo.finite().cloned(), iv.hi.finite().cloned()])
            .flatten()
            .collect();
        pts.dedup();
        pts
    }

    /// Image under `x ↦ -x`.
    pub fn negate(&self) -> IntervalSet {
        IntervalSet {
            components: self
                .components
                .iter()
                .rev()
                .map(|iv| Interval { lo: iv.hi.negate(), hi: iv.lo.negate() })
                .collect(),
        }
    }

    /// `self △ other`. The result need not be open; see [`RationalSet`].
    pub fn symmetric_difference(&self, other: &IntervalSet) -> RationalSet {
        let open = self.minus_closure(other).union(&other.minus_closure(self));
        let mut isolated: Vec<Rational> = self
            .endpoints()
            .into_iter()
            .chain(other.endpoints())
            .filter(|x| (self.contains(x) != other.contains(x)) && !open.contains(x))
            .collect();
        isolated.sort();
        isolated.dedup();
        RationalSet { open, points: isolated }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("∅");
        }
        for (i, iv) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self.components.iter().map(|iv| [iv.lo.encode(), iv.hi.encode()]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<IntervalSet, D::Error> {
        let raw = Vec::<[String; 2]>::deserialize(d)?;
        let pairs = raw
            .iter()
            .map(|[lo, hi]| Ok((Bound::decode(lo)?, Bound::decode(hi)?)))
            .collect::<Result<Vec<_>, Error>>()
            .map_err(serde::de::Error::custom)?;
        IntervalSet::try_from_pairs(pairs).map_err(serde::de::Error::custom)
    }
}

/// An open [`IntervalSet`] together with finitely many extra rational points.
///
/// Boolean combinations of finitely many open rational intervals always have
/// this shape: away from the finitely many endpoints they are open.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RationalSet {
    pub open: IntervalSet,
    /// Points of the set outside `open`, sorted.
    #[serde(with = "crate::rational::serde_str::vec")]
    pub points: Vec<Rational>,
}

impl RationalSet {
    pub fn is_empty(&self) -> bool {
        self.open.is_empty() && self.points.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.open.contains(x) || self.points.binary_search(x).is_ok()
    }
}

impl fmt::Display for RationalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.open)?;
        for p in &self.points {
            write!(f, " ∪ {{{p}}}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn iv(a: i64, b: i64) -> IntervalSet {
        IntervalSet::interval(int(a), int(b))
    }

    #[test]
    fn touching_components_stay_separate() {
        let s = iv(0, 1).union(&iv(1, 2));
        assert_eq!(s.components().len(), 2);
        assert!(!s.contains(&int(1)));
        assert!(s.closure_contains(&int(1)));
        assert_eq!(iv(0, 2).union(&iv(1, 3)), iv(0, 3));
    }

    #[test]
    fn intersection_and_exterior() {
        let a = iv(0, 2).union(&iv(3, 5));
        let b = iv(1, 4);
        assert_eq!(a.intersection(&b), iv(1, 2).union(&iv(3, 4)));
        let ext = iv(0, 1).union(&iv(1, 2)).exterior();
        assert_eq!(ext, IntervalSet::below(int(0)).union(&IntervalSet::above(int(2))));
        assert!(IntervalSet::empty().exterior().is_full());
        assert!(IntervalSet::full().exterior().is_empty());
    }

    #[test]
    fn density() {
        let two_halves = IntervalSet::above(int(0)).union(&IntervalSet::below(int(0)));
        assert!(two_halves.is_dense());
        assert!(!IntervalSet::above(int(0)).is_dense());
    }

    #[test]
    fn symmetric_difference_keeps_isolated_points() {
        let a = iv(0, 2);
        let b = iv(0, 1).union(&iv(1, 2));
        let d = a.symmetric_difference(&b);
        assert!(d.open.is_empty());
        assert_eq!(d.points, vec![int(1)]);

        let d = iv(0, 2).symmetric_difference(&iv(1, 3));
        assert_eq!(d.open, iv(0, 1).union(&iv(2, 3)));
        assert_eq!(d.points, vec![int(1), int(2)]);
        assert!(d.contains(&int(1)) && d.contains(&int(2)) && !d.contains(&frac(3, 2)));
    }

    #[test]
    fn negate_reverses() {
        let s = iv(1, 2).union(&IntervalSet::above(int(3)));
        assert_eq!(s.negate(), IntervalSet::below(int(-3)).union(&iv(-2, -1)));
    }

    #[test]
    fn json_round_trip() {
        let s = IntervalSet::below(frac(-1, 2)).union(&iv(1, 2));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"[["-inf","-1/2"],["1","2"]]"#);
        let back: IntervalSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<IntervalSet>(r#"[["2","1"]]"#).is_err());
    }
}
