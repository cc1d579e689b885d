//! Point streams and sign assignments.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::enumerate::{canonical_index, count_below, first_canonical_in, first_n_canonical_in};
use crate::error::Error;
use crate::interval::IntervalSet;
use crate::rational::Rational;
use crate::sign::Sign;

/// How far [`PointStream::stream_index`] is willing to walk the stream when
/// no closed form or scan applies.
const RANK_WALK_LIMIT: usize = 64;

/// Where in a stream a point sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StreamPosition {
    /// Position within the explicit prefix.
    Prefix(usize),
    /// A continuation point, identified by its canonical index.
    Continuation(BigUint),
}

/// A distinct-point enumeration of a set dense in `region`: the explicit
/// prefix, then the canonical enumeration restricted to `region` with prefix
/// points skipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointStream {
    prefix: Vec<Rational>,
    region: IntervalSet,
}

impl PointStream {
    pub fn new(prefix: Vec<Rational>, region: IntervalSet) -> Result<PointStream, Error> {
        if region.is_empty() {
            return Err(Error::InvalidOrdering("stream region is empty".into()));
        }
        for (i, p) in prefix.iter().enumerate() {
            if !region.contains(p) {
                return Err(Error::InvalidOrdering(format!("prefix point {p} lies outside {region}")));
            }
            if prefix[..i].contains(p) {
                return Err(Error::InvalidOrdering(format!("prefix point {p} repeated")));
            }
        }
        Ok(PointStream { prefix, region })
    }

    /// The canonical stream of the whole line.
    pub fn canonical() -> PointStream {
        PointStream { prefix: Vec::new(), region: IntervalSet::full() }
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn region(&self) -> &IntervalSet {
        &self.region
    }

    /// The first `n` points of the stream.
    pub fn take(&self, n: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.prefix.iter().take(n).cloned().collect();
        if out.len() < n {
            let more = first_n_canonical_in(&self.region, &self.prefix, n - out.len());
            out.extend(more.into_iter().map(|(_, q)| q));
        }
        out
    }

    /// The first `n` stream points that lie in the open set `within`, in stream
    /// order.
    pub fn take_within(&self, within: &IntervalSet, n: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.prefix.iter().filter(|p| within.contains(p)).take(n).cloned().collect();
        if out.len() < n {
            let set = self.region.intersection(within);
            let more = first_n_canonical_in(&set, &self.prefix, n - out.len());
            out.extend(more.into_iter().map(|(_, q)| q));
        }
        out
    }

    /// The earliest stream point inside the open set `target`.
    pub fn first_in(&self, target: &IntervalSet) -> Option<(Rational, StreamPosition)> {
        if let Some(i) = self.prefix.iter().position(|p| target.contains(p)) {
            return Some((self.prefix[i].clone(), StreamPosition::Prefix(i)));
        }
        let set = self.region.intersection(target);
        first_canonical_in(&set, &self.prefix).map(|(k, q)| (q, StreamPosition::Continuation(k)))
    }

    /// Exact 0-based stream index of a point, or `None` when it is too
    /// expensive to determine.
    pub fn stream_index(&self, point: &Rational, position: &StreamPosition) -> Option<BigUint> {
        match position {
            StreamPosition::Prefix(i) => Some(BigUint::from(*i)),
            StreamPosition::Continuation(k) => {
                let p = self.prefix.len();
                if let Some(in_region) = count_below(&self.region, k) {
                    let earlier_prefix = self.prefix.iter().filter(|q| canonical_index(q) < *k).count();
                    return Some(BigUint::from(p) + in_region - BigUint::from(earlier_prefix));
                }
                self.continuation_rank(point, RANK_WALK_LIMIT).map(|r| BigUint::from(p + r))
            }
        }
    }

    /// Rank of `point` among continuation points, if below `limit`. The walk
    /// stops early once it passes the point's canonical index.
    fn continuation_rank(&self, point: &Rational, limit: usize) -> Option<usize> {
        let target = canonical_index(point);
        let mut skip = self.prefix.clone();
        for rank in 0..limit {
            let (k, q) = first_canonical_in(&self.region, &skip)?;
            if q == *point {
                return Some(rank);
            }
            if k > target {
                return None;
            }
            skip.push(q);
        }
        None
    }
}

/// Sign function on stream indices: an explicit table and a default beyond it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignment {
    table: BTreeMap<usize, Sign>,
    default: Sign,
}

impl SignAssignment {
    pub fn new(table: BTreeMap<usize, Sign>, default: Sign) -> Result<SignAssignment, Error> {
        if default.is_zero() || table.values().any(|s| s.is_zero()) {
            return Err(Error::InvalidOrdering("signs must be + or -".into()));
        }
        Ok(SignAssignment { table, default })
    }

    pub fn constant(sign: Sign) -> SignAssignment {
        assert!(!sign.is_zero());
        SignAssignment { table: BTreeMap::new(), default: sign }
    }

    pub fn from_list(signs: &[Sign], default: Sign) -> Result<SignAssignment, Error> {
        SignAssignment::new(signs.iter().copied().enumerate().collect(), default)
    }

    pub fn table(&self) -> &BTreeMap<usize, Sign> {
        &self.table
    }

    pub fn default_sign(&self) -> Sign {
        self.default
    }

    pub fn at(&self, index: usize) -> Sign {
        self.table.get(&index).copied().unwrap_or(self.default)
    }

    fn max_key(&self) -> Option<usize> {
        self.table.keys().next_back().copied()
    }

    /// Sign attached to a point of `stream`. Exact: continuation points are
    /// only ranked when the table reaches past the prefix, and then only as far
    /// as the table goes.
    pub fn at_position(&self, stream: &PointStream, point: &Rational, position: &StreamPosition) -> Sign {
        match position {
            StreamPosition::Prefix(i) => self.at(*i),
            StreamPosition::Continuation(_) => {
                let p = stream.prefix().len();
                let Some(max) = self.max_key().filter(|m| *m >= p) else {
                    return self.default;
                };
                if let Some(idx) = stream.stream_index(point, position).and_then(|i| i.to_usize()) {
                    return self.at(idx);
                }
                match stream.continuation_rank(point, max - p + 1) {
                    Some(r) => self.at(p + r),
                    None => self.default,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn stream_skips_prefix_duplicates() {
        let s = PointStream::new(vec![int(1), frac(1, 2)], IntervalSet::full()).unwrap();
        assert_eq!(s.take(5), vec![int(1), frac(1, 2), int(0), int(-1), frac(-1, 2)]);
    }

    #[test]
    fn restricted_stream() {
        let s = PointStream::new(vec![], IntervalSet::above(int(0))).unwrap();
        assert_eq!(s.take(4), vec![int(1), frac(1, 2), int(2), frac(1, 3)]);
        let (q, pos) = s.first_in(&IntervalSet::interval(int(1), int(2))).unwrap();
        assert_eq!(q, frac(3, 2));
        assert_eq!(s.stream_index(&q, &pos), Some(BigUint::from(4u32)));
    }

    #[test]
    fn stream_index_with_prefix_on_full_line() {
        let s = PointStream::new(vec![frac(-3, 2), int(7)], IntervalSet::full()).unwrap();
        // Continuation: 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, 3/2 (skipped -3/2) ...
        let (q, pos) = s.first_in(&IntervalSet::interval(int(1), int(2))).unwrap();
        assert_eq!(q, frac(3, 2));
        let brute = s.take(20).iter().position(|p| *p == q).unwrap();
        assert_eq!(s.stream_index(&q, &pos), Some(BigUint::from(brute)));
    }

    #[test]
    fn invalid_streams() {
        assert!(PointStream::new(vec![int(-1)], IntervalSet::above(int(0))).is_err());
        assert!(PointStream::new(vec![int(1), int(1)], IntervalSet::full()).is_err());
        assert!(PointStream::new(vec![], IntervalSet::empty()).is_err());
        assert!(SignAssignment::constant(Sign::Positive).at(9) == Sign::Positive);
        assert!(SignAssignment::new(BTreeMap::new(), Sign::Zero).is_err());
    }

    #[test]
    fn sign_table_past_prefix_on_sparse_region() {
        let region = IntervalSet::interval(int(40), int(41));
        let s = PointStream::new(vec![], region.clone()).unwrap();
        let signs = SignAssignment::from_list(&[Sign::Negative, Sign::Positive], Sign::Negative).unwrap();
        let pts = s.take(3);
        for (i, p) in pts.iter().enumerate() {
            let (_, pos) =
                s.first_in(&IntervalSet::interval(p.clone() - frac(1, 10_000), p.clone() + frac(1, 10_000))).unwrap();
            let expect = signs.at(i);
            assert_eq!(signs.at_position(&s, p, &pos), expect);
        }
    }
}
