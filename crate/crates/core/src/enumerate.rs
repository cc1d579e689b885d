//! The canonical enumeration of the rationals.
//!
//! Term `0` is `0`; for `k >= 1` with `j = ⌈k/2⌉` the term is `+r_j` when `k`
//! is odd and `-r_j` when `k` is even, where `r_1, r_2, …` lists the positive
//! rationals in Calkin–Wilf (breadth-first) order: `1, 1/2, 2, 1/3, 3/2, …`.
//!
//! Besides indexing in both directions, the module answers "which member of
//! this set comes first in the enumeration?" without scanning. The
//! breadth-first index of a positive rational is `2^depth + position`, and the
//! depth is the Stern–Brocot depth, so the earliest member of an open interval
//! is its unique simplest rational unless an excluded point forces a split.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::{Bound, IntervalSet, RationalSet};
use crate::rational::{self, Rational};

/// Positive rational at 1-based breadth-first position `j` of the Calkin–Wilf
/// tree.
pub fn calkin_wilf(j: &BigUint) -> Rational {
    assert!(!j.is_zero(), "Calkin-Wilf positions start at 1");
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    let bits = j.bits();
    for i in (0..bits - 1).rev() {
        if j.bit(i) {
            a += &b;
        } else {
            b += &a;
        }
    }
    Rational::new(a, b)
}

/// Inverse of [`calkin_wilf`]. Panics unless `q > 0`.
pub fn calkin_wilf_position(q: &Rational) -> BigUint {
    assert!(q.is_positive(), "only positive rationals have a Calkin-Wilf position");
    let mut a = q.numer().magnitude().clone();
    let mut b = q.denom().magnitude().clone();
    // Runs of identical steps from the node up to the root, bottom first.
    let mut runs: Vec<(bool, BigUint)> = Vec::new();
    while !(a.is_one() && b.is_one()) {
        if a < b {
            let m = (&b - 1u32) / &a;
            b -= &m * &a;
            runs.push((false, m));
        } else {
            let m = (&a - 1u32) / &b;
            a -= &m * &b;
            runs.push((true, m));
        }
    }
    let mut j = BigUint::one();
    for (right, m) in runs.into_iter().rev() {
        let m = m.to_u64().expect("run length fits in u64");
        j <<= m;
        if right {
            j += (BigUint::one() << m) - 1u32;
        }
    }
    j
}

/// Term `k` of the canonical enumeration.
pub fn canonical_rational(k: &BigUint) -> Rational {
    if k.is_zero() {
        return rational::zero();
    }
    let j = (k + 1u32) >> 1;
    let r = calkin_wilf(&j);
    if k.is_odd() {
        r
    } else {
        -r
    }
}

/// Convenience wrapper for small indices.
pub fn canonical_rationals(k: u64) -> Rational {
    canonical_rational(&BigUint::from(k))
}

/// Index of `q` in the canonical enumeration.
pub fn canonical_index(q: &Rational) -> BigUint {
    if q.is_zero() {
        return BigUint::zero();
    }
    let j = calkin_wilf_position(&q.abs());
    if q.is_positive() {
        (j << 1) - 1u32
    } else {
        j << 1
    }
}

/// Iterator over the canonical enumeration from index 0, using the
/// successor rule `r ↦ 1 / (2⌊r⌋ - r + 1)` for the positive terms.
#[derive(Clone, Debug, Default)]
pub struct CanonicalRationals {
    index: u64,
    current: Option<Rational>,
}

impl CanonicalRationals {
    pub fn new() -> CanonicalRationals {
        CanonicalRationals::default()
    }
}

impl Iterator for CanonicalRationals {
    type Item = (u64, Rational);

    fn next(&mut self) -> Option<(u64, Rational)> {
        let k = self.index;
        self.index += 1;
        if k == 0 {
            return Some((0, rational::zero()));
        }
        if k % 2 == 1 {
            let next = match &self.current {
                None => rational::one(),
                Some(r) => (rational::int(2) * r.floor() - r + rational::one()).recip(),
            };
            self.current = Some(next.clone());
            Some((k, next))
        } else {
            Some((k, -self.current.clone().expect("odd term precedes even term")))
        }
    }
}

/// The positive rational of least Stern–Brocot depth in `(lo, hi)`, where
/// `0 <= lo` and `hi` is finite or `None` for `+∞`.
fn simplest_positive(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let m = lo.floor();
    let next_int = &m + rational::one();
    if hi.is_none_or(|h| next_int < *h) {
        return next_int;
    }
    let hi = hi.expect("bounded case");
    // (lo, hi) lies inside [m, m + 1]; recurse on reciprocals of the
    // fractional parts.
    let new_lo = (hi - &m).recip();
    let frac_lo = lo - &m;
    let new_hi = (!frac_lo.is_zero()).then(|| frac_lo.recip());
    m + simplest_positive(&new_lo, new_hi.as_ref()).recip()
}

/// Earliest positive rational (by Calkin–Wilf position) in `(lo, hi)` that is
/// not in `exclude`.
fn earliest_positive(lo: &Rational, hi: Option<&Rational>, exclude: &[Rational]) -> (BigUint, Rational) {
    let q = simplest_positive(lo, hi);
    if exclude.contains(&q) {
        let left = earliest_positive(lo, Some(&q), exclude);
        let right = earliest_positive(&q, hi, exclude);
        return if left.0 <= right.0 { left } else { right };
    }
    (calkin_wilf_position(&q), q)
}

fn earliest_in_positive_part(set: &IntervalSet, exclude: &[Rational]) -> Option<(BigUint, Rational)> {
    set.intersection(&IntervalSet::above(rational::zero()))
        .components()
        .iter()
        .map(|iv| {
            let lo = iv.lo.finite().cloned().unwrap_or_else(rational::zero);
            let hi = match &iv.hi {
                Bound::Finite(h) => Some(h),
                _ => None,
            };
            earliest_positive(&lo, hi, exclude)
        })
        .min_by(|a, b| a.0.cmp(&b.0))
}

/// The member of the open set `set`, outside `exclude`, with the least
/// canonical index, together with that index.
pub fn first_canonical_in(set: &IntervalSet, exclude: &[Rational]) -> Option<(BigUint, Rational)> {
    let zero = rational::zero();
    if set.contains(&zero) && !exclude.contains(&zero) {
        return Some((BigUint::zero(), zero));
    }
    let neg_exclude: Vec<Rational> = exclude.iter().map(|q| -q).collect();
    let pos = earliest_in_positive_part(set, exclude).map(|(j, q)| ((j << 1) - 1u32, q));
    let neg = earliest_in_positive_part(&set.negate(), &neg_exclude).map(|(j, q)| (j << 1, -q));
    match (pos, neg) {
        (Some(p), Some(n)) => Some(if p.0 < n.0 { p } else { n }),
        (p, n) => p.or(n),
    }
}

/// Like [`first_canonical_in`] for a set that may contain isolated points.
pub fn first_canonical_in_set(set: &RationalSet, exclude: &[Rational]) -> Option<(BigUint, Rational)> {
    let open = first_canonical_in(&set.open, exclude);
    let points = set
        .points
        .iter()
        .filter(|p| !exclude.contains(p))
        .map(|p| (canonical_index(p), p.clone()))
        .min_by(|a, b| a.0.cmp(&b.0));
    match (open, points) {
        (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
        (a, b) => a.or(b),
    }
}

/// How many canonical terms [`first_n_canonical_in`] scans directly before
/// switching to interval search.
const MEMBER_SCAN_LIMIT: usize = 1 << 12;

/// The first `count` members of `set` in canonical order, skipping `exclude`.
///
/// Dense targets are served by scanning the enumeration; sparse ones fall
/// back to repeated simplest-rational searches.
pub fn first_n_canonical_in(set: &IntervalSet, exclude: &[Rational], count: usize) -> Vec<(BigUint, Rational)> {
    let mut out: Vec<(BigUint, Rational)> = Vec::new();
    if count == 0 {
        return out;
    }
    for (k, q) in CanonicalRationals::new().take(MEMBER_SCAN_LIMIT) {
        if set.contains(&q) && !exclude.contains(&q) {
            out.push((BigUint::from(k), q));
            if out.len() == count {
                return out;
            }
        }
    }
    // Every member with index below the scan limit is now in `out` or
    // excluded, so searching outside `skip` continues in order.
    let mut skip: Vec<Rational> = exclude.iter().chain(out.iter().map(|(_, q)| q)).cloned().collect();
    while out.len() < count {
        match first_canonical_in(set, &skip) {
            Some((k, q)) => {
                skip.push(q.clone());
                out.push((k, q));
            }
            None => break,
        }
    }
    out
}

/// Brute-force limit for [`count_below`].
const COUNT_SCAN_LIMIT: u64 = 1 << 14;

/// Number of canonical indices `i < k` whose term lies in `region`. Closed
/// forms cover the whole line and the two half-lines at `0`; other regions are
/// counted by scanning, and `None` is returned past [`COUNT_SCAN_LIMIT`].
pub fn count_below(region: &IntervalSet, k: &BigUint) -> Option<BigUint> {
    let zero = rational::zero();
    let pos = IntervalSet::above(zero.clone());
    let neg = IntervalSet::below(zero);
    if k.is_zero() {
        return Some(BigUint::zero());
    }
    if region.is_full() {
        return Some(k.clone());
    }
    if *region == pos {
        return Some(k >> 1);
    }
    if *region == neg {
        return Some((k - 1u32) >> 1);
    }
    if *region == pos.union(&neg) {
        return Some(k - 1u32);
    }
    let k = k.to_u64().filter(|k| *k <= COUNT_SCAN_LIMIT)?;
    Some(BigUint::from(CanonicalRationals::new().take(k as usize).filter(|(_, q)| region.contains(q)).count()))
}
