//! Increasing piecewise-linear homeomorphisms of the line.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::germ::AffineGerm;
use crate::interval::IntervalSet;
use crate::pl::{merge_grids, PiecewiseLinear};
use crate::rational::{self, Rational};

/// An increasing piecewise-linear self-map of the line with rational
/// breakpoints and affine tails.
///
/// Values are kept in normal form (no collinear breakpoints, affine maps
/// anchored at `x = 0`), so `==` is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlHomeo {
    pl: PiecewiseLinear,
}

impl PlHomeo {
    /// Validates and normalizes. Breakpoints need strictly increasing `x` and
    /// `y`, and both tail slopes must be positive.
    pub fn new(
        breaks: Vec<(Rational, Rational)>,
        left_slope: Rational,
        right_slope: Rational,
    ) -> Result<PlHomeo, Error> {
        if breaks.is_empty() {
            return Err(Error::InvalidHomeo("no breakpoints".into()));
        }
        if !left_slope.is_positive() || !right_slope.is_positive() {
            return Err(Error::InvalidHomeo(format!(
                "tail slopes must be positive, got {left_slope} and {right_slope}"
            )));
        }
        for w in breaks.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidHomeo(format!("breakpoint x-coordinates not increasing at {}", w[1].0)));
            }
            if w[0].1 >= w[1].1 {
                return Err(Error::InvalidHomeo(format!("breakpoint values not increasing at x = {}", w[1].0)));
            }
        }
        Ok(PlHomeo { pl: PiecewiseLinear::from_parts(breaks, left_slope, right_slope) })
    }

    /// Interpolates the given points (any order; duplicates rejected by
    /// monotonicity) with the given tail slopes.
    pub fn through_points(
        mut points: Vec<(Rational, Rational)>,
        left_slope: Rational,
        right_slope: Rational,
    ) -> Result<PlHomeo, Error> {
        points.sort_by(|a, b| a.0.cmp(&b.0));
        PlHomeo::new(points, left_slope, right_slope)
    }

    /// Wraps a function already known to be strictly increasing.
    pub(crate) fn from_pl_unchecked(pl: PiecewiseLinear) -> PlHomeo {
        debug_assert!(pl.all_slopes().iter().all(|s| s.is_positive()));
        PlHomeo { pl }
    }

    pub fn identity() -> PlHomeo {
        PlHomeo::affine(rational::one(), rational::zero()).expect("identity is valid")
    }

    pub fn affine(slope: Rational, intercept: Rational) -> Result<PlHomeo, Error> {
        if !slope.is_positive() {
            return Err(Error::InvalidHomeo(format!("slope {slope} is not positive")));
        }
        Ok(PlHomeo { pl: PiecewiseLinear::affine(slope, intercept) })
    }

    pub fn translation(c: Rational) -> PlHomeo {
        PlHomeo::affine(rational::one(), c).expect("translations are valid")
    }

    pub fn as_pl(&self) -> &PiecewiseLinear {
        &self.pl
    }

    pub fn breaks(&self) -> &[(Rational, Rational)] {
        self.pl.breaks()
    }

    pub fn left_slope(&self) -> &Rational {
        self.pl.left_slope()
    }

    pub fn right_slope(&self) -> &Rational {
        self.pl.right_slope()
    }

    pub fn is_identity(&self) -> bool {
        self.pl.is_affine() && self.left_slope().is_one() && self.evaluate(&rational::zero()) == rational::zero()
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.pl.eval(x)
    }

    pub fn evaluate_inverse(&self, y: &Rational) -> Rational {
        self.pl.preimage(y)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlHomeo) -> PlHomeo {
        PlHomeo { pl: self.pl.compose(&inner.pl) }
    }

    /// `fs[0] ∘ fs[1] ∘ … ∘ fs[n-1]`; the identity for an empty list.
    pub fn compose_all<'a>(fs: impl IntoIterator<Item = &'a PlHomeo>) -> PlHomeo {
        let fs: Vec<&PlHomeo> = fs.into_iter().collect();
        fs.iter().rev().fold(PlHomeo::identity(), |acc, f| f.compose(&acc))
    }

    pub fn invert(&self) -> PlHomeo {
        let breaks = self.breaks().iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        PlHomeo { pl: PiecewiseLinear::from_parts(breaks, self.left_slope().recip(), self.right_slope().recip()) }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> PlHomeo {
        let base = if n < 0 { self.invert() } else { self.clone() };
        (0..n.unsigned_abs()).fold(PlHomeo::identity(), |acc, _| base.compose(&acc))
    }

    fn pointwise(&self, other: &PlHomeo, take_max: bool) -> PlHomeo {
        let diff = self.pl.sub(&other.pl);
        let crossings = diff.sign_grid();
        let mut grid = merge_grids(self.pl.xs(), other.pl.xs());
        grid.extend(crossings);
        grid.sort();
        grid.dedup();
        let pick = |x: &Rational| {
            let (a, b) = (self.evaluate(x), other.evaluate(x));
            if (a >= b) == take_max {
                a
            } else {
                b
            }
        };
        PlHomeo::from_pl_unchecked(PiecewiseLinear::from_samples(&grid, pick))
    }

    pub fn pointwise_max(&self, other: &PlHomeo) -> PlHomeo {
        self.pointwise(other, true)
    }

    pub fn pointwise_min(&self, other: &PlHomeo) -> PlHomeo {
        self.pointwise(other, false)
    }

    /// `max(f, id)`.
    pub fn plus_part(&self) -> PlHomeo {
        self.pointwise_max(&PlHomeo::identity())
    }

    /// `min(f, id)`.
    pub fn minus_part(&self) -> PlHomeo {
        self.pointwise_min(&PlHomeo::identity())
    }

    /// `f(x) - x` as a piecewise-linear function.
    pub fn displacement(&self) -> PiecewiseLinear {
        self.pl.add_affine(&-rational::one(), &rational::zero())
    }

    /// `{x : f(x) > x}`.
    pub fn above_set(&self) -> IntervalSet {
        self.displacement().positive_set()
    }

    /// `{x : f(x) < x}`.
    pub fn below_set(&self) -> IntervalSet {
        self.displacement().negative_set()
    }

    /// `{x : f(x) ≠ x}`.
    pub fn support(&self) -> IntervalSet {
        self.displacement().support()
    }

    /// `{x : f(x) ≠ g(x)}`.
    pub fn difference_set(&self, other: &PlHomeo) -> IntervalSet {
        self.pl.sub(&other.pl).support()
    }

    pub fn germ_at_infinity(&self) -> AffineGerm {
        let (xn, yn) = &self.breaks()[self.breaks().len() - 1];
        let a = self.right_slope().clone();
        let b = yn - &a * xn;
        AffineGerm { a, b }
    }
}

impl fmt::Display for PlHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pl.is_affine() {
            let b = self.evaluate(&rational::zero());
            return write!(f, "x ↦ {}·x + {}", self.left_slope(), b);
        }
        write!(f, "PL[slope {} | ", self.left_slope())?;
        for (i, (x, y)) in self.breaks().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, " | slope {}]", self.right_slope())
    }
}

#[derive(Serialize, Deserialize)]
struct HomeoWire {
    breaks: Vec<[String; 2]>,
    left_slope: String,
    right_slope: String,
}

impl Serialize for PlHomeo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HomeoWire {
            breaks: self.breaks().iter().map(|(x, y)| [rational::format(x), rational::format(y)]).collect(),
            left_slope: rational::format(self.left_slope()),
            right_slope: rational::format(self.right_slope()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlHomeo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<PlHomeo, D::Error> {
        let wire = HomeoWire::deserialize(d)?;
        let parse = |s: &str| rational::parse(s).map_err(serde::de::Error::custom);
        let breaks =
            wire.breaks.iter().map(|[x, y]| Ok((parse(x)?, parse(y)?))).collect::<Result<Vec<_>, D::Error>>()?;
        PlHomeo::new(breaks, parse(&wire.left_slope)?, parse(&wire.right_slope)?).map_err(serde::de::Error::custom)
    }
}

/// A bump supported on `(lo, hi)`: identity outside, breakpoints at `lo`,
/// the midpoint and `hi`, with the midpoint moved by `height`.
pub fn pl_bump(lo: &Rational, hi: &Rational, height: &Rational) -> Result<PlHomeo, Error> {
    let bad =
        || Error::InvalidBump { lo: rational::format(lo), hi: rational::format(hi), height: rational::format(height) };
    if lo >= hi || height.is_zero() || height.abs() * rational::int(2) >= hi - lo {
        return Err(bad());
    }
    let mid = rational::midpoint(lo, hi);
    let breaks = vec![(lo.clone(), lo.clone()), (mid.clone(), &mid + height), (hi.clone(), hi.clone())];
    PlHomeo::new(breaks, rational::one(), rational::one()).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn bump(lo: i64, hi: i64, h: Rational) -> PlHomeo {
        pl_bump(&int(lo), &int(hi), &h).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(PlHomeo::translation(int(1)).evaluate(&int(0)), int(1));
        assert_eq!(PlHomeo::identity().evaluate(&int(5)), int(5));
        assert_eq!(bump(0, 2, frac(1, 2)).evaluate(&int(1)), frac(3, 2));
    }

    #[test]
    fn compose_examples() {
        let t = PlHomeo::translation(int(1));
        assert_eq!(t.compose(&t), PlHomeo::translation(int(2)));
        assert!(t.compose(&t.invert()).is_identity());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(PlHomeo::translation(int(1)).invert(), PlHomeo::translation(int(-1)));
        assert!(PlHomeo::identity().invert().is_identity());
        let inv = bump(0, 2, frac(1, 2)).invert();
        assert!(inv.above_set().is_empty());
        assert_eq!(inv.below_set(), IntervalSet::interval(int(0), int(2)));
    }

    #[test]
    fn pointwise_examples() {
        let t = PlHomeo::translation(int(1));
        assert_eq!(t.pointwise_max(&PlHomeo::identity()), t);
        let down = bump(0, 2, frac(-1, 2));
        assert_eq!(down.pointwise_max(&down), down);
        assert!(down.pointwise_max(&PlHomeo::identity()).is_identity());
    }

    #[test]
    fn plus_minus_examples() {
        let t = PlHomeo::translation(int(1));
        assert_eq!(t.plus_part(), t);
        assert!(t.minus_part().is_identity());
        assert!(PlHomeo::identity().plus_part().is_identity());
        let up = bump(0, 1, frac(1, 4));
        let down = bump(1, 2, frac(-1, 4));
        let f = up.compose(&down);
        assert_eq!(f.plus_part(), up);
        assert_eq!(f.minus_part(), down);
    }

    #[test]
    fn ab_set_examples() {
        let t = PlHomeo::translation(int(1));
        assert!(t.above_set().is_full());
        assert!(t.below_set().is_empty());
        assert!(PlHomeo::identity().above_set().is_empty());
        assert!(PlHomeo::identity().below_set().is_empty());
        let up = bump(0, 2, frac(1, 2));
        assert_eq!(up.above_set(), IntervalSet::interval(int(0), int(2)));
        assert!(up.below_set().is_empty());
    }

    #[test]
    fn difference_set_examples() {
        let t = PlHomeo::translation(int(1));
        assert!(t.difference_set(&t).is_empty());
        assert!(t.difference_set(&PlHomeo::identity()).is_full());
        let up = bump(0, 2, frac(1, 2));
        assert_eq!(up.difference_set(&PlHomeo::identity()), IntervalSet::interval(int(0), int(2)));
    }

    #[test]
    fn bump_constructor() {
        assert!(pl_bump(&int(0), &int(2), &int(0)).is_err());
        assert!(pl_bump(&int(0), &int(2), &int(1)).is_err());
        assert!(pl_bump(&int(2), &int(0), &frac(1, 4)).is_err());
        let down = bump(-2, -1, frac(-1, 4));
        assert_eq!(down.below_set(), IntervalSet::interval(int(-2), int(-1)));
    }

    #[test]
    fn germ_examples() {
        let g = PlHomeo::translation(int(1)).germ_at_infinity();
        assert_eq!((g.a, g.b), (int(1), int(1)));
        assert!(bump(0, 2, frac(1, 2)).germ_at_infinity().is_trivial());
    }

    #[test]
    fn invalid_homeos_rejected() {
        assert!(PlHomeo::new(vec![], int(1), int(1)).is_err());
        assert!(PlHomeo::new(vec![(int(0), int(0))], int(0), int(1)).is_err());
        assert!(PlHomeo::new(vec![(int(0), int(1)), (int(1), int(0))], int(1), int(1)).is_err());
        assert!(PlHomeo::new(vec![(int(1), int(0)), (int(0), int(1))], int(1), int(1)).is_err());
    }

    #[test]
    fn json_encoding() {
        let f = bump(0, 2, frac(1, 2));
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"breaks":[["0","0"],["1","3/2"],["2","2"]],"left_slope":"1","right_slope":"1"}"#);
        let back: PlHomeo = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let t: PlHomeo = serde_json::from_str(r#"{"breaks":[["0","1"]],"left_slope":"1","right_slope":"1"}"#).unwrap();
        assert_eq!(t, PlHomeo::translation(int(1)));
    }
}
