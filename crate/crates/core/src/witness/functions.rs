use crate::error::Error;
use crate::homeo::{pl_bump, PlHomeo};
use crate::rational::{self, frac, int, Rational};
use crate::sign::Sign;

/// A bump supported on `(x − a, x + a)` that moves `x` up by `a/2`.
pub fn relevance_bump(x: &Rational, a: &Rational) -> Result<PlHomeo, Error> {
    pl_bump(&(x - a), &(x + a), &(a * rational::half()))
}

/// Bumps of alternating direction on pairwise disjoint intervals, taken in
/// the given order: the first goes up when `start` is positive, down when it
/// is negative. Each bump has height a quarter of its interval's width.
pub fn alternating_bump(intervals: &[(Rational, Rational)], start: Sign) -> Result<PlHomeo, Error> {
    if start.is_zero() {
        return Err(Error::InvalidIntervals("start parity must be + or -".into()));
    }
    let mut sorted: Vec<&(Rational, Rational)> = intervals.iter().collect();
    sorted.sort();
    for (lo, hi) in &sorted {
        if lo >= hi {
            return Err(Error::InvalidIntervals(format!("empty interval ({lo}, {hi})")));
        }
    }
    for w in sorted.windows(2) {
        if w[1].0 < w[0].1 {
            return Err(Error::InvalidIntervals(format!("({}, {}) overlaps ({}, {})", w[0].0, w[0].1, w[1].0, w[1].1)));
        }
    }
    let quarter = frac(1, 4);
    let mut out = PlHomeo::identity();
    for (i, (lo, hi)) in intervals.iter().enumerate() {
        let up = (i % 2 == 0) == (start == Sign::Positive);
        let height = (hi - lo) * &quarter;
        let bump = pl_bump(lo, hi, &if up { height } else { -height })?;
        out = out.compose(&bump);
    }
    Ok(out)
}

/// Two maps equal to `y + 1` beyond `x + 2` and to the identity below `x − 2`
/// that send `x` to `x + 1/2` and `x − 1/2` respectively.
pub fn same_germ_pair(x: &Rational) -> (PlHomeo, PlHomeo) {
    let make = |shift: Rational| {
        PlHomeo::new(vec![(x - int(2), x - int(2)), (x.clone(), x + shift), (x + int(2), x + int(3))], int(1), int(1))
            .expect("increasing breakpoints")
    };
    (make(frac(1, 2)), make(frac(-1, 2)))
}

/// `f(x) = x + 1` and `g`, equal to `x + 1` up to `2` and to `2x − 1` after.
/// Both lie strictly above the identity everywhere, but `g` eventually
/// outruns every power of `f`.
pub fn separating_pair() -> (PlHomeo, PlHomeo) {
    let f = PlHomeo::translation(int(1));
    let g = PlHomeo::new(vec![(int(2), int(3))], int(1), int(2)).expect("valid");
    (f, g)
}
