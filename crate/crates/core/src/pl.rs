//! General piecewise-linear functions of one rational variable.
//!
//! A [`PiecewiseLinear`] is continuous, has finitely many breakpoints and
//! affine tails. It need not be monotone; [`crate::PlHomeo`] wraps it with the
//! homeomorphism invariants. Most constructions here go through
//! [`PiecewiseLinear::from_samples`]: the caller supplies a grid outside of
//! which, and between whose points, the target function is affine.

use num_traits::{Signed, Zero};

use crate::interval::{Bound, Interval, IntervalSet};
use crate::rational::{self, Rational};
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseLinear {
    /// Nonempty; x-coordinates strictly increasing.
    breaks: Vec<(Rational, Rational)>,
    left_slope: Rational,
    right_slope: Rational,
}

impl PiecewiseLinear {
    /// Builds and normalizes. `breaks` must be nonempty with strictly
    /// increasing x-coordinates.
    pub(crate) fn from_parts(
        breaks: Vec<(Rational, Rational)>,
        left_slope: Rational,
        right_slope: Rational,
    ) -> PiecewiseLinear {
        debug_assert!(!breaks.is_empty());
        debug_assert!(breaks.windows(2).all(|w| w[0].0 < w[1].0));
        let mut f = PiecewiseLinear { breaks, left_slope, right_slope };
        f.normalize();
        f
    }

    /// `x ↦ slope·x + intercept`.
    pub fn affine(slope: Rational, intercept: Rational) -> PiecewiseLinear {
        PiecewiseLinear { breaks: vec![(rational::zero(), intercept)], left_slope: slope.clone(), right_slope: slope }
    }

    /// Samples `eval` on `grid` (sorted, deduplicated, nonempty) and reads the
    /// tail slopes one unit beyond the extreme grid points. Exact whenever
    /// `eval` is affine between consecutive grid points and beyond the ends.
    pub fn from_samples(grid: &[Rational], eval: impl Fn(&Rational) -> Rational) -> PiecewiseLinear {
        assert!(!grid.is_empty(), "sample grid must be nonempty");
        let breaks: Vec<(Rational, Rational)> = grid.iter().map(|x| (x.clone(), eval(x))).collect();
        let first = &breaks[0];
        let last = &breaks[breaks.len() - 1];
        let left_slope = &first.1 - eval(&(&first.0 - rational::one()));
        let right_slope = eval(&(&last.0 + rational::one())) - &last.1;
        PiecewiseLinear::from_parts(breaks, left_slope, right_slope)
    }

    /// Drops breakpoints where the slope does not change; an affine function
    /// keeps a single anchor at `x = 0`.
    fn normalize(&mut self) {
        let slopes = self.segment_slopes();
        let n = self.breaks.len();
        let kept: Vec<(Rational, Rational)> = self
            .breaks
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let before = if *i == 0 { &self.left_slope } else { &slopes[i - 1] };
                let after = if i + 1 == n { &self.right_slope } else { &slopes[*i] };
                before != after
            })
            .map(|(_, b)| b.clone())
            .collect();
        if kept.is_empty() {
            let anchor = self.eval(&rational::zero());
            self.breaks = vec![(rational::zero(), anchor)];
        } else {
            self.breaks = kept;
        }
    }

    pub fn breaks(&self) -> &[(Rational, Rational)] {
        &self.breaks
    }

    pub fn left_slope(&self) -> &Rational {
        &self.left_slope
    }

    pub fn right_slope(&self) -> &Rational {
        &self.right_slope
    }

    pub fn xs(&self) -> impl Iterator<Item = &Rational> {
        self.breaks.iter().map(|(x, _)| x)
    }

    /// True when the function is affine (single anchor, equal tail slopes).
    pub fn is_affine(&self) -> bool {
        self.breaks.len() == 1 && self.left_slope == self.right_slope
    }

    /// Slopes of the bounded segments, in order.
    pub fn segment_slopes(&self) -> Vec<Rational> {
        self.breaks.windows(2).map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0)).collect()
    }

    /// All slopes: left tail, segments, right tail.
    pub fn all_slopes(&self) -> Vec<Rational> {
        let mut out = vec![self.left_slope.clone()];
        out.extend(self.segment_slopes());
        out.push(self.right_slope.clone());
        out
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let first = &self.breaks[0];
        if *x <= first.0 {
            return &first.1 + &self.left_slope * (x - &first.0);
        }
        let last = &self.breaks[self.breaks.len() - 1];
        if *x >= last.0 {
            return &last.1 + &self.right_slope * (x - &last.0);
        }
        // first.0 < x < last.0, so 1 <= idx <= len - 1.
        let idx = self.breaks.partition_point(|(bx, _)| bx <= x);
        let (x0, y0) = &self.breaks[idx - 1];
        let (x1, y1) = &self.breaks[idx];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// `self + a·x + b`.
    pub fn add_affine(&self, a: &Rational, b: &Rational) -> PiecewiseLinear {
        let breaks = self.breaks.iter().map(|(x, y)| (x.clone(), y + a * x + b)).collect();
        PiecewiseLinear::from_parts(breaks, &self.left_slope + a, &self.right_slope + a)
    }

    pub fn neg(&self) -> PiecewiseLinear {
        let breaks = self.breaks.iter().map(|(x, y)| (x.clone(), -y)).collect();
        PiecewiseLinear::from_parts(breaks, -&self.left_slope, -&self.right_slope)
    }

    pub fn sub(&self, other: &PiecewiseLinear) -> PiecewiseLinear {
        let grid = merge_grids(self.xs(), other.xs());
        PiecewiseLinear::from_samples(&grid, |x| self.eval(x) - other.eval(x))
    }

    /// Strict monotonicity direction, if any.
    pub fn monotonicity(&self) -> Option<Sign> {
        let slopes = self.all_slopes();
        if slopes.iter().all(|s| s.is_positive()) {
            Some(Sign::Positive)
        } else if slopes.iter().all(|s| s.is_negative()) {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    /// The unique `x` with `self(x) = y`. `self` must be strictly monotone.
    pub fn preimage(&self, y: &Rational) -> Rational {
        debug_assert!(self.monotonicity().is_some(), "preimage of a non-monotone piecewise-linear function");
        let increasing = self.left_slope.is_positive();
        // Position of y relative to the breakpoint values, in the direction of
        // increasing x.
        let before = |by: &Rational| if increasing { by < y } else { by > y };
        let idx = self.breaks.partition_point(|(_, by)| before(by));
        if idx == 0 {
            let (x0, y0) = &self.breaks[0];
            return x0 + (y - y0) / &self.left_slope;
        }
        if idx == self.breaks.len() {
            let (xn, yn) = &self.breaks[idx - 1];
            return xn + (y - yn) / &self.right_slope;
        }
        let (x0, y0) = &self.breaks[idx - 1];
        let (x1, y1) = &self.breaks[idx];
        x0 + (y - y0) * (x1 - x0) / (y1 - y0)
    }

    /// `self ∘ inner`, where `inner` is strictly monotone.
    pub fn compose(&self, inner: &PiecewiseLinear) -> PiecewiseLinear {
        let pulled: Vec<Rational> = self.xs().map(|y| inner.preimage(y)).collect();
        let grid = merge_grids(inner.xs(), pulled.iter());
        PiecewiseLinear::from_samples(&grid, |x| self.eval(&inner.eval(x)))
    }

    /// Breakpoints plus every zero crossing, sorted. Between consecutive grid
    /// points and beyond the ends the function has constant strict sign or is
    /// identically zero.
    pub fn sign_grid(&self) -> Vec<Rational> {
        let mut grid: Vec<Rational> = Vec::with_capacity(self.breaks.len() * 2 + 2);
        let (x0, y0) = &self.breaks[0];
        if !self.left_slope.is_zero() {
            let root = x0 - y0 / &self.left_slope;
            if root < *x0 {
                grid.push(root);
            }
        }
        for w in self.breaks.windows(2) {
            let ((xa, ya), (xb, yb)) = (&w[0], &w[1]);
            grid.push(xa.clone());
            if (ya.is_positive() && yb.is_negative()) || (ya.is_negative() && yb.is_positive()) {
                grid.push(xa + ya * (xb - xa) / (ya - yb));
            }
        }
        let (xn, yn) = &self.breaks[self.breaks.len() - 1];
        grid.push(xn.clone());
        if !self.right_slope.is_zero() {
            let root = xn - yn / &self.right_slope;
            if root > *xn {
                grid.push(root);
            }
        }
        grid
    }

    /// The open set where the function is strictly positive.
    pub fn positive_set(&self) -> IntervalSet {
        self.set_where(|s| s == Sign::Positive)
    }

    pub fn negative_set(&self) -> IntervalSet {
        self.set_where(|s| s == Sign::Negative)
    }

    /// The open set where the function is nonzero.
    pub fn support(&self) -> IntervalSet {
        self.set_where(|s| !s.is_zero())
    }

    /// Union of the open pieces of the sign grid whose sign satisfies `keep`,
    /// joined across grid points whose own value also satisfies it.
    fn set_where(&self, keep: impl Fn(Sign) -> bool) -> IntervalSet {
        let zero = rational::zero();
        let grid = self.sign_grid();
        let n = grid.len();
        let values: Vec<Rational> = grid.iter().map(|x| self.eval(x)).collect();
        let sign = |v: &Rational| Sign::of(v, &zero);
        // Pieces: (-inf, g0), (g0, g1), ..., (g_{n-1}, inf). The function is
        // affine on each piece without interior zeros, so the sum of the
        // values at its ends (or the end value and the tail slope) decides.
        let piece_sign = |piece: usize| -> Sign {
            if piece == 0 {
                sign(&(&values[0] - &self.left_slope))
            } else if piece == n {
                sign(&(&values[n - 1] + &self.right_slope))
            } else {
                sign(&(&values[piece - 1] + &values[piece]))
            }
        };
        let mut components: Vec<Interval> = Vec::new();
        let mut open: Option<Bound> = None;
        for piece in 0..=n {
            let lo = if piece == 0 { Bound::NegInf } else { Bound::Finite(grid[piece - 1].clone()) };
            let kept = keep(piece_sign(piece));
            match (&open, kept) {
                (None, true) => open = Some(lo),
                (Some(_), true) => {
                    if !keep(sign(&values[piece - 1])) {
                        let start = open.take().expect("open run");
                        components.push(Interval { lo: start, hi: lo.clone() });
                        open = Some(lo);
                    }
                }
                (Some(_), false) => {
                    let start = open.take().expect("open run");
                    components.push(Interval { lo: start, hi: lo });
                }
                (None, false) => {}
            }
        }
        if let Some(start) = open.take() {
            components.push(Interval { lo: start, hi: Bound::PosInf });
        }
        IntervalSet::from_intervals(components)
    }
}

/// Sorted, deduplicated union of two coordinate lists.
pub(crate) fn merge_grids<'a>(
    a: impl IntoIterator<Item = &'a Rational>,
    b: impl IntoIterator<Item = &'a Rational>,
) -> Vec<Rational> {
    let mut grid: Vec<Rational> = a.into_iter().chain(b).cloned().collect();
    grid.sort();
    grid.dedup();
    grid
}
