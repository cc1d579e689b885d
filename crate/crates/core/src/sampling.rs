//! Seeded random generators for maps, orderings, and construction inputs.
//!
//! Every generator takes the RNG explicitly; [`rng`] gives the reproducible
//! ChaCha stream used throughout the tests and the command-line tool.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::homeo::PlHomeo;
use crate::interval::IntervalSet;
use crate::order::{PointStream, SignAssignment, Stage, StagedOrdering, StandardOrdering};
use crate::rational::{self, frac, Rational};
use crate::sign::Sign;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape parameters for [`random_homeo`].
#[derive(Clone, Debug)]
pub struct HomeoSampler {
    pub max_breaks: usize,
    /// Numerators are drawn from `[-2^bits, 2^bits]`.
    pub numerator_bits: u32,
    pub max_denominator: i64,
}

impl Default for HomeoSampler {
    fn default() -> Self {
        HomeoSampler { max_breaks: 12, numerator_bits: 20, max_denominator: 64 }
    }
}

impl HomeoSampler {
    pub fn rational<R: Rng>(&self, rng: &mut R) -> Rational {
        let bound = 1i64 << self.numerator_bits.min(62);
        frac(rng.gen_range(-bound..=bound), rng.gen_range(1..=self.max_denominator))
    }

    fn positive<R: Rng>(&self, rng: &mut R) -> Rational {
        let bound = 1i64 << self.numerator_bits.min(62);
        frac(rng.gen_range(1..=bound), rng.gen_range(1..=self.max_denominator))
    }
}

/// A small positive rational `p/q` with `1 ≤ p, q ≤ 8`.
fn small_positive<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(1..=8), rng.gen_range(1..=8))
}

/// A rational with numerator in `[-n, n]` and denominator in `[1, d]`.
pub fn small_rational<R: Rng>(rng: &mut R, n: i64, d: i64) -> Rational {
    frac(rng.gen_range(-n..=n), rng.gen_range(1..=d))
}

/// A random PL homeomorphism with at most `sampler.max_breaks` breakpoints.
pub fn random_homeo<R: Rng>(rng: &mut R, sampler: &HomeoSampler) -> PlHomeo {
    let k = rng.gen_range(0..=sampler.max_breaks);
    if k == 0 {
        return PlHomeo::affine(small_positive(rng), sampler.rational(rng)).expect("positive slope");
    }
    let mut xs: Vec<Rational> = Vec::with_capacity(k);
    while xs.len() < k {
        let x = sampler.rational(rng);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    xs.sort();
    let mut y = sampler.rational(rng);
    let mut breaks = Vec::with_capacity(k);
    for x in xs {
        breaks.push((x, y.clone()));
        y += sampler.positive(rng);
    }
    PlHomeo::new(breaks, small_positive(rng), small_positive(rng)).expect("increasing data")
}

/// The homeomorphism `x ↦ x + d(x)` where `d` interpolates `values` on
/// `grid` with the given tail slopes, after halving `d` as often as needed
/// for the result to be increasing. Halving keeps every sign of `d`.
pub fn homeo_from_displacement(
    grid: &[Rational],
    values: &[Rational],
    left_slope: &Rational,
    right_slope: &Rational,
) -> PlHomeo {
    let one = rational::one();
    let mut scale = one.clone();
    loop {
        let breaks = grid.iter().zip(values).map(|(x, v)| (x.clone(), x + v * &scale)).collect();
        if let Ok(f) = PlHomeo::new(breaks, &one + left_slope * &scale, &one + right_slope * &scale) {
            return f;
        }
        scale /= rational::int(2);
    }
}

/// A map with the same above and below sets as `f`: the displacement is
/// redrawn at every breakpoint and crossing with the same sign, and between
/// them keeps its sign by linearity.
pub fn matched_partner<R: Rng>(rng: &mut R, f: &PlHomeo) -> PlHomeo {
    let d = f.displacement();
    let grid = d.sign_grid();
    let one = rational::one();
    let redraw = |rng: &mut R, s: Sign| match s {
        Sign::Zero => rational::zero(),
        Sign::Positive => small_positive(rng),
        Sign::Negative => -small_positive(rng),
    };
    let zero = rational::zero();
    let values: Vec<Rational> = grid.iter().map(|x| redraw(rng, Sign::of(&d.eval(x), &zero))).collect();
    let first = &grid[0];
    let last = &grid[grid.len() - 1];
    // Beyond the ends the displacement has a constant sign; a tail slope of
    // that sign (or zero, when the end value already has it) keeps it.
    let tail = |rng: &mut R, beyond: Sign, end: &Rational, outward: bool| -> Rational {
        let mut slope = match (beyond, end.is_zero()) {
            (Sign::Zero, _) => return rational::zero(),
            (_, true) => small_positive(rng),
            (_, false) => small_positive(rng) * frac(rng.gen_range(0..=1), 1),
        };
        if (beyond == Sign::Negative) == outward {
            slope = -slope;
        }
        slope
    };
    let right = tail(rng, Sign::of(&d.eval(&(last + &one)), &zero), &values[values.len() - 1], true);
    let left = tail(rng, Sign::of(&d.eval(&(first - &one)), &zero), &values[0], false);
    homeo_from_displacement(&grid, &values, &left, &right)
}

/// A map supported on `[lo, hi]`, above the identity inside when `up`,
/// below it otherwise, with up to three interior breakpoints.
pub fn random_bump<R: Rng>(rng: &mut R, lo: &Rational, hi: &Rational, up: bool) -> PlHomeo {
    let m = rng.gen_range(1..=3);
    let mut inner: Vec<Rational> = (0..m).map(|_| lo + (hi - lo) * frac(rng.gen_range(1..=15), 16)).collect();
    inner.sort();
    inner.dedup();
    let mut grid = vec![lo.clone()];
    grid.extend(inner);
    grid.push(hi.clone());
    let width = hi - lo;
    let values: Vec<Rational> = grid
        .iter()
        .enumerate()
        .map(|(i, _)| {
            if i == 0 || i == grid.len() - 1 {
                rational::zero()
            } else {
                let v = &width * frac(rng.gen_range(1..=8), 16);
                if up {
                    v
                } else {
                    -v
                }
            }
        })
        .collect();
    let zero = rational::zero();
    homeo_from_displacement(&grid, &values, &zero, &zero)
}

/// `count` disjoint, non-touching intervals with small rational endpoints.
pub fn random_intervals<R: Rng>(rng: &mut R, count: usize) -> Vec<(Rational, Rational)> {
    let mut ends: Vec<Rational> = Vec::with_capacity(2 * count);
    while ends.len() < 2 * count {
        let x = small_rational(rng, 40, 4);
        if !ends.contains(&x) {
            ends.push(x);
        }
    }
    ends.sort();
    ends.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect()
}

/// Two or three maps whose above sets and below sets have the same union:
/// every interval carries at least one upward and one downward bump, spread
/// over different maps.
pub fn random_anb_instance<R: Rng>(rng: &mut R) -> Vec<PlHomeo> {
    let n = rng.gen_range(2..=3);
    let count = rng.gen_range(1..=3);
    let intervals = random_intervals(rng, count);
    let mut fs = vec![PlHomeo::identity(); n];
    for (lo, hi) in &intervals {
        let mut owners: Vec<usize> = (0..n).collect();
        owners.shuffle(rng);
        let movers = rng.gen_range(2..=n);
        for (j, &i) in owners[..movers].iter().enumerate() {
            // The first mover goes up, the second down, the rest at random.
            let up = match j {
                0 => true,
                1 => false,
                _ => rng.gen_bool(0.5),
            };
            fs[i] = fs[i].compose(&random_bump(rng, lo, hi, up));
        }
    }
    fs
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

fn random_signs<R: Rng>(rng: &mut R, len: usize) -> SignAssignment {
    let signs: Vec<Sign> = (0..len + rng.gen_range(0..=4)).map(|_| random_sign(rng)).collect();
    SignAssignment::from_list(&signs, random_sign(rng)).expect("nonzero signs")
}

/// Up to `max` distinct small rationals inside `region`.
fn random_prefix<R: Rng>(rng: &mut R, region: &IntervalSet, max: usize) -> Vec<Rational> {
    let len = rng.gen_range(0..=max);
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for _ in 0..8 * len {
        if out.len() == len {
            break;
        }
        let x = small_rational(rng, 24, 6);
        if region.contains(&x) && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

pub fn random_standard_ordering<R: Rng>(rng: &mut R) -> StandardOrdering {
    let prefix = random_prefix(rng, &IntervalSet::full(), 6);
    let signs = random_signs(rng, prefix.len());
    StandardOrdering::new(prefix, signs).expect("distinct prefix")
}

/// Two or three stages: the two sides of a random cut in random order,
/// sometimes followed by a stage over the whole line.
pub fn random_staged_ordering<R: Rng>(rng: &mut R) -> StagedOrdering {
    let cut = small_rational(rng, 6, 3);
    let mut regions = vec![IntervalSet::above(cut.clone()), IntervalSet::below(cut)];
    if rng.gen_bool(0.5) {
        regions.reverse();
    }
    if rng.gen_bool(0.3) {
        regions.push(IntervalSet::full());
    }
    let stages = regions
        .into_iter()
        .map(|region| {
            let prefix = random_prefix(rng, &region, 4);
            let signs = random_signs(rng, prefix.len());
            Stage::new(PointStream::new(prefix, region).expect("prefix inside region"), signs)
        })
        .collect();
    StagedOrdering::new(stages).expect("regions are dense")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let s = HomeoSampler::default();
        let draw = |seed| {
            let mut r = rng(seed);
            (0..5).map(|_| random_homeo(&mut r, &s)).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn partners_match_sets() {
        let mut r = rng(11);
        let s = HomeoSampler { max_breaks: 6, numerator_bits: 4, max_denominator: 3 };
        for _ in 0..200 {
            let f = random_homeo(&mut r, &s);
            let g = matched_partner(&mut r, &f);
            assert_eq!(f.above_set(), g.above_set(), "{f} vs {g}");
            assert_eq!(f.below_set(), g.below_set(), "{f} vs {g}");
        }
    }

    #[test]
    fn anb_instances_balance() {
        let mut r = rng(3);
        for _ in 0..50 {
            let fs = random_anb_instance(&mut r);
            let a = fs.iter().fold(IntervalSet::empty(), |acc, f| acc.union(&f.above_set()));
            let b = fs.iter().fold(IntervalSet::empty(), |acc, f| acc.union(&f.below_set()));
            assert_eq!(a, b);
            assert!(!a.is_empty());
        }
    }

    #[test]
    fn bumps_have_requested_direction() {
        let mut r = rng(5);
        let (lo, hi) = (frac(-3, 2), frac(7, 3));
        let up = random_bump(&mut r, &lo, &hi, true);
        assert_eq!(up.above_set(), IntervalSet::interval(lo.clone(), hi.clone()));
        let down = random_bump(&mut r, &lo, &hi, false);
        assert_eq!(down.below_set(), IntervalSet::interval(lo, hi));
    }

    #[test]
    fn random_orderings_are_valid() {
        let mut r = rng(9);
        for _ in 0..20 {
            let _ = random_standard_ordering(&mut r);
            let staged = random_staged_ordering(&mut r);
            assert!(staged.stages().len() >= 2);
        }
    }
}
