use serde::Serialize;

use crate::error::Error;
use crate::homeo::PlHomeo;
use crate::interval::{Bound, IntervalSet};
use crate::pl::PiecewiseLinear;
use crate::rational::{self, Rational};

/// `Θ(x, ·)` for a fixed `x`: the map `t ↦ p₁(p₂(…pₙ(x − t) − t…) − t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaInT {
    x: Rational,
    theta: PiecewiseLinear,
}

impl ThetaInT {
    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn as_pl(&self) -> &PiecewiseLinear {
        &self.theta
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.theta.eval(t)
    }

    /// The unique `t` with `Θ(x, t) = x`.
    pub fn root(&self) -> Rational {
        self.theta.preimage(&self.x)
    }
}

/// Builds `Θ(x, ·)` from plus parts `p₁, …, pₙ` (each `p(y) ≥ y`).
pub fn theta_in_t(plus_parts: &[PlHomeo], x: &Rational) -> Result<ThetaInT, Error> {
    for p in plus_parts {
        let below = p.below_set();
        if !below.is_empty() {
            return Err(Error::NotAPlusPart { below });
        }
    }
    let minus_one = -rational::one();
    let mut u = PiecewiseLinear::affine(minus_one.clone(), x.clone());
    for (i, p) in plus_parts.iter().enumerate().rev() {
        u = p.as_pl().compose(&u);
        if i > 0 {
            u = u.add_affine(&minus_one, &rational::zero());
        }
    }
    Ok(ThetaInT { x: x.clone(), theta: u })
}

/// The root `t_x ≥ 0` of `Θ(x, t) = x`.
pub fn solve_t(plus_parts: &[PlHomeo], x: &Rational) -> Result<Rational, Error> {
    theta_in_t(plus_parts, x).map(|theta| theta.root())
}

#[derive(Clone, Debug)]
pub struct AnbOptions {
    /// How many times the correction is shrunk before giving up.
    pub max_rounds: usize,
}

impl Default for AnbOptions {
    fn default() -> Self {
        AnbOptions { max_rounds: 20 }
    }
}

/// Above and below sets of one map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetPair {
    pub above: IntervalSet,
    pub below: IntervalSet,
}

impl SetPair {
    pub fn of(f: &PlHomeo) -> SetPair {
        SetPair { above: f.above_set(), below: f.below_set() }
    }
}

/// One half of the construction: parts sharing their above/below sets with
/// the inputs, their product, and the correction map `γ` that was used.
#[derive(Clone, Debug, Serialize)]
pub struct AnbHalf {
    pub parts: Vec<PlHomeo>,
    pub product: PlHomeo,
    pub gamma: PlHomeo,
    /// Number of shrink steps applied to the correction before it verified.
    pub rounds: usize,
}

/// Exact above/below sets of everything produced by [`construct_anb`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnbCertificate {
    pub region: IntervalSet,
    pub inputs: Vec<SetPair>,
    pub gamma: SetPair,
    pub g_parts: Vec<SetPair>,
    pub g: SetPair,
    pub h_parts: Vec<SetPair>,
    pub h: SetPair,
}

impl AnbCertificate {
    /// Lists every identity that fails; empty when the construction is valid.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let empty = IntervalSet::empty();
        for (name, parts) in [("g", &self.g_parts), ("h", &self.h_parts)] {
            if parts.len() != self.inputs.len() {
                out.push(format!("{name} has {} parts for {} inputs", parts.len(), self.inputs.len()));
            }
            for (i, (p, f)) in parts.iter().zip(&self.inputs).enumerate() {
                if p != f {
                    out.push(format!("{name}_{} does not share above/below sets with input {i}", i + 1));
                }
            }
        }
        if self.gamma.above != empty || self.gamma.below != self.region {
            out.push("gamma sets differ from (∅, A)".into());
        }
        if self.g.above != self.region || self.g.below != empty {
            out.push(format!("g has sets ({}, {})", self.g.above, self.g.below));
        }
        if self.h.above != empty || self.h.below != self.region {
            out.push(format!("h has sets ({}, {})", self.h.above, self.h.below));
        }
        out
    }

    pub fn holds(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Both halves together with the certificate.
#[derive(Clone, Debug, Serialize)]
pub struct AnbResult {
    pub g_parts: Vec<PlHomeo>,
    pub g: PlHomeo,
    pub h_parts: Vec<PlHomeo>,
    pub h: PlHomeo,
    pub gamma: PlHomeo,
    pub h_gamma: PlHomeo,
    pub certificate: AnbCertificate,
    pub rounds: usize,
}

/// The common region `⋃ A_{f_i} = ⋃ B_{f_i}`, or the failure certificate.
fn common_region(fs: &[PlHomeo]) -> Result<IntervalSet, Error> {
    let above = fs.iter().fold(IntervalSet::empty(), |acc, f| acc.union(&f.above_set()));
    let below = fs.iter().fold(IntervalSet::empty(), |acc, f| acc.union(&f.below_set()));
    let diff = above.symmetric_difference(&below);
    if diff.is_empty() {
        Ok(above)
    } else {
        Err(Error::PreconditionViolated { symmetric_difference: diff })
    }
}

/// `min(distance to the boundary of the region, 1)` inside the region, `0`
/// outside.
fn boundary_distance(region: &IntervalSet) -> PiecewiseLinear {
    let one = rational::one();
    let mut grid = vec![rational::zero()];
    for iv in region.components() {
        let lo = iv.lo.finite();
        let hi = iv.hi.finite();
        for e in lo.iter().chain(hi.iter()) {
            grid.push((*e).clone());
            grid.push(*e - &one);
            grid.push(*e + &one);
        }
        if let (Some(a), Some(b)) = (lo, hi) {
            grid.push(rational::midpoint(a, b));
        }
    }
    grid.sort();
    grid.dedup();
    let eval = |y: &Rational| -> Rational {
        let Some(iv) = region.components().iter().find(|iv| iv.contains(y)) else {
            return rational::zero();
        };
        let mut d = one.clone();
        if let Bound::Finite(lo) = &iv.lo {
            d = d.min(y - lo);
        }
        if let Bound::Finite(hi) = &iv.hi {
            d = d.min(hi - y);
        }
        d
    };
    PiecewiseLinear::from_samples(&grid, eval)
}

/// Maximum of a piecewise-linear function over `[a, b]`.
fn max_on(f: &PiecewiseLinear, a: &Rational, b: &Rational) -> Rational {
    f.xs().filter(|x| *x > a && *x < b).chain([a, b]).map(|x| f.eval(x)).max().expect("nonempty")
}

/// Sample points for estimating the initial correction scale: breakpoints of
/// the inputs and of `f^±`, region endpoints, and midpoints between them.
fn sample_points(fs: &[PlHomeo], f_plus: &PlHomeo, f_minus: &PlHomeo, region: &IntervalSet) -> Vec<Rational> {
    let mut pts: Vec<Rational> = fs
        .iter()
        .chain([f_plus, f_minus])
        .flat_map(|f| f.breaks().iter().map(|(x, _)| x.clone()))
        .chain(region.endpoints())
        .collect();
    pts.sort();
    pts.dedup();
    let mut out = Vec::with_capacity(2 * pts.len() + 2);
    if let (Some(first), Some(last)) = (pts.first(), pts.last()) {
        out.push(first - rational::one());
        out.push(last + rational::one());
    }
    for w in pts.windows(2) {
        out.push(rational::midpoint(&w[0], &w[1]));
    }
    out.extend(pts);
    out.retain(|x| region.contains(x));
    out
}

fn verify_half(fs: &[PlHomeo], region: &IntervalSet, parts: &[PlHomeo], product: &PlHomeo) -> Result<(), String> {
    for (i, (p, f)) in parts.iter().zip(fs).enumerate() {
        if SetPair::of(p) != SetPair::of(f) {
            return Err(format!("part {} does not share above/below sets with its input", i + 1));
        }
    }
    let sets = SetPair::of(product);
    if sets.above != *region || !sets.below.is_empty() {
        return Err(format!("product has above set {} and below set {}", sets.above, sets.below));
    }
    Ok(())
}

/// Builds `g₁, …, gₙ` with `A_{g_i} = A_{f_i}`, `B_{g_i} = B_{f_i}` and
/// `g = g₁∘…∘gₙ` lying strictly above the identity exactly on `A`.
pub fn construct_g(fs: &[PlHomeo]) -> Result<AnbHalf, Error> {
    construct_g_with(fs, &AnbOptions::default())
}

pub fn construct_g_with(fs: &[PlHomeo], options: &AnbOptions) -> Result<AnbHalf, Error> {
    let region = common_region(fs)?;
    let plus: Vec<PlHomeo> = fs.iter().map(PlHomeo::plus_part).collect();
    let minus: Vec<PlHomeo> = fs.iter().map(PlHomeo::minus_part).collect();
    let f_plus = PlHomeo::compose_all(&plus);
    let f_minus = PlHomeo::compose_all(&minus);

    // γ = id − λ·d with d the clipped distance to ∂A. The sufficient condition
    // is sup{y − γ(y) : y ∈ [f⁻(x), f⁺(x)]} < t_x; the initial λ meets it, with
    // a factor ½ to spare, at every sample point.
    let d = boundary_distance(&region);
    let half = rational::half();
    let mut lambda = half.clone();
    for x in sample_points(fs, &f_plus, &f_minus, &region) {
        let t = solve_t(&plus, &x)?;
        let m = max_on(&d, &f_minus.evaluate(&x), &f_plus.evaluate(&x));
        lambda = lambda.min(&half * t / m);
    }

    let mut last_failure = String::new();
    for round in 0..=options.max_rounds {
        let grid: Vec<Rational> = d.xs().cloned().collect();
        let gamma = PlHomeo::from_pl_unchecked(PiecewiseLinear::from_samples(&grid, |y| y - &lambda * d.eval(y)));
        let parts: Vec<PlHomeo> = plus.iter().zip(&minus).map(|(p, m)| p.compose(&m.pointwise_max(&gamma))).collect();
        let product = PlHomeo::compose_all(&parts);
        match verify_half(fs, &region, &parts, &product) {
            Ok(()) => return Ok(AnbHalf { parts, product, gamma, rounds: round }),
            Err(msg) => last_failure = msg,
        }
        lambda = &lambda * &half;
    }
    Err(Error::ConstructionFailed { rounds: options.max_rounds, detail: last_failure })
}

/// Mirror of [`construct_g`]: parts `h_i` sharing above/below sets with `f_i`
/// and `h = h₁∘…∘hₙ` strictly below the identity exactly on `A`.
///
/// Obtained by running [`construct_g`] on `fₙ⁻¹, …, f₁⁻¹` and inverting: the
/// reversal makes the `i`-th part of `h` correspond to `f_i` again.
pub fn construct_h(fs: &[PlHomeo]) -> Result<AnbHalf, Error> {
    construct_h_with(fs, &AnbOptions::default())
}

pub fn construct_h_with(fs: &[PlHomeo], options: &AnbOptions) -> Result<AnbHalf, Error> {
    let inverses: Vec<PlHomeo> = fs.iter().rev().map(PlHomeo::invert).collect();
    let mirrored = construct_g_with(&inverses, options)?;
    let parts: Vec<PlHomeo> = mirrored.parts.iter().rev().map(PlHomeo::invert).collect();
    Ok(AnbHalf { product: mirrored.product.invert(), parts, gamma: mirrored.gamma, rounds: mirrored.rounds })
}

/// Runs both halves and certifies every set identity exactly.
pub fn construct_anb(fs: &[PlHomeo]) -> Result<AnbResult, Error> {
    construct_anb_with(fs, &AnbOptions::default())
}

pub fn construct_anb_with(fs: &[PlHomeo], options: &AnbOptions) -> Result<AnbResult, Error> {
    let g = construct_g_with(fs, options)?;
    let h = construct_h_with(fs, options)?;
    let certificate = AnbCertificate {
        region: common_region(fs)?,
        inputs: fs.iter().map(SetPair::of).collect(),
        gamma: SetPair::of(&g.gamma),
        g_parts: g.parts.iter().map(SetPair::of).collect(),
        g: SetPair::of(&g.product),
        h_parts: h.parts.iter().map(SetPair::of).collect(),
        h: SetPair::of(&h.product),
    };
    let failures = certificate.failures();
    if !failures.is_empty() {
        return Err(Error::ConstructionFailed { rounds: g.rounds.max(h.rounds), detail: failures.join("; ") });
    }
    Ok(AnbResult {
        rounds: g.rounds.max(h.rounds),
        g_parts: g.parts,
        g: g.product,
        h_parts: h.parts,
        h: h.product,
        gamma: g.gamma,
        h_gamma: h.gamma,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homeo::pl_bump;
    use crate::rational::{frac, int};

    fn up(a: i64, b: i64) -> PlHomeo {
        pl_bump(&int(a), &int(b), &frac(1, 4)).unwrap()
    }

    fn down(a: i64, b: i64) -> PlHomeo {
        pl_bump(&int(a), &int(b), &frac(-1, 4)).unwrap()
    }

    #[test]
    fn theta_examples() {
        let shift = PlHomeo::translation(int(1));
        let x = frac(3, 7);
        let one = theta_in_t(std::slice::from_ref(&shift), &x).unwrap();
        assert_eq!(one.as_pl(), &PiecewiseLinear::affine(int(-1), &x + int(1)));
        let two = theta_in_t(&[shift.clone(), shift.clone()], &x).unwrap();
        assert_eq!(two.as_pl(), &PiecewiseLinear::affine(int(-2), &x + int(2)));
        let id = theta_in_t(&[PlHomeo::identity()], &x).unwrap();
        assert_eq!(id.as_pl(), &PiecewiseLinear::affine(int(-1), x.clone()));
        assert_eq!(solve_t(std::slice::from_ref(&shift), &x).unwrap(), int(1));
        assert_eq!(solve_t(&[shift.clone(), shift], &x).unwrap(), int(1));
        assert_eq!(solve_t(&[PlHomeo::identity()], &x).unwrap(), int(0));
        assert!(matches!(theta_in_t(&[down(0, 1)], &x), Err(Error::NotAPlusPart { .. })));
    }

    #[test]
    fn theta_matches_direct_evaluation() {
        let parts = [up(0, 2).plus_part(), PlHomeo::translation(frac(1, 3)), up(-1, 1)];
        let x = frac(1, 2);
        let theta = theta_in_t(&parts, &x).unwrap();
        assert_eq!(theta.as_pl().monotonicity(), Some(crate::sign::Sign::Negative));
        for k in 0..20 {
            let t = frac(k, 5);
            let mut u = &x - &t;
            for (i, p) in parts.iter().enumerate().rev() {
                u = p.evaluate(&u);
                if i > 0 {
                    u -= &t;
                }
            }
            assert_eq!(theta.eval(&t), u);
        }
        let root = theta.root();
        assert_eq!(theta.eval(&root), x);
    }

    #[test]
    fn two_bump_example() {
        let f1 = up(0, 1).compose(&down(1, 2));
        let f2 = down(0, 1).compose(&up(1, 2));
        let result = construct_anb(&[f1, f2]).unwrap();
        let region = IntervalSet::interval(int(0), int(1)).union(&IntervalSet::interval(int(1), int(2)));
        assert_eq!(result.g.above_set(), region);
        assert!(result.g.below_set().is_empty());
        assert!(result.h.above_set().is_empty());
        assert_eq!(result.h.below_set(), region);
        assert!(result.certificate.holds());
        assert_eq!(PlHomeo::compose_all(&result.g_parts), result.g);
        assert_eq!(PlHomeo::compose_all(&result.h_parts), result.h);
    }

    #[test]
    fn degenerate_and_invalid_inputs() {
        let result = construct_anb(&[PlHomeo::identity()]).unwrap();
        assert!(result.g.is_identity() && result.h.is_identity());
        match construct_g(&[PlHomeo::translation(int(1))]) {
            Err(Error::PreconditionViolated { symmetric_difference }) => assert!(symmetric_difference.open.is_full()),
            other => panic!("unexpected {other:?}"),
        }
        // Above and below unions differ only at the point 1.
        let f = up(0, 1).compose(&up(1, 2));
        let g = down(0, 2);
        match construct_g(&[f, g]) {
            Err(Error::PreconditionViolated { symmetric_difference }) => {
                assert!(symmetric_difference.open.is_empty());
                assert_eq!(symmetric_difference.points, vec![int(1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn full_line_region() {
        // A = ℝ: a translation paired with its inverse-direction partner.
        let fs = [PlHomeo::translation(int(1)), PlHomeo::translation(int(-1)).compose(&up(0, 4))];
        let result = construct_anb(&fs).unwrap();
        assert!(result.g.above_set().is_full());
        assert!(result.h.below_set().is_full());
    }
}
