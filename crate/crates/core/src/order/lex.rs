//! Dynamical-lexicographic orderings: standard (one dense stream) and staged
//! (finitely many region-restricted streams, compared stage by stage).

use num_bigint::BigUint;

use crate::error::Error;
use crate::homeo::PlHomeo;
use crate::interval::IntervalSet;
use crate::order::stream::{PointStream, SignAssignment, StreamPosition};
use crate::rational::Rational;
use crate::sign::Sign;

/// The point at which a comparison was decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Stage number (always 0 for standard orderings).
    pub stage: usize,
    pub point: Rational,
    pub position: StreamPosition,
    /// 0-based index in the stage's stream, when cheaply computable.
    pub stream_index: Option<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub sign: Sign,
    /// `None` exactly when the compared maps are equal.
    pub witness: Option<Witness>,
}

impl Decision {
    fn equal() -> Decision {
        Decision { sign: Sign::Zero, witness: None }
    }
}

/// One ω-block of a well-order: a stream dense in `region` and its signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub stream: PointStream,
    pub signs: SignAssignment,
}

impl Stage {
    pub fn new(stream: PointStream, signs: SignAssignment) -> Stage {
        Stage { stream, signs }
    }

    pub fn region(&self) -> &IntervalSet {
        self.stream.region()
    }

    /// Decides `f` against `g` at the earliest stage point in `diff`.
    fn decide(&self, stage: usize, f: &PlHomeo, g: &PlHomeo, diff: &IntervalSet) -> Option<Decision> {
        let (point, position) = self.stream.first_in(diff)?;
        let omega = self.signs.at_position(&self.stream, &point, &position);
        let sign = Sign::of(&f.evaluate(&point), &g.evaluate(&point)) * omega;
        debug_assert!(!sign.is_zero());
        let stream_index = self.stream.stream_index(&point, &position);
        Some(Decision { sign, witness: Some(Witness { stage, point, position, stream_index }) })
    }
}

/// Sign decided at the first point of a dense sequence where two maps differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardOrdering {
    stage: Stage,
}

impl StandardOrdering {
    pub fn new(prefix: Vec<Rational>, signs: SignAssignment) -> Result<StandardOrdering, Error> {
        let stream = PointStream::new(prefix, IntervalSet::full())?;
        Ok(StandardOrdering { stage: Stage::new(stream, signs) })
    }

    /// Canonical stream, every sign `+`.
    pub fn canonical() -> StandardOrdering {
        StandardOrdering { stage: Stage::new(PointStream::canonical(), SignAssignment::constant(Sign::Positive)) }
    }

    pub fn stream(&self) -> &PointStream {
        &self.stage.stream
    }

    pub fn signs(&self) -> &SignAssignment {
        &self.stage.signs
    }

    pub fn as_stage(&self) -> &Stage {
        &self.stage
    }

    /// Compares `f` with `g`: `Positive` means `f ≻ g`.
    pub fn compare(&self, f: &PlHomeo, g: &PlHomeo) -> Decision {
        let diff = f.difference_set(g);
        if diff.is_empty() {
            return Decision::equal();
        }
        self.stage.decide(0, f, g, &diff).expect("a dense stream meets every nonempty open set")
    }

    pub fn sign(&self, f: &PlHomeo) -> Sign {
        self.compare(f, &PlHomeo::identity()).sign
    }

    /// Point and sign at stream position `n` (0-based).
    pub fn entry(&self, n: usize) -> (Rational, Sign) {
        let point = self.stage.stream.take(n + 1).pop().expect("streams are infinite");
        (point, self.stage.signs.at(n))
    }
}

/// A well-order of type ω·k: stage 0's stream, then stage 1's, and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagedOrdering {
    stages: Vec<Stage>,
}

/// One point of [`StagedOrdering::relevant_prefix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantPoint {
    pub point: Rational,
    pub stage: usize,
    pub stream_index: usize,
    pub sign: Sign,
    pub relevant: bool,
}

impl StagedOrdering {
    /// Fails unless the union of the stage regions is dense in the line.
    pub fn new(stages: Vec<Stage>) -> Result<StagedOrdering, Error> {
        let union = stages.iter().fold(IntervalSet::empty(), |acc, s| acc.union(s.region()));
        if !union.is_dense() {
            return Err(Error::InvalidOrdering(format!("stage regions {union} are not dense in the line")));
        }
        Ok(StagedOrdering { stages })
    }

    /// Positive rationals first, then negative ones, both in canonical order
    /// with every sign `+`.
    pub fn positives_then_negatives() -> StagedOrdering {
        let stage = |region| {
            Stage::new(
                PointStream::new(vec![], region).expect("nonempty region"),
                SignAssignment::constant(Sign::Positive),
            )
        };
        let zero = crate::rational::zero();
        StagedOrdering { stages: vec![stage(IntervalSet::above(zero.clone())), stage(IntervalSet::below(zero))] }
    }

    pub fn from_standard(ord: &StandardOrdering) -> StagedOrdering {
        StagedOrdering { stages: vec![ord.stage.clone()] }
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// Union of the regions of stages before `stage`.
    pub fn earlier_regions(&self, stage: usize) -> IntervalSet {
        self.stages[..stage].iter().fold(IntervalSet::empty(), |acc, s| acc.union(s.region()))
    }

    pub fn compare(&self, f: &PlHomeo, g: &PlHomeo) -> Decision {
        let diff = f.difference_set(g);
        if diff.is_empty() {
            return Decision::equal();
        }
        for (j, stage) in self.stages.iter().enumerate() {
            if !diff.intersects(stage.region()) {
                continue;
            }
            if let Some(d) = stage.decide(j, f, g, &diff) {
                return d;
            }
        }
        unreachable!("stage regions are dense, so some stage meets the difference set")
    }

    pub fn sign(&self, f: &PlHomeo) -> Sign {
        self.compare(f, &PlHomeo::identity()).sign
    }

    /// The first `count` points of every stage, in well-order, each marked
    /// relevant when it lies outside the closure of the earlier stages'
    /// regions.
    pub fn relevant_prefix(&self, count: usize) -> Vec<RelevantPoint> {
        let mut out = Vec::new();
        for (j, stage) in self.stages.iter().enumerate() {
            let earlier = self.earlier_regions(j);
            for (i, point) in stage.stream.take(count).into_iter().enumerate() {
                out.push(RelevantPoint {
                    relevant: !earlier.closure_contains(&point),
                    sign: stage.signs.at(i),
                    point,
                    stage: j,
                    stream_index: i,
                });
            }
        }
        out
    }

    /// The first `count` relevant points of one stage with their signs, in
    /// stream order.
    pub fn relevant_points_of_stage(&self, stage: usize, count: usize) -> Vec<(Rational, Sign)> {
        let s = &self.stages[stage];
        let outside = self.earlier_regions(stage).exterior();
        let points = s.stream.take_within(&outside, count);
        // Signs are indexed by position in the full stage stream.
        let full_positions = self.stage_positions(stage, &points);
        points.into_iter().zip(full_positions).map(|(p, idx)| (p, s.signs.at(idx))).collect()
    }

    fn stage_positions(&self, stage: usize, points: &[Rational]) -> Vec<usize> {
        let s = &self.stages[stage];
        points
            .iter()
            .map(|p| {
                if let Some(i) = s.stream.prefix().iter().position(|q| q == p) {
                    return i;
                }
                let k = crate::enumerate::canonical_index(p);
                s.stream
                    .stream_index(p, &StreamPosition::Continuation(k))
                    .and_then(|i| num_traits::ToPrimitive::to_usize(&i))
                    .expect("stream position of an enumerated point")
            })
            .collect()
    }

    /// Rank of `point` among the relevant points of `stage`, in stream order,
    /// or `None` if it is not relevant there or the rank is out of reach.
    pub fn relevant_rank(&self, stage: usize, point: &Rational) -> Option<BigUint> {
        let s = &self.stages[stage];
        let region = s.region().intersection(&self.earlier_regions(stage).exterior());
        if !region.contains(point) {
            return None;
        }
        // The relevant points form the stream restricted to `region`.
        let prefix: Vec<Rational> = s.stream.prefix().iter().filter(|p| region.contains(p)).cloned().collect();
        let position = match prefix.iter().position(|q| q == point) {
            Some(i) => StreamPosition::Prefix(i),
            None => StreamPosition::Continuation(crate::enumerate::canonical_index(point)),
        };
        PointStream::new(prefix, region).ok()?.stream_index(point, &position)
    }

    /// Stages that have at least one relevant point.
    pub fn stages_with_relevant_points(&self) -> Vec<usize> {
        (0..self.stages.len())
            .filter(|&j| self.stages[j].region().intersects(&self.earlier_regions(j).exterior()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homeo::pl_bump;
    use crate::rational::{frac, int};

    fn two_stage() -> StagedOrdering {
        let pos = Stage::new(
            PointStream::new(vec![], IntervalSet::above(int(0))).unwrap(),
            SignAssignment::constant(Sign::Positive),
        );
        let neg = Stage::new(
            PointStream::new(vec![], IntervalSet::below(int(0))).unwrap(),
            SignAssignment::constant(Sign::Positive),
        );
        StagedOrdering::new(vec![pos, neg]).unwrap()
    }

    #[test]
    fn standard_examples() {
        let ord = StandardOrdering::canonical();
        let t = PlHomeo::translation(int(1));
        let d = ord.compare(&t, &PlHomeo::identity());
        assert_eq!(d.sign, Sign::Positive);
        assert_eq!(d.witness.unwrap().stream_index, Some(BigUint::from(0u32)));
        assert_eq!(ord.compare(&t, &t), Decision::equal());
        let down = pl_bump(&int(-2), &int(-1), &frac(-1, 4)).unwrap();
        let d = ord.compare(&down, &PlHomeo::identity());
        assert_eq!(d.sign, Sign::Negative);
        let w = d.witness.unwrap();
        assert_eq!(w.point, frac(-3, 2));
        assert_eq!(w.stream_index, Some(BigUint::from(10u32)));
    }

    #[test]
    fn staged_examples() {
        let ord = two_stage();
        let down = pl_bump(&int(-2), &int(-1), &frac(-1, 4)).unwrap();
        let w = ord.compare(&down, &PlHomeo::identity()).witness.unwrap();
        assert_eq!((w.stage, w.point), (1, frac(-3, 2)));
        let t = PlHomeo::translation(int(1));
        let w = ord.compare(&t, &PlHomeo::identity()).witness.unwrap();
        assert_eq!((w.stage, w.point, w.stream_index), (0, int(1), Some(BigUint::from(0u32))));
        assert_eq!(ord.compare(&t, &t).sign, Sign::Zero);
    }

    #[test]
    fn staged_requires_density() {
        let pos = Stage::new(
            PointStream::new(vec![], IntervalSet::above(int(0))).unwrap(),
            SignAssignment::constant(Sign::Positive),
        );
        assert!(StagedOrdering::new(vec![pos]).is_err());
    }

    #[test]
    fn relevance_examples() {
        let single = StagedOrdering::from_standard(&StandardOrdering::canonical());
        assert!(single.relevant_prefix(20).iter().all(|p| p.relevant));

        let ord = two_stage();
        let pts = ord.relevant_prefix(5);
        let p = pts.iter().find(|p| p.point == frac(-3, 2)).unwrap();
        assert_eq!(p.stage, 1);
        assert!(p.relevant);

        let stages = vec![
            ord.stages()[0].clone(),
            ord.stages()[1].clone(),
            Stage::new(
                PointStream::new(vec![], IntervalSet::above(int(0))).unwrap(),
                SignAssignment::constant(Sign::Negative),
            ),
        ];
        let dup = StagedOrdering::new(stages).unwrap();
        assert!(dup.relevant_prefix(6).iter().filter(|p| p.stage == 2).all(|p| !p.relevant));
        assert_eq!(dup.stages_with_relevant_points(), vec![0, 1]);
    }

    #[test]
    fn relevant_points_skip_closure_of_earlier_regions() {
        let first = Stage::new(
            PointStream::new(vec![], IntervalSet::interval(int(0), int(2))).unwrap(),
            SignAssignment::constant(Sign::Positive),
        );
        let second = Stage::new(
            PointStream::new(vec![int(1), int(2)], IntervalSet::full()).unwrap(),
            SignAssignment::from_list(&[Sign::Negative, Sign::Negative], Sign::Positive).unwrap(),
        );
        let ord = StagedOrdering::new(vec![first, second]).unwrap();
        let pts = ord.relevant_points_of_stage(1, 4);
        // 1 and 2 lie in the closure of (0, 2); the canonical stream continues
        // 0 (in closure), -1, 1/2 (in closure), -1/2, 2 (prefix), -2 ...
        assert_eq!(
            pts.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(),
            vec![int(-1), frac(-1, 2), int(-2), frac(-1, 3)]
        );
        assert!(pts.iter().all(|(_, s)| *s == Sign::Positive));
    }
}
