use serde::Serialize;

use crate::enumerate::first_canonical_in_set;
use crate::error::Error;
use crate::homeo::PlHomeo;
use crate::interval::IntervalSet;
use crate::order::{SignAssignment, StandardOrdering};
use crate::rational::Rational;
use crate::sign::Sign;

/// One chosen point of an approximating standard ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageChoice {
    #[serde(with = "crate::rational::serde_str")]
    pub point: Rational,
    pub sign: Sign,
    /// Indices of the inputs first moved at this point.
    pub decided: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Approximation {
    pub ordering: StandardOrdering,
    pub stages: Vec<StageChoice>,
}

/// A standard ordering in which every input is positive.
///
/// Points are chosen greedily: among the inputs that fix every point chosen
/// so far, the earliest rational (in canonical order) lying in exactly one of
/// `⋃ A` and `⋃ B` is appended, with sign `+` if it lies in `⋃ A`. All those
/// inputs that move it do so in the same direction, so each is decided with
/// the right sign at the first chosen point it moves. The stream continues
/// canonically with default sign `+`.
pub fn approximate_typical(fs: &[PlHomeo]) -> Result<Approximation, Error> {
    if let Some(i) = fs.iter().position(PlHomeo::is_identity) {
        return Err(Error::IdentityInput(i));
    }
    let mut remaining: Vec<usize> = (0..fs.len()).collect();
    let mut points: Vec<Rational> = Vec::new();
    let mut stages = Vec::new();
    while !remaining.is_empty() {
        let above = remaining.iter().fold(IntervalSet::empty(), |acc, &i| acc.union(&fs[i].above_set()));
        let below = remaining.iter().fold(IntervalSet::empty(), |acc, &i| acc.union(&fs[i].below_set()));
        let diff = above.symmetric_difference(&below);
        let Some((_, x)) = first_canonical_in_set(&diff, &points) else {
            return Err(Error::NotJointlyPositivizable { stage: stages.len() + 1, remaining });
        };
        let sign = if above.contains(&x) { Sign::Positive } else { Sign::Negative };
        let (decided, rest): (Vec<usize>, Vec<usize>) = remaining.iter().partition(|&&i| fs[i].evaluate(&x) != x);
        remaining = rest;
        points.push(x.clone());
        stages.push(StageChoice { point: x, sign, decided });
    }
    let signs: Vec<Sign> = stages.iter().map(|s| s.sign).collect();
    let ordering = StandardOrdering::new(points, SignAssignment::from_list(&signs, Sign::Positive)?)?;
    if let Some(i) = fs.iter().position(|f| ordering.sign(f) != Sign::Positive) {
        return Err(Error::ConstructionFailed { rounds: 0, detail: format!("input {i} is not positive") });
    }
    Ok(Approximation { ordering, stages })
}
