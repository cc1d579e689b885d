//! Convergence of sequences of standard orderings, judged from finite data.
//!
//! A sequence of orderings converges when the sign of every fixed map is
//! eventually constant. Only finitely many terms can ever be inspected, so
//! every verdict here is "stable over the final quarter of the budget" or
//! "not stable within the budget"; divergence is never claimed.

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::homeo::PlHomeo;
use crate::order::{SignAssignment, StagedOrdering, StandardOrdering};
use crate::rational::Rational;
use crate::sign::Sign;

/// Terms `1..=budget` of a sequence of standard orderings.
#[derive(Clone)]
pub struct OrderingSequence {
    provider: Arc<dyn Fn(usize) -> StandardOrdering + Send + Sync>,
    budget: usize,
}

impl fmt::Debug for OrderingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderingSequence").field("budget", &self.budget).finish_non_exhaustive()
    }
}

impl OrderingSequence {
    pub fn new(provider: impl Fn(usize) -> StandardOrdering + Send + Sync + 'static, budget: usize) -> Self {
        OrderingSequence { provider: Arc::new(provider), budget }
    }

    pub fn constant(ordering: StandardOrdering, budget: usize) -> Self {
        OrderingSequence::new(move |_| ordering.clone(), budget)
    }

    /// Term `n` is `terms[min(n, len) − 1]`; the budget is the list length.
    pub fn from_terms(terms: Vec<StandardOrdering>) -> Self {
        let budget = terms.len();
        OrderingSequence::new(move |n| terms[n.min(terms.len()) - 1].clone(), budget)
    }

    /// `n ↦ approximating_sequence(ord, n)`.
    pub fn approximating(ord: StagedOrdering, budget: usize) -> Self {
        OrderingSequence::new(move |n| approximating_sequence(&ord, n), budget)
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Term `n`, counting from 1.
    pub fn get(&self, n: usize) -> StandardOrdering {
        assert!(n >= 1, "sequence terms are numbered from 1");
        (self.provider)(n)
    }

    pub fn terms(&self) -> impl Iterator<Item = StandardOrdering> + '_ {
        (1..=self.budget).map(|n| self.get(n))
    }
}

/// The first `n` relevant points of `ord`, taken round-robin over the stages
/// that have relevant points and listed in well-order, with `ord`'s signs;
/// continued canonically with default sign `+`.
pub fn approximating_sequence(ord: &StagedOrdering, n: usize) -> StandardOrdering {
    let (prefix, signs): (Vec<Rational>, Vec<Sign>) = approximating_prefix(ord, n).into_iter().unzip();
    let signs = SignAssignment::from_list(&signs, Sign::Positive).expect("staged signs are nonzero");
    StandardOrdering::new(prefix, signs).expect("relevant points are distinct")
}

/// Number of points each active stage contributes to the first `n` slots.
fn round_robin_counts(active: usize, n: usize) -> Vec<usize> {
    (0..active).map(|q| n / active + usize::from(q < n % active)).collect()
}

fn approximating_prefix(ord: &StagedOrdering, n: usize) -> Vec<(Rational, Sign)> {
    let active = ord.stages_with_relevant_points();
    let counts = round_robin_counts(active.len(), n);
    let mut out: Vec<(Rational, Sign)> = Vec::with_capacity(n);
    for (&stage, &count) in active.iter().zip(&counts) {
        for (p, s) in ord.relevant_points_of_stage(stage, count) {
            // A point can recur in a later stage whose region overlaps an
            // earlier one only on its boundary; keep its first occurrence.
            if !out.iter().any(|(q, _)| *q == p) {
                out.push((p, s));
            }
        }
    }
    out
}

/// Least `n` from which `approximating_sequence(ord, n)` gives `f` the same
/// sign as `ord`: the round-robin slot of the point deciding `f`. `None` for
/// the identity or when the deciding point's rank cannot be determined.
pub fn relevance_threshold(ord: &StagedOrdering, f: &PlHomeo) -> Option<usize> {
    let witness = ord.compare(f, &PlHomeo::identity()).witness?;
    let active = ord.stages_with_relevant_points();
    let q = active.iter().position(|&s| s == witness.stage)?;
    let rank = ord.relevant_rank(witness.stage, &witness.point)?.to_usize()?;
    rank.checked_mul(active.len())?.checked_add(q + 1)
}

/// Length of the trailing window a verdict is based on.
fn window(budget: usize) -> usize {
    budget.div_ceil(4).max(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationTrace {
    /// Sign at indices `1..=budget`.
    pub signs: Vec<Sign>,
    pub stabilized: bool,
    /// First index from which the sign stays constant through the budget,
    /// reported only when stabilized.
    pub stable_from: Option<usize>,
    pub limit: Option<Sign>,
}

fn trace_of<T: Clone + PartialEq>(values: &[T]) -> (bool, Option<usize>, Option<T>) {
    let Some(last) = values.last() else {
        return (false, None, None);
    };
    let w = window(values.len());
    if values[values.len() - w..].iter().any(|v| v != last) {
        return (false, None, None);
    }
    let start = values.iter().rposition(|v| v != last).map_or(1, |i| i + 2);
    (true, Some(start), Some(last.clone()))
}

/// Sign trace of each test map along the sequence.
pub fn stabilization_probe(seq: &OrderingSequence, tests: &[PlHomeo]) -> Vec<StabilizationTrace> {
    let terms: Vec<StandardOrdering> = seq.terms().collect();
    tests
        .iter()
        .map(|f| {
            let signs: Vec<Sign> = terms.iter().map(|o| o.sign(f)).collect();
            let (stabilized, stable_from, limit) = trace_of(&signs);
            StabilizationTrace { signs, stabilized, stable_from, limit }
        })
        .collect()
}

/// Eventual value of one position of the limit's point sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LimitEntry {
    Stable {
        #[serde(with = "crate::rational::serde_str")]
        point: Rational,
        sign: Sign,
        from: usize,
    },
    NotStabilized,
}

impl LimitEntry {
    pub fn value(&self) -> Option<(&Rational, Sign)> {
        match self {
            LimitEntry::Stable { point, sign, .. } => Some((point, *sign)),
            LimitEntry::NotStabilized => None,
        }
    }
}

/// The eventual point and sign at each of the first `m` positions.
pub fn limit_prefix(seq: &OrderingSequence, m: usize) -> Vec<LimitEntry> {
    let terms: Vec<StandardOrdering> = seq.terms().collect();
    (0..m)
        .map(|i| {
            let entries: Vec<(Rational, Sign)> = terms.iter().map(|o| o.entry(i)).collect();
            match trace_of(&entries) {
                (true, Some(from), Some((point, sign))) => LimitEntry::Stable { point, sign, from },
                _ => LimitEntry::NotStabilized,
            }
        })
        .collect()
}
