//! Orderings built from the germ at `+∞`, and the composite ordering that falls
//! back to an interior standard ordering on maps with trivial germ.

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::germ::AffineGerm;
use crate::homeo::PlHomeo;
use crate::order::lex::{Decision, StandardOrdering};
use crate::rational::{self, Rational};
use crate::sign::Sign;

/// A left order on affine germs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GermOrdering {
    /// Positive iff the germ eventually lies above the diagonal.
    EventuallyAbove,
    /// Lexicographic in the displacements `a·p + b - p` at the listed points.
    EvalLex(Vec<Rational>),
}

impl GermOrdering {
    pub fn eval_lex(points: Vec<Rational>) -> Result<GermOrdering, Error> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::InvalidOrdering(format!("evaluation point {p} repeated")));
            }
        }
        Ok(GermOrdering::EvalLex(points))
    }

    pub fn sign(&self, germ: &AffineGerm) -> Result<Sign, Error> {
        match self {
            GermOrdering::EventuallyAbove => {
                let slope = Sign::of(&germ.a, &rational::one());
                if slope.is_zero() {
                    Ok(Sign::of(&germ.b, &rational::zero()))
                } else {
                    Ok(slope)
                }
            }
            GermOrdering::EvalLex(points) => {
                for p in points {
                    let displacement = germ.eval(p) - p;
                    if !displacement.is_zero() {
                        return Ok(if displacement.is_positive() { Sign::Positive } else { Sign::Negative });
                    }
                }
                if germ.a.is_one() && germ.b.is_zero() {
                    Ok(Sign::Zero)
                } else {
                    Err(Error::Undecided { a: germ.a.to_string(), b: germ.b.to_string() })
                }
            }
        }
    }
}

/// How a composite sign was decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompositeDecision {
    Germ { germ: AffineGerm, sign: Sign },
    Interior(Decision),
}

impl CompositeDecision {
    pub fn sign(&self) -> Sign {
        match self {
            CompositeDecision::Germ { sign, .. } => *sign,
            CompositeDecision::Interior(d) => d.sign,
        }
    }
}

/// `h ≻ id` iff its germ is positive, or its germ is trivial and it is
/// positive in the interior ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeOrdering {
    pub germ: GermOrdering,
    pub interior: StandardOrdering,
}

impl CompositeOrdering {
    pub fn new(germ: GermOrdering, interior: StandardOrdering) -> CompositeOrdering {
        CompositeOrdering { germ, interior }
    }

    pub fn decide(&self, f: &PlHomeo) -> Result<CompositeDecision, Error> {
        let germ = f.germ_at_infinity();
        if germ.is_trivial() {
            return Ok(CompositeDecision::Interior(self.interior.compare(f, &PlHomeo::identity())));
        }
        let sign = self.germ.sign(&germ)?;
        Ok(CompositeDecision::Germ { germ, sign })
    }

    pub fn sign(&self, f: &PlHomeo) -> Result<Sign, Error> {
        self.decide(f).map(|d| d.sign())
    }

    /// `Positive` means `f ≻ g`, i.e. `g⁻¹f ≻ id`.
    pub fn compare(&self, f: &PlHomeo, g: &PlHomeo) -> Result<Sign, Error> {
        self.sign(&g.invert().compose(f))
    }
}
