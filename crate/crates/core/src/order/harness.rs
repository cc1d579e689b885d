//! Verification harnesses: positive-cone axioms and typicality probes.

use crate::error::Error;
use crate::germ::AffineGerm;
use crate::homeo::PlHomeo;
use crate::sign::Sign;

/// Group operations needed by [`verify_positive_cone`].
pub trait GroupElement: Clone {
    fn identity() -> Self;
    /// `self ∘ other`.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
}

impl GroupElement for PlHomeo {
    fn identity() -> Self {
        PlHomeo::identity()
    }
    fn compose(&self, other: &Self) -> Self {
        PlHomeo::compose(self, other)
    }
    fn inverse(&self) -> Self {
        self.invert()
    }
    fn is_identity(&self) -> bool {
        PlHomeo::is_identity(self)
    }
}

impl GroupElement for AffineGerm {
    fn identity() -> Self {
        AffineGerm::identity()
    }
    fn compose(&self, other: &Self) -> Self {
        AffineGerm::compose(self, other)
    }
    fn inverse(&self) -> Self {
        AffineGerm::inverse(self)
    }
    fn is_identity(&self) -> bool {
        self.is_trivial()
    }
}

/// A failed positive-cone axiom; indices refer to the sample list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeViolation {
    IdentityNotZero {
        sign: Sign,
    },
    /// A nontrivial sample got sign zero, or an element and its inverse did
    /// not get opposite nonzero signs.
    Trichotomy {
        index: usize,
        sign: Sign,
        inverse_sign: Sign,
    },
    /// Product of two positive samples is not positive.
    NotClosed {
        left: usize,
        right: usize,
        product_sign: Sign,
    },
    SignError {
        index: usize,
        message: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeReport {
    pub samples: usize,
    pub products_checked: usize,
    pub violations: Vec<ConeViolation>,
}

impl ConeReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `{g : sign(g) = +}` is a positive cone on the sampled
/// elements: the identity has sign zero, each nontrivial element has exactly
/// one of itself and its inverse positive, and products of positives are
/// positive.
pub fn verify_positive_cone<T, F>(sign: F, samples: &[T]) -> ConeReport
where
    T: GroupElement,
    F: Fn(&T) -> Result<Sign, Error>,
{
    let mut report = ConeReport { samples: samples.len(), ..ConeReport::default() };
    match sign(&T::identity()) {
        Ok(Sign::Zero) => {}
        Ok(s) => report.violations.push(ConeViolation::IdentityNotZero { sign: s }),
        Err(e) => report.violations.push(ConeViolation::SignError { index: usize::MAX, message: e.to_string() }),
    }
    let mut signs = Vec::with_capacity(samples.len());
    for (index, f) in samples.iter().enumerate() {
        let s = sign(f).and_then(|s| Ok((s, sign(&f.inverse())?)));
        match s {
            Ok((s, inv)) => {
                let ok = if f.is_identity() { s.is_zero() && inv.is_zero() } else { !s.is_zero() && inv == -s };
                if !ok {
                    report.violations.push(ConeViolation::Trichotomy { index, sign: s, inverse_sign: inv });
                }
                signs.push(Some(s));
            }
            Err(e) => {
                report.violations.push(ConeViolation::SignError { index, message: e.to_string() });
                signs.push(None);
            }
        }
    }
    for (i, f) in samples.iter().enumerate() {
        if signs[i] != Some(Sign::Positive) {
            continue;
        }
        for (j, g) in samples.iter().enumerate() {
            if signs[j] != Some(Sign::Positive) {
                continue;
            }
            report.products_checked += 1;
            match sign(&f.compose(g)) {
                Ok(Sign::Positive) => {}
                Ok(s) => report.violations.push(ConeViolation::NotClosed { left: i, right: j, product_sign: s }),
                Err(e) => report.violations.push(ConeViolation::SignError { index: i, message: e.to_string() }),
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypicalityMismatch {
    pub index: usize,
    pub first: Sign,
    pub second: Sign,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypicalityReport {
    pub pairs: usize,
    pub mismatches: Vec<TypicalityMismatch>,
}

/// For pairs with identical above and below sets, reports every pair whose
/// signs differ; each such pair certifies that the ordering is not typical.
pub fn typicality_probe<F>(sign: F, pairs: &[(PlHomeo, PlHomeo)]) -> Result<TypicalityReport, Error>
where
    F: Fn(&PlHomeo) -> Result<Sign, Error>,
{
    for (index, (f, g)) in pairs.iter().enumerate() {
        if f.above_set() != g.above_set() || f.below_set() != g.below_set() {
            return Err(Error::InvalidPair { index });
        }
    }
    let mut report = TypicalityReport { pairs: pairs.len(), mismatches: Vec::new() };
    for (index, (f, g)) in pairs.iter().enumerate() {
        let (first, second) = (sign(f)?, sign(g)?);
        if first != second {
            report.mismatches.push(TypicalityMismatch { index, first, second });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homeo::pl_bump;
    use crate::order::lex::StandardOrdering;
    use crate::rational::{frac, int};

    fn samples() -> Vec<PlHomeo> {
        vec![
            PlHomeo::translation(int(1)),
            PlHomeo::translation(frac(-1, 3)),
            pl_bump(&int(0), &int(1), &frac(1, 4)).unwrap(),
            pl_bump(&int(-3), &int(-1), &frac(-1, 2)).unwrap(),
            PlHomeo::affine(int(2), int(0)).unwrap(),
        ]
    }

    #[test]
    fn standard_ordering_is_a_cone() {
        let ord = StandardOrdering::canonical();
        let report = verify_positive_cone(|f: &PlHomeo| Ok(ord.sign(f)), &samples());
        assert!(report.is_clean(), "{report:?}");
        assert!(report.products_checked > 0);
    }

    #[test]
    fn corrupted_sign_is_caught() {
        let ord = StandardOrdering::canonical();
        let bad = PlHomeo::translation(int(1));
        let sign = |f: &PlHomeo| Ok(if *f == bad { -ord.sign(f) } else { ord.sign(f) });
        let report = verify_positive_cone(sign, &samples());
        assert!(report.violations.iter().any(|v| matches!(v, ConeViolation::Trichotomy { index: 0, .. })));
    }

    #[test]
    fn typicality_rejects_unmatched_pairs() {
        let ord = StandardOrdering::canonical();
        let f = PlHomeo::translation(int(1));
        let g = pl_bump(&int(0), &int(1), &frac(1, 4)).unwrap();
        let err = typicality_probe(|h: &PlHomeo| Ok(ord.sign(h)), &[(f.clone(), g)]).unwrap_err();
        assert!(matches!(err, Error::InvalidPair { index: 0 }));
        let report = typicality_probe(|h: &PlHomeo| Ok(ord.sign(h)), &[(f.clone(), f)]).unwrap();
        assert!(report.mismatches.is_empty());
    }
}
