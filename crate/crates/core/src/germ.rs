use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::{self, Rational};

/// The germ at `+∞` of a map with affine right tail `x ↦ a·x + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineGerm {
    #[serde(with = "rational::serde_str")]
    pub a: Rational,
    #[serde(with = "rational::serde_str")]
    pub b: Rational,
}

impl AffineGerm {
    pub fn new(a: Rational, b: Rational) -> Result<AffineGerm, Error> {
        if !a.is_positive() {
            return Err(Error::InvalidHomeo(format!("germ slope {a} is not positive")));
        }
        Ok(AffineGerm { a, b })
    }

    pub fn identity() -> AffineGerm {
        AffineGerm { a: Rational::one(), b: Rational::zero() }
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Germ of `self ∘ inner`.
    pub fn compose(&self, inner: &AffineGerm) -> AffineGerm {
        AffineGerm { a: &self.a * &inner.a, b: &self.a * &inner.b + &self.b }
    }

    pub fn inverse(&self) -> AffineGerm {
        AffineGerm { a: self.a.recip(), b: -&self.b / &self.a }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.a * x + &self.b
    }
}

impl fmt::Display for AffineGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}
