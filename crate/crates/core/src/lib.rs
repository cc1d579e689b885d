pub mod enumerate;
pub mod error;
pub mod germ;
pub mod homeo;
pub mod interval;
pub mod limits;
pub mod order;
pub mod pl;
pub mod rational;
pub mod realization;
pub mod sampling;
pub mod sign;
pub mod witness;

pub use error::Error;
pub use germ::AffineGerm;
pub use homeo::{pl_bump, PlHomeo};
pub use interval::{Bound, Interval, IntervalSet, RationalSet};
pub use pl::PiecewiseLinear;
pub use rational::Rational;
pub use sign::Sign;

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/pl-maps.md")]
    mod pl_maps {}
    #[doc = include_str!("../../../book/src/orderings.md")]
    mod orderings {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/realization.md")]
    mod realization {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
