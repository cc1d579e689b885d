//! Explicit constructions: the `g`/`h` pipeline for families whose above and
//! below sets cover the same region, finite approximation of typical
//! orderings by standard ones, and a handful of named test functions.

mod anb;
mod functions;
mod typical;

pub use anb::{
    construct_anb, construct_anb_with, construct_g, construct_g_with, construct_h, construct_h_with, solve_t,
    theta_in_t, AnbCertificate, AnbHalf, AnbOptions, AnbResult, SetPair, ThetaInT,
};
pub use functions::{alternating_bump, relevance_bump, same_germ_pair, separating_pair};
pub use typical::{approximate_typical, Approximation, StageChoice};
