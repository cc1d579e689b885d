//! Dynamical realization of finitely generated left-ordered groups.
//!
//! Elements of a ball are enumerated breadth-first, placed on the line by
//! the `t`-map (each new element goes one unit past the current extreme or
//! halfway between its order-neighbours), and each generator's action on
//! these points is interpolated by a PL homeomorphism.

mod oracle;
mod tmap;

pub use oracle::{GroupOracle, Letter, PlSubgroup, Word, ZLex};
pub use tmap::{
    build_tmap, check_recovery, enumerate_ball, realize, RealizationResult, RecoveryReport, RecoveryViolation,
};
