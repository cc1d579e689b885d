//! Sign and comparison engines.

pub mod germ;
pub mod harness;
pub mod lex;
pub mod spec;
pub mod stream;

pub use germ::{CompositeDecision, CompositeOrdering, GermOrdering};
pub use harness::{typicality_probe, verify_positive_cone, ConeReport, ConeViolation, GroupElement, TypicalityReport};
pub use lex::{Decision, RelevantPoint, Stage, StagedOrdering, StandardOrdering, Witness};
pub use spec::{OrderingDecision, OrderingSpec};
pub use stream::{PointStream, SignAssignment, StreamPosition};
