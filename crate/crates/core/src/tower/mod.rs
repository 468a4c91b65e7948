//! Radical towers over ℚ and the field-theoretic checks built on them.

pub mod curves;
pub mod field;
pub mod interval;
pub mod poly;

pub use field::{
    BranchCertificate, CharacterCheck, Element, Embedding, Membership, Precision, RadicalTower,
    SignCharacter, SquareClass, Step, StepId, StepKind, Subfield, Tower, TowerScalar,
};
pub use interval::{ComplexInterval, IntervalSummary, RealInterval};
