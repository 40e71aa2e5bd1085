//! Partitions grouped into blocks of m consecutive parts: alternating sum types,
//! length types, exact truncated generating functions and the checks that
//! compare them.

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod gf;
pub mod partition;
pub mod qdiff;
pub mod qseries;
pub mod verify;

pub use classify::{alt_sum_type, basic_units, case_classify, length_type, unit_distance, BasicUnit, SpecialKind, UnitCase};
pub use enumerate::{count_partitions, enumerate_partitions, AgInterpretation, Constraint, Partitions};
pub use error::{Error, Result};
pub use partition::{AltSumType, LengthType, Modulus, Partition};
pub use qseries::{geometric_factor, pochhammer_chain, ChainFactor, Monomial, TruncatedSeries};
