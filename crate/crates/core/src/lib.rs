//! Exact counters, recurrence evaluation, bijection audits and a q-series
//! oracle for an even/odd companion to the Göllnitz–Gordon identities.

pub mod bijections;
pub mod classes;
pub mod cli;
pub mod error;
pub mod partition;
pub mod qseries;
pub mod recurrence;

pub use classes::{Class, Family, FamilyIndex, RefinedKey};
pub use error::{Count, Error, Result};
pub use partition::{enumerate_partitions, split_even_odd, EnumConstraints, EvenOddSplit, Partition};
