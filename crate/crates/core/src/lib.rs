//! Exact-arithmetic measures on integer partitions built from the Macdonald
//! symmetric functions, with growth-process samplers and verification tools.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod error;
pub mod gl;
pub mod harness;
pub mod kernel;
pub mod measures;
pub mod partition;
pub mod qseries;
pub mod samplers;
pub mod tableaux;

pub use error::{Error, Result};
pub use gl::{ClassDatum, ClassFactor};
pub use harness::{
    run_experiment, verify, CheckResult, ComparisonReport, ExperimentConfig, SamplerKind,
};
pub use kernel::QTParams;
pub use measures::{JPolynomial, MeasureSpec, PlancherelRatio};
pub use partition::{partitions_of, partitions_up_to, Cell, CellStats, PartitionShape};
pub use qseries::{ExactProb, Rational, USeries, VariableSpec};
pub use samplers::{GrowthEvent, GrowthTrace, PathWeightVariant, RandomSource};
pub use tableaux::{Permutation, StandardTableau};
