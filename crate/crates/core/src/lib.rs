//! Estimation of heavy-tailed Student's t and generalized Pareto
//! distributions from independent approximates.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod distributions;
pub mod error;
pub mod estimators;
pub mod ia_select;
pub mod io;
pub mod metrics;
pub mod numerics;
pub mod power_moments;
pub mod rng;
pub mod standard_map;

pub use distributions::{Family, FamilyParams, SampleSet};
pub use error::{Error, Result};
