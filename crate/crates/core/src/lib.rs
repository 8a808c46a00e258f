//! Miniaturization-oriented optimization of spline-parameterized UWB monopole
//! antennas: a trust-region optimizer over linear surrogates, embedded in a
//! stratified meta-loop that escalates the number of spline knots, driven by a
//! composite size/performance objective. The expensive field solver is
//! abstracted behind an evaluator contract with an analytic reflection model
//! standing in for it.

pub mod design_space;

pub use design_space::{DesignBounds, DesignError, DesignVector};
