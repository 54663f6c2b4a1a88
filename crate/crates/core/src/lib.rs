//! Exact computations with N-complexes, q-differentials and their homology
//! over cyclotomic fields.

pub mod cli;
pub mod complex;
pub mod cyclo;
pub mod delta;
pub mod forms;
pub mod gauge;
pub mod generate;
pub mod homology;
pub mod homops;
pub mod linalg;
pub mod qnum;
pub mod quantum;
pub mod suites;
