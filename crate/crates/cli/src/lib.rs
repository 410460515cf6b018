//! File formats, parallel drivers, invariant suites and the command line
//! for [`swdom_core`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod export;
pub mod parallel;
pub mod verify;
