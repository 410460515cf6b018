//! Sugeno-Weber t-norms and the dominance relation between them.
//!
//! The crate is split into four layers:
//!
//! * [`tnorm`]: evaluation of the basic t-norms and the Sugeno-Weber family,
//!   plus the raw expressions of the dominance inequality.
//! * [`law`]: the closed-form dominance characterization, its equivalent
//!   square-root form, the boundary involution `f`, the sufficient conditions
//!   derived from the Mulholland inequality and the dominated-set shapes.
//! * [`falsify`] and [`reduced`]: an independent numerical counterexample
//!   search, both on the raw inequality and on its max-free reduced form.
//! * [`region`]: sampling of the `(lambda, mu)` solution set and of the
//!   boundary curve.
//!
//! Everything here is pure computation; file formats, the command line and
//! parallel drivers live in the `swdom` companion crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
// `!(x > a)` is deliberate: it rejects NaN along with small values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub use error::*;

mod param;
pub use param::*;

pub mod falsify;
pub mod law;
pub mod order;
pub mod reduced;
pub mod region;
pub mod tnorm;

pub use falsify::{falsify, grid_min_gap, refine_witness, FalsifyResult, Point, SearchConfig, Witness};
pub use law::{dominated_set, dominates_closed_form, dominates_equiv_form, ConditionTag, DominanceVerdict, R_CRIT};
pub use reduced::{map_reduced_to_raw, reduced_search, reduced_violation, ReducedWitness};
pub use region::{boundary_curve, sample_region, BoundaryCurve, RegionGrid, Scale};
pub use tnorm::{dominance_gap, tnorm_eval, tsw_eval, TNormId};
