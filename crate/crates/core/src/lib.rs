//! Exact enumeration, generating functions and moment formulas for the jump
//! statistics of full binary trees.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is computed in
//! exact rational arithmetic:
//!
//! - [`trees`]: full binary trees, their four statistics, lazy enumeration and
//!   brute-force weight enumerators.
//! - [`algebra`]: bivariate polynomials in the markers `t`, `q` and truncated
//!   power series in `x` over them.
//! - [`genfunc`]: the generating functions `f`, `F`, `H`, `J`, `K` and the
//!   cross-multiplied checks of their closed forms.
//! - [`moments`]: raw, central and scaled moments of the jump statistics plus
//!   the reference closed forms.
//! - [`guess`]: fitting exact data to rational functions of `n`, holdout
//!   verification and limits.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod genfunc;
pub mod guess;
pub mod moments;
pub mod trees;

pub use algebra::{fixed_point_solve, ExactRational, Marker, Poly2, Series};
pub use error::Error;
pub use genfunc::{RadicalIdentity, Theorem, Verdict};
pub use guess::{fit_rational, guess_rational, limit_at_infinity, Limit, RationalFunctionN};
pub use moments::{
    check_closed_forms, moment_table, reference_forms, ClosedForm, MomentSpec, MomentTable,
    Statistic,
};
pub use trees::{
    brute_force_enumerator, catalan, compute_stats, enumerate_trees, BinaryTree, TreeStats,
};
