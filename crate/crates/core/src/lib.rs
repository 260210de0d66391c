//! Finite groups of Lie type at desk scale, their directed Engel graphs, and
//! the machinery for deciding strong connectivity.
//!
//! The crate builds small classical and twisted groups exactly (dense element
//! indices over explicit finite fields), evaluates iterated Engel words
//! `[x, n y]`, assembles the graphs `Gamma_n(G)` and the cumulative `Gamma(G)`,
//! and runs strongly-connected-component analysis with
//! conjugation-equivariant implicit arcs so that groups in the 10^4..10^5
//! range stay tractable. On top of that sit explicit witness constructions,
//! a coset-graph framework over subgroup/torus pairs, and a classification
//! oracle cross-validated against brute-force computation.

// index arithmetic and divisibility tests here read as the underlying math
#![allow(clippy::manual_is_multiple_of)]
#![allow(clippy::manual_div_ceil)]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::manual_range_contains)]

pub mod classify;
pub mod delta;
pub mod engel;
pub mod ff;
pub mod graph;
pub mod grp;
pub mod mat;
pub mod util;
pub mod witness;
