//! Computational toolkit for the complex Hénon family
//! `f(x, y) = (x² + a − b·y, x)` and its horseshoe parameter locus.
//!
//! The crate is organised by subsystem:
//!
//! - [`symbolic`]: shift spaces on small transition graphs, sliding block
//!   codes (the Brown automorphism `F`, the symbol swap `C`, the shift),
//!   lifts between the two-symbol and three-box codings, and the period-four
//!   argument separating `F` from the loop-generated subgroups.
//! - [`one_dim`]: the quadratic family `g(z) = z² + a`: escape bounds, the
//!   two-piece sector partition, the three-box cover and its parameter region,
//!   the critical Green's function and its circulation around large circles.
//! - [`henon`]: the Hénon map itself, periodic orbits solved in sequence
//!   space, multipliers and orbit codings.
//! - [`continuation`]: predictor-corrector continuation of whole period-`N`
//!   sets along parameter paths, and the permutation of codes induced by loops.
//! - [`scanner`]: per-parameter horseshoe evidence, real-type classification,
//!   parameter-plane scans and raster rendering of scans and region overlays.
//!
//! Runnable walkthroughs for each subsystem live in `examples/`.

pub mod continuation;
pub mod cx;
pub mod henon;
pub mod one_dim;
pub mod scanner;
pub mod symbolic;

mod error;

pub use error::Error;

/// Version tag mixed into scan cache keys; bump when classifier output changes.
pub const CODE_VERSION: &str = concat!("horseshoe-", env!("CARGO_PKG_VERSION"), "-scan1");
