//! Command-line front end and HTTP service for the `horseshoe` crate.
//!
//! The CLI verbs and the HTTP endpoints share the request and response
//! types in [`ops`], so a verb run with `--format json` prints exactly the
//! body the matching endpoint returns.

pub mod api;
pub mod cache;
pub mod cli;
pub mod config;
pub mod jobs;
pub mod ops;

pub use config::Config;
pub use ops::ServiceError;
