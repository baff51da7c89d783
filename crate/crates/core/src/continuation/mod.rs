//! Following periodic orbits along paths in parameter space, and the
//! permutations of period-`N` points that closed loops induce.

mod automorphism;
mod engine;
mod monodromy;
mod path;

use crate::henon::{HenonError, HenonParams};
use crate::symbolic::SymbolicError;

pub use automorphism::{generator_actions, match_automorphism, DEFAULT_GENERATOR_BUDGET};
pub use engine::{continue_orbit, continue_orbits, ContinuationOptions, ContinuationRun};
pub use monodromy::{
    hat_loop, hat_loop_report, monodromy, monodromy_from, monodromy_with, theorem5_check,
    InvolutionReport, MonodromyGrade, MonodromyResult, MonodromyStatus, OrbitCodes, OrbitTrace,
    Theorem5Report,
};
pub use path::ParamPath;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ContinuationError {
    #[error("bad path: {0}")]
    BadPath(String),
    #[error("orbits {first} and {second} collided near {at}")]
    Collision {
        at: HenonParams,
        first: usize,
        second: usize,
    },
    #[error("Newton corrector failed at minimum step near {at}")]
    Divergence { at: HenonParams },
    #[error("orbit {index} lost hyperbolicity near {at} (margin {margin:.3e})")]
    MarginLoss {
        at: HenonParams,
        index: usize,
        margin: f64,
    },
    #[error("step budget exhausted after {steps} steps at {at}")]
    Budget { at: HenonParams, steps: usize },
    #[error("orbit solved at {orbit} but path starts at {path}")]
    StartMismatch { orbit: HenonParams, path: HenonParams },
    #[error("landing of orbit {index} is ambiguous (nearest {nearest:.3e}, second {second:.3e})")]
    LandingAmbiguous {
        index: usize,
        nearest: f64,
        second: f64,
    },
    #[error("continued orbits do not land bijectively on the period-{0} points")]
    NotBijective(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Henon(#[from] HenonError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

impl ContinuationError {
    /// Index of the tracked orbit that triggered the failure, if any.
    pub fn orbit_index(&self) -> Option<usize> {
        match self {
            Self::Collision { first, .. } => Some(*first),
            Self::MarginLoss { index, .. } | Self::LandingAmbiguous { index, .. } => Some(*index),
            _ => None,
        }
    }

    /// Parameter at which continuation stopped, if known.
    pub fn location(&self) -> Option<HenonParams> {
        match self {
            Self::Collision { at, .. }
            | Self::Divergence { at }
            | Self::MarginLoss { at, .. }
            | Self::Budget { at, .. } => Some(*at),
            _ => None,
        }
    }
}
