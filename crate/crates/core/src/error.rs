use thiserror::Error;

use crate::continuation::ContinuationError;
use crate::henon::HenonError;
use crate::one_dim::OneDimError;
use crate::scanner::ScanError;
use crate::symbolic::SymbolicError;

/// Umbrella error for callers that mix subsystems.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    OneDim(#[from] OneDimError),
    #[error(transparent)]
    Henon(#[from] HenonError),
    #[error(transparent)]
    Continuation(#[from] ContinuationError),
    #[error(transparent)]
    Scan(#[from] ScanError),
}
