use thiserror::Error;

use crate::braid::BraidError;
use crate::checker::CheckError;
use crate::lines::LineError;
use crate::mw::MwError;
use crate::tangent::TangentError;
use crate::torus::TorusError;

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Model(#[from] MwError),
    #[error(transparent)]
    Lines(#[from] LineError),
    #[error(transparent)]
    Tangent(#[from] TangentError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Braid(_) => "braid",
            Error::Torus(_) => "torus",
            Error::Model(_) => "model",
            Error::Lines(_) => "lines",
            Error::Tangent(_) => "tangent",
            Error::Check(_) => "check",
        }
    }
}
