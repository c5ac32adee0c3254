use thiserror::Error;

/// Errors raised by the cone, lattice and Hilbert basis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("all generators are zero")]
    ZeroCone,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("generators span a cone of dimension {rank} in ambient dimension {dim}")]
    NotFullDim { rank: usize, dim: usize },
    #[error("candidate list is not sorted by total degree")]
    UnsortedInput,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("point is not in the interior of the lifted cone")]
    NotInterior,
    #[error("no integral grading gives all generators degree 1")]
    NotHomogeneous,
    #[error("vector is not in the working lattice")]
    NotInLattice,
    #[error("could not find lifting weights keeping the bottom simplicial")]
    WeightSearchExhausted,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 1,
            Error::Io(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
