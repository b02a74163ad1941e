use thiserror::Error;

use crate::farey::FareyError;
use crate::graph::GraphError;
use crate::level::LevelError;
use crate::product::ProductError;
use crate::reconstruct::ReconstructError;
use crate::surface::SurfaceError;
use crate::tower::TowerError;

/// Any error raised by the library, tagged with its originating module.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph-core: {0}")]
    Graph(#[from] GraphError),
    #[error("surface-core: {0}")]
    Surface(#[from] SurfaceError),
    #[error("farey-engine: {0}")]
    Farey(#[from] FareyError),
    #[error("level-quotient: {0}")]
    Level(#[from] LevelError),
    #[error("product-complex: {0}")]
    Product(#[from] ProductError),
    #[error("reconstruct: {0}")]
    Reconstruct(#[from] ReconstructError),
    #[error("tower: {0}")]
    Tower(#[from] TowerError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether the error is a violated precondition (bad input or a size
    /// guard) rather than a failed computation.
    pub fn is_precondition(&self) -> bool {
        match self {
            Error::Graph(e) => matches!(
                e,
                GraphError::SizeLimitExceeded { .. } | GraphError::Json(_)
            ),
            Error::Surface(_) => true,
            Error::Farey(e) => matches!(e, FareyError::DepthLimit { .. } | FareyError::WrongType(_)),
            Error::Level(e) => matches!(
                e,
                LevelError::ModulusLimit { .. } | LevelError::NotDivisible { .. }
            ),
            Error::Product(_) => true,
            Error::Reconstruct(e) => matches!(
                e,
                ReconstructError::SizeLimit(_)
                    | ReconstructError::NeighborhoodTooLarge { .. }
                    | ReconstructError::NotProductLike(_)
                    | ReconstructError::VertexSetMismatch
            ),
            Error::Tower(e) => matches!(
                e,
                TowerError::UnsupportedSurface(_) | TowerError::NoUniqueTop | TowerError::NoLevels
            ) || matches!(e, TowerError::Level(LevelError::ModulusLimit { .. })),
            Error::Io(_) => true,
        }
    }
}
