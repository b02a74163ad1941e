//! Exact finite-level combinatorics of curve complexes, pants graphs and
//! their completed graphs.
//!
//! The crate works with finite models only:
//!
//! - [`farey`]: slopes on modular-dimension-1 surfaces, Farey balls, the
//!   modular group action and the pants-to-complete-graph closure.
//! - [`level`]: congruence quotients of the Farey tessellation built as
//!   `PSL2(Z/m)` coset geometries, with level projections.
//! - [`product`]: complexes of disconnected surfaces assembled from
//!   dimension-one pieces by the product formulas.
//! - [`reconstruct`]: local dimension, fiber detection and recovery of the
//!   curve complex from the complete-graph product.
//! - [`tower`]: truncated inverse systems of level quotients.
//! - [`graph`]: the shared finite 2-complex type, isomorphism and
//!   automorphism search, nerves and quotients.
//!
//! ```
//! use curvex::level::farey_level;
//!
//! let ico = farey_level(5).unwrap();
//! assert_eq!(ico.vertex_count(), 12);
//! assert_eq!(ico.edge_count(), 30);
//! assert_eq!(ico.triangle_count(), 20);
//! ```

pub mod cli;
pub mod farey;
pub mod graph;
pub mod level;
pub mod product;
pub mod reconstruct;
pub mod simplicial;
pub mod solids;
pub mod suite;
pub mod surface;
pub mod tower;

mod error;

pub use error::Error;
pub use graph::{AutGroup, Complex2, Flavor, VertexPermutation};
pub use simplicial::SimplicialComplex;
pub use surface::SurfaceSpec;

/// Environment variable overriding [`Limits::max_vertices`].
pub const LIMIT_VERTICES_ENV: &str = "CURVEX_LIMIT_VERTICES";

/// Size guards shared by the constructions and searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest complex accepted by the automorphism search.
    pub max_vertices: usize,
    /// Largest neighborhood for exact local-dimension computation.
    pub max_neighborhood: usize,
    pub max_farey_depth: u32,
    pub max_modulus: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 10_000,
            max_neighborhood: 24,
            max_farey_depth: 20,
            max_modulus: 25,
        }
    }
}

impl Limits {
    /// Defaults, with `max_vertices` taken from `CURVEX_LIMIT_VERTICES` when
    /// it is set to a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(LIMIT_VERTICES_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            limits.max_vertices = v;
        }
        limits
    }
}
