//! Exact verification and construction of multiple tilings of the plane by
//! translates of a centrally symmetric convex polygon.
//!
//! Coordinates live in `Q(√d)` for one square-free `d` per instance
//! ([`Scalar`]). A translate multiset is a finite union of translated
//! lattices ([`TileMultiset`]). [`verify_exact`] decides k-fold tilings
//! when the lattices are commensurable, [`bolle_check`] decides lattice
//! tilings directly, and [`theorem1_pipeline`] extracts a lattice tiling
//! from any verified multiple translative tiling.

// exact scalars are large, so errors and enums carrying points are too
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod arrangement;
pub mod bolle;
pub mod field;
pub mod geometry;
pub mod hnf;
pub mod instance;
pub mod lattice;
pub mod report;
mod serde_util;
pub mod svg;
pub mod tiling;
pub mod verify;

pub use bolle::{
    bolle_check, det_a, lemma5_beta, tau_star_search, theorem1_pipeline, BolleReport, Lemma5, PipelineError,
    PipelineOptions, PipelineOutcome, TauStar, Theorem1Certificate,
};
pub use field::{ParseScalarError, Scalar, Sign};
pub use geometry::{ConvexRegion, Location, PolygonError, Segment, SymPolygon, Vec2};
pub use instance::{format_instance, parse_instance, Instance, InstanceError};
pub use lattice::{Lattice2, LatticeError, TranslatedLattice};
pub use svg::{render_svg, RenderError, RenderOptions};
pub use tiling::{multiplicity_at, translates_meeting, Multiplicity, TileMultiset, TilingError};
pub use verify::{common_sublattice, verify_exact, verify_sampled, Mode, Status, TilingCertificate, VerifyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Render(#[from] RenderError),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Scalar(_) => "PARSE_ERROR",
            Error::Polygon(_) => "INVALID_POLYGON",
            Error::Lattice(LatticeError::MixedRadicands) => "MIXED_DISCRIMINANTS",
            Error::Lattice(_) => "DEGENERATE_LATTICE",
            Error::Tiling(TilingError::MixedRadicands) => "MIXED_DISCRIMINANTS",
            Error::Tiling(_) => "INVALID_PARTS",
            Error::Verify(VerifyError::Incommensurable) => "INCOMMENSURABLE",
            Error::Pipeline(PipelineError::CrossCheckFailed { .. }) => "CROSS_CHECK_FAILED",
            Error::Pipeline(_) => "PRECONDITION_UNVERIFIED",
            Error::Instance(e) => e.code(),
            Error::Render(RenderError::WindowTooLarge { .. }) => "WINDOW_TOO_LARGE",
            Error::Render(_) => "INVALID_WINDOW",
        }
    }
}
