//! Hyperbolic building blocks: hexagons, pants, cylinder pieces, Fenchel–Nielsen
//! gluing, the interface Σ and the Bolza surface's length spectrum.

mod bolza;
mod hexagon;
pub mod hyperbolic;
mod piece;
mod surface;

pub use bolza::{bolza_group, length_spectrum, FuchsianGroup, LengthSpectrum, Su11, MAX_L_MAX};
pub use hexagon::{right_angled_hexagon, Hexagon};
pub use piece::{pants_from_lengths, ArcKind, BoundaryPoint, CylinderPiece, Pants};
pub use surface::{
    assemble_surface, ArcRef, CollocationPoint, CollocationSet, FenchelNielsen, FnEdge, Interface,
    SurfaceDecomposition,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("lengths must be positive and finite")]
    InvalidLength,
    #[error("hexagon failed closure check (residual {residual:e})")]
    HexagonClosure { residual: f64 },
    #[error("invalid Fenchel-Nielsen graph: {0}")]
    InvalidGraph(String),
    #[error("collocation density must be positive")]
    InvalidDensity,
    #[error("length cutoff {l_max} is beyond the enumeration limit")]
    Intractable { l_max: f64 },
    #[error("class count {count} at length {length} is not an integer")]
    NonIntegralCount { length: f64, count: f64 },
    #[error("length spectrum file: {0}")]
    LengthFile(String),
}
