//! Spectral evolvers and numerical checks on a periodic 1D grid.

mod boost;
mod evolve;
mod fourth;
mod grid;
mod limits;
mod measure;
pub mod table;

pub use boost::{boost_check, central_d1, central_d2, galilean_phase, lorentz_phase, spreading_gaussian, BoostKind, BoostReport, Packet};
pub use evolve::{branch_amplitudes, evolve, mode_roots, particle_branch, propagate, Equation, ModeRoots};
pub use fourth::{apply_numeric, field_mismatch, fourth_order_residual, FieldMismatch, FourthOrderRow};
pub use grid::{Grid1D, PhysicalParams, WaveState};
pub use limits::{multiplier_phase_gap, nr_limit_study, LimitRow, LimitStudy};
pub use measure::{fit_slope, measure_dispersion, unwrap, Branch, DispersionRow};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LabError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("k = {k} is not on the grid lattice (spacing {dk})")]
    NonLatticeK { k: f64, dk: f64 },
    #[error("degenerate branch roots at k = {k} (discriminant {discriminant})")]
    Degenerate { k: f64, discriminant: f64 },
    #[error("packet reaches the window edge (relative amplitude {edge:e})")]
    StencilOutsideWindow { edge: f64 },
}
