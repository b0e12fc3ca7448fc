//! Solving constraint systems and the end-to-end derivations built on them.

mod dispersion;
mod higher_order;
mod galilean;
mod lorentz;
mod pipeline;
mod rotational;
pub mod render;
mod report;
mod system;

pub use dispersion::{dispersion_match, DispersionMatch, DispersionTarget, PlaneWave, OMEGA, WAVENUMBER};
pub use system::{
    lambda_symbols, multiplier_ansatz, solve_multiplier, solve_system, symbol_set, symbols, Binding,
    MultiplierOutcome, Solution,
};
pub use report::{gid, Check, Claim, ConstraintRecord, DerivationReport, TheoremFlag};
pub use galilean::{derive_galilean, galilean_family};
pub use pipeline::{is_imaginary, Derivation, SolverError};
pub use lorentz::{derive_lorentz, LorentzDerivation};
pub use higher_order::{derive_higher_order, schrodinger_operator, schrodinger_square, square_on_free_waves, Potential, SquareComparison};
pub use rotational::derive_rotation;
