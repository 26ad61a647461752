//! Truncated two-mode Fock space and a half-line grid for the deformed mode.

mod basis;
mod grid;
mod identity;
mod ladder;
mod sparse;

pub use basis::{build_basis, build_basis_with_cap, FockBasis, DEFAULT_DIMENSION_CAP};
pub use grid::{
    commutator_convergence, grid_mode2, ground_state_vector, matched_potential, surd_value, tridiagonal_eigenvalues,
    BandedOperator, GridMode2, GridResidual, GridSpec, COMMUTATOR_BASE_POINTS, DEFAULT_GRID_POINTS, MIN_GRID_POINTS,
};
pub use identity::{check_identity, interior_mask, IdentityReport, InteriorMask};
pub use ladder::{energy_operator, ladder_triple, operator_polynomial, state_labels, LadderTriple};
pub use sparse::{mode_operator, ModeKind, SparseOperator};
