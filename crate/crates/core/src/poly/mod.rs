//! Exact polynomial algebra in `(m, E)`: `m` is the `J₀` eigenvalue and `E`
//! the energy, both in ω₀ units.

mod bivar;
mod factored;
mod structure;

pub use bivar::{BivarPoly, EnergyPoly};
pub use factored::{eval_poly, Evaluate, FactorRole, FactoredPoly, LinearFactor, Sector};
pub use structure::{
    casimir_split, commutator_polynomial, mode_coordinates, structure_function, CasimirSplit,
    ModeCoordinates,
};
