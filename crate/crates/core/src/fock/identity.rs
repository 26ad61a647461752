use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{FockBasis, SparseOperator};

/// States whose images under the tested operators stay inside the
/// truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorMask {
    states: Vec<usize>,
}

impl InteriorMask {
    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Keeps `n₁ ≤ n1_max − margin1` and `n₂ ≤ n2_max − margin2`.
pub fn interior_mask(basis: &FockBasis, margin1: usize, margin2: usize) -> Result<InteriorMask> {
    if margin1 > basis.n1_max() || margin2 > basis.n2_max() {
        return Err(Error::EmptyMask);
    }
    let states = basis
        .states()
        .enumerate()
        .filter(|(_, (n1, n2))| *n1 + margin1 <= basis.n1_max() && *n2 + margin2 <= basis.n2_max())
        .map(|(i, _)| i)
        .collect();
    Ok(InteriorMask { states })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    /// Largest column residual `‖(L−R)eᶜ‖ / max(1, ‖R eᶜ‖)`.
    pub max_residual: f64,
    /// Largest unscaled column residual `‖(L−R)eᶜ‖`.
    pub max_abs_residual: f64,
    /// Basis index of the column attaining `max_residual`.
    pub worst_state: usize,
    pub pass: bool,
}

fn column_norm(col: &[(usize, f64)]) -> f64 {
    col.iter().map(|(_, v)| v * v).sum::<f64>().sqrt()
}

/// Compares two operators column by column over the mask.
///
/// Each column residual is divided by `max(1, ‖R eᶜ‖)`: entries of `J₊J₋`
/// reach ~10⁸ on a 40×40 basis, where one binary64 ulp already exceeds
/// 10⁻⁹. Columns with unit-scale images are compared absolutely.
pub fn check_identity(
    lhs: &SparseOperator,
    rhs: &SparseOperator,
    mask: &InteriorMask,
    tol: f64,
) -> Result<IdentityReport> {
    if lhs.dim() != rhs.dim() {
        return Err(Error::DimensionMismatch(lhs.dim(), rhs.dim()));
    }
    let diff = lhs.sub(rhs)?;
    let mut report = IdentityReport {
        max_residual: 0.0,
        max_abs_residual: 0.0,
        worst_state: mask.states.first().copied().unwrap_or(0),
        pass: true,
    };
    for &c in &mask.states {
        let abs = column_norm(diff.column(c));
        let scaled = abs / column_norm(rhs.column(c)).max(1.0);
        report.max_abs_residual = report.max_abs_residual.max(abs);
        if scaled > report.max_residual {
            report.max_residual = scaled;
            report.worst_state = c;
        }
    }
    report.pass = report.max_residual < tol;
    Ok(report)
}
