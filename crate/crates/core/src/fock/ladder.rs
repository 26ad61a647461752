use crate::error::{Error, Result};
use crate::fock::{mode_operator, FockBasis, ModeKind, SparseOperator};
use crate::poly::{BivarPoly, EnergyPoly};
use crate::scalar::{int, rat, Rational};
use crate::system::{SystemKind, SystemSpec};

/// Ladder generators and Hamiltonian on a truncated basis.
#[derive(Debug, Clone)]
pub struct LadderTriple {
    pub j0: SparseOperator,
    pub jplus: SparseOperator,
    pub jminus: SparseOperator,
    pub h: SparseOperator,
}

/// Exact `(m, E)` of `|n₁, n₂⟩`: `m = (n₁/l₂ − n₂/l₁)/2`,
/// `E = l₁(n₁+½) + l₂(n₂+½)`.
pub fn state_labels(sys: &SystemSpec, n1: usize, n2: usize) -> (Rational, Rational) {
    let (l1, l2) = (sys.l1() as i64, sys.l2() as i64);
    let (n1, n2) = (n1 as i64, n2 as i64);
    let m = (rat(n1, l2) - rat(n2, l1)) / int(2);
    let e = int(l1) * (int(n1) + rat(1, 2)) + int(l2) * (int(n2) + rat(1, 2));
    (m, e)
}

/// `J₊ = (a₁†)^{l₂}(a₂)^{l₁}`, `J₋ = J₊†`, `J₀ = (N₁/l₂ − N₂/l₁)/2`, and
/// `H = l₁(N₁+½) + l₂(N₂+½)`.
pub fn ladder_triple(sys: &SystemSpec, basis: &FockBasis) -> Result<LadderTriple> {
    if sys.kind() != SystemKind::Anisotropic {
        return Err(Error::UnsupportedSystem(
            "the deformed triple lives on a Fock x grid space; use the mode-2 grid operators",
        ));
    }
    let raise1 = mode_operator(basis, 1, ModeKind::Raise);
    let lower2 = mode_operator(basis, 2, ModeKind::Lower);
    let jplus = raise1.pow(sys.l2()).mul(&lower2.pow(sys.l1()))?;
    let jminus = jplus.adjoint();
    let (l1, l2) = (sys.l1() as f64, sys.l2() as f64);
    let n1 = mode_operator(basis, 1, ModeKind::Number);
    let n2 = mode_operator(basis, 2, ModeKind::Number);
    let j0 = n1.scale(0.5 / l2).sub(&n2.scale(0.5 / l1))?;
    let zero_point = SparseOperator::identity(basis.dimension()).scale(0.5 * (l1 + l2));
    let h = n1.scale(l1).add(&n2.scale(l2))?.add(&zero_point)?;
    Ok(LadderTriple {
        j0,
        jplus,
        jminus,
        h,
    })
}

fn diagonal_powers(op: &SparseOperator, top: u32) -> Vec<SparseOperator> {
    let mut out = vec![SparseOperator::identity(op.dim())];
    for k in 1..=top {
        let next = out[k as usize - 1].mul(op).expect("same dimension");
        out.push(next);
    }
    out
}

/// `Σ c_{ij} J₀ⁱ Hʲ` as an operator, for commuting `J₀` and `H`.
pub fn operator_polynomial(p: &BivarPoly, j0: &SparseOperator, h: &SparseOperator) -> Result<SparseOperator> {
    if j0.dim() != h.dim() {
        return Err(Error::DimensionMismatch(j0.dim(), h.dim()));
    }
    let j0_pows = diagonal_powers(j0, p.deg_m().unwrap_or(0));
    let h_pows = diagonal_powers(h, p.deg_e().unwrap_or(0));
    let mut acc = SparseOperator::zero(j0.dim());
    for (&(i, j), c) in p.terms() {
        let term = j0_pows[i as usize].mul(&h_pows[j as usize])?.scale(c.to_f64());
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `f(H)` for a polynomial in the energy.
pub fn energy_operator(p: &EnergyPoly, h: &SparseOperator) -> Result<SparseOperator> {
    operator_polynomial(&p.times_m_power(0), h, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{build_basis, check_identity, interior_mask};
    use crate::poly::{commutator_polynomial, structure_function};

    #[test]
    fn su2_triple_is_schwinger() {
        let sys = SystemSpec::anisotropic(1, 1).unwrap();
        let b = build_basis(6, 6).unwrap();
        let t = ladder_triple(&sys, &b).unwrap();
        let s_plus = mode_operator(&b, 1, ModeKind::Raise).mul(&mode_operator(&b, 2, ModeKind::Lower)).unwrap();
        assert_eq!(t.jplus, s_plus);
    }

    #[test]
    fn monomial_shifts() {
        let sys = SystemSpec::anisotropic(3, 1).unwrap();
        let b = build_basis(8, 8).unwrap();
        let t = ladder_triple(&sys, &b).unwrap();
        assert_eq!(t.jplus.shift(), Some((1, -3)));
        assert_eq!(t.jminus.shift(), Some((-1, 3)));
        assert!(t.jplus.respects_shift(&b));
    }

    #[test]
    fn quartic_j0_eigenvalues() {
        let sys = SystemSpec::anisotropic(2, 2).unwrap();
        let b = build_basis(5, 5).unwrap();
        let t = ladder_triple(&sys, &b).unwrap();
        let d = t.j0.diagonal().unwrap();
        for (i, (n1, n2)) in b.states().enumerate() {
            assert!((d[i] - (n1 as f64 - n2 as f64) / 4.0).abs() < 1e-15);
        }
    }

    #[test]
    fn raising_commutes_with_h() {
        let sys = SystemSpec::anisotropic(3, 2).unwrap();
        let b = build_basis(20, 20).unwrap();
        let t = ladder_triple(&sys, &b).unwrap();
        let mask = interior_mask(&b, 2 * sys.l2() as usize, 2 * sys.l1() as usize).unwrap();
        let zero = SparseOperator::zero(b.dimension());
        for j in [&t.jplus, &t.jminus] {
            let r = check_identity(&t.h.commutator(j).unwrap(), &zero, &mask, 1e-10).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn injected_fault_is_detected() {
        let sys = SystemSpec::anisotropic(2, 2).unwrap();
        let b = build_basis(20, 20).unwrap();
        let t = ladder_triple(&sys, &b).unwrap();
        let mask = interior_mask(&b, 4, 4).unwrap();
        let p = commutator_polynomial(&structure_function(&sys));
        let rhs = operator_polynomial(&p, &t.j0, &t.h).unwrap();
        let lhs = t.jplus.commutator(&t.jminus).unwrap();
        assert!(check_identity(&lhs, &rhs, &mask, 1e-9).unwrap().pass);
        let bumped = rhs.add(&SparseOperator::identity(b.dimension()).scale(1e-3)).unwrap();
        let r = check_identity(&lhs, &bumped, &mask, 1e-9).unwrap();
        assert!(!r.pass);
        assert!((r.max_residual - 1e-3).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn deformed_triple_is_unsupported() {
        let sys = SystemSpec::sw(1, 1, rat(1, 3)).unwrap();
        let b = build_basis(3, 3).unwrap();
        assert!(matches!(ladder_triple(&sys, &b), Err(Error::UnsupportedSystem(_))));
    }
}
