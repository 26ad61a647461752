//! Closed forms quoted in the literature for specific frequency ratios,
//! transcribed verbatim (with ħ = 1 and ω₀ = 1) so they can be compared
//! against the derived objects rather than trusted.

use crate::poly::{BivarPoly, EnergyPoly};
use crate::scalar::{int, rat, AlgScalar, Rational};
use crate::system::{SystemKind, SystemSpec};

fn poly_in_e(sys: &SystemSpec, coeffs: &[Rational]) -> EnergyPoly {
    EnergyPoly::from_rationals(sys.field(), coeffs)
}

fn assemble(sys: &SystemSpec, by_power: &[EnergyPoly]) -> BivarPoly {
    by_power
        .iter()
        .enumerate()
        .fold(BivarPoly::zero(sys.field()), |acc, (i, c)| {
            acc.checked_add(&c.times_m_power(i as u32)).expect("same field")
        })
}

/// Quoted `[J₊, J₋]` as a polynomial in `m = J₀` and `E = H`, for the
/// isotropic quartic ladder (2,2) and the 3:1 oscillator.
pub fn quoted_commutator(sys: &SystemSpec) -> Option<BivarPoly> {
    if sys.kind() != SystemKind::Anisotropic {
        return None;
    }
    match (sys.l1(), sys.l2()) {
        (2, 2) => {
            // 4((H/ω)² − 3)J₀ − 64J₀³ with ω = 2
            let w = int(2);
            let c1 = poly_in_e(sys, &[int(-12), int(0), int(4) / (&w * &w)]);
            let c3 = poly_in_e(sys, &[int(-64)]);
            Some(assemble(sys, &[EnergyPoly::zero(sys.field()), c1, EnergyPoly::zero(sys.field()), c3]))
        }
        (3, 1) => {
            let (w1, w2) = (int(3), int(1));
            let p = |x: &Rational, k: i32| -> Rational { num_traits::pow(x.clone(), k as usize) };
            let d0 = int(64) * &w1 * p(&w2, 3);
            let c0 = [
                (p(&w1, 4) + int(6) * p(&w1, 3) * &w2 + int(68) * p(&w1, 2) * p(&w2, 2)
                    - int(6) * &w1 * p(&w2, 3)
                    - int(69) * p(&w2, 4))
                    / &d0,
                -int(2) * (int(3) * p(&w1, 3) + int(3) * p(&w1, 2) * &w2 + int(77) * &w1 * p(&w2, 2) - int(51) * p(&w2, 3))
                    / &d0,
                int(12) * (p(&w1, 2) - int(4) * &w1 * &w2 + int(3) * p(&w2, 2)) / &d0,
                -int(8) * (&w1 - int(9) * &w2) / &d0,
            ];
            let d1 = int(8) * &w1 * p(&w2, 2);
            let c1 = [
                int(3) * (int(3) * p(&w1, 3) + int(3) * p(&w1, 2) * &w2 + int(41) * &w1 * p(&w2, 2) + int(9) * p(&w2, 3))
                    / &d1,
                int(3) * (-int(12) * &w1 * (&w1 - &w2)) / &d1,
                int(3) * (int(12) * (&w1 - int(3) * &w2)) / &d1,
            ];
            let d2 = int(4) * &w1 * &w2;
            let c2 = [
                int(81) * (p(&w1, 2) - p(&w2, 2)) / &d2,
                int(81) * (int(2) * &w2 - int(2) * &w1) / &d2,
            ];
            Some(assemble(
                sys,
                &[poly_in_e(sys, &c0), poly_in_e(sys, &c1), poly_in_e(sys, &c2), poly_in_e(sys, &[int(108)])],
            ))
        }
        _ => None,
    }
}

/// Quoted Casimir `C(H)` for (2,2) and 3:1.
pub fn quoted_casimir(sys: &SystemSpec) -> Option<EnergyPoly> {
    if sys.kind() != SystemKind::Anisotropic {
        return None;
    }
    match (sys.l1(), sys.l2()) {
        (2, 2) => {
            // (H/ω)⁴/8 − 5(H/ω)²/4 + 9/8 with ω = 2
            Some(poly_in_e(sys, &[rat(9, 8), int(0), rat(-5, 16), int(0), rat(1, 128)]))
        }
        (3, 1) => {
            let (w1, w2): (Rational, Rational) = (int(3), int(1));
            let p = |x: &Rational, k: usize| -> Rational { num_traits::pow(x.clone(), k) };
            let d = -(int(128) * &w1 * p(&w2, 3));
            let c = [
                (p(&w1, 4) + int(32) * p(&w1, 3) * &w2 + int(26) * p(&w1, 2) * p(&w2, 2)
                    + int(88) * &w1 * p(&w2, 3)
                    + int(93) * p(&w2, 4))
                    / &d,
                -int(4) * (p(&w1, 3) + int(33) * p(&w1, 2) * &w2 - int(33) * &w1 * p(&w2, 2) - p(&w2, 3)) / &d,
                int(16) * (int(9) * &w1 - int(23) * &w2) * &w2 / &d,
                int(16) * (&w1 - &w2) / &d,
                int(-16) / &d,
            ];
            Some(poly_in_e(sys, &c))
        }
        _ => None,
    }
}

/// Quoted 3:1 family bases, `E = (2k+1)ω₁/2 + ω₂/2 + ω₁ω₂n` for `k = 0, 1, 2`.
pub fn quoted_three_one_bases(sys: &SystemSpec) -> Option<Vec<(Rational, Rational)>> {
    if sys.kind() != SystemKind::Anisotropic || (sys.l1(), sys.l2()) != (3, 1) {
        return None;
    }
    let (w1, w2) = (int(3), int(1));
    Some(
        [rat(1, 2), rat(3, 2), rat(5, 2)]
            .into_iter()
            .map(|c| (c * &w1 + &w2 / int(2), &w1 * &w2))
            .collect(),
    )
}

/// One quoted deformed family `E_{(k)i,j;n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotedFamily {
    pub index: u8,
    pub i: u32,
    pub j: u32,
    pub base: AlgScalar,
    pub step: Rational,
}

/// Quoted deformed families
/// `2l₁l₂n − l₁(2i − c) − l₂(2j − 1) ± (l₂/2)s`, `c ∈ {½, 3/2}`.
pub fn quoted_sw_bases(sys: &SystemSpec) -> Option<Vec<QuotedFamily>> {
    if sys.kind() != SystemKind::SWDeformed {
        return None;
    }
    let l1 = int(sys.l1() as i64);
    let l2 = int(sys.l2() as i64);
    let step = int(2) * &l1 * &l2;
    let mut out = Vec::new();
    let variants = [(rat(1, 2), -1), (rat(1, 2), 1), (rat(3, 2), -1), (rat(3, 2), 1)];
    for (index, (c, sign)) in variants.iter().enumerate() {
        for i in 0..sys.l2() {
            for j in 0..sys.l1() {
                let a = -(&l1 * (int(2 * i as i64) - c)) - &l2 * int(2 * j as i64 - 1);
                let b = int(*sign) * &l2 / int(2);
                out.push(QuotedFamily {
                    index: index as u8 + 1,
                    i,
                    j,
                    base: AlgScalar::new(a, b, sys.field()),
                    step: step.clone(),
                });
            }
        }
    }
    Some(out)
}
