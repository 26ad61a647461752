//! Structure function, commutator polynomial and Casimir split.

use num_traits::One;

use crate::poly::{BivarPoly, EnergyPoly, FactorRole, FactoredPoly, LinearFactor, Sector};
use crate::scalar::{int, rat, AlgScalar, Rational};
use crate::system::{SystemKind, SystemSpec};

/// Mode coordinates as affine functions of `(m, E)`.
///
/// Anisotropic systems use the occupations `N₁, N₂`; the deformed system uses
/// the su(1,1) weights `x₁ = H₁/(2ω₁)`, `x₂ = H₂/(2ω₂)`.
#[derive(Debug, Clone)]
pub struct ModeCoordinates {
    /// (coefficient of m, coefficient of E, constant) for mode 1.
    pub mode1: (Rational, Rational, Rational),
    pub mode2: (Rational, Rational, Rational),
}

pub fn mode_coordinates(sys: &SystemSpec) -> ModeCoordinates {
    let l1 = int(sys.l1() as i64);
    let l2 = int(sys.l2() as i64);
    let total = &l1 + &l2;
    match sys.kind() {
        SystemKind::Anisotropic => {
            // m = (N₁/l₂ − N₂/l₁)/2 and E = l₁(N₁+½) + l₂(N₂+½)
            let four = int(4);
            ModeCoordinates {
                mode1: (
                    l2.clone(),
                    Rational::one() / (int(2) * &l1),
                    -(&total / (&four * &l1)),
                ),
                mode2: (
                    -l1.clone(),
                    Rational::one() / (int(2) * &l2),
                    -(&total / (&four * &l2)),
                ),
            }
        }
        SystemKind::SWDeformed => {
            // m = (x₁ − x₂)/(l₁+l₂) and E = 2l₁x₁ + 2l₂x₂
            let ce = Rational::one() / (int(2) * &total);
            ModeCoordinates {
                mode1: (l2, ce.clone(), int(0)),
                mode2: (-l1, ce, int(0)),
            }
        }
    }
}

fn factor(
    coords: &(Rational, Rational, Rational),
    offset: AlgScalar,
    role: FactorRole,
) -> LinearFactor {
    let c0 = offset.add_rational(&coords.2);
    LinearFactor::new(coords.0.clone(), coords.1.clone(), c0, role).expect("nonzero m coefficient")
}

/// φ(m, E) such that `J₊J₋ = φ(J₀, H)` and `J₋J₊ = φ(J₀+1, H)`.
///
/// Anisotropic: `J₊J₋ = ∏_{i<l₂}(N₁−i) · ∏_{j=1}^{l₁}(N₂+j)`.
///
/// Deformed: with `J₊ = (A₁†)^{l₂}A₂^{l₁}` and `K₀ = H/(2ω)` on each mode,
/// `A†A = 4(K₀−k)(K₀−1+k)` where `k` is the lowest weight. Mode 1 has
/// `k ∈ {1/4, 3/4}`; mode 2 has `k = ½ ± s/4`, and both sectors give the same
/// quadratic. Shifting through the powers yields
/// `4^{l₁+l₂} ∏_{i<l₂}(x₁−i−¼)(x₁−i−¾) · ∏_{j<l₁}(x₂+j+½−s/4)(x₂+j+½+s/4)`.
pub fn structure_function(sys: &SystemSpec) -> FactoredPoly {
    let field = sys.field();
    let coords = mode_coordinates(sys);
    let l1 = sys.l1();
    let l2 = sys.l2();
    let q = |x: Rational| AlgScalar::rational(x, field);
    let mut factors = Vec::new();
    match sys.kind() {
        SystemKind::Anisotropic => {
            for i in 0..l2 {
                factors.push(factor(
                    &coords.mode1,
                    q(-int(i as i64)),
                    FactorRole::Mode1 { occupation: i },
                ));
            }
            for j in 1..=l1 {
                factors.push(factor(
                    &coords.mode2,
                    q(int(j as i64)),
                    FactorRole::Mode2 {
                        quantum: l1 - j,
                        sector: None,
                    },
                ));
            }
            FactoredPoly {
                lead: AlgScalar::one(field),
                factors,
            }
        }
        SystemKind::SWDeformed => {
            for i in 0..l2 {
                let base = -int(i as i64);
                factors.push(factor(
                    &coords.mode1,
                    q(&base - rat(1, 4)),
                    FactorRole::Mode1 { occupation: 2 * i },
                ));
                factors.push(factor(
                    &coords.mode1,
                    q(&base - rat(3, 4)),
                    FactorRole::Mode1 {
                        occupation: 2 * i + 1,
                    },
                ));
            }
            let quarter_s = sys.surd().scale(&rat(1, 4));
            for j in 0..l1 {
                let base = q(int(j as i64) + rat(1, 2));
                let quantum = l1 - 1 - j;
                factors.push(factor(
                    &coords.mode2,
                    &base - &quarter_s,
                    FactorRole::Mode2 {
                        quantum,
                        sector: Some(Sector::Plus),
                    },
                ));
                factors.push(factor(
                    &coords.mode2,
                    &base + &quarter_s,
                    FactorRole::Mode2 {
                        quantum,
                        sector: Some(Sector::Minus),
                    },
                ));
            }
            let lead = q(int(4)).pow(l1 + l2);
            FactoredPoly { lead, factors }
        }
    }
}

/// `P(m; E) = φ(m, E) − φ(m+1, E)`, the eigenvalue of `[J₊, J₋]`.
pub fn commutator_polynomial(phi: &FactoredPoly) -> BivarPoly {
    let expanded = phi.expand();
    let shifted = expanded.shift_m(&Rational::one());
    expanded.checked_sub(&shifted).expect("same field")
}

/// Decomposition `φ(m) + φ(m+1) = C(E) − Σ_{i≥1} αᵢ(E) mⁱ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasimirSplit {
    /// `alphas[i]` multiplies `J₀ⁱ`; `alphas[0]` is zero by convention.
    pub alphas: Vec<EnergyPoly>,
    pub casimir: EnergyPoly,
}

impl CasimirSplit {
    /// `Σ αᵢ(E) mⁱ` as a bivariate polynomial.
    pub fn alpha_poly(&self) -> BivarPoly {
        let field = self.casimir.field().clone();
        self.alphas
            .iter()
            .enumerate()
            .fold(BivarPoly::zero(&field), |acc, (i, a)| {
                acc.checked_add(&a.times_m_power(i as u32)).expect("same field")
            })
    }
}

pub fn casimir_split(phi: &FactoredPoly) -> CasimirSplit {
    let expanded = phi.expand();
    let anti = expanded
        .checked_add(&expanded.shift_m(&Rational::one()))
        .expect("same field");
    let field = anti.field().clone();
    let top = anti.deg_m().unwrap_or(0);
    let mut alphas = vec![EnergyPoly::zero(&field)];
    for i in 1..=top {
        alphas.push(anti.coeff_of_m(i).neg());
    }
    CasimirSplit {
        alphas,
        casimir: anti.coeff_of_m(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::SurdField;

    fn alg(sys: &SystemSpec, x: Rational) -> AlgScalar {
        AlgScalar::rational(x, sys.field())
    }

    /// Independent oracle: normal-ordered occupation product with
    /// N₁, N₂ solved by hand from (m, E).
    fn phi_oracle(l1: i64, l2: i64, m: &Rational, e: &Rational) -> Rational {
        let w = (e - rat(l1 + l2, 2)) / int(l1 * l2);
        let n1 = int(l2) * (&w / int(2) + m);
        let n2 = int(l1) * (&w / int(2) - m);
        let mut p = int(1);
        for i in 0..l2 {
            p *= &n1 - int(i);
        }
        for j in 1..=l1 {
            p *= &n2 + int(j);
        }
        p
    }

    fn lin(sys: &SystemSpec, cm: Rational, ce: Rational, c0: Rational) -> BivarPoly {
        BivarPoly::linear(&cm, &ce, &alg(sys, c0))
    }

    #[test]
    fn su2_structure_function() {
        let sys = SystemSpec::anisotropic(1, 1).unwrap();
        let phi = structure_function(&sys);
        assert_eq!(phi.degree(), 2);
        let expected = lin(&sys, int(1), rat(1, 2), rat(-1, 2))
            .checked_mul(&lin(&sys, int(-1), rat(1, 2), rat(1, 2)))
            .unwrap();
        assert_eq!(phi.expand(), expected);
    }

    #[test]
    fn quartic_structure_function() {
        let sys = SystemSpec::anisotropic(2, 2).unwrap();
        let expected = [
            lin(&sys, int(2), rat(1, 4), rat(-1, 2)),
            lin(&sys, int(2), rat(1, 4), rat(-3, 2)),
            lin(&sys, int(-2), rat(1, 4), rat(1, 2)),
            lin(&sys, int(-2), rat(1, 4), rat(3, 2)),
        ]
        .into_iter()
        .reduce(|a, b| a.checked_mul(&b).unwrap())
        .unwrap();
        assert_eq!(structure_function(&sys).expand(), expected);
    }

    #[test]
    fn two_to_one_structure_function() {
        let sys = SystemSpec::anisotropic(2, 1).unwrap();
        let expected = [
            lin(&sys, int(1), rat(1, 4), rat(-3, 8)),
            lin(&sys, int(-2), rat(1, 2), rat(1, 4)),
            lin(&sys, int(-2), rat(1, 2), rat(5, 4)),
        ]
        .into_iter()
        .reduce(|a, b| a.checked_mul(&b).unwrap())
        .unwrap();
        assert_eq!(structure_function(&sys).expand(), expected);
    }

    #[test]
    fn structure_function_matches_occupation_oracle() {
        for (l1, l2) in [(1, 1), (2, 1), (3, 1), (3, 2), (2, 3), (4, 3)] {
            let sys = SystemSpec::anisotropic(l1, l2).unwrap();
            let phi = structure_function(&sys);
            assert_eq!(phi.degree(), (l1 + l2) as usize);
            for (n1, n2) in [(0, 0), (3, 5), (7, 2), (10, 10)] {
                let m = rat(n1 * l1 - n2 * l2, 2 * l1 * l2);
                let e = int(l1 * n1 + l2 * n2) + rat(l1 + l2, 2);
                let got = phi.eval(&alg(&sys, m.clone()), &alg(&sys, e.clone())).unwrap();
                assert_eq!(got, alg(&sys, phi_oracle(l1, l2, &m, &e)));
            }
        }
    }

    #[test]
    fn sw_at_zero_coupling_reduces_to_squared_ladders() {
        // κ = 0: A = a², so J₊J₋ = ∏(N₁−i)_{i<2l₂} ∏(N₂+j)_{j≤2l₁}.
        for (l1, l2) in [(1, 1), (1, 2), (2, 1)] {
            let sys = SystemSpec::sw(l1, l2, int(0)).unwrap();
            let phi = structure_function(&sys);
            assert_eq!(phi.degree(), 2 * (l1 + l2) as usize);
            for (n1, n2) in [(0, 0), (4, 3), (5, 8)] {
                let x1 = (int(n1) + rat(1, 2)) / int(2);
                let x2 = (int(n2) + rat(1, 2)) / int(2);
                let m = (&x1 - &x2) / int(l1 + l2);
                let e = int(2 * l1) * &x1 + int(2 * l2) * &x2;
                let mut expected = int(1);
                for i in 0..2 * l2 {
                    expected *= int(n1 - i);
                }
                for j in 1..=2 * l1 {
                    expected *= int(n2 + j);
                }
                let got = phi.eval(&alg(&sys, m), &alg(&sys, e)).unwrap();
                assert_eq!(got, alg(&sys, expected));
            }
        }
    }

    #[test]
    fn su2_commutator_is_2m() {
        let sys = SystemSpec::anisotropic(1, 1).unwrap();
        let p = commutator_polynomial(&structure_function(&sys));
        assert_eq!(p, lin(&sys, int(2), int(0), int(0)));
        assert_eq!(p.to_string(), "2*m");
    }

    #[test]
    fn higgs_commutator_in_omega_units() {
        let sys = SystemSpec::anisotropic(2, 2).unwrap();
        let p = commutator_polynomial(&structure_function(&sys)).rescale_e(&int(2));
        let f = sys.field();
        let expected = BivarPoly::from_terms(
            f,
            [
                ((1, 2), alg(&sys, int(4))),
                ((1, 0), alg(&sys, int(-12))),
                ((3, 0), alg(&sys, int(-64))),
            ],
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn commutator_degrees() {
        let sys = SystemSpec::anisotropic(3, 2).unwrap();
        assert_eq!(commutator_polynomial(&structure_function(&sys)).deg_m(), Some(4));
        let sw = SystemSpec::sw(1, 2, rat(1, 5)).unwrap();
        assert_eq!(commutator_polynomial(&structure_function(&sw)).deg_m(), Some(5));
    }

    #[test]
    fn su2_casimir() {
        let sys = SystemSpec::anisotropic(1, 1).unwrap();
        let split = casimir_split(&structure_function(&sys));
        assert_eq!(split.alphas.len(), 3);
        assert!(split.alphas[0].is_zero() && split.alphas[1].is_zero());
        assert_eq!(split.alphas[2], EnergyPoly::from_rationals(sys.field(), &[int(2)]));
        assert_eq!(
            split.casimir,
            EnergyPoly::from_rationals(sys.field(), &[rat(-1, 2), int(0), rat(1, 2)])
        );
    }

    #[test]
    fn higgs_casimir_in_omega_units() {
        let sys = SystemSpec::anisotropic(2, 2).unwrap();
        let split = casimir_split(&structure_function(&sys));
        let c = split.casimir.rescale_e(&int(2));
        let expected = EnergyPoly::from_rationals(
            sys.field(),
            &[rat(9, 8), int(0), rat(-5, 4), int(0), rat(1, 8)],
        );
        assert_eq!(c, expected);
    }

    #[test]
    fn casimir_split_reconstructs() {
        let systems = [
            SystemSpec::anisotropic(3, 1).unwrap(),
            SystemSpec::anisotropic(4, 3).unwrap(),
            SystemSpec::sw(2, 1, rat(-1, 5)).unwrap(),
        ];
        for sys in systems {
            let phi = structure_function(&sys);
            let split = casimir_split(&phi);
            let e = phi.expand();
            let lhs = e
                .checked_add(&e.shift_m(&int(1)))
                .unwrap()
                .checked_add(&split.alpha_poly())
                .unwrap();
            assert_eq!(lhs, split.casimir.times_m_power(0), "{sys}");
        }
    }

    #[test]
    fn sw_factor_roots_contain_surd() {
        let sys = SystemSpec::sw(1, 1, rat(1, 3)).unwrap();
        let phi = structure_function(&sys);
        assert_eq!(phi.lead, alg(&sys, int(16)));
        let irrational = phi.factors.iter().filter(|f| !f.c0.is_rational()).count();
        assert_eq!(irrational, 2);
        assert!(!SurdField::new(rat(7, 3)).unwrap().is_rational());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(20))]

            #[test]
            fn expansion_agrees_with_factor_product(
                l1 in 1i64..4, l2 in 1i64..4, sw in any::<bool>(),
                mn in -40i64..40, md in 1i64..7, en in -40i64..80, ed in 1i64..7,
            ) {
                let sys = if sw {
                    SystemSpec::sw(l1, l2, rat(1, 5)).unwrap()
                } else {
                    SystemSpec::anisotropic(l1, l2).unwrap()
                };
                let phi = structure_function(&sys);
                let m = alg(&sys, rat(mn, md));
                let e = alg(&sys, rat(en, ed));
                prop_assert_eq!(phi.expand().eval(&m, &e).unwrap(), phi.eval(&m, &e).unwrap());
            }

            #[test]
            fn commutator_telescopes(
                l1 in 1i64..4, l2 in 1i64..4, sw in any::<bool>(),
                low in -6i64..3, len in 0i64..6, en in 0i64..60,
            ) {
                let sys = if sw {
                    SystemSpec::sw(l1, l2, rat(1, 3)).unwrap()
                } else {
                    SystemSpec::anisotropic(l1, l2).unwrap()
                };
                let phi = structure_function(&sys);
                let p = commutator_polynomial(&phi);
                let e = alg(&sys, rat(en, 3));
                let mut sum = AlgScalar::zero(sys.field());
                for m in low..=low + len {
                    sum = &sum + &p.eval(&alg(&sys, int(m)), &e).unwrap();
                }
                let top = phi.eval(&alg(&sys, int(low + len + 1)), &e).unwrap();
                let bottom = phi.eval(&alg(&sys, int(low)), &e).unwrap();
                prop_assert_eq!(sum, &bottom - &top);
            }
        }
    }
}
