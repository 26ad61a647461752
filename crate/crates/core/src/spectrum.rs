//! Bound-state method: energy families from pairs of structure-function
//! factors, and assembly of families into physical levels.
//!
//! A finite ladder `m̲, m̲+1, …, m̲+n` exists at energy `E` when
//! `φ(m̲, E) = 0` (nothing below) and `φ(m̲+n+1, E) = 0` (nothing above).
//! With `φ` a product of affine factors, choosing one factor for each end
//! gives two linear equations whose solution `E(n)` is affine in `n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{FactorRole, FactoredPoly, LinearFactor, Sector};
use crate::scalar::{int, rat, AlgScalar, Rational};
use crate::system::{SystemKind, SystemSpec};

/// Interior ladder lengths screened for positivity of `φ`.
pub const POSITIVITY_SAMPLES: u32 = 8;

/// Quantum numbers of a family: mode-1 occupation on the lowest state,
/// mode-2 quantum on the highest state, and the mode-2 sector if deformed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FamilyLabel {
    pub i: u32,
    pub j: u32,
    pub sector: Option<Sector>,
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}", self.i, self.j)?;
        if let Some(s) = self.sector {
            write!(f, ",{s}")?;
        }
        write!(f, ")")
    }
}

/// The arithmetic progression `E(n) = base + step·n`; its ladder at `n`
/// holds `n + 1` states starting from `J₀ = m̲(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyFamily {
    pub base: AlgScalar,
    pub step: Rational,
    /// `m̲(0)` and `dm̲/dn` of the lowest ladder state.
    pub lowest_m: (AlgScalar, Rational),
    pub lower_factor_id: usize,
    pub upper_factor_id: usize,
    pub label: Option<FamilyLabel>,
}

impl EnergyFamily {
    pub fn energy(&self, n: u64) -> AlgScalar {
        self.base.add_rational(&(&self.step * int(n as i64)))
    }

    pub fn lowest_m_at(&self, n: u64) -> AlgScalar {
        self.lowest_m.0.add_rational(&(&self.lowest_m.1 * int(n as i64)))
    }

    pub fn degeneracy(&self, n: u64) -> u64 {
        n + 1
    }

    fn sort_key(&self) -> (AlgScalar, Rational, AlgScalar, Rational) {
        (
            self.base.clone(),
            self.step.clone(),
            self.lowest_m.0.clone(),
            self.lowest_m.1.clone(),
        )
    }
}

/// Energy of a level: exact where available, otherwise a float.
#[derive(Debug, Clone, PartialEq)]
pub enum LevelEnergy {
    Exact(AlgScalar),
    Approx(f64),
}

impl LevelEnergy {
    pub fn to_f64(&self) -> f64 {
        match self {
            LevelEnergy::Exact(x) => x.to_f64(),
            LevelEnergy::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&AlgScalar> {
        match self {
            LevelEnergy::Exact(x) => Some(x),
            LevelEnergy::Approx(_) => None,
        }
    }
}

impl fmt::Display for LevelEnergy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelEnergy::Exact(x) => write!(f, "{x}"),
            LevelEnergy::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// One physical energy with its total multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumLevel {
    pub energy: LevelEnergy,
    pub total_degeneracy: u64,
    /// `(family index, n)`; empty for levels from direct enumeration.
    pub contributors: Vec<(usize, u64)>,
}

fn solve_pair(a: &LinearFactor, b: &LinearFactor) -> Option<(AlgScalar, Rational, AlgScalar, Rational)> {
    // a(m̲, E) = 0 and b(m̲ + n + 1, E) = 0
    let det = &a.cm * &b.ce - &a.ce * &b.cm;
    if det.is_zero() {
        return None;
    }
    let step = -(&a.cm * &b.cm) / &det;
    let base = (b.c0.scale(&-&a.cm) + a.c0.scale(&b.cm)).add_rational(&-(&a.cm * &b.cm));
    let base = base.scale(&(int(1) / &det));
    let m_slope = &a.ce * &b.cm / &det;
    let m0 = (a.c0.scale(&-&b.ce) + b.c0.scale(&a.ce)).add_rational(&(&a.ce * &b.cm));
    let m0 = m0.scale(&(int(1) / &det));
    Some((base, step, m0, m_slope))
}

fn label_for(lower: &LinearFactor, upper: &LinearFactor) -> Option<FamilyLabel> {
    match (lower.role, upper.role) {
        (FactorRole::Mode1 { occupation }, FactorRole::Mode2 { quantum, sector }) => Some(FamilyLabel {
            i: occupation,
            j: quantum,
            sector,
        }),
        _ => None,
    }
}

fn interior_positive(phi: &FactoredPoly, family: &EnergyFamily) -> Result<bool> {
    for n in 0..=POSITIVITY_SAMPLES as u64 {
        let e = family.energy(n);
        let low = family.lowest_m_at(n);
        for t in 1..=n {
            let m = low.add_rational(&int(t as i64));
            if !phi.eval(&m, &e)?.is_positive() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the factor-pair scan, including the pairs that were skipped.
#[derive(Debug, Clone)]
pub struct FamilySolution {
    pub families: Vec<EnergyFamily>,
    /// Pairs whose linear system was singular.
    pub degenerate_pairs: Vec<(usize, usize)>,
    /// Pairs rejected for a non-positive slope.
    pub descending_pairs: Vec<(usize, usize)>,
    /// Pairs rejected because `φ` vanished or went negative inside the ladder.
    pub broken_pairs: Vec<(usize, usize)>,
}

/// Full scan over ordered factor pairs; see [`solve_families`].
pub fn scan_factor_pairs(phi: &FactoredPoly) -> Result<FamilySolution> {
    let mut families: Vec<EnergyFamily> = Vec::new();
    let mut degenerate_pairs = Vec::new();
    let mut descending_pairs = Vec::new();
    let mut broken_pairs = Vec::new();
    for (ia, a) in phi.factors.iter().enumerate() {
        for (ib, b) in phi.factors.iter().enumerate() {
            let Some((base, step, m0, m_slope)) = solve_pair(a, b) else {
                degenerate_pairs.push((ia, ib));
                continue;
            };
            if !step.is_positive() {
                descending_pairs.push((ia, ib));
                continue;
            }
            let family = EnergyFamily {
                base,
                step,
                lowest_m: (m0, m_slope),
                lower_factor_id: ia,
                upper_factor_id: ib,
                label: label_for(a, b),
            };
            if !interior_positive(phi, &family)? {
                broken_pairs.push((ia, ib));
                continue;
            }
            let key = family.sort_key();
            if families.iter().all(|f| f.sort_key() != key) {
                families.push(family);
            }
        }
    }
    if families.is_empty() {
        return Err(Error::NoFamilies);
    }
    families.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()).then(x.label.cmp(&y.label)));
    Ok(FamilySolution {
        families,
        degenerate_pairs,
        descending_pairs,
        broken_pairs,
    })
}

/// Energy families of `phi`, deduplicated and sorted by `(base, step, m̲)`.
///
/// A pair is kept when its energy grows with `n` and `φ` stays positive on
/// every interior ladder point for `n ≤ POSITIVITY_SAMPLES`.
pub fn solve_families(phi: &FactoredPoly, sys: &SystemSpec) -> Result<Vec<EnergyFamily>> {
    if phi.lead.field() != sys.field() {
        return Err(Error::ContextMismatch);
    }
    Ok(scan_factor_pairs(phi)?.families)
}

/// The closed-form anisotropic families
/// `E_{i,j}(n) = l₁(i−½) + l₂(j−½) + l₁l₂n`, `i ∈ 1..=l₂`, `j ∈ 1..=l₁`.
pub fn closed_form_families(sys: &SystemSpec) -> Result<Vec<EnergyFamily>> {
    if sys.kind() != SystemKind::Anisotropic {
        return Err(Error::UnsupportedSystem("closed-form families exist only for anisotropic systems"));
    }
    let field = sys.field();
    let l1 = sys.l1() as i64;
    let l2 = sys.l2() as i64;
    let mut out = Vec::new();
    for i in 1..=l2 {
        for j in 1..=l1 {
            let base = int(l1) * (int(i) - rat(1, 2)) + int(l2) * (int(j) - rat(1, 2));
            // lowest state: N₁ = i−1, N₂ = (j−1) + n·l₁
            let m0 = (int(i - 1) / int(l2) - int(j - 1) / int(l1)) / int(2);
            out.push(EnergyFamily {
                base: AlgScalar::rational(base, field),
                step: int(l1 * l2),
                lowest_m: (AlgScalar::rational(m0, field), rat(-1, 2)),
                lower_factor_id: (i - 1) as usize,
                upper_factor_id: (l2 + l1 - j) as usize,
                label: Some(FamilyLabel {
                    i: (i - 1) as u32,
                    j: (j - 1) as u32,
                    sector: None,
                }),
            });
        }
    }
    out.sort_by_key(|f| f.sort_key());
    Ok(out)
}

/// Enumerates `(family, n)` with `E ≤ e_max`, merges equal energies and sums
/// the ladder dimensions.
pub fn assemble_levels(families: &[EnergyFamily], e_max: &Rational) -> Vec<SpectrumLevel> {
    let mut levels: BTreeMap<AlgScalar, (u64, Vec<(usize, u64)>)> = BTreeMap::new();
    for (idx, fam) in families.iter().enumerate() {
        let mut n = 0u64;
        loop {
            let e = fam.energy(n);
            let over = e
                .checked_sub(&AlgScalar::rational(e_max.clone(), e.field()))
                .map(|d| d.signum() == Ordering::Greater)
                .unwrap_or(true);
            if over {
                break;
            }
            let entry = levels.entry(e).or_default();
            entry.0 += fam.degeneracy(n);
            entry.1.push((idx, n));
            n += 1;
        }
    }
    levels
        .into_iter()
        .map(|(e, (deg, contributors))| SpectrumLevel {
            energy: LevelEnergy::Exact(e),
            total_degeneracy: deg,
            contributors,
        })
        .collect()
}

/// Sorted `(base, step)` pairs, used to compare family sets.
pub fn base_step_pairs(families: &[EnergyFamily]) -> Vec<(AlgScalar, Rational)> {
    let mut v: Vec<_> = families.iter().map(|f| (f.base.clone(), f.step.clone())).collect();
    v.sort();
    v
}
