//! Brute-force spectra from occupation lattices, finite-difference levels of
//! the deformed mode, and spectrum diffing.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{grid_mode2, surd_value, GridSpec};
use crate::poly::Sector;
use crate::scalar::{int, rat, AlgScalar, Rational, SurdField};
use crate::spectrum::{LevelEnergy, SpectrumLevel};
use crate::system::{SystemKind, SystemSpec};

/// Largest number of FD eigenvalues served.
pub const MAX_FD_LEVELS: usize = 10;

/// `l₂(2k + 1 ± s/2)`, the mode-2 level in a sector of the deformed mode.
pub fn sector_energy(l2: u32, field: &Arc<SurdField>, k: u64, sector: Sector) -> AlgScalar {
    let w = int(l2 as i64);
    let half = match sector {
        Sector::Plus => &w / int(2),
        Sector::Minus => -&w / int(2),
    };
    AlgScalar::new(&w * int(2 * k as i64 + 1), half, field)
}

fn exceeds(e: &AlgScalar, e_max: &Rational) -> bool {
    e.checked_sub(&AlgScalar::rational(e_max.clone(), e.field()))
        .map(|d| d.signum() == Ordering::Greater)
        .unwrap_or(true)
}

/// Every level `E ≤ e_max` of the separable Hamiltonian with its exact
/// multiplicity, by walking the occupation lattice.
pub fn enumerate_spectrum(sys: &SystemSpec, e_max: &Rational) -> Vec<SpectrumLevel> {
    let field = sys.field();
    let l1 = int(sys.l1() as i64);
    let l2 = int(sys.l2() as i64);
    let mode2: Vec<AlgScalar> = match sys.kind() {
        SystemKind::Anisotropic => (0u64..)
            .map(|n2| AlgScalar::rational(&l2 * (int(n2 as i64) + rat(1, 2)), field))
            .take_while(|e| !exceeds(e, e_max))
            .collect(),
        SystemKind::SWDeformed => [Sector::Plus, Sector::Minus]
            .into_iter()
            .flat_map(|sector| {
                (0u64..)
                    .map(move |k| sector_energy(sys.l2(), field, k, sector))
                    .take_while(|e| !exceeds(e, e_max))
            })
            .collect(),
    };
    let mut levels: BTreeMap<AlgScalar, u64> = BTreeMap::new();
    for n1 in 0i64.. {
        let e1 = &l1 * (int(n1) + rat(1, 2));
        let mut any = false;
        for e2 in &mode2 {
            let e = e2.add_rational(&e1);
            if !exceeds(&e, e_max) {
                *levels.entry(e).or_default() += 1;
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    levels
        .into_iter()
        .map(|(e, deg)| SpectrumLevel {
            energy: LevelEnergy::Exact(e),
            total_degeneracy: deg,
            contributors: Vec::new(),
        })
        .collect()
}

/// Lowest `count` eigenvalues of the grid `H₂`, ascending.
pub fn fd_eigenvalues(l2: u32, kappa: &Rational, grid: &GridSpec, count: usize) -> Result<Vec<f64>> {
    if count > MAX_FD_LEVELS {
        return Err(Error::InvalidArgument(format!("at most {MAX_FD_LEVELS} FD levels, asked for {count}")));
    }
    grid_mode2(l2, kappa, grid)?.eigenvalues(count)
}

/// `l₂(2k + 1 + s/2)` for `k < count`, as floats.
pub fn plus_sector_levels(l2: u32, kappa: &Rational, count: usize) -> Vec<f64> {
    let s = surd_value(kappa);
    (0..count).map(|k| l2 as f64 * (2.0 * k as f64 + 1.0 + s / 2.0)).collect()
}

/// FD levels on `M`, `2M+1`, `4M+3` with Richardson ratios
/// `(ε(h) − ε(h/2)) / (ε(h/2) − ε(h/4))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdConvergence {
    pub exact: Vec<f64>,
    /// `levels[g][k]`: level `k` on refinement `g`.
    pub levels: Vec<Vec<f64>>,
    pub ratios: Vec<f64>,
}

impl FdConvergence {
    /// Largest `|ε_FD − ε_exact|` on the coarsest grid.
    pub fn max_error(&self) -> f64 {
        self.levels[0]
            .iter()
            .zip(&self.exact)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn fd_convergence(l2: u32, kappa: &Rational, grid: &GridSpec, count: usize) -> Result<FdConvergence> {
    let grids = [*grid, grid.refine(), grid.refine().refine()];
    let levels = grids
        .iter()
        .map(|g| fd_eigenvalues(l2, kappa, g, count))
        .collect::<Result<Vec<_>>>()?;
    let ratios = (0..count)
        .map(|k| (levels[0][k] - levels[1][k]) / (levels[1][k] - levels[2][k]))
        .collect();
    Ok(FdConvergence {
        exact: plus_sector_levels(l2, kappa, count),
        levels,
        ratios,
    })
}

/// Outcome of [`compare_spectra`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumDiff {
    pub missing_in_a: Vec<(LevelEnergy, u64)>,
    pub missing_in_b: Vec<(LevelEnergy, u64)>,
    pub degeneracy_mismatches: Vec<(LevelEnergy, u64, u64)>,
    pub pass: bool,
}

fn energy_order(a: &LevelEnergy, b: &LevelEnergy, tol: f64) -> Ordering {
    if let (LevelEnergy::Exact(x), LevelEnergy::Exact(y)) = (a, b) {
        if x.field() == y.field() {
            return x.cmp(y);
        }
    }
    let (x, y) = (a.to_f64(), b.to_f64());
    if (x - y).abs() <= tol {
        Ordering::Equal
    } else {
        x.total_cmp(&y)
    }
}

/// Matches levels exactly when both energies are exact in one field and
/// within `tol` otherwise; degeneracies must agree exactly.
pub fn compare_spectra(a: &[SpectrumLevel], b: &[SpectrumLevel], tol: f64) -> SpectrumDiff {
    let mut diff = SpectrumDiff::default();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => energy_order(&x.energy, &y.energy, tol),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                diff.missing_in_b.push((a[i].energy.clone(), a[i].total_degeneracy));
                i += 1;
            }
            Ordering::Greater => {
                diff.missing_in_a.push((b[j].energy.clone(), b[j].total_degeneracy));
                j += 1;
            }
            Ordering::Equal => {
                if a[i].total_degeneracy != b[j].total_degeneracy {
                    diff.degeneracy_mismatches.push((
                        a[i].energy.clone(),
                        a[i].total_degeneracy,
                        b[j].total_degeneracy,
                    ));
                }
                i += 1;
                j += 1;
            }
        }
    }
    diff.pass = diff.missing_in_a.is_empty() && diff.missing_in_b.is_empty() && diff.degeneracy_mismatches.is_empty();
    diff
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(levels: &[SpectrumLevel]) -> Vec<(f64, u64)> {
        levels.iter().map(|l| (l.energy.to_f64(), l.total_degeneracy)).collect()
    }

    #[test]
    fn isotropic_counting() {
        let sys = SystemSpec::anisotropic(1, 1).unwrap();
        assert_eq!(table(&enumerate_spectrum(&sys, &int(3))), vec![(1.0, 1), (2.0, 2), (3.0, 3)]);
    }

    #[test]
    fn three_to_one_counting() {
        let sys = SystemSpec::anisotropic(3, 1).unwrap();
        let got = table(&enumerate_spectrum(&sys, &int(8)));
        let want = vec![(2.0, 1), (3.0, 1), (4.0, 1), (5.0, 2), (6.0, 2), (7.0, 2), (8.0, 3)];
        assert_eq!(got, want);
    }

    #[test]
    fn deformed_level_contributors() {
        let sys = SystemSpec::sw(1, 1, rat(1, 3)).unwrap();
        let levels = enumerate_spectrum(&sys, &int(6));
        let target = AlgScalar::new(rat(7, 2), rat(1, 2), sys.field());
        let hit = levels.iter().find(|l| l.energy.exact() == Some(&target)).unwrap();
        assert_eq!(hit.total_degeneracy, 2);
        let low = AlgScalar::new(rat(3, 2), rat(-1, 2), sys.field());
        assert_eq!(levels[0].energy.exact(), Some(&low));
        assert_eq!(levels[0].total_degeneracy, 1);
    }

    #[test]
    fn undeformed_limit_matches_anisotropic() {
        for (l1, l2) in [(1, 1), (1, 2), (2, 1), (3, 2)] {
            let sw = enumerate_spectrum(&SystemSpec::sw(l1, l2, int(0)).unwrap(), &int(40));
            let an = enumerate_spectrum(&SystemSpec::anisotropic(l1, l2).unwrap(), &int(40));
            assert!(compare_spectra(&sw, &an, 0.0).pass);
        }
    }

    #[test]
    fn diff_reports_each_kind() {
        let sys = SystemSpec::anisotropic(2, 2).unwrap();
        let a = enumerate_spectrum(&sys, &int(10));
        assert!(compare_spectra(&a, &a, 0.0).pass);
        let short = &a[..a.len() - 1];
        let d = compare_spectra(&a, short, 0.0);
        assert!(d.missing_in_a.is_empty());
        assert_eq!(d.missing_in_b.len(), 1);
        let mut off = a.clone();
        off[2].total_degeneracy += 1;
        let d = compare_spectra(&a, &off, 0.0);
        assert_eq!(d.degeneracy_mismatches.len(), 1);
        assert!(!d.pass);
    }

    #[test]
    fn float_levels_match_within_tolerance() {
        let sys = SystemSpec::anisotropic(1, 2).unwrap();
        let a = enumerate_spectrum(&sys, &int(6));
        let b: Vec<_> = a
            .iter()
            .map(|l| SpectrumLevel {
                energy: LevelEnergy::Approx(l.energy.to_f64() + 1e-7),
                ..l.clone()
            })
            .collect();
        assert!(compare_spectra(&a, &b, 1e-6).pass);
        assert!(!compare_spectra(&a, &b, 1e-9).pass);
    }

    #[test]
    fn fd_levels_undeformed() {
        let ev = fd_eigenvalues(1, &int(0), &GridSpec::default_for(1), 3).unwrap();
        for (v, want) in ev.iter().zip([1.5, 3.5, 5.5]) {
            assert!((v - want).abs() < 1e-3);
        }
        let ev = fd_eigenvalues(2, &int(0), &GridSpec::default_for(2), 2).unwrap();
        for (v, want) in ev.iter().zip([3.0, 7.0]) {
            assert!((v - want).abs() < 2e-3);
        }
    }

    #[test]
    fn fd_levels_deformed() {
        let kappa = rat(1, 3);
        let ev = fd_eigenvalues(1, &kappa, &GridSpec::default_for(1), 2).unwrap();
        for (v, want) in ev.iter().zip(plus_sector_levels(1, &kappa, 2)) {
            assert!((v - want).abs() < 1e-3, "{v} vs {want}");
        }
        assert!(fd_eigenvalues(1, &kappa, &GridSpec::default_for(1), 11).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn degeneracies_count_lattice_points(l1 in 1i64..=5, l2 in 1i64..=5, e_max in 1i64..=30) {
            let sys = SystemSpec::anisotropic(l1, l2).unwrap();
            let total: u64 = enumerate_spectrum(&sys, &int(e_max)).iter().map(|l| l.total_degeneracy).sum();
            let mut count = 0u64;
            for n1 in 0..=e_max {
                for n2 in 0..=e_max {
                    if 2 * l1 * n1 + l1 + 2 * l2 * n2 + l2 <= 2 * e_max {
                        count += 1;
                    }
                }
            }
            prop_assert_eq!(total, count);
        }
    }
}
