use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::FockBasis;

/// Which mode operator to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Lower,
    Raise,
    Number,
}

/// Real sparse matrix stored by columns, each column sorted by row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    cols: Vec<Vec<(usize, f64)>>,
    /// `(Δn₁, Δn₂)` when every entry connects states with this shift.
    shift: Option<(i64, i64)>,
}

impl SparseOperator {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            cols: vec![Vec::new(); dim],
            shift: Some((0, 0)),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![1.0; dim])
    }

    pub fn from_diagonal(values: &[f64]) -> Self {
        let cols = values
            .iter()
            .enumerate()
            .map(|(i, &v)| if v == 0.0 { Vec::new() } else { vec![(i, v)] })
            .collect();
        Self {
            dim: values.len(),
            cols,
            shift: Some((0, 0)),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(dim: usize, triplets: I, shift: Option<(i64, i64)>) -> Self
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut cols: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "triplet outside the matrix");
            assert!(v.is_finite(), "non-finite matrix entry");
            *cols[c].entry(r).or_insert(0.0) += v;
        }
        Self {
            dim,
            cols: cols
                .into_iter()
                .map(|col| col.into_iter().filter(|&(_, v)| v != 0.0).collect())
                .collect(),
            shift,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shift(&self) -> Option<(i64, i64)> {
        self.shift
    }

    pub fn column(&self, c: usize) -> &[(usize, f64)] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.cols[c]
            .binary_search_by_key(&r, |&(row, _)| row)
            .map(|k| self.cols[c][k].1)
            .unwrap_or(0.0)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    /// Diagonal entries when the matrix is diagonal.
    pub fn diagonal(&self) -> Option<Vec<f64>> {
        let mut d = vec![0.0; self.dim];
        for (r, c, v) in self.triplets() {
            if r != c {
                return None;
            }
            d[c] = v;
        }
        Some(d)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        }
    }

    fn combine(&self, other: &Self, sign: f64) -> Result<Self> {
        self.check(other)?;
        let shift = match (self.shift, other.shift) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ if other.nnz() == 0 => self.shift,
            _ if self.nnz() == 0 => other.shift,
            _ => None,
        };
        let triplets = self
            .triplets()
            .chain(other.triplets().map(|(r, c, v)| (r, c, sign * v)));
        Ok(Self::from_triplets(self.dim, triplets, shift))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1.0)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_triplets(
            self.dim,
            self.triplets().map(|(r, c, v)| (r, c, v * factor)),
            self.shift,
        )
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut triplets = Vec::new();
        for (c, col) in other.cols.iter().enumerate() {
            for &(k, b) in col {
                for &(r, a) in &self.cols[k] {
                    triplets.push((r, c, a * b));
                }
            }
        }
        let shift = match (self.shift, other.shift) {
            (Some(a), Some(b)) => Some((a.0 + b.0, a.1 + b.1)),
            _ => None,
        };
        Ok(Self::from_triplets(self.dim, triplets, shift))
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::identity(self.dim), |acc, _| acc.mul(self).expect("same dimension"))
    }

    /// Transpose; the adjoint for real matrices.
    pub fn adjoint(&self) -> Self {
        Self::from_triplets(
            self.dim,
            self.triplets().map(|(r, c, v)| (c, r, v)),
            self.shift.map(|(a, b)| (-a, -b)),
        )
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, a) in col {
                out[r] += a * v[c];
            }
        }
        out
    }

    /// Verifies the declared monomial shift against every stored entry.
    pub fn respects_shift(&self, basis: &FockBasis) -> bool {
        let Some((d1, d2)) = self.shift else {
            return true;
        };
        self.triplets().all(|(r, c, _)| {
            let (r1, r2) = basis.state(r);
            let (c1, c2) = basis.state(c);
            r1 as i64 - c1 as i64 == d1 && r2 as i64 - c2 as i64 == d2
        })
    }
}

/// `aᵢ`, `aᵢ†` or `Nᵢ` on the truncated basis.
pub fn mode_operator(basis: &FockBasis, mode: u8, kind: ModeKind) -> SparseOperator {
    assert!(mode == 1 || mode == 2, "mode must be 1 or 2");
    let dim = basis.dimension();
    let mut triplets = Vec::new();
    for (c, (n1, n2)) in basis.states().enumerate() {
        let n = if mode == 1 { n1 } else { n2 };
        let target = |m: usize| {
            if mode == 1 {
                basis.index(m, n2)
            } else {
                basis.index(n1, m)
            }
        };
        match kind {
            ModeKind::Lower if n > 0 => {
                triplets.push((target(n - 1).unwrap(), c, (n as f64).sqrt()));
            }
            ModeKind::Raise => {
                if let Some(r) = target(n + 1) {
                    triplets.push((r, c, ((n + 1) as f64).sqrt()));
                }
            }
            ModeKind::Number if n > 0 => triplets.push((c, c, n as f64)),
            _ => {}
        }
    }
    let step = match kind {
        ModeKind::Lower => -1,
        ModeKind::Raise => 1,
        ModeKind::Number => 0,
    };
    let shift = if mode == 1 { (step, 0) } else { (0, step) };
    SparseOperator::from_triplets(dim, triplets, Some(shift))
}
