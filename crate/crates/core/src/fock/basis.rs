use crate::error::{Error, Result};

/// Default cap on the truncated basis dimension.
pub const DEFAULT_DIMENSION_CAP: usize = 1_000_000;

/// Two-mode occupation basis `|n₁, n₂⟩`, `0 ≤ nᵢ ≤ nᵢ_max`, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBasis {
    n1_max: usize,
    n2_max: usize,
}

pub fn build_basis(n1_max: usize, n2_max: usize) -> Result<FockBasis> {
    build_basis_with_cap(n1_max, n2_max, DEFAULT_DIMENSION_CAP)
}

pub fn build_basis_with_cap(n1_max: usize, n2_max: usize, cap: usize) -> Result<FockBasis> {
    if n1_max < 1 || n2_max < 1 {
        return Err(Error::InvalidBasis(n1_max, n2_max));
    }
    let dim = (n1_max + 1)
        .checked_mul(n2_max + 1)
        .ok_or(Error::SizeOverflow { dim: usize::MAX, cap })?;
    if dim > cap {
        return Err(Error::SizeOverflow { dim, cap });
    }
    Ok(FockBasis { n1_max, n2_max })
}

impl FockBasis {
    pub fn n1_max(&self) -> usize {
        self.n1_max
    }

    pub fn n2_max(&self) -> usize {
        self.n2_max
    }

    pub fn dimension(&self) -> usize {
        (self.n1_max + 1) * (self.n2_max + 1)
    }

    pub fn index(&self, n1: usize, n2: usize) -> Option<usize> {
        (n1 <= self.n1_max && n2 <= self.n2_max).then(|| n1 * (self.n2_max + 1) + n2)
    }

    pub fn state(&self, index: usize) -> (usize, usize) {
        (index / (self.n2_max + 1), index % (self.n2_max + 1))
    }

    pub fn states(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dimension()).map(|i| self.state(i))
    }

    /// Cutoff of one mode, `mode ∈ {1, 2}`.
    pub fn cutoff(&self, mode: u8) -> usize {
        if mode == 1 {
            self.n1_max
        } else {
            self.n2_max
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(build_basis(1, 1).unwrap().dimension(), 4);
        assert_eq!(build_basis(40, 40).unwrap().dimension(), 1681);
        assert_eq!(build_basis(0, 5).unwrap_err(), Error::InvalidBasis(0, 5));
        assert!(matches!(
            build_basis_with_cap(99, 99, 1000),
            Err(Error::SizeOverflow { dim: 10000, cap: 1000 })
        ));
    }

    #[test]
    fn index_roundtrip() {
        let b = build_basis(3, 5).unwrap();
        for i in 0..b.dimension() {
            let (n1, n2) = b.state(i);
            assert_eq!(b.index(n1, n2), Some(i));
        }
        assert_eq!(b.index(4, 0), None);
    }
}
