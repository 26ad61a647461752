//! System descriptors.
//!
//! Units are fixed once for the whole crate: ħ = m = ω₀ = 1, so the two mode
//! frequencies are the integers `l1` and `l2` and every energy is a multiple
//! of ħω₀. The coupling `kappa` is the dimensionless strength of the
//! `κ/(2x₂²)` term.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{int, rat, AlgScalar, Rational, SurdField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SystemKind {
    /// Two oscillators with commensurate frequencies `l1 : l2`.
    #[serde(rename = "aniso")]
    Anisotropic,
    /// The anisotropic pair plus a `κ/(2x₂²)` barrier on mode 2.
    #[serde(rename = "sw")]
    SWDeformed,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Anisotropic => "aniso",
            SystemKind::SWDeformed => "sw",
        })
    }
}

/// A validated oscillator system.
#[derive(Debug, Clone)]
pub struct SystemSpec {
    kind: SystemKind,
    l1: u32,
    l2: u32,
    kappa: Option<Rational>,
    field: Arc<SurdField>,
}

/// Validates raw parameters into a [`SystemSpec`].
pub fn make_system(kind: SystemKind, l1: i64, l2: i64, kappa: Option<Rational>) -> Result<SystemSpec> {
    if l1 < 1 || l2 < 1 {
        return Err(Error::NonPositiveMultiplier { l1, l2 });
    }
    let to_u32 = |l: i64| u32::try_from(l).map_err(|_| Error::InvalidArgument(format!("multiplier {l} too large")));
    let (l1, l2) = (to_u32(l1)?, to_u32(l2)?);
    let (kappa, field) = match (kind, kappa) {
        (SystemKind::Anisotropic, Some(_)) => return Err(Error::UnexpectedKappa),
        (SystemKind::Anisotropic, None) => (None, SurdField::rational()),
        (SystemKind::SWDeformed, None) => return Err(Error::MissingKappa),
        (SystemKind::SWDeformed, Some(k)) => {
            if !kappa_in_range(&k) {
                return Err(Error::KappaOutOfRange(k.to_string()));
            }
            let field = SurdField::new(int(1) + int(4) * &k)?;
            (Some(k), field)
        }
    };
    Ok(SystemSpec {
        kind,
        l1,
        l2,
        kappa,
        field,
    })
}

impl SystemSpec {
    pub fn anisotropic(l1: i64, l2: i64) -> Result<Self> {
        make_system(SystemKind::Anisotropic, l1, l2, None)
    }

    pub fn sw(l1: i64, l2: i64, kappa: Rational) -> Result<Self> {
        make_system(SystemKind::SWDeformed, l1, l2, Some(kappa))
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn l1(&self) -> u32 {
        self.l1
    }

    pub fn l2(&self) -> u32 {
        self.l2
    }

    pub fn kappa(&self) -> Option<&Rational> {
        self.kappa.as_ref()
    }

    /// ω₁ = l₁ω₀.
    pub fn omega1(&self) -> Rational {
        int(self.l1 as i64)
    }

    /// ω₂ = l₂ω₀.
    pub fn omega2(&self) -> Rational {
        int(self.l2 as i64)
    }

    /// The field holding `s = √(1+4κ)`; trivial for anisotropic systems.
    pub fn field(&self) -> &Arc<SurdField> {
        &self.field
    }

    pub fn surd(&self) -> AlgScalar {
        AlgScalar::surd(&self.field)
    }

    pub fn is_sw(&self) -> bool {
        self.kind == SystemKind::SWDeformed
    }

    /// The same oscillator pair with the barrier switched off.
    pub fn undeformed(&self) -> SystemSpec {
        SystemSpec::anisotropic(self.l1 as i64, self.l2 as i64).expect("already validated")
    }

    /// Order Ω of the polynomial algebra.
    pub fn algebra_order(&self) -> u32 {
        match self.kind {
            SystemKind::Anisotropic => self.l1 + self.l2 - 1,
            SystemKind::SWDeformed => 2 * (self.l1 + self.l2) - 1,
        }
    }

    /// Number of independent energy families (irrep series).
    pub fn expected_family_count(&self) -> usize {
        let base = (self.l1 * self.l2) as usize;
        match self.kind {
            SystemKind::Anisotropic => base,
            SystemKind::SWDeformed => 4 * base,
        }
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} l1={} l2={}", self.kind, self.l1, self.l2)?;
        if let Some(k) = &self.kappa {
            write!(f, " kappa={k}")?;
        }
        Ok(())
    }
}

/// True when `kappa` lies in the admissible open interval.
pub fn kappa_in_range(kappa: &Rational) -> bool {
    *kappa > rat(-1, 4) && *kappa < rat(3, 4)
}
