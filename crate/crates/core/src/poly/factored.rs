use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::scalar::{AlgScalar, Rational};

/// Which sector of the deformed mode a factor belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sector {
    /// Wavefunctions behaving as `x^{(1+s)/2}` at the origin.
    Plus,
    /// Wavefunctions behaving as `x^{(1-s)/2}` at the origin.
    Minus,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::Plus => "+",
            Sector::Minus => "-",
        })
    }
}

/// What a factor's zero means physically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FactorRole {
    /// Vanishes on the lowest ladder state when mode 1 holds `occupation`
    /// quanta (the lowering half of `J₊J₋` annihilates it).
    Mode1 { occupation: u32 },
    /// Vanishes at `φ(m̄+1)` when mode 2 sits at `quantum` on the top state.
    /// For the deformed mode `quantum` counts su(1,1) steps within `sector`.
    Mode2 { quantum: u32, sector: Option<Sector> },
}

/// The affine form `cm·m + cE·E + c0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFactor {
    pub cm: Rational,
    pub ce: Rational,
    pub c0: AlgScalar,
    pub role: FactorRole,
}

impl LinearFactor {
    pub fn new(cm: Rational, ce: Rational, c0: AlgScalar, role: FactorRole) -> Result<Self> {
        if cm.is_zero() && ce.is_zero() && c0.is_zero() {
            return Err(Error::InvalidArgument("linear factor is identically zero".into()));
        }
        Ok(Self { cm, ce, c0, role })
    }

    pub fn eval(&self, m: &AlgScalar, e: &AlgScalar) -> Result<AlgScalar> {
        let v = m.scale(&self.cm).checked_add(&e.scale(&self.ce))?;
        v.checked_add(&self.c0)
    }

    pub fn eval_f64(&self, m: f64, e: f64) -> f64 {
        crate::scalar::rational_to_f64(&self.cm) * m
            + crate::scalar::rational_to_f64(&self.ce) * e
            + self.c0.to_f64()
    }

    pub fn to_poly(&self) -> BivarPoly {
        BivarPoly::linear(&self.cm, &self.ce, &self.c0)
    }

    /// True when the two factors have proportional `(m, E)` parts.
    pub fn parallel_to(&self, other: &Self) -> bool {
        (&self.cm * &other.ce - &self.ce * &other.cm).is_zero()
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_poly())
    }
}

/// `lead · ∏ factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    pub lead: AlgScalar,
    pub factors: Vec<LinearFactor>,
}

impl FactoredPoly {
    pub fn expand(&self) -> BivarPoly {
        self.factors
            .iter()
            .fold(BivarPoly::constant(self.lead.clone()), |acc, factor| {
                acc.checked_mul(&factor.to_poly())
                    .expect("factors share the lead's field")
            })
    }

    pub fn eval(&self, m: &AlgScalar, e: &AlgScalar) -> Result<AlgScalar> {
        let mut acc = self.lead.clone();
        for factor in &self.factors {
            acc = acc.checked_mul(&factor.eval(m, e)?)?;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, m: f64, e: f64) -> f64 {
        self.factors
            .iter()
            .fold(self.lead.to_f64(), |acc, f| acc * f.eval_f64(m, e))
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !(self.lead.as_rational().is_some_and(|a| *a == Rational::from_integer(1.into()))) {
            write!(f, "{}", self.lead)?;
            if !self.factors.is_empty() {
                write!(f, "*")?;
            }
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Exact or numeric evaluation shared by both polynomial representations.
pub trait Evaluate {
    fn eval_at(&self, m: &AlgScalar, e: &AlgScalar) -> Result<AlgScalar>;
}

impl Evaluate for BivarPoly {
    fn eval_at(&self, m: &AlgScalar, e: &AlgScalar) -> Result<AlgScalar> {
        self.eval(m, e)
    }
}

impl Evaluate for FactoredPoly {
    fn eval_at(&self, m: &AlgScalar, e: &AlgScalar) -> Result<AlgScalar> {
        self.eval(m, e)
    }
}

/// Evaluates either representation at `(m, E)`.
pub fn eval_poly<P: Evaluate + ?Sized>(p: &P, m: &AlgScalar, e: &AlgScalar) -> Result<AlgScalar> {
    p.eval_at(m, e)
}
