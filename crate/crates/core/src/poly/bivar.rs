use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{AlgScalar, Rational, SurdField};

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Polynomial in `(m, E)` with coefficients in `ℚ(s)`, stored sparsely in
/// canonical form (no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    field: Arc<SurdField>,
    terms: BTreeMap<(u32, u32), AlgScalar>,
}

impl BivarPoly {
    pub fn zero(field: &Arc<SurdField>) -> Self {
        Self {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: AlgScalar) -> Self {
        let mut p = Self::zero(c.field());
        p.add_term(0, 0, c);
        p
    }

    /// `cm·m + cE·E + c0`.
    pub fn linear(cm: &Rational, ce: &Rational, c0: &AlgScalar) -> Self {
        let field = c0.field();
        let mut p = Self::constant(c0.clone());
        p.add_term(1, 0, AlgScalar::rational(cm.clone(), field));
        p.add_term(0, 1, AlgScalar::rational(ce.clone(), field));
        p
    }

    /// Builds from `((deg_m, deg_E), coefficient)` pairs; repeated keys add.
    pub fn from_terms<I>(field: &Arc<SurdField>, terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), AlgScalar)>,
    {
        let mut p = Self::zero(field);
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn field(&self) -> &Arc<SurdField> {
        &self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &AlgScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, deg_m: u32, deg_e: u32) -> AlgScalar {
        self.terms
            .get(&(deg_m, deg_e))
            .cloned()
            .unwrap_or_else(|| AlgScalar::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, i: u32, j: u32, c: AlgScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((i, j))
            .or_insert_with(|| AlgScalar::zero(&c.field().clone()));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Highest power of `m`; `None` for the zero polynomial.
    pub fn deg_m(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_e(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.field);
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &AlgScalar) -> Self {
        let mut out = Self::zero(&self.field);
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * c);
        }
        out
    }

    /// Substitutes `m → m + delta`.
    pub fn shift_m(&self, delta: &Rational) -> Self {
        let mut out = Self::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            let mut power = Rational::one();
            for k in (0..=i).rev() {
                // term C(i, k) m^k delta^(i-k)
                out.add_term(k, j, c.scale(&(binomial(i, k) * &power)));
                power *= delta;
            }
        }
        out
    }

    /// Substitutes `E → factor·E`, used to rewrite energies in another unit.
    pub fn rescale_e(&self, factor: &Rational) -> Self {
        let mut out = Self::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            let mut f = Rational::one();
            for _ in 0..j {
                f *= factor;
            }
            out.add_term(i, j, c.scale(&f));
        }
        out
    }

    /// Coefficient of `m^i` as a polynomial in `E`.
    pub fn coeff_of_m(&self, i: u32) -> EnergyPoly {
        EnergyPoly::from_terms(
            &self.field,
            self.terms
                .iter()
                .filter(|((di, _), _)| *di == i)
                .map(|(&(_, j), c)| (j, c.clone())),
        )
    }

    pub fn eval(&self, m: &AlgScalar, e: &AlgScalar) -> Result<AlgScalar> {
        if **m.field() != *self.field || **e.field() != *self.field {
            return Err(Error::ContextMismatch);
        }
        let mut acc = AlgScalar::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&(c * &m.pow(i)) * &e.pow(j));
        }
        Ok(acc)
    }

    /// Floating evaluation with `s` replaced by its numeric value.
    pub fn eval_f64(&self, m: f64, e: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_f64() * m.powi(i as i32) * e.powi(j as i32))
            .sum()
    }
}

fn monomial(powers: &[(&str, u32)]) -> String {
    powers
        .iter()
        .filter(|(_, p)| *p > 0)
        .map(|(name, p)| if *p == 1 { name.to_string() } else { format!("{name}^{p}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &AlgScalar, first: bool, mono: &str) -> fmt::Result {
    let (neg, mag) = if c.is_rational() && c.a() < &Rational::zero() {
        (true, -c)
    } else {
        (false, c.clone())
    };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    let unit = mag.as_rational().is_some_and(|a| a.is_one());
    match (unit, mono.is_empty(), mag.is_rational()) {
        (true, false, _) => write!(f, "{mono}"),
        (_, true, true) => write!(f, "{}", mag.a()),
        (_, true, false) => write!(f, "({mag})"),
        (_, false, true) => write!(f, "{}*{mono}", mag.a()),
        (_, false, false) => write!(f, "({mag})*{mono}"),
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            write_term(f, c, n == 0, &monomial(&[("m", i), ("E", j)]))?;
        }
        Ok(())
    }
}

/// Polynomial in the energy alone (the centre of the algebra).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyPoly {
    field: Arc<SurdField>,
    coeffs: BTreeMap<u32, AlgScalar>,
}

impl EnergyPoly {
    pub fn zero(field: &Arc<SurdField>) -> Self {
        Self {
            field: field.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(field: &Arc<SurdField>, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, AlgScalar)>,
    {
        let mut p = Self::zero(field);
        for (j, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = p.coeffs.entry(j).or_insert_with(|| AlgScalar::zero(field));
            *entry = &*entry + &c;
            if entry.is_zero() {
                p.coeffs.remove(&j);
            }
        }
        p
    }

    /// Rational coefficients, lowest degree first.
    pub fn from_rationals(field: &Arc<SurdField>, coeffs: &[Rational]) -> Self {
        Self::from_terms(
            field,
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (j as u32, AlgScalar::rational(c.clone(), field))),
        )
    }

    pub fn coeff(&self, j: u32) -> AlgScalar {
        self.coeffs
            .get(&j)
            .cloned()
            .unwrap_or_else(|| AlgScalar::zero(&self.field))
    }

    pub fn field(&self) -> &Arc<SurdField> {
        &self.field
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&u32, &AlgScalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().copied().max()
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|(j, c)| (*j, -c)).collect(),
        }
    }

    /// `E → factor·E`.
    pub fn rescale_e(&self, factor: &Rational) -> Self {
        Self::from_terms(
            &self.field,
            self.coeffs.iter().map(|(&j, c)| {
                let mut f = Rational::one();
                for _ in 0..j {
                    f *= factor;
                }
                (j, c.scale(&f))
            }),
        )
    }

    pub fn eval(&self, e: &AlgScalar) -> Result<AlgScalar> {
        if **e.field() != *self.field {
            return Err(Error::ContextMismatch);
        }
        let mut acc = AlgScalar::zero(&self.field);
        for (&j, c) in &self.coeffs {
            acc = &acc + &(c * &e.pow(j));
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, e: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&j, c)| c.to_f64() * e.powi(j as i32))
            .sum()
    }

    /// Lifts to a bivariate polynomial multiplied by `m^deg_m`.
    pub fn times_m_power(&self, deg_m: u32) -> BivarPoly {
        BivarPoly::from_terms(
            &self.field,
            self.coeffs.iter().map(|(&j, c)| ((deg_m, j), c.clone())),
        )
    }
}

impl fmt::Display for EnergyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (&j, c)) in self.coeffs.iter().rev().enumerate() {
            write_term(f, c, n == 0, &monomial(&[("E", j)]))?;
        }
        Ok(())
    }
}
