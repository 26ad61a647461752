//! Exact arithmetic in a quadratic extension of the rationals.
//!
//! Every number is `a + b·s` with `s² = r` for a fixed positive rational `r`.
//! For the deformed oscillator `r = 1 + 4κ`; the undeformed systems use
//! `r = 1`, where `s` is rational and folds into `a`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q` or a bare integer. Decimal notation is rejected so that
/// inputs stay exact.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("expected an exact rational p/q, got {text:?}"));
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match text.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let sqrt_int = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Rational::new(sqrt_int(q.numer())?, sqrt_int(q.denom())?))
}

/// The field `ℚ(s)` with `s² = radicand`.
#[derive(Debug)]
pub struct SurdField {
    radicand: Rational,
    root: Option<Rational>,
}

impl SurdField {
    pub fn new(radicand: Rational) -> Result<Arc<Self>> {
        if !radicand.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "radicand must be positive, got {radicand}"
            )));
        }
        let root = exact_sqrt(&radicand);
        Ok(Arc::new(Self { radicand, root }))
    }

    /// The trivial extension `s = 1`.
    pub fn rational() -> Arc<Self> {
        Arc::new(Self {
            radicand: Rational::one(),
            root: Some(Rational::one()),
        })
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    /// `Some(s)` when `s` itself is rational.
    pub fn rational_root(&self) -> Option<&Rational> {
        self.root.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.root.is_some()
    }

    pub fn root_f64(&self) -> f64 {
        rational_to_f64(&self.radicand).sqrt()
    }
}

impl PartialEq for SurdField {
    fn eq(&self, other: &Self) -> bool {
        self.radicand == other.radicand
    }
}

impl Eq for SurdField {}

fn same_field(x: &Arc<SurdField>, y: &Arc<SurdField>) -> bool {
    Arc::ptr_eq(x, y) || x == y
}

/// An exact number `a + b·s`.
#[derive(Clone, Debug)]
pub struct AlgScalar {
    a: Rational,
    b: Rational,
    field: Arc<SurdField>,
}

impl AlgScalar {
    pub fn new(a: Rational, b: Rational, field: &Arc<SurdField>) -> Self {
        match &field.root {
            Some(root) => Self {
                a: a + b * root,
                b: Rational::zero(),
                field: field.clone(),
            },
            None => Self {
                a,
                b,
                field: field.clone(),
            },
        }
    }

    pub fn rational(a: Rational, field: &Arc<SurdField>) -> Self {
        Self::new(a, Rational::zero(), field)
    }

    pub fn zero(field: &Arc<SurdField>) -> Self {
        Self::rational(Rational::zero(), field)
    }

    pub fn one(field: &Arc<SurdField>) -> Self {
        Self::rational(Rational::one(), field)
    }

    /// The generator `s`.
    pub fn surd(field: &Arc<SurdField>) -> Self {
        Self::new(Rational::zero(), Rational::one(), field)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> &Arc<SurdField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn to_f64(&self) -> f64 {
        let b = rational_to_f64(&self.b);
        if b == 0.0 {
            return rational_to_f64(&self.a);
        }
        rational_to_f64(&self.a) + b * self.field.root_f64()
    }

    /// Exact sign of `a + b·s` with `s > 0`.
    pub fn signum(&self) -> Ordering {
        let zero = Rational::zero();
        let sa = self.a.cmp(&zero);
        let sb = self.b.cmp(&zero);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: the larger magnitude wins, and a² = b²r cannot
        // hold because r is not a rational square here.
        let a2 = &self.a * &self.a;
        let b2r = &self.b * &self.b * &self.field.radicand;
        if a2 > b2r {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            field: self.field.clone(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            field: self.field.clone(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &self.field.radicand;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self {
            a,
            b,
            field: self.field.clone(),
        })
    }

    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            a: &self.a * q,
            b: &self.b * q,
            field: self.field.clone(),
        }
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        Self {
            a: &self.a + q,
            b: self.b.clone(),
            field: self.field.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for AlgScalar {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.a == other.a && self.b == other.b
    }
}

impl Eq for AlgScalar {}

impl Hash for AlgScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.radicand.hash(state);
        self.a.hash(state);
        self.b.hash(state);
    }
}

/// Total order: by field first, then by exact value within a field.
impl Ord for AlgScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if !same_field(&self.field, &other.field) {
            return self.field.radicand.cmp(&other.field.radicand);
        }
        (self - other).signum()
    }
}

impl PartialOrd for AlgScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a AlgScalar> for &'a AlgScalar {
            type Output = AlgScalar;
            fn $method(self, rhs: &'a AlgScalar) -> AlgScalar {
                self.$checked(rhs)
                    .expect("arithmetic between scalars of different fields")
            }
        }
        impl $trait for AlgScalar {
            type Output = AlgScalar;
            fn $method(self, rhs: AlgScalar) -> AlgScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &AlgScalar {
    type Output = AlgScalar;
    fn neg(self) -> AlgScalar {
        AlgScalar {
            a: -&self.a,
            b: -&self.b,
            field: self.field.clone(),
        }
    }
}

impl Neg for AlgScalar {
    type Output = AlgScalar;
    fn neg(self) -> AlgScalar {
        -&self
    }
}

impl fmt::Display for AlgScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() {
            "s".to_string()
        } else if (-&self.b).is_one() {
            "-s".to_string()
        } else {
            format!("{}*s", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b}")
        } else if let Some(rest) = b.strip_prefix('-') {
            write!(f, "{} - {rest}", self.a)
        } else {
            write!(f, "{} + {b}", self.a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(kappa: Rational) -> Arc<SurdField> {
        SurdField::new(int(1) + int(4) * kappa).unwrap()
    }

    #[test]
    fn surd_squared_is_radicand() {
        let f = field(rat(1, 3));
        let s = AlgScalar::surd(&f);
        let sq = &s * &s;
        assert_eq!(sq, AlgScalar::rational(rat(7, 3), &f));
        assert!(sq.is_rational());
    }

    #[test]
    fn conjugate_product() {
        let kappa = rat(1, 3);
        let f = field(kappa.clone());
        let one = AlgScalar::one(&f);
        let s = AlgScalar::surd(&f);
        let p = &(&one + &s) * &(&one - &s);
        assert_eq!(p, AlgScalar::rational(-int(4) * kappa, &f));
        let sf = f.root_f64();
        assert!((p.to_f64() - (1.0 + sf) * (1.0 - sf)).abs() < 1e-12);
    }

    #[test]
    fn rational_closure() {
        let f = field(rat(-1, 5));
        let two = AlgScalar::rational(int(2), &f);
        let three = AlgScalar::rational(int(3), &f);
        assert_eq!(&two * &three, AlgScalar::rational(int(6), &f));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let x = AlgScalar::surd(&field(rat(1, 3)));
        let y = AlgScalar::surd(&field(rat(1, 5)));
        assert_eq!(x.checked_mul(&y), Err(Error::ContextMismatch));
        assert_eq!(x.checked_add(&y), Err(Error::ContextMismatch));
    }

    #[test]
    fn perfect_square_radicand_folds() {
        // kappa = 5/16 gives s = 3/2
        let f = field(rat(5, 16));
        let s = AlgScalar::surd(&f);
        assert!(s.is_rational());
        assert_eq!(s.a(), &rat(3, 2));
        let g = SurdField::rational();
        assert!(AlgScalar::surd(&g).is_rational());
    }

    #[test]
    fn exact_sign() {
        let f = field(rat(1, 3)); // s ≈ 1.5275
        let s = AlgScalar::surd(&f);
        let x = AlgScalar::rational(rat(3, 2), &f);
        assert_eq!((&s - &x).signum(), Ordering::Greater);
        let y = AlgScalar::rational(rat(153, 100), &f);
        assert_eq!((&s - &y).signum(), Ordering::Less);
        assert!(s > x && s < y);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("-1/5").unwrap(), rat(-1, 5));
        assert_eq!(parse_rational("40").unwrap(), int(40));
        assert!(parse_rational("0.2").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn display() {
        let f = field(rat(1, 3));
        let x = AlgScalar::new(rat(3, 2), rat(-1, 2), &f);
        assert_eq!(x.to_string(), "3/2 - 1/2*s");
        assert_eq!(AlgScalar::surd(&f).to_string(), "s");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = (i64, i64)> {
            (-50i64..50, 1i64..20)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]
            #[test]
            fn arithmetic_matches_floats(
                x in (small_rat(), small_rat()),
                y in (small_rat(), small_rat()),
                k in 0usize..3,
            ) {
                let kappa = [rat(-1, 5), int(0), rat(1, 3)][k].clone();
                let f = field(kappa);
                let sf = f.root_f64();
                let mk = |((an, ad), (bn, bd)): ((i64, i64), (i64, i64))| {
                    AlgScalar::new(rat(an, ad), rat(bn, bd), &f)
                };
                let fl = |((an, ad), (bn, bd)): ((i64, i64), (i64, i64))| {
                    an as f64 / ad as f64 + bn as f64 / bd as f64 * sf
                };
                let (p, q) = (mk(x), mk(y));
                let (pf, qf) = (fl(x), fl(y));
                let expr = &(&(&p * &q) + &p) - &(&q * &q);
                let expected = pf * qf + pf - qf * qf;
                prop_assert!((expr.to_f64() - expected).abs() < 1e-12 * (1.0 + expected.abs()));
                prop_assert_eq!(p.cmp(&q), pf.partial_cmp(&qf).unwrap());
            }
        }
    }
}
