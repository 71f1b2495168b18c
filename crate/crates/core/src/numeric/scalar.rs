use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// The coordinate field: `Q` when `m == 0`, otherwise `Q(√m)` for a squarefree `m ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    m: u32,
}

impl FieldSpec {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || (m >= 2 && is_squarefree(m)) {
            Ok(FieldSpec { m })
        } else {
            Err(Error::BadField(m))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { m: 0 }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_rational(&self) -> bool {
        self.m == 0
    }

    /// Whether `s` lives in this field.
    pub fn admits(&self, s: &Scalar) -> bool {
        s.m == 0 || s.m == self.m
    }

    /// `√m` as a scalar; `None` over `Q`.
    pub fn sqrt(&self) -> Option<Scalar> {
        (self.m != 0).then(|| Scalar {
            a: BigRational::zero(),
            b: BigRational::one(),
            m: self.m,
        })
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { m: 2 }
    }
}

fn is_squarefree(m: u32) -> bool {
    let mut d = 2u32;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact element `a + b·√m` of `Q(√m)`.
///
/// The representation is normalized so that structural equality is value
/// equality: `m` is zero exactly when `b` is zero. Arithmetic between two
/// irrational scalars over different `m` panics; documents and the CLI pin a
/// single [`FieldSpec`] so this cannot happen for parsed data.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    m: u32,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational, field: FieldSpec) -> Result<Self> {
        if !b.is_zero() && field.is_rational() {
            return Err(Error::FieldMismatch(
                "irrational coefficient over the rational field".into(),
            ));
        }
        Ok(Self::normalized(a, b, field.m))
    }

    fn normalized(a: BigRational, b: BigRational, m: u32) -> Self {
        if b.is_zero() {
            Scalar { a, b, m: 0 }
        } else {
            Scalar { a, b, m }
        }
    }

    pub fn zero() -> Self {
        Scalar::from(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::from(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::from(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `√m` scaled by `num/den`.
    pub fn sqrt_term(num: i64, den: i64, m: u32) -> Self {
        let field = FieldSpec::new(m).expect("squarefree m");
        Self::normalized(
            BigRational::zero(),
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            field.m,
        )
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_coeff(&self) -> &BigRational {
        &self.b
    }

    /// `m` of the radicand, or 0 for rational values.
    pub fn radicand(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign of `a + b√m`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let mb2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.m));
        // a² ≠ m·b² because √m is irrational
        if a2 > mb2 {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact `⌊value⌋`.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // k = ⌊|b|·√m⌋ from an integer square root of b²m = p/q
        let b2m = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.m));
        let pq = b2m.numer() * b2m.denom();
        let k = pq.sqrt().div_floor(b2m.denom());
        let base = self.a.floor().to_integer();
        let mut n = if self.b.is_positive() {
            base + &k
        } else {
            base - &k - BigInt::one()
        } - BigInt::from(2);
        loop {
            let next = &n + BigInt::one();
            if (self - &Scalar::from(BigRational::from_integer(next.clone()))).is_negative() {
                return n;
            }
            n = next;
        }
    }

    /// Representative of `value mod 1` in `[0, 1)`.
    pub fn fract(&self) -> Scalar {
        self - &Scalar::from(BigRational::from_integer(self.floor()))
    }

    pub fn half(&self) -> Scalar {
        let two = BigRational::from_integer(BigInt::from(2));
        Self::normalized(&self.a / &two, &self.b / &two, self.m)
    }

    pub fn scale(&self, r: &BigRational) -> Scalar {
        Self::normalized(&self.a * r, &self.b * r, self.m)
    }

    /// `a − b√m`.
    pub fn conjugate(&self) -> Scalar {
        Self::normalized(self.a.clone(), -self.b.clone(), self.m)
    }

    /// Rational norm `a² − m b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.m))
    }

    /// Floating approximation for rendering only; never used in decisions.
    pub fn to_f64(&self) -> f64 {
        let f = |r: &BigRational| -> f64 {
            let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        };
        f(&self.a) + f(&self.b) * (self.m as f64).sqrt()
    }

    fn joint_m(&self, other: &Scalar) -> u32 {
        match (self.m, other.m) {
            (0, m) | (m, 0) => m,
            (m1, m2) if m1 == m2 => m1,
            (m1, m2) => panic!("mixed coordinate fields Q(√{m1}) and Q(√{m2})"),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            m: 0,
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.m == 0 && other.m == 0 {
            return self.a.cmp(&other.a);
        }
        (self - other).signum()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let m = self.joint_m(rhs);
        Scalar::normalized(&self.a + &rhs.a, &self.b + &rhs.b, m)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let m = self.joint_m(rhs);
        Scalar::normalized(&self.a - &rhs.a, &self.b - &rhs.b, m)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let m = self.joint_m(rhs);
        let mm = BigRational::from_integer(BigInt::from(m));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * mm;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::normalized(a, b, m)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        let n = rhs.norm();
        (self * &rhs.conjugate()).scale(&n.recip())
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::normalized(-self.a.clone(), -self.b.clone(), self.m)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar { (&self).$f(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rat(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text: `<rat>` or `<rat>±<p>/<q>*sqrt(<m>)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rat(&self.a, f)?;
        if !self.b.is_zero() {
            let sign = if self.b.numer().sign() == Sign::Minus {
                '-'
            } else {
                '+'
            };
            let c = self.b.abs();
            write!(f, "{sign}{}/{}*sqrt({})", c.numer(), c.denom(), self.m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
