use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::Scalar;

/// A point of the circle `R/Z`, stored as its representative in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirclePoint(Scalar);

impl CirclePoint {
    pub fn new(s: Scalar) -> Self {
        CirclePoint(reduce_mod1(&s))
    }

    pub fn zero() -> Self {
        CirclePoint(Scalar::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        CirclePoint::new(Scalar::ratio(num, den))
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    pub fn into_value(self) -> Scalar {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `(self − from) mod 1`, the counterclockwise offset from `from`.
    pub fn offset_from(&self, from: &CirclePoint) -> Scalar {
        reduce_mod1(&(&self.0 - &from.0))
    }

    pub fn shift(&self, t: &Scalar) -> CirclePoint {
        CirclePoint::new(&self.0 + t)
    }

    /// Midpoint of the counterclockwise arc from `self` of the given length.
    pub fn advance_half(&self, len: &Scalar) -> CirclePoint {
        self.shift(&len.half())
    }
}

/// `s − ⌊s⌋`.
pub fn reduce_mod1(s: &Scalar) -> Scalar {
    s.fract()
}

/// Total order on representatives in `[0, 1)`.
pub fn circle_compare(p: &CirclePoint, q: &CirclePoint) -> Ordering {
    p.cmp(q)
}

/// Geodesic distance on `R/Z`; lies in `[0, 1/2]`.
pub fn geodesic_dist(p: &CirclePoint, q: &CirclePoint) -> Scalar {
    let d = p.offset_from(q);
    let e = Scalar::one() - &d;
    if d <= e {
        d
    } else {
        e
    }
}

impl Add<&CirclePoint> for &CirclePoint {
    type Output = CirclePoint;
    fn add(self, rhs: &CirclePoint) -> CirclePoint {
        CirclePoint::new(&self.0 + &rhs.0)
    }
}

impl Sub<&CirclePoint> for &CirclePoint {
    type Output = CirclePoint;
    fn sub(self, rhs: &CirclePoint) -> CirclePoint {
        CirclePoint::new(&self.0 - &rhs.0)
    }
}

impl Neg for &CirclePoint {
    type Output = CirclePoint;
    fn neg(self) -> CirclePoint {
        CirclePoint::new(-&self.0)
    }
}

impl From<Scalar> for CirclePoint {
    fn from(s: Scalar) -> Self {
        CirclePoint::new(s)
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
