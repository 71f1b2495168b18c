use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::numeric::{CirclePoint, Scalar};

/// Side of a point in the blow-up; `Minus` sorts before `Plus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Reversing,
    Preserving,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Preserving => 1,
            Orientation::Reversing => -1,
        }
    }

    pub fn is_preserving(self) -> bool {
        self == Orientation::Preserving
    }
}

impl Mul for Orientation {
    type Output = Orientation;
    fn mul(self, rhs: Orientation) -> Orientation {
        if self == rhs {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }
}

impl Mul<Side> for Orientation {
    type Output = Side;
    fn mul(self, rhs: Side) -> Side {
        match self {
            Orientation::Preserving => rhs,
            Orientation::Reversing => rhs.flip(),
        }
    }
}

/// Half-open counterclockwise arc `[lo, hi)` of the circle.
///
/// `lo > hi` means the arc wraps through 0. The whole circle is `lo = hi = 0`
/// with `full` set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: CirclePoint,
    hi: CirclePoint,
    full: bool,
}

impl Interval {
    pub fn new(lo: CirclePoint, hi: CirclePoint) -> Result<Self> {
        if lo == hi {
            return Err(Error::BadParameters(format!("empty interval [{lo},{hi})")));
        }
        Ok(Interval {
            lo,
            hi,
            full: false,
        })
    }

    pub fn full() -> Self {
        Interval {
            lo: CirclePoint::zero(),
            hi: CirclePoint::zero(),
            full: true,
        }
    }

    /// The arc starting at `lo` of length `len ∈ (0, 1]`.
    pub fn with_length(lo: CirclePoint, len: &Scalar) -> Result<Self> {
        if !len.is_positive() || *len > Scalar::one() {
            return Err(Error::BadLengths(format!(
                "arc length {len} outside (0, 1]"
            )));
        }
        if *len == Scalar::one() {
            return Ok(Interval::full());
        }
        let hi = lo.shift(len);
        Ok(Interval {
            lo,
            hi,
            full: false,
        })
    }

    pub fn ratio(lo: (i64, i64), hi: (i64, i64)) -> Result<Self> {
        Interval::new(
            CirclePoint::ratio(lo.0, lo.1),
            CirclePoint::ratio(hi.0, hi.1),
        )
    }

    pub fn lo(&self) -> &CirclePoint {
        &self.lo
    }

    pub fn hi(&self) -> &CirclePoint {
        &self.hi
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn wraps(&self) -> bool {
        !self.full && self.lo > self.hi && !self.hi.is_zero()
    }

    pub fn length(&self) -> Scalar {
        if self.full {
            Scalar::one()
        } else {
            self.hi.offset_from(&self.lo)
        }
    }

    /// `x ∈ [lo, hi)`.
    pub fn contains(&self, x: &CirclePoint) -> bool {
        self.full || x.offset_from(&self.lo) < self.length()
    }

    /// `x ∈ (lo, hi)`.
    pub fn contains_open(&self, x: &CirclePoint) -> bool {
        if self.full {
            return true;
        }
        let o = x.offset_from(&self.lo);
        !o.is_zero() && o < self.length()
    }

    /// `x ∈ [lo, hi]`.
    pub fn contains_closed(&self, x: &CirclePoint) -> bool {
        self.full || x.offset_from(&self.lo) <= self.length()
    }

    /// Whether the open arcs are disjoint.
    pub fn essentially_disjoint(&self, other: &Interval) -> bool {
        if self.full || other.full {
            return false;
        }
        let o = other.lo.offset_from(&self.lo);
        o >= self.length() && Scalar::one() - &o >= other.length()
    }

    pub fn shifted(&self, t: &Scalar) -> Interval {
        if self.full {
            return self.clone();
        }
        Interval {
            lo: self.lo.shift(t),
            hi: self.hi.shift(t),
            full: false,
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full {
            write!(f, "[0,1)")
        } else if self.hi.is_zero() {
            write!(f, "[{},1)", self.lo)
        } else {
            write!(f, "[{},{})", self.lo, self.hi)
        }
    }
}

/// Local isometry `x ↦ eps·x + t` of the circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    pub eps: Orientation,
    pub t: CirclePoint,
}

impl Isometry {
    pub fn new(eps: Orientation, t: CirclePoint) -> Self {
        Isometry { eps, t }
    }

    pub fn identity() -> Self {
        Isometry::translation(CirclePoint::zero())
    }

    pub fn translation(t: CirclePoint) -> Self {
        Isometry {
            eps: Orientation::Preserving,
            t,
        }
    }

    pub fn reflection(t: CirclePoint) -> Self {
        Isometry {
            eps: Orientation::Reversing,
            t,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.eps.is_preserving() && self.t.is_zero()
    }

    pub fn apply(&self, x: &CirclePoint) -> CirclePoint {
        match self.eps {
            Orientation::Preserving => x + &self.t,
            Orientation::Reversing => &self.t - x,
        }
    }

    /// `outer ∘ self`: `ε₂(ε₁x + t₁) + t₂ = ε₁ε₂x + ε₂t₁ + t₂`.
    pub fn then(&self, outer: &Isometry) -> Isometry {
        Isometry {
            eps: self.eps * outer.eps,
            t: outer.apply(&self.t),
        }
    }

    pub fn inverse(&self) -> Isometry {
        match self.eps {
            Orientation::Preserving => Isometry::translation(-&self.t),
            Orientation::Reversing => self.clone(),
        }
    }

    /// Image of a half-open domain, as a half-open arc.
    ///
    /// A reversing branch sends `[lo, hi)` onto `(t − hi, t − lo]`; the
    /// returned arc is `[t − hi, t − lo)`, equal up to its endpoints.
    pub fn image(&self, dom: &Interval) -> Interval {
        if dom.is_full() {
            return Interval::full();
        }
        let len = dom.length();
        let start = match self.eps {
            Orientation::Preserving => self.apply(dom.lo()),
            Orientation::Reversing => self.apply(dom.hi()),
        };
        Interval::with_length(start, &len).expect("positive length")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub domain: Interval,
    pub iso: Isometry,
}

impl Branch {
    pub fn new(domain: Interval, iso: Isometry) -> Self {
        Branch { domain, iso }
    }

    pub fn eps(&self) -> Orientation {
        self.iso.eps
    }

    pub fn t(&self) -> &CirclePoint {
        &self.iso.t
    }

    pub fn image(&self) -> Interval {
        self.iso.image(&self.domain)
    }
}
