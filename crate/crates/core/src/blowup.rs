//! The two-sided blow-up `S± = S × {−,+}` and the action of map classes on it.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::maps::{MapClass, Orientation};
use crate::numeric::{CirclePoint, Scalar};

pub use crate::maps::Side;

/// `x^+` or `x^-`. Ordered lexicographically with `x^- < x^+`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SidedPoint {
    pub base: CirclePoint,
    pub side: Side,
}

impl SidedPoint {
    pub fn new(base: CirclePoint, side: Side) -> Self {
        SidedPoint { base, side }
    }

    pub fn plus(base: CirclePoint) -> Self {
        SidedPoint::new(base, Side::Plus)
    }

    pub fn minus(base: CirclePoint) -> Self {
        SidedPoint::new(base, Side::Minus)
    }
}

impl fmt::Display for SidedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Plus => '+',
            Side::Minus => '-',
        };
        write!(f, "{}^{}", self.base, s)
    }
}

impl fmt::Debug for SidedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn hat(p: &SidedPoint) -> SidedPoint {
    SidedPoint::new(p.base.clone(), p.side.flip())
}

pub fn bar(p: &SidedPoint) -> CirclePoint {
    p.base.clone()
}

/// Action through one-sided germs.
pub fn eval_blowup(f: &MapClass, p: &SidedPoint) -> SidedPoint {
    let iso = f.iso_at(&p.base, p.side);
    SidedPoint::new(iso.apply(&p.base), iso.eps * p.side)
}

/// Whether `(p, q, r)` is positively cyclically ordered.
pub fn cyclic_compare(p: &SidedPoint, q: &SidedPoint, r: &SidedPoint) -> Result<bool> {
    if p == q || q == r || p == r {
        return Err(Error::DegenerateTriple);
    }
    let lt = |a: &SidedPoint, b: &SidedPoint| a.cmp(b) == Ordering::Less;
    Ok((lt(p, q) && lt(q, r)) || (lt(q, r) && lt(r, p)) || (lt(r, p) && lt(p, q)))
}

/// All `p` with `f(p) = p̂`.
pub fn cleanhat_set(f: &MapClass) -> BTreeSet<SidedPoint> {
    let mut candidates: BTreeSet<CirclePoint> = f.breakpoints().into_iter().collect();
    for b in f.branches() {
        if b.eps() != Orientation::Reversing {
            continue;
        }
        let t = b.t().value();
        let half = Scalar::ratio(1, 2);
        for x in [t.half(), t.half() + &half] {
            let x = CirclePoint::new(x);
            if b.domain.is_full() || b.domain.contains_open(&x) {
                candidates.insert(x);
            }
        }
    }
    candidates
        .into_iter()
        .flat_map(|x| [SidedPoint::minus(x.clone()), SidedPoint::plus(x)])
        .filter(|p| eval_blowup(f, p) == hat(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{Branch, Interval, Isometry};

    fn p(n: i64, d: i64) -> CirclePoint {
        CirclePoint::ratio(n, d)
    }

    fn phi() -> MapClass {
        let br =
            |lo, hi, t| Branch::new(Interval::ratio(lo, hi).unwrap(), Isometry::translation(t));
        MapClass::from_branches(vec![
            br((0, 1), (1, 4), p(1, 4)),
            br((1, 4), (1, 2), p(3, 4)),
            br((1, 2), (1, 1), p(0, 1)),
        ])
        .unwrap()
    }

    #[test]
    fn hat_and_bar() {
        let x = SidedPoint::plus(p(0, 1));
        assert_eq!(hat(&x), SidedPoint::minus(p(0, 1)));
        assert_eq!(hat(&hat(&x)), x);
        assert_eq!(bar(&SidedPoint::minus(p(1, 3))), p(1, 3));
    }

    #[test]
    fn action_examples() {
        let rot = MapClass::full(Isometry::translation(p(1, 4)));
        assert_eq!(
            eval_blowup(&rot, &SidedPoint::plus(p(0, 1))),
            SidedPoint::plus(p(1, 4))
        );
        let flip = MapClass::full(Isometry::reflection(p(0, 1)));
        assert_eq!(
            eval_blowup(&flip, &SidedPoint::plus(p(0, 1))),
            SidedPoint::minus(p(0, 1))
        );
        assert_eq!(
            eval_blowup(&phi(), &SidedPoint::minus(p(1, 4))),
            SidedPoint::minus(p(1, 2))
        );
        assert_eq!(
            eval_blowup(&phi(), &SidedPoint::plus(p(1, 4))),
            SidedPoint::plus(p(0, 1))
        );
    }

    #[test]
    fn cyclic_order_examples() {
        let z = p(0, 1);
        let h = p(1, 2);
        assert!(cyclic_compare(
            &SidedPoint::minus(z.clone()),
            &SidedPoint::plus(z.clone()),
            &SidedPoint::minus(h.clone())
        )
        .unwrap());
        assert!(!cyclic_compare(
            &SidedPoint::plus(z.clone()),
            &SidedPoint::minus(z.clone()),
            &SidedPoint::minus(h)
        )
        .unwrap());
        assert!(cyclic_compare(
            &SidedPoint::plus(p(1, 3)),
            &SidedPoint::minus(p(2, 3)),
            &SidedPoint::minus(p(1, 3))
        )
        .unwrap());
        let a = SidedPoint::plus(z);
        assert_eq!(
            cyclic_compare(&a, &a, &SidedPoint::plus(p(1, 3))),
            Err(Error::DegenerateTriple)
        );
    }

    #[test]
    fn cleanhat_examples() {
        assert!(cleanhat_set(&phi()).is_empty());
        let flip = MapClass::full(Isometry::reflection(p(0, 1)));
        let expected: BTreeSet<SidedPoint> = [
            SidedPoint::minus(p(0, 1)),
            SidedPoint::plus(p(0, 1)),
            SidedPoint::minus(p(1, 2)),
            SidedPoint::plus(p(1, 2)),
        ]
        .into_iter()
        .collect();
        assert_eq!(cleanhat_set(&flip), expected);
    }
}
