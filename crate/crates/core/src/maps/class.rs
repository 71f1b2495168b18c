use std::collections::BTreeSet;

use super::interval::{Branch, Interval, Isometry, Orientation, Side};
use crate::error::{Error, Result};
use crate::numeric::{CirclePoint, Scalar};

/// A piecewise isometric transformation of the circle, up to finite indeterminacy.
///
/// Always held in canonical form: branches sorted by `lo` with the wrapping
/// branch (if any) last, and no two cyclically adjacent branches carried by
/// the same isometry. Equality of classes is therefore structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapClass {
    branches: Vec<Branch>,
}

impl MapClass {
    pub fn identity() -> Self {
        MapClass::full(Isometry::identity())
    }

    /// A single isometry of the whole circle.
    pub fn full(iso: Isometry) -> Self {
        MapClass {
            branches: vec![Branch::new(Interval::full(), iso)],
        }
    }

    /// Validates and canonicalizes a list of branches.
    pub fn from_branches(mut bs: Vec<Branch>) -> Result<Self> {
        if bs.is_empty() {
            return Err(Error::Overlap("no branches".into()));
        }
        if bs.len() == 1 {
            let b = bs.pop().unwrap();
            if b.domain.length() != Scalar::one() {
                return Err(Error::Overlap(format!(
                    "{:?} does not cover the circle",
                    b.domain
                )));
            }
            return Ok(MapClass::full(b.iso));
        }
        if bs.iter().any(|b| b.domain.is_full()) {
            return Err(Error::Overlap("full-circle branch alongside others".into()));
        }
        bs.sort_by(|x, y| x.domain.lo().cmp(y.domain.lo()));
        let chained =
            (0..bs.len()).all(|i| bs[i].domain.hi() == bs[(i + 1) % bs.len()].domain.lo());
        let total = bs
            .iter()
            .fold(Scalar::zero(), |acc, b| acc + b.domain.length());
        if !chained || total != Scalar::one() {
            return Err(Error::Overlap(
                "branch domains do not partition the circle".into(),
            ));
        }
        let mut images: Vec<Interval> = bs.iter().map(Branch::image).collect();
        images.sort_by(|x, y| x.lo().cmp(y.lo()));
        let tiles = (0..images.len())
            .all(|i| images[i].hi() == images[(i + 1) % images.len()].lo())
            && images.windows(2).all(|w| w[0].lo() != w[1].lo());
        if !tiles {
            return Err(Error::NotBijective("branch images overlap".into()));
        }
        Ok(MapClass::from_cuts(
            bs.into_iter()
                .map(|b| (b.domain.lo().clone(), b.iso))
                .collect(),
        ))
    }

    /// Builds the canonical class from arc starts (strictly increasing) and
    /// the isometry carried on each arc up to the next start.
    pub(crate) fn from_cuts(cuts: Vec<(CirclePoint, Isometry)>) -> Self {
        debug_assert!(cuts.windows(2).all(|w| w[0].0 < w[1].0));
        let n = cuts.len();
        if n == 0 {
            return MapClass::identity();
        }
        let kept: Vec<&(CirclePoint, Isometry)> = (0..n)
            .filter(|&i| cuts[i].1 != cuts[(i + n - 1) % n].1)
            .map(|i| &cuts[i])
            .collect();
        if kept.is_empty() {
            return MapClass::full(cuts[0].1.clone());
        }
        let k = kept.len();
        let branches = (0..k)
            .map(|i| {
                let lo = kept[i].0.clone();
                let hi = kept[(i + 1) % k].0.clone();
                Branch::new(
                    Interval::new(lo, hi).expect("distinct cuts"),
                    kept[i].1.clone(),
                )
            })
            .collect();
        MapClass { branches }
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn is_identity(&self) -> bool {
        self.branches.len() == 1 && self.branches[0].iso.is_identity()
    }

    /// Whether the class is a single isometry of the whole circle.
    pub fn is_global(&self) -> bool {
        self.branches.len() == 1
    }

    /// Cut points of the canonical form (empty for a global isometry).
    pub fn breakpoints(&self) -> Vec<CirclePoint> {
        if self.is_global() {
            return Vec::new();
        }
        self.branches
            .iter()
            .map(|b| b.domain.lo().clone())
            .collect()
    }

    fn branch_index(&self, x: &CirclePoint, side: Side) -> usize {
        if self.is_global() {
            return 0;
        }
        let pp = match side {
            Side::Plus => self.branches.partition_point(|b| b.domain.lo() <= x),
            Side::Minus => self.branches.partition_point(|b| b.domain.lo() < x),
        };
        if pp == 0 {
            self.branches.len() - 1
        } else {
            pp - 1
        }
    }

    /// The branch whose domain contains `x` on the given side.
    pub fn branch_at(&self, x: &CirclePoint, side: Side) -> &Branch {
        &self.branches[self.branch_index(x, side)]
    }

    /// Germ of the class on one side of `x`.
    pub fn iso_at(&self, x: &CirclePoint, side: Side) -> &Isometry {
        &self.branch_at(x, side).iso
    }

    /// Value of the right-continuous representative.
    pub fn eval(&self, x: &CirclePoint) -> CirclePoint {
        self.iso_at(x, Side::Plus).apply(x)
    }

    pub fn left_limit(&self, x: &CirclePoint) -> CirclePoint {
        self.iso_at(x, Side::Minus).apply(x)
    }

    pub fn right_limit(&self, x: &CirclePoint) -> CirclePoint {
        self.iso_at(x, Side::Plus).apply(x)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &MapClass) -> MapClass {
        let mut cuts: BTreeSet<CirclePoint> = g.breakpoints().into_iter().collect();
        for y in self.breakpoints() {
            for b in &g.branches {
                let x = b.iso.inverse().apply(&y);
                if b.domain.contains(&x) {
                    cuts.insert(x);
                }
            }
        }
        if cuts.is_empty() {
            return MapClass::full(g.branches[0].iso.then(&self.branches[0].iso));
        }
        let pieces = cuts
            .into_iter()
            .map(|c| {
                let inner = g.iso_at(&c, Side::Plus);
                let outer = self.iso_at(&inner.apply(&c), inner.eps * Side::Plus);
                let iso = inner.then(outer);
                (c, iso)
            })
            .collect();
        MapClass::from_cuts(pieces)
    }

    pub fn invert(&self) -> MapClass {
        if self.is_global() {
            return MapClass::full(self.branches[0].iso.inverse());
        }
        let mut cuts: Vec<(CirclePoint, Isometry)> = self
            .branches
            .iter()
            .map(|b| (b.image().lo().clone(), b.iso.inverse()))
            .collect();
        cuts.sort_by(|x, y| x.0.cmp(&y.0));
        MapClass::from_cuts(cuts)
    }

    pub fn pow(&self, n: i64) -> MapClass {
        let base = if n < 0 { self.invert() } else { self.clone() };
        (0..n.unsigned_abs()).fold(MapClass::identity(), |acc, _| acc.compose(&base))
    }

    /// `r ∘ self ∘ r⁻¹`.
    pub fn conjugate_by(&self, r: &MapClass) -> MapClass {
        r.compose(self).compose(&r.invert())
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.branches
            .iter()
            .all(|b| b.eps() == Orientation::Preserving)
    }

    pub fn is_orientation_reversing(&self) -> bool {
        self.branches
            .iter()
            .all(|b| b.eps() == Orientation::Reversing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: i64, d: i64) -> CirclePoint {
        CirclePoint::ratio(n, d)
    }

    fn br(lo: (i64, i64), hi: (i64, i64), eps: Orientation, t: (i64, i64)) -> Branch {
        Branch::new(
            Interval::ratio(lo, hi).unwrap(),
            Isometry::new(eps, p(t.0, t.1)),
        )
    }

    use Orientation::{Preserving as P, Reversing as R};

    fn rotation(n: i64, d: i64) -> MapClass {
        MapClass::full(Isometry::translation(p(n, d)))
    }

    fn phi() -> MapClass {
        MapClass::from_branches(vec![
            br((0, 1), (1, 4), P, (1, 4)),
            br((1, 4), (1, 2), P, (-1, 4)),
            br((1, 2), (1, 1), P, (0, 1)),
        ])
        .unwrap()
    }

    #[test]
    fn merges_identity_pieces() {
        let f = MapClass::from_branches(vec![
            br((0, 1), (1, 2), P, (0, 1)),
            br((1, 2), (1, 1), P, (0, 1)),
        ])
        .unwrap();
        assert_eq!(f, MapClass::identity());
    }

    #[test]
    fn merges_across_zero() {
        let f = MapClass::from_branches(vec![
            br((0, 1), (1, 2), P, (1, 2)),
            br((1, 2), (1, 1), P, (1, 2)),
        ])
        .unwrap();
        assert_eq!(f, rotation(1, 2));
        assert!(f.branches()[0].domain.is_full());
    }

    #[test]
    fn rejects_overlapping_images() {
        // both images are [1/2,1)
        let err = MapClass::from_branches(vec![
            br((0, 1), (1, 2), P, (1, 2)),
            br((1, 2), (1, 1), P, (0, 1)),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::NotBijective(_)));
        // x+1/4 on both halves tiles, so it is accepted
        let ok = MapClass::from_branches(vec![
            br((0, 1), (1, 2), P, (1, 4)),
            br((1, 2), (1, 1), P, (1, 4)),
        ]);
        assert_eq!(ok.unwrap(), rotation(1, 4));
    }

    #[test]
    fn rejects_bad_partition() {
        let err = MapClass::from_branches(vec![
            br((0, 1), (1, 2), P, (0, 1)),
            br((1, 4), (1, 1), P, (0, 1)),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::Overlap(_)));
        let err = MapClass::from_branches(vec![br((0, 1), (1, 2), P, (0, 1))]).unwrap_err();
        assert!(matches!(err, Error::Overlap(_)));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            rotation(1, 3).compose(&rotation(2, 3)),
            MapClass::identity()
        );
        assert_eq!(phi().compose(&phi()), MapClass::identity());
        let flip = MapClass::full(Isometry::reflection(p(0, 1)));
        assert_eq!(flip.compose(&flip), MapClass::identity());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(rotation(1, 3).invert(), rotation(2, 3));
        assert_eq!(MapClass::identity().invert(), MapClass::identity());
        assert_eq!(phi().invert(), phi());
        let f = MapClass::from_branches(vec![
            br((0, 1), (1, 2), R, (1, 2)),
            br((1, 2), (3, 4), P, (1, 4)),
            br((3, 4), (1, 1), P, (-1, 4)),
        ])
        .unwrap();
        assert_eq!(f.compose(&f.invert()), MapClass::identity());
        assert_eq!(f.invert().compose(&f), MapClass::identity());
    }

    #[test]
    fn mixed_orientation_compose_evaluates_pointwise() {
        let f = MapClass::from_branches(vec![
            br((0, 1), (1, 3), R, (1, 3)),
            br((1, 3), (2, 3), P, (1, 3)),
            br((2, 3), (1, 1), P, (-1, 3)),
        ])
        .unwrap();
        let g = phi();
        let fg = f.compose(&g);
        for k in 0..48 {
            let x = p(2 * k + 1, 96);
            assert_eq!(fg.eval(&x), f.eval(&g.eval(&x)));
        }
    }
}
