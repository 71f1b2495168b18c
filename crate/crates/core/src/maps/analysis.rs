//! Singularities, one-sided translation values, singular gaps, essential
//! support and classification of map classes.

use std::fmt;

use super::class::MapClass;
use super::interval::{Isometry, Orientation, Side};
use crate::error::{Error, Result};
use crate::numeric::{geodesic_dist, CirclePoint, Scalar, SubgroupPresentation};

impl MapClass {
    /// Whether every lift is discontinuous at `x`: the two one-sided germs do
    /// not glue into a single continuous (increasing or decreasing) germ.
    pub fn is_singular_at(&self, x: &CirclePoint) -> bool {
        let left = self.iso_at(x, Side::Minus);
        let right = self.iso_at(x, Side::Plus);
        !(left.eps == right.eps && left.apply(x) == right.apply(x))
    }

    pub fn singularities(&self) -> Vec<CirclePoint> {
        self.breakpoints()
            .into_iter()
            .filter(|x| self.is_singular_at(x))
            .collect()
    }

    /// One-sided translation values `(τ⁻(x), τ⁺(x))`.
    pub fn tau_pm(&self, x: &CirclePoint) -> Result<(CirclePoint, CirclePoint)> {
        if !self.is_orientation_preserving() {
            return Err(Error::NotOrientationPreserving);
        }
        Ok((
            self.iso_at(x, Side::Minus).t.clone(),
            self.iso_at(x, Side::Plus).t.clone(),
        ))
    }

    /// `ν(x) = τ⁺(x) − τ⁻(x)`.
    pub fn nu(&self, x: &CirclePoint) -> Result<CirclePoint> {
        let (minus, plus) = self.tau_pm(x)?;
        Ok(&plus - &minus)
    }

    /// Minimal geodesic distance between two singularities.
    pub fn min_sing_gap(&self) -> Gap {
        let s = self.singularities();
        let mut best: Option<Scalar> = None;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let d = geodesic_dist(&s[i], &s[j]);
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
        }
        best.map_or(Gap::Infinite, Gap::Finite)
    }

    /// Closure of the set where the germ of the class differs from the identity germ.
    pub fn essential_support(&self) -> ArcSet {
        let bs = self.branches();
        let moving: Vec<bool> = bs.iter().map(|b| !b.iso.is_identity()).collect();
        if moving.iter().all(|&m| !m) {
            return ArcSet::empty();
        }
        if moving.iter().all(|&m| m) {
            return ArcSet::full();
        }
        let n = bs.len();
        let start = moving.iter().position(|&m| !m).unwrap();
        let mut arcs = Vec::new();
        let mut run: Option<ClosedArc> = None;
        for k in 1..=n {
            let i = (start + k) % n;
            if moving[i] {
                let len = bs[i].domain.length();
                run = Some(match run {
                    None => ClosedArc::new(bs[i].domain.lo().clone(), len),
                    Some(a) => ClosedArc::new(a.lo, a.len + len),
                });
            } else if let Some(a) = run.take() {
                arcs.push(a);
            }
        }
        ArcSet::from_arcs(arcs)
    }

    pub fn support_diameter(&self) -> Scalar {
        self.essential_support().diameter()
    }

    pub fn classify(&self) -> MapKind {
        if self.is_identity() {
            MapKind::Identity
        } else if self.is_global() && self.is_orientation_preserving() {
            MapKind::Rotation
        } else if self.is_orientation_preserving() {
            MapKind::IetPlus
        } else if self.is_orientation_reversing() {
            MapKind::IetMinus
        } else {
            MapKind::IetBowtie
        }
    }

    pub fn belongs_to(&self, kind: MapKind) -> bool {
        let own = self.classify();
        match kind {
            MapKind::Identity => own == MapKind::Identity,
            MapKind::Rotation => matches!(own, MapKind::Identity | MapKind::Rotation),
            MapKind::IetPlus => self.is_orientation_preserving(),
            MapKind::IetMinus => self.is_orientation_reversing(),
            MapKind::IetPm => self.is_orientation_preserving() || self.is_orientation_reversing(),
            MapKind::IetBowtie => true,
        }
    }

    /// Trivial outside one arc and a rotation of that arc once its endpoints
    /// are identified. Global rotations (and the identity) qualify.
    pub fn is_partial_rotation(&self) -> bool {
        if !self.is_orientation_preserving() {
            return false;
        }
        if self.is_global() {
            return true;
        }
        let bs = self.branches();
        let moving: Vec<usize> = (0..bs.len())
            .filter(|&i| !bs[i].iso.is_identity())
            .collect();
        if moving.len() != 2 {
            return false;
        }
        let (i, j) = (moving[0], moving[1]);
        let (first, second) = if bs[i].domain.hi() == bs[j].domain.lo() {
            (&bs[i], &bs[j])
        } else if bs[j].domain.hi() == bs[i].domain.lo() {
            (&bs[j], &bs[i])
        } else {
            return false;
        };
        let l1 = first.domain.length();
        let l2 = second.domain.length();
        first.iso.t == CirclePoint::new(l2) && second.iso.t == CirclePoint::new(-l1)
    }

    /// Translation values of the orientation-preserving branches, sorted.
    pub fn translation_lengths(&self) -> Vec<CirclePoint> {
        let mut ts: Vec<CirclePoint> = self
            .branches()
            .iter()
            .filter(|b| b.eps() == Orientation::Preserving)
            .map(|b| b.t().clone())
            .collect();
        ts.sort();
        ts
    }

    /// Breakpoints and branch offsets all lie in `Λ`.
    pub fn in_lambda(&self, l: &SubgroupPresentation) -> bool {
        self.breakpoints().iter().all(|x| l.contains(x))
            && self.branches().iter().all(|b| l.contains(b.t()))
    }
}

/// `E(f)`: finite, or infinite when there are fewer than two singularities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gap {
    Finite(Scalar),
    Infinite,
}

impl Gap {
    /// `t < E(f)`.
    pub fn exceeds(&self, t: &Scalar) -> bool {
        match self {
            Gap::Finite(e) => t < e,
            Gap::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            Gap::Finite(e) => Some(e),
            Gap::Infinite => None,
        }
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gap::Finite(e) => write!(f, "{e}"),
            Gap::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Identity,
    Rotation,
    IetPlus,
    IetMinus,
    IetPm,
    IetBowtie,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapKind::Identity => "identity",
            MapKind::Rotation => "rotation",
            MapKind::IetPlus => "IET+",
            MapKind::IetMinus => "IET-",
            MapKind::IetPm => "IET+-",
            MapKind::IetBowtie => "IET-bowtie",
        };
        f.write_str(s)
    }
}

/// Closed arc `[lo, lo + len]`; `len = 1` is the whole circle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClosedArc {
    pub lo: CirclePoint,
    pub len: Scalar,
}

impl ClosedArc {
    pub fn new(lo: CirclePoint, len: Scalar) -> Self {
        ClosedArc { lo, len }
    }

    pub fn hi(&self) -> CirclePoint {
        self.lo.shift(&self.len)
    }

    pub fn contains(&self, x: &CirclePoint) -> bool {
        x.offset_from(&self.lo) <= self.len
    }
}

impl fmt::Debug for ClosedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}+{}]", self.lo, self.lo, self.len)
    }
}

impl fmt::Display for ClosedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len >= Scalar::one() {
            return write!(f, "[0,1]");
        }
        let hi = self.lo.value() + &self.len;
        write!(f, "[{},{}]", self.lo, hi)
    }
}

/// Finite union of closed arcs, normalized to disjoint non-touching arcs sorted by `lo`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcSet {
    arcs: Vec<ClosedArc>,
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet { arcs: Vec::new() }
    }

    pub fn full() -> Self {
        ArcSet {
            arcs: vec![ClosedArc::new(CirclePoint::zero(), Scalar::one())],
        }
    }

    pub fn from_arcs(mut arcs: Vec<ClosedArc>) -> Self {
        if arcs.iter().any(|a| a.len >= Scalar::one()) {
            return ArcSet::full();
        }
        if arcs.is_empty() {
            return ArcSet::empty();
        }
        arcs.sort_by(|a, b| a.lo.cmp(&b.lo));
        // sweep on the line with ends possibly past 1
        let mut merged: Vec<(Scalar, Scalar)> = Vec::new();
        for a in arcs {
            let lo = a.lo.value().clone();
            let hi = &lo + &a.len;
            match merged.last_mut() {
                Some((_, end)) if lo <= *end => {
                    if hi > *end {
                        *end = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        while merged.len() > 1 {
            let first = merged[0].clone();
            let last_end = merged.last().unwrap().1.clone();
            if last_end >= Scalar::one() + &first.0 {
                let wrapped = Scalar::one() + &first.1;
                if wrapped > last_end {
                    merged.last_mut().unwrap().1 = wrapped;
                }
                merged.remove(0);
            } else {
                break;
            }
        }
        if merged.iter().any(|(lo, hi)| hi - lo >= Scalar::one()) {
            return ArcSet::full();
        }
        let mut arcs: Vec<ClosedArc> = merged
            .into_iter()
            .map(|(lo, hi)| {
                let len = &hi - &lo;
                ClosedArc::new(CirclePoint::new(lo), len)
            })
            .collect();
        arcs.sort_by(|a, b| a.lo.cmp(&b.lo));
        ArcSet { arcs }
    }

    pub fn arcs(&self) -> &[ClosedArc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].len >= Scalar::one()
    }

    pub fn contains(&self, x: &CirclePoint) -> bool {
        self.arcs.iter().any(|a| a.contains(x))
    }

    /// Supremum of geodesic distances between points of the union.
    ///
    /// For arcs `A`, `B` the differences `y − x` (`x ∈ A`, `y ∈ B`) sweep an
    /// arc of length `|A| + |B|`; the distance `min(δ, 1 − δ)` peaks at
    /// `δ = 1/2` when that arc reaches it and at an end of the arc otherwise.
    pub fn diameter(&self) -> Scalar {
        let half = Scalar::ratio(1, 2);
        let mut best = Scalar::zero();
        for a in &self.arcs {
            for b in &self.arcs {
                let span = &a.len + &b.len;
                if span >= Scalar::one() {
                    return half;
                }
                let start = (b.lo.value() - a.lo.value() - &a.len).fract();
                let end = &start + &span;
                let reaches = |p: &Scalar| start <= *p && *p <= end;
                if reaches(&half) || reaches(&Scalar::ratio(3, 2)) {
                    return half;
                }
                for d in [start.clone(), end.fract()] {
                    let g = geodesic_dist(&CirclePoint::new(d), &CirclePoint::zero());
                    if g > best {
                        best = g;
                    }
                }
            }
        }
        best
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arcs.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> = self.arcs.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" u "))
    }
}

/// `x ↦ x + t` as a class.
pub fn rotation_class(t: CirclePoint) -> MapClass {
    MapClass::full(Isometry::translation(t))
}
