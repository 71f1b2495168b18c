//! Named maps and the constructive gadgets built from them.

use std::collections::BTreeSet;

use num::BigRational;

use crate::error::{Error, Result};
use crate::maps::{
    from_keane, keane_form, permute_lengths, ArcSet, ClosedArc, Interval, Isometry, KeaneForm,
    MapClass, Side,
};
use crate::numeric::{CirclePoint, Scalar};

pub fn rotation(t: CirclePoint) -> MapClass {
    MapClass::full(Isometry::translation(t))
}

/// `x ↦ −x`.
pub fn global_flip() -> MapClass {
    MapClass::full(Isometry::reflection(CirclePoint::zero()))
}

/// Assigns an isometry to each arc between consecutive cuts.
fn piecewise(cuts: BTreeSet<CirclePoint>, iso_for: impl Fn(&CirclePoint) -> Isometry) -> MapClass {
    MapClass::from_cuts(
        cuts.into_iter()
            .map(|c| {
                let iso = iso_for(&c);
                (c, iso)
            })
            .collect(),
    )
}

/// The involution exchanging `I` and `J` by translation.
pub fn exchange(i: &Interval, j: &Interval) -> Result<MapClass> {
    if i.length() != j.length() {
        return Err(Error::LengthMismatch(format!("{i:?} and {j:?}")));
    }
    if i.is_full() || !i.essentially_disjoint(j) {
        return Err(Error::Overlap(format!("{i:?} and {j:?} overlap")));
    }
    let to_j = Isometry::translation(j.lo() - i.lo());
    let to_i = Isometry::translation(i.lo() - j.lo());
    let cuts = [i.lo(), i.hi(), j.lo(), j.hi()]
        .into_iter()
        .cloned()
        .collect();
    Ok(piecewise(cuts, |c| {
        if i.contains(c) {
            to_j.clone()
        } else if j.contains(c) {
            to_i.clone()
        } else {
            Isometry::identity()
        }
    }))
}

/// Rotation by `theta` of `I` with its endpoints identified; identity elsewhere.
pub fn partial_rotation(i: &Interval, theta: &Scalar) -> MapClass {
    let len = i.length();
    let q = Scalar::from(BigRational::from_integer((theta / &len).floor()));
    let theta = theta - &(&q * &len);
    if theta.is_zero() {
        return MapClass::identity();
    }
    if i.is_full() {
        return rotation(CirclePoint::new(theta));
    }
    let split = i.lo().shift(&(&len - &theta));
    let fwd = Isometry::translation(CirclePoint::new(theta.clone()));
    let back = Isometry::translation(CirclePoint::new(&theta - &len));
    let cuts = [i.lo(), &split, i.hi()].into_iter().cloned().collect();
    let first = Interval::new(i.lo().clone(), split.clone()).expect("0 < theta < len");
    piecewise(cuts, |c| {
        if first.contains(c) {
            fwd.clone()
        } else if i.contains(c) {
            back.clone()
        } else {
            Isometry::identity()
        }
    })
}

/// Reverses `I` in place; identity elsewhere.
pub fn flip_on(i: &Interval) -> MapClass {
    let t = i.lo().shift(&(i.lo().value() + &i.length()));
    let refl = Isometry::reflection(t);
    if i.is_full() {
        return MapClass::full(refl);
    }
    let cuts = [i.lo(), i.hi()].into_iter().cloned().collect();
    piecewise(cuts, |c| {
        if i.contains(c) {
            refl.clone()
        } else {
            Isometry::identity()
        }
    })
}

/// Reverses `[0,a]` and exchanges `[a,b]` with `[b,1]` by translation.
pub fn make_132_flip(a: &CirclePoint, b: &CirclePoint) -> Result<MapClass> {
    let one = Scalar::one();
    if a.is_zero() || b <= a {
        return Err(Error::BadParameters("need 0 < a < b < 1".into()));
    }
    if b.value() - a.value() != &one - b.value() {
        return Err(Error::BadParameters("need b - a = 1 - b".into()));
    }
    let zero = CirclePoint::zero();
    let first = Interval::new(zero.clone(), a.clone())?;
    let second = Interval::new(a.clone(), b.clone())?;
    let third = Interval::new(b.clone(), zero)?;
    let f = flip_on(&first);
    let x = exchange(&second, &third)?;
    Ok(f.compose(&x))
}

/// Reverses each of three consecutive intervals `[0,l1]`, `[l1,l1+l2]`, `[l1+l2,1]` in place.
pub fn make_triple_flip(l1: &Scalar, l2: &Scalar, l3: &Scalar) -> Result<MapClass> {
    if !(l1.is_positive() && l2.is_positive() && l3.is_positive()) {
        return Err(Error::BadParameters("lengths must be positive".into()));
    }
    if l1 + l2 + l3.clone() != Scalar::one() {
        return Err(Error::BadParameters("lengths must sum to 1".into()));
    }
    let a = CirclePoint::new(l1.clone());
    let b = CirclePoint::new(l1 + l2);
    let zero = CirclePoint::zero();
    let pieces = [
        Interval::new(zero.clone(), a.clone())?,
        Interval::new(a, b.clone())?,
        Interval::new(b, zero)?,
    ];
    Ok(pieces
        .iter()
        .fold(MapClass::identity(), |acc, i| acc.compose(&flip_on(i))))
}

/// Conjugates by the rotation that moves each breakpoint in turn to 0.
fn normalized_at_breakpoints(f: &MapClass) -> impl Iterator<Item = MapClass> + '_ {
    f.breakpoints().into_iter().map(move |c| {
        let r = rotation(CirclePoint::new(-c.value().clone()));
        f.conjugate_by(&r)
    })
}

fn three_cut_points(g: &MapClass) -> Option<(CirclePoint, CirclePoint)> {
    let bs = g.branches();
    if bs.len() != 3 || !bs[0].domain.lo().is_zero() {
        return None;
    }
    Some((bs[1].domain.lo().clone(), bs[2].domain.lo().clone()))
}

/// Conjugate by a rotation to the output of [`make_132_flip`].
pub fn is_132_flip(f: &MapClass) -> bool {
    normalized_at_breakpoints(f).any(|g| {
        three_cut_points(&g)
            .and_then(|(a, b)| make_132_flip(&a, &b).ok())
            .is_some_and(|h| h == g)
    })
}

/// Conjugate by a rotation to the output of [`make_triple_flip`].
pub fn is_triple_flip(f: &MapClass) -> bool {
    normalized_at_breakpoints(f).any(|g| {
        three_cut_points(&g)
            .and_then(|(a, b)| {
                let l1 = a.value().clone();
                let l2 = b.value() - a.value();
                let l3 = Scalar::one() - b.value();
                make_triple_flip(&l1, &l2, &l3).ok()
            })
            .is_some_and(|h| h == g)
    })
}

/// The commutator `c = f⁻¹ r_t f r_t⁻¹` and how it permutes the arcs `[x, x+t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorReport {
    pub c: MapClass,
    pub blocks: Vec<Interval>,
    /// `c` carries `blocks[i]` onto `blocks[block_perm[i]]`.
    pub block_perm: Vec<usize>,
    pub fixed_free: bool,
}

pub fn comrot(f: &MapClass, t: &CirclePoint) -> Result<CommutatorReport> {
    if !f.is_orientation_preserving() {
        return Err(Error::PreconditionViolated(
            "f must be orientation preserving".into(),
        ));
    }
    if t.is_zero() || !f.min_sing_gap().exceeds(t.value()) {
        return Err(Error::PreconditionViolated(format!(
            "t = {t} is not in ]0, E(f)["
        )));
    }
    let r = rotation(t.clone());
    let c = f.invert().compose(&r).compose(f).compose(&r.invert());
    let sing = f.singularities();
    let blocks: Vec<Interval> = sing
        .iter()
        .map(|x| Interval::with_length(x.clone(), t.value()))
        .collect::<Result<_>>()?;
    let broken = |m: &str| Error::StructureViolated(m.to_string());
    let mut block_perm = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let iso = c.iso_at(b.lo(), Side::Plus);
        if !iso.eps.is_preserving() {
            return Err(broken("block reversed"));
        }
        if c.breakpoints().iter().any(|y| b.contains_open(y)) {
            return Err(broken("c is not a single translation on a block"));
        }
        let target = iso.apply(b.lo());
        let j = sing
            .iter()
            .position(|x| *x == target)
            .ok_or_else(|| broken("block not sent to a block"))?;
        block_perm.push(j);
    }
    let distinct: BTreeSet<usize> = block_perm.iter().copied().collect();
    if distinct.len() != block_perm.len() {
        return Err(broken("block map is not a permutation"));
    }
    let fixed_free = block_perm.iter().enumerate().all(|(i, &j)| i != j);
    if !fixed_free {
        return Err(broken("a block is preserved"));
    }
    let arcs = blocks
        .iter()
        .map(|b| ClosedArc::new(b.lo().clone(), b.length()))
        .collect();
    if c.essential_support() != ArcSet::from_arcs(arcs) {
        return Err(broken("essential support differs from the union of blocks"));
    }
    Ok(CommutatorReport {
        c,
        blocks,
        block_perm,
        fixed_free,
    })
}

/// A nontrivial element supported on `[0,η] ∪ [2ε,2ε+η] ∪ [λ',λ'+η]`.
///
/// Built from the partial rotation `f` of `[0,ρ]` by `−2ε`, the commutator
/// `c = f⁻¹ r_η f r_η⁻¹`, and the partial rotation `q` of `[λ, λ+ρ]` that
/// carries `[ρ, ρ+η]` onto `[λ', λ'+η]`; the result is `q c q⁻¹`.
pub fn arbsmall(
    rho: &CirclePoint,
    eps: &Scalar,
    eta: &Scalar,
    lambda: &CirclePoint,
    lambda_prime: &CirclePoint,
) -> Result<MapClass> {
    let pre = |m: &str| Error::PreconditionViolated(m.to_string());
    let rho_v = rho.value();
    let small_side = if rho_v < &(Scalar::one() - rho_v) {
        rho_v.clone()
    } else {
        Scalar::one() - rho_v
    };
    let five = Scalar::int(5);
    if !eps.is_positive() || eps * &five >= small_side {
        return Err(pre("need 0 < eps < min(rho, 1 - rho)/5"));
    }
    if !eta.is_positive() || eta > eps {
        return Err(pre("need 0 < eta <= eps"));
    }
    let (three, four) = (eps * &Scalar::int(3), eps * &Scalar::int(4));
    for l in [lambda, lambda_prime] {
        if l.value() <= &three || l.value() >= &four {
            return Err(pre("lambda and lambda' must lie in ]3 eps, 4 eps["));
        }
    }
    if lambda_prime < lambda {
        return Err(pre("need lambda <= lambda'"));
    }
    let zero = CirclePoint::zero();
    let base = Interval::new(zero, rho.clone())?;
    let f = partial_rotation(&base, &(rho_v - &(eps * &Scalar::int(2))));
    let r = rotation(CirclePoint::new(eta.clone()));
    let c = f.invert().compose(&r).compose(&f).compose(&r.invert());
    let q_dom = Interval::with_length(lambda.clone(), rho_v)?;
    let q = partial_rotation(&q_dom, lambda_prime.value());
    Ok(c.conjugate_by(&q))
}

/// Partial rotations `p_m, …, p_1` with `p_m ∘ … ∘ p_1 = f`.
///
/// The permutation of the Keane form is bubble-sorted into adjacent
/// transpositions; each transposition exchanges two neighbouring intervals
/// of the current arrangement.
pub fn decompose_partial_rotations(f: &MapClass) -> Result<Vec<MapClass>> {
    if !f.is_orientation_preserving() {
        return Err(Error::NotOrientationPreserving);
    }
    let k = keane_form(f);
    let n = k.len();
    let mut arr = k.sigma().to_vec();
    let mut swaps = Vec::new();
    for pass in 0..n {
        for p in 0..n.saturating_sub(1 + pass) {
            if arr[p] > arr[p + 1] {
                arr.swap(p, p + 1);
                swaps.push(p);
            }
        }
    }
    let mut v = k.lengths().to_vec();
    let mut factors = Vec::with_capacity(swaps.len());
    for p in swaps {
        let mut psi: Vec<usize> = (0..n).collect();
        psi.swap(p, p + 1);
        let form = KeaneForm::plus(v.clone(), psi.clone()).expect("lengths of a Keane form");
        factors.push(from_keane(&form));
        v = permute_lengths(&psi, &v);
    }
    factors.reverse();
    let product = factors
        .iter()
        .fold(MapClass::identity(), |acc, g| acc.compose(g));
    if product != *f {
        return Err(Error::StructureViolated("factors do not recompose".into()));
    }
    Ok(factors)
}

/// The four generators `u, v, w, s` for a given `a ∈ ]1/8, 1/4[`, with `b = 1 − 4a`.
pub fn t_stabr_gadget(
    a: &CirclePoint,
    w_theta: &CirclePoint,
) -> Result<(MapClass, MapClass, MapClass, MapClass)> {
    let av = a.value();
    if av <= &Scalar::ratio(1, 8) || av >= &Scalar::ratio(1, 4) {
        return Err(Error::PreconditionViolated("need 1/8 < a < 1/4".into()));
    }
    let two_a = av + av;
    if (w_theta.value() / &two_a).is_rational() {
        return Err(Error::PreconditionViolated(
            "w must have infinite order".into(),
        ));
    }
    let b = Scalar::one() - &(av * &Scalar::int(4));
    let at = |s: Scalar| CirclePoint::new(s);
    let iv = |lo: Scalar, hi: Scalar| Interval::new(at(lo), at(hi));
    let u = exchange(
        &iv(Scalar::zero(), av.clone())?,
        &iv(&two_a + &b, &(&two_a + &b) + av)?,
    )?;
    let v = exchange(
        &iv(av.clone(), two_a.clone())?,
        &iv(&(&two_a + &b) + av, Scalar::one())?,
    )?;
    let w = partial_rotation(&iv(Scalar::zero(), two_a)?, w_theta.value());
    let s = global_flip();
    Ok((u, v, w, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifts::{enumerate_hyperclean_lifts, lift_compose, lift_order};
    use crate::numeric::{lambda_contains, SubgroupPresentation};

    fn p(n: i64, d: i64) -> CirclePoint {
        CirclePoint::ratio(n, d)
    }

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval {
        Interval::ratio(lo, hi).unwrap()
    }

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn exchange_examples() {
        let x = exchange(&iv((0, 1), (1, 4)), &iv((1, 4), (1, 2))).unwrap();
        assert_eq!(x.branches().len(), 3);
        assert!(x.compose(&x).is_identity());
        assert_eq!(x.eval(&p(1, 8)), p(3, 8));
        assert!(matches!(
            exchange(&iv((0, 1), (1, 4)), &iv((1, 4), (2, 3))),
            Err(Error::LengthMismatch(_))
        ));
        assert!(matches!(
            exchange(&iv((0, 1), (1, 4)), &iv((1, 8), (3, 8))),
            Err(Error::Overlap(_))
        ));
        // wrapping interval
        let y = exchange(&iv((7, 8), (1, 8)), &iv((1, 4), (1, 2))).unwrap();
        assert!(y.compose(&y).is_identity());
        assert_eq!(y.eval(&p(15, 16)), p(5, 16));
    }

    #[test]
    fn partial_rotation_examples() {
        let g = partial_rotation(&iv((0, 1), (1, 2)), &r(1, 8));
        assert!(!g.is_identity());
        assert!(g.pow(4).is_identity());
        assert!(g.is_partial_rotation());
        assert_eq!(partial_rotation(&iv((0, 1), (1, 2)), &r(5, 8)), g);
        assert!(partial_rotation(&iv((0, 1), (1, 2)), &r(1, 2)).is_identity());
        assert_eq!(
            partial_rotation(&Interval::full(), &r(1, 3)),
            rotation(p(1, 3))
        );
    }

    #[test]
    fn flips() {
        assert!(global_flip().compose(&global_flip()).is_identity());
        let g = flip_on(&iv((1, 4), (1, 2)));
        assert_eq!(g.eval(&p(5, 16)), p(7, 16));
        assert!(g.compose(&g).is_identity());
        let f = make_132_flip(&p(1, 3), &p(2, 3)).unwrap();
        assert!(f.compose(&f).is_identity());
        assert_eq!(f.singularities(), vec![p(0, 1), p(1, 3), p(2, 3)]);
        assert!(is_132_flip(&f));
        assert!(!is_triple_flip(&f));
        assert!(make_132_flip(&p(1, 3), &p(1, 2)).is_err());
        let t = make_triple_flip(&r(1, 2), &r(1, 4), &r(1, 4)).unwrap();
        assert!(t.compose(&t).is_identity());
        assert!(t.is_orientation_reversing());
        assert!(is_triple_flip(&t));
        assert!(!is_132_flip(&t));
        assert!(!is_triple_flip(&rotation(p(1, 3))));
        // recognizers see through rotations
        let rot = rotation(p(1, 5));
        assert!(is_triple_flip(&t.conjugate_by(&rot)));
        assert!(is_132_flip(&f.conjugate_by(&rot)));
    }

    #[test]
    fn comrot_examples() {
        let rep = comrot(&rotation(p(1, 3)), &p(1, 7)).unwrap();
        assert!(rep.c.is_identity());
        assert!(rep.blocks.is_empty());
        let x = exchange(&iv((0, 1), (1, 4)), &iv((1, 4), (1, 2))).unwrap();
        let rep = comrot(&x, &p(1, 8)).unwrap();
        assert_eq!(
            rep.blocks,
            vec![iv((0, 1), (1, 8)), iv((1, 4), (3, 8)), iv((1, 2), (5, 8))]
        );
        assert!(rep.fixed_free);
        assert_eq!(rep.block_perm.len(), 3);
        let j = rep.block_perm[0];
        assert_ne!(rep.block_perm[j], 0);
        assert!(matches!(
            comrot(&x, &p(1, 4)),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            comrot(&global_flip(), &p(1, 8)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn arbsmall_examples() {
        let g = arbsmall(&p(1, 2), &r(1, 20), &r(1, 20), &p(7, 40), &p(7, 40)).unwrap();
        assert!(!g.is_identity());
        assert!(g.support_diameter() <= r(1, 4));
        let arcs = g.essential_support();
        assert!(arcs.arcs().iter().all(|a| a.lo.value() + &a.len <= r(1, 4)));
        assert!(matches!(
            arbsmall(&p(1, 2), &r(1, 8), &r(1, 20), &p(7, 40), &p(7, 40)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn decomposition_examples() {
        let rot = rotation(p(1, 3));
        assert_eq!(decompose_partial_rotations(&rot).unwrap(), vec![rot]);
        let x = exchange(&iv((0, 1), (1, 4)), &iv((1, 4), (1, 2))).unwrap();
        assert_eq!(decompose_partial_rotations(&x).unwrap(), vec![x]);
        // σ: 1→3, 2→1, 3→2
        let k = KeaneForm::plus(vec![r(1, 2), r(1, 4), r(1, 4)], vec![2, 0, 1]).unwrap();
        let f = from_keane(&k);
        let factors = decompose_partial_rotations(&f).unwrap();
        assert!(factors.len() <= 3);
        let l = SubgroupPresentation::new(vec![p(1, 4)]).unwrap();
        for g in &factors {
            assert!(g.is_partial_rotation());
            assert!(g.in_lambda(&l));
        }
        assert!(decompose_partial_rotations(&global_flip()).is_err());
        assert!(lambda_contains(&l, &p(3, 4)));
    }

    #[test]
    fn gadget() {
        let a = p(3, 16);
        let theta = CirclePoint::new(Scalar::sqrt_term(1, 4, 2) - Scalar::ratio(1, 4));
        let (u, v, w, s) = t_stabr_gadget(&a, &theta).unwrap();
        assert!(u.compose(&u).is_identity());
        assert!(v.compose(&v).is_identity());
        assert!(s.compose(&s).is_identity());
        assert!(!w.pow(12).is_identity());
        let suv = s.compose(&u).compose(&v);
        assert!(is_triple_flip(&suv));
        assert_eq!(suv, make_triple_flip(&r(3, 8), &r(1, 4), &r(3, 8)).unwrap());
        let lifts = enumerate_hyperclean_lifts(&suv).unwrap();
        assert_eq!(lifts.len(), 2);
        for l in &lifts {
            assert_eq!(lift_order(l, 10), Some(6));
            assert!(!lift_compose(l, l).is_identity());
        }
        assert!(t_stabr_gadget(&p(1, 4), &theta).is_err());
        assert!(t_stabr_gadget(&a, &p(1, 5)).is_err());
    }
}
