//! Lifts of map classes to genuine permutations of the circle.
//!
//! A [`Lift`] is a class together with its values at finitely many points;
//! everywhere else it takes the value of the right-continuous representative.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::maps::{MapClass, Side};
use crate::numeric::CirclePoint;

pub const DEFAULT_SING_BOUND: usize = 20;
pub const DEFAULT_ORDER_BOUND: u64 = 10_000;

/// A permutation of finitely many circle points. Fixed points are not stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FinPerm {
    pairs: BTreeMap<CirclePoint, CirclePoint>,
}

impl FinPerm {
    pub fn identity() -> Self {
        FinPerm::default()
    }

    pub fn new(pairs: BTreeMap<CirclePoint, CirclePoint>) -> Result<Self> {
        let pairs: BTreeMap<_, _> = pairs.into_iter().filter(|(x, y)| x != y).collect();
        let dom: BTreeSet<&CirclePoint> = pairs.keys().collect();
        let ran: BTreeSet<&CirclePoint> = pairs.values().collect();
        if dom != ran || ran.len() != pairs.len() {
            return Err(Error::NotBijective(
                "finite permutation domain and range differ".into(),
            ));
        }
        Ok(FinPerm { pairs })
    }

    pub fn pairs(&self) -> &BTreeMap<CirclePoint, CirclePoint> {
        &self.pairs
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn support(&self) -> BTreeSet<CirclePoint> {
        self.pairs.keys().cloned().collect()
    }

    pub fn apply(&self, x: &CirclePoint) -> CirclePoint {
        self.pairs.get(x).cloned().unwrap_or_else(|| x.clone())
    }

    /// Cycle decomposition, each cycle starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<CirclePoint>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.pairs.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut cyc = vec![start.clone()];
            seen.insert(start.clone());
            let mut x = self.apply(start);
            while &x != start {
                seen.insert(x.clone());
                cyc.push(x.clone());
                x = self.apply(&x);
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "()");
        }
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A genuine permutation of the circle representing `cls`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lift {
    cls: MapClass,
    table: BTreeMap<CirclePoint, CirclePoint>,
}

impl Lift {
    /// Validates bijectivity and drops entries at regular points that agree
    /// with the class.
    pub fn new(cls: MapClass, table: BTreeMap<CirclePoint, CirclePoint>) -> Result<Self> {
        let sing: BTreeSet<CirclePoint> = cls.singularities().into_iter().collect();
        if let Some(x) = sing.iter().find(|x| !table.contains_key(x)) {
            return Err(Error::InvalidLift(format!(
                "no value at singular point {x}"
            )));
        }
        let table: BTreeMap<_, _> = table
            .into_iter()
            .filter(|(x, y)| sing.contains(x) || *y != cls.eval(x))
            .collect();
        // values missed by the open branches, plus class values displaced by overrides
        let mut missing: BTreeSet<CirclePoint> = if cls.is_global() {
            BTreeSet::new()
        } else {
            cls.branches()
                .iter()
                .map(|b| b.image().lo().clone())
                .collect()
        };
        for x in table.keys().filter(|x| !sing.contains(x)) {
            missing.insert(cls.eval(x));
        }
        let values: BTreeSet<&CirclePoint> = table.values().collect();
        if values.len() != table.len()
            || values.into_iter().cloned().collect::<BTreeSet<_>>() != missing
        {
            return Err(Error::NotBijective(
                "table values do not fill the gaps left by the branches".into(),
            ));
        }
        Ok(Lift { cls, table })
    }

    /// The lift that agrees with the class everywhere except on a finite permutation.
    pub fn from_finperm(p: &FinPerm) -> Lift {
        Lift {
            cls: MapClass::identity(),
            table: p.pairs.clone(),
        }
    }

    pub fn class(&self) -> &MapClass {
        &self.cls
    }

    pub fn table(&self) -> &BTreeMap<CirclePoint, CirclePoint> {
        &self.table
    }

    pub fn identity() -> Lift {
        Lift {
            cls: MapClass::identity(),
            table: BTreeMap::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cls.is_identity() && self.table.is_empty()
    }

    /// The nontrivial finitely supported part, when the class is trivial.
    pub fn as_finperm(&self) -> Option<FinPerm> {
        if !self.cls.is_identity() {
            return None;
        }
        Some(FinPerm::new(self.table.clone()).expect("a valid lift of the identity"))
    }

    pub fn eval(&self, x: &CirclePoint) -> CirclePoint {
        lift_eval(self, x)
    }
}

impl fmt::Debug for Lift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lift({:?}, {:?})", self.cls, self.table)
    }
}

fn limit_lift(f: &MapClass, side: Side) -> Result<Lift> {
    let table = f
        .singularities()
        .into_iter()
        .map(|x| {
            let y = f.iso_at(&x, side).apply(&x);
            (x, y)
        })
        .collect();
    Lift::new(f.clone(), table)
}

/// The left-continuous representative; bijective exactly on `IET±`.
pub fn left_lift(f: &MapClass) -> Result<Lift> {
    limit_lift(f, Side::Minus)
}

/// The right-continuous representative; bijective exactly on `IET±`.
pub fn right_lift(f: &MapClass) -> Result<Lift> {
    limit_lift(f, Side::Plus)
}

/// All lifts that are left- or right-continuous at every point.
pub fn enumerate_hyperclean_lifts(f: &MapClass) -> Result<Vec<Lift>> {
    enumerate_hyperclean_lifts_bounded(f, DEFAULT_SING_BOUND)
}

pub fn enumerate_hyperclean_lifts_bounded(f: &MapClass, bound: usize) -> Result<Vec<Lift>> {
    let sing = f.singularities();
    if sing.len() > bound {
        return Err(Error::BoundExceeded {
            count: sing.len(),
            bound,
        });
    }
    let choices: Vec<Vec<CirclePoint>> = sing
        .iter()
        .map(|x| {
            let l = f.left_limit(x);
            let r = f.right_limit(x);
            if l == r {
                vec![l]
            } else {
                vec![l, r]
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(sing.len());
    let mut used = BTreeSet::new();
    search(f, &sing, &choices, &mut current, &mut used, &mut out);
    Ok(out)
}

fn search(
    f: &MapClass,
    sing: &[CirclePoint],
    choices: &[Vec<CirclePoint>],
    current: &mut Vec<CirclePoint>,
    used: &mut BTreeSet<CirclePoint>,
    out: &mut Vec<Lift>,
) {
    let i = current.len();
    if i == sing.len() {
        let table = sing.iter().cloned().zip(current.iter().cloned()).collect();
        if let Ok(l) = Lift::new(f.clone(), table) {
            out.push(l);
        }
        return;
    }
    for y in &choices[i] {
        if used.contains(y) {
            continue;
        }
        used.insert(y.clone());
        current.push(y.clone());
        search(f, sing, choices, current, used, out);
        current.pop();
        used.remove(y);
    }
}

pub fn lift_eval(l: &Lift, x: &CirclePoint) -> CirclePoint {
    l.table.get(x).cloned().unwrap_or_else(|| l.cls.eval(x))
}

/// `l1 ∘ l2`.
pub fn lift_compose(l1: &Lift, l2: &Lift) -> Lift {
    let cls = l1.cls.compose(&l2.cls);
    let inv2 = lift_invert(l2);
    let mut points: BTreeSet<CirclePoint> = l2.table.keys().cloned().collect();
    points.extend(l2.cls.breakpoints());
    points.extend(cls.breakpoints());
    for y in l1.table.keys().cloned().chain(l1.cls.breakpoints()) {
        points.insert(lift_eval(&inv2, &y));
    }
    let table = points
        .into_iter()
        .map(|x| {
            let y = lift_eval(l1, &lift_eval(l2, &x));
            (x, y)
        })
        .collect();
    Lift::new(cls, table).expect("composition of bijections")
}

pub fn lift_invert(l: &Lift) -> Lift {
    let table = l
        .table
        .iter()
        .map(|(x, y)| (y.clone(), x.clone()))
        .collect();
    Lift::new(l.cls.invert(), table).expect("inverse of a bijection")
}

pub fn lift_pow(l: &Lift, n: i64) -> Lift {
    let base = if n < 0 { lift_invert(l) } else { l.clone() };
    (0..n.unsigned_abs()).fold(Lift::identity(), |acc, _| lift_compose(&acc, &base))
}

/// Least `n ≤ bound` with `lⁿ = id`, if any.
pub fn lift_order(l: &Lift, bound: u64) -> Option<u64> {
    let mut acc = l.clone();
    for n in 1..=bound {
        if acc.is_identity() {
            return Some(n);
        }
        acc = lift_compose(&acc, l);
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointContinuity {
    Left,
    Right,
    /// Both one-sided limits coincide with the value.
    Both,
    /// Neither one-sided limit: an isolated point of the graph.
    Isolated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Continuity {
    AllLeft,
    AllRight,
    Mixed,
    NotHyperclean,
}

impl fmt::Display for Continuity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Continuity::AllLeft => "all-left",
            Continuity::AllRight => "all-right",
            Continuity::Mixed => "mixed",
            Continuity::NotHyperclean => "not-hyperclean",
        };
        f.write_str(s)
    }
}

impl fmt::Display for PointContinuity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointContinuity::Left => "left",
            PointContinuity::Right => "right",
            PointContinuity::Both => "both",
            PointContinuity::Isolated => "isolated",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityProfile {
    pub points: Vec<(CirclePoint, PointContinuity)>,
    pub overall: Continuity,
}

/// Continuity at every point of the table.
pub fn continuity_profile(l: &Lift) -> ContinuityProfile {
    let points: Vec<(CirclePoint, PointContinuity)> = l
        .table
        .iter()
        .map(|(x, y)| {
            let left = l.cls.left_limit(x) == *y;
            let right = l.cls.right_limit(x) == *y;
            let tag = match (left, right) {
                (true, true) => PointContinuity::Both,
                (true, false) => PointContinuity::Left,
                (false, true) => PointContinuity::Right,
                (false, false) => PointContinuity::Isolated,
            };
            (x.clone(), tag)
        })
        .collect();
    let all = |ok: &dyn Fn(PointContinuity) -> bool| points.iter().all(|(_, t)| ok(*t));
    let overall = if !all(&|t| t != PointContinuity::Isolated) {
        Continuity::NotHyperclean
    } else if all(&|t| t != PointContinuity::Right) {
        Continuity::AllLeft
    } else if all(&|t| t != PointContinuity::Left) {
        Continuity::AllRight
    } else {
        Continuity::Mixed
    };
    ContinuityProfile { points, overall }
}

pub fn is_hyperclean(l: &Lift) -> bool {
    continuity_profile(l).overall != Continuity::NotHyperclean
}

/// No element of the set is a nontrivial finitely supported permutation.
pub fn is_clean(lifts: &[Lift]) -> bool {
    lifts
        .iter()
        .all(|l| !(l.cls.is_identity() && !l.table.is_empty()))
}

/// Evaluates a word whose class-level product is trivial and returns the
/// finitely supported permutation it leaves behind.
///
/// Words are read left to right as a composition `a b = a ∘ b`; generator
/// names are matched greedily, longest first, and `'` or `^-1` after a name
/// inverts it. Whitespace and `*` are ignored.
pub fn word_support(gens: &[(String, Lift)], word: &str) -> Result<FinPerm> {
    let letters = parse_word(gens, word)?;
    let lifted: Vec<Lift> = letters
        .iter()
        .map(|&(i, inv)| {
            if inv {
                lift_invert(&gens[i].1)
            } else {
                gens[i].1.clone()
            }
        })
        .collect();
    let cls = lifted
        .iter()
        .fold(MapClass::identity(), |acc, l| acc.compose(l.class()));
    if !cls.is_identity() {
        return Err(Error::ClassNotIdentity);
    }
    let total = lifted
        .iter()
        .fold(Lift::identity(), |acc, l| lift_compose(&acc, l));
    Ok(total.as_finperm().expect("class is trivial"))
}

fn parse_word(gens: &[(String, Lift)], word: &str) -> Result<Vec<(usize, bool)>> {
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(gens[i].0.len()));
    let mut out = Vec::new();
    let mut rest = word;
    let syntax = |rest: &str, msg: &str| Error::Syntax {
        line: 1,
        col: word.len() - rest.len() + 1,
        msg: msg.to_string(),
    };
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '*');
        if rest.is_empty() {
            break;
        }
        let Some(&i) = order
            .iter()
            .find(|&&i| !gens[i].0.is_empty() && rest.starts_with(gens[i].0.as_str()))
        else {
            return Err(syntax(rest, "unknown generator"));
        };
        rest = &rest[gens[i].0.len()..];
        let mut inv = false;
        loop {
            if let Some(r) = rest.strip_prefix('\'') {
                rest = r;
                inv = !inv;
            } else if let Some(r) = rest.strip_prefix("^-1") {
                rest = r;
                inv = !inv;
            } else {
                break;
            }
        }
        out.push((i, inv));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{Branch, Interval, Isometry, Orientation};

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

    fn phi() -> MapClass {
        MapClass::from_branches(vec![
            br((0, 1), (1, 4), P, (1, 4)),
            br((1, 4), (1, 2), P, (-1, 4)),
            br((1, 2), (1, 1), P, (0, 1)),
        ])
        .unwrap()
    }

    fn f132() -> MapClass {
        MapClass::from_branches(vec![
            br((0, 1), (1, 3), R, (1, 3)),
            br((1, 3), (2, 3), P, (1, 3)),
            br((2, 3), (1, 1), P, (-1, 3)),
        ])
        .unwrap()
    }

    type Frac = (i64, i64);

    fn table(pairs: &[(Frac, Frac)]) -> BTreeMap<CirclePoint, CirclePoint> {
        pairs
            .iter()
            .map(|&(x, y)| (p(x.0, x.1), p(y.0, y.1)))
            .collect()
    }

    #[test]
    fn left_lift_of_involution() {
        let l = left_lift(&phi()).unwrap();
        assert_eq!(
            l.table(),
            &table(&[((0, 1), (0, 1)), ((1, 4), (1, 2)), ((1, 2), (1, 4))])
        );
        assert!(lift_compose(&l, &l).is_identity());
        assert_eq!(lift_order(&l, 10), Some(2));
    }

    #[test]
    fn rotation_lifts() {
        let r = MapClass::full(Isometry::translation(p(1, 3)));
        let l = left_lift(&r).unwrap();
        assert_eq!(l, right_lift(&r).unwrap());
        assert!(l.table().is_empty());
        assert_eq!(lift_order(&l, 10), Some(3));
        let back = left_lift(&r.invert()).unwrap();
        assert!(lift_compose(&l, &back).is_identity());
    }

    #[test]
    fn mixed_class_has_no_one_sided_lift() {
        assert!(matches!(left_lift(&f132()), Err(Error::NotBijective(_))));
        assert!(matches!(right_lift(&f132()), Err(Error::NotBijective(_))));
    }

    #[test]
    fn hyperclean_lifts_of_132_flip() {
        let lifts = enumerate_hyperclean_lifts(&f132()).unwrap();
        assert_eq!(lifts.len(), 2);
        let pts = [p(0, 1), p(1, 3), p(2, 3)];
        for l in &lifts {
            assert!(is_hyperclean(l));
            assert_eq!(lift_order(l, 10), Some(6));
            let sq = lift_compose(l, l).as_finperm().unwrap();
            assert_eq!(sq.support(), pts.iter().cloned().collect());
            assert_eq!(sq.cycles().len(), 1);
        }
        let (q1, q2) = (&lifts[0], &lifts[1]);
        assert!(lift_compose(q1, q2).is_identity());
    }

    #[test]
    fn overrides_and_bijectivity() {
        // swap two regular points of the identity
        let t = table(&[((1, 5), (2, 5)), ((2, 5), (1, 5))]);
        let l = Lift::new(MapClass::identity(), t).unwrap();
        assert!(!is_clean(std::slice::from_ref(&l)));
        assert!(!is_hyperclean(&l));
        assert_eq!(lift_order(&l, 10), Some(2));
        // a single override is not a bijection
        let t = table(&[((1, 5), (2, 5))]);
        assert!(matches!(
            Lift::new(MapClass::identity(), t),
            Err(Error::NotBijective(_))
        ));
        // missing a singular point
        let t = table(&[((0, 1), (0, 1))]);
        assert!(matches!(Lift::new(phi(), t), Err(Error::InvalidLift(_))));
        // redundant override is dropped
        let t = table(&[((1, 5), (1, 5))]);
        assert!(Lift::new(MapClass::identity(), t).unwrap().is_identity());
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let l = enumerate_hyperclean_lifts(&f132()).unwrap().remove(0);
        let t = table(&[((1, 5), (2, 5)), ((2, 5), (1, 5))]);
        let perm = Lift::new(MapClass::identity(), t).unwrap();
        let m = lift_compose(&l, &perm);
        assert!(lift_compose(&m, &lift_invert(&m)).is_identity());
        assert!(lift_compose(&lift_invert(&m), &m).is_identity());
        for k in 0..30 {
            let x = p(k, 30);
            assert_eq!(m.eval(&x), l.eval(&perm.eval(&x)));
        }
    }

    #[test]
    fn words() {
        let r = left_lift(&MapClass::full(Isometry::translation(p(1, 3)))).unwrap();
        let gens = vec![("r".to_string(), r)];
        assert!(word_support(&gens, "rrr").unwrap().is_identity());
        assert!(word_support(&gens, "r r' ").unwrap().is_identity());
        assert_eq!(word_support(&gens, "rr"), Err(Error::ClassNotIdentity));
        assert!(matches!(
            word_support(&gens, "rx"),
            Err(Error::Syntax { col: 2, .. })
        ));

        let q = enumerate_hyperclean_lifts(&f132()).unwrap().remove(0);
        let gens = vec![("q".to_string(), q)];
        let fp = word_support(&gens, "qq").unwrap();
        assert_eq!(fp.support().len(), 3);
        assert!(word_support(&gens, "qq^-1").unwrap().is_identity());

        let l = left_lift(&phi()).unwrap();
        let gens = vec![("L".to_string(), l)];
        assert!(word_support(&gens, "LL").unwrap().is_identity());
    }

    #[test]
    fn profiles() {
        let l = left_lift(&phi()).unwrap();
        assert_eq!(continuity_profile(&l).overall, Continuity::AllLeft);
        let r = right_lift(&phi()).unwrap();
        assert_eq!(continuity_profile(&r).overall, Continuity::AllRight);
        let lifts = enumerate_hyperclean_lifts(&f132()).unwrap();
        for l in &lifts {
            assert_eq!(continuity_profile(l).overall, Continuity::Mixed);
        }
    }
}
