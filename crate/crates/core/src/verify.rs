//! Named randomized suites checking the library's algebraic claims end to end.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blowup::{cleanhat_set, eval_blowup, SidedPoint};
use crate::constructions::{
    arbsmall, comrot, decompose_partial_rotations, make_132_flip, make_triple_flip, t_stabr_gadget,
};
use crate::io::{parse_lift, parse_map, serialize_lift, serialize_map};
use crate::lifts::{
    continuity_profile, enumerate_hyperclean_lifts, left_lift, lift_compose, lift_order, Continuity,
};
use crate::maps::{
    compose_permutations, from_keane, keane_form, permute_lengths, Gap, KeaneForm, MapClass, Side,
};
use crate::numeric::{lambda_contains, CirclePoint, FieldSpec, Scalar, SubgroupPresentation};
use crate::random::{
    grid_point, random_exchange, random_iet_bowtie, random_iet_plus, random_keane, random_lift,
    random_partial_rotation, Flips, DENOM,
};

pub const SUITES: &[&str] = &[
    "group",
    "keane",
    "comrot",
    "lifts",
    "involution",
    "blowup",
    "genparro",
    "arbsmall",
    "gadget",
    "lambda",
    "serialization",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// Descriptions of the first few failing cases.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            passed: 0,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}/{}", self.name, self.passed, self.total)?;
        for m in &self.failures {
            write!(f, "\n  failed: {m}")?;
        }
        Ok(())
    }
}

/// Runs a suite by name; `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    Some(match name {
        "group" => group(rng),
        "keane" => keane(rng),
        "comrot" => comrot_suite(rng),
        "lifts" => lifts(rng),
        "involution" => involution(rng),
        "blowup" => blowup(rng),
        "genparro" => genparro(rng),
        "arbsmall" => arbsmall_suite(rng),
        "gadget" => gadget(),
        "lambda" => lambda(rng),
        "serialization" => serialization(rng),
        _ => return None,
    })
}

fn group(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("group");
    for _ in 0..1000 {
        let (f, g, h) = (
            random_iet_bowtie(rng, 6),
            random_iet_bowtie(rng, 6),
            random_iet_bowtie(rng, 6),
        );
        let assoc = f.compose(&g).compose(&h) == f.compose(&g.compose(&h));
        let inv = f.compose(&f.invert()).is_identity() && f.invert().compose(&f).is_identity();
        let id = f.compose(&MapClass::identity()) == f && MapClass::identity().compose(&f) == f;
        r.check(assoc && inv && id, || serialize_map(&f));
    }
    r
}

fn keane(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("keane");
    for _ in 0..500 {
        let k = random_keane(rng, 6, DENOM, Flips::None);
        let f = from_keane(&k);
        let n = k.len();
        let mut psi: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(psi.as_mut_slice(), rng);
        let lhs = from_keane(
            &KeaneForm::plus(k.lengths().to_vec(), compose_permutations(&psi, k.sigma())).unwrap(),
        );
        let second =
            from_keane(&KeaneForm::plus(permute_lengths(k.sigma(), k.lengths()), psi).unwrap());
        let roundtrip = from_keane(&keane_form(&f)) == f;
        r.check(lhs == second.compose(&f) && roundtrip, || k.to_string());
    }
    r
}

fn comrot_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("comrot");
    while r.total < 200 {
        let f = random_iet_plus(rng, 6);
        let Gap::Finite(e) = f.min_sing_gap() else {
            continue;
        };
        // t = E(f)·k/16 with 0 < k < 16
        let t = e.scale(&num::BigRational::new(
            rng.gen_range(1..16).into(),
            16.into(),
        ));
        let t = CirclePoint::new(t);
        let res = comrot(&f, &t);
        r.check(res.as_ref().is_ok_and(|rep| rep.fixed_free), || {
            format!("{} t={t}: {res:?}", serialize_map(&f))
        });
    }
    r
}

fn lifts(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("lifts");
    let witnesses = [
        make_132_flip(&CirclePoint::ratio(1, 3), &CirclePoint::ratio(2, 3)).unwrap(),
        make_triple_flip(
            &Scalar::ratio(1, 2),
            &Scalar::ratio(1, 4),
            &Scalar::ratio(1, 4),
        )
        .unwrap(),
    ];
    for f in &witnesses {
        let ls = enumerate_hyperclean_lifts(f).unwrap();
        let ok = ls.len() == 2
            && ls
                .iter()
                .all(|l| lift_order(l, 10) == Some(6) && !lift_compose(l, l).is_identity());
        r.check(ok, || serialize_map(f));
    }
    for _ in 0..100 {
        let p = random_partial_rotation(rng, DENOM);
        let ls = enumerate_hyperclean_lifts(&p).unwrap();
        let tags: BTreeSet<String> = ls
            .iter()
            .map(|l| continuity_profile(l).overall.to_string())
            .collect();
        let want: BTreeSet<String> = [Continuity::AllLeft, Continuity::AllRight]
            .iter()
            .map(ToString::to_string)
            .collect();
        r.check(ls.len() == 2 && tags == want, || serialize_map(&p));
    }
    r
}

fn involution(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("involution");
    for _ in 0..100 {
        let x = random_exchange(rng, DENOM);
        let ok = left_lift(&x).is_ok_and(|l| lift_compose(&l, &l).is_identity());
        r.check(ok, || serialize_map(&x));
    }
    r
}

fn sided_points_of(fs: &[&MapClass], rng: &mut ChaCha8Rng, extra: usize) -> Vec<SidedPoint> {
    let mut bases: BTreeSet<CirclePoint> = fs.iter().flat_map(|f| f.breakpoints()).collect();
    for _ in 0..extra {
        bases.insert(CirclePoint::ratio(rng.gen_range(0..4 * DENOM), 4 * DENOM));
    }
    bases
        .into_iter()
        .flat_map(|x| {
            [
                SidedPoint::new(x.clone(), Side::Minus),
                SidedPoint::new(x, Side::Plus),
            ]
        })
        .collect()
}

fn blowup(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("blowup");
    for _ in 0..200 {
        let (f, g) = (random_iet_bowtie(rng, 6), random_iet_bowtie(rng, 6));
        let fg = f.compose(&g);
        let pts = sided_points_of(&[&f, &g], rng, 10);
        let ok = pts
            .iter()
            .all(|p| eval_blowup(&fg, p) == eval_blowup(&f, &eval_blowup(&g, p)));
        r.check(ok, || {
            format!("{} / {}", serialize_map(&f), serialize_map(&g))
        });
    }
    for _ in 0..200 {
        let f = random_iet_bowtie(rng, 6);
        let reversed = f
            .branches()
            .iter()
            .filter(|b| !b.eps().is_preserving())
            .count();
        let bound = 4 * reversed + 2 * f.breakpoints().len();
        r.check(cleanhat_set(&f).len() <= bound, || serialize_map(&f));
    }
    r
}

fn genparro(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("genparro");
    for _ in 0..200 {
        let f = random_iet_plus(rng, 6);
        let k = keane_form(&f);
        let xi =
            SubgroupPresentation::new(k.lengths().iter().cloned().map(CirclePoint::new).collect())
                .unwrap();
        let ok = decompose_partial_rotations(&f).is_ok_and(|fs| {
            let n = k.len();
            fs.len() <= n * (n - 1) / 2
                && fs
                    .iter()
                    .all(|g| g.is_partial_rotation() && g.in_lambda(&xi))
                && fs.iter().fold(MapClass::identity(), |a, g| a.compose(g)) == f
        });
        r.check(ok, || serialize_map(&f));
    }
    r
}

fn arbsmall_suite(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("arbsmall");
    for _ in 0..50 {
        let (rho, eps, eta, l, lp) = arbsmall_params(rng);
        let res = arbsmall(&rho, &eps, &eta, &l, &lp);
        let ok = res
            .as_ref()
            .is_ok_and(|g| !g.is_identity() && g.support_diameter() <= &eps * &Scalar::int(5));
        r.check(ok, || {
            format!("rho={rho} eps={eps} eta={eta} lambda={l} lambda'={lp}")
        });
    }
    r
}

/// A random valid parameter tuple for [`arbsmall`].
pub fn arbsmall_params<R: Rng + ?Sized>(
    rng: &mut R,
) -> (CirclePoint, Scalar, Scalar, CirclePoint, CirclePoint) {
    let rho = CirclePoint::ratio(rng.gen_range(5..=11), 16);
    let small = if rho.value() < &Scalar::ratio(1, 2) {
        rho.value().clone()
    } else {
        Scalar::one() - rho.value()
    };
    // eps = small·k/(5·8) with 1 ≤ k ≤ 7
    let eps = small.scale(&num::BigRational::new(
        rng.gen_range(1..=7).into(),
        40.into(),
    ));
    let eta = eps.scale(&num::BigRational::new(
        rng.gen_range(1..=4).into(),
        4.into(),
    ));
    let a = rng.gen_range(1..8);
    let b = rng.gen_range(a..8);
    let at = |k: i64| {
        CirclePoint::new(
            &eps * &Scalar::int(3) + eps.scale(&num::BigRational::new(k.into(), 8.into())),
        )
    };
    (rho, eps.clone(), eta, at(a), at(b))
}

fn gadget() -> SuiteReport {
    let mut r = SuiteReport::new("gadget");
    let theta = CirclePoint::new(Scalar::sqrt_term(1, 4, 2) - Scalar::ratio(1, 4));
    let res = t_stabr_gadget(&CirclePoint::ratio(3, 16), &theta);
    let ok = res.is_ok_and(|(u, v, _, s)| {
        let suv = s.compose(&u).compose(&v);
        let ls = enumerate_hyperclean_lifts(&suv).unwrap_or_default();
        crate::constructions::is_triple_flip(&suv)
            && ls.len() == 2
            && ls.iter().all(|l| !lift_compose(l, l).is_identity())
    });
    r.check(ok, || "a = 3/16".into());
    r
}

/// Elements `k/n` of the subgroup of `Q/Z` generated by `gens`, found by closing under addition.
pub fn enumerate_subgroup(gens: &[(i64, i64)]) -> BTreeSet<CirclePoint> {
    let mut seen: BTreeSet<CirclePoint> = [CirclePoint::zero()].into_iter().collect();
    let mut frontier = vec![CirclePoint::zero()];
    let gens: Vec<CirclePoint> = gens
        .iter()
        .map(|&(p, q)| CirclePoint::ratio(p, q))
        .collect();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = &x + g;
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn lambda(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("lambda");
    for _ in 0..500 {
        let k = rng.gen_range(1..=3);
        let gens: Vec<(i64, i64)> = (0..k)
            .map(|_| {
                let q = rng.gen_range(1..=12);
                (rng.gen_range(0..q), q)
            })
            .collect();
        let d = rng.gen_range(1..=24);
        let x = grid_point(rng, d);
        let l = SubgroupPresentation::new(
            gens.iter()
                .map(|&(p, q)| CirclePoint::ratio(p, q))
                .collect(),
        )
        .unwrap();
        let want = enumerate_subgroup(&gens).contains(&x);
        r.check(lambda_contains(&l, &x) == want, || {
            format!("{gens:?} ∋ {x}")
        });
    }
    r
}

fn serialization(rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut r = SuiteReport::new("serialization");
    let field = FieldSpec::default();
    for i in 0..500 {
        if i % 2 == 0 {
            let f = random_iet_bowtie(rng, 6);
            let text = serialize_map(&f);
            let ok = parse_map(&text, field).is_ok_and(|g| g == f && serialize_map(&g) == text);
            r.check(ok, || text.clone());
        } else {
            let l = random_lift(rng, 6);
            let text = serialize_lift(&l);
            let ok = parse_lift(&text, field).is_ok_and(|g| g == l && serialize_lift(&g) == text);
            r.check(ok, || text.clone());
        }
    }
    r
}
