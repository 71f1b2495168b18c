//! Random maps on a rational grid, for property checks and verification suites.

use std::collections::BTreeMap;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::constructions::{exchange, partial_rotation, rotation};
use crate::lifts::{left_lift, lift_compose, right_lift, FinPerm, Lift};
use crate::maps::{from_keane, Interval, KeaneForm, MapClass, Orientation};
use crate::numeric::{CirclePoint, Scalar};

/// Grid used for random data: multiples of `1/DENOM`.
pub const DENOM: i64 = 24;

pub fn grid_point<R: Rng + ?Sized>(rng: &mut R, denom: i64) -> CirclePoint {
    CirclePoint::ratio(rng.gen_range(0..denom), denom)
}

/// `n` positive multiples of `1/denom` summing to 1 (`n ≤ denom`).
pub fn random_lengths<R: Rng + ?Sized>(rng: &mut R, n: usize, denom: i64) -> Vec<Scalar> {
    assert!(n >= 1 && n as i64 <= denom);
    let mut cuts: Vec<i64> = index::sample(rng, denom as usize - 1, n - 1)
        .into_iter()
        .map(|k| k as i64 + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(denom);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let l = Scalar::ratio(c - prev, denom);
            prev = c;
            l
        })
        .collect()
}

/// Which orientations a random Keane form may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flips {
    None,
    All,
    Any,
}

pub fn random_keane<R: Rng + ?Sized>(
    rng: &mut R,
    max_n: usize,
    denom: i64,
    flips: Flips,
) -> KeaneForm {
    let n = rng.gen_range(1..=max_n);
    let u = random_lengths(rng, n, denom);
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    let eps = (0..n)
        .map(|_| match flips {
            Flips::None => Orientation::Preserving,
            Flips::All => Orientation::Reversing,
            Flips::Any => {
                if rng.gen_bool(0.5) {
                    Orientation::Reversing
                } else {
                    Orientation::Preserving
                }
            }
        })
        .collect();
    KeaneForm::new(u, sigma, eps).expect("valid random data")
}

/// A Keane form conjugated by a random grid rotation, so 0 need not be a breakpoint.
pub fn random_iet<R: Rng + ?Sized>(
    rng: &mut R,
    max_n: usize,
    denom: i64,
    flips: Flips,
) -> MapClass {
    let f = from_keane(&random_keane(rng, max_n, denom, flips));
    f.conjugate_by(&rotation(grid_point(rng, denom)))
}

pub fn random_iet_plus<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> MapClass {
    random_iet(rng, max_n, DENOM, Flips::None)
}

pub fn random_iet_bowtie<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> MapClass {
    random_iet(rng, max_n, DENOM, Flips::Any)
}

/// An element of `IET±`: all branches preserving or all reversing.
pub fn random_iet_pm<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> MapClass {
    let flips = if rng.gen_bool(0.5) {
        Flips::None
    } else {
        Flips::All
    };
    random_iet(rng, max_n, DENOM, flips)
}

/// `φ(I, J)` for random disjoint grid intervals of equal length.
pub fn random_exchange<R: Rng + ?Sized>(rng: &mut R, denom: i64) -> MapClass {
    let len = rng.gen_range(1..=denom / 2);
    let gap = rng.gen_range(0..=denom - 2 * len);
    let start = rng.gen_range(0..denom);
    let i = Interval::new(
        CirclePoint::ratio(start, denom),
        CirclePoint::ratio(start + len, denom),
    )
    .expect("nonempty");
    let j = Interval::new(
        CirclePoint::ratio(start + len + gap, denom),
        CirclePoint::ratio(start + 2 * len + gap, denom),
    )
    .expect("nonempty");
    exchange(&i, &j).expect("disjoint intervals of equal length")
}

/// A non-identity partial rotation of a proper grid interval.
pub fn random_partial_rotation<R: Rng + ?Sized>(rng: &mut R, denom: i64) -> MapClass {
    let len = rng.gen_range(2..denom);
    let theta = rng.gen_range(1..len);
    let start = rng.gen_range(0..denom);
    let i = Interval::new(
        CirclePoint::ratio(start, denom),
        CirclePoint::ratio(start + len, denom),
    )
    .expect("nonempty");
    partial_rotation(&i, &Scalar::ratio(theta, denom))
}

/// A random finitely supported permutation of grid points (a cycle of length up to 3).
pub fn random_finperm<R: Rng + ?Sized>(rng: &mut R, denom: i64) -> FinPerm {
    let k = rng.gen_range(2..=3);
    let pts: Vec<CirclePoint> = index::sample(rng, denom as usize, k)
        .into_iter()
        .map(|i| CirclePoint::ratio(i as i64, 2 * denom))
        .collect();
    let pairs: BTreeMap<_, _> = (0..k)
        .map(|i| (pts[i].clone(), pts[(i + 1) % k].clone()))
        .collect();
    FinPerm::new(pairs).expect("a cycle")
}

/// A one-sided lift of a random `IET±` class, sometimes twisted by a finite permutation.
pub fn random_lift<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> Lift {
    let f = random_iet_pm(rng, max_n);
    let l = if rng.gen_bool(0.5) {
        left_lift(&f)
    } else {
        right_lift(&f)
    }
    .expect("IET± lifts");
    if rng.gen_bool(0.5) {
        lift_compose(&l, &Lift::from_finperm(&random_finperm(rng, DENOM)))
    } else {
        l
    }
}
