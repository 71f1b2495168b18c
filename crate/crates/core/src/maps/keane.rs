//! Lengths-and-permutation normal form `[[u, σ]]`, extended with a flip per interval.
//!
//! Interval `X_i = [u_1 + … + u_{i-1}, u_1 + … + u_i)` is moved to position
//! `σ(i)`, reversed first when its flip is `Reversing`. Permutations are
//! stored 0-based.

use std::collections::BTreeSet;
use std::fmt;

use super::class::MapClass;
use super::interval::{Branch, Interval, Isometry, Orientation, Side};
use crate::error::{Error, Result};
use crate::numeric::{CirclePoint, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KeaneForm {
    u: Vec<Scalar>,
    sigma: Vec<usize>,
    flips: Vec<Orientation>,
}

impl KeaneForm {
    pub fn new(u: Vec<Scalar>, sigma: Vec<usize>, flips: Vec<Orientation>) -> Result<Self> {
        let n = u.len();
        if n == 0 || sigma.len() != n || flips.len() != n {
            return Err(Error::BadParameters(
                "lengths, permutation and flips must agree in size".into(),
            ));
        }
        if let Some(bad) = u.iter().find(|x| !x.is_positive()) {
            return Err(Error::BadLengths(format!("non-positive length {bad}")));
        }
        let total = u.iter().fold(Scalar::zero(), |acc, x| acc + x);
        if total != Scalar::one() {
            return Err(Error::BadLengths(format!("lengths sum to {total}")));
        }
        if !is_permutation(&sigma) {
            return Err(Error::BadParameters(format!(
                "{sigma:?} is not a permutation"
            )));
        }
        Ok(KeaneForm { u, sigma, flips })
    }

    /// Orientation-preserving form.
    pub fn plus(u: Vec<Scalar>, sigma: Vec<usize>) -> Result<Self> {
        let n = u.len();
        KeaneForm::new(u, sigma, vec![Orientation::Preserving; n])
    }

    pub fn lengths(&self) -> &[Scalar] {
        &self.u
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn flips(&self) -> &[Orientation] {
        &self.flips
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// Left endpoints of the `X_i`.
    pub fn starts(&self) -> Vec<Scalar> {
        prefix_sums(&self.u)
    }

    /// Left endpoint of the slot `X_i` lands in: the total length of the
    /// intervals placed before it.
    pub fn target_starts(&self) -> Vec<Scalar> {
        let placed = permute_lengths(&self.sigma, &self.u);
        let slots = prefix_sums(&placed);
        self.sigma.iter().map(|&p| slots[p].clone()).collect()
    }

    fn mergeable(&self, i: usize) -> bool {
        let (a, b) = (self.sigma[i], self.sigma[i + 1]);
        match (self.flips[i], self.flips[i + 1]) {
            (Orientation::Preserving, Orientation::Preserving) => b == a + 1,
            (Orientation::Reversing, Orientation::Reversing) => a == b + 1,
            _ => false,
        }
    }

    /// No two consecutive intervals stay adjacent with the same orientation.
    pub fn is_admissible(&self) -> bool {
        (0..self.len().saturating_sub(1)).all(|i| !self.mergeable(i))
    }

    /// Merges consecutive intervals that travel together.
    pub fn reduce(&self) -> KeaneForm {
        let mut k = self.clone();
        while let Some(i) = (0..k.len() - 1).find(|&i| k.mergeable(i)) {
            let merged = &k.u[i] + &k.u[i + 1];
            let gone = k.sigma[i].max(k.sigma[i + 1]);
            k.u[i] = merged;
            k.sigma[i] = k.sigma[i].min(k.sigma[i + 1]);
            k.u.remove(i + 1);
            k.sigma.remove(i + 1);
            k.flips.remove(i + 1);
            for s in k.sigma.iter_mut() {
                if *s > gone {
                    *s -= 1;
                }
            }
        }
        k
    }
}

impl fmt::Debug for KeaneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `u=(…) sigma=(…) flips=(…)` with a 1-based permutation.
impl fmt::Display for KeaneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u: Vec<String> = self.u.iter().map(ToString::to_string).collect();
        let s: Vec<String> = self.sigma.iter().map(|p| (p + 1).to_string()).collect();
        let e: Vec<&str> = self
            .flips
            .iter()
            .map(|o| if o.is_preserving() { "+" } else { "-" })
            .collect();
        write!(
            f,
            "u=({}) sigma=({}) flips=({})",
            u.join(","),
            s.join(","),
            e.join(",")
        )
    }
}

fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len()];
    sigma
        .iter()
        .all(|&p| p < seen.len() && !std::mem::replace(&mut seen[p], true))
}

fn prefix_sums(u: &[Scalar]) -> Vec<Scalar> {
    let mut acc = Scalar::zero();
    u.iter()
        .map(|x| {
            let s = acc.clone();
            acc = &acc + x;
            s
        })
        .collect()
}

pub fn invert_permutation(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &p) in sigma.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// `(σ·u)_i = u_{σ⁻¹(i)}`: the lengths in the order they appear after applying `σ`.
pub fn permute_lengths(sigma: &[usize], u: &[Scalar]) -> Vec<Scalar> {
    invert_permutation(sigma)
        .into_iter()
        .map(|j| u[j].clone())
        .collect()
}

/// `(ψ∘σ)(i) = ψ(σ(i))`.
pub fn compose_permutations(psi: &[usize], sigma: &[usize]) -> Vec<usize> {
    sigma.iter().map(|&i| psi[i]).collect()
}

pub fn from_keane(k: &KeaneForm) -> MapClass {
    let starts = k.starts();
    let targets = k.target_starts();
    let branches = (0..k.len())
        .map(|i| {
            let lo = CirclePoint::new(starts[i].clone());
            let dom = Interval::with_length(lo, &k.u[i]).expect("validated length");
            let iso = match k.flips[i] {
                Orientation::Preserving => {
                    Isometry::translation(CirclePoint::new(&targets[i] - &starts[i]))
                }
                Orientation::Reversing => {
                    Isometry::reflection(CirclePoint::new(&targets[i] + &starts[i] + &k.u[i]))
                }
            };
            Branch::new(dom, iso)
        })
        .collect();
    MapClass::from_branches(branches).expect("a Keane form is a bijection")
}

/// Interval-model normal form, cutting at 0 and at the preimage of 0.
pub fn keane_form(f: &MapClass) -> KeaneForm {
    let mut cuts: BTreeSet<CirclePoint> = f.breakpoints().into_iter().collect();
    cuts.insert(CirclePoint::zero());
    for b in f.branches() {
        let x = b.iso.inverse().apply(&CirclePoint::zero());
        if b.domain.contains_open(&x) {
            cuts.insert(x);
        }
    }
    let cuts: Vec<CirclePoint> = cuts.into_iter().collect();
    let n = cuts.len();
    let ends: Vec<Scalar> = (0..n)
        .map(|i| {
            if i + 1 < n {
                cuts[i + 1].value().clone()
            } else {
                Scalar::one()
            }
        })
        .collect();
    let mut u = Vec::with_capacity(n);
    let mut flips = Vec::with_capacity(n);
    let mut image_starts = Vec::with_capacity(n);
    for i in 0..n {
        let iso = f.iso_at(&cuts[i], Side::Plus);
        u.push(&ends[i] - cuts[i].value());
        flips.push(iso.eps);
        let start = match iso.eps {
            Orientation::Preserving => iso.apply(&cuts[i]),
            Orientation::Reversing => iso.apply(&CirclePoint::new(ends[i].clone())),
        };
        image_starts.push(start);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| image_starts[a].cmp(&image_starts[b]));
    let sigma = invert_permutation(&order);
    KeaneForm::new(u, sigma, flips)
        .expect("pieces partition the circle")
        .reduce()
}
