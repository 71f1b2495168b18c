use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::{CirclePoint, Scalar};
use crate::error::{Error, Result};

/// Row-style Hermite normal form of an integer matrix.
///
/// Zero rows are dropped; pivots are positive and entries above each pivot
/// are reduced into `[0, pivot)`.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], &q, &head[r]);
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for e in rows[r].iter_mut() {
                *e = -&*e;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                let (head, tail) = rows.split_at_mut(r);
                axpy(&mut head[i], &q, &tail[0]);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

// row -= q * other
fn axpy(row: &mut [BigInt], q: &BigInt, other: &[BigInt]) {
    for (x, y) in row.iter_mut().zip(other) {
        *x -= q * y;
    }
}

/// Whether `v` is an integer combination of the rows of an HNF basis.
pub fn lattice_contains(hnf: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for row in hnf {
        let Some(p) = row.iter().position(|e| !e.is_zero()) else {
            continue;
        };
        if v[..p].iter().any(|e| !e.is_zero()) {
            return false;
        }
        let (q, rem) = v[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return false;
        }
        axpy(&mut v, &q, row);
    }
    v.iter().all(Zero::is_zero)
}

/// A finitely generated subgroup `Λ` of `R/Z`, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    generators: Vec<CirclePoint>,
}

impl SubgroupPresentation {
    pub fn new(generators: Vec<CirclePoint>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::BadParameters(
                "subgroup needs at least one generator".into(),
            ));
        }
        Ok(SubgroupPresentation { generators })
    }

    pub fn generators(&self) -> &[CirclePoint] {
        &self.generators
    }

    /// Membership of `x` in the subgroup of `R/Z` generated by `self`.
    ///
    /// Coordinates `(a, b)` of `a + b√m` are scaled to integers by a common
    /// denominator; `x` is a member iff its coordinate vector lies in the
    /// lattice spanned by the generators together with `(1, 0)`.
    pub fn contains(&self, x: &CirclePoint) -> bool {
        let coords = |s: &Scalar| [s.rational_part().clone(), s.sqrt_coeff().clone()];
        let mut vecs: Vec<[BigRational; 2]> =
            self.generators.iter().map(|g| coords(g.value())).collect();
        vecs.push([BigRational::one(), BigRational::zero()]);
        let target = coords(x.value());
        let den = vecs
            .iter()
            .chain(std::iter::once(&target))
            .flat_map(|v| v.iter().map(|r| r.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let scale = |v: &[BigRational; 2]| -> Vec<BigInt> {
            v.iter()
                .map(|r| (r * BigRational::from_integer(den.clone())).to_integer())
                .collect()
        };
        let rows: Vec<Vec<BigInt>> = vecs.iter().map(scale).collect();
        lattice_contains(&hermite_normal_form(rows), &scale(&target))
    }
}

pub fn lambda_contains(l: &SubgroupPresentation, x: &CirclePoint) -> bool {
    l.contains(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_small() {
        let h = hermite_normal_form(vec![ints(&[4, 6]), ints(&[6, 9]), ints(&[2, 3])]);
        assert_eq!(h, vec![ints(&[2, 3])]);
        let h = hermite_normal_form(vec![ints(&[3, 1]), ints(&[1, 2])]);
        assert_eq!(h, vec![ints(&[1, 2]), ints(&[0, 5])]);
        assert!(lattice_contains(&h, &ints(&[4, 3])));
        assert!(!lattice_contains(&h, &ints(&[0, 1])));
    }

    #[test]
    fn membership_examples() {
        let l = SubgroupPresentation::new(vec![CirclePoint::ratio(1, 6)]).unwrap();
        assert!(l.contains(&CirclePoint::ratio(1, 2)));
        assert!(!l.contains(&CirclePoint::ratio(1, 4)));
        let s2 = Scalar::sqrt_term(1, 1, 2);
        let l =
            SubgroupPresentation::new(vec![CirclePoint::new(s2.clone()), CirclePoint::ratio(1, 3)])
                .unwrap();
        let x = CirclePoint::new(Scalar::int(2) * &s2 + Scalar::ratio(1, 3));
        assert!(l.contains(&x));
        assert!(!l.contains(&CirclePoint::new(s2.half())));
        assert!(!l.contains(&CirclePoint::ratio(1, 2)));
    }

    #[test]
    fn brute_force_agreement_small() {
        // ⟨1/6⟩ = {0, 1/6, ..., 5/6}
        let l = SubgroupPresentation::new(vec![CirclePoint::ratio(1, 6)]).unwrap();
        for d in 1..=12 {
            for n in 0..d {
                let expected = (6 * n) % d == 0;
                assert_eq!(l.contains(&CirclePoint::ratio(n, d)), expected, "{n}/{d}");
            }
        }
    }

    #[test]
    fn empty_presentation_rejected() {
        assert!(SubgroupPresentation::new(vec![]).is_err());
    }
}
