//! Exact semistability over a small prime field by subspace enumeration.
//!
//! A subrepresentation is a pair `(U₀, U₁)` with `A U₁ + B U₁ ⊆ U₀`. For a
//! fixed `U₁` the smallest admissible `U₀` is `A U₁ + B U₁`, and any subspace
//! containing it also works, so the classes realized with second coordinate
//! `d₁` are exactly `(d₀, d₁)` for `m(d₁) ≤ d₀ ≤ p`, where `m(d₁)` is the
//! minimum of `dim(A U₁ + B U₁)` over `d₁`-dimensional `U₁`. Enumerating the
//! subspaces of the vertex-1 space therefore decides every phase inequality.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::field::{mat_mul, rank, Field, Matrix, PrimeField};
use super::rep::{FieldTag, KroneckerRep};
use super::StabilityFunctionK2;
use crate::error::{Error, Result};

/// Limits on the enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest vertex-1 dimension enumerated.
    pub max_q: usize,
    /// Largest field size accepted.
    pub max_field: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_q: 4, max_field: 7 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemistabilityVerdict {
    pub semistable: bool,
    pub stable: bool,
    /// Proper subrepresentation class of maximal phase, when that phase is at
    /// least the phase of the representation.
    pub witness: Option<(i64, i64)>,
}

/// All `d`-dimensional subspaces of `F^n`, each as a `d × n` matrix in
/// reduced row echelon form.
pub fn subspaces(f: &PrimeField, n: usize, d: usize) -> Vec<Matrix<u64>> {
    let mut out = Vec::new();
    if d > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..d).collect();
    loop {
        // free positions: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> =
            (0..d).flat_map(|r| (pivots[r] + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c))).collect();
        let mut vals = vec![0u64; free.len()];
        loop {
            let mut m = Matrix::filled(d, n, 0u64);
            for (r, &c) in pivots.iter().enumerate() {
                m.set(r, c, 1);
            }
            for (&(r, c), &v) in free.iter().zip(&vals) {
                m.set(r, c, v);
            }
            out.push(m);
            let mut i = 0;
            while i < vals.len() {
                vals[i] += 1;
                if vals[i] < f.p {
                    break;
                }
                vals[i] = 0;
                i += 1;
            }
            if i == vals.len() {
                break;
            }
        }
        // next pivot combination
        let mut k = d;
        while k > 0 && pivots[k - 1] == n - d + k - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        pivots[k - 1] += 1;
        for j in k..d {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    out
}

fn prime_parts(m: &KroneckerRep, budget: &Budget) -> Result<(PrimeField, Matrix<u64>, Matrix<u64>)> {
    let FieldTag::Prime(p) = m.field else {
        return Err(Error::Precondition("the enumeration oracle needs a prime field".into()));
    };
    if p > budget.max_field {
        return Err(Error::Budget(format!("field size {p} exceeds {}", budget.max_field)));
    }
    if m.q > budget.max_q {
        return Err(Error::Budget(format!("vertex-1 dimension {} exceeds {}", m.q, budget.max_q)));
    }
    if m.is_zero() {
        return Err(Error::ZeroRep);
    }
    let f = PrimeField::new(p);
    let conv = |x: &Matrix<crate::exact::Q>| x.map(|v| f.from_q(v).expect("validated on construction"));
    Ok((f, conv(&m.a), conv(&m.b)))
}

/// `m(d₁)` for `d₁ = 0..=q`.
fn min_closures(f: &PrimeField, a: &Matrix<u64>, b: &Matrix<u64>, p: usize, qd: usize) -> Vec<usize> {
    (0..=qd)
        .map(|d1| {
            subspaces(f, qd, d1)
                .iter()
                .map(|u| {
                    let basis = u.transpose();
                    let mut img = Matrix::filled(p, 2 * d1, 0u64);
                    img.put(0, 0, &mat_mul(f, a, &basis));
                    img.put(0, d1, &mat_mul(f, b, &basis));
                    rank(f, &img)
                })
                .min()
                .expect("at least one subspace")
        })
        .collect()
}

/// Every dimension vector of a subrepresentation, including `0` and `M`.
pub fn realizable_classes(m: &KroneckerRep, budget: &Budget) -> Result<BTreeSet<(i64, i64)>> {
    let (f, a, b) = prime_parts(m, budget)?;
    let mins = min_closures(&f, &a, &b, m.p, m.q);
    Ok(mins.iter().enumerate().flat_map(|(d1, &lo)| (lo..=m.p).map(move |d0| (d0 as i64, d1 as i64))).collect())
}

fn verdict(m: &KroneckerRep, z: &StabilityFunctionK2, classes: &BTreeSet<(i64, i64)>) -> SemistabilityVerdict {
    let whole = m.class();
    let mut best: Option<(i64, i64)> = None;
    for &c in classes {
        if c == (0, 0) || c == whole {
            continue;
        }
        best = match best {
            None => Some(c),
            Some(b) => match z.cmp_classes(c, b) {
                Ordering::Greater => Some(c),
                Ordering::Equal if c.0 + c.1 > b.0 + b.1 => Some(c),
                _ => Some(b),
            },
        };
    }
    let order = best.map(|b| z.cmp_classes(b, whole));
    SemistabilityVerdict {
        semistable: order != Some(Ordering::Greater),
        stable: order.is_none() || order == Some(Ordering::Less),
        witness: best.filter(|_| order != Some(Ordering::Less)),
    }
}

/// Decides semistability and stability of `m` for `z` by enumeration.
pub fn semistable_bruteforce(
    m: &KroneckerRep,
    z: &StabilityFunctionK2,
    budget: &Budget,
) -> Result<SemistabilityVerdict> {
    Ok(verdict(m, z, &realizable_classes(m, budget)?))
}

/// Reference oracle: enumerates every pair `(U₀, U₁)` and checks closure
/// directly. Much slower; meant for cross-checking at tiny sizes.
pub fn semistable_naive(m: &KroneckerRep, z: &StabilityFunctionK2, budget: &Budget) -> Result<SemistabilityVerdict> {
    let (f, a, b) = prime_parts(m, budget)?;
    let mut classes = BTreeSet::new();
    for d1 in 0..=m.q {
        for u1 in subspaces(&f, m.q, d1) {
            let basis = u1.transpose();
            let (au, bu) = (mat_mul(&f, &a, &basis), mat_mul(&f, &b, &basis));
            for d0 in 0..=m.p {
                for u0 in subspaces(&f, m.p, d0) {
                    let contains = |img: &Matrix<u64>| {
                        (0..img.cols).all(|c| {
                            let mut stacked = Matrix::filled(d0 + 1, m.p, 0u64);
                            stacked.put(0, 0, &u0);
                            for r in 0..m.p {
                                stacked.set(d0, r, *img.get(r, c));
                            }
                            rank(&f, &stacked) == d0
                        })
                    };
                    if contains(&au) && contains(&bu) {
                        classes.insert((d0 as i64, d1 as i64));
                    }
                }
            }
        }
    }
    Ok(verdict(m, z, &classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::ExactComplex;
    use crate::exact::q;
    use crate::kronecker::rep::{c0, indecomposable_over, P1Point};

    fn case1() -> StabilityFunctionK2 {
        StabilityFunctionK2::new(ExactComplex::from_ints(1, 1), ExactComplex::from_ints(-1, 1)).unwrap()
    }

    fn case2() -> StabilityFunctionK2 {
        StabilityFunctionK2::new(ExactComplex::from_ints(-1, 1), ExactComplex::from_ints(1, 1)).unwrap()
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomials [n choose d]_q
        let f = PrimeField::new(5);
        assert_eq!(subspaces(&f, 3, 0).len(), 1);
        assert_eq!(subspaces(&f, 3, 1).len(), 31);
        assert_eq!(subspaces(&f, 3, 2).len(), 31);
        assert_eq!(subspaces(&f, 4, 2).len(), 806);
        assert_eq!(subspaces(&f, 2, 3).len(), 0);
        let f3 = PrimeField::new(3);
        assert_eq!(subspaces(&f3, 4, 2).len(), 130);
    }

    #[test]
    fn simple_objects() {
        let f5 = FieldTag::Prime(5);
        let v = semistable_bruteforce(&c0(f5), &case2(), &Budget::default()).unwrap();
        assert_eq!(v, SemistabilityVerdict { semistable: true, stable: true, witness: None });
    }

    #[test]
    fn regular_of_dim_one() {
        let f5 = FieldTag::Prime(5);
        let e = indecomposable_over(f5, 1, 1, Some(P1Point::finite(q(2)))).unwrap();
        let v = semistable_bruteforce(&e, &case1(), &Budget::default()).unwrap();
        assert!(v.semistable && v.stable && v.witness.is_none());
        let v = semistable_bruteforce(&e, &case2(), &Budget::default()).unwrap();
        assert_eq!(v, SemistabilityVerdict { semistable: false, stable: false, witness: Some((1, 0)) });
        assert_eq!(semistable_naive(&e, &case2(), &Budget::default()).unwrap(), v);
    }

    #[test]
    fn regular_of_dim_two_is_strictly_semistable() {
        let f5 = FieldTag::Prime(5);
        let e = indecomposable_over(f5, 2, 2, Some(P1Point::finite(q(1)))).unwrap();
        let v = semistable_bruteforce(&e, &case1(), &Budget::default()).unwrap();
        assert!(v.semistable && !v.stable);
        assert_eq!(v.witness, Some((1, 1)));
    }

    #[test]
    fn budget_and_field_checks() {
        let big = KroneckerRep::zero(FieldTag::Prime(5), 1, 5);
        assert!(matches!(semistable_bruteforce(&big, &case1(), &Budget::default()), Err(Error::Budget(_))));
        let wide = KroneckerRep::zero(FieldTag::Prime(11), 1, 1);
        assert!(matches!(semistable_bruteforce(&wide, &case1(), &Budget::default()), Err(Error::Budget(_))));
        let rational = KroneckerRep::zero(FieldTag::Rational, 1, 1);
        assert!(matches!(semistable_bruteforce(&rational, &case1(), &Budget::default()), Err(Error::Precondition(_))));
        let zero = KroneckerRep::zero(FieldTag::Prime(5), 0, 0);
        assert_eq!(semistable_bruteforce(&zero, &case1(), &Budget::default()), Err(Error::ZeroRep));
    }
}
