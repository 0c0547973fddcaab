//! Kronecker canonical form of a rational pencil.
//!
//! Every block is recovered from ranks of explicit linear systems, so the
//! result depends only on the isomorphism class of the representation:
//!
//! * sub-root blocks `(n, n+1)` from the dimensions of polynomial kernels of
//!   `A + sB` of bounded degree;
//! * quotient-root blocks `(n+1, n)` the same way for the transposed pencil;
//! * Jordan blocks at infinity from chains `A x₁ = 0`, `A xᵢ = B xᵢ₋₁`;
//! * finite regular blocks from the gcd of maximal minors of `B − sA`,
//!   factored over `Q`, followed by the same chain count over `Q[x]/(f)`
//!   for every irreducible factor `f`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::field::{det, identity, mat_mul, nullity, Field, Matrix, NumberField, Rationals};
use super::poly::QPoly;
use super::rep::{indecomposable, FieldTag, KroneckerRep};
use crate::error::{Error, Result};
use crate::exact::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegularPoint {
    /// Roots of a monic irreducible polynomial.
    Finite(QPoly),
    Infinity,
}

impl fmt::Display for RegularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegularPoint::Finite(p) => write!(f, "{p}"),
            RegularPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// An indecomposable summand of a pencil.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PencilBlock {
    /// Class `(n, n+1)`.
    SubRoot { n: usize },
    /// Class `(n+1, n)`.
    QuotientRoot { n: usize },
    /// A regular block of size `m` at `point`. When the point has degree `e`
    /// over `Q` its class is `(e·m, e·m)`.
    Regular { point: RegularPoint, m: usize },
}

impl PencilBlock {
    pub fn class(&self) -> (i64, i64) {
        match self {
            PencilBlock::SubRoot { n } => (*n as i64, *n as i64 + 1),
            PencilBlock::QuotientRoot { n } => (*n as i64 + 1, *n as i64),
            PencilBlock::Regular { point, m } => {
                let e = match point {
                    RegularPoint::Finite(f) => f.degree().unwrap_or(0),
                    RegularPoint::Infinity => 1,
                };
                ((e * m) as i64, (e * m) as i64)
            }
        }
    }

    /// A rational representation of this block with coprime integer entries.
    pub fn representative(&self) -> KroneckerRep {
        match self {
            PencilBlock::SubRoot { n } => indecomposable(*n, n + 1, None).expect("real root"),
            PencilBlock::QuotientRoot { n } => indecomposable(n + 1, *n, None).expect("real root"),
            PencilBlock::Regular { point: RegularPoint::Infinity, m } => {
                let mut a = Matrix::filled(*m, *m, q(0));
                for i in 0..m - 1 {
                    a.set(i, i + 1, q(1));
                }
                KroneckerRep { field: FieldTag::Rational, p: *m, q: *m, a, b: identity(&Rationals, *m) }
            }
            PencilBlock::Regular { point: RegularPoint::Finite(f), m } if f.degree() == Some(1) => {
                // f = x - a/b
                let lam = -f.coeffs()[0].clone();
                let (num, den) = (Q::from_integer(lam.numer().clone()), Q::from_integer(lam.denom().clone()));
                let mut a = Matrix::filled(*m, *m, q(0));
                let mut b = Matrix::filled(*m, *m, q(0));
                for i in 0..*m {
                    a.set(i, i, den.clone());
                    b.set(i, i, num.clone());
                    if i + 1 < *m {
                        b.set(i, i + 1, den.clone());
                    }
                }
                KroneckerRep { field: FieldTag::Rational, p: *m, q: *m, a, b }
            }
            PencilBlock::Regular { point: RegularPoint::Finite(f), m } => {
                // companion pencil of the primitive integer form of f^m
                let h: Vec<Q> = f.pow(*m as u32).primitive_integer().into_iter().map(Q::from_integer).collect();
                let n = h.len() - 1;
                let mut a = identity(&Rationals, n);
                a.set(n - 1, n - 1, h[n].clone());
                let mut b = Matrix::filled(n, n, q(0));
                for i in 1..n {
                    b.set(i, i - 1, q(1));
                }
                for (i, hi) in h.iter().take(n).enumerate() {
                    b.set(i, n - 1, -hi.clone());
                }
                KroneckerRep { field: FieldTag::Rational, p: n, q: n, a, b }
            }
        }
    }
}

impl fmt::Display for PencilBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, qd) = self.class();
        match self {
            PencilBlock::SubRoot { .. } => write!(f, "sub-root ({p},{qd})"),
            PencilBlock::QuotientRoot { .. } => write!(f, "quotient-root ({p},{qd})"),
            PencilBlock::Regular { point, m } => write!(f, "regular {point} m={m} ({p},{qd})"),
        }
    }
}

#[derive(Serialize)]
struct BlockJson {
    kind: &'static str,
    class: (i64, i64),
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
}

impl Serialize for PencilBlock {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, point, m) = match self {
            PencilBlock::SubRoot { .. } => ("sub_root", None, None),
            PencilBlock::QuotientRoot { .. } => ("quotient_root", None, None),
            PencilBlock::Regular { point, m } => ("regular", Some(point.to_string()), Some(*m)),
        };
        BlockJson { kind, class: self.class(), point, m }.serialize(s)
    }
}

/// Block matrix with `diag` on the diagonal and `sub` on the subdiagonal, `k × k` blocks.
fn chain_matrix<F: Field>(f: &F, diag: &Matrix<F::E>, sub: &Matrix<F::E>, k: usize) -> Matrix<F::E> {
    let (r, c) = (diag.rows, diag.cols);
    let mut m = Matrix::filled(k * r, k * c, f.zero());
    for i in 0..k {
        m.put(i * r, i * c, diag);
        if i > 0 {
            m.put(i * r, (i - 1) * c, sub);
        }
    }
    m
}

/// Number of blocks `L_ε` (`ε × (ε+1)`) of the pencil, indexed by `ε`.
fn minimal_indices(a: &Matrix<Q>, b: &Matrix<Q>) -> Vec<usize> {
    let f = Rationals;
    let (p, qd) = (a.rows, a.cols);
    // kernel dimension of polynomial solutions of degree <= k
    let n_k = |k: usize| -> usize {
        let mut m = Matrix::filled((k + 2) * p, (k + 1) * qd, q(0));
        for i in 0..=k {
            m.put(i * p, i * qd, a);
            m.put((i + 1) * p, i * qd, b);
        }
        nullity(&f, &m)
    };
    let mut counts = Vec::new();
    let (mut prev2, mut prev1) = (0usize, 0usize);
    for k in 0..=p {
        let nk = n_k(k);
        counts.push(nk + prev2 - 2 * prev1);
        prev2 = prev1;
        prev1 = nk;
    }
    counts
}

/// Sizes of Jordan chains: entry `k-1` is the number of blocks of size ≥ `k`.
fn chain_counts<F: Field>(f: &F, diag: &Matrix<F::E>, sub: &Matrix<F::E>, n_l: usize, max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut prev = 0;
    for k in 1..=max {
        let j = nullity(f, &chain_matrix(f, diag, sub, k)) - k * n_l;
        if j == prev {
            break;
        }
        out.push(j - prev);
        prev = j;
    }
    out
}

fn push_sized(out: &mut Vec<PencilBlock>, at_least: &[usize], point: &RegularPoint) {
    for (i, &c) in at_least.iter().enumerate() {
        let exact = c - at_least.get(i + 1).copied().unwrap_or(0);
        for _ in 0..exact {
            out.push(PencilBlock::Regular { point: point.clone(), m: i + 1 });
        }
    }
}

/// Gcd of the maximal minors of `B − sA`, to the expected degree.
fn finite_divisor(a: &Matrix<Q>, b: &Matrix<Q>, r: usize, degree: usize) -> Result<QPoly> {
    let f = Rationals;
    if degree == 0 {
        return Ok(QPoly::constant(q(1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b72_6f6e);
    let mut g: Option<QPoly> = None;
    for _ in 0..200 {
        let rm = Matrix::from_rows(
            r,
            a.rows,
            (0..r).map(|_| (0..a.rows).map(|_| q(rng.gen_range(-3..=3))).collect()).collect(),
        );
        let cm = Matrix::from_rows(
            a.cols,
            r,
            (0..a.cols).map(|_| (0..r).map(|_| q(rng.gen_range(-3..=3))).collect()).collect(),
        );
        let (ra, rb) = (mat_mul(&f, &mat_mul(&f, &rm, a), &cm), mat_mul(&f, &mat_mul(&f, &rm, b), &cm));
        let points: Vec<(Q, Q)> = (0..=r as i64)
            .map(|s| {
                let m = Matrix {
                    rows: r,
                    cols: r,
                    data: rb.data.iter().zip(&ra.data).map(|(x, y)| x - y * q(s)).collect(),
                };
                (q(s), det(&f, &m))
            })
            .collect();
        let d = QPoly::interpolate(&points);
        if d.is_zero() {
            continue;
        }
        let next = match g {
            None => d.monic(),
            Some(ref old) => QPoly::gcd(old, &d),
        };
        if next.degree() == Some(degree) {
            return Ok(next);
        }
        g = Some(next);
    }
    Err(Error::Factorization("minor gcd did not stabilise".into()))
}

/// Decomposes a rational representation into indecomposable blocks, sorted.
pub fn kronecker_canonical_form(m: &KroneckerRep) -> Result<Vec<PencilBlock>> {
    if m.field != FieldTag::Rational {
        return Err(Error::FieldMismatch);
    }
    let f = Rationals;
    let (a, b) = (&m.a, &m.b);
    let mut out = Vec::new();

    let l = minimal_indices(a, b);
    let lt = minimal_indices(&a.transpose(), &b.transpose());
    let n_l: usize = l.iter().sum();
    let mut used = 0;
    for (eps, &c) in l.iter().enumerate() {
        out.extend((0..c).map(|_| PencilBlock::SubRoot { n: eps }));
        used += c * eps;
    }
    for (eps, &c) in lt.iter().enumerate() {
        out.extend((0..c).map(|_| PencilBlock::QuotientRoot { n: eps }));
        used += c * (eps + 1);
    }
    let m_reg = m.p.checked_sub(used).ok_or_else(|| Error::Factorization("inconsistent minimal indices".into()))?;
    if m_reg == 0 {
        out.sort();
        return Ok(out);
    }

    let neg_b = b.map(|x| -x.clone());
    let inf = chain_counts(&f, a, &neg_b, n_l, m_reg);
    push_sized(&mut out, &inf, &RegularPoint::Infinity);
    let m_inf: usize = inf.iter().sum();

    let finite_deg = m_reg - m_inf;
    let r = m.q - n_l;
    let d = finite_divisor(a, b, r, finite_deg)?;
    let mut found = 0;
    for factor in d.irreducible_factors()? {
        let e = factor.degree().expect("nonconstant");
        let nf = NumberField::new(factor.clone());
        let alpha = nf.generator();
        let lift = |x: &Q| nf.from_q(x).expect("rationals embed");
        let diag = Matrix {
            rows: a.rows,
            cols: a.cols,
            data: b.data.iter().zip(&a.data).map(|(bi, ai)| nf.sub(&lift(bi), &nf.mul(&alpha, &lift(ai)))).collect(),
        };
        let sub = a.map(|x| nf.neg(&lift(x)));
        let counts = chain_counts(&nf, &diag, &sub, n_l, finite_deg / e);
        found += e * counts.iter().sum::<usize>();
        push_sized(&mut out, &counts, &RegularPoint::Finite(factor));
    }
    if found != finite_deg {
        return Err(Error::Factorization(format!("regular part of degree {finite_deg}, blocks account for {found}")));
    }
    out.sort();
    Ok(out)
}

/// Direct sum of the block representatives, in the given order.
pub fn assemble(blocks: &[PencilBlock]) -> KroneckerRep {
    blocks.iter().fold(KroneckerRep::zero(FieldTag::Rational, 0, 0), |acc, b| {
        acc.direct_sum(&b.representative()).expect("rational")
    })
}
