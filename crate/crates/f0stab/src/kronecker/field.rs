//! Exact fields and dense matrices over them.
//!
//! A [`Field`] is a value that knows how to do arithmetic on its elements,
//! which lets the prime field and number fields carry their modulus.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::QPoly;
use crate::exact::Q;

pub trait Field {
    type E: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// Image of a rational number, if it has one.
    fn from_q(&self, x: &Q) -> Option<Self::E>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a.clone()
    }
    fn inv(&self, a: &Q) -> Q {
        a.recip()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn from_q(&self, x: &Q) -> Option<Q> {
        Some(x.clone())
    }
}

/// `F_p` for a prime `p`, elements in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0), "{p} is not prime");
        PrimeField { p }
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    /// All elements `0..p`.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Field for PrimeField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (*a % self.p, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_q(&self, x: &Q) -> Option<u64> {
        let p = num_bigint::BigInt::from(self.p);
        let n = x.numer().mod_floor(&p).to_u64()?;
        let d = x.denom().mod_floor(&p).to_u64()?;
        (d != 0).then(|| self.mul(&n, &self.inv(&d)))
    }
}

/// `Q[x]/(f)` for a monic irreducible `f`; elements are coefficient vectors
/// of length `deg f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    modulus: QPoly,
}

impl NumberField {
    pub fn new(modulus: QPoly) -> Self {
        assert!(modulus.degree().unwrap_or(0) >= 1, "modulus must have positive degree");
        NumberField { modulus: modulus.monic() }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(&self) -> Vec<Q> {
        self.reduce(&QPoly::x())
    }

    pub fn reduce(&self, p: &QPoly) -> Vec<Q> {
        let r = p.rem(&self.modulus);
        let mut c = r.coeffs().to_vec();
        c.resize(self.degree(), Q::zero());
        c
    }
}

impl Field for NumberField {
    type E = Vec<Q>;

    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.degree()]
    }
    fn one(&self) -> Vec<Q> {
        self.reduce(&QPoly::constant(Q::one()))
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        self.reduce(&(&QPoly::new(a.clone()) * &QPoly::new(b.clone())))
    }
    fn neg(&self, a: &Vec<Q>) -> Vec<Q> {
        a.iter().map(|x| -x.clone()).collect()
    }
    fn inv(&self, a: &Vec<Q>) -> Vec<Q> {
        let (g, s, _) = QPoly::ext_gcd(&QPoly::new(a.clone()), &self.modulus);
        debug_assert_eq!(g.degree(), Some(0), "element not invertible");
        let c = g.coeffs()[0].recip();
        self.reduce(&s.scale(&c))
    }
    fn is_zero(&self, a: &Vec<Q>) -> bool {
        a.iter().all(Zero::is_zero)
    }
    fn from_q(&self, x: &Q) -> Option<Vec<Q>> {
        Some(self.reduce(&QPoly::constant(x.clone())))
    }
}

/// Dense row-major matrix. Keeps its shape even when a dimension is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<E>>) -> Self {
        assert_eq!(entries.len(), rows);
        assert!(entries.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data: entries.into_iter().flatten().collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<T: Clone>(&self, f: impl FnMut(&E) -> Option<T>) -> Option<Matrix<T>> {
        Some(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Option<_>>()? })
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &Self, zero: E) -> Self {
        let mut m = Matrix::filled(self.rows + other.rows, self.cols + other.cols, zero);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::E> {
    let mut m = Matrix::filled(n, n, f.zero());
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> Matrix<F::E> {
    assert_eq!(a.cols, b.rows, "shape mismatch");
    let mut m = Matrix::filled(a.rows, b.cols, f.zero());
    for r in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(r, k);
            if f.is_zero(x) {
                continue;
            }
            for c in 0..b.cols {
                let v = f.add(m.get(r, c), &f.mul(x, b.get(k, c)));
                m.set(r, c, v);
            }
        }
    }
    m
}

pub fn mat_add<F: Field>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> Matrix<F::E> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "shape mismatch");
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect() }
}

pub fn mat_scale<F: Field>(f: &F, s: &F::E, a: &Matrix<F::E>) -> Matrix<F::E> {
    a.map(|x| f.mul(s, x))
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::E>, v: &[F::E]) -> Vec<F::E> {
    (0..a.rows).map(|r| (0..a.cols).fold(f.zero(), |acc, c| f.add(&acc, &f.mul(a.get(r, c), &v[c])))).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::E>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
            continue;
        };
        if pr != row {
            for c in 0..m.cols {
                m.data.swap(pr * m.cols + c, row * m.cols + c);
            }
        }
        let inv = f.inv(m.get(row, col));
        for c in col..m.cols {
            let v = f.mul(&inv, m.get(row, c));
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row || f.is_zero(m.get(r, col)) {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in col..m.cols {
                let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::E>) -> usize {
    let mut w = m.clone();
    rref(f, &mut w).len()
}

pub fn nullity<F: Field>(f: &F, m: &Matrix<F::E>) -> usize {
    m.cols - rank(f, m)
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::E>) -> Vec<Vec<F::E>> {
    let mut w = m.clone();
    let pivots = rref(f, &mut w);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(w.get(r, fc));
            }
            v
        })
        .collect()
}

pub fn is_invertible<F: Field>(f: &F, m: &Matrix<F::E>) -> bool {
    m.rows == m.cols && rank(f, m) == m.rows
}

/// Determinant by elimination.
pub fn det<F: Field>(f: &F, m: &Matrix<F::E>) -> F::E {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut w = m.clone();
    let mut acc = f.one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !f.is_zero(w.get(r, col))) else {
            return f.zero();
        };
        if pr != col {
            for c in 0..n {
                w.data.swap(pr * n + c, col * n + c);
            }
            acc = f.neg(&acc);
        }
        let pivot = w.get(col, col).clone();
        acc = f.mul(&acc, &pivot);
        let inv = f.inv(&pivot);
        for r in col + 1..n {
            if f.is_zero(w.get(r, col)) {
                continue;
            }
            let factor = f.mul(w.get(r, col), &inv);
            for c in col..n {
                let v = f.sub(w.get(r, c), &f.mul(&factor, w.get(col, c)));
                w.set(r, c, v);
            }
        }
    }
    acc
}

/// Rational matrix with every entry an integer, sign-normalized content 1.
pub fn primitive_pair(a: &Matrix<Q>, b: &Matrix<Q>) -> (Matrix<Q>, Matrix<Q>) {
    use num_bigint::BigInt;
    let entries = a.data.iter().chain(&b.data);
    let lcm = entries.clone().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<BigInt> = entries.map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g.abs() };
    let factor = Q::new(lcm, g);
    (a.map(|x| x * &factor), b.map(|x| x * &factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_rows(r, c, rows.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5);
        assert_eq!(f.inv(&2), 3);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.from_q(&qf(1, 2)), Some(3));
        assert_eq!(f.from_q(&qf(-1, 3)), Some(3));
        assert_eq!(f.from_q(&qf(1, 5)), None);
        for a in 1..5 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn rank_and_kernel() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&Rationals, &m), 2);
        let k = kernel_basis(&Rationals, &m);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&Rationals, &m, &k[0]).iter().all(Zero::is_zero));
        let empty: Matrix<Q> = Matrix::filled(0, 3, q(0));
        assert_eq!(rank(&Rationals, &empty), 0);
        assert_eq!(nullity(&Rationals, &empty), 3);
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&Rationals, &qm(&[&[2, 1], &[7, 4]])), q(1));
        assert_eq!(det(&Rationals, &qm(&[&[0, 1], &[1, 0]])), q(-1));
        assert_eq!(
            det(&PrimeField::new(5), &qm(&[&[2, 1], &[1, 3]]).map(|x| PrimeField::new(5).from_q(x).unwrap())),
            0
        );
    }

    #[test]
    fn number_field_inverse() {
        let f = NumberField::new(QPoly::from_ints(&[-2, 0, 1]));
        let a = f.generator();
        let b = f.inv(&a);
        assert_eq!(f.mul(&a, &b), f.one());
        assert_eq!(f.mul(&a, &a), f.from_q(&q(2)).unwrap());
    }

    #[test]
    fn primitive_scaling() {
        let a = Matrix::from_rows(1, 2, vec![vec![qf(1, 2), qf(3, 4)]]);
        let b = Matrix::from_rows(1, 2, vec![vec![q(0), qf(-1, 4)]]);
        let (a2, b2) = primitive_pair(&a, &b);
        assert_eq!(a2.data, vec![q(2), q(3)]);
        assert_eq!(b2.data, vec![q(0), q(-1)]);
    }
}
