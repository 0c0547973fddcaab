//! The lattice `K_0 = Z^4` spanned by the simple classes `γ_0..γ_3`, its
//! rank-two quotient by the `φ`-anti-invariant part, and the integer
//! automorphisms induced by `T`, `T_Ψ` and `Ψ`.
//!
//! Matrices act on column vectors: column `i` of a [`LatticeAuto`] is the
//! image of `γ_i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A class `a γ_0 + b γ_1 + c γ_2 + d γ_3`. Serializes as `[a,b,c,d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KClass(pub [i64; 4]);

/// A class `a γ̄_0 + b γ̄_1` in the quotient lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotClass(pub [i64; 2]);

pub type Mat2 = [[i64; 2]; 2];
pub type Mat4 = [[i64; 4]; 4];

impl KClass {
    pub const ZERO: KClass = KClass([0; 4]);

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        KClass([a, b, c, d])
    }

    pub fn coords(&self) -> [i64; 4] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// True when every coordinate is nonnegative.
    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl QuotClass {
    pub fn new(a: i64, b: i64) -> Self {
        QuotClass([a, b])
    }

    pub fn coords(&self) -> [i64; 2] {
        self.0
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[{a},{b},{c},{d}]")
    }
}

impl fmt::Display for QuotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0[0], self.0[1])
    }
}

impl Add for KClass {
    type Output = KClass;
    fn add(self, o: KClass) -> KClass {
        KClass(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for KClass {
    type Output = KClass;
    fn sub(self, o: KClass) -> KClass {
        KClass(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass(self.0.map(|c| -c))
    }
}

impl Mul<KClass> for i64 {
    type Output = KClass;
    fn mul(self, v: KClass) -> KClass {
        KClass(v.0.map(|c| self * c))
    }
}

impl Add for QuotClass {
    type Output = QuotClass;
    fn add(self, o: QuotClass) -> QuotClass {
        QuotClass([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl Neg for QuotClass {
    type Output = QuotClass;
    fn neg(self) -> QuotClass {
        QuotClass([-self.0[0], -self.0[1]])
    }
}

/// An integer automorphism of `K_0` with a display name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeAuto {
    pub name: String,
    pub matrix: Mat4,
}

impl LatticeAuto {
    pub fn new(name: impl Into<String>, matrix: Mat4) -> Self {
        LatticeAuto { name: name.into(), matrix }
    }

    pub fn identity() -> Self {
        LatticeAuto::new("id", std::array::from_fn(|r| std::array::from_fn(|c| (r == c) as i64)))
    }

    /// Builds the matrix whose columns are the given images of `γ_0..γ_3`.
    pub fn from_images(name: impl Into<String>, images: [KClass; 4]) -> Self {
        LatticeAuto::new(name, std::array::from_fn(|r| std::array::from_fn(|c| images[c].0[r])))
    }

    pub fn apply(&self, v: KClass) -> KClass {
        KClass(std::array::from_fn(|r| (0..4).map(|c| self.matrix[r][c] * v.0[c]).sum()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeAuto) -> LatticeAuto {
        let m = std::array::from_fn(|r| {
            std::array::from_fn(|c| (0..4).map(|k| self.matrix[r][k] * other.matrix[k][c]).sum())
        });
        LatticeAuto::new(format!("{}*{}", self.name, other.name), m)
    }

    pub fn det(&self) -> i64 {
        det4(&self.matrix)
    }

    /// Inverse over the integers; `None` unless the determinant is a unit.
    pub fn inverse(&self) -> Option<LatticeAuto> {
        let d = self.det();
        if d != 1 && d != -1 {
            return None;
        }
        let m = std::array::from_fn(|r| std::array::from_fn(|c| cofactor(&self.matrix, c, r) * d));
        Some(LatticeAuto::new(format!("{}^-1", self.name), m))
    }

    /// True when `γ_0 - γ_2` and `γ_1 - γ_3` are mapped into their span.
    pub fn preserves_kernel(&self) -> bool {
        [KClass::new(1, 0, -1, 0), KClass::new(0, 1, 0, -1)].iter().all(|&k| {
            let [a, b, c, d] = self.apply(k).0;
            a + c == 0 && b + d == 0
        })
    }

    pub fn images(&self) -> [KClass; 4] {
        std::array::from_fn(|i| self.apply(unit(i)))
    }
}

fn unit(i: usize) -> KClass {
    let mut v = [0; 4];
    v[i] = 1;
    KClass(v)
}

fn minor3(m: &Mat4, skip_r: usize, skip_c: usize) -> i64 {
    let rows: Vec<usize> = (0..4).filter(|&r| r != skip_r).collect();
    let cols: Vec<usize> = (0..4).filter(|&c| c != skip_c).collect();
    let a = |i: usize, j: usize| m[rows[i]][cols[j]];
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

fn cofactor(m: &Mat4, r: usize, c: usize) -> i64 {
    let sign = if (r + c) % 2 == 0 { 1 } else { -1 };
    sign * minor3(m, r, c)
}

fn det4(m: &Mat4) -> i64 {
    (0..4).map(|c| m[0][c] * cofactor(m, 0, c)).sum()
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|r| std::array::from_fn(|c| a[r][0] * b[0][c] + a[r][1] * b[1][c]))
}

pub fn mat2_apply(a: &Mat2, v: QuotClass) -> QuotClass {
    QuotClass([a[0][0] * v.0[0] + a[0][1] * v.0[1], a[1][0] * v.0[0] + a[1][1] * v.0[1]])
}

pub const MAT2_ID: Mat2 = [[1, 0], [0, 1]];

/// The class `γ_i = [S_i]`.
pub fn gamma(i: usize) -> Result<KClass> {
    if i > 3 {
        return Err(Error::IndexOutOfRange(i));
    }
    Ok(unit(i))
}

/// The class of a skyscraper sheaf, `δ = γ_0 + γ_1 + γ_2 + γ_3`.
pub fn delta() -> KClass {
    KClass([1; 4])
}

/// `Ψ(S_i) = S_{i+1}`, so `ψ` is the cyclic shift of the basis.
pub fn psi() -> LatticeAuto {
    LatticeAuto::from_images("psi", std::array::from_fn(|i| unit((i + 1) % 4)))
}

/// `φ = ψ²`.
pub fn phi() -> LatticeAuto {
    let p = psi();
    LatticeAuto { name: "phi".into(), matrix: p.compose(&p).matrix }
}

pub fn t() -> LatticeAuto {
    LatticeAuto::new("t", [[2, -1, 0, 0], [1, 0, 0, 0], [0, 0, 2, -1], [0, 0, 1, 0]])
}

pub fn t_psi() -> LatticeAuto {
    LatticeAuto::new("t_psi", [[0, 0, 0, 1], [0, 2, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 2]])
}

pub fn apply(a: &LatticeAuto, v: KClass) -> KClass {
    a.apply(v)
}

pub fn project(v: KClass) -> QuotClass {
    let [a, b, c, d] = v.0;
    QuotClass([a + c, b + d])
}

/// Any preimage of a quotient class.
pub fn lift(v: QuotClass) -> KClass {
    KClass([v.0[0], v.0[1], 0, 0])
}

/// The matrix induced on `(γ̄_0, γ̄_1)`.
pub fn quotient_action(a: &LatticeAuto) -> Result<Mat2> {
    if !a.preserves_kernel() {
        return Err(Error::KernelNotPreserved);
    }
    let c0 = project(a.apply(unit(0))).0;
    let c1 = project(a.apply(unit(1))).0;
    Ok([[c0[0], c1[0]], [c0[1], c1[1]]])
}

/// `{(n,n+1), (n+1,n) : n ≤ n_max} ∪ {±(1,1)}` in a fixed order.
pub fn delta_set(n_max: u32) -> Vec<QuotClass> {
    let n_max = n_max as i64;
    let mut out = Vec::with_capacity(2 * n_max as usize + 4);
    for n in 0..=n_max {
        out.push(QuotClass([n, n + 1]));
        out.push(QuotClass([n + 1, n]));
    }
    out.push(QuotClass([1, 1]));
    out.push(QuotClass([-1, -1]));
    out
}

/// The Tits form of the Kronecker quiver, `(p - q)^2`.
pub fn tits_form_k2(p: i64, q: i64) -> i64 {
    (p - q) * (p - q)
}
