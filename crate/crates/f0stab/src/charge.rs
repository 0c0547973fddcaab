//! Exact central charges on the quotient lattice.
//!
//! A complex number is a pair of rationals. Phases are never computed as
//! real numbers: two values in the semi-closed upper half plane `H` are
//! compared by the sign of their cross product.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, q, qf, sqrt_upper, Q};
use crate::k_lattice::{delta, KClass, QuotClass};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: Q,
    pub im: Q,
}

impl ExactComplex {
    pub fn new(re: Q, im: Q) -> Self {
        ExactComplex { re, im }
    }

    pub fn zero() -> Self {
        ExactComplex::new(Q::zero(), Q::zero())
    }

    pub fn real(re: Q) -> Self {
        ExactComplex::new(re, Q::zero())
    }

    pub fn i() -> Self {
        ExactComplex::new(Q::zero(), Q::one())
    }

    /// `re_n/re_d + (im_n/im_d) i`, for literals in code and tests.
    pub fn from_ratios(re: (i64, i64), im: (i64, i64)) -> Self {
        ExactComplex::new(qf(re.0, re.1), qf(im.0, im.1))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        ExactComplex::new(q(re), q(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactComplex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, s: &Q) -> Self {
        ExactComplex::new(&self.re * s, &self.im * s)
    }

    /// `re(self)·im(o) − im(self)·re(o)`.
    pub fn cross(&self, o: &ExactComplex) -> Q {
        &self.re * &o.im - &self.im * &o.re
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroCharge);
        }
        let n = self.norm_sq();
        Ok(ExactComplex::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn div(&self, o: &ExactComplex) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    /// True when this is a nonnegative real multiple of `o`'s direction,
    /// i.e. both lie on one ray (or one of them is zero).
    pub fn same_ray(&self, o: &ExactComplex) -> bool {
        self.cross(o).is_zero() && !(&self.re * &o.re + &self.im * &o.im).is_negative()
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*i", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
    }
}

impl FromStr for ExactComplex {
    type Err = Error;

    /// Accepts `"a/b+c/d*i"` and its relatives: `"3"`, `"1/4*i"`, `"-i"`, `"2-i"`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty charge literal".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (k, c) in s.char_indices() {
            if k > 0 && (c == '+' || c == '-') && !s[..k].ends_with('/') {
                terms.push(&s[start..k]);
                start = k;
            }
        }
        terms.push(&s[start..]);
        let (mut re, mut im) = (None, None);
        for term in terms {
            let (is_im, coeff) = if let Some(c) = term.strip_suffix("*i") {
                (true, c.to_string())
            } else if let Some(c) = term.strip_suffix('i') {
                let c = match c {
                    "" | "+" => "1".to_string(),
                    "-" => "-1".to_string(),
                    other => other.to_string(),
                };
                (true, c)
            } else {
                (false, term.to_string())
            };
            let value = parse_rational(&coeff)?;
            let slot = if is_im { &mut im } else { &mut re };
            if slot.replace(value).is_some() {
                return Err(Error::Parse(format!("repeated part in {s:?}")));
            }
        }
        Ok(ExactComplex::new(re.unwrap_or_else(Q::zero), im.unwrap_or_else(Q::zero)))
    }
}

impl Serialize for ExactComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, o: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, o: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, o: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for ExactComplex {
    type Output = ExactComplex;
    fn add(self, o: ExactComplex) -> ExactComplex {
        &self + &o
    }
}

impl Sub for ExactComplex {
    type Output = ExactComplex;
    fn sub(self, o: ExactComplex) -> ExactComplex {
        &self - &o
    }
}

impl Mul for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, o: ExactComplex) -> ExactComplex {
        &self * &o
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        -&self
    }
}

/// `H = {im > 0} ∪ {im = 0, re < 0}`.
pub fn in_h(z: &ExactComplex) -> bool {
    z.im.is_positive() || (z.im.is_zero() && z.re.is_negative())
}

/// Orders the phases of two nonzero values of `H`.
pub fn phase_cmp(z1: &ExactComplex, z2: &ExactComplex) -> Result<Ordering> {
    for z in [z1, z2] {
        if z.is_zero() {
            return Err(Error::ZeroCharge);
        }
        if !in_h(z) {
            return Err(Error::OutsideH(z.to_string()));
        }
    }
    // both arguments lie in (0, π], so the sine of their difference decides
    Ok(Q::zero().cmp(&z1.cross(z2)))
}

/// A charge on the quotient lattice, fixed by its values on `γ̄_0, γ̄_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCharge {
    pub z0: ExactComplex,
    pub z1: ExactComplex,
}

impl CentralCharge {
    pub fn new(z0: ExactComplex, z1: ExactComplex) -> Self {
        CentralCharge { z0, z1 }
    }

    pub fn eval(&self, v: impl Into<QuotClass>) -> ExactComplex {
        let [a, b] = v.into().0;
        &self.z0.scale(&q(a)) + &self.z1.scale(&q(b))
    }

    pub fn scaled(&self, c: &ExactComplex) -> CentralCharge {
        CentralCharge::new(c * &self.z0, c * &self.z1)
    }
}

impl From<KClass> for QuotClass {
    fn from(v: KClass) -> QuotClass {
        crate::k_lattice::project(v)
    }
}

/// `Z(a,b,c,d) = (a+c) z0 + (b+d) z1`.
pub fn evaluate(z: &CentralCharge, v: impl Into<QuotClass>) -> ExactComplex {
    z.eval(v)
}

/// Decides `Z(v) ≠ 0` for every `v ∈ Δ`.
///
/// `p z0 + q z1 = 0` for `(p,q) ∈ Δ` happens iff `z0 = 0`, `z1 = 0`, or
/// `z0/z1 = -q/p` with `p, q > 0` and `|p - q| ≤ 1`.
pub fn is_in_hreg(z: &CentralCharge) -> bool {
    if z.z0.is_zero() || z.z1.is_zero() {
        return false;
    }
    let r = z.z0.div(&z.z1).expect("z1 is nonzero");
    if !r.im.is_zero() || !r.re.is_negative() {
        return true;
    }
    let m = -r.re;
    let diff = m.numer() - m.denom();
    diff.abs() > num_bigint::BigInt::one()
}

/// Rescales so that `Z(δ) = i`; returns the scalar `c = i / Z(δ)` and `c·Z`.
pub fn normalize(z: &CentralCharge) -> Result<(ExactComplex, CentralCharge)> {
    let zd = z.eval(delta());
    if zd.is_zero() {
        return Err(Error::DeltaChargeZero);
    }
    let c = ExactComplex::i().div(&zd)?;
    let zn = z.scaled(&c);
    Ok((c, zn))
}

pub fn is_normalized(z: &CentralCharge) -> bool {
    z.eval(delta()) == ExactComplex::i()
}

/// Exact value of `sup_{v ∈ Δ} ‖v‖² / |Z(v)|²`, where `‖v‖² = v_0² + v_1²`.
///
/// The finite scan covers `n ≤ n_max` and is extended until the remaining
/// tail is provably below the running maximum (or below its limit
/// `2/|z0+z1|²`, which is then returned if larger).
pub fn support_constant_squared(z: &CentralCharge, n_max: u32) -> Result<Q> {
    if !is_in_hreg(z) {
        return Err(Error::NotRegular);
    }
    let w = &z.z0 + &z.z1;
    let w2 = w.norm_sq();
    let limit = q(2) / &w2;
    let mut best = limit.clone();
    for base in [&z.z1, &z.z0] {
        // v_n = n(1,1) + e with Z(e) = base
        let c = &w.re * &base.re + &w.im * &base.im;
        let z2 = base.norm_sq();
        let a = q(2) * &w2 - q(4) * &c;
        let b = &w2 - q(2) * &z2;
        let slope = a.clone().max(Q::zero()) + b.clone().max(Q::zero());
        let n1 = (q(4) * c.abs() / &w2).ceil();
        let ratio = |n: &Q| {
            let norm = q(2) * n * n + q(2) * n + q(1);
            let d = n * n * &w2 + q(2) * n * &c + &z2;
            norm / d
        };
        let mut n = Q::zero();
        loop {
            let r = ratio(&n);
            if r > best {
                best = r;
            }
            let done = n >= q(n_max as i64) && n >= n1 && n >= q(1) && {
                let next = &n + q(1);
                let tail_nonpositive = !a.is_positive() && !(&a * &next + &b).is_positive();
                tail_nonpositive || (best > limit && q(2) * &slope / (&w2 * &w2 * &next) <= &best - &limit)
            };
            if done {
                break;
            }
            n += q(1);
        }
    }
    Ok(best)
}

/// A rational `C` with `‖v‖ ≤ C |Z(v)|` for all `v ∈ Δ`: the exact square
/// root of [`support_constant_squared`] when it is rational, otherwise the
/// next multiple of `2^-32` above it.
pub fn support_constant(z: &CentralCharge, n_max: u32) -> Result<Q> {
    Ok(sqrt_upper(&support_constant_squared(z, n_max)?, 32))
}

/// An element of `GL⁺(2,R)` with rational entries together with the integer
/// that pins the lift of its phase function (`f(1/2) ∈ (n - 1/2, n + 1/2]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedGL {
    pub matrix: [[Q; 2]; 2],
    pub anchor: i64,
}

impl LiftedGL {
    pub fn new(matrix: [[Q; 2]; 2], anchor: i64) -> Result<Self> {
        let g = LiftedGL { matrix, anchor };
        if !g.det().is_positive() {
            return Err(Error::Precondition("lifted element needs positive determinant".into()));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        LiftedGL { matrix: [[q(1), q(0)], [q(0), q(1)]], anchor: 0 }
    }

    pub fn det(&self) -> Q {
        let m = &self.matrix;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn apply(&self, z: &ExactComplex) -> ExactComplex {
        let m = &self.matrix;
        ExactComplex::new(&m[0][0] * &z.re + &m[0][1] * &z.im, &m[1][0] * &z.re + &m[1][1] * &z.im)
    }

    pub fn inverse(&self) -> LiftedGL {
        let d = self.det();
        let m = &self.matrix;
        LiftedGL {
            matrix: [[&m[1][1] / &d, -(&m[0][1] / &d)], [-(&m[1][0] / &d), &m[0][0] / &d]],
            anchor: -self.anchor,
        }
    }
}

/// `Z_g = g⁻¹ Z`.
pub fn act_lifted(z: &CentralCharge, g: &LiftedGL) -> CentralCharge {
    let inv = g.inverse();
    CentralCharge::new(inv.apply(&z.z0), inv.apply(&z.z1))
}

/// The element with `g(e0) = 2e0 + e1`, `g(e1) = -e0` for `e_i = Z(γ_i)`.
pub fn g_element(z: &CentralCharge) -> Result<LiftedGL> {
    let (e0, e1) = (&z.z0, &z.z1);
    let det_e = e0.cross(e1);
    if det_e.is_zero() {
        return Err(Error::DegenerateFrame);
    }
    if !is_normalized(z) {
        return Err(Error::Precondition("charge must satisfy Z(delta) = i".into()));
    }
    if !in_h(e0) || !in_h(e1) || phase_cmp(e0, e1)? != Ordering::Less {
        return Err(Error::Precondition("charge must lie in U+".into()));
    }
    // g = E T E^-1, E = [e0 e1] as columns, T = [[2,-1],[1,0]]
    let e = [[e0.re.clone(), e1.re.clone()], [e0.im.clone(), e1.im.clone()]];
    let e_inv = [[&e[1][1] / &det_e, -(&e[0][1] / &det_e)], [-(&e[1][0] / &det_e), &e[0][0] / &det_e]];
    let t = [[q(2), q(-1)], [q(1), q(0)]];
    let mul = |a: &[[Q; 2]; 2], b: &[[Q; 2]; 2]| -> [[Q; 2]; 2] {
        std::array::from_fn(|r| std::array::from_fn(|c| &a[r][0] * &b[0][c] + &a[r][1] * &b[1][c]))
    };
    LiftedGL::new(mul(&mul(&e, &t), &e_inv), 0)
}
