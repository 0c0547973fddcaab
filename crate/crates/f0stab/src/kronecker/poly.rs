//! Univariate polynomials over Q, including factorization into irreducibles
//! by Kronecker's interpolation method.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, q, Q};

/// Coefficients from the constant term up; never has a trailing zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPoly(Vec<Q>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        QPoly::new(vec![c])
    }

    pub fn x() -> Self {
        QPoly::from_ints(&[0, 1])
    }

    /// `x - r`.
    pub fn linear(r: Q) -> Self {
        QPoly::new(vec![-r, Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&l.recip())
    }

    pub fn scale(&self, c: &Q) -> Self {
        QPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(QPoly::constant(Q::one()), |acc, _| &acc * self)
    }

    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead_inv = d.lead().recip();
        let mut r = self.0.clone();
        let mut quo = vec![Q::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() * &lead_inv;
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            quo[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (QPoly::new(quo), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` not normalized.
    pub fn ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (QPoly::constant(Q::one()), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::constant(Q::one()));
        while !r1.is_zero() {
            let (quo, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&quo * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&quo * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        other.rem(self).is_zero()
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> QPoly {
        let g = QPoly::gcd(self, &self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Lagrange interpolation through distinct abscissae.
    pub fn interpolate(points: &[(Q, Q)]) -> QPoly {
        let mut acc = QPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = QPoly::constant(Q::one());
            let mut denom = Q::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = &basis * &QPoly::linear(xj.clone());
                    denom *= xi - xj;
                }
            }
            acc = &acc + &basis.scale(&(yi / denom));
        }
        acc
    }

    /// Integer multiple with coprime coefficients and positive leading term.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if self.lead().is_negative() { -BigInt::one() } else { BigInt::one() };
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Distinct monic irreducible factors, sorted.
    pub fn irreducible_factors(&self) -> Result<Vec<QPoly>> {
        if self.is_zero() {
            return Err(Error::Factorization("zero polynomial".into()));
        }
        let mut out = BTreeSet::new();
        let mut stack = vec![self.squarefree_part()];
        while let Some(f) = stack.pop() {
            match f.degree() {
                None | Some(0) => {}
                Some(1) => {
                    out.insert(f.monic());
                }
                Some(n) => match (1..=n / 2).map(|k| find_factor(&f, k)).find_map(|r| r.transpose()) {
                    Some(g) => {
                        let g = g?;
                        let h = f.div_rem(&g).0;
                        stack.push(g.monic());
                        stack.push(h.monic());
                    }
                    None => {
                        out.insert(f.monic());
                    }
                },
            }
        }
        Ok(out.into_iter().collect())
    }
}

/// Bound on the number of interpolation candidates tried per degree.
const FACTOR_BUDGET: u128 = 4_000_000;

/// Looks for a factor of degree exactly `k` of a squarefree `f`.
fn find_factor(f: &QPoly, k: usize) -> Result<Option<QPoly>> {
    let fz = f.primitive_integer();
    let eval = |x: i64| -> BigInt {
        let xb = BigInt::from(x);
        fz.iter().rev().fold(BigInt::zero(), |acc, c| acc * &xb + c)
    };
    // candidate points 0, 1, -1, 2, -2, ...; keep those with fewest divisors
    let mut pool = Vec::new();
    for s in 0..(4 * k as i64 + 12) {
        let x = if s % 2 == 0 { -(s / 2) } else { s / 2 + 1 };
        let v = eval(x);
        if v.is_zero() {
            if k == 1 {
                return Ok(Some(QPoly::linear(q(x))));
            }
            continue;
        }
        let v = v
            .abs()
            .to_u128()
            .filter(|&v| v <= 1u128 << 62)
            .ok_or_else(|| Error::Factorization(format!("value {} too large to factor", eval(x))))?;
        pool.push((divisors(v as u64), x));
    }
    pool.sort_by_key(|(d, x)| (d.len(), x.abs()));
    let chosen = &pool[..k + 1];
    let count: u128 = chosen.iter().map(|(d, _)| d.len() as u128).product::<u128>() << k;
    if count > FACTOR_BUDGET {
        return Err(Error::Factorization(format!("{count} candidates for degree {k}")));
    }
    let mut idx = vec![0usize; k + 1];
    let mut signs = vec![1i64; k + 1];
    loop {
        let points: Vec<(Q, Q)> = chosen
            .iter()
            .enumerate()
            .map(|(j, (d, x))| (q(*x), Q::from_integer(BigInt::from(d[idx[j]]) * signs[j])))
            .collect();
        let g = QPoly::interpolate(&points);
        if g.degree() == Some(k) && g.coeffs().iter().all(|c| c.is_integer()) && g.divides(f) {
            return Ok(Some(g.monic()));
        }
        // odometer over divisor choices, and signs of all but the first value
        let mut j = 0;
        loop {
            if j > k {
                return Ok(None);
            }
            if j > 0 && signs[j] == 1 {
                signs[j] = -1;
                break;
            }
            signs[j] = 1;
            idx[j] += 1;
            if idx[j] < chosen[j].0.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly::new(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or_default() + o.0.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly::new(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or_default() - o.0.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }
}

impl PartialOrd for QPoly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for QPoly {
    /// By degree, then by coefficients from the top down.
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.iter().rev().cmp(o.0.iter().rev()))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for QPoly {
    type Err = Error;

    /// Parses the output of `Display`, e.g. `x^2-2` or `x-1/3`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (k, c) in s.char_indices() {
            if k > 0 && (c == '+' || c == '-') && !s[..k].ends_with('/') && !s[..k].ends_with('^') {
                terms.push(&s[start..k]);
                start = k;
            }
        }
        terms.push(&s[start..]);
        let mut coeffs: Vec<Q> = Vec::new();
        for t in terms {
            let (coef, power) = match t.find('x') {
                None => (crate::exact::parse_rational(t)?, 0usize),
                Some(pos) => {
                    let c = t[..pos].trim_end_matches('*');
                    let c = match c {
                        "" | "+" => Q::one(),
                        "-" => -Q::one(),
                        other => crate::exact::parse_rational(other)?,
                    };
                    let rest = &t[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| Error::Parse(format!("bad exponent in {t:?}")))?
                    };
                    (c, e)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Q::zero());
            }
            coeffs[power] += coef;
        }
        Ok(QPoly::new(coeffs))
    }
}
