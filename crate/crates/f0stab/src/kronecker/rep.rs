use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{identity, is_invertible, mat_mul, nullity, primitive_pair, Field, Matrix, PrimeField, Rationals};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, q, Q};

/// The field a representation is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "QQ" | "rationals" => Ok(FieldTag::Rational),
            other => {
                let p: u64 = other
                    .trim_start_matches(['F', 'f'])
                    .trim_start_matches('_')
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown field {other:?}")))?;
                if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                    return Err(Error::Parse(format!("{p} is not prime")));
                }
                Ok(FieldTag::Prime(p))
            }
        }
    }
}

/// A point `[a:b]` of P¹ indexing the regular family of dimension `(m,m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct P1Point {
    pub a: Q,
    pub b: Q,
}

impl P1Point {
    pub fn new(a: Q, b: Q) -> Self {
        P1Point { a, b }
    }

    pub fn finite(lambda: Q) -> Self {
        P1Point { a: lambda, b: q(1) }
    }

    pub fn infinity() -> Self {
        P1Point { a: q(1), b: q(0) }
    }
}

/// A representation of the Kronecker quiver: two `p × q` matrices mapping
/// the vertex-1 space `k^q` to the vertex-0 space `k^p`.
///
/// With this orientation `(k^p, 0)` is a subrepresentation of every
/// representation, so `C_0` is a subobject of every indecomposable except `C_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KroneckerRep {
    pub field: FieldTag,
    pub p: usize,
    pub q: usize,
    pub a: Matrix<Q>,
    pub b: Matrix<Q>,
}

impl KroneckerRep {
    pub fn new(field: FieldTag, a: Matrix<Q>, b: Matrix<Q>) -> Result<Self> {
        if (a.rows, a.cols) != (b.rows, b.cols) {
            return Err(Error::Precondition("A and B must have the same shape".into()));
        }
        let rep = KroneckerRep { field, p: a.rows, q: a.cols, a, b };
        if let FieldTag::Prime(p) = field {
            let f = PrimeField::new(p);
            let bad =
                rep.a.data.iter().chain(&rep.b.data).find(|x| f.from_q(x).map(|v| q(v as i64)) != Some((*x).clone()));
            if let Some(x) = bad {
                return Err(Error::NotReducible(fmt_rational(x), p));
            }
        }
        Ok(rep)
    }

    pub fn zero(field: FieldTag, p: usize, qd: usize) -> Self {
        KroneckerRep { field, p, q: qd, a: Matrix::filled(p, qd, q(0)), b: Matrix::filled(p, qd, q(0)) }
    }

    pub fn class(&self) -> (i64, i64) {
        (self.p as i64, self.q as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    pub fn direct_sum(&self, o: &KroneckerRep) -> Result<KroneckerRep> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        Ok(KroneckerRep {
            field: self.field,
            p: self.p + o.p,
            q: self.q + o.q,
            a: self.a.block_diag(&o.a, q(0)),
            b: self.b.block_diag(&o.b, q(0)),
        })
    }

    pub fn power(&self, k: usize) -> KroneckerRep {
        let mut acc = KroneckerRep::zero(self.field, 0, 0);
        for _ in 0..k {
            acc = acc.direct_sum(self).expect("same field");
        }
        acc
    }

    /// `(P A R, P B R)` for invertible `P` (`p × p`) and `R` (`q × q`).
    pub fn change_basis(&self, pm: &Matrix<Q>, rm: &Matrix<Q>) -> Result<KroneckerRep> {
        let check = |m: &Matrix<Q>, n: usize| -> Result<()> {
            let ok = m.rows == n
                && match self.field {
                    FieldTag::Rational => is_invertible(&Rationals, m),
                    FieldTag::Prime(p) => {
                        let f = PrimeField::new(p);
                        m.try_map(|x| f.from_q(x)).is_some_and(|mm| is_invertible(&f, &mm))
                    }
                };
            if ok {
                Ok(())
            } else {
                Err(Error::Precondition("basis change must be invertible".into()))
            }
        };
        check(pm, self.p)?;
        check(rm, self.q)?;
        let (a, b) = match self.field {
            FieldTag::Rational => {
                let f = Rationals;
                (mat_mul(&f, &mat_mul(&f, pm, &self.a), rm), mat_mul(&f, &mat_mul(&f, pm, &self.b), rm))
            }
            FieldTag::Prime(p) => {
                let f = PrimeField::new(p);
                let conv = |m: &Matrix<Q>| m.map(|x| f.from_q(x).expect("reducible"));
                let back = |m: Matrix<u64>| m.map(|&x| q(x as i64));
                let (pp, rr) = (conv(pm), conv(rm));
                (
                    back(mat_mul(&f, &mat_mul(&f, &pp, &conv(&self.a)), &rr)),
                    back(mat_mul(&f, &mat_mul(&f, &pp, &conv(&self.b)), &rr)),
                )
            }
        };
        Ok(KroneckerRep { field: self.field, p: self.p, q: self.q, a, b })
    }

    /// Reduction modulo a prime of an isomorphic copy with coprime integer entries.
    pub fn reduce_mod(&self, prime: u64) -> Result<KroneckerRep> {
        if self.field != FieldTag::Rational {
            return Err(Error::FieldMismatch);
        }
        let f = PrimeField::new(prime);
        let (a, b) = primitive_pair(&self.a, &self.b);
        let red = |m: &Matrix<Q>| m.map(|x| q(f.from_q(x).expect("integer entries") as i64));
        Ok(KroneckerRep { field: FieldTag::Prime(prime), p: self.p, q: self.q, a: red(&a), b: red(&b) })
    }

    /// Integer entries viewed as rationals.
    pub fn lift_to_q(&self) -> KroneckerRep {
        KroneckerRep { field: FieldTag::Rational, ..self.clone() }
    }
}

impl fmt::Display for KroneckerRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |m: &Matrix<Q>| {
            let rows: Vec<String> =
                m.to_rows().iter().map(|r| r.iter().map(fmt_rational).collect::<Vec<_>>().join(" ")).collect();
            format!("[{}]", rows.join("; "))
        };
        write!(f, "({},{}) over {}: A={} B={}", self.p, self.q, self.field, show(&self.a), show(&self.b))
    }
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    p: usize,
    q: usize,
    field: String,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    b: Vec<Vec<String>>,
}

impl Serialize for KroneckerRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let conv = |m: &Matrix<Q>| m.to_rows().iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
        RepJson { p: self.p, q: self.q, field: self.field.to_string(), a: conv(&self.a), b: conv(&self.b) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for KroneckerRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = RepJson::deserialize(d)?;
        let field: FieldTag = j.field.parse().map_err(D::Error::custom)?;
        let conv = |rows: &Vec<Vec<String>>| -> Result<Matrix<Q>> {
            if rows.len() != j.p || rows.iter().any(|r| r.len() != j.q) {
                return Err(Error::Parse(format!("matrix shape does not match p={} q={}", j.p, j.q)));
            }
            let entries = rows
                .iter()
                .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_rows(j.p, j.q, entries))
        };
        let a = conv(&j.a).map_err(D::Error::custom)?;
        let b = conv(&j.b).map_err(D::Error::custom)?;
        KroneckerRep::new(field, a, b).map_err(D::Error::custom)
    }
}

fn shifted_identity(rows: usize, cols: usize, r0: usize, c0: usize, n: usize) -> Matrix<Q> {
    let mut m = Matrix::filled(rows, cols, q(0));
    for i in 0..n {
        m.set(r0 + i, c0 + i, q(1));
    }
    m
}

/// Single nilpotent Jordan block, ones on the superdiagonal.
fn nilpotent(m: usize) -> Matrix<Q> {
    let mut n = Matrix::filled(m, m, q(0));
    for i in 0..m.saturating_sub(1) {
        n.set(i, i + 1, q(1));
    }
    n
}

/// The indecomposable representation of class `(p, q)` over `Q`.
///
/// Real roots `(n, n+1)` and `(n+1, n)` take no `lambda`; imaginary roots
/// `(m, m)` need a point `[a:b]` of P¹.
pub fn indecomposable(p: usize, qd: usize, lambda: Option<P1Point>) -> Result<KroneckerRep> {
    indecomposable_over(FieldTag::Rational, p, qd, lambda)
}

pub fn indecomposable_over(field: FieldTag, p: usize, qd: usize, lambda: Option<P1Point>) -> Result<KroneckerRep> {
    let (pi, qi) = (p as i64, qd as i64);
    if (pi - qi).abs() > 1 || (p == 0 && qd == 0) {
        return Err(Error::NotARoot(pi, qi));
    }
    let imaginary = p == qd;
    if imaginary != lambda.is_some() {
        return Err(Error::LambdaMismatch);
    }
    let (a, b) = if p + 1 == qd {
        (shifted_identity(p, qd, 0, 0, p), shifted_identity(p, qd, 0, 1, p))
    } else if qd + 1 == p {
        (shifted_identity(p, qd, 0, 0, qd), shifted_identity(p, qd, 1, 0, qd))
    } else {
        let pt = lambda.expect("checked above");
        let b_zero = match field {
            FieldTag::Rational => num_traits::Zero::is_zero(&pt.b),
            FieldTag::Prime(pr) => PrimeField::new(pr).from_q(&pt.b).map_or(true, |v| v == 0),
        };
        if b_zero {
            (nilpotent(p), identity(&Rationals, p))
        } else {
            let lam = match field {
                FieldTag::Rational => &pt.a / &pt.b,
                FieldTag::Prime(pr) => {
                    let f = PrimeField::new(pr);
                    let v = f.mul(
                        &f.from_q(&pt.a).ok_or(Error::NotReducible(fmt_rational(&pt.a), pr))?,
                        &f.inv(&f.from_q(&pt.b).expect("nonzero")),
                    );
                    q(v as i64)
                }
            };
            let mut b = nilpotent(p);
            for i in 0..p {
                b.set(i, i, lam.clone());
            }
            (identity(&Rationals, p), b)
        }
    };
    KroneckerRep::new(field, a, b)
}

/// The simple representation at vertex 0, class `(1,0)`.
pub fn c0(field: FieldTag) -> KroneckerRep {
    KroneckerRep::zero(field, 1, 0)
}

/// The simple representation at vertex 1, class `(0,1)`.
pub fn c1(field: FieldTag) -> KroneckerRep {
    KroneckerRep::zero(field, 0, 1)
}

/// Dimension of the space of morphisms `M → N`, pairs `(f0, f1)` with
/// `f0 A_M = A_N f1` and `f0 B_M = B_N f1`.
pub fn dim_hom(m: &KroneckerRep, n: &KroneckerRep) -> Result<usize> {
    if m.field != n.field {
        return Err(Error::FieldMismatch);
    }
    Ok(match m.field {
        FieldTag::Rational => dim_hom_in(&Rationals, m, n),
        FieldTag::Prime(p) => dim_hom_in(&PrimeField::new(p), m, n),
    })
}

fn dim_hom_in<F: Field>(f: &F, m: &KroneckerRep, n: &KroneckerRep) -> usize {
    let conv = |x: &Matrix<Q>| x.map(|v| f.from_q(v).expect("entries lie in the field"));
    let (am, bm, an, bn) = (conv(&m.a), conv(&m.b), conv(&n.a), conv(&n.b));
    let (pm, qm, pn, qn) = (m.p, m.q, n.p, n.q);
    let off = pn * pm;
    let unknowns = off + qn * qm;
    let mut sys = Matrix::filled(2 * pn * qm, unknowns, f.zero());
    for (k, (xm, xn)) in [(&am, &an), (&bm, &bn)].into_iter().enumerate() {
        for r in 0..pn {
            for c in 0..qm {
                let row = k * pn * qm + r * qm + c;
                // (f0 X_M)[r][c] = Σ_j f0[r][j] X_M[j][c]
                for j in 0..pm {
                    let v = f.add(sys.get(row, r * pm + j), xm.get(j, c));
                    sys.set(row, r * pm + j, v);
                }
                // -(X_N f1)[r][c] = -Σ_i X_N[r][i] f1[i][c]
                for i in 0..qn {
                    let col = off + i * qm + c;
                    let v = f.sub(sys.get(row, col), xn.get(r, i));
                    sys.set(row, col, v);
                }
            }
        }
    }
    nullity(f, &sys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(m: &Matrix<Q>) -> Vec<Vec<i64>> {
        m.to_rows().iter().map(|r| r.iter().map(|x| x.to_integer().try_into().unwrap()).collect()).collect()
    }

    #[test]
    fn constructors() {
        let e = indecomposable(1, 1, Some(P1Point::new(q(2), q(1)))).unwrap();
        assert_eq!((rows(&e.a), rows(&e.b)), (vec![vec![1]], vec![vec![2]]));
        let s = indecomposable(1, 2, None).unwrap();
        assert_eq!((rows(&s.a), rows(&s.b)), (vec![vec![1, 0]], vec![vec![0, 1]]));
        let t = indecomposable(2, 1, None).unwrap();
        assert_eq!((rows(&t.a), rows(&t.b)), (vec![vec![1], vec![0]], vec![vec![0], vec![1]]));
        let c = indecomposable(0, 1, None).unwrap();
        assert_eq!((c.p, c.q), (0, 1));
        let inf = indecomposable(2, 2, Some(P1Point::infinity())).unwrap();
        assert_eq!((rows(&inf.a), rows(&inf.b)), (vec![vec![0, 1], vec![0, 0]], vec![vec![1, 0], vec![0, 1]]));
        assert_eq!(indecomposable(1, 3, None), Err(Error::NotARoot(1, 3)));
        assert_eq!(indecomposable(2, 2, None), Err(Error::LambdaMismatch));
        assert_eq!(indecomposable(1, 2, Some(P1Point::infinity())), Err(Error::LambdaMismatch));
    }

    #[test]
    fn over_prime_field() {
        let e = indecomposable_over(FieldTag::Prime(5), 1, 1, Some(P1Point::new(q(1), q(2)))).unwrap();
        assert_eq!(rows(&e.b), vec![vec![3]]);
        let z = indecomposable_over(FieldTag::Prime(5), 1, 1, Some(P1Point::new(q(1), q(5)))).unwrap();
        assert_eq!((rows(&z.a), rows(&z.b)), (vec![vec![0]], vec![vec![1]]));
    }

    #[test]
    fn homs() {
        let f = FieldTag::Rational;
        assert_eq!(dim_hom(&c0(f), &c0(f)).unwrap(), 1);
        assert_eq!(dim_hom(&c0(f), &c1(f)).unwrap(), 0);
        let e2 = indecomposable(2, 2, Some(P1Point::finite(q(3)))).unwrap();
        assert_eq!(dim_hom(&e2, &e2).unwrap(), 2);
        let e1 = indecomposable(1, 1, Some(P1Point::finite(q(3)))).unwrap();
        assert_eq!(dim_hom(&e1, &e1).unwrap(), 1);
        let s = indecomposable(1, 2, None).unwrap();
        assert_eq!(dim_hom(&s, &s).unwrap(), 1);
        // C0 is a subobject of every indecomposable other than C1
        assert_eq!(dim_hom(&c0(f), &s).unwrap(), 1);
        assert_eq!(dim_hom(&c0(f), &e1).unwrap(), 1);
        assert_eq!(dim_hom(&s, &c0(f)).unwrap(), 0);
        assert_eq!(dim_hom(&c0(f), &c0(FieldTag::Prime(5))), Err(Error::FieldMismatch));
    }

    #[test]
    fn json_roundtrip() {
        let m = indecomposable(2, 2, Some(P1Point::finite(crate::exact::qf(-1, 3)))).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"-1/3\""));
        let back: KroneckerRep = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let c = c1(FieldTag::Prime(5));
        let back: KroneckerRep = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<KroneckerRep>(r#"{"p":1,"q":1,"field":"F5","A":[["7"]],"B":[["0"]]}"#).is_err());
    }

    #[test]
    fn reduction() {
        let m = indecomposable(1, 1, Some(P1Point::finite(crate::exact::qf(1, 5)))).unwrap();
        let r = m.reduce_mod(5).unwrap();
        assert_eq!((rows(&r.a), rows(&r.b)), (vec![vec![0]], vec![vec![1]]));
    }
}
