//! Line-bundle cohomology on P¹ and P¹×P¹, used to re-derive the quiver of
//! the standard heart and the vanishing behind the tilting bundle.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LineBundleF0 {
    pub a: i64,
    pub b: i64,
}

/// A shifted line bundle `O(a,b)[shift]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DualObject {
    pub bundle: LineBundleF0,
    pub shift: i64,
}

impl LineBundleF0 {
    pub const fn new(a: i64, b: i64) -> Self {
        LineBundleF0 { a, b }
    }

    pub const fn shifted(self, shift: i64) -> DualObject {
        DualObject { bundle: self, shift }
    }
}

impl From<LineBundleF0> for DualObject {
    fn from(bundle: LineBundleF0) -> Self {
        DualObject { bundle, shift: 0 }
    }
}

impl fmt::Display for DualObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({},{})", self.bundle.a, self.bundle.b)?;
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

/// The exceptional collection `(O, O(1,0), O(1,1), O(2,1))`.
pub const EXCEPTIONAL: [LineBundleF0; 4] =
    [LineBundleF0::new(0, 0), LineBundleF0::new(1, 0), LineBundleF0::new(1, 1), LineBundleF0::new(2, 1)];

/// Its dual collection `(O, O(-1,0)[1], O(1,-1)[1], O(0,-1)[2])`.
pub const DUAL: [DualObject; 4] = [
    LineBundleF0::new(0, 0).shifted(0),
    LineBundleF0::new(-1, 0).shifted(1),
    LineBundleF0::new(1, -1).shifted(1),
    LineBundleF0::new(0, -1).shifted(2),
];

/// `(h⁰, h¹)` of `O(n)` on P¹.
pub fn h_p1(n: i64) -> (u64, u64) {
    ((n + 1).max(0) as u64, (-n - 1).max(0) as u64)
}

/// `h^k(P¹×P¹, O(a,b))` by Künneth.
pub fn h_f0(a: i64, b: i64, k: i64) -> u64 {
    let (x, y) = (h_p1(a), h_p1(b));
    let hx = [x.0, x.1];
    let hy = [y.0, y.1];
    (0..2)
        .filter_map(|s| {
            let t = k - s;
            (0..2).contains(&t).then(|| hx[s as usize] * hy[t as usize])
        })
        .sum()
}

/// `dim Ext^k_{F0}(F, G)` for shifted line bundles.
pub fn ext_f0(f: impl Into<DualObject>, g: impl Into<DualObject>, k: i64) -> u64 {
    let (f, g) = (f.into(), g.into());
    h_f0(g.bundle.a - f.bundle.a, g.bundle.b - f.bundle.b, k + g.shift - f.shift)
}

/// Euler pairing `χ(F, G) = Σ (-1)^k dim Ext^k(F, G)` on P¹×P¹.
pub fn euler_f0(f: impl Into<DualObject>, g: impl Into<DualObject>) -> i64 {
    let (f, g) = (f.into(), g.into());
    let (a, b) = (g.bundle.a - f.bundle.a, g.bundle.b - f.bundle.b);
    let sign = if (g.shift - f.shift).rem_euclid(2) == 0 { 1 } else { -1 };
    sign * (a + 1) * (b + 1)
}

/// `dim Ext^k_X(s_*F, s_*G) = Ext^k(F,G) + Ext^{3-k}(G,F)` on the total space.
pub fn ext_x_pushforward(f: DualObject, g: DualObject, k: i64) -> u64 {
    ext_f0(f, g, k) + ext_f0(g, f, 3 - k)
}

/// `dim Ext^k_X(π*E_i, π*E_j) = Σ_{n≥0} h^k(O(c-a+2n, d-b+2n))`.
///
/// For `k ≥ 1` the sum stops at the first `n` where both degrees are at
/// least `-1`: from there on every summand has no higher cohomology. For
/// `k = 0` the sum diverges, so `n_bound` must cap it.
pub fn ext_x_pullback(i: usize, j: usize, k: i64, n_bound: Option<u64>) -> Result<u64> {
    let (e, f) = (bundle(i)?, bundle(j)?);
    let (da, db) = (f.a - e.a, f.b - e.b);
    let last = if k == 0 { n_bound.ok_or(Error::Unbounded)? as i64 } else { pullback_cutoff(da, db) };
    Ok((0..=last).map(|n| h_f0(da + 2 * n, db + 2 * n, k)).sum())
}

/// The smallest `n ≥ 0` with `da + 2n ≥ -1` and `db + 2n ≥ -1`.
pub fn pullback_cutoff(da: i64, db: i64) -> i64 {
    let need = |d: i64| if d >= -1 { 0 } else { (-1 - d + 1) / 2 };
    need(da).max(need(db))
}

fn bundle(i: usize) -> Result<LineBundleF0> {
    EXCEPTIONAL.get(i).copied().ok_or(Error::IndexOutOfRange(i))
}

/// `n[i][j] = dim Ext¹_X(S_j, S_i)` with `S_i = s_*F_i`.
pub fn derive_quiver() -> [[u64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| ext_x_pushforward(DUAL[j], DUAL[i], 1)))
}

/// The arrow-count matrix of the 4-cycle with doubled arrows.
pub const QUIVER: [[u64; 4]; 4] = [[0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2], [2, 0, 0, 0]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

/// Arrow `x_j` or `y_j`, `j ∈ 1..=4`, from vertex `j-1` to vertex `j mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub letter: Letter,
    pub index: u8,
}

impl Arrow {
    pub fn x(index: u8) -> Self {
        Arrow { letter: Letter::X, index: wrap(index) }
    }

    pub fn y(index: u8) -> Self {
        Arrow { letter: Letter::Y, index: wrap(index) }
    }

    pub fn source(&self) -> usize {
        (self.index as usize - 1) % 4
    }

    pub fn target(&self) -> usize {
        self.index as usize % 4
    }
}

fn wrap(i: u8) -> u8 {
    (i + 3) % 4 + 1
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.letter {
            Letter::X => 'x',
            Letter::Y => 'y',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// A path written left to right in composition order, so the rightmost
/// arrow is traversed first.
pub type Path = Vec<Arrow>;

/// `∂W = plus − minus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub wrt: Arrow,
    pub plus: Path,
    pub minus: Path,
}

impl Relation {
    /// `(source, target)` of both paths, or `None` if they disagree or do not compose.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let ends = |p: &Path| -> Option<(usize, usize)> {
            for w in p.windows(2) {
                if w[1].target() != w[0].source() {
                    return None;
                }
            }
            Some((p.last()?.source(), p.first()?.target()))
        };
        let a = ends(&self.plus)?;
        (ends(&self.minus)? == a).then_some(a)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |p: &Path| p.iter().map(|a| a.to_string()).collect::<String>();
        write!(f, "d{}W = {} - {}", self.wrt, w(&self.plus), w(&self.minus))
    }
}

/// `W = x4x3x2x1 + y4y3y2y1 − y4x3y2x1 − x4y3x2y1`.
pub fn potential() -> Vec<(i64, Path)> {
    use Arrow as A;
    vec![
        (1, vec![A::x(4), A::x(3), A::x(2), A::x(1)]),
        (1, vec![A::y(4), A::y(3), A::y(2), A::y(1)]),
        (-1, vec![A::y(4), A::x(3), A::y(2), A::x(1)]),
        (-1, vec![A::x(4), A::y(3), A::x(2), A::y(1)]),
    ]
}

/// Cyclic derivative of a sum of cycles with respect to one arrow.
pub fn cyclic_derivative(terms: &[(i64, Path)], a: Arrow) -> Vec<(i64, Path)> {
    let mut out = Vec::new();
    for (c, cycle) in terms {
        let n = cycle.len();
        for k in 0..n {
            if cycle[k] == a {
                // rotate so that `a` is traversed first, then drop it
                let path: Path = (1..n).map(|s| cycle[(k + s) % n]).collect();
                out.push((*c, path));
            }
        }
    }
    out
}

/// The eight relations `∂_{x_j}W, ∂_{y_j}W`, each a difference of two paths.
pub fn potential_relations() -> Vec<Relation> {
    let w = potential();
    let mut out = Vec::with_capacity(8);
    for j in 1..=4 {
        for a in [Arrow::x(j), Arrow::y(j)] {
            let d = cyclic_derivative(&w, a);
            let plus = d.iter().find(|(c, _)| *c > 0).expect("positive term").1.clone();
            let minus = d.iter().find(|(c, _)| *c < 0).expect("negative term").1.clone();
            out.push(Relation { wrt: a, plus, minus });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_cohomology() {
        assert_eq!(h_p1(0), (1, 0));
        assert_eq!(h_p1(-1), (0, 0));
        assert_eq!(h_p1(-3), (0, 2));
        assert_eq!(h_p1(2), (3, 0));
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext_f0(LineBundleF0::new(1, -1), LineBundleF0::new(-1, 0), 1), 2);
        assert_eq!(ext_f0(LineBundleF0::new(0, 0), LineBundleF0::new(0, 0), 0), 1);
        assert_eq!(ext_f0(LineBundleF0::new(0, 0), LineBundleF0::new(0, 1), 0), 2);
        assert_eq!(h_f0(-2, 1, 1), 2);
    }

    #[test]
    fn euler_matches_alternating_sum() {
        for (a, b, s) in [(0, 0, 0), (2, -3, 1), (-1, 4, 2), (-3, -2, 0)] {
            let g = LineBundleF0::new(a, b).shifted(s);
            for e in EXCEPTIONAL {
                let alt: i64 =
                    (-3..=3).map(|k| (-1i64).pow((k as i64).rem_euclid(2) as u32) * ext_f0(e, g, k) as i64).sum();
                assert_eq!(euler_f0(e, g), alt);
            }
        }
    }

    #[test]
    fn pushforward_examples() {
        let f = LineBundleF0::new(1, -1).shifted(1);
        let g = LineBundleF0::new(-1, 0).shifted(1);
        assert_eq!(ext_x_pushforward(f, g, 1), 2);
        let o = DualObject::from(LineBundleF0::new(0, 0));
        assert_eq!(ext_x_pushforward(o, o, 0), 1);
        assert_eq!(ext_x_pushforward(o, o, 3), 1);
        assert_eq!(ext_x_pushforward(o, o, 1), 0);
        assert_eq!(ext_x_pushforward(o, o, 2), 0);
    }

    #[test]
    fn pullback_examples() {
        for i in 0..4 {
            assert_eq!(ext_x_pullback(i, i, 1, None).unwrap(), 0);
        }
        assert_eq!(ext_x_pullback(0, 3, 2, None).unwrap(), 0);
        assert_eq!(ext_x_pullback(3, 0, 0, Some(0)).unwrap(), 0);
        assert_eq!(ext_x_pullback(0, 0, 0, Some(0)).unwrap(), 1);
        assert_eq!(ext_x_pullback(0, 0, 0, None), Err(Error::Unbounded));
        assert_eq!(ext_x_pullback(4, 0, 1, None), Err(Error::IndexOutOfRange(4)));
    }

    #[test]
    fn cutoff_is_minimal() {
        assert_eq!(pullback_cutoff(-2, -1), 1);
        assert_eq!(pullback_cutoff(0, 0), 0);
        assert_eq!(pullback_cutoff(-5, 3), 2);
        for da in -6..4 {
            for db in -6..4 {
                let n0 = pullback_cutoff(da, db);
                assert!(da + 2 * n0 >= -1 && db + 2 * n0 >= -1);
                if n0 > 0 {
                    assert!(da + 2 * (n0 - 1) < -1 || db + 2 * (n0 - 1) < -1);
                }
            }
        }
    }

    #[test]
    fn quiver() {
        let n = derive_quiver();
        assert_eq!(n, QUIVER);
        assert_eq!(n[0][1], 2);
        assert_eq!(n[0][2], 0);
        assert_eq!(n[3][0], 2);
    }

    #[test]
    fn relations() {
        let rels = potential_relations();
        assert_eq!(rels.len(), 8);
        let show: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
        assert!(show.contains(&"dx1W = x4x3x2 - y4x3y2".to_string()));
        assert!(show.contains(&"dy1W = y4y3y2 - x4y3x2".to_string()));
        for r in &rels {
            assert_eq!(r.plus.len(), 3);
            assert_eq!(r.minus.len(), 3);
            let (s, t) = r.endpoints().expect("composable with matching ends");
            // the derivative by an arrow a: u -> v is a path v -> u
            assert_eq!((s, t), (r.wrt.target(), r.wrt.source()));
        }
    }

    #[test]
    fn relations_follow_index_formula() {
        for r in potential_relations() {
            let j = r.wrt.index;
            let (same, other): (fn(u8) -> Arrow, fn(u8) -> Arrow) = match r.wrt.letter {
                Letter::X => (Arrow::x, Arrow::y),
                Letter::Y => (Arrow::y, Arrow::x),
            };
            assert_eq!(r.plus, vec![same(j + 3), same(j + 2), same(j + 1)]);
            assert_eq!(r.minus, vec![other(j + 3), same(j + 2), other(j + 1)]);
        }
    }
}
