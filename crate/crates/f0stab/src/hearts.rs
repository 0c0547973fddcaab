//! Hearts of `D^b(X)` recorded by their four simple objects.
//!
//! A simple is a K-class plus a symbolic label. Labels follow the grammar
//! `s*O(a,b)[k]`, `Psi^m(...)`, `s*O_fiber(x)[k]` and `s*O_fiber(x)(-1)[k]`;
//! when no geometric name is justified a label falls back to `T(...)` style
//! applications or an explicit `cone(...)`.
//!
//! Simple tilts follow the cone formulas for the new simples:
//!
//! * left tilt at `S`: `S ↦ S[1]`, and `X ↦ Cone(X → S[1] ⊗ Ext¹(X,S)*)[-1]`,
//!   of class `[X] + ext¹(X,S)·[S]`;
//! * right tilt at `S`: `S ↦ S[-1]`, and `X ↦ Cone(S[-1] ⊗ Ext¹(S,X) → X)`,
//!   of class `[X] + ext¹(S,X)·[S]`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::charge::{in_h, phase_cmp, CentralCharge, ExactComplex};
use crate::error::{Error, Result};
use crate::exact::q;
use crate::geometry_oracle::{derive_quiver, euler_f0, LineBundleF0, EXCEPTIONAL, QUIVER};
use crate::k_lattice::{project, psi, t, t_psi, KClass, LatticeAuto};

/// One of the tilt generators `T`, `T⁻¹`, `T_Ψ`, `T_Ψ⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    T,
    TInv,
    TPsi,
    TPsiInv,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::T, Gen::TInv, Gen::TPsi, Gen::TPsiInv];

    pub fn inverse(self) -> Gen {
        match self {
            Gen::T => Gen::TInv,
            Gen::TInv => Gen::T,
            Gen::TPsi => Gen::TPsiInv,
            Gen::TPsiInv => Gen::TPsi,
        }
    }

    /// Induced automorphism of `K_0`.
    pub fn matrix(self) -> LatticeAuto {
        let inv = |a: LatticeAuto| a.inverse().expect("unimodular");
        match self {
            Gen::T => t(),
            Gen::TInv => inv(t()),
            Gen::TPsi => t_psi(),
            Gen::TPsiInv => inv(t_psi()),
        }
    }

    /// Exponent of `t̄` induced on the quotient lattice (`t̄_ψ = t̄⁻¹`).
    pub fn quotient_exponent(self) -> i64 {
        match self {
            Gen::T | Gen::TPsiInv => 1,
            Gen::TInv | Gen::TPsi => -1,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Gen::T => "T",
            Gen::TInv => "Tinv",
            Gen::TPsi => "Tpsi",
            Gen::TPsiInv => "Tpsiinv",
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Gen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "").as_str() {
            "t" => Ok(Gen::T),
            "tinv" | "t-1" | "t^-1" => Ok(Gen::TInv),
            "tpsi" => Ok(Gen::TPsi),
            "tpsiinv" | "tpsi-1" | "tpsi^-1" => Ok(Gen::TPsiInv),
            _ => Err(Error::Parse(format!("unknown generator {s:?}"))),
        }
    }
}

/// A freely reduced word in the tilt generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct TiltWord(Vec<Gen>);

impl TiltWord {
    pub fn new(gens: impl IntoIterator<Item = Gen>) -> Self {
        let mut w = TiltWord::default();
        for g in gens {
            w.push(g);
        }
        w
    }

    pub fn empty() -> Self {
        TiltWord::default()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends `g`, cancelling against a trailing inverse.
    pub fn push(&mut self, g: Gen) {
        if self.0.last() == Some(&g.inverse()) {
            self.0.pop();
        } else {
            self.0.push(g);
        }
    }

    pub fn then(&self, g: Gen) -> TiltWord {
        let mut w = self.clone();
        w.push(g);
        w
    }

    pub fn concat(&self, other: &TiltWord) -> TiltWord {
        TiltWord::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn inverse(&self) -> TiltWord {
        TiltWord(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    /// `g₁ g₂ ⋯ gₙ` as an automorphism of `K_0`.
    pub fn matrix(&self) -> LatticeAuto {
        self.0.iter().fold(LatticeAuto::identity(), |acc, g| acc.compose(&g.matrix()))
    }

    /// `n(w) = (#T − #T⁻¹) − (#T_Ψ − #T_Ψ⁻¹)`; the word acts on the quotient as `t̄^{n(w)}`.
    pub fn quotient_exponent(&self) -> i64 {
        self.0.iter().map(|g| g.quotient_exponent()).sum()
    }
}

impl fmt::Display for TiltWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<&str> = self.0.iter().map(|g| g.token()).collect();
        f.write_str(&tokens.join(","))
    }
}

impl FromStr for TiltWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let gens = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty() && *t != "e" && *t != "id")
            .map(Gen::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(TiltWord::new(gens))
    }
}

impl Serialize for TiltWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|g| g.token()))
    }
}

/// Symbolic name of an object.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Label {
    /// `s*O(a,b)[shift]`
    Pushforward { a: i64, b: i64, shift: i64 },
    /// `s*O_fiber(x)[shift]`, or `s*O_fiber(x)(-1)[shift]` when twisted.
    Fiber { twisted: bool, shift: i64 },
    /// `Psi^m(inner)`
    Psi { m: i64, inner: Box<Label> },
    /// A generator applied to an object with no simpler name.
    Apply { gen: Gen, inner: Box<Label> },
    /// Free-form cone description.
    Cone(String),
}

fn shift_suffix(k: i64) -> String {
    if k == 0 {
        String::new()
    } else {
        format!("[{k}]")
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pushforward { a, b, shift } => write!(f, "s*O({a},{b}){}", shift_suffix(*shift)),
            Label::Fiber { twisted, shift } => {
                write!(f, "s*O_fiber(x){}{}", if *twisted { "(-1)" } else { "" }, shift_suffix(*shift))
            }
            Label::Psi { m, inner } => write!(f, "Psi^{m}({inner})"),
            Label::Apply { gen, inner } => write!(f, "{gen}({inner})"),
            Label::Cone(s) => f.write_str(s),
        }
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognised label {s:?}"));
        if s.starts_with("cone(") {
            return Ok(Label::Cone(s.to_string()));
        }
        // wrapped forms: Psi^m(...) and Gen(...)
        if let Some(open) = s.find('(') {
            let head = &s[..open];
            if s.ends_with(')') && !head.starts_with("s*O") {
                let inner = Box::new(s[open + 1..s.len() - 1].parse()?);
                if let Some(m) = head.strip_prefix("Psi^") {
                    return Ok(Label::Psi { m: m.parse().map_err(|_| bad())?, inner });
                }
                return Ok(Label::Apply { gen: head.parse()?, inner });
            }
        }
        let (body, shift) = match s.strip_suffix(']').and_then(|r| r.rsplit_once('[')) {
            Some((body, k)) => (body, k.parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        if let Some(rest) = body.strip_prefix("s*O_fiber(x)") {
            return match rest {
                "" => Ok(Label::Fiber { twisted: false, shift }),
                "(-1)" => Ok(Label::Fiber { twisted: true, shift }),
                _ => Err(bad()),
            };
        }
        let args = body.strip_prefix("s*O(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (a, b) = args.split_once(',').ok_or_else(bad)?;
        Ok(Label::Pushforward {
            a: a.trim().parse().map_err(|_| bad())?,
            b: b.trim().parse().map_err(|_| bad())?,
            shift,
        })
    }
}

/// Labels of the standard simples `S_0..S_3`.
fn standard_label(i: usize) -> Label {
    const SIMPLES: [(i64, i64, i64); 4] = [(0, 0, 0), (-1, 0, 1), (1, -1, 1), (0, -1, 2)];
    let (a, b, shift) = SIMPLES[i];
    Label::Pushforward { a, b, shift }
}

impl Label {
    pub fn shifted(&self, k: i64) -> Label {
        if k == 0 {
            return self.clone();
        }
        match self {
            Label::Pushforward { a, b, shift } => Label::Pushforward { a: *a, b: *b, shift: shift + k },
            Label::Fiber { twisted, shift } => Label::Fiber { twisted: *twisted, shift: shift + k },
            Label::Psi { m, inner } => Label::Psi { m: *m, inner: Box::new(inner.shifted(k)) },
            Label::Apply { gen, inner } => Label::Apply { gen: *gen, inner: Box::new(inner.shifted(k)) },
            Label::Cone(s) => Label::Cone(format!("{s}[{k}]")),
        }
    }

    /// `(i, k)` when the label is `S_i[k]`.
    fn standard_simple(&self) -> Option<(usize, i64)> {
        (0..4).find_map(|i| match (self, standard_label(i)) {
            (Label::Pushforward { a, b, shift }, Label::Pushforward { a: a0, b: b0, shift: s0 })
                if (*a, *b) == (a0, b0) =>
            {
                Some((i, shift - s0))
            }
            _ => None,
        })
    }

    /// The label of `g(self)`.
    ///
    /// `T = − ⊗ π*O(1,0)` raises `a` on pushforwards and fixes fibers of the
    /// first projection; `T_Ψ = Ψ T Ψ⁻¹` passes through `Psi^1(...)`, and
    /// `Ψ⁻¹(S_i) = S_{i-1}` on the standard simples.
    pub fn apply_gen(&self, g: Gen) -> Label {
        let fallback = || match self {
            Label::Apply { gen, inner } if *gen == g.inverse() => (**inner).clone(),
            _ => Label::Apply { gen: g, inner: Box::new(self.clone()) },
        };
        match (g, self) {
            (Gen::T | Gen::TInv, Label::Pushforward { a, b, shift }) => {
                Label::Pushforward { a: a + if g == Gen::T { 1 } else { -1 }, b: *b, shift: *shift }
            }
            (Gen::T | Gen::TInv, Label::Fiber { .. }) => self.clone(),
            (Gen::TPsi | Gen::TPsiInv, _) => {
                let inner_gen = if g == Gen::TPsi { Gen::T } else { Gen::TInv };
                let unwrapped = match self {
                    Label::Psi { m: 1, inner } => Some((**inner).clone()),
                    other => other.standard_simple().map(|(i, k)| standard_label((i + 3) % 4).shifted(k)),
                };
                match unwrapped {
                    Some(x) => Label::Psi { m: 1, inner: Box::new(x.apply_gen(inner_gen)) },
                    None => fallback(),
                }
            }
            _ => fallback(),
        }
    }

    /// K-class computed from the label, where one is defined.
    ///
    /// Pushforwards use `[s_*F] = Σ χ(E_i, F) γ_i` over the exceptional
    /// collection, since `Hom•(π*E_i, s_*F) = Hom•(E_i, F)`.
    pub fn kclass(&self) -> Option<KClass> {
        let sign = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { -1 };
        match self {
            Label::Pushforward { a, b, shift } => {
                let f = LineBundleF0::new(*a, *b);
                Some(KClass(std::array::from_fn(|i| sign(*shift) * euler_f0(EXCEPTIONAL[i], f))))
            }
            Label::Fiber { twisted, shift } => {
                // χ(O(c,d), O_{x×P¹}(t)) = χ(P¹, O(t − d))
                let tw = if *twisted { -1 } else { 0 };
                Some(KClass(std::array::from_fn(|i| sign(*shift) * (tw - EXCEPTIONAL[i].b + 1))))
            }
            Label::Psi { m, inner } => {
                let p = psi();
                let step = if *m >= 0 { p } else { p.inverse().expect("unimodular") };
                let mut c = inner.kclass()?;
                for _ in 0..m.unsigned_abs() {
                    c = step.apply(c);
                }
                Some(c)
            }
            Label::Apply { gen, inner } => Some(gen.matrix().apply(inner.kclass()?)),
            Label::Cone(_) => None,
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Whether a stable object is unique in its class or moves in a P¹-family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Unique,
    P1Family,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum KronType {
    I,
    II,
}

/// Row of the table of special Kronecker objects with the given class.
pub fn kron_type_entry(class: KClass, ty: KronType) -> Option<(Label, Family)> {
    if ty == KronType::II {
        let [c0, c1, c2, c3] = class.0;
        let (inner, fam) = kron_type_entry(KClass([c1, c2, c3, c0]), KronType::I)?;
        return Some((Label::Psi { m: 1, inner: Box::new(inner) }, fam));
    }
    let [c0, c1, c2, c3] = class.0;
    let (first, x, y) = match (c0, c1, c2, c3) {
        (_, _, 0, 0) => (true, c0, c1),
        (0, 0, _, _) => (false, c2, c3),
        _ => return None,
    };
    let pf = |a, b, shift| Some((Label::Pushforward { a, b, shift }, Family::Unique));
    match (x, y) {
        (1, 1) => Some((Label::Fiber { twisted: !first, shift: if first { 0 } else { 1 } }, Family::P1Family)),
        (x, y) if x >= 1 && y == x - 1 => {
            let l = y;
            if first {
                pf(l, 0, 0)
            } else {
                pf(l + 1, -1, 1)
            }
        }
        (x, y) if x >= 0 && y == x + 1 => {
            let l = x;
            if first {
                pf(-l - 1, 0, 1)
            } else {
                pf(-l, -1, 2)
            }
        }
        _ => None,
    }
}

/// Table lookup preferring type I.
pub fn kron_type_lookup(class: KClass) -> Option<(Label, Family)> {
    kron_type_entry(class, KronType::I).or_else(|| kron_type_entry(class, KronType::II))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleObject {
    #[serde(rename = "class")]
    pub kclass: KClass,
    pub label: Label,
}

pub type ExtMatrix = [[u64; 4]; 4];

/// Four simple objects, optionally with `ext[i][j] = dim Ext¹(S_j, S_i)`.
///
/// `frame`, when present, records that slot `s` is `Φ(S_{frame[s]})` for an
/// autoequivalence `Φ` carrying the standard heart to this one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Heart {
    pub simples: [SimpleObject; 4],
    pub ext: Option<ExtMatrix>,
    pub frame: Option<[usize; 4]>,
}

impl Heart {
    pub fn classes(&self) -> [KClass; 4] {
        std::array::from_fn(|i| self.simples[i].kclass)
    }

    pub fn sorted_classes(&self) -> Vec<KClass> {
        let mut v = self.classes().to_vec();
        v.sort();
        v
    }

    /// Whether the four classes form a basis of `Z⁴`.
    pub fn is_basis(&self) -> bool {
        LatticeAuto::from_images("heart", self.classes()).det().abs() == 1
    }
}

impl Serialize for Heart {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.simples.iter())
    }
}

impl fmt::Display for Heart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.simples.iter().map(|s| format!("{} {}", s.label, s.kclass)).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Direction::Left),
            "right" | "r" => Ok(Direction::Right),
            _ => Err(Error::Parse(format!("unknown tilt direction {s:?}"))),
        }
    }
}

/// The opposite slot pairs `{0,2}` and `{1,3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Pair {
    Even,
    Odd,
}

impl Pair {
    pub fn slots(self) -> (usize, usize) {
        match self {
            Pair::Even => (0, 2),
            Pair::Odd => (1, 3),
        }
    }
}

pub fn standard_heart() -> Heart {
    Heart {
        simples: std::array::from_fn(|i| SimpleObject {
            kclass: standard_label(i).kclass().expect("pushforward"),
            label: standard_label(i),
        }),
        ext: Some(derive_quiver()),
        frame: Some([0, 1, 2, 3]),
    }
}

fn synthesize(class: KClass, x: &Label, s: &Label, n: u64, dir: Direction) -> Label {
    if let Some((l, _)) = kron_type_lookup(class) {
        return l;
    }
    if let Some((l, _)) = kron_type_lookup(-class) {
        return l.shifted(1);
    }
    match dir {
        Direction::Left => Label::Cone(format!("cone({x} -> {}^{n})[-1]", s.shifted(1))),
        Direction::Right => Label::Cone(format!("cone({}^{n} -> {x})", s.shifted(-1))),
    }
}

fn tilt_with(simples: &[SimpleObject; 4], i: usize, dir: Direction, ext: &ExtMatrix) -> [SimpleObject; 4] {
    let s = &simples[i];
    std::array::from_fn(|j| {
        if j == i {
            let k = if dir == Direction::Left { 1 } else { -1 };
            return SimpleObject { kclass: -s.kclass, label: s.label.shifted(k) };
        }
        let x = &simples[j];
        let n = match dir {
            Direction::Left => ext[i][j],
            Direction::Right => ext[j][i],
        };
        if n == 0 {
            return x.clone();
        }
        let kclass = x.kclass + (n as i64) * s.kclass;
        SimpleObject { kclass, label: synthesize(kclass, &x.label, &s.label, n, dir) }
    })
}

/// Left or right simple tilt at slot `i`. The Ext data of the result is
/// not determined by the K-level data and is marked unknown.
pub fn simple_tilt(h: &Heart, i: usize, dir: Direction) -> Result<Heart> {
    if i > 3 {
        return Err(Error::IndexOutOfRange(i));
    }
    let ext = h.ext.ok_or(Error::ExtUnknown)?;
    if ext[i][i] != 0 {
        return Err(Error::SelfExtension(i));
    }
    Ok(Heart { simples: tilt_with(&h.simples, i, dir, &ext), ext: None, frame: None })
}

/// The generator realised by a double tilt of the standard heart.
pub fn double_tilt_generator(standard_pair: Pair, dir: Direction) -> Gen {
    match (dir, standard_pair) {
        (Direction::Left, Pair::Even) => Gen::T,
        (Direction::Right, Pair::Odd) => Gen::TInv,
        (Direction::Left, Pair::Odd) => Gen::TPsi,
        (Direction::Right, Pair::Even) => Gen::TPsiInv,
    }
}

/// `σ` with slot `k` of the double-tilted standard heart equal to `g(S_{σ(k)})`.
fn standard_permutation(pair: Pair, dir: Direction) -> [usize; 4] {
    let std = standard_heart();
    let (i, j) = pair.slots();
    let once = tilt_with(&std.simples, i, dir, &QUIVER);
    let twice = tilt_with(&once, j, dir, &QUIVER);
    let images = double_tilt_generator(pair, dir).matrix().images();
    std::array::from_fn(|k| images.iter().position(|c| *c == twice[k].kclass).expect("double tilt theorem"))
}

/// Tilts at both slots of an opposite pair. The result is the image of the
/// heart under one of the tilt generators, so its Ext data is known again.
pub fn double_tilt(h: &Heart, pair: Pair, dir: Direction) -> Result<Heart> {
    let ext = h.ext.ok_or(Error::ExtUnknown)?;
    let frame = h.frame.ok_or(Error::ExtUnknown)?;
    let (i, j) = pair.slots();
    for s in [i, j] {
        if ext[s][s] != 0 {
            return Err(Error::SelfExtension(s));
        }
    }
    if ext[i][j] != 0 || ext[j][i] != 0 {
        return Err(Error::PairLinked(i, j));
    }
    if (0..4).any(|r| (0..4).any(|c| ext[r][c] != QUIVER[frame[r]][frame[c]])) {
        return Err(Error::Precondition("Ext matrix does not match the recorded frame".into()));
    }
    let once = tilt_with(&h.simples, i, dir, &ext);
    let twice = tilt_with(&once, j, dir, &ext);
    let std_pair = if frame[i] % 2 == 0 { Pair::Even } else { Pair::Odd };
    let sigma = standard_permutation(std_pair, dir);
    let new_frame: [usize; 4] = std::array::from_fn(|s| sigma[frame[s]]);
    let new_ext = std::array::from_fn(|r| std::array::from_fn(|c| QUIVER[new_frame[r]][new_frame[c]]));
    Ok(Heart { simples: twice, ext: Some(new_ext), frame: Some(new_frame) })
}

/// The heart `g₁ ⋯ gₙ 𝒜`: slot `k` holds `g₁(⋯ gₙ(S_k))`.
pub fn heart_of_word(w: &TiltWord) -> Heart {
    let m = w.matrix();
    Heart {
        simples: std::array::from_fn(|k| {
            let label = w.gens().iter().rev().fold(standard_label(k), |l, g| l.apply_gen(*g));
            SimpleObject { kclass: m.apply(standard_label(k).kclass().expect("pushforward")), label }
        }),
        ext: Some(QUIVER),
        frame: Some([0, 1, 2, 3]),
    }
}

/// Equality of the multisets of simple classes. Autoequivalences with the
/// same action on `K_0` are not told apart.
pub fn heart_equal_kclasses(h1: &Heart, h2: &Heart) -> bool {
    h1.sorted_classes() == h2.sorted_classes()
}

/// Relative position of the phases of slots 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PhaseOrder {
    /// `φ(S_0) < φ(S_1)`
    UPlus,
    /// `φ(S_1) < φ(S_0)`
    UMinus,
    Ray,
}

/// A stability condition given by placing each simple in `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraicStability {
    pub heart: Heart,
    pub charge: CentralCharge,
    pub order: PhaseOrder,
}

/// Builds the `φ`-invariant stability condition with `Z(S_k) = values[k]`.
pub fn algebraic_stability(h: &Heart, values: [ExactComplex; 4]) -> Result<AlgebraicStability> {
    for v in &values {
        if v.is_zero() {
            return Err(Error::ZeroCharge);
        }
        if !in_h(v) {
            return Err(Error::OutsideH(v.to_string()));
        }
    }
    let proj: Vec<[i64; 2]> = h.classes().iter().map(|c| project(*c).0).collect();
    let (s, u, det) = (0..4)
        .flat_map(|s| (s + 1..4).map(move |u| (s, u)))
        .map(|(s, u)| (s, u, proj[s][0] * proj[u][1] - proj[s][1] * proj[u][0]))
        .find(|x| x.2 != 0)
        .ok_or_else(|| Error::Precondition("simple classes do not span the quotient".into()))?;
    let inv_det = q(1) / q(det);
    let (ps, pu) = (proj[s], proj[u]);
    let z0 = (&values[s].scale(&q(pu[1])) - &values[u].scale(&q(ps[1]))).scale(&inv_det);
    let z1 = (&values[u].scale(&q(ps[0])) - &values[s].scale(&q(pu[0]))).scale(&inv_det);
    let charge = CentralCharge::new(z0, z1);
    for k in 0..4 {
        if charge.eval(crate::k_lattice::QuotClass(proj[k])) != values[k] {
            return Err(Error::Precondition("values are not invariant under phi".into()));
        }
    }
    let order = match phase_cmp(&values[0], &values[1])? {
        std::cmp::Ordering::Less => PhaseOrder::UPlus,
        std::cmp::Ordering::Greater => PhaseOrder::UMinus,
        std::cmp::Ordering::Equal => PhaseOrder::Ray,
    };
    Ok(AlgebraicStability { heart: h.clone(), charge, order })
}
