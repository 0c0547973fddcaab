//! The normalized slice `Z(δ) = i`, its chambers, stable objects per chamber
//! and lifting of paths through the covering of `H^reg`.
//!
//! On the slice a φ-invariant charge is fixed by `x = Z(γ̄_0)`, with
//! `Z(γ̄_1) = i/2 − x`. A class `(a, b)` vanishes when `(a − b) x = −b i/2`,
//! so for the roots `(n, n+1)` and `(n+1, n)` the excluded points are
//! `x = (n+1) i/2` and `x = −n i/2`, while `Z(1,1) = i/2` never vanishes.
//! The punctures are therefore exactly `{k i/2 : k ∈ Z}`.
//!
//! The standard heart owns the open strip `0 < Im x < 1/2`. Since
//! `t̄` sends `x` to `x + i/2`, the heart of a word `w` owns the strip
//! `0 < Im x + n(w)/2 < 1/2`, and all chamber walls lie on `Im x ∈ ½Z`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::charge::{is_in_hreg, phase_cmp, CentralCharge, ExactComplex};
use crate::error::{Error, Result};
use crate::exact::{q, qf, to_f64, Q};
use crate::hearts::{heart_of_word, kron_type_entry, Family, Gen, Heart, KronType, Label, TiltWord};
use crate::k_lattice::{delta, gamma, project, KClass, QuotClass};

/// A point of the normalized slice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct NormalizedCharge {
    pub x: ExactComplex,
}

impl NormalizedCharge {
    pub fn new(x: ExactComplex) -> Self {
        NormalizedCharge { x }
    }

    /// Normalizes an arbitrary charge with `Z(δ) ≠ 0`.
    pub fn from_charge(z: &CentralCharge) -> Result<Self> {
        let (_, zn) = crate::charge::normalize(z)?;
        Ok(NormalizedCharge { x: zn.z0 })
    }

    pub fn z0(&self) -> ExactComplex {
        self.x.clone()
    }

    pub fn z1(&self) -> ExactComplex {
        &ExactComplex::new(q(0), qf(1, 2)) - &self.x
    }

    pub fn charge(&self) -> CentralCharge {
        CentralCharge::new(self.z0(), self.z1())
    }

    /// Translate by `n · i/2`, the quotient action of `t^n`.
    pub fn translated(&self, n: i64) -> NormalizedCharge {
        NormalizedCharge { x: &self.x + &ExactComplex::new(q(0), qf(n, 2)) }
    }
}

impl FromStr for NormalizedCharge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(NormalizedCharge { x: s.parse()? })
    }
}

impl fmt::Display for NormalizedCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.x.fmt(f)
    }
}

/// The four boundary walls of the standard chamber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WallKind {
    /// `Z(γ_0) = Z(γ_2) ∈ R_{>0}`
    #[serde(rename = "W+0")]
    W0Plus,
    /// `Z(γ_0) = Z(γ_2) ∈ R_{<0}`
    #[serde(rename = "W-0")]
    W0Minus,
    /// `Z(γ_1) = Z(γ_3) ∈ R_{>0}`
    #[serde(rename = "W+1")]
    W1Plus,
    /// `Z(γ_1) = Z(γ_3) ∈ R_{<0}`
    #[serde(rename = "W-1")]
    W1Minus,
}

impl WallKind {
    /// The generator `τ` with the wall equal to the common boundary of the
    /// chambers of `𝒜` and `τ𝒜`.
    pub fn generator(self) -> Gen {
        match self {
            WallKind::W0Plus => Gen::T,
            WallKind::W1Plus => Gen::TPsi,
            WallKind::W0Minus => Gen::TPsiInv,
            WallKind::W1Minus => Gen::TInv,
        }
    }
}

impl fmt::Display for WallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallKind::W0Plus => "W+0",
            WallKind::W0Minus => "W-0",
            WallKind::W1Plus => "W+1",
            WallKind::W1Minus => "W-1",
        })
    }
}

/// Position of a normalized charge relative to the standard heart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    /// `φ(S_0) < φ(S_1)`
    UPlus,
    /// `φ(S_1) < φ(S_0)`
    UMinus,
    /// all simples of phase `1/2`
    Ray,
    Wall(WallKind),
    Puncture,
    Outside,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::UPlus => f.write_str("U+"),
            Region::UMinus => f.write_str("U-"),
            Region::Ray => f.write_str("ray"),
            Region::Wall(w) => write!(f, "wall {w}"),
            Region::Puncture => f.write_str("puncture"),
            Region::Outside => f.write_str("outside"),
        }
    }
}

pub fn classify(x: &NormalizedCharge) -> Region {
    let (z0, z1) = (x.z0(), x.z1());
    let (i0, i1) = (z0.im.signum(), z1.im.signum());
    if i0.is_negative() || i1.is_negative() {
        return Region::Outside;
    }
    if z0.is_zero() || z1.is_zero() {
        return Region::Puncture;
    }
    if i0.is_zero() {
        return Region::Wall(if z0.re.is_positive() { WallKind::W0Plus } else { WallKind::W0Minus });
    }
    if i1.is_zero() {
        return Region::Wall(if z1.re.is_positive() { WallKind::W1Plus } else { WallKind::W1Minus });
    }
    match phase_cmp(&z0, &z1).expect("both in the open upper half plane") {
        Ordering::Less => Region::UPlus,
        Ordering::Greater => Region::UMinus,
        Ordering::Equal => Region::Ray,
    }
}

/// The unique `n` with `Im x + n/2 ∈ [0, 1/2)`.
pub fn locate_strip(x: &NormalizedCharge) -> i64 {
    let twice: Q = &x.x.im * q(2);
    let n = -twice.floor().to_integer();
    i64::try_from(n).expect("strip index fits in i64")
}

/// A sheet of the covering together with a point of its chamber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChamberPoint {
    pub word: TiltWord,
    pub x: NormalizedCharge,
}

impl ChamberPoint {
    /// Checks that `x` lies in the open chamber of the sheet's heart.
    pub fn new(word: TiltWord, x: NormalizedCharge) -> Result<Self> {
        let p = ChamberPoint { word, x };
        match p.base_region() {
            Region::UPlus | Region::UMinus | Region::Ray => Ok(p),
            _ => Err(Error::NotInChamber(p.x.to_string(), p.word.to_string())),
        }
    }

    /// The point in the coordinates of the standard heart, `x + n(w) i/2`.
    pub fn base(&self) -> NormalizedCharge {
        self.x.translated(self.word.quotient_exponent())
    }

    pub fn base_region(&self) -> Region {
        classify(&self.base())
    }

    pub fn heart(&self) -> Heart {
        heart_of_word(&self.word)
    }

    pub fn charge(&self) -> CentralCharge {
        self.x.charge()
    }
}

/// A stable object class in a chamber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableCatalogEntry {
    #[serde(rename = "class")]
    pub kclass: KClass,
    pub quot: QuotClass,
    pub label: Label,
    pub family: Family,
    /// The `n` of the generating family, when there is one.
    pub n: Option<u32>,
    /// Shift orbit of the object as an autoequivalence power applied to a
    /// standard simple, e.g. `T^-2(S_1)`. Prefixed by the sheet word off the
    /// base sheet.
    pub orbit: Option<String>,
}

fn orbit(g: &str, n: i64, simple: usize) -> String {
    match n {
        0 => format!("S_{simple}"),
        1 => format!("{g}(S_{simple})"),
        _ => format!("{g}^{n}(S_{simple})"),
    }
}

fn entry(kclass: KClass, ty: KronType, n: Option<u32>, orbit: Option<String>) -> StableCatalogEntry {
    let (label, family) = kron_type_entry(kclass, ty).expect("catalog classes are table rows");
    StableCatalogEntry { kclass, quot: project(kclass), label, family, n, orbit }
}

/// Catalog of the standard heart in a chamber region, `n ≤ n_max`.
fn base_catalog(region: Region, n_max: u32) -> Result<Vec<StableCatalogEntry>> {
    let k = |a, b, c, d| KClass::new(a, b, c, d);
    let mut out = Vec::new();
    match region {
        Region::UPlus => {
            for n in 0..=n_max {
                let m = n as i64;
                let orbits = [
                    (k(m, m + 1, 0, 0), -m, 1),
                    (k(m + 1, m, 0, 0), m, 0),
                    (k(0, 0, m, m + 1), -m, 3),
                    (k(0, 0, m + 1, m), m, 2),
                ];
                for (c, e, s) in orbits {
                    out.push(entry(c, KronType::I, Some(n), Some(orbit("T", e, s))));
                }
            }
            out.push(entry(k(1, 1, 0, 0), KronType::I, None, None));
            out.push(entry(k(0, 0, 1, 1), KronType::I, None, None));
        }
        Region::UMinus => {
            for n in 0..=n_max {
                let m = n as i64;
                let orbits = [
                    (k(0, m, m + 1, 0), -m, 2),
                    (k(0, m + 1, m, 0), m, 1),
                    (k(m + 1, 0, 0, m), -m, 0),
                    (k(m, 0, 0, m + 1), m, 3),
                ];
                for (c, e, s) in orbits {
                    out.push(entry(c, KronType::II, Some(n), Some(orbit("Tpsi", e, s))));
                }
            }
            out.push(entry(k(0, 1, 1, 0), KronType::II, None, None));
            out.push(entry(k(1, 0, 0, 1), KronType::II, None, None));
        }
        Region::Ray => {
            let std = crate::hearts::standard_heart();
            for (i, s) in std.simples.iter().enumerate() {
                debug_assert_eq!(s.kclass, gamma(i).expect("index"));
                out.push(StableCatalogEntry {
                    kclass: s.kclass,
                    quot: project(s.kclass),
                    label: s.label.clone(),
                    family: Family::Unique,
                    n: None,
                    orbit: Some(format!("S_{i}")),
                });
            }
        }
        other => return Err(Error::Precondition(format!("no catalog on {other}"))),
    }
    Ok(out)
}

/// Stable classes (up to shift) at a chamber point, truncated at `n ≤ n_max`.
///
/// On the sheet of a word `w` the catalog is the image of the standard one
/// under `w`, with labels transported through the generators.
pub fn stable_catalog(p: &ChamberPoint, n_max: u32) -> Result<Vec<StableCatalogEntry>> {
    let base =
        base_catalog(p.base_region(), n_max).map_err(|_| Error::NotInChamber(p.x.to_string(), p.word.to_string()))?;
    if p.word.is_empty() {
        return Ok(base);
    }
    let m = p.word.matrix();
    Ok(base
        .into_iter()
        .map(|e| {
            let kclass = m.apply(e.kclass);
            let label = p.word.gens().iter().rev().fold(e.label, |l, g| l.apply_gen(*g));
            let orbit = e.orbit.map(|o| format!("[{}]{o}", p.word));
            StableCatalogEntry { kclass, quot: project(kclass), label, orbit, ..e }
        })
        .collect())
}

/// `O_x` has class `δ` and is semistable of the phase of `Z(γ_0+γ_1) = Z(γ_2+γ_3)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaWitness {
    #[serde(rename = "class")]
    pub kclass: KClass,
    /// `Z(δ)`
    pub charge: ExactComplex,
    /// `Z` of each of the two factors, equal on the quotient.
    pub factor_charge: ExactComplex,
}

pub fn semistable_delta_witness(p: &ChamberPoint) -> DeltaWitness {
    let z = p.charge();
    let m = p.word.matrix();
    let f1 = z.eval(m.apply(KClass::new(1, 1, 0, 0)));
    let f2 = z.eval(m.apply(KClass::new(0, 0, 1, 1)));
    debug_assert_eq!(f1, f2);
    DeltaWitness { kclass: delta(), charge: z.eval(delta()), factor_charge: f1 }
}

/// A wall `Im x = level/2` on the side `Re x > 0` or `Re x < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WallLocation {
    pub level: i64,
    pub re_positive: bool,
}

/// The word of the sheet across `wall` from the sheet of `word`.
pub fn wall_cross_rule(word: &TiltWord, wall: WallLocation) -> Result<TiltWord> {
    let n = word.quotient_exponent();
    // the sheet occupies -n < 2 Im x < -n + 1
    let kind = if wall.level == -n {
        if wall.re_positive {
            WallKind::W0Plus
        } else {
            WallKind::W0Minus
        }
    } else if wall.level == -n + 1 {
        if wall.re_positive {
            WallKind::W1Minus
        } else {
            WallKind::W1Plus
        }
    } else {
        let side = if wall.re_positive { "Re>0" } else { "Re<0" };
        return Err(Error::NotAdjacent(format!("Im x = {}/2, {side}", wall.level), word.to_string()));
    };
    Ok(word.then(kind.generator()))
}

/// The wall kind, relative to the sheet of `word`, of an adjacent wall.
pub fn wall_kind(word: &TiltWord, wall: WallLocation) -> Result<WallKind> {
    let next = wall_cross_rule(word, wall)?;
    let g = if next.len() > word.len() {
        *next.gens().last().expect("nonempty")
    } else {
        word.gens().last().expect("nonempty").inverse()
    };
    Ok(match g {
        Gen::T => WallKind::W0Plus,
        Gen::TPsi => WallKind::W1Plus,
        Gen::TPsiInv => WallKind::W0Minus,
        Gen::TInv => WallKind::W1Minus,
    })
}

/// A piecewise linear path in the slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PLPath {
    pub waypoints: Vec<ExactComplex>,
}

impl PLPath {
    pub fn new(waypoints: Vec<ExactComplex>) -> Result<Self> {
        if waypoints.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DegeneratePath);
        }
        Ok(PLPath { waypoints })
    }

    pub fn reversed(&self) -> PLPath {
        PLPath { waypoints: self.waypoints.iter().rev().cloned().collect() }
    }

    /// `self` followed by `other`, which must start where `self` ends.
    pub fn concat(&self, other: &PLPath) -> Result<PLPath> {
        if self.waypoints.last() != other.waypoints.first() {
            return Err(Error::Precondition("paths do not join".into()));
        }
        let mut w = self.waypoints.clone();
        w.extend(other.waypoints.iter().skip(1).cloned());
        PLPath::new(w)
    }
}

impl FromStr for PLPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let pts =
            s.split(';').filter(|p| !p.trim().is_empty()).map(ExactComplex::from_str).collect::<Result<Vec<_>>>()?;
        PLPath::new(pts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub segment: usize,
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub parameter: Q,
    pub point: ExactComplex,
    /// The wall relative to the sheet being left.
    pub wall: WallKind,
    pub word: TiltWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftResult {
    pub end: ChamberPoint,
    pub crossings: Vec<Crossing>,
}

fn is_puncture(z: &ExactComplex) -> bool {
    z.re.is_zero() && (&z.im * q(2)).is_integer()
}

/// Lifts a path starting at `start.x` to the covering, recording every wall
/// crossing with its exact parameter along the segment.
///
/// The path must avoid the punctures and cross walls transversally; a
/// waypoint lying on a wall counts as tangential contact.
pub fn lift_path(start: &ChamberPoint, path: &PLPath) -> Result<LiftResult> {
    let start = ChamberPoint::new(start.word.clone(), start.x.clone())?;
    if path.waypoints.first() != Some(&start.x.x) {
        return Err(Error::Precondition("path must begin at the start point".into()));
    }
    if path.waypoints.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DegeneratePath);
    }
    let mut word = start.word.clone();
    let mut crossings = Vec::new();
    for (seg, w) in path.waypoints.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        if is_puncture(b) {
            return Err(Error::Puncture(b.to_string()));
        }
        if (&b.im * q(2)).is_integer() {
            return Err(Error::Tangential(b.to_string()));
        }
        let dim = &b.im - &a.im;
        if dim.is_zero() {
            continue;
        }
        // levels k with Im x = k/2 strictly between the endpoints
        let (lo, hi) = if dim.is_positive() { (&a.im, &b.im) } else { (&b.im, &a.im) };
        let first = (lo * q(2)).floor().to_integer() + 1;
        let last = (hi * q(2)).ceil().to_integer() - 1;
        let mut levels: Vec<i64> = Vec::new();
        let mut k = first;
        while k <= last {
            levels.push(i64::try_from(&k).expect("level fits"));
            k += 1;
        }
        if dim.is_negative() {
            levels.reverse();
        }
        for level in levels {
            let s = (qf(level, 2) - &a.im) / &dim;
            let point = a + &(b - a).scale(&s);
            if point.re.is_zero() {
                return Err(Error::Puncture(point.to_string()));
            }
            let loc = WallLocation { level, re_positive: point.re.is_positive() };
            let wall = wall_kind(&word, loc)?;
            word = wall_cross_rule(&word, loc)?;
            crossings.push(Crossing { segment: seg, parameter: s, point, wall, word: word.clone() });
        }
    }
    let x = NormalizedCharge::new(path.waypoints.last().expect("nonempty").clone());
    let end = ChamberPoint::new(word, x)?;
    debug_assert!(is_in_hreg(&end.charge()));
    Ok(LiftResult { end, crossings })
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG of the charges of the stable classes and of `δ` at a chamber point.
pub fn render_charge_diagram(p: &ChamberPoint, n_max: u32) -> Result<String> {
    let z = p.charge();
    let cat = stable_catalog(p, n_max)?;
    let mut rays: Vec<(f64, f64, String)> = cat
        .iter()
        .map(|e| {
            let v = z.eval(e.quot);
            (to_f64(&v.re), to_f64(&v.im), e.label.to_string())
        })
        .collect();
    let zd = z.eval(delta());
    rays.push((to_f64(&zd.re), to_f64(&zd.im), "O_x".to_string()));
    let scale = rays.iter().map(|(x, y, _)| x.hypot(*y)).fold(f64::MIN_POSITIVE, f64::max);
    let (w, h, r) = (640.0, 360.0, 300.0);
    let (ox, oy) = (w / 2.0, h - 30.0);
    let mut svg = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    );
    svg += &format!("  <title>Central charges at x = {}</title>\n", xml_escape(&p.x.to_string()));
    svg += &format!("  <line class=\"axis\" x1=\"10\" y1=\"{oy}\" x2=\"{}\" y2=\"{oy}\" stroke=\"#999\"/>\n", w - 10.0);
    for (x, y, label) in &rays {
        let (ex, ey) = (ox + r * x / scale, oy - r * y / scale);
        let class = if label == "O_x" { "delta" } else { "ray" };
        svg += &format!(
            "  <line class=\"{class}\" x1=\"{ox:.2}\" y1=\"{oy:.2}\" x2=\"{ex:.2}\" y2=\"{ey:.2}\" stroke=\"{}\"/>\n",
            if class == "delta" { "#c00" } else { "#036" }
        );
        svg += &format!("  <text x=\"{ex:.2}\" y=\"{:.2}\" font-size=\"9\">{}</text>\n", ey - 3.0, xml_escape(label));
    }
    svg += "</svg>\n";
    Ok(svg)
}

/// SVG of the real slice of the hyperplane arrangement cut out by `Δ`:
/// `n Z(γ_0) + (n+1) Z(γ_1) = 0`, `(n+1) Z(γ_0) + n Z(γ_1) = 0` for
/// `n ≤ n_max`, and `Z(γ_0) + Z(γ_1) = 0`.
pub fn render_arrangement(n_max: u32) -> String {
    let (size, half) = (400.0, 180.0);
    let c = size / 2.0;
    let mut normals: Vec<(i64, i64)> = Vec::new();
    for n in 0..=n_max as i64 {
        normals.push((n, n + 1));
        normals.push((n + 1, n));
    }
    normals.push((1, 1));
    let mut svg = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    );
    svg += "  <title>Real slice of H^reg</title>\n";
    for (a, b) in normals {
        // direction of the line a u + b v = 0 is (b, -a)
        let (dx, dy) = (b as f64, -(a as f64));
        let len = dx.hypot(dy);
        let (ux, uy) = (half * dx / len, half * dy / len);
        svg += &format!(
            "  <line class=\"hyperplane\" data-class=\"({a},{b})\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#036\"/>\n",
            c - ux,
            c + uy,
            c + ux,
            c - uy
        );
    }
    svg += &format!("  <text x=\"{}\" y=\"{}\" font-size=\"12\">Z(γ0)</text>\n", size - 50.0, c - 6.0);
    svg += &format!("  <text x=\"{}\" y=\"14\" font-size=\"12\">Z(γ1)</text>\n", c + 6.0);
    svg += "</svg>\n";
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    fn x(s: &str) -> NormalizedCharge {
        s.parse().unwrap()
    }

    fn base(s: &str) -> ChamberPoint {
        ChamberPoint::new(TiltWord::empty(), x(s)).unwrap()
    }

    fn word(s: &str) -> TiltWord {
        s.parse().unwrap()
    }

    fn orbit_class(o: &str) -> KClass {
        let (pow, simple) = match o.split_once('(') {
            Some((pow, rest)) => (pow, rest.trim_end_matches(')')),
            None => ("", o),
        };
        let i: usize = simple.trim_start_matches("S_").parse().unwrap();
        let (g, e) = match pow.split_once('^') {
            Some((g, e)) => (g, e.parse::<i64>().unwrap()),
            None if pow.is_empty() => ("T", 0),
            None => (pow, 1),
        };
        let g: Gen = g.parse().unwrap();
        let g = if e < 0 { g.inverse() } else { g };
        let m = g.matrix();
        (0..e.abs()).fold(gamma(i).unwrap(), |c, _| m.apply(c))
    }

    #[test]
    fn orbit_notes_match_classes() {
        for x0 in ["1/4+1/4*i", "-1/4+1/4*i", "1/4*i"] {
            for e in stable_catalog(&base(x0), 4).unwrap() {
                if let Some(o) = &e.orbit {
                    assert_eq!(orbit_class(o), e.kclass, "{o}");
                }
            }
        }
        let p = ChamberPoint::new(word("T"), x("1/4-1/4*i")).unwrap();
        assert!(stable_catalog(&p, 1)
            .unwrap()
            .iter()
            .all(|e| e.orbit.as_deref().map_or(true, |o| o.starts_with("[T]"))));
    }

    #[test]
    fn loop_inside_a_chamber_changes_nothing() {
        let start = base("1/4+1/4*i");
        let path: PLPath = "1/4+1/4*i;1/2+1/4*i;1/2+1/3*i;1/4+1/4*i".parse().unwrap();
        let r = lift_path(&start, &path).unwrap();
        assert!(r.crossings.is_empty());
        assert_eq!(r.end, start);
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&x("1/4+1/4*i")), Region::UPlus);
        assert_eq!(classify(&x("-1/4+1/4*i")), Region::UMinus);
        assert_eq!(classify(&x("1/4*i")), Region::Ray);
        assert_eq!(classify(&x("1")), Region::Wall(WallKind::W0Plus));
        assert_eq!(classify(&x("-1")), Region::Wall(WallKind::W0Minus));
        assert_eq!(classify(&x("-1+1/2*i")), Region::Wall(WallKind::W1Plus));
        assert_eq!(classify(&x("1+1/2*i")), Region::Wall(WallKind::W1Minus));
        assert_eq!(classify(&x("0")), Region::Puncture);
        assert_eq!(classify(&x("1/2*i")), Region::Puncture);
        assert_eq!(classify(&x("1-i")), Region::Outside);
    }

    #[test]
    fn strips() {
        assert_eq!(locate_strip(&x("1/4+1/4*i")), 0);
        assert_eq!(locate_strip(&x("1/4+3/4*i")), -1);
        assert_eq!(locate_strip(&x("1/4-1/4*i")), 1);
        assert_eq!(locate_strip(&x("0")), 0);
        assert_eq!(locate_strip(&x("1/2*i")), -1);
    }

    #[test]
    fn catalogs() {
        let up = stable_catalog(&base("1/4+1/4*i"), 1).unwrap();
        assert_eq!(up.len(), 10);
        let e = up.iter().find(|e| e.kclass == KClass::new(1, 2, 0, 0)).unwrap();
        assert_eq!(e.family, Family::Unique);
        let f = up.iter().find(|e| e.kclass == KClass::new(1, 1, 0, 0)).unwrap();
        assert_eq!(f.family, Family::P1Family);
        let ray = stable_catalog(&base("1/4*i"), 3).unwrap();
        assert_eq!(
            ray.iter().map(|e| e.kclass).collect::<Vec<_>>(),
            (0..4).map(|i| gamma(i).unwrap()).collect::<Vec<_>>()
        );
        let down = stable_catalog(&base("-1/4+1/4*i"), 0).unwrap();
        let g12 = down.iter().find(|e| e.kclass == KClass::new(0, 1, 1, 0)).unwrap();
        assert_eq!(g12.label.to_string(), "Psi^1(s*O_fiber(x))");
        assert_eq!(g12.family, Family::P1Family);
    }

    #[test]
    fn catalog_on_a_sheet() {
        let p = ChamberPoint::new(word("T"), x("1/4-1/4*i")).unwrap();
        let cat = stable_catalog(&p, 1).unwrap();
        let heart = p.heart();
        for e in &cat {
            assert_eq!(e.label.kclass(), Some(e.kclass), "{}", e.label);
        }
        // n = 0 entries are the simples of the sheet's heart
        let mut simple: Vec<KClass> = heart.classes().to_vec();
        simple.sort();
        let mut first: Vec<KClass> = cat.iter().filter(|e| e.n == Some(0)).map(|e| e.kclass).collect();
        first.sort();
        assert_eq!(first, simple);
    }

    #[test]
    fn delta_witness() {
        let d = semistable_delta_witness(&base("1/4+1/4*i"));
        assert_eq!(d.kclass, delta());
        assert_eq!(d.charge, ExactComplex::i());
        assert_eq!(d.factor_charge, ExactComplex::new(q(0), qf(1, 2)));
        assert_eq!(semistable_delta_witness(&base("1/4*i")).kclass, delta());
    }

    #[test]
    fn wall_rules() {
        let e = TiltWord::empty();
        assert_eq!(wall_cross_rule(&e, WallLocation { level: 0, re_positive: true }).unwrap(), word("T"));
        assert_eq!(wall_cross_rule(&e, WallLocation { level: 0, re_positive: false }).unwrap(), word("Tpsiinv"));
        assert_eq!(wall_cross_rule(&e, WallLocation { level: 1, re_positive: false }).unwrap(), word("Tpsi"));
        assert_eq!(wall_cross_rule(&e, WallLocation { level: 1, re_positive: true }).unwrap(), word("Tinv"));
        assert_eq!(wall_cross_rule(&word("T"), WallLocation { level: 0, re_positive: true }).unwrap(), e);
        assert!(matches!(
            wall_cross_rule(&e, WallLocation { level: 3, re_positive: true }),
            Err(Error::NotAdjacent(..))
        ));
    }

    #[test]
    fn single_crossing() {
        let path: PLPath = "1/4+1/4*i;1/4-1/4*i".parse().unwrap();
        let r = lift_path(&base("1/4+1/4*i"), &path).unwrap();
        assert_eq!(r.crossings.len(), 1);
        assert_eq!(r.crossings[0].parameter, qf(1, 2));
        assert_eq!(r.crossings[0].wall, WallKind::W0Plus);
        assert_eq!(r.end.word, word("T"));
    }

    #[test]
    fn square_loop() {
        let path: PLPath = "1/4+1/4*i;-1/4+1/4*i;-1/4-1/4*i;1/4-1/4*i;1/4+1/4*i".parse().unwrap();
        let r = lift_path(&base("1/4+1/4*i"), &path).unwrap();
        assert_eq!(r.end.word, word("Tpsiinv,Tinv"));
        assert_eq!(r.end.x, x("1/4+1/4*i"));
        let back = lift_path(&r.end, &path.reversed()).unwrap();
        assert_eq!(back.end, base("1/4+1/4*i"));
    }

    #[test]
    fn bad_paths() {
        let start = base("1/4+1/4*i");
        let through: PLPath = "1/4+1/4*i;-1/4-1/4*i".parse().unwrap();
        assert!(matches!(lift_path(&start, &through), Err(Error::Puncture(_))));
        let onto: PLPath = "1/4+1/4*i;1/4".parse().unwrap();
        assert!(matches!(lift_path(&start, &onto), Err(Error::Tangential(_))));
        let wrong: PLPath = "1/3+1/4*i;1/4".parse().unwrap();
        assert!(lift_path(&start, &wrong).is_err());
        assert_eq!("1/4*i;1/4*i".parse::<PLPath>(), Err(Error::DegeneratePath));
        assert!(ChamberPoint::new(TiltWord::empty(), x("1/4-1/4*i")).is_err());
    }

    #[test]
    fn svg_output() {
        let svg = render_charge_diagram(&base("1/4+1/4*i"), 1).unwrap();
        assert_eq!(svg.matches("class=\"ray\"").count(), 10);
        assert_eq!(svg.matches("class=\"delta\"").count(), 1);
        assert_eq!(render_arrangement(0).matches("class=\"hyperplane\"").count(), 3);
        assert_eq!(render_arrangement(2).matches("class=\"hyperplane\"").count(), 7);
        for doc in [svg, render_arrangement(3), render_charge_diagram(&base("1/4*i"), 2).unwrap()] {
            let tree = roxmltree::Document::parse(&doc).unwrap();
            assert_eq!(tree.root_element().tag_name().name(), "svg");
        }
    }
}
