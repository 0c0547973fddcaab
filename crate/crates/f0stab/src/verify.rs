//! Replays the identities and classification statements the library rests
//! on. Used by the `verify` command and by the acceptance tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chambers::{lift_path, stable_catalog, ChamberPoint, PLPath, Region};
use crate::charge::{act_lifted, is_in_hreg, support_constant, CentralCharge, ExactComplex};
use crate::exact::q;
use crate::geometry_oracle::{derive_quiver, ext_x_pullback, ext_x_pushforward, DUAL, QUIVER};
use crate::hearts::{
    double_tilt, double_tilt_generator, heart_equal_kclasses, heart_of_word, standard_heart, Direction, Pair, TiltWord,
};
use crate::k_lattice::{delta, psi, quotient_action, t, t_psi, MAT2_ID};
use crate::kronecker::{
    indecomposable_over, semistable_bruteforce, semistable_naive, Budget, FieldTag, KroneckerRep, Matrix, P1Point,
    StabilityFunctionK2,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, r: std::result::Result<String, String>) -> Check {
    match r {
        Ok(detail) => Check { name, passed: true, detail },
        Err(detail) => Check { name, passed: false, detail },
    }
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn lattice_matrices() -> Outcome {
    let (t, tp, p) = (t(), t_psi(), psi());
    ensure(t.det() == 1 && tp.det() == 1, || format!("det t = {}, det t_psi = {}", t.det(), tp.det()))?;
    let conj = p.compose(&t).compose(&p.inverse().expect("psi is invertible"));
    ensure(conj.matrix == tp.matrix, || "t_psi != psi t psi^-1".into())?;
    for a in [&t, &tp, &p] {
        ensure(a.apply(delta()) == delta(), || format!("{} moves delta", a.name))?;
    }
    Ok("det = 1, t_psi = psi t psi^-1, delta fixed".into())
}

pub fn quotient_inverse() -> Outcome {
    let qt = quotient_action(&t()).map_err(|e| e.to_string())?;
    let qp = quotient_action(&t_psi()).map_err(|e| e.to_string())?;
    ensure(crate::k_lattice::mat2_mul(&qt, &qp) == MAT2_ID, || format!("{qt:?} * {qp:?} != I"))?;
    Ok(format!("t|Q = {qt:?}, t_psi|Q = {qp:?}"))
}

pub fn double_tilts() -> Outcome {
    let std = standard_heart();
    let mut done = Vec::new();
    for pair in [Pair::Even, Pair::Odd] {
        for dir in [Direction::Left, Direction::Right] {
            let h = double_tilt(&std, pair, dir).map_err(|e| e.to_string())?;
            let g = double_tilt_generator(pair, dir);
            let w = heart_of_word(&TiltWord::new([g]));
            ensure(heart_equal_kclasses(&h, &w), || format!("{dir:?} {pair:?} does not give {}", g.token()))?;
            done.push(format!("{dir:?}{pair:?}={}", g.token()));
        }
    }
    Ok(done.join(", "))
}

pub fn quiver() -> Outcome {
    let q = derive_quiver();
    ensure(q == QUIVER, || format!("derived {q:?}"))?;
    // the pair spelled out in the computation of Ext^1(S_2, S_1)
    let e = ext_x_pushforward(DUAL[2], DUAL[1], 1);
    ensure(e == 2, || format!("Ext^1(S_2, S_1) = {e}"))?;
    Ok("double arrows on 0->1->2->3->0".into())
}

pub fn tilting_vanishing() -> Outcome {
    for i in 0..4 {
        for j in 0..4 {
            for k in 1..=3 {
                let v = ext_x_pullback(i, j, k, None).map_err(|e| e.to_string())?;
                ensure(v == 0, || format!("Ext^{k}(E_{i}, E_{j}) = {v}"))?;
            }
        }
    }
    Ok("48 groups vanish".into())
}

/// Parameters of the Kronecker replay over `F_5`.
#[derive(Debug, Clone, Copy)]
pub struct ReplayConfig {
    pub max_dim: usize,
    pub random_per_dim: usize,
    pub seed: u64,
}

fn case1() -> StabilityFunctionK2 {
    StabilityFunctionK2::new(ExactComplex::from_ints(1, 1), ExactComplex::from_ints(-1, 1)).expect("in H")
}

fn case2() -> StabilityFunctionK2 {
    StabilityFunctionK2::new(ExactComplex::from_ints(-1, 1), ExactComplex::from_ints(1, 1)).expect("in H")
}

fn random_rep(rng: &mut ChaCha8Rng, field: FieldTag, p: usize, qd: usize) -> KroneckerRep {
    let FieldTag::Prime(pr) = field else { unreachable!("replay runs over a prime field") };
    let mut m = || {
        Matrix::from_rows(p, qd, (0..p).map(|_| (0..qd).map(|_| q(rng.gen_range(0..pr as i64))).collect()).collect())
    };
    let (a, b) = (m(), m());
    KroneckerRep::new(field, a, b).expect("entries are reduced")
}

/// Indecomposables of `K_2` over `F_5` and random representations, checked
/// against the classification in both phase regimes.
///
/// With `φ(C_0) < φ(C_1)` every indecomposable is semistable and the stable
/// ones are all but `E^λ_m` for `m > 1`. With the phases swapped only `C_0`
/// and `C_1` are stable and only their multiples are semistable.
pub fn kronecker_replay(cfg: ReplayConfig) -> Outcome {
    let field = FieldTag::Prime(5);
    let budget = Budget { max_q: cfg.max_dim, max_field: 5 };
    let (z1, z2) = (case1(), case2());
    let mut points: Vec<P1Point> = (0..5).map(|l| P1Point::finite(q(l))).collect();
    points.push(P1Point::infinity());
    let mut count = 0usize;
    for p in 0..=cfg.max_dim {
        for qd in 0..=cfg.max_dim {
            if p + qd == 0 {
                continue;
            }
            let lambdas: Vec<Option<P1Point>> = match p.abs_diff(qd) {
                0 => points.iter().cloned().map(Some).collect(),
                1 => vec![None],
                _ => vec![],
            };
            for l in lambdas {
                let m = indecomposable_over(field, p, qd, l.clone()).map_err(|e| e.to_string())?;
                let v1 = semistable_bruteforce(&m, &z1, &budget).map_err(|e| e.to_string())?;
                let want_stable = p != qd || p == 1;
                ensure(v1.semistable && v1.stable == want_stable, || format!("case 1, ({p},{qd}) {l:?}: {v1:?}"))?;
                let v2 = semistable_bruteforce(&m, &z2, &budget).map_err(|e| e.to_string())?;
                let simple = (p, qd) == (1, 0) || (p, qd) == (0, 1);
                ensure(v2.semistable == simple && v2.stable == simple, || format!("case 2, ({p},{qd}) {l:?}: {v2:?}"))?;
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut randoms = 0usize;
    for p in 0..=cfg.max_dim {
        for qd in 0..=cfg.max_dim {
            if p + qd == 0 {
                continue;
            }
            for _ in 0..cfg.random_per_dim {
                let m = random_rep(&mut rng, field, p, qd);
                let v2 = semistable_bruteforce(&m, &z2, &budget).map_err(|e| e.to_string())?;
                let pure = p == 0 || qd == 0;
                ensure(v2.semistable == pure && v2.stable == (p + qd == 1), || format!("case 2 random {m}: {v2:?}"))?;
                let v1 = semistable_bruteforce(&m, &z1, &budget).map_err(|e| e.to_string())?;
                let n1 = semistable_naive(&m, &z1, &budget).map_err(|e| e.to_string())?;
                ensure(v1 == n1, || format!("case 1 random {m}: closure {v1:?} vs naive {n1:?}"))?;
                randoms += 1;
            }
        }
    }
    Ok(format!("{count} indecomposables, {randoms} random representations"))
}

pub fn support_constant_example() -> Outcome {
    let z = CentralCharge::new(ExactComplex::from_ints(1, 0), ExactComplex::i());
    let c = support_constant(&z, 8).map_err(|e| e.to_string())?;
    ensure(c == q(1), || format!("support constant {c}"))?;
    Ok("C(1, i) = 1".into())
}

/// Exact `U+` points `x` of the normalized slice used by the g-element check.
pub fn sample_uplus() -> Vec<ExactComplex> {
    [((1, 4), (1, 4)), ((1, 2), (1, 4)), ((1, 1), (1, 8)), ((3, 1), (1, 3)), ((1, 10), (2, 5))]
        .into_iter()
        .map(|(r, i)| ExactComplex::from_ratios(r, i))
        .collect()
}

pub fn g_element() -> Outcome {
    let half_i = ExactComplex::from_ratios((0, 1), (1, 2));
    for x in sample_uplus() {
        let z = crate::chambers::NormalizedCharge::new(x.clone()).charge();
        let g = crate::charge::g_element(&z).map_err(|e| e.to_string())?;
        let acted = act_lifted(&z, &g);
        // Z∘t⁻¹ on the quotient basis: t̄⁻¹ = [[0,1],[-1,2]]
        let want0 = -z.z1.clone();
        let want1 = &z.z0 + &z.z1.scale(&q(2));
        ensure(acted.z0 == want0 && acted.z1 == want1, || format!("x = {x}: got {acted:?}"))?;
        ensure(g.apply(&half_i) == half_i, || format!("x = {x}: g moves i/2"))?;
    }
    Ok("5 charges".into())
}

pub fn catalog_symmetry(n_max: u32) -> Outcome {
    let up = ChamberPoint::new(TiltWord::empty(), "1/4+1/4*i".parse().map_err(|e: crate::Error| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let down = ChamberPoint::new(TiltWord::empty(), "-1/4+1/4*i".parse().map_err(|e: crate::Error| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(up.base_region() == Region::UPlus && down.base_region() == Region::UMinus, || "sample regions".into())?;
    let mut a: Vec<_> =
        stable_catalog(&up, n_max).map_err(|e| e.to_string())?.iter().map(|e| psi().apply(e.kclass)).collect();
    let mut b: Vec<_> = stable_catalog(&down, n_max).map_err(|e| e.to_string())?.iter().map(|e| e.kclass).collect();
    a.sort();
    b.sort();
    ensure(a == b, || "psi does not carry U+ to U-".into())?;
    Ok(format!("{} classes", a.len()))
}

pub fn monodromy() -> Outcome {
    let start = ChamberPoint::new(TiltWord::empty(), "1/4+1/4*i".parse().expect("literal")).expect("in chamber");
    let path: PLPath = "1/4+1/4*i;-1/4+1/4*i;-1/4-1/4*i;1/4-1/4*i;1/4+1/4*i".parse().expect("literal");
    let r = lift_path(&start, &path).map_err(|e| e.to_string())?;
    ensure(!r.end.word.is_empty(), || "trivial monodromy".into())?;
    ensure(r.end.x == start.x, || "projection moved".into())?;
    ensure(!heart_equal_kclasses(&r.end.heart(), &standard_heart()), || "heart unchanged".into())?;
    ensure(
        r.crossings.iter().all(|c| is_in_hreg(&crate::chambers::NormalizedCharge::new(c.point.clone()).charge())),
        || "crossing outside H^reg".into(),
    )?;
    let back = lift_path(&r.end, &path.reversed()).map_err(|e| e.to_string())?;
    ensure(back.end == start, || "path + reverse is not the identity".into())?;
    Ok(format!("monodromy [{}]", r.end.word))
}

/// The whole suite in a fixed order.
pub fn run_suite(replay: ReplayConfig) -> Vec<Check> {
    vec![
        check("lattice matrices", lattice_matrices()),
        check("quotient action", quotient_inverse()),
        check("double tilts", double_tilts()),
        check("quiver", quiver()),
        check("tilting vanishing", tilting_vanishing()),
        check("kronecker classification", kronecker_replay(replay)),
        check("support constant", support_constant_example()),
        check("g element", g_element()),
        check("catalog symmetry", catalog_symmetry(3)),
        check("monodromy", monodromy()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for c in run_suite(ReplayConfig { max_dim: 2, random_per_dim: 2, seed: 7 }) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
