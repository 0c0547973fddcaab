use std::cmp::Ordering;

use proptest::prelude::*;

use f0stab::chambers::{classify, lift_path, stable_catalog, ChamberPoint, NormalizedCharge, PLPath, Region};
use f0stab::charge::{in_h, is_in_hreg, normalize, phase_cmp, CentralCharge, ExactComplex};
use f0stab::exact::{q, qf};
use f0stab::geometry_oracle::{ext_f0, ext_x_pushforward, DUAL, EXCEPTIONAL};
use f0stab::hearts::{heart_of_word, simple_tilt, standard_heart, Direction, Gen, TiltWord};
use f0stab::k_lattice::{delta, delta_set, phi, project, psi, quotient_action, t, t_psi, KClass, QuotClass};
use f0stab::kronecker::{
    dim_hom, kronecker_canonical_form, semistable_bruteforce, semistable_naive, Budget, FieldTag, KroneckerRep, Matrix,
    StabilityFunctionK2,
};

fn rational() -> impl Strategy<Value = f0stab::exact::Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| qf(n, d))
}

fn complex() -> impl Strategy<Value = ExactComplex> {
    (rational(), rational()).prop_map(|(re, im)| ExactComplex::new(re, im))
}

fn in_upper() -> impl Strategy<Value = ExactComplex> {
    complex().prop_filter("in H", |z| in_h(z) && !z.is_zero())
}

fn gen() -> impl Strategy<Value = Gen> {
    prop_oneof![Just(Gen::T), Just(Gen::TInv), Just(Gen::TPsi), Just(Gen::TPsiInv)]
}

fn word(max: usize) -> impl Strategy<Value = TiltWord> {
    prop::collection::vec(gen(), 0..=max).prop_map(TiltWord::new)
}

fn kclass() -> impl Strategy<Value = KClass> {
    prop::array::uniform4(-6i64..=6).prop_map(KClass)
}

/// A point of the open base strip `0 < Im x < 1/2`.
fn strip_point() -> impl Strategy<Value = ExactComplex> {
    (rational(), 2i64..=9)
        .prop_flat_map(|(re, m)| (Just(re), 1..m, Just(m)))
        .prop_map(|(re, k, m)| ExactComplex::new(re, qf(k, 2 * m)))
}

fn chamber_point() -> impl Strategy<Value = ChamberPoint> {
    (word(4), strip_point()).prop_map(|(w, x)| {
        let n = w.quotient_exponent();
        let x = NormalizedCharge::new(x).translated(-n);
        ChamberPoint::new(w, x).expect("translated into the sheet")
    })
}

fn f5_rep(max: usize) -> impl Strategy<Value = KroneckerRep> {
    (0..=max, 0..=max)
        .prop_filter("nonzero", |d| *d != (0, 0))
        .prop_flat_map(|(p, qd)| {
            let m = prop::collection::vec(prop::collection::vec(0i64..5, qd), p);
            (Just(p), Just(qd), m.clone(), m)
        })
        .prop_map(|(p, qd, a, b)| {
            let conv = |rows: Vec<Vec<i64>>| {
                Matrix::from_rows(p, qd, rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect())
            };
            KroneckerRep::new(FieldTag::Prime(5), conv(a), conv(b)).expect("reduced")
        })
}

fn k2_charge() -> impl Strategy<Value = StabilityFunctionK2> {
    (in_upper(), in_upper()).prop_map(|(a, b)| StabilityFunctionK2::new(a, b).expect("in H"))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn automorphisms_commute_with_projection(v in kclass()) {
        for a in [t(), t_psi(), psi(), phi()] {
            let m = quotient_action(&a).unwrap();
            prop_assert_eq!(f0stab::k_lattice::mat2_apply(&m, project(v)), project(a.apply(v)));
        }
    }

    #[test]
    fn t_moves_delta_set_one_step(n in 0u32..6) {
        let next: Vec<QuotClass> = delta_set(n + 1);
        let up = |v: &QuotClass| next.contains(v) || next.contains(&QuotClass(v.0.map(|x| -x)));
        for a in [t(), t_psi()] {
            let m = quotient_action(&a).unwrap();
            for v in delta_set(n) {
                prop_assert!(up(&f0stab::k_lattice::mat2_apply(&m, v)), "{:?}", v);
            }
        }
    }

    #[test]
    fn phase_order_is_scale_invariant(a in in_upper(), b in in_upper(), s in 1i64..20, d in 1i64..7) {
        let c = ExactComplex::real(qf(s, d));
        prop_assert_eq!(phase_cmp(&(&a * &c), &(&b * &c)).unwrap(), phase_cmp(&a, &b).unwrap());
    }

    #[test]
    fn phase_order_is_a_preorder(a in in_upper(), b in in_upper(), c in in_upper()) {
        let ab = phase_cmp(&a, &b).unwrap();
        prop_assert_eq!(phase_cmp(&b, &a).unwrap(), ab.reverse());
        if ab != Ordering::Greater && phase_cmp(&b, &c).unwrap() != Ordering::Greater {
            prop_assert_ne!(phase_cmp(&a, &c).unwrap(), Ordering::Greater);
        }
        prop_assert_eq!(ab == Ordering::Equal, a.same_ray(&b));
    }

    #[test]
    fn rotation_preserves_phase_order(a in in_upper(), b in in_upper(), c in in_upper()) {
        let (ra, rb) = (&a * &c, &b * &c);
        prop_assume!(in_h(&ra) && in_h(&rb));
        prop_assert_eq!(phase_cmp(&ra, &rb).unwrap(), phase_cmp(&a, &b).unwrap());
    }

    #[test]
    fn hreg_is_invariant_under_t(z0 in complex(), z1 in complex()) {
        let z = CentralCharge::new(z0, z1);
        for a in [t(), t_psi()] {
            let m = quotient_action(&a).unwrap();
            let moved = CentralCharge::new(z.eval(f0stab::k_lattice::mat2_apply(&m, QuotClass([1, 0]))), z.eval(f0stab::k_lattice::mat2_apply(&m, QuotClass([0, 1]))));
            prop_assert_eq!(is_in_hreg(&moved), is_in_hreg(&z));
        }
    }

    #[test]
    fn hreg_agrees_with_explicit_witnesses(z0 in complex(), z1 in complex()) {
        let z = CentralCharge::new(z0.clone(), z1.clone());
        // any vanishing class found by a bounded scan rules z out
        if delta_set(40).iter().any(|v| z.eval(*v).is_zero()) {
            prop_assert!(!is_in_hreg(&z));
        }
        // and every rejection comes with a vanishing class of Δ
        if !is_in_hreg(&z) && !z0.is_zero() && !z1.is_zero() {
            let r = z0.div(&z1).unwrap();
            let m = -r.re;
            let (num, den) = (i64::try_from(m.numer()).unwrap(), i64::try_from(m.denom()).unwrap());
            let v = QuotClass([den, num]);
            prop_assert!(z.eval(v).is_zero());
            prop_assert!(delta_set(num.max(den) as u32).contains(&v));
        }
    }

    #[test]
    fn normalize_is_idempotent(z0 in complex(), z1 in complex()) {
        let z = CentralCharge::new(z0, z1);
        if let Ok((_, n)) = normalize(&z) {
            let (c, again) = normalize(&n).unwrap();
            prop_assert_eq!(c, ExactComplex::from_ints(1, 0));
            prop_assert_eq!(again, n);
        }
    }

    #[test]
    fn simple_tilt_is_a_basis_change(i in 0usize..4, left in any::<bool>()) {
        let h = standard_heart();
        let dir = if left { Direction::Left } else { Direction::Right };
        let tilted = simple_tilt(&h, i, dir).unwrap();
        prop_assert!(tilted.is_basis());
        let (old, new) = (h.classes(), tilted.classes());
        prop_assert_eq!(new[i], KClass(old[i].0.map(|x| -x)));
        for j in (0..4).filter(|&j| j != i) {
            let diff: Vec<i64> = (0..4).map(|k| new[j].0[k] - old[j].0[k]).collect();
            let mult = diff[i];
            prop_assert!(mult >= 0);
            let only_i = (0..4).all(|k| k == i || diff[k] == 0);
            prop_assert!(only_i);
        }
    }

    #[test]
    fn word_hearts_collapse_on_the_quotient(w in word(4)) {
        let h = heart_of_word(&w);
        prop_assert!(h.is_basis());
        let n = w.quotient_exponent();
        let mut m = [[1i64, 0], [0, 1]];
        let step = if n >= 0 { quotient_action(&t()).unwrap() } else { quotient_action(&t_psi()).unwrap() };
        for _ in 0..n.abs() {
            m = f0stab::k_lattice::mat2_mul(&step, &m);
        }
        let want = [QuotClass([m[0][0], m[1][0]]), QuotClass([m[0][1], m[1][1]])];
        let classes = h.classes();
        for (k, c) in classes.iter().enumerate() {
            prop_assert_eq!(project(*c), want[k % 2]);
        }
        // δ is the sum of the simple classes of every such heart
        let sum = KClass(std::array::from_fn(|i| classes.iter().map(|c| c.0[i]).sum()));
        prop_assert_eq!(sum, delta());
    }

    #[test]
    fn tilt_words_round_trip_as_text(w in word(6)) {
        let back: TiltWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w.clone());
        prop_assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn catalog_lies_in_the_cone_of_the_heart(p in chamber_point()) {
        let heart = p.heart();
        let inv = p.word.matrix().inverse().unwrap();
        for e in stable_catalog(&p, 2).unwrap() {
            // coordinates of the class in the basis of the heart's simples
            let coords = inv.apply(e.kclass).0;
            prop_assert!(coords.iter().all(|&c| c >= 0) || coords.iter().all(|&c| c <= 0), "{:?} in {}", e.kclass, heart);
            if let Some(c) = e.label.kclass() {
                prop_assert_eq!(c, e.kclass, "{}", e.label);
            }
        }
    }

    #[test]
    fn classify_is_scale_invariant_and_psi_swaps(x in strip_point()) {
        let n = NormalizedCharge::new(x.clone());
        let region = classify(&n);
        // ψ sends (z0, z1) to (z1, z0), i.e. x to i/2 - x
        let swapped = NormalizedCharge::new(&ExactComplex::from_ratios((0, 1), (1, 2)) - &x);
        let expect = match region {
            Region::UPlus => Region::UMinus,
            Region::UMinus => Region::UPlus,
            r => r,
        };
        prop_assert_eq!(classify(&swapped), expect);
        let z = n.charge().scaled(&ExactComplex::real(qf(7, 3)));
        let back = NormalizedCharge::from_charge(&z).unwrap();
        prop_assert_eq!(classify(&back), region);
    }

    #[test]
    fn t_image_of_uplus_catalog(re in 1i64..10, d in 1i64..10) {
        let x = ExactComplex::new(qf(re, d), qf(1, 4));
        let p = ChamberPoint::new(TiltWord::empty(), NormalizedCharge::new(x)).unwrap();
        prop_assume!(p.base_region() == Region::UPlus);
        let small = stable_catalog(&p, 3).unwrap();
        let big: Vec<KClass> = stable_catalog(&p, 4).unwrap().iter().map(|e| e.kclass).collect();
        for e in small {
            let img = t().apply(e.kclass);
            let neg = KClass(img.0.map(|x| -x));
            prop_assert!(big.contains(&img) || big.contains(&neg), "{:?}", e.kclass);
        }
    }

    #[test]
    fn lifting_is_functorial(p in chamber_point(), pts in prop::collection::vec(complex(), 1..4), more in prop::collection::vec(complex(), 1..3)) {
        let mut first = vec![p.x.x.clone()];
        first.extend(pts);
        let a = PLPath::new(first);
        prop_assume!(a.is_ok());
        let a = a.unwrap();
        let la = lift_path(&p, &a);
        prop_assume!(la.is_ok());
        let la = la.unwrap();
        let mut second = vec![la.end.x.x.clone()];
        second.extend(more);
        let b = PLPath::new(second);
        prop_assume!(b.is_ok());
        let b = b.unwrap();
        let lb = lift_path(&la.end, &b);
        prop_assume!(lb.is_ok());
        let lb = lb.unwrap();
        let whole = lift_path(&p, &a.concat(&b).unwrap()).unwrap();
        prop_assert_eq!(&whole.end, &lb.end);
        prop_assert_eq!(whole.crossings.len(), la.crossings.len() + lb.crossings.len());
        let back = lift_path(&whole.end, &a.concat(&b).unwrap().reversed()).unwrap();
        prop_assert_eq!(&back.end, &p);
        prop_assert!(is_in_hreg(&whole.end.charge()));
        for c in &whole.crossings {
            prop_assert!(is_in_hreg(&NormalizedCharge::new(c.point.clone()).charge()));
        }
    }

    #[test]
    fn oracles_agree(m in f5_rep(2), z in k2_charge()) {
        let b = Budget::default();
        prop_assert_eq!(semistable_bruteforce(&m, &z, &b).unwrap(), semistable_naive(&m, &z, &b).unwrap());
    }

    #[test]
    fn doubling_preserves_semistability(m in f5_rep(2), z in k2_charge()) {
        let b = Budget::default();
        let once = semistable_bruteforce(&m, &z, &b).unwrap();
        let twice = semistable_bruteforce(&m.direct_sum(&m).unwrap(), &z, &b).unwrap();
        prop_assert_eq!(once.semistable, twice.semistable);
    }

    #[test]
    fn stable_representations_are_bricks(m in f5_rep(3), z in k2_charge()) {
        let v = semistable_bruteforce(&m, &z, &Budget::default()).unwrap();
        if v.stable {
            prop_assert_eq!(dim_hom(&m, &m).unwrap(), 1);
        }
    }

    #[test]
    fn canonical_form_recovers_the_class(m in f5_rep(3)) {
        let r = m.lift_to_q();
        let blocks = kronecker_canonical_form(&r).unwrap();
        let total = blocks.iter().fold((0, 0), |a, b| (a.0 + b.class().0, a.1 + b.class().1));
        prop_assert_eq!(total, r.class());
        let again = kronecker_canonical_form(&f0stab::kronecker::canonical::assemble(&blocks)).unwrap();
        prop_assert_eq!(again, blocks);
    }
}

#[test]
fn serre_symmetry_on_the_dual_collection() {
    for f in DUAL {
        for g in DUAL {
            for k in 0..=3 {
                assert_eq!(ext_x_pushforward(f, g, k), ext_x_pushforward(g, f, 3 - k), "{f} {g} {k}");
            }
        }
    }
}

#[test]
fn dual_collection_is_orthogonal() {
    for (i, e) in EXCEPTIONAL.iter().enumerate() {
        for (j, f) in DUAL.iter().enumerate() {
            for k in -3..=3 {
                let want = u64::from(i == j && k == 0);
                assert_eq!(ext_f0(*e, *f, k), want, "E{i} F{j} k={k}");
            }
        }
    }
}
