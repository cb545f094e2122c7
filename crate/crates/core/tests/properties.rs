use std::collections::BTreeMap;

use proptest::prelude::*;
use veronese_witt::cap::{base_point, build_dual_cap};
use veronese_witt::coset::{CosetExplorer, Quadruple, SetClass};
use veronese_witt::gf3::{Gf3, GfMatrix, GfVector};
use veronese_witt::pg::{enumerate_hyperplanes, enumerate_points, perspectivity, Flat, Hyperplane, ProjPoint};
use veronese_witt::veronese::{lift_collineation, primes_meeting_only, VeroneseModel};

fn gf3() -> impl Strategy<Value = Gf3> {
    (0i64..3).prop_map(Gf3::new)
}

fn vector(len: usize) -> impl Strategy<Value = GfVector> {
    prop::collection::vec(gf3(), len).prop_map(GfVector::new)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = GfMatrix> {
    prop::collection::vec(gf3(), rows * cols).prop_map(move |d| GfMatrix::new(rows, cols, d).unwrap())
}

fn point(n: usize) -> impl Strategy<Value = ProjPoint> {
    let count = enumerate_points(n).len();
    (0..count).prop_map(move |i| enumerate_points(n)[i].clone())
}

fn flat(max_vectors: usize) -> impl Strategy<Value = Flat> {
    prop::collection::vec(vector(6), 0..=max_vectors).prop_map(|vs| Flat::from_vectors(6, &vs))
}

fn invertible3() -> impl Strategy<Value = GfMatrix> {
    matrix(3, 3).prop_filter("invertible", |m| m.rank() == 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverses(a in gf3(), b in gf3(), c in gf3()) {
        if !a.is_zero() {
            prop_assert_eq!(a * a.inv().unwrap(), Gf3::ONE);
        }
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - a, Gf3::ZERO);
        prop_assert_eq!(a + a + a, Gf3::ZERO);
    }

    #[test]
    fn rref_is_idempotent(m in matrix(4, 6)) {
        let (r, rank) = m.rref();
        prop_assert_eq!(r.rref(), (r.clone(), rank));
        prop_assert_eq!(rank, m.rank());
        prop_assert_eq!(m.transpose().rank(), rank);
        prop_assert_eq!(m.nullspace().len(), 6 - rank);
        for v in m.nullspace() {
            prop_assert!(m.right_mul(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn meet_join_dimensions(u in flat(5), w in flat(5)) {
        let lhs = u.dim() + w.dim();
        let rhs = u.meet(&w).dim() + u.join(&w).dim();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(u.meet(&w).is_subflat_of(&u) && u.meet(&w).is_subflat_of(&w));
        prop_assert!(u.is_subflat_of(&u.join(&w)));
    }

    #[test]
    fn point_text_round_trip(p in point(5)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<ProjPoint>().unwrap(), p.clone());
        prop_assert_eq!(p.coords().first_nonzero().map(|(_, x)| x), Some(Gf3::ONE));
    }

    #[test]
    fn incidence_duality(p in point(5), q in point(5)) {
        let h = q.to_hyperplane();
        prop_assert_eq!(h.contains(&p), p.to_hyperplane().contains(&h.to_point()));
    }

    #[test]
    fn perspectivity_fixes_axis_and_lines(c in point(3), a in point(3), x in point(3), t in 1i64..3, s in 0i64..3) {
        let axis = a.to_hyperplane();
        prop_assume!(!axis.contains(&x) && x != c);
        let image = ProjPoint::new(&x.coords().scale(Gf3::new(t)) + &c.coords().scale(Gf3::new(s))).unwrap();
        prop_assume!(!axis.contains(&image));
        let g = perspectivity(&c, &axis, (&x, &image)).unwrap();
        prop_assert_eq!(g.apply(&x).unwrap(), image);
        for y in enumerate_points(3) {
            let gy = g.apply(&y).unwrap();
            if axis.contains(&y) {
                prop_assert_eq!(&gy, &y);
            }
            prop_assert!(Flat::span(&[c.clone(), y.clone(), gy]).unwrap().dim() <= 1);
        }
    }

    #[test]
    fn lift_is_a_homomorphism(a in invertible3(), b in invertible3()) {
        let ab = lift_collineation(&a.mat_mul(&b).unwrap()).unwrap();
        let composed = lift_collineation(&a).unwrap().then(&lift_collineation(&b).unwrap()).unwrap();
        prop_assert_eq!(ab, composed);
        let scaled = lift_collineation(&a.scale(Gf3::TWO)).unwrap();
        prop_assert_eq!(scaled, lift_collineation(&a).unwrap());
    }

    #[test]
    fn four_flats_are_hyperplanes(vs in prop::collection::vec(vector(6), 5)) {
        let f = Flat::from_vectors(6, &vs);
        prop_assume!(f.dim() == 4);
        let h = f.as_hyperplane().unwrap();
        prop_assert!(vs.iter().all(|v| h.coords().dot(v).is_zero()));
        prop_assert_eq!(h.to_flat(), f);
    }
}

#[test]
fn class_profiles_are_frozen() {
    let model = VeroneseModel::build();
    let e = CosetExplorer::new(&model, &base_point()).unwrap();
    let frozen: [(SetClass, &[(usize, usize)]); 3] = [
        (SetClass::V, &[(0, 3), (1, 36), (3, 76), (4, 171), (6, 42), (7, 36)]),
        (SetClass::K, &[(0, 12), (3, 220), (6, 132)]),
        (SetClass::R, &[(0, 3), (2, 90), (3, 76), (5, 144), (6, 42), (8, 9)]),
    ];
    for (class, profile) in frozen {
        let expected: BTreeMap<usize, usize> = profile.iter().copied().collect();
        assert_eq!(e.reference_profile(class), &expected, "{class}");
    }
    for q in Quadruple::all() {
        let s = e.twelve_set(q);
        assert_eq!(e.classify(&s).unwrap(), q.class(), "{q}");
        let profile = e.hyperplane_profile(&s);
        if q.class() == SetClass::R {
            assert_eq!(profile.get(&6), Some(&42));
            assert_ne!(&profile, e.reference_profile(SetClass::V));
        }
    }
}

#[test]
fn isolated_primes_match_tangent_condition() {
    let model = VeroneseModel::build();
    for p in model.points() {
        let through = model.conics_through(p);
        let mut isolated = Vec::new();
        for h in enumerate_hyperplanes(5) {
            let meets_only_p = model.section(&h) == vec![p.clone()];
            let tangent_cut = through.iter().all(|&i| {
                let c = &model.conics()[i];
                c.plane.meet(&h.to_flat()) == c.tangent_at(p).unwrap()
            });
            assert_eq!(meets_only_p, tangent_cut, "{h} at {p}");
            if meets_only_p {
                isolated.push(h);
            }
        }
        assert_eq!(isolated.len(), 3, "{p}");
        assert_eq!(isolated, primes_meeting_only(&model, p));
        let mut from_dual: Vec<Hyperplane> = build_dual_cap(&model, p).unwrap().isolated;
        from_dual.sort();
        assert_eq!(isolated, from_dual);
    }
}

#[test]
fn random_twelve_set_orders_divide_12_factorial() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use veronese_witt::automorphism::automorphism_order;
    use veronese_witt::design::blocks;

    let all = enumerate_points(5);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    for _ in 0..5 {
        let sample: Vec<ProjPoint> = all.choose_multiple(&mut rng, 12).cloned().collect();
        let order = automorphism_order(&blocks(&sample));
        assert!(order >= 1 && 479_001_600 % order == 0, "{order}");
    }
}
