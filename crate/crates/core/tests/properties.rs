use prequant_core::extensions::gamma_elements;
use prequant_core::lattices::{coweight_lattice, representatives};
use prequant_core::linalg::{q, Q};
use prequant_core::surfcalc::random_perturbation;
use prequant_core::*;
use proptest::prelude::*;
use rand::SeedableRng;

fn rational_vec(len: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((-20i64..=20, 1i64..=12).prop_map(|(n, d)| Q::new(n, d)), len)
}

fn small_type() -> impl Strategy<Value = LieType> {
    prop::sample::select(LieType::all_up_to(8))
}

proptest! {
    #[test]
    fn pair_is_symmetric_and_bilinear(
        (t, x, y, z) in small_type().prop_flat_map(|t| {
            let n = t.rank();
            (Just(t), rational_vec(n), rational_vec(n), rational_vec(n))
        }),
        (a, b) in (-5i64..=5, 1i64..=5),
    ) {
        let rs = RootSystem::new(t);
        let c = Q::new(a, b);
        prop_assert_eq!(rs.pair(&x, &y).unwrap(), rs.pair(&y, &x).unwrap());
        let xz: Vec<Q> = x.iter().zip(&z).map(|(p, r)| p * c + r).collect();
        prop_assert_eq!(
            rs.pair(&xz, &y).unwrap(),
            c * rs.pair(&x, &y).unwrap() + rs.pair(&z, &y).unwrap()
        );
    }

    #[test]
    fn representative_classes_add(t in small_type(), i in 0usize..16, j in 0usize..16) {
        let rs = RootSystem::new(t);
        let cg = center(&rs);
        let elems = cg.elements();
        let (a, b) = (&elems[i % elems.len()], &elems[j % elems.len()]);
        let ra = minimal_dominant_rep(&rs, &cg, a).unwrap();
        let rb = minimal_dominant_rep(&rs, &cg, b).unwrap();
        let sum: Vec<Q> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(cg.class_of(&sum).unwrap(), cg.add(a, b));
        let rab = minimal_dominant_rep(&rs, &cg, &cg.add(a, b)).unwrap();
        let diff: Vec<Q> = sum.iter().zip(&rab).map(|(x, y)| x - y).collect();
        prop_assert!(diff.iter().all(|c| c.is_integer()));
    }

    #[test]
    fn perturbations_preserve_pairing_integral(seed in any::<u64>(), level in 1i64..=6) {
        let rs = RootSystem::new("B2".parse().unwrap());
        let cg = center(&rs);
        let lat = coweight_lattice(&rs);
        let z = full_subgroup(&cg);
        let gamma = gamma_elements(&z);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cfg = QuadratureConfig::new(64, 1e-9).unwrap();
        let l = Level::new(level).unwrap();
        let a = &gamma[(seed % gamma.len() as u64) as usize];
        let b = &gamma[((seed / 7) % gamma.len() as u64) as usize];
        let g = build_torus_map(&rs, &cg, &lat, a).unwrap();
        let h = build_torus_map(&rs, &cg, &lat, b).unwrap();
        let base = integrate_pairing_form(&g, &h, l, &cfg).unwrap();
        let gp = g.with_perturbation(random_perturbation(&mut rng, 2, 3, 3, 0.3));
        let hp = h.with_perturbation(random_perturbation(&mut rng, 2, 3, 3, 0.3));
        let pert = integrate_pairing_form(&gp, &hp, l, &cfg).unwrap();
        prop_assert!((base - pert).abs() < 1e-9, "{} vs {}", base, pert);
    }
}

#[test]
fn root_system_invariants_up_to_rank_12() {
    for t in LieType::all_up_to(12) {
        let rs = RootSystem::new(t);
        let g = rs.coroot_gram().to_rational();
        assert!(g.is_symmetric(), "{t}");
        assert!(g.leading_minors().iter().all(|m| *m > q(0)), "{t}");
        let min_diag = (0..t.rank()).map(|i| rs.coroot_gram()[(i, i)]).min().unwrap();
        assert_eq!(min_diag, 2, "{t}");
        assert_eq!(rs.recovered_cartan().as_ref(), Some(rs.cartan()), "{t}");
        let prod = rs.cartan().transpose().to_rational().mul(rs.fundamental_coweights());
        assert_eq!(prod, Matrix::identity(t.rank()), "{t}");
    }
}

#[test]
fn dominant_representatives_exist_up_to_rank_12() {
    for t in LieType::all_up_to(12) {
        let rs = RootSystem::new(t);
        let cg = center(&rs);
        let reps = representatives(&rs, &full_subgroup(&cg)).unwrap();
        for (e, r) in cg.elements().iter().zip(&reps) {
            assert!(rs.is_dominant(r), "{t} {e}");
            assert_eq!(&cg.class_of(r).unwrap(), e, "{t}");
            // Nontrivial classes are represented by a minuscule coweight,
            // which is a single fundamental coweight.
            if !e.is_identity() {
                let coeffs = rs.root_pairings(r).unwrap();
                assert_eq!(coeffs.iter().filter(|c| **c != q(0)).count(), 1, "{t} {e}");
                assert!(coeffs.iter().all(|c| *c == q(0) || *c == q(1)), "{t} {e}");
            }
        }
    }
}

#[test]
fn cocycle_identity_for_winding_maps() {
    let rs = RootSystem::new("A3".parse().unwrap());
    let cg = center(&rs);
    let lat = coweight_lattice(&rs);
    let z = full_subgroup(&cg);
    let gamma = gamma_elements(&z);
    let cfg = QuadratureConfig::new(16, 1e-9).unwrap();
    let l = Level::new(1).unwrap();
    let maps: Vec<TorusMap> = gamma
        .iter()
        .step_by(3)
        .map(|g| build_torus_map(&rs, &cg, &lat, g).unwrap())
        .collect();
    for g1 in &maps {
        for g2 in &maps {
            for g3 in &maps {
                let lhs = cocycle_value(g1, g2, l, &cfg).unwrap()
                    * cocycle_value(&g1.product(g2).unwrap(), g3, l, &cfg).unwrap();
                let rhs = cocycle_value(g2, g3, l, &cfg).unwrap()
                    * cocycle_value(g1, &g2.product(g3).unwrap(), l, &cfg).unwrap();
                assert!((lhs - rhs).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn pairing_with_minimal_reps_matches_arbitrary_lifts() {
    // The canonical lifts from the Smith form are generally not dominant.
    for t in ["A5", "D4", "D5", "E6", "E7", "C4"] {
        let rs = RootSystem::new(t.parse().unwrap());
        let cg = center(&rs);
        let z = full_subgroup(&cg);
        let lifts: Vec<Vec<Q>> = z.elements().iter().map(|e| cg.lift(e)).collect();
        for l in 1..=4 {
            let l = Level::new(l).unwrap();
            assert_eq!(
                commutator_pairing_with_reps(&rs, &z, l, &lifts).unwrap(),
                commutator_pairing(&rs, &z, l).unwrap(),
                "{t}"
            );
        }
    }
}
