//! Randomized invariants, 500 cases or more each.

use ade_core::bundle::EGroup;
use ade_core::divisor::{euler_char, CollisionConfig};
use ade_core::lattice::{change_basis, SurfaceModel};
use ade_core::local::{double_cover_ring, GradedModule, MPoly};
use ade_core::poly::UniPoly;
use ade_core::roots::{enumerate_roots, reflect, OrthClass};
use ade_core::spectral::{discriminant, resultant_subresultant, resultant_sylvester, CoverPoly};
use ade_core::suite::random_ring;
use ade_core::transform::{transform, SpectralFiberDatum, TwistMode};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn model(hirz: bool, n: usize) -> SurfaceModel {
    if hirz {
        SurfaceModel::hirzebruch(n).unwrap()
    } else {
        SurfaceModel::p2(n).unwrap()
    }
}

fn classes() -> impl Strategy<Value = (SurfaceModel, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (any::<bool>(), 0usize..=9).prop_flat_map(|(h, n)| {
        let s = model(h, n);
        let v = || prop::collection::vec(-8i64..=8, s.rank());
        (Just(s.clone()), v(), v(), v())
    })
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn datum() -> impl Strategy<Value = (u64, Vec<i64>, i64)> {
    (2u64..=200).prop_flat_map(|order| {
        let vals = prop::collection::vec(0..order as i64, 1..=10);
        (Just(order), vals, -3i64..=3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pairing_is_symmetric_and_bilinear((s, x, y, z) in classes(), a in -5i64..=5) {
        let (x, y, z) = (s.class(&x).unwrap(), s.class(&y).unwrap(), s.class(&z).unwrap());
        prop_assert_eq!(x.pair(&y).unwrap(), y.pair(&x).unwrap());
        let lhs = (&(a * &x) + &z).pair(&y).unwrap();
        prop_assert_eq!(lhs, big(a) * x.pair(&y).unwrap() + z.pair(&y).unwrap());
        prop_assert_eq!(s.pair(&x, &y).unwrap(), s.pair_via_gram(&x, &y).unwrap());
    }

    #[test]
    fn basis_change_is_an_isometry(n in 0usize..=8, x in prop::collection::vec(-8i64..=8, 10), y in prop::collection::vec(-8i64..=8, 10)) {
        let (h, p) = (model(true, n), model(false, n + 1));
        let (x, y) = (h.class(&x[..h.rank()]).unwrap(), h.class(&y[..h.rank()]).unwrap());
        let (px, py) = (change_basis(&h, &p, &x).unwrap(), change_basis(&h, &p, &y).unwrap());
        prop_assert_eq!(x.pair(&y).unwrap(), px.pair(&py).unwrap());
        prop_assert_eq!(change_basis(&p, &h, &px).unwrap(), x);
        prop_assert_eq!(&change_basis(&h, &p, h.canonical()).unwrap(), p.canonical());
    }

    #[test]
    fn reflections_are_isometric_involutions(n in 2usize..=7, idx in any::<prop::sample::Index>(), x in prop::collection::vec(-6i64..=6, 9), y in prop::collection::vec(-6i64..=6, 9)) {
        let s = model(true, n);
        let roots = enumerate_roots(&s, &[OrthClass::K]).unwrap();
        let a = idx.get(&roots.roots);
        let (x, y) = (s.class(&x[..s.rank()]).unwrap(), s.class(&y[..s.rank()]).unwrap());
        let (rx, ry) = (reflect(a, &x).unwrap(), reflect(a, &y).unwrap());
        prop_assert_eq!(rx.pair(&ry).unwrap(), x.pair(&y).unwrap());
        prop_assert_eq!(reflect(a, &rx).unwrap(), x);
        prop_assert_eq!(reflect(a, s.canonical()).unwrap(), s.canonical().clone());
    }

    #[test]
    fn serre_symmetry((s, d, _, _) in classes()) {
        let d = s.class(&d).unwrap();
        let k_minus_d = s.canonical() - &d;
        prop_assert_eq!(euler_char(&s, &d).unwrap(), euler_char(&s, &k_minus_d).unwrap());
    }

    #[test]
    fn normal_forms_are_confluent_and_multiplicative(
        a in prop::collection::vec((prop::collection::vec(0u32..=3, 5), -4i64..=4), 1..=5),
        b in prop::collection::vec((prop::collection::vec(0u32..=2, 5), -4i64..=4), 1..=3),
        seed in any::<u64>(),
    ) {
        let r = double_cover_ring(10);
        let poly = |ts: &[(Vec<u32>, i64)]| {
            let mut p = MPoly::zero(r.nvars());
            for (m, c) in ts {
                p.add_term(m.clone(), big(*c).into());
            }
            p
        };
        let (a, b) = (poly(&a), poly(&b));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nf = r.normal_form(&a);
        prop_assert_eq!(&nf, &r.normal_form_by(&a, &mut |k| rng.gen_range(0..k)));
        prop_assert_eq!(&r.normal_form(&nf), &nf);
        prop_assert_eq!(r.mul(&a, &b), r.normal_form(&(&a * &b)));
    }

    #[test]
    fn graded_dimensions_stabilize(seed in any::<u64>(), lo in 1u32..=5) {
        let small = random_ring(&mut ChaCha8Rng::seed_from_u64(seed), lo);
        let big = random_ring(&mut ChaCha8Rng::seed_from_u64(seed), lo + 4);
        for d in 0..=lo {
            let dim = small.graded_dim(d).unwrap();
            prop_assert_eq!(dim, big.graded_dim(d).unwrap());
            prop_assert_eq!(dim, GradedModule::whole_ring(&big).dim(&big, d).unwrap());
        }
        prop_assert!(small.graded_dim(lo + 1).is_err());
    }

    #[test]
    fn transform_has_rank_n((order, vals, twist) in datum()) {
        let d = SpectralFiberDatum::from_values(EGroup::new(order).unwrap(), &vals, twist).unwrap();
        let s = model(true, d.n());
        let c = CollisionConfig::new(&s, &d.required_collisions()).unwrap();
        let e = s.boundary();
        for mode in [TwistMode::RawD, TwistMode::MinusL0, TwistMode::FullP] {
            let t = transform(&s, &c, &d, mode).unwrap();
            prop_assert_eq!(t.bundle.rank(), vals.len());
            prop_assert_eq!(t.boundary.rank() as usize, vals.len());
            let fiber = t.c1.pair(&e).unwrap();
            prop_assert_eq!(&fiber, &t.c1_fiber);
            let want = if mode == TwistMode::RawD { vals.len() as i64 } else { 0 };
            prop_assert_eq!(fiber, big(want));
        }
    }

    #[test]
    fn collision_blocks_add_up((order, vals, _) in datum()) {
        let d = SpectralFiberDatum::from_values(EGroup::new(order).unwrap(), &vals, 0).unwrap();
        let s = model(true, d.n());
        let c = CollisionConfig::new(&s, &d.required_collisions()).unwrap();
        let t = transform(&s, &c, &d, TwistMode::MinusL0).unwrap();
        let mut total = ade_core::lattice::LatticeClass::zero(s.kind());
        for b in &t.collision_blocks {
            prop_assert_eq!(b.classes.len() as u32, b.multiplicity);
            total = &total + &b.c1();
        }
        for sm in t.bundle.summands().iter().filter(|sm| sm.ext_group == 0) {
            total = &total + &sm.class;
        }
        prop_assert_eq!(total, t.c1);
    }

    #[test]
    fn discriminant_matches_root_differences(roots in prop::collection::vec((-4i64..=4, -3i64..=3), 1..=4)) {
        // cover = prod (u - a_i - b_i t); disc = Res(f, f') = (-1)^(n(n-1)/2) prod_{i<j} (r_i - r_j)^2
        let n = roots.len();
        let mut full: Vec<UniPoly> = vec![UniPoly::one()];
        for &(a, b) in &roots {
            let r = UniPoly::from_i64(&[a, b]);
            let mut next = vec![UniPoly::zero(); full.len() + 1];
            for (k, c) in full.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * &r);
            }
            full = next;
        }
        let cover = CoverPoly::from_full(full.clone()).unwrap();
        let mut want = UniPoly::from_i64(&[if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 }]);
        for i in 0..n {
            for j in i + 1..n {
                let diff = UniPoly::from_i64(&[roots[i].0 - roots[j].0, roots[i].1 - roots[j].1]);
                want = &want * &(&diff * &diff);
            }
        }
        match discriminant(&cover) {
            Ok(disc) => prop_assert_eq!(disc, want),
            // repeated roots make the cover non-reduced
            Err(e) => {
                prop_assert!(want.is_zero());
                prop_assert_eq!(e.kind(), "non_reduced_cover");
            }
        }
        let deriv = cover.derivative_u();
        prop_assert_eq!(resultant_sylvester(&full, &deriv), resultant_subresultant(&full, &deriv));
    }
}
