use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use crepant_kit::arith::{binomial, signed_binomial};
use crepant_kit::cohomology::{
    bott_cohomology, cech_cohomology_oracle, euler_characteristic, pushforward_vanishing, LineBundle,
    ProjSpace,
};
use crepant_kit::crepancy::{canonical_of_total_space, discrepancy, weak_crepancy_hypothesis};
use crepant_kit::group_rep::{covariant_hilbert, is_gorenstein, molien_series, Character, CyclicAction};
use crepant_kit::sod::{euler_matrix, exceptional_collection_check, kuznetsov_sod_check, pushforward_ext, ExceptionalCollection};
use crepant_kit::tilting::{hom_dimension_closed_form, hom_hilbert, skew_hom_hilbert};
use crepant_kit::ScalarQuotient;

fn action_strategy() -> impl Strategy<Value = CyclicAction> {
    (1u32..=6, prop::collection::vec(-8i64..8, 1..=4))
        .prop_map(|(d, w)| CyclicAction::new(d, &w).unwrap())
}

fn divisor_pair() -> impl Strategy<Value = ScalarQuotient> {
    (1u32..=12)
        .prop_flat_map(|n| {
            let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
            (Just(n), prop::sample::select(divisors))
        })
        .prop_map(|(n, d)| ScalarQuotient::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn molien_agrees_with_counting(action in action_strategy(), chi in 0i64..6, max_degree in 0usize..10) {
        let chi = Character::new(chi, action.order()).unwrap();
        prop_assert_eq!(
            molien_series(&action, chi, max_degree).unwrap(),
            covariant_hilbert(&action, chi, max_degree).unwrap()
        );
    }

    #[test]
    fn characters_partition_all_monomials(action in action_strategy(), max_degree in 0usize..12) {
        let n = action.dim() as u64;
        let mut totals = vec![BigUint::from(0u32); max_degree + 1];
        for chi in action.characters() {
            let s = covariant_hilbert(&action, chi, max_degree).unwrap();
            for (t, c) in totals.iter_mut().zip(s.coefficients()) {
                *t += c;
            }
        }
        for (k, t) in totals.iter().enumerate() {
            prop_assert_eq!(t, &binomial(k as u64 + n - 1, n - 1));
        }
    }

    #[test]
    fn scalar_covariants_live_in_matching_degrees(d in 1u32..=6, n in 1u32..=4, j in 0i64..6, max_degree in 0usize..14) {
        let action = CyclicAction::scalar(d, n).unwrap();
        let chi = Character::new(j, d).unwrap();
        let s = covariant_hilbert(&action, chi, max_degree).unwrap();
        for (k, c) in s.coefficients().iter().enumerate() {
            if (k as u32) % d != chi.index() {
                prop_assert_eq!(c, &BigUint::from(0u32));
            }
        }
    }

    #[test]
    fn gorenstein_is_permutation_invariant(action in action_strategy(), seed in any::<u64>()) {
        let mut w: Vec<i64> = action.weights().iter().map(|&x| x as i64).collect();
        // Fisher-Yates driven by the seed.
        let mut s = seed;
        for i in (1..w.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            w.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = CyclicAction::new(action.order(), &w).unwrap();
        let (a, b) = (is_gorenstein(&action), is_gorenstein(&permuted));
        prop_assert_eq!(a.gorenstein, b.gorenstein);
        prop_assert_eq!(a.weight_sum_mod_d, b.weight_sum_mod_d);
        prop_assert_eq!(a.pseudo_reflection.is_some(), b.pseudo_reflection.is_some());
    }

    #[test]
    fn serre_duality(n in 2u32..=9, k in -30i64..30) {
        let p = ProjSpace::new(n).unwrap();
        let h = bott_cohomology(p, LineBundle::new(k));
        let dual = bott_cohomology(p, LineBundle::new(-k - n as i64));
        for i in 0..n as usize {
            prop_assert_eq!(h.get(i), dual.get(n as usize - 1 - i));
        }
    }

    #[test]
    fn euler_characteristic_is_polynomial(n in 1u32..=9, k in -30i64..30) {
        let p = ProjSpace::new(n).unwrap();
        let h = bott_cohomology(p, LineBundle::new(k));
        prop_assert_eq!(h.euler_characteristic(), signed_binomial(k, n - 1));
        prop_assert_eq!(h.euler_characteristic(), euler_characteristic(p, LineBundle::new(k)));
    }

    #[test]
    fn cech_matches_bott(n in 2u32..=4, k in -9i64..=9) {
        let p = ProjSpace::new(n).unwrap();
        prop_assert_eq!(cech_cohomology_oracle(n, k).unwrap(), bott_cohomology(p, LineBundle::new(k)));
    }

    #[test]
    fn small_twists_have_no_higher_pushforward(q in divisor_pair(), j in -11i64..=11) {
        prop_assume!(j.unsigned_abs() < q.d() as u64);
        prop_assert!(pushforward_vanishing(q.n(), q.d(), j).unwrap().vanishes);
    }

    #[test]
    fn skew_group_algebra_matches_endomorphisms(q in divisor_pair(), a in 0u32..12, b in 0u32..12, max_m in 0usize..8) {
        let (a, b) = (a % q.d(), b % q.d());
        let geo = hom_hilbert(q, a, b, max_m).unwrap();
        prop_assert_eq!(&geo, &skew_hom_hilbert(q, a, b, max_m).unwrap());
        for (m, c) in geo.coefficients().iter().enumerate() {
            prop_assert_eq!(c, &hom_dimension_closed_form(q, a, b, m));
        }
    }

    #[test]
    fn passing_collections_have_unimodular_euler_matrix(n in 2u32..=6, start in -10i64..10, gaps in prop::collection::vec(0i64..3, 0..6)) {
        let mut degrees = vec![start];
        for g in gaps {
            degrees.push(degrees.last().unwrap() + g);
        }
        let c = ExceptionalCollection::new(n, degrees).unwrap();
        if exceptional_collection_check(&c).unwrap().exceptional {
            let m = euler_matrix(&c);
            prop_assert!(m.0.is_unit_upper_triangular());
            prop_assert_eq!(m.determinant(), BigInt::from(1));
        }
    }

    #[test]
    fn pushforward_ext_euler_consistency(n in 1u32..=6, d in 1u32..=5, a in -8i64..8, b in -8i64..8) {
        let ext = pushforward_ext(n, d, a, b).unwrap();
        let p = ProjSpace::new(n).unwrap();
        let expected = euler_characteristic(p, LineBundle::new(b - a))
            - euler_characteristic(p, LineBundle::new(b - a - d as i64));
        prop_assert_eq!(ext.euler_characteristic(), expected);
    }

    #[test]
    fn sod_k0_and_crepancy_agree(q in divisor_pair()) {
        prop_assume!(q.n() >= 2);
        let r = kuznetsov_sod_check(q).unwrap();
        prop_assert!(r.passed());
        prop_assert!(r.k0.holds);
        let disc = discrepancy(q).unwrap();
        prop_assert_eq!(disc.value.to_integer(), r.blocks.len() as i64);
        prop_assert_eq!(canonical_of_total_space(q).unwrap() == 0, q.d() == q.n());
        prop_assert!(weak_crepancy_hypothesis(&q.action()).holds);
    }
}
