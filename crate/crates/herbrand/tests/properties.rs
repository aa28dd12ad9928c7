//! Randomized property tests for the exact layer: the piecewise-linear
//! algebra (inversion, composition) and the profile invariants that every
//! valid filtration must satisfy.

use proptest::prelude::*;

use herbrand::exactnum::Rational;
use herbrand::ramification::RamificationProfile;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A random valid profile: residue characteristic in {2, 3, 5}, a tame
/// quotient coprime to it, and up to three wild steps with strictly
/// increasing jumps and strictly decreasing p-power orders.
fn arb_profile() -> BoxedStrategy<RamificationProfile> {
    prop_oneof![Just(2u64), Just(3u64), Just(5u64)]
        .prop_flat_map(|p| {
            let tame_choices: Vec<u64> = (1..=9).filter(|t| gcd(*t, p) == 1).collect();
            (
                Just(p),
                proptest::sample::select(tame_choices),
                proptest::collection::vec((1u64..=4, 1u32..=2), 0..=3),
                1u64..=3,
            )
        })
        .prop_map(|(p, t, gaps, f)| {
            // Jumps are gap cumsums; exponents are suffix sums, so orders
            // strictly decrease along the chain.
            let jumps: Vec<u64> = gaps
                .iter()
                .scan(0u64, |acc, (g, _)| {
                    *acc += g;
                    Some(*acc)
                })
                .collect();
            let mut exps: Vec<u32> = vec![0; gaps.len()];
            let mut suffix = 0;
            for (i, (_, de)) in gaps.iter().enumerate().rev() {
                suffix += de;
                exps[i] = suffix;
            }
            let wild = exps.first().map_or(1, |k| p.pow(*k));
            let e = t * wild;
            let mut steps = vec![(0u64, e)];
            for (u, k) in jumps.iter().zip(&exps) {
                steps.push((*u, p.pow(*k)));
            }
            RamificationProfile::from_breaks(p, e, f, &steps, false)
                .expect("constructed to satisfy every precondition")
        })
        .boxed()
}

/// Nonnegative rationals with small numerator and denominator.
fn arb_point() -> impl Strategy<Value = Rational> {
    (0i64..=120, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn herbrand_pair_is_mutually_inverse(profile in arb_profile(), x in arb_point()) {
        let phi = profile.build_phi();
        let psi = profile.build_psi();
        prop_assert_eq!(psi.eval(&phi.eval(&x).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(phi.eval(&psi.eval(&x).unwrap()).unwrap(), x);
        prop_assert_eq!(phi.invert(), psi);
    }

    #[test]
    fn phi_concave_psi_convex_with_reciprocal_final_slopes(profile in arb_profile()) {
        let phi = profile.build_phi();
        let psi = profile.build_psi();
        prop_assert!(phi.is_concave());
        prop_assert!(psi.is_convex());
        let e = Rational::from(profile.e());
        prop_assert_eq!(phi.final_slope(), &e.recip());
        prop_assert_eq!(psi.final_slope(), &e);
    }

    #[test]
    fn upper_jumps_are_phi_of_lower_jumps(profile in arb_profile()) {
        let phi = profile.build_phi();
        let expected: Vec<Rational> = profile
            .lower_jumps()
            .into_iter()
            .map(|u| phi.eval(&Rational::from(u)).unwrap())
            .collect();
        prop_assert_eq!(profile.upper_jumps(), expected);
    }

    #[test]
    fn psi_bounded_by_ex_with_equality_iff_tame(profile in arb_profile(), x in arb_point()) {
        let psi = profile.build_psi();
        let ex = Rational::from(profile.e()) * &x;
        let val = psi.eval(&x).unwrap();
        if profile.is_tame() {
            prop_assert_eq!(val, ex);
        } else {
            prop_assert!(val <= ex);
            if x > Rational::zero() {
                prop_assert!(val < ex);
            }
        }
    }

    #[test]
    fn canonical_form_is_a_fixed_point(profile in arb_profile()) {
        let steps: Vec<(u64, u64)> = profile
            .filtration()
            .iter()
            .map(|s| (s.jump, s.order))
            .collect();
        let rebuilt = RamificationProfile::from_breaks(
            profile.p(),
            profile.e(),
            profile.f(),
            &steps,
            profile.abelian(),
        )
        .unwrap();
        prop_assert_eq!(rebuilt, profile);
    }

    #[test]
    fn profiles_agree_iff_their_data_does(a in arb_profile(), b in arb_profile()) {
        let same_function = a.build_phi() == b.build_phi();
        let same_metadata = a.p() == b.p() && a.f() == b.f() && a.abelian() == b.abelian();
        prop_assert_eq!(a == b, same_function && same_metadata);
    }

    #[test]
    fn plf_double_inversion_is_identity(profile in arb_profile()) {
        let psi = profile.build_psi();
        prop_assert_eq!(psi.invert().invert(), psi);
    }

    #[test]
    fn plf_composition_is_associative_and_pointwise(
        a in arb_profile(),
        b in arb_profile(),
        c in arb_profile(),
        x in arb_point(),
    ) {
        let (f, g, h) = (a.build_psi(), b.build_psi(), c.build_psi());
        let fg_h = f.compose(&g).compose(&h);
        let f_gh = f.compose(&g.compose(&h));
        prop_assert_eq!(&fg_h, &f_gh);
        prop_assert_eq!(
            fg_h.eval(&x).unwrap(),
            f.eval(&g.eval(&h.eval(&x).unwrap()).unwrap()).unwrap()
        );
    }

    #[test]
    fn tower_inverse_antihomomorphism(a in arb_profile(), b in arb_profile()) {
        // (psi_a o psi_b)^-1 = phi_b o phi_a, the transitivity identity.
        let composed = a.build_psi().compose(&b.build_psi());
        let expected = b.build_phi().compose(&a.build_phi());
        prop_assert_eq!(composed.invert(), expected);
    }

    #[test]
    fn rational_display_round_trips(n in -10_000i64..=10_000, d in 1i64..=500) {
        use std::str::FromStr;
        let r = Rational::new(n, d);
        prop_assert_eq!(Rational::from_str(&r.to_string()).unwrap(), r);
    }
}
