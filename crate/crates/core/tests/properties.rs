use std::collections::HashSet;

use proptest::prelude::*;
use worpitzky::bernoulli::{bernoulli_number, bernoulli_poly_eval, power_sum, type_d_lhs_routes};
use worpitzky::map_b::{descents_are_strict, fiber_enumerate_b, fiber_size_b, phi};
use worpitzky::map_d::{fiber_enumerate_d, fiber_size_d, psi};
use worpitzky::{AlphabetVector, Integer, MapOutcome, Rational, SignedPermutation};

fn signed_permutation(max_n: usize) -> impl Strategy<Value = SignedPermutation> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let base: Vec<i64> = (1..=n as i64).collect();
            (
                Just(base).prop_shuffle(),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(perm, signs)| {
            let window = perm
                .into_iter()
                .zip(signs)
                .map(|(x, neg)| if neg { -x } else { x })
                .collect();
            SignedPermutation::new(window).unwrap()
        })
}

fn vector(min_n: usize, max_n: usize, max_m: u32) -> impl Strategy<Value = AlphabetVector> {
    (min_n..=max_n, 0..=max_m)
        .prop_flat_map(|(n, m)| {
            let r = i64::from(m);
            (prop::collection::vec(-r..=r, n), Just(m))
        })
        .prop_map(|(entries, m)| AlphabetVector::new(entries, m).unwrap())
}

proptest! {
    #[test]
    fn type_b_and_d_descents_extend_type_a(sigma in signed_permutation(8)) {
        let a: HashSet<usize> = sigma.des_a().positions().iter().copied().collect();
        let b: HashSet<usize> = sigma.des_b().positions().iter().copied().collect();
        prop_assert!(b.is_superset(&a));
        prop_assert!(b.difference(&a).all(|&j| j == 0));
        if sigma.n() >= 2 {
            let d: HashSet<usize> = sigma.des_d().unwrap().positions().iter().copied().collect();
            prop_assert!(d.is_superset(&a));
            prop_assert!(d.difference(&a).all(|&j| j == 0));
        }
        prop_assert_eq!(sigma.neg2() + usize::from(sigma.at(1) < 0), sigma.neg());
    }

    #[test]
    fn phi_preserves_neg_and_lands_in_its_fiber(v in vector(1, 6, 6)) {
        let sigma = phi(&v);
        prop_assert_eq!(sigma.neg(), v.neg());
        prop_assert!(descents_are_strict(&v, &sigma, &sigma.des_b()));
        let fiber = fiber_enumerate_b(&sigma, v.m()).unwrap();
        prop_assert!(fiber.contains(&v));
        prop_assert_eq!(Integer::from(fiber.len()), fiber_size_b(&sigma, v.m()));
    }

    #[test]
    fn psi_outcomes_are_consistent(v in vector(2, 6, 5)) {
        match psi(&v).unwrap() {
            MapOutcome::Associated { sigma, flipped } => {
                prop_assert!(sigma.is_in_dn());
                prop_assert_eq!(sigma.neg2(), v.neg2());
                prop_assert!(descents_are_strict(&v, &sigma, &sigma.des_d().unwrap()));
                prop_assert!(!flipped || (v.contains_zero() && v.neg() % 2 == 1));
                let fiber = fiber_enumerate_d(&sigma, v.m()).unwrap();
                prop_assert!(fiber.contains(&v));
                prop_assert_eq!(Integer::from(fiber.len()), fiber_size_d(&sigma, v.m()).unwrap());
            }
            MapOutcome::Missing(_) => prop_assert!(v.zero_count() <= 1),
        }
    }

    #[test]
    fn bernoulli_difference_equation(n in 1usize..=12, num in -40i64..40, den in 1i64..15) {
        let x = Rational::new(num.into(), den.into());
        let one = Rational::from(Integer::from(1));
        let lhs = bernoulli_poly_eval(n, &(&x + &one)) - bernoulli_poly_eval(n, &x);
        prop_assert_eq!(lhs, Rational::from(Integer::from(n)) * num_traits::pow(x, n - 1));
    }

    #[test]
    fn type_d_left_side_is_integral(n in 2usize..=16, m in 0u64..=20) {
        let routes = type_d_lhs_routes(n, m).unwrap();
        prop_assert!(routes.agree());
        let bridge = bernoulli_poly_eval(n, &Rational::from(Integer::from(m + 1))) - bernoulli_number(n);
        prop_assert_eq!(bridge, Rational::from(power_sum(n, m)));
    }
}
