mod common;

use common::{p, poly};
use proptest::prelude::*;
use qgroth::{Family, Polynomial};

proptest! {
    #[test]
    fn ring_axioms(a in poly(3, 2, 2, 5), b in poly(3, 2, 2, 5), c in poly(3, 2, 2, 5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
    }

    #[test]
    fn q_specialization_is_idempotent(f in poly(3, 3, 2, 8)) {
        let once = f.q_to_zero();
        prop_assert_eq!(once.q_to_zero(), once.clone());
        prop_assert!(!once.involves(Family::Q));
    }

    #[test]
    fn graded_components_reassemble(f in poly(3, 3, 3, 10)) {
        let parts = f.graded_components();
        prop_assert!(parts.windows(2).all(|w| w[0].0 < w[1].0));
        for (d, part) in &parts {
            prop_assert!(part.terms().all(|(m, _)| m.graded_degree() == *d));
        }
        let sum: Polynomial = parts.into_iter().map(|(_, part)| part).sum();
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn exact_division_recovers_factor(f in poly(3, 2, 2, 5), d in poly(3, 2, 2, 4)) {
        prop_assume!(!d.is_zero());
        prop_assert_eq!((&f * &d).exact_div(&d).unwrap(), f);
    }

    #[test]
    fn text_form_round_trips(f in poly(3, 3, 3, 6)) {
        let back: Polynomial = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn shifted_expansion_reconstructs(f in poly(3, 2, 3, 6)) {
        let parts = f.shifted_expand(3).unwrap();
        prop_assert_eq!(Polynomial::from_shifted(&parts), f);
    }
}

#[test]
fn exact_division_rejects_non_multiples() {
    assert!(p("x1 + 1").exact_div(&p("x1 - 1")).is_err());
    assert!(p("x1").exact_div(&Polynomial::zero()).is_err());
    assert!(p("3*x1").exact_div(&p("2")).is_err());
}
