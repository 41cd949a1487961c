//! Property tests over randomized small inputs: polynomial ring axioms,
//! monomial-order laws, normal-form invariants, and the deviations
//! round-trip.

use proptest::prelude::*;

use qci_core::field::{Field, PrimeField};
use qci_core::groebner::buchberger;
use qci_core::monomial::{Monomial, MonomialOrder};
use qci_core::poly::{PolyRing, Polynomial};
use qci_core::series::{deviations, series_from_deviations};

fn ring3() -> PolyRing<PrimeField> {
    PolyRing::new(PrimeField::new(101).unwrap(), 3, MonomialOrder::Grevlex)
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u32..4, 3).prop_map(Monomial::new)
}

fn arb_poly() -> impl Strategy<Value = Polynomial<PrimeField>> {
    proptest::collection::vec((arb_monomial(), 0u64..101), 0..6)
        .prop_map(|terms| ring3().from_terms(terms))
}

proptest! {
    #[test]
    fn addition_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
    }

    #[test]
    fn multiplication_commutes_and_associates(
        a in arb_poly(), b in arb_poly(), c in arb_poly()
    ) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.try_mul(&a).unwrap());
        let left = ab.try_mul(&c).unwrap();
        let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degrees_add_for_homogeneous_products(ma in arb_monomial(), mb in arb_monomial()) {
        let r = ring3();
        let f = r.monomial_term(ma, 1);
        let g = r.monomial_term(mb, 1);
        let prod = f.try_mul(&g).unwrap();
        prop_assert_eq!(
            prod.homogeneous_degree(),
            Some(f.homogeneous_degree().unwrap() + g.homogeneous_degree().unwrap())
        );
    }

    #[test]
    fn initial_form_is_multiplicative(a in arb_poly(), b in arb_poly()) {
        let prod = a.try_mul(&b).unwrap();
        if !a.is_zero() && !b.is_zero() && !prod.is_zero() {
            let expected = a.initial_form().unwrap().try_mul(&b.initial_form().unwrap()).unwrap();
            if !expected.is_zero() {
                prop_assert_eq!(prod.initial_form().unwrap(), expected);
            }
        }
    }

    #[test]
    fn grevlex_is_a_total_order_refining_divisibility(
        a in arb_monomial(), b in arb_monomial()
    ) {
        use core::cmp::Ordering;
        let o = MonomialOrder::Grevlex;
        match o.cmp(&a, &b) {
            Ordering::Equal => prop_assert_eq!(&a, &b),
            Ordering::Less => prop_assert_eq!(o.cmp(&b, &a), Ordering::Greater),
            Ordering::Greater => prop_assert_eq!(o.cmp(&b, &a), Ordering::Less),
        }
        if a.divides(&b) && a != b {
            prop_assert_eq!(o.cmp(&a, &b), Ordering::Less);
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_reconstructs(f in arb_poly()) {
        let r = ring3();
        let gens = vec![r.var(0).pow(2), r.var(1).pow(2), r.var(2).pow(2)];
        let gb = buchberger(&gens, &r);
        let nf = gb.normal_form(&f);
        prop_assert_eq!(&gb.normal_form(&nf), &nf);
        prop_assert!(gb.contains(&f.try_sub(&nf).unwrap()));
        // remainders are supported on standard monomials only
        for (m, _) in nf.terms() {
            prop_assert!(!gb.staircase().iter().any(|lm| lm.divides(m)));
        }
    }

    #[test]
    fn deviations_round_trip(eps in proptest::collection::vec(0i64..6, 1..5)) {
        let order = eps.len() + 1;
        let series = series_from_deviations(&eps, order);
        let back = deviations(&series, eps.len()).unwrap();
        prop_assert_eq!(back, eps);
    }

    #[test]
    fn scalar_ops_respect_field_axioms(a in arb_poly(), c in 0u64..101, d in 0u64..101) {
        let field = PrimeField::new(101).unwrap();
        let lhs = a.scale(&c).scale(&d);
        let rhs = a.scale(&field.mul(&c, &d));
        prop_assert_eq!(lhs, rhs);
    }
}
