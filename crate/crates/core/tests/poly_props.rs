use envelope_core::expr::parse_poly;
use envelope_core::{Monomial, Poly, PrimeField};
use proptest::prelude::*;

const N: usize = 4;

fn poly_strategy(p: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..4, N), 0..p), 0..6).prop_map(move |terms| {
        let f = PrimeField::new(p).unwrap();
        Poly::from_terms(
            f,
            N,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(&e).unwrap(), c)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn multiplication_commutes(a in poly_strategy(7), b in poly_strategy(7)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn multiplication_associates(a in poly_strategy(5), b in poly_strategy(5), c in poly_strategy(5)) {
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn multiplication_distributes(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3)) {
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn derivative_obeys_leibniz(a in poly_strategy(7), b in poly_strategy(7), i in 0..N) {
        let lhs = a.mul(&b).unwrap().partial_derivative(i).unwrap();
        let rhs = a
            .partial_derivative(i)
            .unwrap()
            .mul(&b)
            .unwrap()
            .add(&a.mul(&b.partial_derivative(i).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division_recovers_factor(a in poly_strategy(5), b in poly_strategy(5)) {
        prop_assume!(!b.is_zero());
        let q = a.mul(&b).unwrap().div_exact(&b).unwrap();
        prop_assert_eq!(q, Some(a));
    }

    #[test]
    fn display_round_trips(a in poly_strategy(11)) {
        let back = parse_poly(&a.to_string(), a.field(), N, None).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn frobenius_in_characteristic_p() {
    let f = PrimeField::new(5).unwrap();
    let s = parse_poly("x1 + 2*x2 + x3*x4", f, N, None).unwrap();
    let t = parse_poly("x1^5 + 2*x2^5 + x3^5*x4^5", f, N, None).unwrap();
    assert_eq!(s.pow(5).unwrap(), t);
}
