use proptest::prelude::*;
use schemelink_core::gbasis::HomogIdeal;
use schemelink_core::idealops::{combine, CombineMode};
use schemelink_core::monomial::graded_basis;
use schemelink_core::{AffinePoint, Field, Poly, Ring};

const P: u64 = 32003;

fn ring(field: Field) -> Ring {
    Ring::new(3, field)
}

fn poly_from(field: Field, coeffs: &[i64], d: u32) -> Poly {
    let r = ring(field);
    Poly::from_terms(r, graded_basis(3, d).into_iter().zip(coeffs.iter().map(|&c| field.int(c))))
}

fn form(d: u32) -> impl Strategy<Value = Vec<i64>> {
    let n = graded_basis(3, d).len();
    prop::collection::vec(-6i64..=6, n)
}

fn to_fp(f: &Poly) -> Poly {
    let fp = Field::prime(P).unwrap();
    Poly::from_terms(ring(fp), f.terms().iter().map(|(m, c)| (m.clone(), c.to_field(fp).unwrap())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in form(2), b in form(1), c in form(3)) {
        let q = Field::Rational;
        let (a, b, c) = (poly_from(q, &a, 2), poly_from(q, &b, 1), poly_from(q, &c, 3));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_multiplicative(a in form(2), b in form(2), x in -9i64..9, y in -9i64..9) {
        let q = Field::Rational;
        let (f, g) = (poly_from(q, &a, 2), poly_from(q, &b, 2));
        let p = AffinePoint::from_ints(q, &[1, x, y]).unwrap();
        prop_assert_eq!((&f * &g).evaluate(&p).unwrap(), &f.evaluate(&p).unwrap() * &g.evaluate(&p).unwrap());
        prop_assert_eq!((&f + &g).evaluate(&p).unwrap(), &f.evaluate(&p).unwrap() + &g.evaluate(&p).unwrap());
    }

    #[test]
    fn prime_field_reduction_commutes(a in form(2), b in form(2)) {
        let q = Field::Rational;
        let (f, g) = (poly_from(q, &a, 2), poly_from(q, &b, 2));
        prop_assert_eq!(to_fp(&(&f * &g)), &to_fp(&f) * &to_fp(&g));
        prop_assert_eq!(to_fp(&(&f - &g)), &to_fp(&f) - &to_fp(&g));
    }

    #[test]
    fn normal_form_is_linear(a in form(2), b in form(2), f in form(3), g in form(3), s in -5i64..5) {
        let q = Field::Rational;
        let i = HomogIdeal::new(ring(q), vec![poly_from(q, &a, 2), poly_from(q, &b, 2)]).unwrap();
        let (f, g) = (poly_from(q, &f, 3), poly_from(q, &g, 3));
        let lhs = i.normal_form(&(&f + &g.scale(&q.int(s)))).unwrap();
        let rhs = &i.normal_form(&f).unwrap() + &i.normal_form(&g).unwrap().scale(&q.int(s));
        prop_assert_eq!(lhs, rhs);
        let nf = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(i.contains(&(&f - &nf)).unwrap());
    }

    #[test]
    fn hilbert_functions_add_over_sum_and_intersection(a in form(2), b in form(1), c in form(2)) {
        let fp = Field::prime(P).unwrap();
        let i = HomogIdeal::new(ring(fp), vec![poly_from(fp, &a, 2), poly_from(fp, &b, 1)]).unwrap();
        let j = HomogIdeal::new(ring(fp), vec![poly_from(fp, &c, 2), ring(fp).var(1)]).unwrap();
        let cap = combine(&i, &j, CombineMode::Intersect).unwrap();
        let sum = combine(&i, &j, CombineMode::Sum).unwrap();
        for t in 0..6 {
            prop_assert_eq!(
                cap.hilbert_function(t).unwrap() + sum.hilbert_function(t).unwrap(),
                i.hilbert_function(t).unwrap() + j.hilbert_function(t).unwrap()
            );
        }
    }
}
