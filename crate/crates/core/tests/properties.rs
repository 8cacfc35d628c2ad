use std::sync::Arc;

use carlitz::carlitz::{chi_t, e_c};
use carlitz::{make_field, FieldSpec, GfElem, RamLaurent, TateElem};
use proptest::prelude::*;

fn field(which: u8) -> Arc<FieldSpec> {
    match which % 3 {
        0 => make_field(2, 1, 2).unwrap(),
        1 => make_field(3, 1, 1).unwrap(),
        _ => make_field(3, 1, 2).unwrap(),
    }
}

fn elem(f: &FieldSpec, idx: u32) -> GfElem {
    f.from_coord(idx % f.order())
}

fn series(f: &Arc<FieldSpec>, start: i64, coords: &[u32], prec: i64) -> RamLaurent {
    let terms: Vec<(i64, GfElem)> = coords.iter().enumerate().map(|(i, &c)| (start + i as i64, elem(f, c))).collect();
    RamLaurent::from_terms(f, &terms, prec)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(which in 0u8..3, a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let f = field(which);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), GfElem::ONE);
        }
        // Frobenius x -> x^q fixes exactly F_q
        prop_assert_eq!(f.frobenius(a, 1) == a, f.in_fq(a));
    }

    #[test]
    fn series_inverse(which in 0u8..3, start in -6i64..6, lead in 1u32..1000, rest in prop::collection::vec(0u32..1000, 0..8)) {
        let f = field(which);
        let mut coords = vec![lead % (f.order() - 1) + 1];
        coords.extend(rest);
        let x = series(&f, start, &coords, 40);
        let inv = x.inv_to(30).unwrap();
        let one = x.mul(&inv).sub(&RamLaurent::one(&f, carlitz::laurent::EXACT));
        prop_assert!(one.is_zero());
        prop_assert!(one.prec() >= 30 + start.min(0));
    }

    #[test]
    fn series_product_valuation(which in 0u8..3, s1 in -4i64..4, s2 in -4i64..4, a in 1u32..1000, b in 1u32..1000) {
        let f = field(which);
        let x = series(&f, s1, &[a % (f.order() - 1) + 1, 3, 5], 30);
        let y = series(&f, s2, &[b % (f.order() - 1) + 1, 7], 30);
        prop_assert_eq!(x.mul(&y).lead(), Some(s1 + s2));
    }

    #[test]
    fn gauss_norm_is_multiplicative(which in 0u8..3, a in prop::collection::vec(0u32..1000, 1..4), b in prop::collection::vec(0u32..1000, 1..4)) {
        let f = field(which);
        let mk = |cs: &[u32], shift: i64| {
            let terms = cs.iter().enumerate().map(|(k, &c)| {
                (vec![k as u32], series(&f, shift + k as i64, &[c % (f.order() - 1) + 1], 40))
            });
            TateElem::from_terms(&f, 1, 10, terms, 40, carlitz::laurent::EXACT).unwrap()
        };
        let x = mk(&a, -1);
        let y = mk(&b, 2);
        prop_assert_eq!(x.mul(&y).unwrap().gauss_val(), x.gauss_val() + y.gauss_val());
    }

    #[test]
    fn exp_and_chi_are_fq_linear(which in 0u8..3, a in prop::collection::vec(0u32..1000, 1..4), b in prop::collection::vec(0u32..1000, 1..4), c in 0u32..1000) {
        let f = field(which);
        let x = series(&f, 1, &a, 30);
        let y = series(&f, 1, &b, 30);
        let c = f.from_fq(c % f.q());
        let lhs = e_c(&x.add(&y.scale(c)), 20).unwrap();
        let rhs = e_c(&x, 20).unwrap().add(&e_c(&y, 20).unwrap().scale(c));
        prop_assert!(lhs.sub(&rhs).is_zero());
        let lhs = chi_t(&x.add(&y.scale(c)), 8, 20).unwrap();
        let rhs = chi_t(&x, 8, 20).unwrap().add(&chi_t(&y, 8, 20).unwrap().scalar_mul(&RamLaurent::constant(&f, c, carlitz::laurent::EXACT))).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }
}
