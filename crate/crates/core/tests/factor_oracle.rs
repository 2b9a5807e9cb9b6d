//! Factorization over Z against an independent brute-force search.

mod support;

use galrep::arith::ZPoly;
use galrep::factor::factor_over_z;
use num_traits::Signed;
use proptest::prelude::*;
use support::kronecker::{arb_monic, brute_irreducible, has_monic_divisor_of_degree};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]
    #[test]
    fn factors_are_irreducible_and_multiply_back(parts in prop::collection::vec(arb_monic(3), 1..=3)) {
        let mut f = ZPoly::from_ints(&[1]);
        for p in &parts {
            f = &f * p;
        }
        prop_assume!(f.degree().unwrap() <= 6);
        let r = factor_over_z(&f).unwrap();
        prop_assert_eq!(r.expand(), f.clone());
        for (g, _) in &r.factors {
            prop_assert!(g.lc().unwrap().is_positive());
            prop_assert!(brute_irreducible(g), "reducible factor {}", g);
        }
    }
}

#[test]
fn oracle_detects_known_divisors() {
    let f = ZPoly::from_ints(&[-1, 0, 0, 0, 1]);
    assert!(has_monic_divisor_of_degree(&f, 2));
    assert!(brute_irreducible(&ZPoly::from_ints(&[1, 0, -10, 0, 1])));
}
