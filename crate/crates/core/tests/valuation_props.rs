mod common;

use gradstar::algebra::{Ideal, Monomial, Polynomial};
use gradstar::fractional::{FractionalIdeal, KElement};
use gradstar::grvaluation::{b_closure_monomial, monomial_exponents, newton_contains, newton_member};
use proptest::prelude::*;

use common::*;

fn sum(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn monomial_ideal(seed: u64, k: usize) -> Ideal {
    let mut r = rng(seed);
    let gens = (0..k).map(|_| Polynomial::monomial(monomial(&mut r, 2, 4))).collect();
    Ideal::new(2, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_value_is_a_valuation(seed in any::<u64>(), weighted in any::<bool>()) {
        let ring = if weighted { r2() } else { r1() };
        let mut r = rng(seed);
        let v = valuation(&mut r, &ring);
        let f = poly(&mut r, 2, 3, 3);
        let g = poly(&mut r, 2, 3, 3);
        let (vf, vg) = (v.value_poly(&f).unwrap(), v.value_poly(&g).unwrap());
        prop_assert_eq!(v.value_poly(&(&f * &g)).unwrap(), sum(&vf, &vg));
        if let Some(vs) = v.value_poly(&(&f + &g)) {
            prop_assert!(vs >= vf.clone().min(vg.clone()));
        }
    }

    #[test]
    fn homogeneous_elements_or_their_inverses_lie_in_v(seed in any::<u64>(), weighted in any::<bool>()) {
        let ring = if weighted { r2() } else { r1() };
        let mut r = rng(seed);
        let v = valuation(&mut r, &ring);
        let z = homogeneous_element(&mut r, &ring, 3);
        prop_assert!(v.in_ring(&z).unwrap() || v.in_ring(&z.inv().unwrap()).unwrap());
    }

    #[test]
    fn extended_ideal_ignores_generator_order(seed in any::<u64>()) {
        let ring = r1();
        let mut r = rng(seed);
        let v = valuation(&mut r, &ring);
        let zs: Vec<KElement> = (0..3).map(|_| homogeneous_element(&mut r, &ring, 2)).collect();
        let mut rev = zs.clone();
        rev.reverse();
        let a = v.extend_fv(&FractionalIdeal::generated_by(2, &zs)).unwrap();
        let b = v.extend_fv(&FractionalIdeal::generated_by(2, &rev)).unwrap();
        prop_assert_eq!(&a.value, &b.value);
        for z in &zs {
            prop_assert!(v.fv_member(&a, z));
        }
    }

    #[test]
    fn newton_closure_is_a_closure(seed in any::<u64>(), k in 1usize..=3) {
        let i = monomial_ideal(seed, k);
        let b = b_closure_monomial(&i).unwrap();
        prop_assert!(b.contains(&i));
        prop_assert!(b_closure_monomial(&b).unwrap().equals(&b));
        let j = monomial_ideal(seed ^ 1, 1);
        prop_assert!(b_closure_monomial(&i.sum(&j)).unwrap().contains(&b));
    }

    // m^k ∈ I^k certifies m ∈ Ī; the hull test must agree.
    #[test]
    fn powers_certify_newton_membership(seed in any::<u64>(), k in 1usize..=3) {
        let i = monomial_ideal(seed, k);
        let pts = monomial_exponents(&i).unwrap();
        for m in gradstar::grading::monomials_up_to(2, 4) {
            let p = Polynomial::monomial(m.clone());
            let certified = (1..=3).any(|e| i.pow(e).member(&p.pow(e)));
            if certified {
                prop_assert!(newton_member(&pts, &p));
                prop_assert!(newton_contains(&pts, m.exponents()));
            }
            if i.member(&p) {
                prop_assert!(newton_member(&pts, &p));
            }
        }
    }
}

#[test]
fn newton_hull_of_two_powers() {
    let ring = r1();
    let i = ring.ideal_from(&["x^2", "y^2"]).unwrap();
    let pts = monomial_exponents(&i).unwrap();
    assert!(newton_contains(&pts, &[1, 1]));
    assert!(!newton_contains(&pts, &[1, 0]));
    let m = Polynomial::monomial(Monomial::new(vec![1, 1]));
    assert!(b_closure_monomial(&i).unwrap().member(&m));
}
