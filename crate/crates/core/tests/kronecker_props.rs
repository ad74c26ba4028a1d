mod common;

use gradstar::algebra::Polynomial;
use gradstar::corpus::TestCorpus;
use gradstar::grvaluation::GrValuation;
use gradstar::kronecker::{gauss_extension, FunctionRingElement, KrMode, KroneckerHandle};
use gradstar::semistar::{Evaluator, SemistarExpr};
use gradstar::verdict::Caps;
use proptest::prelude::*;

use common::*;

fn wedge_stack(ring: &gradstar::grading::GradedRing) -> Vec<GrValuation> {
    [[1, 1], [1, 2], [2, 1]]
        .iter()
        .map(|w| GrValuation::new(ring, vec![w.to_vec()]).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gauss_extension_is_multiplicative(seed in any::<u64>()) {
        let ring = r2();
        let mut r = rng(seed);
        let w = gauss_extension(&valuation(&mut r, &ring));
        let f = aux(2, 3, || poly(&mut r, 2, 2, 2));
        let g = aux(2, 2, || poly(&mut r, 2, 2, 2));
        let (a, b) = (w.value(&f).unwrap(), w.value(&g).unwrap());
        let expect: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(w.value(&f.mul(&g)).unwrap(), expect);
    }
}

// For a meet of valuations the function ring is the intersection of the
// Gauss extensions, so membership is a conjunction of value comparisons.
#[test]
fn wedge_function_ring_is_the_intersection_of_gauss_rings() {
    let ring = r1();
    let ys = wedge_stack(&ring);
    let ev = Evaluator::new(ring.clone(), Caps::default());
    let verify = TestCorpus::generate(&ring, 3, 12, 3).homogeneous_ideals();
    let kr = KroneckerHandle::new(ev, SemistarExpr::MeetValuations(ys.clone()), KrMode::Homogeneous, &verify).unwrap();
    assert!(kr.eab_verified());
    let gauss: Vec<_> = ys.iter().map(gauss_extension).collect();
    let mut r = rng(31);
    let mut members = 0;
    for _ in 0..150 {
        let num = aux(2, 2, || poly(&mut r, 2, 3, 2));
        let den = aux(2, 2, || poly(&mut r, 2, 3, 2));
        let e = FunctionRingElement::new(num, den).unwrap();
        let expect = gauss.iter().all(|w| w.contains(&e));
        let got = kr.kr_membership(&e, &[]).unwrap();
        assert_eq!(got.is_true(), expect, "{}", e.format(&ring));
        members += expect as usize;
    }
    assert!(members > 0);
}

#[test]
fn products_of_members_stay_members() {
    let ring = r1();
    let ys = wedge_stack(&ring);
    let ev = Evaluator::new(ring.clone(), Caps::default());
    let verify = TestCorpus::generate(&ring, 5, 12, 3).homogeneous_ideals();
    let kr = KroneckerHandle::new(ev, SemistarExpr::MeetValuations(ys), KrMode::Homogeneous, &verify).unwrap();
    let mut r = rng(77);
    let mut found = Vec::new();
    while found.len() < 8 {
        let num = aux(2, 2, || Polynomial::monomial(monomial(&mut r, 2, 3)));
        let den = aux(2, 2, || Polynomial::monomial(monomial(&mut r, 2, 2)));
        let e = FunctionRingElement::new(num, den).unwrap();
        if kr.kr_membership(&e, &[]).unwrap().is_true() {
            found.push(e);
        }
    }
    for a in &found {
        for b in &found {
            assert!(kr.kr_membership(&a.mul(b), &[]).unwrap().is_true());
        }
    }
}

#[test]
fn classical_membership_implies_homogeneous_membership() {
    let ring = r2();
    let ev = Evaluator::new(ring.clone(), Caps::default());
    let verify = TestCorpus::monomial(&ring, 2, 6, 3).ideals;
    let cl = KroneckerHandle::new(ev.clone(), SemistarExpr::NewtonB, KrMode::Classical, &verify).unwrap();
    let hm = KroneckerHandle::new(ev, SemistarExpr::NewtonB, KrMode::Homogeneous, &verify).unwrap();
    let mut r = rng(12);
    for _ in 0..100 {
        let num = aux(2, 2, || Polynomial::monomial(monomial(&mut r, 2, 3)));
        let den = aux(2, 2, || Polynomial::monomial(monomial(&mut r, 2, 3)));
        let e = FunctionRingElement::new(num, den).unwrap();
        if cl.kr_membership(&e, &[]).unwrap().is_true() {
            assert!(hm.kr_membership(&e, &[]).unwrap().is_true(), "{}", e.format(&ring));
        }
    }
}

