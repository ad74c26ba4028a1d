mod common;

use gradstar::fractional::{FractionalIdeal, KElement};
use gradstar::grading::GradedRing;
use gradstar::semistar::{Evaluator, Overring, SemistarExpr};
use gradstar::topology::*;
use gradstar::verdict::Caps;
use proptest::prelude::*;

use common::*;

fn opens(ring: &GradedRing) -> Vec<SubbasicOpen> {
    ["x/y", "y/x", "x^2/y", "y/x^2", "1/x", "x/y^2"]
        .iter()
        .map(|s| SubbasicOpen::Zar(KElement::parse(ring, s).unwrap()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn specialization_is_a_preorder(seed in any::<u64>()) {
        let ring = r1();
        let ev = Evaluator::new(ring.clone(), Caps::default());
        let mut r = rng(seed);
        let points: Vec<Point> = (0..5).map(|_| Point::Valuation(valuation(&mut r, &ring))).collect();
        let s = specialization_and_t0(&ev, &points, &opens(&ring)).unwrap();
        let n = points.len();
        for p in 0..n {
            prop_assert!(s.le[p][p].is_true());
            for q in 0..n {
                for t in 0..n {
                    if s.le[p][q].is_true() && s.le[q][t].is_true() {
                        prop_assert!(s.le[p][t].is_true());
                    }
                }
            }
        }
    }

    // Reordering the sample conjugates the relation.
    #[test]
    fn relabelling_points_permutes_the_relation(seed in any::<u64>()) {
        let ring = r2();
        let ev = Evaluator::new(ring.clone(), Caps::default());
        let mut r = rng(seed);
        let points: Vec<Point> = (0..4).map(|_| Point::Valuation(valuation(&mut r, &ring))).collect();
        let perm = [2usize, 0, 3, 1];
        let moved: Vec<Point> = perm.iter().map(|&i| points[i].clone()).collect();
        let a = specialization_and_t0(&ev, &points, &opens(&ring)).unwrap();
        let b = specialization_and_t0(&ev, &moved, &opens(&ring)).unwrap();
        for p in 0..4 {
            for q in 0..4 {
                prop_assert_eq!(b.le[p][q], a.le[perm[p]][perm[q]]);
            }
        }
        prop_assert_eq!(a.t0, b.t0);
    }
}

#[test]
fn primes_are_separated_by_basic_opens() {
    let ring = r1();
    let ev = Evaluator::new(ring.clone(), Caps::default());
    let ps = [vec!["x"], vec!["y"], vec!["x", "y"], vec!["x + y"]];
    let points: Vec<Point> = ps.iter().map(|g| Point::Prime(ring.ideal_from(g).unwrap())).collect();
    let ds: Vec<SubbasicOpen> = ["x", "y", "x + y"].iter().map(|f| SubbasicOpen::D(ring.parse(f).unwrap())).collect();
    let s = specialization_and_t0(&ev, &points, &ds).unwrap();
    assert!(s.t0.is_true());
    // (x) is a generization of (x, y): every open around the maximal ideal
    // also contains (x)
    assert!(s.le[2][0].is_true());
    assert!(!s.le[0][2].is_true());
}

#[test]
fn ultrafilter_prime_is_idempotent() {
    let ring = r1();
    let ys: Vec<_> = [vec!["x"], vec!["y"], vec!["x", "y"], vec!["x - y"]]
        .iter()
        .map(|g| ring.ideal_from(g).unwrap())
        .collect();
    for at in 0..ys.len() {
        let (p, rep) = ultrafilter_prime(&ring, &ys, at).unwrap();
        assert!(rep.passed());
        let mut again = ys.clone();
        again[at] = p.clone();
        let (q, _) = ultrafilter_prime(&ring, &again, at).unwrap();
        assert!(q.equals(&p));
    }
}

#[test]
fn retraction_holds_on_adjunctions_and_localizations() {
    let ring = r1();
    let ev = Evaluator::new(ring.clone(), Caps::default());
    let overrings = vec![
        Overring::adjoin(&ring, vec![KElement::parse(&ring, "x/y").unwrap()]),
        Overring::localize_at(&ring, &ring.parse("x").unwrap()),
    ];
    let stars = vec![
        SemistarExpr::Identity,
        SemistarExpr::Divisorial,
        SemistarExpr::LocalizeAtPrimes(vec![ring.ideal_from(&["y"]).unwrap()]),
    ];
    let us: Vec<KElement> = ["x/y", "y/x", "1/x", "x^2/y"].iter().map(|s| KElement::parse(&ring, s).unwrap()).collect();
    let rep = retraction_checks(&ev, &overrings, &stars, &us).unwrap();
    assert!(rep.passed());
    let one = FractionalIdeal::unit(2);
    assert!(overring_of(&ev, &SemistarExpr::Identity).unwrap().contains(&one.generators()[0]).is_true());
}
