//! Membership in the function ring of a star, homogeneous and classical.

use gradstar::corpus::TestCorpus;
use gradstar::fractional::{FractionalIdeal, KElement};
use gradstar::grading::GradedRing;
use gradstar::kronecker::{FunctionRingElement, KrMode, KroneckerHandle};
use gradstar::semistar::{Evaluator, SemistarExpr};
use gradstar::verdict::Caps;

fn main() -> gradstar::Result<()> {
    let ring = GradedRing::weighted(&["x", "y"], &[1, 2]);
    let ev = Evaluator::new(ring.clone(), Caps::default());
    let verify = TestCorpus::monomial(&ring, 8, 6, 3).ideals;
    let kr = KroneckerHandle::new(ev.clone(), SemistarExpr::NewtonB, KrMode::Homogeneous, &verify)?;
    let cl = KroneckerHandle::new(ev, SemistarExpr::NewtonB, KrMode::Classical, &verify)?;
    println!("b cancellation verified: {}", kr.eab_verified());

    // numerator and denominator coefficient lists, lowest power of X first
    let elements: [(&[&str], &[&str]); 4] = [
        (&["x*y"], &["x^2 + y^2"]),
        (&["x^2", "y"], &["x"]),
        (&["y"], &["x^2", "y"]),
        (&["x"], &["y"]),
    ];
    for (num, den) in elements {
        let e = FunctionRingElement::parse(&ring, num, den)?;
        println!(
            "{:<28} KR: {:<8} Kr: {}",
            e.format(&ring),
            kr.kr_membership(&e, &[])?.label(),
            cl.kr_membership(&e, &[])?.label()
        );
    }

    let f = FractionalIdeal::from_ideal(ring.ideal_from(&["x^2", "y"])?);
    for u in ["x*y", "x^3", "x"] {
        let u = KElement::parse(&ring, u)?;
        println!("{} in F·KR ∩ R_H: {}", u.format(&ring), kr.kr_ideal_closure(&f, &u)?.label());
    }
    Ok(())
}
