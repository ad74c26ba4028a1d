//! Gauss valuations of weight stacks, F·V, and the Newton polyhedron
//! closure of monomial ideals.

use gradstar::fractional::{FractionalIdeal, KElement};
use gradstar::grading::GradedRing;
use gradstar::grvaluation::{b_closure_monomial, format_value, GrValuation};

fn main() -> gradstar::Result<()> {
    let ring = GradedRing::standard(&["x", "y"]);
    let v = GrValuation::new(&ring, vec![vec![1, 2], vec![1, 0]])?;
    for z in ["x/y", "y/x^2", "y/x", "x^2/y"] {
        let z = KElement::parse(&ring, z)?;
        let val = v.value(&z).expect("nonzero");
        println!("{} {:<8} = {:<8} in V: {}", v.format(), z.format(&ring), format_value(&val), v.in_ring(&z)?);
    }
    let f = FractionalIdeal::from_ideal(ring.ideal_from(&["x^2", "y"])?);
    let fv = v.extend_fv(&f)?;
    println!("FV = {}V", fv.generator.format(&ring));

    for gens in [&["x^2", "y^2"][..], &["x^3", "y^2"], &["x^4", "x*y^2", "y^3"]] {
        let i = ring.ideal_from(gens)?;
        println!("b{} = {}", ring.fmt_ideal(&i), ring.fmt_ideal(&b_closure_monomial(&i)?));
    }
    Ok(())
}
