//! Fractional ideals over Q[x,y]: arithmetic, v-closure and R_H.

use gradstar::fractional::{rh_membership, FractionalIdeal, KElement};
use gradstar::grading::GradedRing;

fn main() -> gradstar::Result<()> {
    let ring = GradedRing::standard(&["x", "y"]);
    let f = FractionalIdeal::new(ring.parse("x*y")?, ring.ideal_from(&["x", "y"])?)?;
    let g = FractionalIdeal::from_ideal(ring.ideal_from(&["x^2", "y"])?);
    println!("F = {}", f.format(&ring));
    println!("G = {}", g.format(&ring));
    println!("F + G = {}", f.sum(&g).format(&ring));
    println!("FG = {}", f.product(&g).format(&ring));
    println!("F ∩ G = {}", f.intersect(&g).format(&ring));
    println!("G_v = {}", g.v_closure()?.format(&ring));
    println!("(x, y)_v = {}", FractionalIdeal::from_ideal(ring.ideal_from(&["x", "y"])?).v_closure()?.format(&ring));

    for z in ["1/y", "x/(x + y)", "1/(x + 1)", "(x^2 + y)/x"] {
        let z = KElement::parse(&ring, z)?;
        println!("{:<12} in F: {:<5}  in R_H: {}", z.format(&ring), f.member(&z), rh_membership(&ring, &z)?);
    }
    Ok(())
}
