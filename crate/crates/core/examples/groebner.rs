//! Reduced Gröbner bases, membership, colon and intersection in Q[x,y,z].

use gradstar::grading::GradedRing;

fn main() -> gradstar::Result<()> {
    let ring = GradedRing::standard(&["x", "y", "z"]);
    let i = ring.ideal_from(&["x^2 - y*z", "x*y - z^2", "y^2 - x*z"])?;
    println!("basis of I:");
    for g in i.basis() {
        println!("  {}", ring.fmt(g));
    }
    for f in ["x^3 - x*y*z", "x^3 - y^3", "x + y"] {
        println!("{f} in I: {}", i.member(&ring.parse(f)?));
    }
    let j = ring.ideal_from(&["x", "y"])?;
    println!("I : (x, y) = {}", ring.fmt_ideal(&i.colon(&j)?));
    println!("I ∩ (x, y) = {}", ring.fmt_ideal(&i.intersect(&j)));
    Ok(())
}
