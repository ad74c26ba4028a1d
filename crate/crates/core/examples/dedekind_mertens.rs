//! Content ideals, the Dedekind-Mertens exponent and the largest
//! homogeneous subideal in the weighted ring Q[x,y], deg y = 2.

use gradstar::grading::{DmOutcome, GradedRing, J0Outcome};

fn main() -> gradstar::Result<()> {
    let ring = GradedRing::weighted(&["x", "y"], &[1, 2]);
    for (f, g) in [("x + y", "x - y"), ("x", "x + y^2"), ("x + y + 1", "x^2 - y + 3")] {
        let (f, g) = (ring.parse(f)?, ring.parse(g)?);
        let m = match ring.dedekind_mertens_exponent(&f, &g, 10)? {
            DmOutcome::Exponent(m) => m.to_string(),
            DmOutcome::BoundExhausted(b) => format!("> {b}"),
        };
        println!(
            "C({}) = {}   C({}) = {}   m = {m}",
            ring.fmt(&f),
            ring.fmt_ideal(&ring.content_c(&f)?),
            ring.fmt(&g),
            ring.fmt_ideal(&ring.content_c(&g)?),
        );
    }

    let i = ring.ideal_from(&["x^2 + y", "x*y"])?;
    println!("I = {}", ring.fmt_ideal(&i));
    println!("I* = {}", ring.fmt_ideal(&ring.largest_homogeneous_subideal(&i)));

    let f = ring.parse("x + y")?;
    let j = ring.ideal_from(&["x - y"])?;
    let prod = ring.ideal(ring.components(&(&f * &ring.parse("x - y")?)))?;
    if let J0Outcome::Witness(w) = ring.homogeneous_witness_j0(&f, &j, &prod, 10)? {
        println!("J0 = {} (homogeneous: {}, C(f)J0 ⊆ I: {})", ring.fmt_ideal(&w.j0), w.homogeneous, w.contained);
    }
    Ok(())
}
