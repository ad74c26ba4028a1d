//! Joins by iterated composition: one that stabilizes on explicit
//! closures and one capped on sampled oracles.

use gradstar::fractional::{FractionalIdeal, KElement};
use gradstar::grading::GradedRing;
use gradstar::grvaluation::GrValuation;
use gradstar::semistar::approx::join_fixpoint;
use gradstar::semistar::{Evaluator, SemistarExpr};
use gradstar::verdict::Caps;

fn main() -> gradstar::Result<()> {
    let ring = GradedRing::standard(&["x", "y"]);
    let ev = Evaluator::new(ring.clone(), Caps::default());
    let valuations = vec![
        SemistarExpr::MeetValuations(vec![GrValuation::new(&ring, vec![vec![1, 2]])?]),
        SemistarExpr::MeetValuations(vec![GrValuation::new(&ring, vec![vec![2, 1]])?]),
    ];
    let localizations = vec![
        SemistarExpr::LocalizeAtPrimes(vec![ring.ideal_from(&["x"])?]),
        SemistarExpr::LocalizeAtPrimes(vec![ring.ideal_from(&["y"])?]),
    ];
    let probes: Vec<KElement> = ["x", "x/y", "y/x", "1"].iter().map(|s| KElement::parse(&ring, s)).collect::<gradstar::Result<_>>()?;
    for stars in [&valuations, &localizations] {
        let names: Vec<String> = stars.iter().map(|s| s.format(&ring)).collect();
        println!("join of {}", names.join(" and "));
        for gens in [&["x"][..], &["x^2", "y"]] {
            let f = FractionalIdeal::from_ideal(ring.ideal_from(gens)?);
            let out = join_fixpoint(&ev, stars, &f, ev.caps().join)?;
            let members: Vec<String> = probes
                .iter()
                .map(|z| format!("{}:{}", z.format(&ring), out.handle.contains(z).label()))
                .collect();
            println!(
                "  {:<10} rounds={} stabilized={:<5} {}",
                f.format(&ring),
                out.rounds,
                out.stabilized,
                members.join(" ")
            );
        }
    }
    Ok(())
}
