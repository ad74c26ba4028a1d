//! Runs the semistar axioms on a seeded corpus for several operations.

use gradstar::corpus::TestCorpus;
use gradstar::fractional::KElement;
use gradstar::grading::GradedRing;
use gradstar::grvaluation::GrValuation;
use gradstar::semistar::checks::axioms_check;
use gradstar::semistar::{Evaluator, Overring, SemistarExpr};
use gradstar::verdict::Caps;

fn main() -> gradstar::Result<()> {
    let ring = GradedRing::standard(&["x", "y"]);
    let ev = Evaluator::new(ring.clone(), Caps::default());
    let corpus = TestCorpus::generate(&ring, 42, 20, 3);
    let stars = vec![
        SemistarExpr::Identity,
        SemistarExpr::Divisorial,
        SemistarExpr::Extend(Overring::adjoin(&ring, vec![KElement::parse(&ring, "x/y")?])),
        SemistarExpr::MeetValuations(vec![
            GrValuation::new(&ring, vec![vec![1, 1]])?,
            GrValuation::new(&ring, vec![vec![1, 2]])?,
        ]),
        SemistarExpr::LocalizeAtPrimes(vec![ring.ideal_from(&["x"])?]),
    ];
    for star in &stars {
        let t = std::time::Instant::now();
        let rep = axioms_check(&ev, &ev.bind(star), &corpus.ideals, &corpus.scalars)?;
        let all = rep.overall();
        println!(
            "{:<28} {:<7} instances={:<4} ({:.1?})",
            star.format(&ring),
            all.verdict.label(),
            rep.checks_run(),
            t.elapsed()
        );
        for w in &all.witnesses {
            println!("    {}: {}", w.label, w.items.join(" | "));
        }
    }
    Ok(())
}
