//! A finite piece of the homogeneous Zariski space: the specialization
//! preorder of a few valuations and primes.

use gradstar::fractional::KElement;
use gradstar::grading::GradedRing;
use gradstar::grvaluation::GrValuation;
use gradstar::semistar::{Evaluator, SemistarExpr};
use gradstar::topology::{specialization_and_t0, ultrafilter_star, Point, SubbasicOpen};
use gradstar::verdict::Caps;

fn main() -> gradstar::Result<()> {
    let ring = GradedRing::standard(&["x", "y"]);
    let ev = Evaluator::new(ring.clone(), Caps::default());

    let vals: Vec<Point> = [vec![vec![1, 1]], vec![vec![1, 2]], vec![vec![2, 1]], vec![vec![1, 1], vec![1, 0]]]
        .into_iter()
        .map(|w| GrValuation::new(&ring, w).map(Point::Valuation))
        .collect::<gradstar::Result<_>>()?;
    let opens: Vec<SubbasicOpen> = ["x/y", "y/x", "x^2/y", "y^2/x"]
        .iter()
        .map(|s| KElement::parse(&ring, s).map(SubbasicOpen::Zar))
        .collect::<gradstar::Result<_>>()?;
    let s = specialization_and_t0(&ev, &vals, &opens)?;
    for (i, p) in vals.iter().enumerate() {
        let above: Vec<String> = s.adjacency[i].iter().map(|&j| vals[j].format(&ring)).collect();
        println!("{:<16} specializes to: {}", p.format(&ring), above.join(", "));
    }
    println!("T0 on this sample: {}", s.t0.label());

    let primes: Vec<Point> = [&["x"][..], &["y"], &["x", "y"]]
        .iter()
        .map(|g| ring.ideal_from(g).map(Point::Prime))
        .collect::<gradstar::Result<_>>()?;
    let ds: Vec<SubbasicOpen> = ["x", "y"].iter().map(|f| ring.parse(f).map(SubbasicOpen::D)).collect::<gradstar::Result<_>>()?;
    let s = specialization_and_t0(&ev, &primes, &ds)?;
    println!("(x, y) <= (x): {}", s.le[2][0].label());

    let stars = vec![
        SemistarExpr::Identity,
        SemistarExpr::Divisorial,
        SemistarExpr::LocalizeAtPrimes(vec![ring.ideal_from(&["x"])?]),
    ];
    let family = vec![
        gradstar::fractional::FractionalIdeal::from_ideal(ring.ideal_from(&["x", "y"])?),
        gradstar::fractional::FractionalIdeal::from_ideal(ring.ideal_from(&["y"])?),
    ];
    let (star, rep) = ultrafilter_star(&ev, &stars, 1, &family)?;
    println!("principal ultrafilter at v gives {} ({})", star.format(&ring), rep.verdict.label());
    Ok(())
}
