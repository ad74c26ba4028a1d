//! A reproducible test corpus, printed as JSON. Pass a seed as the first
//! argument.

use gradstar::corpus::TestCorpus;
use gradstar::grading::GradedRing;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let ring = GradedRing::weighted(&["x", "y"], &[1, 2]);
    let c = TestCorpus::generate(&ring, seed, 12, 3);
    println!("{}", serde_json::to_string_pretty(&c.listing(&ring)).expect("serializable"));
}
