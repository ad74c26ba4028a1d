//! Reproducible test corpora of fractional ideals.
//!
//! The generator is ChaCha8 seeded through `seed_from_u64`, and every draw
//! happens in a fixed order, so a `(ring, seed, count, max_degree)` tuple
//! always yields the same corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{rat, Ideal, Monomial, Polynomial};
use crate::fractional::{FractionalIdeal, KElement};
use crate::grading::{monomials_up_to, GradedRing};

#[derive(Clone, Debug)]
pub struct TestCorpus {
    pub seed: u64,
    pub ideals: Vec<FractionalIdeal>,
    /// Indices of the homogeneous ideals.
    pub homogeneous: Vec<usize>,
    /// Indices of the ideals with monomial numerator.
    pub monomial: Vec<usize>,
    /// Homogeneous scalars for the scaling axiom.
    pub scalars: Vec<KElement>,
}

/// Serializable view of a corpus.
#[derive(Serialize)]
pub struct CorpusListing {
    pub seed: u64,
    pub ideals: Vec<CorpusEntry>,
    pub scalars: Vec<String>,
}

#[derive(Serialize)]
pub struct CorpusEntry {
    pub ideal: String,
    pub homogeneous: bool,
    pub monomial: bool,
}

impl TestCorpus {
    /// The variable ideals `(x_i)` first, then cycling through monomial,
    /// homogeneous binomial, inhomogeneous binomial and fractional ideals.
    pub fn generate(ring: &GradedRing, seed: u64, count: usize, max_degree: u32) -> TestCorpus {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = ring.nvars();
        let max_degree = max_degree.max(1);
        let pool: Vec<Monomial> = monomials_up_to(n, max_degree).into_iter().filter(|m| !m.is_one()).collect();
        let mut ideals = Vec::with_capacity(count);
        for i in 0..n.min(count) {
            ideals.push(FractionalIdeal::from_ideal(Ideal::principal(ring.var(i))));
        }
        let mut kind = 0;
        while ideals.len() < count {
            let f = match kind % 4 {
                0 => monomial_ideal(&mut rng, &pool, n),
                1 => homogeneous_binomial_ideal(&mut rng, ring, &pool),
                2 => inhomogeneous_binomial_ideal(&mut rng, ring, &pool),
                _ => fractional_ideal(&mut rng, &pool, n),
            };
            kind += 1;
            if let Some(f) = f {
                ideals.push(f);
            }
        }
        let scalars = scalars(&mut rng, ring);
        TestCorpus::from_parts(ring, seed, ideals, scalars)
    }

    /// Random monomial ideals only.
    pub fn monomial(ring: &GradedRing, seed: u64, count: usize, max_degree: u32) -> TestCorpus {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = ring.nvars();
        let pool: Vec<Monomial> = monomials_up_to(n, max_degree.max(1)).into_iter().filter(|m| !m.is_one()).collect();
        let mut ideals = Vec::with_capacity(count);
        while ideals.len() < count {
            if let Some(f) = monomial_ideal(&mut rng, &pool, n) {
                ideals.push(f);
            }
        }
        let scalars = scalars(&mut rng, ring);
        TestCorpus::from_parts(ring, seed, ideals, scalars)
    }

    /// A corpus from explicit ideals; the sublists are computed.
    pub fn from_parts(ring: &GradedRing, seed: u64, ideals: Vec<FractionalIdeal>, scalars: Vec<KElement>) -> TestCorpus {
        let homogeneous = (0..ideals.len()).filter(|&i| ideals[i].is_homogeneous(ring)).collect();
        let monomial = (0..ideals.len()).filter(|&i| ideals[i].num().is_monomial()).collect();
        TestCorpus {
            seed,
            ideals,
            homogeneous,
            monomial,
            scalars,
        }
    }

    pub fn homogeneous_ideals(&self) -> Vec<FractionalIdeal> {
        self.homogeneous.iter().map(|&i| self.ideals[i].clone()).collect()
    }

    pub fn monomial_ideals(&self) -> Vec<FractionalIdeal> {
        self.monomial.iter().map(|&i| self.ideals[i].clone()).collect()
    }

    pub fn listing(&self, ring: &GradedRing) -> CorpusListing {
        CorpusListing {
            seed: self.seed,
            ideals: self
                .ideals
                .iter()
                .enumerate()
                .map(|(i, f)| CorpusEntry {
                    ideal: f.format(ring),
                    homogeneous: self.homogeneous.contains(&i),
                    monomial: self.monomial.contains(&i),
                })
                .collect(),
            scalars: self.scalars.iter().map(|z| z.format(ring)).collect(),
        }
    }
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.random_range(0..xs.len())]
}

fn coefficient(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.random_range(1..=3);
    if rng.random_bool(0.5) {
        c
    } else {
        -c
    }
}

fn monomial_ideal(rng: &mut ChaCha8Rng, pool: &[Monomial], n: usize) -> Option<FractionalIdeal> {
    let k = rng.random_range(1..=3);
    let gens: Vec<Polynomial> = (0..k).map(|_| Polynomial::monomial(pick(rng, pool).clone())).collect();
    let i = Ideal::new(n, gens).ok()?;
    Some(FractionalIdeal::from_ideal(Ideal::new(n, i.basis().to_vec()).ok()?))
}

fn homogeneous_binomial_ideal(rng: &mut ChaCha8Rng, ring: &GradedRing, pool: &[Monomial]) -> Option<FractionalIdeal> {
    let n = ring.nvars();
    let m1 = pick(rng, pool).clone();
    let deg = ring.monomial_degree(&m1);
    let same: Vec<&Monomial> = pool.iter().filter(|m| **m != m1 && ring.monomial_degree(m) == deg).collect();
    let mut gens = Vec::new();
    if same.is_empty() {
        gens.push(Polynomial::monomial(m1));
    } else {
        let m2 = (*pick(rng, &same)).clone();
        let mut b = Polynomial::monomial(m1);
        b.add_term(m2, rat(coefficient(rng)));
        gens.push(b);
    }
    gens.push(Polynomial::monomial(pick(rng, pool).clone()));
    Some(FractionalIdeal::from_ideal(Ideal::new(n, gens).ok()?))
}

fn inhomogeneous_binomial_ideal(rng: &mut ChaCha8Rng, ring: &GradedRing, pool: &[Monomial]) -> Option<FractionalIdeal> {
    let n = ring.nvars();
    let m1 = pick(rng, pool).clone();
    let deg = ring.monomial_degree(&m1);
    let other: Vec<&Monomial> = pool.iter().filter(|m| ring.monomial_degree(m) != deg).collect();
    let mut b = Polynomial::monomial(m1);
    if other.is_empty() {
        b.add_term(Monomial::one(n), rat(coefficient(rng)));
    } else {
        b.add_term((*pick(rng, &other)).clone(), rat(coefficient(rng)));
    }
    let mut gens = vec![b];
    if rng.random_bool(0.5) {
        gens.push(Polynomial::monomial(pick(rng, pool).clone()));
    }
    Some(FractionalIdeal::from_ideal(Ideal::new(n, gens).ok()?))
}

fn fractional_ideal(rng: &mut ChaCha8Rng, pool: &[Monomial], n: usize) -> Option<FractionalIdeal> {
    let inner = monomial_ideal(rng, pool, n)?;
    let den = Polynomial::monomial(Monomial::var(n, rng.random_range(0..n)));
    FractionalIdeal::new(den, inner.num().clone()).ok()
}

fn scalars(rng: &mut ChaCha8Rng, ring: &GradedRing) -> Vec<KElement> {
    let n = ring.nvars();
    let mut out = vec![KElement::from_poly(ring.var(0))];
    if n > 1 {
        out.push(KElement::new(ring.var(n - 1), ring.var(0)).expect("nonzero"));
    }
    let i = rng.random_range(0..n);
    let j = rng.random_range(0..n);
    out.push(KElement::new(ring.var(i).scale(&rat(2)), &ring.var(j) * &ring.var(j)).expect("nonzero"));
    out
}
