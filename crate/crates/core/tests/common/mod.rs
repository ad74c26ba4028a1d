//! Seeded random inputs shared by the integration tests.
#![allow(dead_code)]

use gradstar::algebra::{rat, Monomial, Polynomial};
use gradstar::fractional::KElement;
use gradstar::grading::{monomials_up_to, AuxPolynomial, GradedRing};
use gradstar::grvaluation::GrValuation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r1() -> GradedRing {
    GradedRing::standard(&["x", "y"])
}

pub fn r2() -> GradedRing {
    GradedRing::weighted(&["x", "y"], &[1, 2])
}

pub fn coeff(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.random_range(1..=3);
    if rng.random_bool(0.5) {
        c
    } else {
        -c
    }
}

/// A monomial of total degree `1..=max_degree`.
pub fn monomial(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Monomial {
    let pool: Vec<Monomial> = monomials_up_to(n, max_degree).into_iter().filter(|m| !m.is_one()).collect();
    pool[rng.random_range(0..pool.len())].clone()
}

/// A nonzero polynomial with up to `terms` terms, constant term allowed.
pub fn poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u32, terms: usize) -> Polynomial {
    let pool = monomials_up_to(n, max_degree);
    loop {
        let k = rng.random_range(1..=terms);
        let mut p = Polynomial::zero(n);
        for _ in 0..k {
            p.add_term(pool[rng.random_range(0..pool.len())].clone(), rat(coeff(rng)));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// A homogeneous nonzero polynomial: monomials sharing the degree of a
/// random first one.
pub fn homogeneous_poly(rng: &mut ChaCha8Rng, ring: &GradedRing, max_degree: u32, terms: usize) -> Polynomial {
    let n = ring.nvars();
    let m = monomial(rng, n, max_degree);
    let d = ring.monomial_degree(&m);
    let same: Vec<Monomial> = monomials_up_to(n, max_degree)
        .into_iter()
        .filter(|x| ring.monomial_degree(x) == d)
        .collect();
    let mut p = Polynomial::monomial(m);
    for _ in 1..terms {
        p.add_term(same[rng.random_range(0..same.len())].clone(), rat(coeff(rng)));
    }
    if p.is_zero() {
        Polynomial::monomial(same[0].clone())
    } else {
        p
    }
}

/// A quotient of two random polynomials.
pub fn element(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> KElement {
    let a = poly(rng, n, max_degree, 3);
    let b = poly(rng, n, max_degree, 2);
    KElement::new(a, b).expect("nonzero denominator")
}

/// A homogeneous quotient of two homogeneous polynomials.
pub fn homogeneous_element(rng: &mut ChaCha8Rng, ring: &GradedRing, max_degree: u32) -> KElement {
    let a = homogeneous_poly(rng, ring, max_degree, 2);
    let b = homogeneous_poly(rng, ring, max_degree, 2);
    KElement::new(a, b).expect("nonzero denominator")
}

/// A polynomial in X with `len` coefficients drawn by `f`.
pub fn aux(n: usize, len: usize, mut f: impl FnMut() -> Polynomial) -> AuxPolynomial {
    loop {
        let a = AuxPolynomial::new(n, (0..len).map(|_| f()).collect());
        if !a.is_zero() {
            return a;
        }
    }
}

/// A random weight stack of rank 1 or 2 with entries in `0..=3`; the first
/// row is positive.
pub fn valuation(rng: &mut ChaCha8Rng, ring: &GradedRing) -> GrValuation {
    let n = ring.nvars();
    loop {
        let rank = rng.random_range(1..=2);
        let mut rows = vec![(0..n).map(|_| rng.random_range(1..=3)).collect::<Vec<i64>>()];
        if rank == 2 {
            rows.push((0..n).map(|_| rng.random_range(0..=3)).collect());
        }
        if let Ok(v) = GrValuation::new(ring, rows) {
            return v;
        }
    }
}
