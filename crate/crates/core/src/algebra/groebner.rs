//! Buchberger's algorithm with Gebauer-Moeller pair pruning.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;
use super::Rational;

/// Terms sorted by decreasing monomial under a fixed order.
#[derive(Clone, Debug)]
struct Sorted {
    terms: Vec<(Monomial, Rational)>,
}

impl Sorted {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Sorted {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Sorted { terms }
    }

    fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        let inv = self.terms[0].1.recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    /// `self - c * m * other`, where `self` is consumed from position `from`.
    fn sub_scaled(&self, from: usize, c: &Rational, m: &Monomial, other: &Sorted, order: &MonomialOrder) -> Sorted {
        let a = &self.terms[from..];
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < a.len() || j < other.terms.len() {
            if j == other.terms.len() {
                out.push(a[i].clone());
                i += 1;
                continue;
            }
            let bm = other.terms[j].0.mul(m);
            if i == a.len() {
                out.push((bm, -(c * &other.terms[j].1)));
                j += 1;
                continue;
            }
            match order.cmp(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, -(c * &other.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].1 - c * &other.terms[j].1;
                    if !v.is_zero() {
                        out.push((bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Sorted { terms: out }
    }
}

/// Fully reduces `p` modulo `basis`; the basis need not be monic.
fn reduce(p: Sorted, basis: &[&Sorted], order: &MonomialOrder) -> Sorted {
    let mut rest = p;
    let mut done: Vec<(Monomial, Rational)> = Vec::new();
    while !rest.terms.is_empty() {
        let (m, c) = rest.terms[0].clone();
        let divisor = basis.iter().find(|g| g.lm().divides(&m));
        match divisor {
            Some(g) => {
                let q = m.div(g.lm()).expect("divisible");
                let coef = &c / &g.terms[0].1;
                rest = rest.sub_scaled(0, &coef, &q, g, order);
            }
            None => {
                done.push((m, c));
                rest.terms.remove(0);
            }
        }
    }
    Sorted { terms: done }
}

/// Reduces the leading term only, stopping at the first irreducible one.
fn top_reduce(p: Sorted, basis: &[&Sorted], order: &MonomialOrder) -> Sorted {
    let mut rest = p;
    while let Some((m, c)) = rest.terms.first().cloned() {
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = m.div(g.lm()).expect("divisible");
                let coef = &c / &g.terms[0].1;
                rest = rest.sub_scaled(0, &coef, &q, g, order);
            }
            None => break,
        }
    }
    rest
}

fn s_polynomial(f: &Sorted, g: &Sorted, order: &MonomialOrder) -> Sorted {
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm()).expect("lcm");
    let mg = l.div(g.lm()).expect("lcm");
    // f and g are monic
    let scaled_f = Sorted {
        terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect(),
    };
    scaled_f.sub_scaled(0, &Rational::one(), &mg, g, order)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`.
///
/// The result is sorted by increasing leading monomial and every element is
/// monic, so it is unique for the pair (ideal, order). The zero ideal yields
/// the empty basis.
pub fn groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return vec![],
    };
    let mut input: Vec<Sorted> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Sorted::from_poly(g, order))
        .collect();
    if input.is_empty() {
        return vec![];
    }
    if input.iter().any(|g| g.lm().is_one()) {
        return vec![Polynomial::one(nvars)];
    }
    // cheap preprocessing: process small generators first
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));

    let mut polys: Vec<Sorted> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in input {
        let basis: Vec<&Sorted> = polys
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect();
        let mut h = reduce(g, &basis, order);
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        if h.lm().is_one() {
            return vec![Polynomial::one(nvars)];
        }
        update(&mut polys, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let mut best = 0;
        for k in 1..pairs.len() {
            if order.cmp(&pairs[k].lcm, &pairs[best].lcm) == Ordering::Less {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], order);
        let basis: Vec<&Sorted> = polys
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect();
        let mut h = top_reduce(s, &basis, order);
        if h.terms.is_empty() {
            continue;
        }
        h = reduce(h, &basis, order);
        h.make_monic();
        if h.lm().is_one() {
            return vec![Polynomial::one(nvars)];
        }
        update(&mut polys, &mut active, &mut pairs, h);
    }

    // minimal basis, then interreduce
    let mut minimal: Vec<Sorted> = Vec::new();
    let cands: Vec<&Sorted> = polys
        .iter()
        .zip(&active)
        .filter(|(_, a)| **a)
        .map(|(p, _)| p)
        .collect();
    for (k, p) in cands.iter().enumerate() {
        let redundant = cands.iter().enumerate().any(|(l, q)| {
            l != k && q.lm().divides(p.lm()) && (q.lm() != p.lm() || l < k)
        });
        if !redundant {
            minimal.push((*p).clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, p)| p)
            .collect();
        let head = Sorted {
            terms: vec![minimal[k].terms[0].clone()],
        };
        let tail = Sorted {
            terms: minimal[k].terms[1..].to_vec(),
        };
        let tail = reduce(tail, &others, order);
        let mut terms = head.terms;
        terms.extend(tail.terms);
        let mut p = Sorted { terms };
        p.make_monic();
        reduced.push(p);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    reduced.iter().map(|p| p.to_poly(nvars)).collect()
}

/// Gebauer-Moeller update: adds `h` to the basis and prunes critical pairs.
fn update(polys: &mut Vec<Sorted>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Sorted) {
    let hi = polys.len();
    let hlm = h.lm().clone();

    let mut c: Vec<(usize, Monomial)> = (0..polys.len())
        .filter(|&k| active[k])
        .map(|k| (k, polys[k].lm().lcm(&hlm)))
        .collect();
    let mut d: Vec<(usize, Monomial)> = Vec::new();
    while let Some((k, l)) = c.pop() {
        let coprime = polys[k].lm().is_coprime(&hlm);
        if coprime
            || (!c.iter().any(|(_, l2)| l2.divides(&l)) && !d.iter().any(|(_, l2)| l2.divides(&l)))
        {
            d.push((k, l));
        }
    }
    let e: Vec<(usize, Monomial)> = d
        .into_iter()
        .filter(|(k, _)| !polys[*k].lm().is_coprime(&hlm))
        .collect();

    pairs.retain(|p| {
        !(hlm.divides(&p.lcm)
            && polys[p.i].lm().lcm(&hlm) != p.lcm
            && polys[p.j].lm().lcm(&hlm) != p.lcm)
    });
    for (k, l) in e {
        pairs.push(Pair { i: k, j: hi, lcm: l });
    }

    for k in 0..polys.len() {
        if active[k] && hlm.divides(polys[k].lm()) {
            active[k] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

/// Remainder of `f` modulo a Groebner basis under `order`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let sorted: Vec<Sorted> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Sorted::from_poly(g, order))
        .collect();
    let refs: Vec<&Sorted> = sorted.iter().collect();
    reduce(Sorted::from_poly(f, order), &refs, order).to_poly(f.nvars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &["x".to_string(), "y".to_string(), "z".to_string()]).unwrap()
    }

    #[test]
    fn lex_example_by_hand() {
        // S(x^2-1, xy-1) = y(x^2-1) - x(xy-1) = x - y, then y^2 - 1 from xy - 1 reduced by x - y.
        let g = groebner_basis(&[p("x^2 - 1"), p("x*y - 1")], &MonomialOrder::Lex);
        assert_eq!(g, vec![p("y^2 - 1"), p("x - y")]);
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        assert!(groebner_basis(&[Polynomial::zero(3)], &MonomialOrder::DegRevLex).is_empty());
        let f = p("x + y");
        assert_eq!(normal_form(&f, &[], &MonomialOrder::DegRevLex), f);
    }

    #[test]
    fn unit_ideal_collapses() {
        let g = groebner_basis(&[p("x*y - 1"), p("x")], &MonomialOrder::DegRevLex);
        assert_eq!(g, vec![Polynomial::one(3)]);
    }

    #[test]
    fn twisted_cubic() {
        let gens = [p("x^2 - y"), p("x^3 - z")];
        let g = groebner_basis(&gens, &MonomialOrder::DegRevLex);
        for f in &gens {
            assert!(normal_form(f, &g, &MonomialOrder::DegRevLex).is_zero());
        }
        assert!(normal_form(&p("x*y - z"), &g, &MonomialOrder::DegRevLex).is_zero());
        assert!(normal_form(&p("y^2 - x*z"), &g, &MonomialOrder::DegRevLex).is_zero());
        assert!(!normal_form(&p("y"), &g, &MonomialOrder::DegRevLex).is_zero());
    }
}
