use std::fmt;
use std::sync::{Arc, OnceLock};

use super::groebner::{groebner_basis, normal_form};
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;
use crate::{Error, Result};

/// An ideal of Q[x_1..x_n] given by generators.
///
/// The generator list is kept as given. A reduced degree-reverse-lex basis is
/// computed on first use and cached; clones share the cache.
#[derive(Clone)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
    basis: Arc<OnceLock<Vec<Polynomial>>>,
}

impl Ideal {
    pub fn new(nvars: usize, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            g.check_arity(nvars)?;
        }
        Ok(Ideal::from_gens(nvars, gens))
    }

    pub(crate) fn from_gens(nvars: usize, gens: Vec<Polynomial>) -> Ideal {
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars));
        Ideal {
            nvars,
            gens,
            basis: Arc::new(OnceLock::new()),
        }
    }

    pub fn zero(nvars: usize) -> Ideal {
        Ideal::from_gens(nvars, vec![])
    }

    pub fn unit(nvars: usize) -> Ideal {
        Ideal::from_gens(nvars, vec![Polynomial::one(nvars)])
    }

    pub fn principal(f: Polynomial) -> Ideal {
        Ideal::from_gens(f.nvars(), vec![f])
    }

    pub fn from_monomials(nvars: usize, ms: impl IntoIterator<Item = Monomial>) -> Ideal {
        Ideal::from_gens(nvars, ms.into_iter().map(Polynomial::monomial).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Nonzero generators.
    pub fn nonzero_gens(&self) -> impl Iterator<Item = &Polynomial> + '_ {
        self.gens.iter().filter(|g| !g.is_zero())
    }

    /// Reduced Groebner basis under degree-reverse-lex.
    pub fn basis(&self) -> &[Polynomial] {
        self.basis
            .get_or_init(|| groebner_basis(&self.gens, &MonomialOrder::DegRevLex))
    }

    pub fn basis_in(&self, order: &MonomialOrder) -> Vec<Polynomial> {
        if *order == MonomialOrder::DegRevLex {
            return self.basis().to_vec();
        }
        groebner_basis(&self.gens, order)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self.basis(), &MonomialOrder::DegRevLex)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        let b = self.basis();
        b.len() == 1 && b[0].is_one()
    }

    pub fn member(&self, f: &Polynomial) -> bool {
        debug_assert_eq!(f.nvars(), self.nvars);
        if f.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        self.normal_form(f).is_zero()
    }

    pub fn member_checked(&self, f: &Polynomial) -> Result<bool> {
        f.check_arity(self.nvars)?;
        Ok(self.member(f))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.member(g))
    }

    /// Semantic equality by mutual generator membership.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.contains(other) && other.contains(self)
    }

    /// Generated by monomials, judged on the reduced basis.
    pub fn is_monomial(&self) -> bool {
        self.basis().iter().all(|g| g.is_term())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::from_gens(self.nvars, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens: Vec<Polynomial> = Vec::new();
        for a in self.nonzero_gens() {
            for b in other.nonzero_gens() {
                let p = a * b;
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        Ideal::from_gens(self.nvars, gens)
    }

    pub fn pow(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(self.nvars);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// `f * self`.
    pub fn scale(&self, f: &Polynomial) -> Ideal {
        Ideal::from_gens(self.nvars, self.gens.iter().map(|g| g * f).collect())
    }

    /// Intersection via elimination of `t` from `t*I + (1 - t)*J`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(self.nvars);
        }
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let n = self.nvars + 1;
        let t = Polynomial::var(n, 0);
        let one_minus_t = &Polynomial::one(n) - &t;
        let mut gens = Vec::new();
        for g in self.nonzero_gens() {
            gens.push(&t * &g.extend_front(1));
        }
        for g in other.nonzero_gens() {
            gens.push(&one_minus_t * &g.extend_front(1));
        }
        eliminate_front(&gens, 1, self.nvars)
    }

    /// `(self : g)` for a nonzero polynomial `g`.
    pub fn quotient(&self, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Err(Error::invalid("colon by the zero polynomial"));
        }
        if g.is_constant() || self.is_zero() {
            return Ok(self.clone());
        }
        let meet = self.intersect(&Ideal::principal(g.clone()));
        let gens = meet
            .basis()
            .iter()
            .map(|h| h.exact_div(g).expect("element of (g) is divisible by g"))
            .collect();
        Ok(Ideal::from_gens(self.nvars, gens))
    }

    /// `(self : other)`, the intersection of the colons by each generator.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        if other.is_zero() {
            return Err(Error::invalid("colon by the zero ideal"));
        }
        let mut acc: Option<Ideal> = None;
        for g in other.nonzero_gens() {
            let q = self.quotient(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        Ok(acc.expect("nonzero ideal has a generator"))
    }

    /// `(self : g^∞)`, iterating colons until two consecutive ones agree.
    pub fn saturate(&self, g: &Polynomial) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(g)?;
            if next.equals(&cur) {
                return Ok(Ideal::from_gens(self.nvars, next.basis().to_vec()));
            }
            cur = next;
        }
    }

    /// The ideal generated by the reduced basis.
    pub fn canonical(&self) -> Ideal {
        Ideal::from_gens(self.nvars, self.basis().to_vec())
    }
}

/// Eliminates the first `k` variables from the ideal generated by `gens`
/// (in `k + nvars` variables), returning an ideal in the last `nvars`.
pub fn eliminate_front(gens: &[Polynomial], k: usize, nvars: usize) -> Ideal {
    let order = MonomialOrder::elimination(k);
    let gb = groebner_basis(gens, &order);
    let kept: Vec<Polynomial> = gb.iter().filter_map(|g| g.strip_front(k)).collect();
    Ideal::from_gens(nvars, kept)
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    fn ideal(gs: &[&str]) -> Ideal {
        Ideal::new(2, gs.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn membership_basics() {
        let i = ideal(&["x"]);
        assert!(i.member(&p("x")));
        assert!(!i.member(&p("y")));
        assert!(Ideal::zero(2).member(&Polynomial::zero(2)));
    }

    #[test]
    fn colon_by_maximal_ideal() {
        let i = ideal(&["x^2", "y^2"]);
        let m = ideal(&["x", "y"]);
        let q = i.colon(&m).unwrap();
        assert!(q.equals(&ideal(&["x^2", "x*y", "y^2"])));
        assert!(i.colon(&Ideal::unit(2)).unwrap().equals(&i));
        assert!(i.colon(&Ideal::zero(2)).is_err());
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let q = ideal(&["x"]).intersect(&ideal(&["y"]));
        assert!(q.equals(&ideal(&["x*y"])));
    }

    #[test]
    fn saturation_strips_embedded_component() {
        let i = ideal(&["x^2", "x*y"]);
        assert!(i.saturate(&p("y")).unwrap().equals(&ideal(&["x"])));
    }

    #[test]
    fn arity_checked() {
        let bad = parse_polynomial("z", &["z".to_string()]).unwrap();
        assert!(matches!(
            Ideal::new(2, vec![bad.clone()]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(ideal(&["x"]).member_checked(&bad).is_err());
    }
}
