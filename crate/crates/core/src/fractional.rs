//! Elements of the quotient field and finitely generated fractional ideals.

use std::fmt;

use num_traits::One;

use crate::algebra::{Ideal, Monomial, MonomialOrder, Polynomial};
use crate::grading::{Degree, GradedRing};
use crate::{Error, Result};

/// An element `num/den` of K = Frac(R). Not reduced unless built by
/// [`KElement::reduced`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KElement {
    num: Polynomial,
    den: Polynomial,
}

impl KElement {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<KElement> {
        if den.is_zero() {
            return Err(Error::ZeroDivision("denominator of a field element".into()));
        }
        Ok(KElement::from_parts(num, den))
    }

    /// Normalizes constants: the denominator becomes monic.
    pub(crate) fn from_parts(num: Polynomial, den: Polynomial) -> KElement {
        let lc = den
            .leading_term(&MonomialOrder::DegRevLex)
            .map(|(_, c)| c.clone())
            .expect("nonzero denominator");
        if lc.is_one() {
            return KElement { num, den };
        }
        let inv = lc.recip();
        KElement {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Polynomial) -> KElement {
        let n = p.nvars();
        KElement {
            num: p,
            den: Polynomial::one(n),
        }
    }

    pub fn parse(ring: &GradedRing, s: &str) -> Result<KElement> {
        let (n, d) = ring.parse_fraction(s)?;
        KElement::new(n, d)
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn mul(&self, o: &KElement) -> KElement {
        KElement::from_parts(&self.num * &o.num, &self.den * &o.den).cancel_monomials()
    }

    pub fn add(&self, o: &KElement) -> KElement {
        if self.den == o.den {
            return KElement::from_parts(&self.num + &o.num, self.den.clone());
        }
        KElement::from_parts(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
            .cancel_monomials()
    }

    pub fn neg(&self) -> KElement {
        KElement::from_parts(-&self.num, self.den.clone())
    }

    pub fn inv(&self) -> Result<KElement> {
        KElement::new(self.den.clone(), self.num.clone())
    }

    pub fn mul_poly(&self, p: &Polynomial) -> KElement {
        KElement::from_parts(&self.num * p, self.den.clone()).cancel_monomials()
    }

    /// Cancels the common monomial content and exact polynomial quotients.
    pub fn cancel_monomials(self) -> KElement {
        if self.num.is_zero() {
            return KElement::from_parts(self.num, Polynomial::one(self.den.nvars()));
        }
        if !self.den.is_constant() {
            if let Some(q) = self.num.exact_div(&self.den) {
                return KElement::from_poly(q);
            }
        }
        let (Some(a), Some(b)) = (self.num.monomial_content(), self.den.monomial_content()) else {
            return self;
        };
        let g = a.gcd(&b);
        if g.is_one() {
            return self;
        }
        let gp = Polynomial::monomial(g);
        KElement::from_parts(
            self.num.exact_div(&gp).expect("content"),
            self.den.exact_div(&gp).expect("content"),
        )
    }

    /// Lowest terms, using a principal colon in place of a gcd:
    /// `((den) : num) = (den / gcd(num, den))`.
    pub fn reduced(&self) -> KElement {
        if self.num.is_zero() || self.den.is_constant() {
            return KElement::from_parts(self.num.clone(), self.den.clone());
        }
        let c = reduced_denominator(&self.num, &self.den);
        let num = (&c * &self.num).exact_div(&self.den).expect("c*num/den is a polynomial");
        KElement::from_parts(num, c)
    }

    /// Homogeneous as an element of R_H: in lowest terms, numerator and
    /// denominator are both homogeneous.
    pub fn is_homogeneous(&self, ring: &GradedRing) -> bool {
        if self.is_zero() {
            return false;
        }
        if ring.is_homogeneous(&self.num) && ring.is_homogeneous(&self.den) {
            return true;
        }
        let r = self.reduced();
        ring.is_homogeneous(&r.num) && ring.is_homogeneous(&r.den)
    }

    pub fn degree(&self, ring: &GradedRing) -> Option<Degree> {
        let r = if ring.is_homogeneous(&self.num) && ring.is_homogeneous(&self.den) {
            self.clone()
        } else {
            self.reduced()
        };
        let a = ring.degree(&r.num)?;
        let b = ring.degree(&r.den)?;
        Some(a.iter().zip(&b).map(|(x, y)| x - y).collect())
    }

    /// Homogeneous components as elements of R_H, or `None` if the element
    /// is not in R_H.
    pub fn components(&self, ring: &GradedRing) -> Option<Vec<KElement>> {
        if self.is_zero() {
            return Some(vec![]);
        }
        let r = if ring.is_homogeneous(&self.den) {
            self.clone()
        } else {
            self.reduced()
        };
        if !ring.is_homogeneous(&r.den) {
            return None;
        }
        Some(
            ring.components(&r.num)
                .into_iter()
                .map(|c| KElement::from_parts(c, r.den.clone()).cancel_monomials())
                .collect(),
        )
    }

    pub fn format(&self, ring: &GradedRing) -> String {
        ring.fmt_fraction(&self.num, &self.den)
    }
}

impl fmt::Debug for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

/// Generator of `((q) : p)`, the denominator of `p/q` in lowest terms.
fn reduced_denominator(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let colon = Ideal::principal(q.clone())
        .quotient(p)
        .expect("nonzero numerator");
    let gens: Vec<&Polynomial> = colon.basis().iter().collect();
    debug_assert_eq!(gens.len(), 1, "colon of principal ideals is principal");
    gens[0].clone()
}

/// Membership of `z` in the homogeneous quotient ring R_H.
///
/// For `z = p/q`, the ideal `((q) : p)` is principal, generated by the
/// denominator of `z` in lowest terms; `z ∈ R_H` exactly when that
/// generator is homogeneous.
pub fn rh_membership(ring: &GradedRing, z: &KElement) -> Result<bool> {
    if z.is_zero() {
        return Err(Error::invalid("R_H membership of zero"));
    }
    if ring.is_homogeneous(z.den()) {
        return Ok(true);
    }
    Ok(ring.is_homogeneous(&reduced_denominator(z.num(), z.den())))
}

/// A finitely generated fractional ideal `(1/den)·num`.
#[derive(Clone)]
pub struct FractionalIdeal {
    den: Polynomial,
    num: Ideal,
}

impl FractionalIdeal {
    pub fn new(den: Polynomial, num: Ideal) -> Result<FractionalIdeal> {
        if den.is_zero() {
            return Err(Error::ZeroDivision("fractional ideal denominator".into()));
        }
        den.check_arity(num.nvars())?;
        Ok(FractionalIdeal { den, num }.normalize_den())
    }

    fn normalize_den(self) -> FractionalIdeal {
        let lc = self
            .den
            .leading_term(&MonomialOrder::DegRevLex)
            .map(|(_, c)| c.clone())
            .expect("nonzero");
        if lc.is_one() {
            return self;
        }
        // scaling the denominator by a constant does not change the module
        FractionalIdeal {
            den: self.den.scale(&lc.recip()),
            num: self.num,
        }
    }

    pub fn from_ideal(i: Ideal) -> FractionalIdeal {
        let n = i.nvars();
        FractionalIdeal {
            den: Polynomial::one(n),
            num: i,
        }
    }

    pub fn unit(nvars: usize) -> FractionalIdeal {
        FractionalIdeal::from_ideal(Ideal::unit(nvars))
    }

    pub fn principal(z: &KElement) -> FractionalIdeal {
        FractionalIdeal {
            den: z.den().clone(),
            num: Ideal::principal(z.num().clone()),
        }
        .normalize_den()
    }

    /// The module generated by the given field elements.
    pub fn generated_by(nvars: usize, zs: &[KElement]) -> FractionalIdeal {
        let mut acc = FractionalIdeal::from_ideal(Ideal::zero(nvars));
        for z in zs {
            acc = acc.sum(&FractionalIdeal::principal(z));
        }
        acc
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn num(&self) -> &Ideal {
        &self.num
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Generators as field elements.
    pub fn generators(&self) -> Vec<KElement> {
        self.num
            .nonzero_gens()
            .map(|g| KElement::from_parts(g.clone(), self.den.clone()).cancel_monomials())
            .collect()
    }

    pub fn sum(&self, o: &FractionalIdeal) -> FractionalIdeal {
        if self.den == o.den {
            return FractionalIdeal {
                den: self.den.clone(),
                num: self.num.sum(&o.num),
            }
            .simplify();
        }
        FractionalIdeal {
            den: &self.den * &o.den,
            num: self.num.scale(&o.den).sum(&o.num.scale(&self.den)),
        }
        .simplify()
    }

    pub fn product(&self, o: &FractionalIdeal) -> FractionalIdeal {
        FractionalIdeal {
            den: &self.den * &o.den,
            num: self.num.product(&o.num),
        }
        .simplify()
    }

    pub fn pow(&self, k: u32) -> FractionalIdeal {
        let mut acc = FractionalIdeal::unit(self.nvars());
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// `z · self`.
    pub fn scale(&self, z: &KElement) -> FractionalIdeal {
        FractionalIdeal {
            den: &self.den * z.den(),
            num: self.num.scale(z.num()),
        }
        .simplify()
    }

    /// `(self :_K o) = {z ∈ K : z·o ⊆ self}`.
    ///
    /// With `self = (1/h)I`, `o = (1/k)J` and `g` a nonzero generator of
    /// `J`, the colon is `(k/(h g))·(gI : J)`.
    pub fn colon(&self, o: &FractionalIdeal) -> Result<FractionalIdeal> {
        let g = o
            .num
            .nonzero_gens()
            .next()
            .ok_or_else(|| Error::invalid("colon by the zero module"))?
            .clone();
        let inner = self.num.scale(&g).colon(&o.num)?;
        Ok(FractionalIdeal {
            den: &self.den * &g,
            num: inner.scale(&o.den),
        }
        .simplify())
    }

    pub fn intersect(&self, o: &FractionalIdeal) -> FractionalIdeal {
        if self.den == o.den {
            return FractionalIdeal {
                den: self.den.clone(),
                num: self.num.intersect(&o.num),
            }
            .simplify();
        }
        FractionalIdeal {
            den: &self.den * &o.den,
            num: self.num.scale(&o.den).intersect(&o.num.scale(&self.den)),
        }
        .simplify()
    }

    /// `z ∈ (1/h)I` iff `p h ∈ q I` for `z = p/q`.
    pub fn member(&self, z: &KElement) -> bool {
        if z.is_zero() {
            return true;
        }
        let target = z.num() * &self.den;
        if z.den().is_constant() {
            return self.num.member(&target);
        }
        self.num.scale(z.den()).member(&target)
    }

    /// `o ⊆ self`.
    pub fn contains(&self, o: &FractionalIdeal) -> bool {
        o.generators().iter().all(|z| self.member(z))
    }

    pub fn equals(&self, o: &FractionalIdeal) -> bool {
        self.contains(o) && o.contains(self)
    }

    /// `self ⊆ R`.
    pub fn is_integral(&self) -> bool {
        self.den.is_constant() || Ideal::principal(self.den.clone()).contains(&self.num)
    }

    /// `self ∩ R` as an ideal of R.
    pub fn integral_part(&self) -> Ideal {
        if self.den.is_constant() {
            return self.num.clone();
        }
        let meet = self.num.intersect(&Ideal::principal(self.den.clone()));
        Ideal::from_gens(
            self.nvars(),
            meet.basis()
                .iter()
                .map(|g| g.exact_div(&self.den).expect("in (den)"))
                .collect(),
        )
    }

    /// `(R : (R : F))`.
    pub fn v_closure(&self) -> Result<FractionalIdeal> {
        let r = FractionalIdeal::unit(self.nvars());
        let inv = r.colon(self)?;
        r.colon(&inv)
    }

    /// Cancels monomial content shared by the denominator and all
    /// generators, and clears the denominator when it divides everything.
    pub fn simplify(self) -> FractionalIdeal {
        let n = self.nvars();
        if self.num.is_zero() {
            return FractionalIdeal {
                den: Polynomial::one(n),
                num: Ideal::zero(n),
            };
        }
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in self.num.nonzero_gens() {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        // prefer the reduced basis when it is not longer
        if gens.len() > 2 {
            let b = self.num.basis();
            if b.len() <= gens.len() {
                gens = b.to_vec();
            }
        }
        let mut den = self.den;
        if !den.is_constant() {
            if let Some(qs) = gens.iter().map(|g| g.exact_div(&den)).collect::<Option<Vec<_>>>() {
                return FractionalIdeal::from_ideal(Ideal::from_gens(n, qs));
            }
            let mut content: Option<Monomial> = den.monomial_content();
            for g in &gens {
                content = match (content, g.monomial_content()) {
                    (Some(a), Some(b)) => Some(a.gcd(&b)),
                    _ => None,
                };
            }
            if let Some(c) = content.filter(|c| !c.is_one()) {
                let cp = Polynomial::monomial(c);
                den = den.exact_div(&cp).expect("content");
                gens = gens.iter().map(|g| g.exact_div(&cp).expect("content")).collect();
            }
        }
        FractionalIdeal {
            den,
            num: Ideal::from_gens(n, gens),
        }
        .normalize_den()
    }

    /// Is this a homogeneous fractional ideal? Exact.
    ///
    /// With a homogeneous denominator this is homogeneity of the numerator.
    /// Otherwise every generator is rewritten over a homogeneous denominator
    /// (failing if one is not in R_H) and the cleared ideal is tested.
    pub fn is_homogeneous(&self, ring: &GradedRing) -> bool {
        match self.homogeneous_form(ring) {
            Some(f) => ring.ideal_is_homogeneous(&f.num),
            None => false,
        }
    }

    /// The same module over a homogeneous denominator, or `None` if some
    /// generator is outside R_H.
    pub fn homogeneous_form(&self, ring: &GradedRing) -> Option<FractionalIdeal> {
        if ring.is_homogeneous(&self.den) {
            return Some(self.clone());
        }
        let gens: Vec<KElement> = self.generators().iter().map(|z| z.reduced()).collect();
        if gens.iter().any(|z| !ring.is_homogeneous(z.den())) {
            return None;
        }
        let n = self.nvars();
        let mut den = Polynomial::one(n);
        for z in &gens {
            if !z.den().divides(&den) {
                den = &den * z.den();
            }
        }
        let num: Vec<Polynomial> = gens
            .iter()
            .map(|z| (z.num() * &den).exact_div(z.den()).expect("den divides"))
            .collect();
        Some(
            FractionalIdeal {
                den,
                num: Ideal::from_gens(n, num),
            }
            .normalize_den(),
        )
    }

    pub fn format(&self, ring: &GradedRing) -> String {
        let body = ring.fmt_ideal(&self.num);
        if self.den.is_one() {
            body
        } else {
            let d = ring.fmt(&self.den);
            if self.den.num_terms() > 1 {
                format!("(1/({d})){body}")
            } else {
                format!("(1/{d}){body}")
            }
        }
    }
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/({:?})){:?}", self.den, self.num)
    }
}
