//! Kronecker function rings `KR(R,⋆)` (homogeneous contents) and
//! `Kr(R,⋆)` (classical contents), and the Gauss extension `V_{M_V}(X)`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Ideal, Polynomial};
use crate::fractional::{rh_membership, FractionalIdeal, KElement};
use crate::grading::{monomials_up_to, AuxPolynomial, Degree, GradedRing};
use crate::grvaluation::{GrValuation, Value};
use crate::semistar::checks::eab_checks;
use crate::semistar::{ClosureHandle, Evaluator, SemistarExpr};
use crate::verdict::{CheckReport, Verdict, Witness};
use crate::{Error, Result};

/// `f/g` in `K(X)` with `f, g ∈ R[X]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionRingElement {
    num: AuxPolynomial,
    den: AuxPolynomial,
}

impl FunctionRingElement {
    pub fn new(num: AuxPolynomial, den: AuxPolynomial) -> Result<FunctionRingElement> {
        if den.is_zero() {
            return Err(Error::ZeroDivision("function ring denominator".into()));
        }
        Ok(FunctionRingElement { num, den })
    }

    /// Coefficient lists indexed by the power of X.
    pub fn parse(ring: &GradedRing, num: &[&str], den: &[&str]) -> Result<FunctionRingElement> {
        let p = |xs: &[&str]| -> Result<AuxPolynomial> {
            let cs = xs.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
            Ok(AuxPolynomial::new(ring.nvars(), cs))
        };
        FunctionRingElement::new(p(num)?, p(den)?)
    }

    pub fn num(&self) -> &AuxPolynomial {
        &self.num
    }

    pub fn den(&self) -> &AuxPolynomial {
        &self.den
    }

    pub fn mul(&self, o: &FunctionRingElement) -> FunctionRingElement {
        FunctionRingElement {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }

    pub fn format(&self, ring: &GradedRing) -> String {
        format!("({})/({})", self.num.format(ring), self.den.format(ring))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KrMode {
    /// `KR(R,⋆)` with the contents `A_f`.
    Homogeneous,
    /// `Kr(R,⋆)` with the coefficient ideals `c(f)`.
    Classical,
}

/// A star together with the corpus on which its cancellation law was
/// checked.
pub struct KroneckerHandle {
    ev: Evaluator,
    star: SemistarExpr,
    mode: KrMode,
    eab_verified: bool,
}

impl KroneckerHandle {
    /// Runs the cancellation check of `star` on `verification` (all triples
    /// from the first four ideals). The fast path is used only if it passes.
    pub fn new(
        ev: Evaluator,
        star: SemistarExpr,
        mode: KrMode,
        verification: &[FractionalIdeal],
    ) -> Result<KroneckerHandle> {
        let eab_verified = !verification.is_empty() && eab_checks(&ev, &ev.bind(&star), verification, 4)?.passed();
        Ok(KroneckerHandle {
            ev,
            star,
            mode,
            eab_verified,
        })
    }

    pub fn eab_verified(&self) -> bool {
        self.eab_verified
    }

    pub fn mode(&self) -> KrMode {
        self.mode
    }

    pub fn ring(&self) -> &GradedRing {
        self.ev.ring()
    }

    pub fn star(&self) -> &SemistarExpr {
        &self.star
    }

    fn content(&self, f: &AuxPolynomial) -> Result<Ideal> {
        match self.mode {
            KrMode::Homogeneous => self.ring().content_a(f),
            KrMode::Classical => self.ring().content_classical(f),
        }
    }

    fn close(&self, i: Ideal) -> Result<ClosureHandle> {
        self.ev.eval(&self.star, &FractionalIdeal::from_ideal(i))
    }

    fn ideal_in(&self, small: &Ideal, big: &ClosureHandle) -> Verdict {
        Verdict::all(small.nonzero_gens().map(|g| big.contains(&KElement::from_poly(g.clone()))))
    }

    /// Membership of `f/g`.
    ///
    /// With a verified star in homogeneous mode this decides
    /// `A_f ⊆ A_g^⋆`. Otherwise `h = 1` and the family are tried as
    /// witnesses of `c(f)c(h) ⊆ (c(g)c(h))^⋆`; if none works the answer is
    /// unknown, except that a principal `c(g)` under a verified star makes
    /// the `h = 1` test exact.
    pub fn kr_membership(&self, elt: &FunctionRingElement, family: &[AuxPolynomial]) -> Result<Verdict> {
        if elt.num.is_zero() {
            return Ok(Verdict::True);
        }
        let cf = self.content(&elt.num)?;
        let cg = self.content(&elt.den)?;
        if self.eab_verified && self.mode == KrMode::Homogeneous {
            return Ok(self.ideal_in(&cf, &self.close(cg)?));
        }
        let one = AuxPolynomial::constant(self.ring().one());
        let mut last = Verdict::Unknown { cap: family.len() as u32 };
        for h in std::iter::once(&one).chain(family) {
            if h.is_zero() {
                continue;
            }
            let ch = self.content(h)?;
            let v = self.ideal_in(&cf.product(&ch), &self.close(cg.product(&ch))?);
            if v.is_true() {
                return Ok(Verdict::True);
            }
            if h == &one && self.eab_verified && principal_generator(&cg).is_some() {
                last = v;
            }
        }
        Ok(if last.is_false() { Verdict::False } else { Verdict::Unknown { cap: family.len() as u32 } })
    }

    /// The axioms of a K-function ring on a sample: `X`, `1/X` and
    /// `f(0)/f(X)` for each sample polynomial with coefficients in K.
    pub fn k_function_ring_axioms_check(&self, sample: &[Vec<KElement>], family: &[AuxPolynomial]) -> Result<CheckReport> {
        let ring = self.ring();
        let n = ring.nvars();
        let mut rep = CheckReport::new();
        let x = AuxPolynomial::x_power(n, 1);
        let one = AuxPolynomial::constant(ring.one());
        for (label, e) in [("X", FunctionRingElement::new(x.clone(), one.clone())?), ("1/X", FunctionRingElement::new(one, x)?)] {
            let v = self.kr_membership(&e, family)?;
            rep.record(v, || Witness::new("not in the function ring", vec![label.into()]));
        }
        for f in sample {
            let Some(f) = clear_denominators(n, f) else { continue };
            let f0 = f.coeff(0);
            if f0.is_zero() {
                continue;
            }
            let e = FunctionRingElement::new(AuxPolynomial::constant(f0), f.clone())?;
            let v = self.kr_membership(&e, family)?;
            rep.record(v, || Witness::new("f(0)/f not in the function ring", vec![f.format(ring)]));
        }
        Ok(rep)
    }

    /// `u ∈ F·KR(R,⋆) ∩ R_H` for homogeneous `F`, through the element
    /// `u / f_F` with `f_F = Σ a_i X^i` built from the generators of `F`.
    pub fn kr_ideal_closure(&self, f: &FractionalIdeal, u: &KElement) -> Result<Verdict> {
        let ring = self.ring();
        if u.is_zero() {
            return Ok(Verdict::True);
        }
        if !rh_membership(ring, u)? {
            return Err(Error::NotGraded(u.format(ring)));
        }
        let h = f
            .homogeneous_form(ring)
            .filter(|h| ring.ideal_is_homogeneous(h.num()))
            .ok_or_else(|| Error::invalid(format!("{} is not homogeneous", f.format(ring))))?;
        let u = u.reduced();
        let gens: Vec<Polynomial> = h.num().nonzero_gens().cloned().collect();
        let f_f = AuxPolynomial::new(ring.nvars(), gens.iter().map(|g| g * u.den()).collect());
        let num = AuxPolynomial::constant(u.num() * h.den());
        self.kr_membership(&FunctionRingElement::new(num, f_f)?, &[])
    }
}

fn principal_generator(i: &Ideal) -> Option<Polynomial> {
    let b = i.basis();
    (b.len() == 1).then(|| b[0].clone())
}

/// Multiplies a polynomial over K by a common denominator.
fn clear_denominators(n: usize, f: &[KElement]) -> Option<AuxPolynomial> {
    if f.iter().all(|c| c.is_zero()) {
        return None;
    }
    let mut d = Polynomial::one(n);
    for c in f {
        if !c.den().divides(&d) {
            d = &d * c.den();
        }
    }
    let cs = f
        .iter()
        .map(|c| (c.num() * &d).exact_div(c.den()).expect("common denominator"))
        .collect();
    Some(AuxPolynomial::new(n, cs))
}

/// The valuation `w` of `V_{M_V}(X)`: `w(Σ c_i X^i) = min v(c_i)`.
#[derive(Clone, Debug)]
pub struct GaussExtension {
    v: GrValuation,
}

pub fn gauss_extension(v: &GrValuation) -> GaussExtension {
    GaussExtension { v: v.clone() }
}

impl GaussExtension {
    pub fn valuation(&self) -> &GrValuation {
        &self.v
    }

    pub fn value(&self, f: &AuxPolynomial) -> Option<Value> {
        f.coeffs().iter().filter_map(|c| self.v.value_poly(c)).min()
    }

    pub fn contains(&self, e: &FunctionRingElement) -> bool {
        match self.value(&e.num) {
            None => true,
            Some(a) => a >= self.value(&e.den).expect("nonzero denominator"),
        }
    }

    /// `z ∈ W` for `z ∈ K`.
    pub fn contains_k(&self, z: &KElement) -> bool {
        z.is_zero() || self.v.value(z).expect("nonzero").iter().find(|&&x| x != 0).map(|&x| x > 0).unwrap_or(true)
    }
}

/// Degree vectors with entries in `[-bound, bound]`.
pub fn degree_window(rank: usize, bound: i64) -> Vec<Degree> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|d: Vec<i64>| {
                (-bound..=bound).map(move |a| {
                    let mut e = d.clone();
                    e.push(a);
                    e
                })
            })
            .collect();
    }
    out
}

/// Degree-α fractions: coprime monomial quotients with exponents at most
/// `exp_bound`, and sums of two numerators of the same degree.
pub fn degree_sample(ring: &GradedRing, alpha: &[i64], exp_bound: u32) -> Vec<KElement> {
    let n = ring.nvars();
    let ms = monomials_up_to(n, exp_bound);
    let deg = |m: &crate::algebra::Monomial| ring.monomial_degree(m);
    let mut out = Vec::new();
    for b in &ms {
        let db = deg(b);
        let target: Degree = db.iter().zip(alpha).map(|(x, y)| x + y).collect();
        let nums: Vec<&crate::algebra::Monomial> = ms.iter().filter(|a| deg(a) == target).collect();
        for a in &nums {
            if a.is_coprime(b) {
                out.push(KElement::from_parts(Polynomial::monomial((*a).clone()), Polynomial::monomial(b.clone())));
            }
        }
        if nums.len() >= 2 {
            let s = &Polynomial::monomial(nums[0].clone()) + &Polynomial::monomial(nums[nums.len() - 1].clone());
            out.push(KElement::from_parts(s, Polynomial::monomial(b.clone())));
        }
    }
    out
}

/// `V = ⊕_α (W ∩ (R_H)_α)` on the sampled degrees: for each degree-α
/// fraction, membership in `W` must equal membership in `V`.
pub fn degree_roundtrip(v: &GrValuation, window: &[Degree], exp_bound: u32) -> CheckReport {
    let ring = v.ring();
    let w = gauss_extension(v);
    let mut rep = CheckReport::new();
    for alpha in window {
        for z in degree_sample(ring, alpha, exp_bound) {
            let agree = w.contains_k(&z) == v.contains(&z);
            rep.record(Verdict::from_bool(agree), || {
                Witness::new(
                    "graded part of W differs from V",
                    vec![v.format(), crate::grading::format_degree(alpha), z.format(ring)],
                )
            });
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Caps;

    fn r1() -> GradedRing {
        GradedRing::standard(&["x", "y"])
    }

    fn r2() -> GradedRing {
        GradedRing::weighted(&["x", "y"], &[1, 2])
    }

    fn mono(r: &GradedRing, gens: &[&[&str]]) -> Vec<FractionalIdeal> {
        gens.iter().map(|g| FractionalIdeal::from_ideal(r.ideal_from(g).unwrap())).collect()
    }

    fn b_handle(r: &GradedRing, mode: KrMode) -> KroneckerHandle {
        let ev = Evaluator::new(r.clone(), Caps::default());
        let corpus = mono(r, &[&["x", "y"], &["x^2", "y"], &["x*y"], &["x", "y^2"]]);
        KroneckerHandle::new(ev, SemistarExpr::NewtonB, mode, &corpus).unwrap()
    }

    #[test]
    fn strictness_element() {
        let r = r2();
        let e = FunctionRingElement::parse(&r, &["x*y"], &["x^2 + y^2"]).unwrap();
        let kr = b_handle(&r, KrMode::Homogeneous);
        assert!(kr.eab_verified());
        assert!(kr.kr_membership(&e, &[]).unwrap().is_true());
        let kl = b_handle(&r, KrMode::Classical);
        assert!(kl.kr_membership(&e, &[]).unwrap().is_false());
    }

    #[test]
    fn x_and_inverse() {
        let r = r1();
        let kr = b_handle(&r, KrMode::Homogeneous);
        let x = FunctionRingElement::parse(&r, &["0", "1"], &["1"]).unwrap();
        assert!(kr.kr_membership(&x, &[]).unwrap().is_true());
        let sample = vec![
            vec![KElement::parse(&r, "x").unwrap(), KElement::parse(&r, "y").unwrap()],
            vec![KElement::parse(&r, "1").unwrap()],
            vec![KElement::parse(&r, "0").unwrap(), KElement::parse(&r, "1").unwrap()],
        ];
        let rep = kr.k_function_ring_axioms_check(&sample, &[]).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checks_run, 4);
    }

    #[test]
    fn valuation_meet_membership() {
        let r = r1();
        let ev = Evaluator::new(r.clone(), Caps::default());
        let w = GrValuation::new(&r, vec![vec![1, 1]]).unwrap();
        let corpus = mono(&r, &[&["x", "y"], &["x^2", "y"], &["x*y"]]);
        let kr = KroneckerHandle::new(ev, SemistarExpr::MeetValuations(vec![w]), KrMode::Homogeneous, &corpus).unwrap();
        assert!(kr.eab_verified());
        let e = FunctionRingElement::parse(&r, &["y"], &["x"]).unwrap();
        assert!(kr.kr_membership(&e, &[]).unwrap().is_true());
    }

    #[test]
    fn ideal_closure_examples() {
        let r = r1();
        let kr = b_handle(&r, KrMode::Homogeneous);
        let f = mono(&r, &[&["x^2", "y^2"]]).remove(0);
        assert!(kr.kr_ideal_closure(&f, &KElement::parse(&r, "x*y").unwrap()).unwrap().is_true());
        assert!(kr.kr_ideal_closure(&f, &KElement::parse(&r, "x^2").unwrap()).unwrap().is_true());
        assert!(kr.kr_ideal_closure(&f, &KElement::parse(&r, "x").unwrap()).unwrap().is_false());

        let ev = Evaluator::new(r.clone(), Caps::default());
        let w = GrValuation::new(&r, vec![vec![1, 2]]).unwrap();
        let corpus = mono(&r, &[&["x", "y"], &["x^2", "y"], &["x*y"]]);
        let kw = KroneckerHandle::new(ev, SemistarExpr::MeetValuations(vec![w]), KrMode::Homogeneous, &corpus).unwrap();
        let f = mono(&r, &[&["x", "y"]]).remove(0);
        assert!(kw.kr_ideal_closure(&f, &KElement::parse(&r, "1").unwrap()).unwrap().is_false());
        assert!(kw.kr_ideal_closure(&f, &KElement::parse(&r, "1/(x + y^2)").unwrap()).is_err());
    }

    #[test]
    fn gauss_extension_and_roundtrip() {
        let r = r1();
        let v = GrValuation::new(&r, vec![vec![1, 2]]).unwrap();
        let w = gauss_extension(&v);
        assert!(!w.contains_k(&KElement::parse(&r, "x/y").unwrap()));
        let x = FunctionRingElement::parse(&r, &["0", "1"], &["1"]).unwrap();
        assert_eq!(w.value(x.num()), Some(vec![0]));
        assert!(w.contains(&x));
        let rep = degree_roundtrip(&v, &degree_window(1, 4), 4);
        assert!(rep.passed());
        assert!(rep.checks_run > 50);
    }
}
