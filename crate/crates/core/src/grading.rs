//! Z^d-gradings of Q[x_1..x_n] by nonnegative degree matrices.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{kernel, MonomialIndex};
use crate::algebra::{
    eliminate_front, format_fraction, format_polynomial, parse_fraction, parse_polynomial, Ideal,
    Monomial, Polynomial,
};
use crate::verdict::Verdict;
use crate::{Error, Result};

/// A degree vector; negative entries occur for elements of the quotient field.
pub type Degree = Vec<i64>;

pub fn format_degree(d: &[i64]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Q[x_1..x_n] graded by the columns of a `d x n` matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedRing {
    vars: Vec<String>,
    degrees: Vec<Vec<u32>>,
}

impl GradedRing {
    /// `degrees` holds the rows of the degree matrix.
    pub fn new(vars: Vec<String>, degrees: Vec<Vec<u32>>) -> Result<GradedRing> {
        if vars.is_empty() {
            return Err(Error::invalid("a ring needs at least one variable"));
        }
        if degrees.is_empty() {
            return Err(Error::invalid("the degree matrix needs at least one row"));
        }
        for row in &degrees {
            if row.len() != vars.len() {
                return Err(Error::ArityMismatch {
                    expected: vars.len(),
                    found: row.len(),
                });
            }
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = !v.is_empty()
                && v.chars().next().map(|c| c.is_alphabetic() || c == '_') == Some(true)
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok || vars[..i].contains(v) {
                return Err(Error::invalid(format!("bad or repeated variable name '{v}'")));
            }
        }
        Ok(GradedRing { vars, degrees })
    }

    /// Standard grading: every variable has degree 1.
    pub fn standard(vars: &[&str]) -> GradedRing {
        let n = vars.len();
        GradedRing::new(vars.iter().map(|s| s.to_string()).collect(), vec![vec![1; n]])
            .expect("valid standard ring")
    }

    /// Single-row grading with the given variable degrees.
    pub fn weighted(vars: &[&str], degrees: &[u32]) -> GradedRing {
        GradedRing::new(vars.iter().map(|s| s.to_string()).collect(), vec![degrees.to_vec()])
            .expect("valid weighted ring")
    }

    /// Each variable gets its own unit degree vector, so homogeneous
    /// elements are exactly the terms.
    pub fn fine(vars: &[&str]) -> GradedRing {
        let n = vars.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        GradedRing::new(vars.iter().map(|s| s.to_string()).collect(), rows)
            .expect("valid fine ring")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn degree_rows(&self) -> &[Vec<u32>] {
        &self.degrees
    }

    pub fn is_trivially_graded(&self) -> bool {
        self.degrees.iter().all(|r| r.iter().all(|&d| d == 0))
    }

    pub fn var_degree(&self, i: usize) -> Degree {
        self.degrees.iter().map(|r| r[i] as i64).collect()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Degree {
        self.degrees
            .iter()
            .map(|r| {
                r.iter()
                    .zip(m.exponents())
                    .map(|(&d, &e)| d as i64 * e as i64)
                    .sum()
            })
            .collect()
    }

    pub fn zero_degree(&self) -> Degree {
        vec![0; self.rank()]
    }

    // ---- text format ----

    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        parse_polynomial(s, &self.vars)
    }

    pub fn parse_fraction(&self, s: &str) -> Result<(Polynomial, Polynomial)> {
        parse_fraction(s, &self.vars)
    }

    pub fn fmt(&self, p: &Polynomial) -> String {
        format_polynomial(p, &self.vars)
    }

    pub fn fmt_fraction(&self, num: &Polynomial, den: &Polynomial) -> String {
        format_fraction(num, den, &self.vars)
    }

    pub fn fmt_ideal(&self, i: &Ideal) -> String {
        let g: Vec<String> = i.gens().iter().map(|p| self.fmt(p)).collect();
        format!("({})", g.join(", "))
    }

    // ---- elements ----

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn ideal(&self, gens: Vec<Polynomial>) -> Result<Ideal> {
        Ideal::new(self.nvars(), gens)
    }

    /// Parses a list of generators.
    pub fn ideal_from(&self, gens: &[&str]) -> Result<Ideal> {
        let ps = gens.iter().map(|s| self.parse(s)).collect::<Result<Vec<_>>>()?;
        self.ideal(ps)
    }

    /// The ideal generated by all variables.
    pub fn irrelevant_ideal(&self) -> Ideal {
        Ideal::from_gens(self.nvars(), (0..self.nvars()).map(|i| self.var(i)).collect())
    }

    /// Homogeneous components, sorted by degree.
    pub fn decompose(&self, f: &Polynomial) -> Vec<(Degree, Polynomial)> {
        let mut parts: BTreeMap<Degree, Polynomial> = BTreeMap::new();
        for (m, c) in f.terms() {
            parts
                .entry(self.monomial_degree(m))
                .or_insert_with(|| Polynomial::zero(self.nvars()))
                .add_term(m.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    pub fn components(&self, f: &Polynomial) -> Vec<Polynomial> {
        self.decompose(f).into_iter().map(|(_, p)| p).collect()
    }

    /// Nonzero and homogeneous, i.e. an element of H.
    pub fn is_homogeneous(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return false;
        }
        let mut it = f.monomials();
        let d0 = self.monomial_degree(it.next().expect("nonzero"));
        it.all(|m| self.monomial_degree(m) == d0)
    }

    pub fn degree(&self, f: &Polynomial) -> Option<Degree> {
        if self.is_homogeneous(f) {
            Some(self.monomial_degree(f.monomials().next().expect("nonzero")))
        } else {
            None
        }
    }

    // ---- content ideals ----

    /// `C(f)`, generated by the homogeneous components of `f`.
    pub fn content_c(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::invalid("content of the zero polynomial"));
        }
        Ok(Ideal::from_gens(self.nvars(), self.components(f)))
    }

    /// `A_F`, the sum of `C` of the coefficients of `F` in R[X].
    pub fn content_a(&self, f: &AuxPolynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::invalid("content of the zero polynomial"));
        }
        let gens = f
            .coeffs()
            .iter()
            .flat_map(|c| self.components(c))
            .collect();
        Ok(Ideal::from_gens(self.nvars(), gens))
    }

    /// Classical coefficient ideal `c(F)`.
    pub fn content_classical(&self, f: &AuxPolynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::invalid("content of the zero polynomial"));
        }
        Ok(Ideal::from_gens(
            self.nvars(),
            f.coeffs().iter().filter(|c| !c.is_zero()).cloned().collect(),
        ))
    }

    // ---- homogeneity tests ----

    /// Every component of every generator lies in the ideal.
    pub fn ideal_is_homogeneous(&self, i: &Ideal) -> bool {
        i.gens()
            .iter()
            .all(|g| self.decompose(g).iter().all(|(_, c)| i.member(c)))
    }

    /// Membership in the largest homogeneous subideal: every component of
    /// `f` lies in `i`.
    pub fn in_homogeneous_part(&self, f: &Polynomial, i: &Ideal) -> bool {
        self.components(f).iter().all(|c| i.member(c))
    }

    /// Largest homogeneous subideal, computed exactly.
    ///
    /// With `psi(f) = f(t^D x)`, a homogeneous `f` of degree `a` satisfies
    /// `psi(f) = t^a f`, and the subideal is `psi(I)Q[t^±, x] ∩ Q[x]`.
    pub fn largest_homogeneous_subideal(&self, i: &Ideal) -> Ideal {
        if i.is_zero() || self.ideal_is_homogeneous(i) {
            return i.clone();
        }
        let rows: Vec<&Vec<u32>> = self.degrees.iter().filter(|r| r.iter().any(|&d| d > 0)).collect();
        let d = rows.len();
        let n = self.nvars();
        // variables: s, t_1..t_d, x_1..x_n
        let total = 1 + d + n;
        let mut gens = Vec::new();
        for g in i.nonzero_gens() {
            let mut out = Polynomial::zero(total);
            for (m, c) in g.terms() {
                let mut e = vec![0u32; total];
                for (k, row) in rows.iter().enumerate() {
                    e[1 + k] = row.iter().zip(m.exponents()).map(|(a, b)| a * b).sum();
                }
                e[1 + d..].copy_from_slice(m.exponents());
                out.add_term(Monomial::new(e), c.clone());
            }
            // strip the t-content, a unit after inverting t
            if let Some(content) = out.monomial_content() {
                let mut e = content.exponents().to_vec();
                e[0] = 0;
                e[1 + d..].iter_mut().for_each(|x| *x = 0);
                out = out.exact_div(&Polynomial::monomial(Monomial::new(e))).expect("content divides");
            }
            gens.push(out);
        }
        let mut e = vec![1u32; 1 + d];
        e.extend(vec![0; n]);
        gens.push(&Polynomial::monomial(Monomial::new(e)) - &Polynomial::one(total));
        eliminate_front(&gens, 1 + d, n)
    }

    /// Homogeneous members of `i` whose monomials have total degree at most
    /// `cap`, found degree by degree with linear algebra on normal forms.
    pub fn capped_homogeneous_subideal(&self, i: &Ideal, cap: u32) -> Ideal {
        let n = self.nvars();
        let mut by_degree: BTreeMap<Degree, Vec<Monomial>> = BTreeMap::new();
        for m in monomials_up_to(n, cap) {
            by_degree.entry(self.monomial_degree(&m)).or_default().push(m);
        }
        let mut found = Vec::new();
        for (_, ms) in by_degree {
            let nfs: Vec<Polynomial> = ms
                .iter()
                .map(|m| i.normal_form(&Polynomial::monomial(m.clone())))
                .collect();
            let idx = MonomialIndex::new(nfs.iter());
            // columns are the monomials; rows are coordinates of normal forms
            let cols: Vec<Vec<_>> = nfs.iter().map(|p| idx.vector(p).expect("indexed")).collect();
            let rows: Vec<Vec<_>> = (0..idx.len())
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect();
            for v in kernel(&rows, ms.len()) {
                let p = Polynomial::from_terms(n, ms.iter().cloned().zip(v));
                if !p.is_zero() && !found.iter().any(|q: &Polynomial| q == &p) {
                    found.push(p);
                }
            }
        }
        Ideal::from_gens(n, found)
    }

    /// Does `i` contain a nonzero homogeneous element?
    ///
    /// Principal ideals use the generator test; other ideals use the exact
    /// largest homogeneous subideal.
    pub fn subideal_nonzero(&self, i: &Ideal) -> Verdict {
        let gens: Vec<&Polynomial> = i.nonzero_gens().collect();
        if gens.is_empty() {
            return Verdict::False;
        }
        if gens.len() == 1 {
            return Verdict::from_bool(self.is_homogeneous(gens[0]));
        }
        Verdict::from_bool(!self.largest_homogeneous_subideal(i).is_zero())
    }

    // ---- Dedekind-Mertens ----

    /// Least `m` in `2..=bound` with `C(g)^m C(f) = C(g)^(m-1) C(fg)`.
    pub fn dedekind_mertens_exponent(&self, f: &Polynomial, g: &Polynomial, bound: u32) -> Result<DmOutcome> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::invalid("Dedekind-Mertens needs nonzero polynomials"));
        }
        if bound < 2 {
            return Err(Error::invalid("Dedekind-Mertens bound must be at least 2"));
        }
        let cf = self.content_c(f)?;
        let cg = self.content_c(g)?;
        let cfg = self.content_c(&(f * g))?;
        // power = C(g)^(m-1), starting at m = 2
        let mut power = cg.clone();
        for m in 2..=bound {
            let lhs = power.product(&cg).canonical().product(&cf);
            let rhs = power.product(&cfg);
            if lhs.equals(&rhs) {
                return Ok(DmOutcome::Exponent(m));
            }
            power = power.product(&cg).canonical();
        }
        Ok(DmOutcome::BoundExhausted(bound))
    }

    /// The homogeneous ideal `J0 = (C(g_1)+...+C(g_n))^(n m)` with its
    /// certificate `C(f) J0 ⊆ I`.
    pub fn homogeneous_witness_j0(&self, f: &Polynomial, j: &Ideal, i: &Ideal, bound: u32) -> Result<J0Outcome> {
        let gs: Vec<&Polynomial> = j.nonzero_gens().collect();
        if gs.is_empty() || f.is_zero() {
            return Err(Error::invalid("J0 needs nonzero f and J"));
        }
        if !self.ideal_is_homogeneous(i) {
            return Err(Error::invalid("J0 needs a homogeneous ideal I"));
        }
        if !gs.iter().all(|g| i.member(&(f * *g))) {
            return Err(Error::invalid("precondition fJ ⊆ I fails"));
        }
        let mut m = 2;
        for g in &gs {
            match self.dedekind_mertens_exponent(f, g, bound)? {
                DmOutcome::Exponent(k) => m = m.max(k),
                DmOutcome::BoundExhausted(b) => return Ok(J0Outcome::BoundExhausted(b)),
            }
        }
        let mut sum = Ideal::zero(self.nvars());
        for g in &gs {
            sum = sum.sum(&self.content_c(g)?);
        }
        let sum = sum.canonical();
        let exponent = gs.len() as u32 * m;
        let mut j0 = Ideal::unit(self.nvars());
        for _ in 0..exponent {
            j0 = j0.product(&sum).canonical();
        }
        let homogeneous = self.ideal_is_homogeneous(&j0);
        let contained = i.contains(&self.content_c(f)?.product(&j0));
        Ok(J0Outcome::Witness(J0Witness {
            m,
            exponent,
            j0,
            homogeneous,
            contained,
        }))
    }
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}] deg {:?}", self.vars.join(","), self.degrees)
    }
}

/// All monomials in `n` variables of total degree at most `cap`.
pub fn monomials_up_to(n: usize, cap: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, cap, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DmOutcome {
    Exponent(u32),
    BoundExhausted(u32),
}

#[derive(Clone, Debug)]
pub struct J0Witness {
    pub m: u32,
    pub exponent: u32,
    pub j0: Ideal,
    /// `J0` passed the homogeneity test.
    pub homogeneous: bool,
    /// `C(f) J0 ⊆ I` was verified.
    pub contained: bool,
}

#[derive(Clone, Debug)]
pub enum J0Outcome {
    Witness(J0Witness),
    BoundExhausted(u32),
}

/// A polynomial in an auxiliary indeterminate `X` with coefficients in R;
/// `coeffs[i]` is the coefficient of `X^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AuxPolynomial {
    nvars: usize,
    coeffs: Vec<Polynomial>,
}

impl AuxPolynomial {
    pub fn new(nvars: usize, mut coeffs: Vec<Polynomial>) -> AuxPolynomial {
        while coeffs.last().map(|c| c.is_zero()) == Some(true) {
            coeffs.pop();
        }
        AuxPolynomial { nvars, coeffs }
    }

    pub fn constant(p: Polynomial) -> AuxPolynomial {
        AuxPolynomial::new(p.nvars(), vec![p])
    }

    /// `X^k`.
    pub fn x_power(nvars: usize, k: usize) -> AuxPolynomial {
        let mut c = vec![Polynomial::zero(nvars); k];
        c.push(Polynomial::one(nvars));
        AuxPolynomial::new(nvars, c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Polynomial {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn mul(&self, other: &AuxPolynomial) -> AuxPolynomial {
        if self.is_zero() || other.is_zero() {
            return AuxPolynomial::new(self.nvars, vec![]);
        }
        let mut c = vec![Polynomial::zero(self.nvars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        AuxPolynomial::new(self.nvars, c)
    }

    pub fn add(&self, other: &AuxPolynomial) -> AuxPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        AuxPolynomial::new(self.nvars, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn scale(&self, p: &Polynomial) -> AuxPolynomial {
        AuxPolynomial::new(self.nvars, self.coeffs.iter().map(|c| c * p).collect())
    }

    pub fn format(&self, ring: &GradedRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = ring.fmt(c);
            let cs = if c.num_terms() > 1 && i > 0 { format!("({cs})") } else { cs };
            parts.push(match i {
                0 => cs,
                1 if c.is_one() => "X".to_string(),
                1 => format!("{cs}*X"),
                _ if c.is_one() => format!("X^{i}"),
                _ => format!("{cs}*X^{i}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for AuxPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r1() -> GradedRing {
        GradedRing::standard(&["x", "y"])
    }
    fn r2() -> GradedRing {
        GradedRing::weighted(&["x", "y"], &[1, 2])
    }
    fn r0() -> GradedRing {
        GradedRing::weighted(&["x", "y"], &[0, 0])
    }

    #[test]
    fn decompose_examples() {
        let r = r1();
        let parts = r.decompose(&r.parse("x + y^2").unwrap());
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, vec![1]);
        assert_eq!(r.fmt(&parts[1].1), "y^2");
        assert_eq!(r.decompose(&r.parse("x^2 + x*y + y^2").unwrap()).len(), 1);
        let s = r2();
        let parts = s.decompose(&s.parse("x + y^2").unwrap());
        assert_eq!(parts[1].0, vec![4]);
        assert!(r.decompose(&Polynomial::zero(2)).is_empty());
    }

    #[test]
    fn content_examples() {
        let r = r1();
        let c = r.content_c(&r.parse("x + y^2").unwrap()).unwrap();
        assert!(c.equals(&r.ideal_from(&["x", "y^2"]).unwrap()));
        let c = r.content_c(&r.parse("x + y + x^2 + x*y").unwrap()).unwrap();
        assert!(c.equals(&r.ideal_from(&["x + y"]).unwrap()));
        // trivial grading: A_F is the coefficient ideal
        let t = r0();
        let f = AuxPolynomial::new(2, vec![t.parse("x + y^2").unwrap(), t.parse("y").unwrap()]);
        assert!(t.content_a(&f).unwrap().equals(&t.content_classical(&f).unwrap()));
        assert!(r.content_c(&Polynomial::zero(2)).is_err());
    }

    #[test]
    fn homogeneity_examples() {
        let r = r1();
        assert!(r.ideal_is_homogeneous(&r.ideal_from(&["x", "y^2"]).unwrap()));
        let i = r.ideal_from(&["x + y^2"]).unwrap();
        assert!(!r.ideal_is_homogeneous(&i));
        assert_eq!(r.subideal_nonzero(&i), Verdict::False);
        assert!(r0().ideal_is_homogeneous(&r0().ideal_from(&["x + y^2"]).unwrap()));
    }

    #[test]
    fn largest_subideal_matches_capped_search() {
        let r = r1();
        let i = r.ideal_from(&["x + y^2", "x*y"]).unwrap();
        let exact = r.largest_homogeneous_subideal(&i);
        let capped = r.capped_homogeneous_subideal(&i, 5);
        assert!(r.ideal_is_homogeneous(&exact));
        assert!(i.contains(&exact));
        assert!(exact.contains(&capped));
        assert!(capped.contains(&exact));
        // x*y and y^3 = y(x + y^2) - x*y lie in it
        assert!(exact.member(&r.parse("y^3").unwrap()));
        assert!(!exact.member(&r.parse("x").unwrap()));
    }

    #[test]
    fn dedekind_mertens_curated() {
        let r = r2();
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(r.dedekind_mertens_exponent(&p("x + y"), &p("x - y"), 10).unwrap(), DmOutcome::Exponent(2));
        assert_eq!(r.dedekind_mertens_exponent(&p("x + y"), &p("x + y"), 10).unwrap(), DmOutcome::Exponent(2));
        assert_eq!(r.dedekind_mertens_exponent(&p("x^2"), &p("x + y + 1"), 10).unwrap(), DmOutcome::Exponent(2));
    }

    #[test]
    fn j0_witness_examples() {
        let r = r1();
        let p = |s: &str| r.parse(s).unwrap();
        let out = r
            .homogeneous_witness_j0(&p("x"), &r.ideal_from(&["y"]).unwrap(), &r.ideal_from(&["x*y"]).unwrap(), 10)
            .unwrap();
        let J0Outcome::Witness(w) = out else { panic!("bound") };
        assert_eq!(w.m, 2);
        assert!(w.j0.equals(&r.ideal_from(&["y^2"]).unwrap()));
        assert!(w.homogeneous && w.contained);

        let m = r.ideal_from(&["x", "y"]).unwrap();
        let i = r.ideal_from(&["x", "y^2"]).unwrap().product(&m);
        let J0Outcome::Witness(w) = r.homogeneous_witness_j0(&p("x + y^2"), &m, &i, 10).unwrap() else {
            panic!("bound")
        };
        assert!(w.homogeneous && w.contained);

        let bad = r.homogeneous_witness_j0(&p("x"), &m, &r.ideal_from(&["y"]).unwrap(), 10);
        assert!(bad.is_err());
    }
}
