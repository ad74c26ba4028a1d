//! Gauss valuations from lexicographic weight stacks, their graded
//! valuation overrings, and Newton-polyhedron closure of monomial ideals.

use std::fmt;

use crate::algebra::lp::feasible_point;
use crate::algebra::{rat, Ideal, Monomial, Polynomial, Rational};
use crate::fractional::{rh_membership, FractionalIdeal, KElement};
use crate::grading::GradedRing;
use crate::verdict::Verdict;
use crate::{Error, Result};

/// A value in Z^r, ordered lexicographically.
pub type Value = Vec<i64>;

pub fn format_value(v: &[i64]) -> String {
    if v.len() == 1 {
        return v[0].to_string();
    }
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn sub(a: &[i64], b: &[i64]) -> Value {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn is_nonneg(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).map(|&x| x > 0).unwrap_or(true)
}

/// The Gauss valuation of a weight stack and its graded valuation ring
/// `V = ⊕_α {z ∈ (R_H)_α : v(z) >= 0}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrValuation {
    ring: GradedRing,
    weights: Vec<Vec<i64>>,
}

impl GrValuation {
    /// Every variable must have lexicographically nonnegative value.
    pub fn new(ring: &GradedRing, weights: Vec<Vec<i64>>) -> Result<GrValuation> {
        if weights.is_empty() {
            return Err(Error::invalid("a weight stack needs at least one row"));
        }
        for row in &weights {
            if row.len() != ring.nvars() {
                return Err(Error::ArityMismatch {
                    expected: ring.nvars(),
                    found: row.len(),
                });
            }
        }
        for i in 0..ring.nvars() {
            let col: Vec<i64> = weights.iter().map(|r| r[i]).collect();
            if !is_nonneg(&col) {
                return Err(Error::invalid(format!(
                    "variable {} has negative value {}",
                    ring.vars()[i],
                    format_value(&col)
                )));
            }
        }
        Ok(GrValuation {
            ring: ring.clone(),
            weights,
        })
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn zero_value(&self) -> Value {
        vec![0; self.rank()]
    }

    pub fn monomial_value(&self, m: &Monomial) -> Value {
        self.weights
            .iter()
            .map(|r| r.iter().zip(m.exponents()).map(|(&w, &e)| w * e as i64).sum())
            .collect()
    }

    /// Lex-min of the monomial values; `None` for zero.
    pub fn value_poly(&self, f: &Polynomial) -> Option<Value> {
        f.monomials().map(|m| self.monomial_value(m)).min()
    }

    pub fn value(&self, z: &KElement) -> Option<Value> {
        let a = self.value_poly(z.num())?;
        let b = self.value_poly(z.den()).expect("nonzero denominator");
        Some(sub(&a, &b))
    }

    /// `z ∈ V`; an error when `z` is outside R_H.
    pub fn in_ring(&self, z: &KElement) -> Result<bool> {
        if z.is_zero() {
            return Ok(true);
        }
        let comps = z
            .components(&self.ring)
            .ok_or_else(|| Error::NotGraded(z.format(&self.ring)))?;
        Ok(comps
            .iter()
            .all(|c| is_nonneg(&self.value(c).expect("nonzero component"))))
    }

    /// `z ∈ V`, with elements outside R_H counted as non-members.
    pub fn contains(&self, z: &KElement) -> bool {
        self.in_ring(z).unwrap_or(false)
    }

    /// Principal generator of `F·V` for homogeneous `F`: the generator of
    /// least value, ties going to the first listed.
    pub fn extend_fv(&self, f: &FractionalIdeal) -> Result<ExtendedFV> {
        let gens = homogeneous_generators(&self.ring, f)?;
        let mut best: Option<(KElement, Value)> = None;
        for g in gens {
            let v = self.value(&g).expect("nonzero generator");
            if best.as_ref().map(|(_, bv)| v < *bv).unwrap_or(true) {
                best = Some((g, v));
            }
        }
        let (generator, value) = best.ok_or_else(|| Error::invalid("zero fractional ideal"))?;
        Ok(ExtendedFV { generator, value })
    }

    /// `z ∈ F·V` for homogeneous `F`.
    pub fn fv_member(&self, fv: &ExtendedFV, z: &KElement) -> bool {
        if z.is_zero() {
            return true;
        }
        let Some(comps) = z.components(&self.ring) else {
            return false;
        };
        comps.iter().all(|c| self.value(c).expect("nonzero") >= fv.value)
    }

    /// `z ∈ F·V` for arbitrary `F`.
    ///
    /// Exact for homogeneous or principal `F`. Otherwise membership in
    /// `F·R[U]` for a set `U ⊆ V` of monomial ratios proves it, and the
    /// value bound or the R_H test disproves it; in between the answer is
    /// unknown.
    pub fn module_member(&self, f: &FractionalIdeal, z: &KElement, ascent_cap: u32) -> Verdict {
        if z.is_zero() {
            return Verdict::True;
        }
        if let Some(h) = f.homogeneous_form(&self.ring).filter(|h| self.ring.ideal_is_homogeneous(h.num())) {
            let fv = self.extend_fv(&h).expect("homogeneous");
            return Verdict::from_bool(self.fv_member(&fv, z));
        }
        let gens = f.generators();
        if gens.len() == 1 {
            let q = z.mul(&gens[0].inv().expect("nonzero"));
            return Verdict::from_bool(self.contains(&q));
        }
        let min_gen = gens.iter().filter_map(|g| self.value(g)).min().expect("nonzero");
        if self.value(z).expect("nonzero") < min_gen {
            return Verdict::False;
        }
        let in_rh = rh_membership(&self.ring, z).expect("nonzero");
        if !in_rh && gens.iter().all(|g| rh_membership(&self.ring, g).unwrap_or(false)) {
            return Verdict::False;
        }
        let ratios = self.ratio_candidates();
        if !ratios.is_empty() {
            let ov = crate::semistar::overring::Overring::adjoin(&self.ring, ratios);
            if ov.module_member(f, z) {
                return Verdict::True;
            }
        }
        Verdict::Unknown { cap: ascent_cap }
    }

    /// Ratios `x_i/x_j` and `1/x_j` lying in V.
    pub fn ratio_candidates(&self) -> Vec<KElement> {
        let n = self.ring.nvars();
        let mut out = Vec::new();
        for j in 0..n {
            let xj = self.ring.var(j);
            for i in 0..n {
                if i == j {
                    continue;
                }
                let z = KElement::from_parts(self.ring.var(i), xj.clone());
                if self.contains(&z) {
                    out.push(z);
                }
            }
            let z = KElement::from_parts(self.ring.one(), xj.clone());
            if self.contains(&z) {
                out.push(z);
            }
        }
        out
    }

    pub fn format(&self) -> String {
        let rows: Vec<String> = self
            .weights
            .iter()
            .map(|r| {
                let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(", "))
            })
            .collect();
        format!("w[{}]", rows.join(", "))
    }
}

impl fmt::Debug for GrValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

/// Homogeneous generators of a homogeneous fractional ideal: the components
/// of its numerator generators over a homogeneous denominator.
pub fn homogeneous_generators(ring: &GradedRing, f: &FractionalIdeal) -> Result<Vec<KElement>> {
    let h = f
        .homogeneous_form(ring)
        .ok_or_else(|| Error::NotGraded(f.format(ring)))?;
    if !ring.ideal_is_homogeneous(h.num()) {
        return Err(Error::invalid(format!("{} is not homogeneous", f.format(ring))));
    }
    let mut out: Vec<KElement> = Vec::new();
    for g in h.num().nonzero_gens() {
        for c in ring.components(g) {
            let z = KElement::from_parts(c, h.den().clone()).cancel_monomials();
            if !out.contains(&z) {
                out.push(z);
            }
        }
    }
    Ok(out)
}

/// `F·V = aV` with `a` the chosen generator.
#[derive(Clone, Debug)]
pub struct ExtendedFV {
    pub generator: KElement,
    pub value: Value,
}

/// Membership in `F^{∧_Y} = ⋂_{V ∈ Y} F·V`.
pub fn wedge_member(ys: &[GrValuation], f: &FractionalIdeal, z: &KElement, cap: u32) -> Verdict {
    Verdict::all(ys.iter().map(|v| v.module_member(f, z, cap)))
}

// ---- Newton polyhedra ----

/// Exponent vectors of the generators of a monomial ideal.
pub fn monomial_exponents(i: &Ideal) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for g in i.nonzero_gens() {
        if !g.is_term() {
            return Err(Error::NotMonomial(format!("{g:?}")));
        }
        out.push(g.monomials().next().expect("term").exponents().to_vec());
    }
    Ok(out)
}

/// Is `c` in `conv(points) + R^n_{>=0}`? Exact rational feasibility.
pub fn newton_contains(points: &[Vec<u32>], c: &[u32]) -> bool {
    if points.is_empty() {
        return false;
    }
    if points.iter().any(|a| a.iter().zip(c).all(|(x, y)| x <= y)) {
        return true;
    }
    let k = points.len();
    let n = c.len();
    // variables: lambda_1..lambda_k, slack_1..slack_n
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row: Vec<Rational> = points.iter().map(|p| rat(p[j] as i64)).collect();
        row.extend((0..n).map(|l| rat(i64::from(l == j))));
        a.push(row);
        b.push(rat(c[j] as i64));
    }
    let mut row: Vec<Rational> = vec![rat(1); k];
    row.extend(vec![rat(0); n]);
    a.push(row);
    b.push(rat(1));
    feasible_point(&a, &b).is_some()
}

/// Integral closure of a monomial ideal: the monomials on or above its
/// Newton polyhedron, enumerated in the bounding box of the generators.
pub fn b_closure_monomial(i: &Ideal) -> Result<Ideal> {
    let pts = monomial_exponents(i)?;
    let n = i.nvars();
    if pts.is_empty() {
        return Ok(Ideal::zero(n));
    }
    let bounds: Vec<u32> = (0..n).map(|j| pts.iter().map(|p| p[j]).max().unwrap_or(0)).collect();
    let mut members: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        if newton_contains(&pts, &cur) {
            members.push(cur.clone());
        }
        let mut j = 0;
        loop {
            if j == n {
                return Ok(minimal_monomial_ideal(n, members));
            }
            if cur[j] < bounds[j] {
                cur[j] += 1;
                break;
            }
            cur[j] = 0;
            j += 1;
        }
    }
}

fn minimal_monomial_ideal(n: usize, pts: Vec<Vec<u32>>) -> Ideal {
    let minimal: Vec<&Vec<u32>> = pts
        .iter()
        .filter(|p| {
            !pts.iter()
                .any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
        })
        .collect();
    let mut ms: Vec<Monomial> = minimal.into_iter().map(|p| Monomial::new(p.clone())).collect();
    ms.sort();
    ms.reverse();
    Ideal::from_monomials(n, ms)
}

/// Membership of a polynomial in the integral closure of a monomial ideal:
/// every monomial of `f` must lie on or above the Newton polyhedron.
pub fn newton_member(points: &[Vec<u32>], f: &Polynomial) -> bool {
    f.monomials().all(|m| newton_contains(points, m.exponents()))
}
