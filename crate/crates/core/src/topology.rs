//! Finite samples of `Zar_h(R)`, `Spec_h(R)` and `SStar(R)` with their
//! subbasic opens, checked extensionally.

use serde::Serialize;

use crate::algebra::{Ideal, Polynomial};
use crate::fractional::{FractionalIdeal, KElement};
use crate::grading::{monomials_up_to, GradedRing};
use crate::grvaluation::GrValuation;
use crate::kronecker::{gauss_extension, FunctionRingElement};
use crate::semistar::{ClosureHandle, Evaluator, Overring, SemistarExpr};
use crate::verdict::{CheckReport, Verdict, Witness};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum Point {
    Valuation(GrValuation),
    /// A homogeneous prime, trusted to be prime.
    Prime(Ideal),
    Star(SemistarExpr),
}

#[derive(Clone, Debug)]
pub enum SubbasicOpen {
    /// `Zar_h(R[u])`, `u` homogeneous.
    Zar(KElement),
    /// `D_h(f)`, `f` homogeneous.
    D(Polynomial),
    /// `V_E = {⋆ : 1 ∈ E^⋆}`.
    W(FractionalIdeal),
}

impl Point {
    pub fn format(&self, ring: &GradedRing) -> String {
        match self {
            Point::Valuation(v) => v.format(),
            Point::Prime(p) => ring.fmt_ideal(p),
            Point::Star(s) => s.format(ring),
        }
    }
}

impl SubbasicOpen {
    pub fn format(&self, ring: &GradedRing) -> String {
        match self {
            SubbasicOpen::Zar(u) => format!("Zar(R[{}])", u.format(ring)),
            SubbasicOpen::D(f) => format!("D({})", ring.fmt(f)),
            SubbasicOpen::W(e) => format!("W{}", e.format(ring)),
        }
    }
}

pub fn point_open_membership(ev: &Evaluator, point: &Point, open: &SubbasicOpen) -> Result<Verdict> {
    let ring = ev.ring();
    match (point, open) {
        (Point::Valuation(v), SubbasicOpen::Zar(u)) => {
            if !u.is_zero() && !u.is_homogeneous(ring) {
                return Err(Error::NotGraded(u.format(ring)));
            }
            Ok(Verdict::from_bool(v.in_ring(u)?))
        }
        (Point::Prime(p), SubbasicOpen::D(f)) => {
            if !ring.is_homogeneous(f) {
                return Err(Error::NotGraded(ring.fmt(f)));
            }
            Ok(Verdict::from_bool(!p.member(f)))
        }
        (Point::Star(s), SubbasicOpen::W(e)) => {
            let one = KElement::from_poly(ring.one());
            Ok(ev.eval(s, e)?.contains(&one))
        }
        _ => Err(Error::invalid(format!(
            "point {} cannot be tested against {}",
            point.format(ring),
            open.format(ring)
        ))),
    }
}

/// The union of adjunction sets describing where an element of K is in
/// `V_{M_V}`: one set per pair of chosen components.
#[derive(Clone, Debug)]
pub struct Rewriting {
    pub pieces: Vec<Vec<KElement>>,
    pub report: CheckReport,
}

/// `{a_λ/a_i} ∪ {b_μ/b_j} ∪ {a_i/b_j}` for all `i, j`.
fn rewrite_pieces(a: &[KElement], b: &[KElement]) -> Vec<Vec<KElement>> {
    if a.is_empty() {
        // zero lies in every V
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for ai in a {
        for bj in b {
            let inv_a = ai.inv().expect("nonzero component");
            let inv_b = bj.inv().expect("nonzero component");
            let mut piece: Vec<KElement> = a.iter().map(|al| al.mul(&inv_a).cancel_monomials()).collect();
            piece.extend(b.iter().map(|bm| bm.mul(&inv_b).cancel_monomials()));
            piece.push(ai.mul(&inv_b).cancel_monomials());
            out.push(piece);
        }
    }
    out
}

fn in_union(ev: &Evaluator, v: &GrValuation, pieces: &[Vec<KElement>]) -> Result<Verdict> {
    let point = Point::Valuation(v.clone());
    let mut acc = Verdict::False;
    for piece in pieces {
        let mut inner = Verdict::True;
        for u in piece {
            inner = inner.and(point_open_membership(ev, &point, &SubbasicOpen::Zar(u.clone()))?);
        }
        acc = acc.or(inner);
    }
    Ok(acc)
}

fn components(ring: &GradedRing, ps: &[Polynomial]) -> Vec<KElement> {
    ps.iter()
        .flat_map(|p| ring.components(p))
        .map(KElement::from_poly)
        .collect()
}

/// The preimage of `{V : x ∈ V_{M_V}}` as a finite union of `Zar_h(R[..])`,
/// checked against the value comparison `v(a) >= v(b)` on every sampled V.
pub fn preimage_rewrites(ev: &Evaluator, x: &KElement, sample: &[GrValuation]) -> Result<Rewriting> {
    let ring = ev.ring();
    let a = components(ring, std::slice::from_ref(x.num()));
    let b = components(ring, std::slice::from_ref(x.den()));
    let pieces = rewrite_pieces(&a, &b);
    let mut report = CheckReport::new();
    for v in sample {
        let left = gauss_extension(v).contains_k(x);
        let right = in_union(ev, v, &pieces)?;
        report.record(right.iff(Verdict::from_bool(left)), || {
            Witness::new("rewritten union disagrees", vec![x.format(ring), v.format()])
        });
    }
    Ok(Rewriting { pieces, report })
}

/// The same for an element of `K(X)`, using the components of all
/// coefficients, against `V_{M_V}(X)`.
pub fn preimage_rewrites_function(ev: &Evaluator, e: &FunctionRingElement, sample: &[GrValuation]) -> Result<Rewriting> {
    let ring = ev.ring();
    let a = components(ring, e.num().coeffs());
    let b = components(ring, e.den().coeffs());
    let pieces = rewrite_pieces(&a, &b);
    let mut report = CheckReport::new();
    for v in sample {
        let left = gauss_extension(v).contains(e);
        let right = in_union(ev, v, &pieces)?;
        report.record(right.iff(Verdict::from_bool(left)), || {
            Witness::new("rewritten union disagrees", vec![e.format(ring), v.format()])
        });
    }
    Ok(Rewriting { pieces, report })
}

/// Specialization preorder of a finite sample with respect to a family of
/// subbasic opens.
#[derive(Clone, Debug, Serialize)]
pub struct Specialization {
    /// `membership[p][u]`: does point `p` lie in open `u`?
    pub membership: Vec<Vec<Verdict>>,
    /// `le[p][q]`: every open containing `p` contains `q`.
    pub le: Vec<Vec<Verdict>>,
    /// Adjacency lists of the strict relation `p < q` where decided.
    pub adjacency: Vec<Vec<usize>>,
    pub t0: Verdict,
}

pub fn specialization_and_t0(ev: &Evaluator, points: &[Point], opens: &[SubbasicOpen]) -> Result<Specialization> {
    let membership = points
        .iter()
        .map(|p| opens.iter().map(|u| point_open_membership(ev, p, u)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let n = points.len();
    let le: Vec<Vec<Verdict>> = (0..n)
        .map(|p| {
            (0..n)
                .map(|q| Verdict::all((0..opens.len()).map(|u| membership[p][u].not().or(membership[q][u]))))
                .collect()
        })
        .collect();
    let adjacency = (0..n)
        .map(|p| (0..n).filter(|&q| q != p && le[p][q].is_true()).collect())
        .collect();
    let mut t0 = Verdict::True;
    for p in 0..n {
        for q in (p + 1)..n {
            t0 = t0.and(le[p][q].and(le[q][p]).not());
        }
    }
    Ok(Specialization {
        membership,
        le,
        adjacency,
        t0,
    })
}

/// `π∘ι = id` on overrings and `[u ∈ R^σ] ⇔ [1 ∈ (u^{-1}R)^σ]`.
///
/// For `T = R[u_1..u_k]`, `R^{ι(T)}` is compared with `T` on the sampled
/// elements of both, through the bounded ascent as the second route.
pub fn retraction_checks(ev: &Evaluator, overrings: &[Overring], stars: &[SemistarExpr], us: &[KElement]) -> Result<CheckReport> {
    let ring = ev.ring();
    let n = ring.nvars();
    let r = FractionalIdeal::unit(n);
    let level = ev.caps().sample_level;
    let mut rep = CheckReport::new();
    for t in overrings {
        let star = SemistarExpr::Extend(t.clone());
        let image = ev.eval(&star, &r)?;
        let mut probes = image.sample_members(level);
        probes.extend(t.sample_units(n, level));
        if let Overring::Adjoin(a) = t {
            probes.extend(a.elems().iter().cloned());
        }
        for z in probes {
            let direct = image.contains(&z);
            let other = match t {
                Overring::Adjoin(a) => a.ascent_member(&r, &z, ev.caps().ascent),
                _ => Verdict::from_bool(t.contains(&z)),
            };
            let v = if other.is_unknown() { direct } else { direct.iff(other) };
            rep.record(v, || {
                Witness::new("R^iota(T) differs from T", vec![t.format(ring), z.format(ring)])
            });
        }
    }
    let one = KElement::from_poly(ring.one());
    for s in stars {
        let rs = ev.eval(s, &r)?;
        for u in us {
            let left = rs.contains(u);
            let inv = FractionalIdeal::principal(&u.inv()?);
            let right = ev.eval(s, &inv)?.contains(&one);
            rep.record(left.iff(right), || {
                Witness::new("preimage formula fails", vec![s.format(ring), u.format(ring)])
            });
        }
    }
    Ok(rep)
}

/// Homogeneous elements used to read off the prime of a principal
/// ultrafilter: monomials of degree at most 2 and the generators of the
/// sampled primes.
pub fn homogeneous_sample(ring: &GradedRing, primes: &[Ideal]) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = monomials_up_to(ring.nvars(), 2)
        .into_iter()
        .filter(|m| !m.is_one())
        .map(Polynomial::monomial)
        .collect();
    for p in primes {
        for g in p.nonzero_gens() {
            for c in ring.components(g) {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// `p_U = (f ∈ H : V_h(f) ∩ Y ∈ U)` for the principal ultrafilter at
/// `Y[at]`, which is the ideal of sampled `f` lying in that prime. It must
/// reproduce the prime.
pub fn ultrafilter_prime(ring: &GradedRing, ys: &[Ideal], at: usize) -> Result<(Ideal, CheckReport)> {
    let p = ys.get(at).ok_or_else(|| Error::invalid("ultrafilter point outside the sample"))?;
    let gens: Vec<Polynomial> = homogeneous_sample(ring, ys).into_iter().filter(|f| p.member(f)).collect();
    let q = Ideal::new(ring.nvars(), gens)?;
    let mut rep = CheckReport::new();
    rep.record(Verdict::from_bool(q.equals(p)), || {
        Witness::new("ultrafilter prime differs", vec![ring.fmt_ideal(p), ring.fmt_ideal(&q)])
    });
    Ok((q, rep))
}

/// The finite analog of `⋁{⋀(W_E ∩ Y) : W_E ∋ Y[at]}`, with its profile on
/// the family compared against that of `Y[at]`.
pub fn ultrafilter_star(
    ev: &Evaluator,
    ys: &[SemistarExpr],
    at: usize,
    family: &[FractionalIdeal],
) -> Result<(SemistarExpr, CheckReport)> {
    let ring = ev.ring();
    let p = ys.get(at).ok_or_else(|| Error::invalid("ultrafilter point outside the sample"))?;
    let profile = star_profile(ev, p, family)?;
    let mut meets = Vec::new();
    for (e, v) in family.iter().zip(&profile) {
        if !v.is_true() {
            continue;
        }
        let mut members = Vec::new();
        for s in ys {
            if point_open_membership(ev, &Point::Star(s.clone()), &SubbasicOpen::W(e.clone()))?.is_true() {
                members.push(s.clone());
            }
        }
        meets.push(if members.len() == 1 { members.remove(0) } else { SemistarExpr::Meet(members) });
    }
    let star = match meets.len() {
        0 => SemistarExpr::Identity,
        1 => meets.remove(0),
        _ => SemistarExpr::Join {
            stars: meets,
            cap: ev.caps().join,
        },
    };
    let built = star_profile(ev, &star, family)?;
    let mut rep = CheckReport::new();
    for (i, (a, b)) in profile.iter().zip(&built).enumerate() {
        rep.record(a.iff(*b), || {
            Witness::new(
                "profile differs",
                vec![family[i].format(ring), p.format(ring), star.format(ring)],
            )
        });
    }
    Ok((star, rep))
}

/// Membership of a star in each `W_E` of the family.
pub fn star_profile(ev: &Evaluator, s: &SemistarExpr, family: &[FractionalIdeal]) -> Result<Vec<Verdict>> {
    family
        .iter()
        .map(|e| point_open_membership(ev, &Point::Star(s.clone()), &SubbasicOpen::W(e.clone())))
        .collect()
}

/// The overring `R^σ` sampled: `1` closed under `σ` as a handle.
pub fn overring_of(ev: &Evaluator, s: &SemistarExpr) -> Result<ClosureHandle> {
    ev.eval(s, &FractionalIdeal::unit(ev.ring().nvars()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Caps;

    fn setup() -> (GradedRing, Evaluator) {
        let r = GradedRing::standard(&["x", "y"]);
        (r.clone(), Evaluator::new(r, Caps::default()))
    }

    fn k(r: &GradedRing, s: &str) -> KElement {
        KElement::parse(r, s).unwrap()
    }

    #[test]
    fn open_membership_examples() {
        let (r, ev) = setup();
        let v = GrValuation::new(&r, vec![vec![1, 1]]).unwrap();
        let m = point_open_membership(&ev, &Point::Valuation(v), &SubbasicOpen::Zar(k(&r, "y^2/x"))).unwrap();
        assert!(m.is_true());
        let p = Point::Prime(r.ideal_from(&["x"]).unwrap());
        assert!(point_open_membership(&ev, &p, &SubbasicOpen::D(r.parse("y").unwrap())).unwrap().is_true());
        let e = SubbasicOpen::W(FractionalIdeal::from_ideal(r.ideal_from(&["x", "y"]).unwrap()));
        assert!(point_open_membership(&ev, &Point::Star(SemistarExpr::Divisorial), &e).unwrap().is_true());
        assert!(point_open_membership(&ev, &Point::Star(SemistarExpr::Identity), &e).unwrap().is_false());
        assert!(point_open_membership(&ev, &p, &e).is_err());
    }

    #[test]
    fn rewrites_agree() {
        let (r, ev) = setup();
        let r2 = GradedRing::weighted(&["x", "y"], &[1, 2]);
        let ev2 = Evaluator::new(r2.clone(), Caps::default());
        let sample = vec![
            GrValuation::new(&r2, vec![vec![1, 1]]).unwrap(),
            GrValuation::new(&r2, vec![vec![1, 2]]).unwrap(),
            GrValuation::new(&r2, vec![vec![0, 1], vec![1, 0]]).unwrap(),
        ];
        let rw = preimage_rewrites(&ev2, &k(&r2, "(x + y)/x^2"), &sample).unwrap();
        assert!(rw.report.passed());
        assert_eq!(rw.pieces.len(), 2);
        let rw = preimage_rewrites(&ev, &k(&r, "x/y"), &[GrValuation::new(&r, vec![vec![1, 1]]).unwrap()]).unwrap();
        assert_eq!(rw.pieces.len(), 1);
        assert!(rw.report.passed());
    }

    #[test]
    fn t0_examples() {
        let (r, ev) = setup();
        let pts = vec![
            Point::Valuation(GrValuation::new(&r, vec![vec![1, 1]]).unwrap()),
            Point::Valuation(GrValuation::new(&r, vec![vec![1, 2]]).unwrap()),
        ];
        let opens = vec![SubbasicOpen::Zar(k(&r, "x/y")), SubbasicOpen::Zar(k(&r, "y/x"))];
        assert!(specialization_and_t0(&ev, &pts, &opens).unwrap().t0.is_true());
        let stars = vec![Point::Star(SemistarExpr::Identity), Point::Star(SemistarExpr::Divisorial)];
        let w = vec![SubbasicOpen::W(FractionalIdeal::from_ideal(r.ideal_from(&["x", "y"]).unwrap()))];
        let s = specialization_and_t0(&ev, &stars, &w).unwrap();
        assert!(s.t0.is_true());
        assert_eq!(s.adjacency[0], vec![1]);
        assert!(specialization_and_t0(&ev, &stars[..1], &w).unwrap().t0.is_true());
    }

    #[test]
    fn retraction_examples() {
        let (r, ev) = setup();
        let t = Overring::adjoin(&r, vec![k(&r, "x/y")]);
        let rep = retraction_checks(
            &ev,
            &[t.clone()],
            &[SemistarExpr::Divisorial, SemistarExpr::Extend(t)],
            &[k(&r, "x/y"), k(&r, "y/x")],
        )
        .unwrap();
        assert!(rep.passed(), "{:?}", rep.witnesses);
    }

    #[test]
    fn ultrafilters() {
        let (r, ev) = setup();
        let ys = vec![r.ideal_from(&["x"]).unwrap(), r.ideal_from(&["y"]).unwrap()];
        let (q, rep) = ultrafilter_prime(&r, &ys, 0).unwrap();
        assert!(rep.passed());
        assert!(q.equals(&ys[0]));
        let (q, _) = ultrafilter_prime(&r, &[r.ideal_from(&["x", "y"]).unwrap()], 0).unwrap();
        assert!(q.equals(&r.ideal_from(&["x", "y"]).unwrap()));
        let stars = vec![SemistarExpr::Identity, SemistarExpr::Divisorial];
        let fam = vec![FractionalIdeal::from_ideal(r.ideal_from(&["x", "y"]).unwrap())];
        let (s, rep) = ultrafilter_star(&ev, &stars, 1, &fam).unwrap();
        assert!(rep.passed());
        assert!(star_profile(&ev, &s, &fam).unwrap()[0].is_true());
    }
}
