//! Property checks of closures over lists of fractional ideals.
//!
//! Explicit closures are compared exactly. Oracle closures are compared on
//! their sampled members; such a pass is a pass on the sample, and the
//! sample size is the evaluator's `sample_level`.

use serde::Serialize;

use crate::algebra::{Ideal, Polynomial};
use crate::fractional::{rh_membership, FractionalIdeal, KElement};
use crate::grading::monomials_up_to;
use crate::grvaluation::GrValuation;
use crate::verdict::{CheckReport, Verdict, Witness};
use crate::Result;

use super::approx::{bounded_composition_union, join_fixpoint};
use super::eval::{Closure, Evaluator};
use super::{ClosureHandle, SemistarExpr};

/// Is `a ⊆ b`? Returns the first member of `a` not shown to be in `b`.
pub fn handle_subset(a: &ClosureHandle, b: &ClosureHandle, level: u32) -> (Verdict, Option<KElement>) {
    let mut acc = Verdict::True;
    let mut witness = None;
    for z in a.sample_members(level) {
        let v = b.contains(&z);
        if v.is_false() {
            return (Verdict::False, Some(z));
        }
        if v.is_unknown() && witness.is_none() {
            witness = Some(z);
        }
        acc = acc.and(v);
    }
    (acc, witness)
}

/// Equality of closures, exact when both are explicit.
pub fn handle_equal(a: &ClosureHandle, b: &ClosureHandle, level: u32) -> (Verdict, Option<KElement>) {
    if let (Some(x), Some(y)) = (a.as_finite(), b.as_finite()) {
        return match x.generators().into_iter().find(|z| !y.member(z)) {
            Some(z) => (Verdict::False, Some(z)),
            None => match y.generators().into_iter().find(|z| !x.member(z)) {
                Some(z) => (Verdict::False, Some(z)),
                None => (Verdict::True, None),
            },
        };
    }
    let (v1, w1) = handle_subset(a, b, level);
    if v1.is_false() {
        return (v1, w1);
    }
    let (v2, w2) = handle_subset(b, a, level);
    (v1.and(v2), w2.or(w1))
}

/// Per-axiom reports.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    /// `(uF)^⋆ = u F^⋆`.
    pub star1: CheckReport,
    /// `E ⊆ F ⇒ E^⋆ ⊆ F^⋆`.
    pub star2: CheckReport,
    /// `F ⊆ F^⋆`.
    pub star3: CheckReport,
    /// `(F^⋆)^⋆ = F^⋆`.
    pub star4: CheckReport,
}

impl AxiomReport {
    pub fn overall(&self) -> CheckReport {
        let mut r = CheckReport::new();
        for part in [&self.star1, &self.star2, &self.star3, &self.star4] {
            r.merge(part.clone());
        }
        r
    }

    pub fn checks_run(&self) -> usize {
        self.star1.checks_run + self.star2.checks_run + self.star3.checks_run + self.star4.checks_run
    }
}

/// The four semistar axioms on every ideal of the list.
///
/// ⋆1 uses every scalar; ⋆2 uses the pairs `F ⊆ F + G` and `F·I ⊆ F` with
/// `G` the next ideal and `I` its integral part (or the ideal of all
/// variables); ⋆4 closes `F^⋆` again, or for oracles `F` plus sampled
/// members of `F^⋆`.
pub fn axioms_check(
    ev: &Evaluator,
    star: &dyn Closure,
    ideals: &[FractionalIdeal],
    scalars: &[KElement],
) -> Result<AxiomReport> {
    let ring = ev.ring();
    let level = ev.caps().sample_level;
    let fmt = |f: &FractionalIdeal| f.format(ring);
    let mut rep = AxiomReport {
        star1: CheckReport::new(),
        star2: CheckReport::new(),
        star3: CheckReport::new(),
        star4: CheckReport::new(),
    };
    let n = ring.nvars();
    let maximal = Ideal::from_gens(n, (0..n).map(|j| Polynomial::var(n, j)).collect());
    for (i, f) in ideals.iter().enumerate() {
        let hf = star.close(f)?;

        // ⋆3
        let missing = f.generators().into_iter().map(|z| (hf.contains(&z), z)).find(|(v, _)| !v.is_true());
        let v3 = missing.as_ref().map(|(v, _)| *v).unwrap_or(Verdict::True);
        rep.star3.record(v3, || {
            let z = missing.as_ref().map(|(_, z)| z.format(ring)).unwrap_or_default();
            Witness::new("F not contained in F^star", vec![fmt(f), z])
        });

        // ⋆1
        for u in scalars {
            let hu = star.close(&f.scale(u))?;
            let v1 = match (hf.as_finite(), hu.as_finite()) {
                (Some(a), Some(b)) => {
                    let scaled = a.scale(u);
                    let bad = scaled
                        .generators()
                        .into_iter()
                        .find(|z| !b.member(z))
                        .or_else(|| b.generators().into_iter().find(|z| !scaled.member(z)));
                    (Verdict::from_bool(bad.is_none()), bad)
                }
                _ => {
                    let uinv = u.inv()?;
                    let mut acc = (Verdict::True, None);
                    for z in hf.sample_members(level) {
                        let v = hu.contains(&z.mul(u));
                        acc.0 = acc.0.and(v);
                        if v.is_false() {
                            acc.1 = Some(z);
                            break;
                        }
                    }
                    if !acc.0.is_false() {
                        for w in hu.sample_members(level) {
                            let v = hf.contains(&w.mul(&uinv));
                            acc.0 = acc.0.and(v);
                            if v.is_false() {
                                acc.1 = Some(w);
                                break;
                            }
                        }
                    }
                    acc
                }
            };
            rep.star1.record(v1.0, || {
                Witness::new(
                    "(uF)^star differs from u F^star",
                    vec![fmt(f), u.format(ring), v1.1.as_ref().map(|z| z.format(ring)).unwrap_or_default()],
                )
            });
        }

        // ⋆2
        let g = &ideals[(i + 1) % ideals.len()];
        let integral = if g.is_integral() && !g.num().is_unit() {
            g.num().clone()
        } else {
            maximal.clone()
        };
        let pairs = [
            (f.clone(), f.sum(g)),
            (f.product(&FractionalIdeal::from_ideal(integral)), f.clone()),
        ];
        for (small, big) in pairs {
            let hs = star.close(&small)?;
            let hb = if big.equals(f) { hf.clone() } else { star.close(&big)? };
            let (v, w) = handle_subset(&hs, &hb, level);
            rep.star2.record(v, || {
                Witness::new(
                    "E in F but E^star not in F^star",
                    vec![fmt(&small), fmt(&big), w.map(|z| z.format(ring)).unwrap_or_default()],
                )
            });
        }

        // ⋆4
        let again_of = match &hf {
            ClosureHandle::Finite(x) => x.clone(),
            ClosureHandle::Oracle(_) => {
                let mut g = f.clone();
                for z in hf.sample_members(level) {
                    if !g.member(&z) {
                        g = g.sum(&FractionalIdeal::principal(&z));
                    }
                }
                g
            }
        };
        let again = star.close(&again_of)?;
        let (v, w) = handle_subset(&again, &hf, level);
        rep.star4.record(v, || {
            Witness::new(
                "closure not idempotent",
                vec![fmt(f), w.map(|z| z.format(ring)).unwrap_or_default()],
            )
        });
    }
    Ok(rep)
}

/// Outcome of comparing two operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Ge,
    Eq,
    Incomparable,
    Unknown,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
            Relation::Incomparable => "incomparable",
            Relation::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub relation: Relation,
    /// `F^{⋆1} ⊆ F^{⋆2}` on every ideal.
    pub le: CheckReport,
    /// `F^{⋆2} ⊆ F^{⋆1}` on every ideal.
    pub ge: CheckReport,
}

pub fn compare(ev: &Evaluator, s1: &dyn Closure, s2: &dyn Closure, ideals: &[FractionalIdeal]) -> Result<Comparison> {
    let ring = ev.ring();
    let level = ev.caps().sample_level;
    let mut le = CheckReport::new();
    let mut ge = CheckReport::new();
    for f in ideals {
        let (a, b) = (s1.close(f)?, s2.close(f)?);
        for (rep, x, y) in [(&mut le, &a, &b), (&mut ge, &b, &a)] {
            let (v, w) = handle_subset(x, y, level);
            rep.record(v, || {
                Witness::new(
                    "member of one closure only",
                    vec![f.format(ring), w.map(|z| z.format(ring)).unwrap_or_default()],
                )
            });
        }
    }
    let relation = match (le.verdict, ge.verdict) {
        (Verdict::True, Verdict::True) => Relation::Eq,
        (Verdict::True, _) => Relation::Le,
        (_, Verdict::True) => Relation::Ge,
        (Verdict::False, Verdict::False) => Relation::Incomparable,
        _ => Relation::Unknown,
    };
    Ok(Comparison { relation, le, ge })
}

/// Homogeneous ideals must have homogeneous closures: sampled members lie
/// in R_H and their homogeneous components are members again; explicit
/// closures are also tested for homogeneity exactly.
pub fn preserve_homogeneity_check(
    ev: &Evaluator,
    star: &dyn Closure,
    homogeneous: &[FractionalIdeal],
) -> Result<CheckReport> {
    let ring = ev.ring();
    let level = ev.caps().sample_level;
    let mut rep = CheckReport::new();
    for f in homogeneous {
        let h = star.close(f)?;
        if let Some(x) = h.as_finite() {
            let ok = x.is_homogeneous(ring);
            rep.record(Verdict::from_bool(ok), || {
                Witness::new("closure not homogeneous", vec![f.format(ring), x.format(ring)])
            });
            if !ok {
                continue;
            }
        }
        for z in h.sample_members(level) {
            let z = z.reduced();
            if !rh_membership(ring, &z)? {
                rep.record(Verdict::False, || {
                    Witness::new("member outside R_H", vec![f.format(ring), z.format(ring)])
                });
                break;
            }
            let comps = z.components(ring).expect("in R_H");
            let mut v = Verdict::True;
            let mut bad = None;
            if comps.len() > 1 {
                for c in comps {
                    let cv = h.contains(&c);
                    v = v.and(cv);
                    if cv.is_false() {
                        bad = Some(c);
                        break;
                    }
                }
            }
            rep.record(v, || {
                Witness::new(
                    "component of a member is not a member",
                    vec![f.format(ring), z.format(ring), bad.map(|c| c.format(ring)).unwrap_or_default()],
                )
            });
        }
    }
    Ok(rep)
}

/// Cancellation `(EF)^⋆ ⊆ (EG)^⋆ ⇒ F^⋆ ⊆ G^⋆` on all triples from the
/// first `limit` ideals.
pub fn eab_checks(ev: &Evaluator, star: &dyn Closure, ideals: &[FractionalIdeal], limit: usize) -> Result<CheckReport> {
    let k = ideals.len().min(limit);
    let sub = &ideals[..k];
    let singles = sub.iter().map(|f| star.close(f)).collect::<Result<Vec<_>>>()?;
    let mut products = Vec::with_capacity(k * k);
    for e in sub {
        for f in sub {
            products.push(star.close(&e.product(f))?);
        }
    }
    let mut rep = CheckReport::new();
    for e in 0..k {
        for f in 0..k {
            for g in 0..k {
                if f == g {
                    continue;
                }
                let v = eab_implication(ev, &products[e * k + f], &products[e * k + g], &singles[f], &singles[g]);
                rep.record(v.0, || triple_witness(ev, &sub[e], &sub[f], &sub[g], v.1));
            }
        }
    }
    Ok(rep)
}

/// One cancellation instance.
pub fn eab_triple_check(
    ev: &Evaluator,
    star: &dyn Closure,
    e: &FractionalIdeal,
    f: &FractionalIdeal,
    g: &FractionalIdeal,
) -> Result<CheckReport> {
    let ef = star.close(&e.product(f))?;
    let eg = star.close(&e.product(g))?;
    let v = eab_implication(ev, &ef, &eg, &star.close(f)?, &star.close(g)?);
    let mut rep = CheckReport::new();
    rep.record(v.0, || triple_witness(ev, e, f, g, v.1));
    Ok(rep)
}

fn eab_implication(
    ev: &Evaluator,
    ef: &ClosureHandle,
    eg: &ClosureHandle,
    f: &ClosureHandle,
    g: &ClosureHandle,
) -> (Verdict, Option<KElement>) {
    let level = ev.caps().sample_level;
    let (premise, _) = handle_subset(ef, eg, level);
    if premise.is_false() {
        return (Verdict::True, None);
    }
    let (concl, w) = handle_subset(f, g, level);
    (premise.not().or(concl), w)
}

fn triple_witness(ev: &Evaluator, e: &FractionalIdeal, f: &FractionalIdeal, g: &FractionalIdeal, z: Option<KElement>) -> Witness {
    let ring = ev.ring();
    Witness::new(
        "(EF)^star in (EG)^star but F^star not in G^star",
        vec![
            e.format(ring),
            f.format(ring),
            g.format(ring),
            z.map(|z| z.format(ring)).unwrap_or_default(),
        ],
    )
}

/// `(F ∩ G)^⋆ = F^⋆ ∩ G^⋆` on consecutive pairs.
pub fn stability_check(ev: &Evaluator, star: &dyn Closure, ideals: &[FractionalIdeal]) -> Result<CheckReport> {
    let ring = ev.ring();
    let level = ev.caps().sample_level;
    let mut rep = CheckReport::new();
    for i in 0..ideals.len().saturating_sub(1) {
        let (f, g) = (&ideals[i], &ideals[i + 1]);
        let meet = f.intersect(g);
        if meet.is_zero() {
            continue;
        }
        let (hm, hf, hg) = (star.close(&meet)?, star.close(f)?, star.close(g)?);
        let (v, w) = match (hm.as_finite(), hf.as_finite(), hg.as_finite()) {
            (Some(m), Some(a), Some(b)) => {
                let both = a.intersect(b);
                handle_equal(&ClosureHandle::Finite(m.clone()), &ClosureHandle::Finite(both), level)
            }
            _ => {
                let mut cands = hm.sample_members(level);
                cands.extend(hf.sample_members(level));
                cands.extend(hg.sample_members(level));
                let mut acc = (Verdict::True, None);
                for z in cands {
                    let v = hm.contains(&z).iff(hf.contains(&z).and(hg.contains(&z)));
                    acc.0 = acc.0.and(v);
                    if v.is_false() {
                        acc.1 = Some(z);
                        break;
                    }
                }
                acc
            }
        };
        rep.record(v, || {
            Witness::new(
                "closure does not commute with intersection",
                vec![f.format(ring), g.format(ring), w.map(|z| z.format(ring)).unwrap_or_default()],
            )
        });
    }
    Ok(rep)
}

/// `I^⋆ ∩ R = I`. Exact for explicit closures; for oracles, monomials of
/// degree at most 3 and the sampled polynomial members are tested.
pub fn quasi_star_ideal_check(ev: &Evaluator, star: &dyn Closure, i: &Ideal) -> Result<(Verdict, Option<Polynomial>)> {
    let h = star.close(&FractionalIdeal::from_ideal(i.clone()))?;
    if let Some(x) = h.as_finite() {
        let part = x.integral_part();
        let extra = part.nonzero_gens().find(|g| !i.member(g)).cloned();
        return Ok((Verdict::from_bool(extra.is_none()), extra));
    }
    let n = i.nvars();
    let mut cands: Vec<Polynomial> = monomials_up_to(n, 3).into_iter().map(Polynomial::monomial).collect();
    for z in h.sample_members(ev.caps().sample_level) {
        let z = z.reduced();
        if z.den().is_constant() {
            cands.push(z.num().scale(&z.den().constant_value().expect("constant").recip()));
        }
    }
    let mut acc = Verdict::True;
    for p in cands {
        if i.member(&p) {
            continue;
        }
        let v = h.contains(&KElement::from_poly(p.clone()));
        if v.is_true() {
            return Ok((Verdict::False, Some(p)));
        }
        acc = acc.and(v.not());
    }
    Ok((acc, None))
}

/// Result of the gr-⋆-valuation check.
#[derive(Clone, Debug, Serialize)]
pub struct GrStarReport {
    /// `F^⋆ ⊆ FV`.
    pub direct: CheckReport,
    /// The same with the approximated operation, when given.
    pub approximated: Option<CheckReport>,
    /// Ideals where one check passed and the other failed.
    pub iff_violations: usize,
}

/// Is `V` a gr-⋆-valuation overring on the listed homogeneous ideals?
pub fn gr_star_valuation_check(
    ev: &Evaluator,
    v: &GrValuation,
    star: &dyn Closure,
    approx: Option<&dyn Closure>,
    homogeneous: &[FractionalIdeal],
) -> Result<GrStarReport> {
    let mut direct = CheckReport::new();
    let mut approximated = approx.map(|_| CheckReport::new());
    let mut iff_violations = 0;
    for f in homogeneous {
        let d = in_fv(ev, v, star, f, &mut direct)?;
        if let (Some(a), Some(rep)) = (approx, approximated.as_mut()) {
            let e = in_fv(ev, v, a, f, rep)?;
            if (d.is_true() && e.is_false()) || (d.is_false() && e.is_true()) {
                iff_violations += 1;
            }
        }
    }
    Ok(GrStarReport {
        direct,
        approximated,
        iff_violations,
    })
}

fn in_fv(ev: &Evaluator, v: &GrValuation, star: &dyn Closure, f: &FractionalIdeal, rep: &mut CheckReport) -> Result<Verdict> {
    let ring = ev.ring();
    let fv = v.extend_fv(f)?;
    let h = star.close(f)?;
    for z in h.sample_members(ev.caps().sample_level) {
        if !v.fv_member(&fv, &z) {
            rep.record(Verdict::False, || {
                Witness::new("member of F^star outside FV", vec![f.format(ring), z.format(ring), v.format()])
            });
            return Ok(Verdict::False);
        }
    }
    rep.record(Verdict::True, || unreachable!());
    Ok(Verdict::True)
}

/// Join fixpoints against the sum of all bounded compositions.
///
/// Each explicit fixpoint that needed `r` productive rounds must equal the
/// union of compositions of length at most `r + 1`. With `single_round`,
/// the fixpoint must also have needed at most one productive round.
pub fn join_semantics_check(
    ev: &Evaluator,
    stars: &[SemistarExpr],
    ideals: &[FractionalIdeal],
    cap: u32,
    single_round: bool,
) -> Result<CheckReport> {
    let ring = ev.ring();
    let mut rep = CheckReport::new();
    for f in ideals {
        let out = join_fixpoint(ev, stars, f, cap)?;
        let ClosureHandle::Finite(g) = &out.handle else {
            rep.record(Verdict::Unknown { cap }, || unreachable!());
            continue;
        };
        if single_round {
            rep.record(Verdict::from_bool(out.rounds <= 1), || {
                Witness::new("join needed more than one round", vec![f.format(ring), out.rounds.to_string()])
            });
        }
        let union = bounded_composition_union(ev, stars, f, out.rounds + 1)?;
        let v = match &union {
            Some(u) => Verdict::from_bool(u.equals(g)),
            None => Verdict::Unknown { cap },
        };
        rep.record(v, || {
            Witness::new(
                "join differs from the composition union",
                vec![
                    f.format(ring),
                    g.format(ring),
                    union.as_ref().map(|u| u.format(ring)).unwrap_or_default(),
                ],
            )
        });
    }
    Ok(rep)
}
