//! Check directives: names are resolved and literals parsed when the
//! session is loaded, the work happens in [`Prepared::run`].

use serde_json::{json, Value};

use crate::fractional::FractionalIdeal;
use crate::grading::AuxPolynomial;
use crate::grvaluation::b_closure_monomial;
use crate::kronecker::{degree_roundtrip, degree_window, KroneckerHandle};
use crate::semistar::checks::*;
use crate::semistar::{Evaluator, SemistarExpr};
use crate::topology::*;
use crate::verdict::{Caps, CheckReport, Verdict, Witness};
use crate::Result;

use super::schema::*;
use super::Context;

pub(crate) struct Outcome {
    pub report: CheckReport,
    pub detail: Option<Value>,
}

type Job = Box<dyn Fn(&Evaluator) -> Result<Outcome> + Send + Sync>;

pub(crate) struct Prepared {
    pub name: String,
    pub tag: &'static str,
    pub caps: Caps,
    pub expect_fail: bool,
    job: Job,
}

impl Prepared {
    pub fn run(&self, ring: &crate::grading::GradedRing) -> Result<Outcome> {
        let ev = Evaluator::new(ring.clone(), self.caps);
        let mut out = (self.job)(&ev)?;
        if self.expect_fail {
            out.report.verdict = out.report.verdict.not();
        }
        Ok(out)
    }
}

/// One instance with a fixed outcome.
fn single(v: Verdict, w: impl FnOnce() -> Witness) -> CheckReport {
    let mut rep = CheckReport::new();
    rep.record(v, w);
    rep
}

fn expect(v: Verdict, want: bool) -> Verdict {
    if want {
        v
    } else {
        v.not()
    }
}

fn points(ctx: &Context, p: &PointsDecl) -> Result<Vec<Point>> {
    match (&p.valuations, &p.primes, &p.stars) {
        (Some(vs), None, None) => vs.iter().map(|v| Ok(Point::Valuation(ctx.valuation_ref(v)?))).collect(),
        (None, Some(ps), None) => ps.iter().map(|g| Ok(Point::Prime(ctx.prime(g)?))).collect(),
        (None, None, Some(ss)) => ss.iter().map(|s| Ok(Point::Star(ctx.star_ref(s)?))).collect(),
        _ => Err(ctx.at("points", "points need exactly one of valuations, primes, stars")),
    }
}

fn opens(ctx: &Context, o: &OpensDecl) -> Result<Vec<SubbasicOpen>> {
    let mut out = Vec::new();
    for u in &o.zar {
        out.push(SubbasicOpen::Zar(ctx.homogeneous_element(u)?));
    }
    for f in &o.d {
        let p = ctx.poly(f)?;
        if !ctx.ring.is_homogeneous(&p) {
            return Err(ctx.at(f, format!("\"{f}\" must be homogeneous")));
        }
        out.push(SubbasicOpen::D(p));
    }
    for e in &o.w {
        out.push(SubbasicOpen::W(ctx.ideal_ref(e)?));
    }
    Ok(out)
}

fn nonempty<T>(ctx: &Context, xs: Vec<T>, what: &str) -> Result<Vec<T>> {
    if xs.is_empty() {
        return Err(ctx.at(what, format!("{what} must not be empty")));
    }
    Ok(xs)
}

pub(crate) fn prepare(ctx: &Context, index: usize, decl: &CheckDecl) -> Result<Prepared> {
    let ring = ctx.ring.clone();
    let caps = match &decl.caps {
        Some(o) => ctx.caps_with(o)?,
        None => ctx.caps,
    };
    let tag = decl.kind.tag();
    let name = decl.name.clone().unwrap_or_else(|| format!("{}#{}", tag, index + 1));
    let job: Job = match &decl.kind {
        CheckKind::Axioms { star, ideals, scalars } => {
            let star = ctx.star_ref(star)?;
            let (ideals, corpus_scalars) = ctx.source(ideals, Part::All)?;
            let scalars = match scalars {
                Some(s) => s.iter().map(|z| ctx.element(z)).collect::<Result<Vec<_>>>()?,
                None => corpus_scalars.unwrap_or_else(|| ctx.default_scalars()),
            };
            Box::new(move |ev| {
                let rep = axioms_check(ev, &ev.bind(&star), &ideals, &scalars)?;
                let detail = json!({
                    "star": star.format(ev.ring()),
                    "star1": super::verdict_string(rep.star1.verdict),
                    "star2": super::verdict_string(rep.star2.verdict),
                    "star3": super::verdict_string(rep.star3.verdict),
                    "star4": super::verdict_string(rep.star4.verdict),
                });
                Ok(Outcome {
                    report: rep.overall(),
                    detail: Some(detail),
                })
            })
        }
        CheckKind::PreserveHomogeneity { star, ideals } => {
            let star = ctx.star_ref(star)?;
            let (ideals, _) = ctx.source(ideals, Part::Homogeneous)?;
            if let Some(f) = ideals.iter().find(|f| !f.is_homogeneous(&ring)) {
                return Err(ctx.at(&name, format!("{} is not homogeneous", f.format(&ring))));
            }
            Box::new(move |ev| {
                Ok(Outcome {
                    report: preserve_homogeneity_check(ev, &ev.bind(&star), &ideals)?,
                    detail: None,
                })
            })
        }
        CheckKind::Compare { star, other, ideals, expect } => {
            let (s1, s2) = (ctx.star_ref(star)?, ctx.star_ref(other)?);
            let (ideals, _) = ctx.source(ideals, Part::All)?;
            if let Some(e) = expect {
                if !["<=", ">=", "=", "incomparable"].contains(&e.as_str()) {
                    return Err(ctx.at(e, "expect must be one of <=, >=, =, incomparable"));
                }
            }
            let want = expect.clone();
            Box::new(move |ev| {
                let c = compare(ev, &ev.bind(&s1), &ev.bind(&s2), &ideals)?;
                let mut report = CheckReport::new();
                let v = match (&want, c.relation) {
                    (_, Relation::Unknown) => Verdict::Unknown {
                        cap: ev.caps().sample_level,
                    },
                    (Some(w), r) => Verdict::from_bool(w == r.symbol()),
                    (None, _) => Verdict::True,
                };
                report.record(v, || Witness::new("relation differs", vec![c.relation.symbol().to_string()]));
                report.checks_run = c.le.checks_run + c.ge.checks_run;
                for w in c.le.witnesses.iter().chain(&c.ge.witnesses) {
                    report.note(w.clone());
                }
                Ok(Outcome {
                    report,
                    detail: Some(json!({ "relation": c.relation.symbol() })),
                })
            })
        }
        CheckKind::Member { star, ideal, element, expect: want } => {
            let star = ctx.star_ref(star)?;
            let f = ctx.ideal_ref(ideal)?;
            let z = ctx.element(element)?;
            let want = *want;
            Box::new(move |ev| {
                let h = ev.eval(&star, &f)?;
                let v = h.contains(&z);
                let ring = ev.ring();
                let report = single(expect(v, want), || {
                    Witness::new("membership differs", vec![f.format(ring), z.format(ring)])
                });
                Ok(Outcome {
                    report,
                    detail: Some(json!({ "member": super::verdict_string(v), "closure": h.format(ring) })),
                })
            })
        }
        CheckKind::Eab { star, ideals, limit } => {
            let star = ctx.star_ref(star)?;
            let (ideals, _) = ctx.source(ideals, Part::All)?;
            let limit = limit.unwrap_or(4);
            Box::new(move |ev| {
                Ok(Outcome {
                    report: eab_checks(ev, &ev.bind(&star), &ideals, limit)?,
                    detail: None,
                })
            })
        }
        CheckKind::Stability { star, ideals } => {
            let star = ctx.star_ref(star)?;
            let (ideals, _) = ctx.source(ideals, Part::All)?;
            Box::new(move |ev| {
                Ok(Outcome {
                    report: stability_check(ev, &ev.bind(&star), &ideals)?,
                    detail: None,
                })
            })
        }
        CheckKind::QuasiIdeal { star, ideal, expect: want } => {
            let star = ctx.star_ref(star)?;
            let i = ctx.integral_ideal(ideal)?;
            let want = *want;
            Box::new(move |ev| {
                let ring = ev.ring();
                let (v, w) = quasi_star_ideal_check(ev, &ev.bind(&star), &i)?;
                let report = single(expect(v, want), || {
                    Witness::new(
                        "quasi-ideal status differs",
                        vec![ring.fmt_ideal(&i), w.map(|p| ring.fmt(&p)).unwrap_or_default()],
                    )
                });
                Ok(Outcome {
                    report,
                    detail: Some(json!({ "quasi_ideal": super::verdict_string(v) })),
                })
            })
        }
        CheckKind::GrStarValuation { valuation, star, approx, ideals } => {
            let v = ctx.valuation_ref(valuation)?;
            let star = ctx.star_ref(star)?;
            let approx = approx.as_ref().map(|a| ctx.star_ref(a)).transpose()?;
            let (ideals, _) = ctx.source(ideals, Part::Homogeneous)?;
            Box::new(move |ev| {
                let a = approx.as_ref().map(|a| ev.bind(a));
                let rep = gr_star_valuation_check(
                    ev,
                    &v,
                    &ev.bind(&star),
                    a.as_ref().map(|c| c as &dyn crate::semistar::Closure),
                    &ideals,
                )?;
                let detail = json!({
                    "direct": super::verdict_string(rep.direct.verdict),
                    "approximated": rep.approximated.as_ref().map(|r| super::verdict_string(r.verdict)),
                    "iff_violations": rep.iff_violations,
                });
                let mut report = rep.direct;
                if let Some(r) = rep.approximated {
                    report.merge(r);
                }
                if rep.iff_violations > 0 {
                    report.record(Verdict::False, || {
                        Witness::new("direct and approximated checks disagree", vec![rep.iff_violations.to_string()])
                    });
                }
                Ok(Outcome {
                    report,
                    detail: Some(detail),
                })
            })
        }
        CheckKind::DedekindMertens { f, g, expect: want } => {
            let (pf, pg) = (ctx.poly(f)?, ctx.poly(g)?);
            if pf.is_zero() || pg.is_zero() {
                return Err(ctx.at(&name, "Dedekind-Mertens needs nonzero polynomials"));
            }
            let want = *want;
            Box::new(move |ev| {
                let ring = ev.ring();
                let out = ring.dedekind_mertens_exponent(&pf, &pg, ev.caps().dm_bound)?;
                let (v, m) = match out {
                    crate::grading::DmOutcome::Exponent(m) => (Verdict::from_bool(want.is_none_or(|w| w == m)), Some(m)),
                    crate::grading::DmOutcome::BoundExhausted(b) => (Verdict::Unknown { cap: b }, None),
                };
                let report = single(v, || {
                    Witness::new(
                        "exponent differs",
                        vec![ring.fmt(&pf), ring.fmt(&pg), m.map(|m| m.to_string()).unwrap_or_default()],
                    )
                });
                Ok(Outcome {
                    report,
                    detail: Some(json!({ "exponent": m })),
                })
            })
        }
        CheckKind::HomogeneousWitness { f, j, i } => {
            let pf = ctx.poly(f)?;
            let jj = ctx.integral_ideal(j)?;
            let ii = ctx.integral_ideal(i)?;
            Box::new(move |ev| {
                let ring = ev.ring();
                match ring.homogeneous_witness_j0(&pf, &jj, &ii, ev.caps().dm_bound)? {
                    crate::grading::J0Outcome::Witness(w) => {
                        let report = single(Verdict::from_bool(w.homogeneous && w.contained), || {
                            Witness::new("J0 certificate fails", vec![ring.fmt(&pf), ring.fmt_ideal(&w.j0)])
                        });
                        Ok(Outcome {
                            report,
                            detail: Some(json!({ "m": w.m, "exponent": w.exponent, "j0": ring.fmt_ideal(&w.j0) })),
                        })
                    }
                    crate::grading::J0Outcome::BoundExhausted(b) => Ok(Outcome {
                        report: single(Verdict::Unknown { cap: b }, || unreachable!()),
                        detail: None,
                    }),
                }
            })
        }
        CheckKind::Newton { ideal, expect: want } => {
            let i = ctx.integral_ideal(ideal)?;
            if !i.is_monomial() {
                return Err(ctx.at(&ideal[0], "newton needs a monomial ideal"));
            }
            let want = want.as_ref().map(|w| ctx.integral_ideal(w)).transpose()?;
            Box::new(move |ev| {
                let ring = ev.ring();
                let b = b_closure_monomial(&i)?;
                let v = Verdict::from_bool(want.as_ref().is_none_or(|w| w.equals(&b)));
                let report = single(v, || Witness::new("closure differs", vec![ring.fmt_ideal(&i), ring.fmt_ideal(&b)]));
                Ok(Outcome {
                    report,
                    detail: Some(json!({ "closure": ring.fmt_ideal(&b) })),
                })
            })
        }
        CheckKind::JoinSemantics { stars, ideals, single_round } => {
            let stars = nonempty(ctx, stars.iter().map(|s| ctx.star_ref(s)).collect::<Result<Vec<_>>>()?, "stars")?;
            let (ideals, _) = ctx.source(ideals, Part::All)?;
            let single_round = *single_round;
            Box::new(move |ev| {
                Ok(Outcome {
                    report: join_semantics_check(ev, &stars, &ideals, ev.caps().join, single_round)?,
                    detail: None,
                })
            })
        }
        CheckKind::KrMembership { star, mode, element, verify, family, expect: want } => {
            let star = ctx.star_ref(star)?;
            let elt = ctx.function(element)?;
            let verify = verify.as_ref().map(|s| ctx.source(s, Part::Homogeneous)).transpose()?.map(|p| p.0).unwrap_or_default();
            let family = family.iter().map(|c| ctx.aux(c)).collect::<Result<Vec<AuxPolynomial>>>()?;
            let (mode, want) = (*mode, *want);
            Box::new(move |ev| {
                let h = KroneckerHandle::new(ev.clone(), star.clone(), mode, &verify)?;
                let v = h.kr_membership(&elt, &family)?;
                let ring = ev.ring();
                let report = single(expect(v, want), || Witness::new("membership differs", vec![elt.format(ring)]));
                Ok(Outcome {
                    report,
                    detail: Some(json!({ "member": super::verdict_string(v), "eab_verified": h.eab_verified() })),
                })
            })
        }
        CheckKind::KrIdealClosure { star, ideal, element, verify, expect: want } => {
            let star = ctx.star_ref(star)?;
            let f = ctx.ideal_ref(ideal)?;
            let u = ctx.element(element)?;
            let verify = verify.as_ref().map(|s| ctx.source(s, Part::Homogeneous)).transpose()?.map(|p| p.0).unwrap_or_default();
            let want = *want;
            Box::new(move |ev| {
                let h = KroneckerHandle::new(ev.clone(), star.clone(), crate::kronecker::KrMode::Homogeneous, &verify)?;
                let v = h.kr_ideal_closure(&f, &u)?;
                let ring = ev.ring();
                let report = single(expect(v, want), || {
                    Witness::new("membership differs", vec![f.format(ring), u.format(ring)])
                });
                Ok(Outcome {
                    report,
                    detail: Some(json!({ "member": super::verdict_string(v) })),
                })
            })
        }
        CheckKind::DegreeRoundtrip { valuation, bound, exp_bound } => {
            let v = ctx.valuation_ref(valuation)?;
            let window = degree_window(ring.rank(), bound.unwrap_or(4));
            let e = exp_bound.unwrap_or(4);
            Box::new(move |_| {
                Ok(Outcome {
                    report: degree_roundtrip(&v, &window, e),
                    detail: None,
                })
            })
        }
        CheckKind::Rewrites { valuations, elements, functions } => {
            let vs = nonempty(ctx, valuations.iter().map(|v| ctx.valuation_ref(v)).collect::<Result<Vec<_>>>()?, "valuations")?;
            let xs = elements.iter().map(|x| ctx.element(x)).collect::<Result<Vec<_>>>()?;
            let fs = functions.iter().map(|f| ctx.function(f)).collect::<Result<Vec<_>>>()?;
            Box::new(move |ev| {
                let mut report = CheckReport::new();
                for x in &xs {
                    report.merge(preimage_rewrites(ev, x, &vs)?.report);
                }
                for f in &fs {
                    report.merge(preimage_rewrites_function(ev, f, &vs)?.report);
                }
                Ok(Outcome { report, detail: None })
            })
        }
        CheckKind::Specialization { points: p, opens: o } => {
            let pts = nonempty(ctx, points(ctx, p)?, "points")?;
            let ops = opens(ctx, o)?;
            // kind mismatches are input errors, caught at load time
            if let (Some(a), Some(b)) = (pts.first(), ops.first()) {
                if !matches!(
                    (a, b),
                    (Point::Valuation(_), SubbasicOpen::Zar(_)) | (Point::Prime(_), SubbasicOpen::D(_)) | (Point::Star(_), SubbasicOpen::W(_))
                ) {
                    return Err(ctx.at("opens", "opens do not match the kind of the points"));
                }
            }
            let mixed = ops.iter().any(|u| std::mem::discriminant(u) != std::mem::discriminant(&ops[0]));
            if mixed {
                return Err(ctx.at("opens", "opens must all be of one kind"));
            }
            Box::new(move |ev| {
                let s = specialization_and_t0(ev, &pts, &ops)?;
                let report = single(s.t0, || Witness::new("two sampled points are not separated", vec![]));
                Ok(Outcome {
                    report,
                    detail: Some(json!({
                        "adjacency": s.adjacency,
                        "membership": s.membership.iter().map(|r| r.iter().map(|v| super::verdict_string(*v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    })),
                })
            })
        }
        CheckKind::Retraction { overrings, stars, elements } => {
            let ovs = overrings.iter().map(|o| ctx.overring(o)).collect::<Result<Vec<_>>>()?;
            let ss = stars.iter().map(|s| ctx.star_ref(s)).collect::<Result<Vec<_>>>()?;
            let us = elements.iter().map(|u| ctx.homogeneous_element(u)).collect::<Result<Vec<_>>>()?;
            if let Some(i) = us.iter().position(|u| u.is_zero()) {
                return Err(ctx.at(&elements[i], "elements must be nonzero"));
            }
            Box::new(move |ev| {
                Ok(Outcome {
                    report: retraction_checks(ev, &ovs, &ss, &us)?,
                    detail: None,
                })
            })
        }
        CheckKind::Ultrafilter { points: p, at, family } => {
            let pts = nonempty(ctx, points(ctx, p)?, "points")?;
            let fam = family.iter().map(|e| ctx.ideal_ref(e)).collect::<Result<Vec<FractionalIdeal>>>()?;
            let at = *at;
            if at >= pts.len() {
                return Err(ctx.at("at", "ultrafilter point outside the sample"));
            }
            match &pts[0] {
                Point::Prime(_) => {
                    let ys: Vec<_> = pts.into_iter().map(|q| if let Point::Prime(i) = q { i } else { unreachable!() }).collect();
                    Box::new(move |ev| {
                        let (q, report) = ultrafilter_prime(ev.ring(), &ys, at)?;
                        Ok(Outcome {
                            report,
                            detail: Some(json!({ "prime": ev.ring().fmt_ideal(&q) })),
                        })
                    })
                }
                Point::Star(_) => {
                    let ys: Vec<SemistarExpr> = pts.into_iter().map(|q| if let Point::Star(s) = q { s } else { unreachable!() }).collect();
                    Box::new(move |ev| {
                        let (s, report) = ultrafilter_star(ev, &ys, at, &fam)?;
                        Ok(Outcome {
                            report,
                            detail: Some(json!({ "star": s.format(ev.ring()) })),
                        })
                    })
                }
                Point::Valuation(_) => {
                    return Err(ctx.at("valuations", "ultrafilter samples are primes or stars"));
                }
            }
        }
    };
    Ok(Prepared {
        name,
        tag,
        caps,
        expect_fail: decl.expect_fail,
        job,
    })
}
