//! Lower approximations of closures defined by infinite unions, and the
//! join fixpoint.

use crate::algebra::{Ideal, Polynomial};
use crate::fractional::{FractionalIdeal, KElement};
use crate::Result;

use super::eval::Evaluator;
use super::{ClosureHandle, OracleKind, SemistarExpr};

/// An approximation together with the family members it used.
#[derive(Clone, Debug)]
pub struct ApproxOutcome {
    pub handle: ClosureHandle,
    pub accepted: Vec<usize>,
    pub rejected: Vec<usize>,
}

/// `F + Σ (F :_K a_j)` over the `a_j` with `1 ∈ a_j^⋆`, a lower bound of the
/// stable operation associated to ⋆. Since `a_j ⊆ R`, `1 ∈ a_j^⋆` is the
/// same as `a_j^⋆ = R^⋆`; members that cannot be verified are rejected.
pub fn stable_assoc_approx(
    ev: &Evaluator,
    star: &SemistarExpr,
    f: &FractionalIdeal,
    family: &[Ideal],
) -> Result<ApproxOutcome> {
    let one = KElement::from_poly(ev.ring().one());
    let mut acc = f.clone();
    let (mut accepted, mut rejected) = (vec![], vec![]);
    for (j, a) in family.iter().enumerate() {
        if a.is_zero() {
            rejected.push(j);
            continue;
        }
        let a = FractionalIdeal::from_ideal(a.clone());
        if ev.eval(star, &a)?.contains(&one).is_true() {
            acc = acc.sum(&f.colon(&a)?);
            accepted.push(j);
        } else {
            rejected.push(j);
        }
    }
    Ok(ApproxOutcome {
        handle: ClosureHandle::Finite(acc.simplify()),
        accepted,
        rejected,
    })
}

/// `F + Σ_j ((F H_j)^⋆ : H_j)` over the homogeneous `H_j`.
///
/// Dividing by `H_j` instead of `H_j^⋆` changes nothing, because
/// `(F H_j)^⋆` is already closed. Explicit parts are summed; oracle parts
/// make the result an oracle that proves membership part by part.
pub fn eab_h_approx(
    ev: &Evaluator,
    star: &SemistarExpr,
    f: &FractionalIdeal,
    family: &[Ideal],
) -> Result<ApproxOutcome> {
    let mut lower = f.clone();
    let mut parts = Vec::new();
    let (mut accepted, mut rejected) = (vec![], vec![]);
    for (j, h) in family.iter().enumerate() {
        if h.is_zero() || !ev.ring().ideal_is_homogeneous(h) {
            rejected.push(j);
            continue;
        }
        accepted.push(j);
        let h = FractionalIdeal::from_ideal(h.clone());
        match ev.eval(star, &f.product(&h))? {
            ClosureHandle::Finite(g) => lower = lower.sum(&g.colon(&h)?),
            oracle => parts.push((h.generators(), oracle)),
        }
    }
    let lower = lower.simplify();
    let handle = if parts.is_empty() {
        ClosureHandle::Finite(lower)
    } else {
        ev.oracle(f, OracleKind::ColonUnion { lower, parts })
    };
    Ok(ApproxOutcome {
        handle,
        accepted,
        rejected,
    })
}

/// Result of the join fixpoint.
#[derive(Clone, Debug)]
pub struct JoinOutcome {
    pub handle: ClosureHandle,
    /// Rounds that enlarged the ideal.
    pub rounds: u32,
    pub stabilized: bool,
}

/// `G_0 = F`, `G_{r+1} = G_r + Σ_σ G_r^σ` until a round adds nothing.
///
/// Oracle results contribute their sampled members, skipping those whose
/// degree would push past `subideal_degree`. The fixpoint is exact
/// only when it stabilizes with explicit results; otherwise the handle
/// proves membership through `G_r` and the last round.
pub fn join_fixpoint(ev: &Evaluator, stars: &[SemistarExpr], f: &FractionalIdeal, cap: u32) -> Result<JoinOutcome> {
    if stars.is_empty() {
        return Err(crate::Error::invalid("join of no operations"));
    }
    let level = ev.caps().sample_level;
    let degree_cap = ev.caps().subideal_degree;
    let mut g = f.clone();
    let mut rounds = 0;
    let mut last: Vec<ClosureHandle> = Vec::new();
    for _ in 0..cap.max(1) {
        let hs = stars.iter().map(|s| ev.eval(s, &g)).collect::<Result<Vec<_>>>()?;
        let mut next = g.clone();
        let all_finite = hs.iter().all(|h| h.is_finite());
        for h in &hs {
            match h {
                ClosureHandle::Finite(x) => next = next.sum(x),
                ClosureHandle::Oracle(_) => {
                    for z in h.sample_members(level) {
                        // high-degree samples only blow up the next round;
                        // leaving them out keeps G_r a lower bound
                        let deg = |p: &crate::algebra::Polynomial| p.total_degree().unwrap_or(0);
                        if deg(z.num()).max(deg(z.den())) + deg(next.den()) > u64::from(degree_cap) {
                            continue;
                        }
                        if !next.member(&z) {
                            next = next.sum(&FractionalIdeal::principal(&z));
                        }
                    }
                }
            }
        }
        if g.contains(&next) {
            let handle = if all_finite {
                ClosureHandle::Finite(g)
            } else {
                ev.oracle(f, OracleKind::Join { lower: g, pending: hs })
            };
            return Ok(JoinOutcome {
                handle,
                rounds,
                stabilized: all_finite,
            });
        }
        g = next.simplify();
        rounds += 1;
        last = hs;
    }
    Ok(JoinOutcome {
        handle: ev.oracle(f, OracleKind::Join { lower: g, pending: last }),
        rounds,
        stabilized: false,
    })
}

/// The sum of `F^{σ_1∘...∘σ_k}` over all compositions with `k <= depth`,
/// or `None` if some composition is not explicit.
pub fn bounded_composition_union(
    ev: &Evaluator,
    stars: &[SemistarExpr],
    f: &FractionalIdeal,
    depth: u32,
) -> Result<Option<FractionalIdeal>> {
    let mut total = f.clone();
    let mut frontier = vec![f.clone()];
    for _ in 0..depth {
        let mut next: Vec<FractionalIdeal> = Vec::new();
        for c in &frontier {
            for s in stars {
                let ClosureHandle::Finite(x) = ev.eval(s, c)? else {
                    return Ok(None);
                };
                if !next.iter().any(|y| y.equals(&x)) {
                    total = total.sum(&x);
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    Ok(Some(total.simplify()))
}

/// Meet or join of a list of operations at one ideal.
pub fn meet_and_join(
    ev: &Evaluator,
    stars: &[SemistarExpr],
    join: bool,
    f: &FractionalIdeal,
    cap: u32,
) -> Result<ClosureHandle> {
    let expr = if join {
        SemistarExpr::Join {
            stars: stars.to_vec(),
            cap,
        }
    } else {
        SemistarExpr::Meet(stars.to_vec())
    };
    ev.eval(&expr, f)
}

/// The default witness family for an ideal: `R`, its powers up to 3, and
/// the ideal of all variables.
pub fn default_family(ev: &Evaluator, i: &Ideal) -> Vec<Ideal> {
    let n = ev.ring().nvars();
    let mut out = vec![Ideal::unit(n)];
    for k in 1..=3 {
        out.push(i.pow(k));
    }
    out.push(Ideal::from_gens(n, (0..n).map(|j| Polynomial::var(n, j)).collect()));
    out
}
