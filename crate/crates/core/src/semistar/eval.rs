use crate::algebra::{Ideal, Monomial, Polynomial};
use crate::fractional::FractionalIdeal;
use crate::grading::GradedRing;
use crate::grvaluation::b_closure_monomial;
use crate::verdict::Caps;
use crate::{Error, Result};

use super::approx;
use super::overring::Overring;
use super::{ClosureHandle, Oracle, OracleKind, SemistarExpr};

/// Anything that maps a fractional ideal to a closure. The property checks
/// are written against this so that non-semistar maps can be tested too.
pub trait Closure: Sync {
    fn close(&self, f: &FractionalIdeal) -> Result<ClosureHandle>;
    fn label(&self) -> String;
}

/// Evaluates descriptors over one graded ring under fixed caps.
#[derive(Clone, Debug)]
pub struct Evaluator {
    ring: GradedRing,
    caps: Caps,
}

/// A descriptor bound to its evaluator.
pub struct StarClosure<'a> {
    pub ev: &'a Evaluator,
    pub star: &'a SemistarExpr,
}

impl Closure for StarClosure<'_> {
    fn close(&self, f: &FractionalIdeal) -> Result<ClosureHandle> {
        self.ev.eval(self.star, f)
    }

    fn label(&self) -> String {
        self.star.format(&self.ev.ring)
    }
}

impl Evaluator {
    pub fn new(ring: GradedRing, caps: Caps) -> Evaluator {
        Evaluator { ring, caps }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn bind<'a>(&'a self, star: &'a SemistarExpr) -> StarClosure<'a> {
        StarClosure { ev: self, star }
    }

    /// `F^⋆` for nonzero `F`.
    pub fn eval(&self, star: &SemistarExpr, f: &FractionalIdeal) -> Result<ClosureHandle> {
        if f.is_zero() {
            return Err(Error::invalid("closure of the zero module"));
        }
        match star {
            SemistarExpr::Identity => Ok(ClosureHandle::Finite(f.clone())),
            SemistarExpr::Divisorial => Ok(ClosureHandle::Finite(f.v_closure()?)),
            SemistarExpr::Extend(ov) => Ok(self.oracle(f, OracleKind::Extension(ov.clone()))),
            SemistarExpr::MeetValuations(ys) => {
                if ys.is_empty() {
                    return Err(Error::invalid("meet over an empty set of valuations"));
                }
                Ok(self.oracle(f, OracleKind::Wedge(ys.clone())))
            }
            SemistarExpr::LocalizeAtPrimes(ps) => {
                if ps.is_empty() {
                    return Err(Error::invalid("localization at an empty set of primes"));
                }
                let mut parts: Vec<ClosureHandle> = ps
                    .iter()
                    .map(|p| self.oracle(f, OracleKind::Extension(Overring::LocalizeH(self.ring.clone(), p.clone()))))
                    .collect();
                if parts.len() == 1 {
                    return Ok(parts.pop().expect("one part"));
                }
                Ok(self.oracle(f, OracleKind::Meet(parts)))
            }
            SemistarExpr::Meet(stars) => {
                if stars.is_empty() {
                    return Err(Error::invalid("meet of no operations"));
                }
                let parts = stars.iter().map(|s| self.eval(s, f)).collect::<Result<Vec<_>>>()?;
                if parts.iter().all(|h| h.is_finite()) {
                    let mut it = parts.iter().filter_map(|h| h.as_finite());
                    let first = it.next().expect("nonempty").clone();
                    return Ok(ClosureHandle::Finite(it.fold(first, |acc, g| acc.intersect(g))));
                }
                Ok(self.oracle(f, OracleKind::Meet(parts)))
            }
            SemistarExpr::Join { stars, cap } => Ok(approx::join_fixpoint(self, stars, f, *cap)?.handle),
            SemistarExpr::StableApprox { star, family } => {
                Ok(approx::stable_assoc_approx(self, star, f, family)?.handle)
            }
            SemistarExpr::EabHApprox { star, family } => Ok(approx::eab_h_approx(self, star, f, family)?.handle),
            SemistarExpr::NewtonB => self.newton_b(f),
        }
    }

    pub(crate) fn oracle(&self, f: &FractionalIdeal, kind: OracleKind) -> ClosureHandle {
        ClosureHandle::Oracle(Oracle {
            ring: self.ring.clone(),
            caps: self.caps,
            base: f.clone(),
            kind,
        })
    }

    /// Exact on monomial numerators and on principal ideals; otherwise
    /// bracketed by the closure of the largest monomial subideal and the
    /// closure of the monomial support.
    fn newton_b(&self, f: &FractionalIdeal) -> Result<ClosureHandle> {
        let n = f.nvars();
        let num = f.num();
        if num.is_monomial() {
            let basis = Ideal::from_gens(n, num.basis().to_vec());
            let closed = b_closure_monomial(&basis)?;
            return Ok(ClosureHandle::Finite(FractionalIdeal::new(f.den().clone(), closed)?));
        }
        if f.generators().len() == 1 {
            return Ok(ClosureHandle::Finite(f.clone()));
        }
        let names: Vec<&str> = self.ring.vars().iter().map(|s| s.as_str()).collect();
        let fine = GradedRing::fine(&names);
        let inner = fine.largest_homogeneous_subideal(num);
        let mut lower = f.clone();
        if !inner.is_zero() {
            let inner = Ideal::from_gens(n, inner.basis().to_vec());
            lower = lower.sum(&FractionalIdeal::new(f.den().clone(), b_closure_monomial(&inner)?)?);
        }
        let support: Vec<Monomial> = num.nonzero_gens().flat_map(|g| g.monomials().cloned()).collect();
        let support = Ideal::from_gens(n, support.into_iter().map(Polynomial::monomial).collect());
        let support = Ideal::from_gens(n, support.basis().to_vec());
        let upper = FractionalIdeal::new(f.den().clone(), b_closure_monomial(&support)?)?;
        Ok(self.oracle(f, OracleKind::Bounds { lower, upper }))
    }
}
