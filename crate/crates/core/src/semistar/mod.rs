//! Semistar operations on finitely generated fractional ideals.
//!
//! A [`SemistarExpr`] is evaluated on a nonzero fractional ideal `F` to a
//! [`ClosureHandle`]: either an explicit fractional ideal or an oracle that
//! answers membership in `F^⋆` with a [`Verdict`].

pub mod approx;
pub mod checks;
pub mod eval;
pub mod overring;

use std::fmt;

use crate::algebra::Ideal;
use crate::fractional::{rh_membership, FractionalIdeal, KElement};
use crate::grading::{monomials_up_to, GradedRing};
use crate::grvaluation::{wedge_member, GrValuation};
use crate::verdict::{Caps, Verdict};

pub use eval::{Closure, Evaluator, StarClosure};
pub use overring::Overring;

/// Descriptor of a semistar operation.
#[derive(Clone)]
pub enum SemistarExpr {
    Identity,
    Divisorial,
    Extend(Overring),
    MeetValuations(Vec<GrValuation>),
    /// `h_X`: the meet of `R_{H∖p}` over the listed homogeneous primes.
    LocalizeAtPrimes(Vec<Ideal>),
    Meet(Vec<SemistarExpr>),
    Join { stars: Vec<SemistarExpr>, cap: u32 },
    StableApprox { star: Box<SemistarExpr>, family: Vec<Ideal> },
    EabHApprox { star: Box<SemistarExpr>, family: Vec<Ideal> },
    /// Integral closure; exact on monomial numerators.
    NewtonB,
}

impl SemistarExpr {
    pub fn extend(ov: Overring) -> SemistarExpr {
        SemistarExpr::Extend(ov)
    }

    pub fn format(&self, ring: &GradedRing) -> String {
        let list = |xs: &[SemistarExpr]| -> String {
            xs.iter().map(|s| s.format(ring)).collect::<Vec<_>>().join(", ")
        };
        let fam = |xs: &[Ideal]| -> String {
            xs.iter().map(|i| ring.fmt_ideal(i)).collect::<Vec<_>>().join(", ")
        };
        match self {
            SemistarExpr::Identity => "d".into(),
            SemistarExpr::Divisorial => "v".into(),
            SemistarExpr::Extend(ov) => format!("ext {}", ov.format(ring)),
            SemistarExpr::MeetValuations(ys) => {
                let v: Vec<String> = ys.iter().map(|y| y.format()).collect();
                format!("wedge{{{}}}", v.join(", "))
            }
            SemistarExpr::LocalizeAtPrimes(ps) => format!("h{{{}}}", fam(ps)),
            SemistarExpr::Meet(xs) => format!("meet({})", list(xs)),
            SemistarExpr::Join { stars, cap } => format!("join({}; cap {cap})", list(stars)),
            SemistarExpr::StableApprox { star, family } => {
                format!("stable({}; {{{}}})", star.format(ring), fam(family))
            }
            SemistarExpr::EabHApprox { star, family } => {
                format!("eab_h({}; {{{}}})", star.format(ring), fam(family))
            }
            SemistarExpr::NewtonB => "b".into(),
        }
    }
}

impl fmt::Debug for SemistarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemistarExpr::Identity => write!(f, "Identity"),
            SemistarExpr::Divisorial => write!(f, "Divisorial"),
            SemistarExpr::Extend(ov) => write!(f, "Extend({ov:?})"),
            SemistarExpr::MeetValuations(ys) => write!(f, "MeetValuations({ys:?})"),
            SemistarExpr::LocalizeAtPrimes(ps) => write!(f, "LocalizeAtPrimes({ps:?})"),
            SemistarExpr::Meet(xs) => write!(f, "Meet({xs:?})"),
            SemistarExpr::Join { stars, cap } => write!(f, "Join({stars:?}, {cap})"),
            SemistarExpr::StableApprox { star, family } => write!(f, "StableApprox({star:?}, {family:?})"),
            SemistarExpr::EabHApprox { star, family } => write!(f, "EabHApprox({star:?}, {family:?})"),
            SemistarExpr::NewtonB => write!(f, "NewtonB"),
        }
    }
}

/// The value `F^⋆` of a semistar operation on one ideal.
#[derive(Clone, Debug)]
pub enum ClosureHandle {
    Finite(FractionalIdeal),
    Oracle(Oracle),
}

/// A closure known only through membership queries.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub(crate) ring: GradedRing,
    pub(crate) caps: Caps,
    /// The ideal the closure was taken of.
    pub(crate) base: FractionalIdeal,
    pub(crate) kind: OracleKind,
}

#[derive(Clone, Debug)]
pub(crate) enum OracleKind {
    /// `F·T`.
    Extension(Overring),
    /// `⋂_{V ∈ Y} F·V`.
    Wedge(Vec<GrValuation>),
    /// Intersection of closures.
    Meet(Vec<ClosureHandle>),
    /// A join fixpoint that hit its cap: `lower` plus the last round.
    Join { lower: FractionalIdeal, pending: Vec<ClosureHandle> },
    /// `lower + ⋃_j ((F H_j)^⋆ : H_j)` with oracle parts.
    ColonUnion { lower: FractionalIdeal, parts: Vec<(Vec<KElement>, ClosureHandle)> },
    /// Known only between two explicit ideals.
    Bounds { lower: FractionalIdeal, upper: FractionalIdeal },
}

impl ClosureHandle {
    pub fn is_finite(&self) -> bool {
        matches!(self, ClosureHandle::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&FractionalIdeal> {
        match self {
            ClosureHandle::Finite(f) => Some(f),
            ClosureHandle::Oracle(_) => None,
        }
    }

    /// Is `z` in the closure?
    pub fn contains(&self, z: &KElement) -> Verdict {
        if z.is_zero() {
            return Verdict::True;
        }
        match self {
            ClosureHandle::Finite(f) => Verdict::from_bool(f.member(z)),
            ClosureHandle::Oracle(o) => o.contains(z),
        }
    }

    /// Known members: the generators for explicit closures, otherwise a
    /// bounded sample. Every returned element is a member.
    pub fn sample_members(&self, level: u32) -> Vec<KElement> {
        match self {
            ClosureHandle::Finite(f) => f.generators(),
            ClosureHandle::Oracle(o) => o.sample_members(level),
        }
    }

    /// Is the closure contained in R_H? Exact for explicit closures.
    pub fn subset_of_rh(&self, ring: &GradedRing) -> Verdict {
        match self {
            ClosureHandle::Finite(f) => Verdict::from_bool(in_rh(&f.generators(), ring)),
            ClosureHandle::Oracle(o) => o.subset_of_rh(),
        }
    }

    /// The highest cap any part of this handle may report.
    pub fn cap(&self) -> Option<u32> {
        match self {
            ClosureHandle::Finite(_) => None,
            ClosureHandle::Oracle(o) => Some(o.cap()),
        }
    }

    pub fn format(&self, ring: &GradedRing) -> String {
        match self {
            ClosureHandle::Finite(f) => f.format(ring),
            ClosureHandle::Oracle(o) => {
                let what = match &o.kind {
                    OracleKind::Extension(ov) => format!("F·{}", ov.format(ring)),
                    OracleKind::Wedge(ys) => format!("wedge over {} valuations", ys.len()),
                    OracleKind::Meet(hs) => format!("meet of {} closures", hs.len()),
                    OracleKind::Join { .. } => "capped join".into(),
                    OracleKind::ColonUnion { .. } => "union of colons".into(),
                    OracleKind::Bounds { lower, upper } => {
                        format!("between {} and {}", lower.format(ring), upper.format(ring))
                    }
                };
                format!("oracle[{}; F = {}]", what, o.base.format(ring))
            }
        }
    }
}

fn in_rh(zs: &[KElement], ring: &GradedRing) -> bool {
    zs.iter().all(|z| rh_membership(ring, z).unwrap_or(true))
}

impl Oracle {
    pub fn base(&self) -> &FractionalIdeal {
        &self.base
    }

    fn cap(&self) -> u32 {
        match &self.kind {
            OracleKind::Extension(_) => 0,
            OracleKind::Wedge(_) => self.caps.ascent,
            OracleKind::Meet(hs) => hs.iter().filter_map(|h| h.cap()).max().unwrap_or(0),
            OracleKind::Join { .. } => self.caps.join,
            OracleKind::ColonUnion { .. } | OracleKind::Bounds { .. } => self.caps.sample_level,
        }
    }

    pub fn contains(&self, z: &KElement) -> Verdict {
        match &self.kind {
            OracleKind::Extension(ov) => Verdict::from_bool(ov.module_member(&self.base, z)),
            OracleKind::Wedge(ys) => wedge_member(ys, &self.base, z, self.caps.ascent),
            OracleKind::Meet(hs) => Verdict::all(hs.iter().map(|h| h.contains(z))),
            OracleKind::Join { lower, pending } => {
                if lower.member(z) || pending.iter().any(|h| h.contains(z).is_true()) {
                    Verdict::True
                } else {
                    Verdict::Unknown { cap: self.caps.join }
                }
            }
            OracleKind::ColonUnion { lower, parts } => {
                if lower.member(z) {
                    return Verdict::True;
                }
                let hit = parts.iter().any(|(hs, closure)| {
                    hs.iter().all(|h| closure.contains(&z.mul(h)).is_true())
                });
                if hit {
                    Verdict::True
                } else {
                    Verdict::Unknown { cap: self.caps.sample_level }
                }
            }
            OracleKind::Bounds { lower, upper } => {
                if lower.member(z) {
                    Verdict::True
                } else if !upper.member(z) {
                    Verdict::False
                } else {
                    Verdict::Unknown { cap: self.caps.sample_level }
                }
            }
        }
    }

    pub fn sample_members(&self, level: u32) -> Vec<KElement> {
        let mut out = match &self.kind {
            OracleKind::Extension(ov) => ov.sample_module(&self.base, level),
            OracleKind::Wedge(ys) => {
                let mut out = self.base.generators();
                let units = common_ratios(&self.ring, ys, level);
                for g in self.base.generators() {
                    for u in &units {
                        out.push(g.mul(u));
                    }
                }
                out
            }
            OracleKind::Meet(hs) => {
                let mut out = self.base.generators();
                for h in hs {
                    for z in h.sample_members(level) {
                        if hs.iter().all(|k| k.contains(&z).is_true()) {
                            out.push(z);
                        }
                    }
                }
                out
            }
            OracleKind::Join { lower, pending } => {
                let mut out = lower.generators();
                for h in pending {
                    out.extend(h.sample_members(level));
                }
                out
            }
            OracleKind::ColonUnion { lower, .. } | OracleKind::Bounds { lower, .. } => lower.generators(),
        };
        dedup(&mut out);
        out
    }

    fn subset_of_rh(&self) -> Verdict {
        let base_in = in_rh(&self.base.generators(), &self.ring);
        match &self.kind {
            OracleKind::Extension(Overring::Adjoin(a)) => {
                Verdict::from_bool(base_in && in_rh(a.elems(), &self.ring))
            }
            OracleKind::Extension(Overring::LocalizeH(..)) | OracleKind::Wedge(_) => Verdict::from_bool(base_in),
            OracleKind::Extension(Overring::LocalizePrime(_)) => {
                let samples = self.sample_members(self.caps.sample_level);
                if in_rh(&samples, &self.ring) {
                    Verdict::Unknown { cap: self.caps.sample_level }
                } else {
                    Verdict::False
                }
            }
            OracleKind::Meet(hs) => Verdict::any(hs.iter().map(|h| h.subset_of_rh(&self.ring))),
            OracleKind::Bounds { upper, .. } => Verdict::from_bool(in_rh(&upper.generators(), &self.ring)),
            OracleKind::Join { .. } | OracleKind::ColonUnion { .. } => {
                let samples = self.sample_members(self.caps.sample_level);
                if in_rh(&samples, &self.ring) {
                    Verdict::Unknown { cap: self.cap() }
                } else {
                    Verdict::False
                }
            }
        }
    }
}

/// Monomial ratios `x^a/x^b` of total degree at most `level` on each side
/// that lie in every valuation ring of `ys`.
fn common_ratios(ring: &GradedRing, ys: &[GrValuation], level: u32) -> Vec<KElement> {
    let n = ring.nvars();
    let ms = monomials_up_to(n, level.max(1));
    let mut out = Vec::new();
    for a in &ms {
        for b in &ms {
            if a == b || !a.is_coprime(b) {
                continue;
            }
            let z = KElement::from_parts(
                crate::algebra::Polynomial::monomial(a.clone()),
                crate::algebra::Polynomial::monomial(b.clone()),
            );
            if ys.iter().all(|v| v.contains(&z)) {
                out.push(z);
            }
        }
    }
    out
}

pub(crate) fn dedup(zs: &mut Vec<KElement>) {
    let mut seen: Vec<KElement> = Vec::with_capacity(zs.len());
    for z in zs.drain(..) {
        if !z.is_zero() && !seen.contains(&z) {
            seen.push(z);
        }
    }
    *zs = seen;
}
