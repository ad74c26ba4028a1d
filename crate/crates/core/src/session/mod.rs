//! Session files: a ring, named declarations and a list of checks, run in
//! declaration order into a [`Report`].

mod directives;
mod report;
pub mod schema;

use std::collections::HashMap;

use crate::algebra::{Ideal, Polynomial};
use crate::corpus::TestCorpus;
use crate::fractional::{FractionalIdeal, KElement};
use crate::grading::{AuxPolynomial, GradedRing};
use crate::grvaluation::GrValuation;
use crate::semistar::{Overring, SemistarExpr};
use crate::verdict::Caps;
use crate::{Error, Result};

pub use report::{run_session, verdict_string, CheckRecord, Report, RunOptions, Summary};
use schema::*;

/// A parsed and validated session.
pub struct Session {
    pub(crate) file: SessionFile,
    pub(crate) ctx: Context,
    pub(crate) jobs: Vec<directives::Prepared>,
}

pub(crate) struct Context {
    src: String,
    pub(crate) ring: GradedRing,
    pub(crate) caps: Caps,
    pub(crate) seed: Option<u64>,
    ideals: HashMap<String, FractionalIdeal>,
    valuations: HashMap<String, GrValuation>,
    stars: HashMap<String, SemistarExpr>,
    corpora: HashMap<String, TestCorpus>,
}

impl Session {
    /// Parses a session. `seed` overrides the session seed.
    pub fn parse(src: &str, seed: Option<u64>) -> Result<Session> {
        let mut file: SessionFile = serde_json::from_str(src).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if seed.is_some() {
            file.seed = seed;
        }
        let ring = GradedRing::new(file.ring.vars.clone(), file.ring.degrees.clone())
            .map_err(|e| locate(src, "ring", e.to_string()))?;
        let mut ctx = Context {
            src: src.to_string(),
            ring,
            caps: Caps::default(),
            seed: file.seed,
            ideals: HashMap::new(),
            valuations: HashMap::new(),
            stars: HashMap::new(),
            corpora: HashMap::new(),
        };
        ctx.caps = ctx.caps_with(&file.caps)?;
        for d in &file.ideals {
            ctx.fresh(&d.name)?;
            let f = ctx.ideal_lit(d.den.as_deref(), &d.gens)?;
            ctx.ideals.insert(d.name.clone(), f);
        }
        for d in &file.valuations {
            ctx.fresh(&d.name)?;
            let v = ctx.valuation_lit(&d.weights)?;
            ctx.valuations.insert(d.name.clone(), v);
        }
        // stars may refer to earlier stars only, so there are no cycles
        for d in &file.stars {
            ctx.fresh(&d.name)?;
            let s = ctx.star_lit(&d.expr)?;
            ctx.stars.insert(d.name.clone(), s);
        }
        for d in &file.corpora {
            ctx.fresh(&d.name)?;
            if d.count == 0 || d.max_degree == 0 {
                return Err(ctx.at(&d.name, "corpus count and max_degree must be positive"));
            }
            let seed = d
                .seed
                .or(ctx.seed)
                .ok_or_else(|| ctx.at(&d.name, "a corpus needs a seed (its own or the session seed)"))?;
            let c = match d.kind {
                CorpusKind::Mixed => TestCorpus::generate(&ctx.ring, seed, d.count, d.max_degree),
                CorpusKind::Monomial => TestCorpus::monomial(&ctx.ring, seed, d.count, d.max_degree),
            };
            ctx.corpora.insert(d.name.clone(), c);
        }
        let jobs = file
            .checks
            .iter()
            .enumerate()
            .map(|(i, c)| directives::prepare(&ctx, i, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Session { file, ctx, jobs })
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ctx.ring
    }

    pub fn file(&self) -> &SessionFile {
        &self.file
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }
}

/// Line and column of the first quoted occurrence of `needle`.
fn position(src: &str, needle: &str) -> Option<(usize, usize)> {
    let quoted = format!("\"{needle}\"");
    let at = src.find(&quoted).or_else(|| src.find(needle))?;
    let before = &src[..at];
    let line = before.matches('\n').count() + 1;
    let column = at - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    Some((line, column))
}

fn locate(src: &str, needle: &str, message: String) -> Error {
    match position(src, needle) {
        Some((line, column)) => Error::Parse { line, column, message },
        None => Error::Validation(message),
    }
}

impl Context {
    /// An input error located at `needle`.
    pub(crate) fn at(&self, needle: &str, message: impl Into<String>) -> Error {
        locate(&self.src, needle, message.into())
    }

    fn fresh(&self, name: &str) -> Result<()> {
        let taken = self.ideals.contains_key(name)
            || self.valuations.contains_key(name)
            || self.stars.contains_key(name)
            || self.corpora.contains_key(name);
        if taken {
            return Err(self.at(name, format!("name '{name}' is declared twice")));
        }
        Ok(())
    }

    pub(crate) fn caps_with(&self, o: &CapsOverride) -> Result<Caps> {
        let c = Caps {
            ascent: o.ascent.unwrap_or(self.caps.ascent),
            join: o.join.unwrap_or(self.caps.join),
            subideal_degree: o.subideal_degree.unwrap_or(self.caps.subideal_degree),
            dm_bound: o.dm_bound.unwrap_or(self.caps.dm_bound),
            sample_level: o.sample_level.unwrap_or(self.caps.sample_level),
        };
        if c.ascent == 0 || c.join == 0 || c.subideal_degree == 0 || c.dm_bound < 2 {
            return Err(self.at("caps", "caps must be positive and dm_bound at least 2"));
        }
        Ok(c)
    }

    fn wrap<T>(&self, s: &str, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { message, .. } => self.at(s, format!("in \"{s}\": {message}")),
            other => self.at(s, format!("in \"{s}\": {other}")),
        })
    }

    pub(crate) fn poly(&self, s: &str) -> Result<Polynomial> {
        self.wrap(s, self.ring.parse(s))
    }

    pub(crate) fn element(&self, s: &str) -> Result<KElement> {
        self.wrap(s, KElement::parse(&self.ring, s))
    }

    pub(crate) fn homogeneous_element(&self, s: &str) -> Result<KElement> {
        let z = self.element(s)?;
        if !z.is_zero() && !z.is_homogeneous(&self.ring) {
            return Err(self.at(s, format!("\"{s}\" must be homogeneous")));
        }
        Ok(z)
    }

    pub(crate) fn integral_ideal(&self, gens: &[String]) -> Result<Ideal> {
        let ps = gens.iter().map(|g| self.poly(g)).collect::<Result<Vec<_>>>()?;
        let first = gens.first().map(String::as_str).unwrap_or("gens");
        self.wrap(first, self.ring.ideal(ps))
    }

    pub(crate) fn prime(&self, gens: &[String]) -> Result<Ideal> {
        let p = self.integral_ideal(gens)?;
        let first = gens.first().map(String::as_str).unwrap_or("primes");
        if !self.ring.ideal_is_homogeneous(&p) {
            return Err(self.at(first, "homogeneous primes need homogeneous generators"));
        }
        Ok(p)
    }

    fn ideal_lit(&self, den: Option<&str>, gens: &[String]) -> Result<FractionalIdeal> {
        let num = self.integral_ideal(gens)?;
        let d = match den {
            Some(s) => self.poly(s)?,
            None => self.ring.one(),
        };
        let f = self.wrap(den.unwrap_or("den"), FractionalIdeal::new(d, num))?;
        if f.is_zero() {
            let first = gens.first().map(String::as_str).unwrap_or("gens");
            return Err(self.at(first, "fractional ideals must be nonzero"));
        }
        Ok(f)
    }

    pub(crate) fn ideal_ref(&self, r: &IdealRef) -> Result<FractionalIdeal> {
        match r {
            IdealRef::Name(n) => self
                .ideals
                .get(n)
                .cloned()
                .ok_or_else(|| self.at(n, format!("unknown ideal '{n}'"))),
            IdealRef::Lit(l) => self.ideal_lit(l.den.as_deref(), &l.gens),
        }
    }

    fn valuation_lit(&self, w: &[Vec<i64>]) -> Result<GrValuation> {
        GrValuation::new(&self.ring, w.to_vec()).map_err(|e| self.at("weights", e.to_string()))
    }

    pub(crate) fn valuation_ref(&self, r: &ValuationRef) -> Result<GrValuation> {
        match r {
            ValuationRef::Name(n) => self
                .valuations
                .get(n)
                .cloned()
                .ok_or_else(|| self.at(n, format!("unknown valuation '{n}'"))),
            ValuationRef::Lit(l) => self.valuation_lit(&l.weights),
        }
    }

    pub(crate) fn overring(&self, o: &OverringLit) -> Result<Overring> {
        let set = [o.adjoin.is_some(), o.invert.is_some(), o.prime.is_some(), o.homogeneous_prime.is_some()];
        if set.iter().filter(|b| **b).count() != 1 {
            return Err(self.at("extend", "an overring needs exactly one of adjoin, invert, prime, homogeneous_prime"));
        }
        if let Some(us) = &o.adjoin {
            let elems = us.iter().map(|u| self.element(u)).collect::<Result<Vec<_>>>()?;
            return Ok(Overring::adjoin(&self.ring, elems));
        }
        if let Some(f) = &o.invert {
            let p = self.poly(f)?;
            if p.is_zero() {
                return Err(self.at(f, "cannot invert zero"));
            }
            return Ok(Overring::localize_at(&self.ring, &p));
        }
        if let Some(g) = &o.prime {
            return Ok(Overring::LocalizePrime(self.integral_ideal(g)?));
        }
        let g = o.homogeneous_prime.as_ref().expect("one field is set");
        Ok(Overring::LocalizeH(self.ring.clone(), self.prime(g)?))
    }

    pub(crate) fn star_ref(&self, r: &StarRef) -> Result<SemistarExpr> {
        match r {
            StarRef::Name(n) => match self.stars.get(n) {
                Some(s) => Ok(s.clone()),
                None => match n.as_str() {
                    "d" | "identity" => Ok(SemistarExpr::Identity),
                    "v" | "divisorial" => Ok(SemistarExpr::Divisorial),
                    "b" => Ok(SemistarExpr::NewtonB),
                    _ => Err(self.at(n, format!("unknown star '{n}'"))),
                },
            },
            StarRef::Expr(e) => self.star_lit(e),
        }
    }

    fn family(&self, fam: &[Vec<String>]) -> Result<Vec<Ideal>> {
        fam.iter().map(|g| self.integral_ideal(g)).collect()
    }

    pub(crate) fn star_lit(&self, e: &StarLit) -> Result<SemistarExpr> {
        Ok(match e {
            StarLit::Identity => SemistarExpr::Identity,
            StarLit::Divisorial => SemistarExpr::Divisorial,
            StarLit::B => SemistarExpr::NewtonB,
            StarLit::Extend(o) => SemistarExpr::Extend(self.overring(o)?),
            StarLit::MeetValuations { valuations } => {
                if valuations.is_empty() {
                    return Err(self.at("meet_valuations", "meet_valuations needs at least one valuation"));
                }
                SemistarExpr::MeetValuations(valuations.iter().map(|v| self.valuation_ref(v)).collect::<Result<_>>()?)
            }
            StarLit::Localize { primes } => {
                if primes.is_empty() {
                    return Err(self.at("localize", "localize needs at least one prime"));
                }
                SemistarExpr::LocalizeAtPrimes(primes.iter().map(|p| self.prime(p)).collect::<Result<_>>()?)
            }
            StarLit::Meet { stars } => {
                if stars.is_empty() {
                    return Err(self.at("meet", "meet needs at least one star"));
                }
                SemistarExpr::Meet(stars.iter().map(|s| self.star_ref(s)).collect::<Result<_>>()?)
            }
            StarLit::Join { stars, cap } => {
                if stars.is_empty() {
                    return Err(self.at("join", "join needs at least one star"));
                }
                if *cap == Some(0) {
                    return Err(self.at("cap", "join cap must be positive"));
                }
                SemistarExpr::Join {
                    stars: stars.iter().map(|s| self.star_ref(s)).collect::<Result<_>>()?,
                    cap: cap.unwrap_or(self.caps.join),
                }
            }
            StarLit::StableApprox { star, family } => SemistarExpr::StableApprox {
                star: Box::new(self.star_ref(star)?),
                family: self.family(family)?,
            },
            StarLit::EabHApprox { star, family } => {
                let family = self.family(family)?;
                if !family.iter().all(|h| self.ring.ideal_is_homogeneous(h)) {
                    return Err(self.at("eab_h_approx", "eab_h_approx needs homogeneous witness ideals"));
                }
                SemistarExpr::EabHApprox {
                    star: Box::new(self.star_ref(star)?),
                    family,
                }
            }
        })
    }

    /// Ideals of a source and the scalars that come with a corpus.
    pub(crate) fn source(&self, s: &Source, default: Part) -> Result<(Vec<FractionalIdeal>, Option<Vec<KElement>>)> {
        match s {
            Source::Corpus { corpus, part } => {
                let c = self
                    .corpora
                    .get(corpus)
                    .ok_or_else(|| self.at(corpus, format!("unknown corpus '{corpus}'")))?;
                let part = if *part == Part::All { default } else { *part };
                let ideals = match part {
                    Part::All => c.ideals.clone(),
                    Part::Homogeneous => c.homogeneous_ideals(),
                    Part::Monomial => c.monomial_ideals(),
                };
                Ok((ideals, Some(c.scalars.clone())))
            }
            Source::List(rs) => Ok((rs.iter().map(|r| self.ideal_ref(r)).collect::<Result<_>>()?, None)),
        }
    }

    pub(crate) fn function(&self, l: &FunctionLit) -> Result<crate::kronecker::FunctionRingElement> {
        let n = self.aux(&l.num)?;
        let d = self.aux(&l.den)?;
        crate::kronecker::FunctionRingElement::new(n, d).map_err(|e| self.at("den", e.to_string()))
    }

    pub(crate) fn aux(&self, coeffs: &[String]) -> Result<AuxPolynomial> {
        let cs = coeffs.iter().map(|c| self.poly(c)).collect::<Result<Vec<_>>>()?;
        Ok(AuxPolynomial::new(self.ring.nvars(), cs))
    }

    /// Variables and `x_n/x_1`, the scalars used for explicit lists.
    pub(crate) fn default_scalars(&self) -> Vec<KElement> {
        let n = self.ring.nvars();
        let mut out: Vec<KElement> = (0..n).map(|i| KElement::from_poly(self.ring.var(i))).collect();
        if n > 1 {
            out.push(KElement::new(self.ring.var(n - 1), self.ring.var(0)).expect("nonzero variable"));
        }
        out
    }
}
