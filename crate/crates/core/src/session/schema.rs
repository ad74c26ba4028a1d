//! The JSON shape of session files. Declarations refer to each other by
//! name; most places that take a name also accept an inline literal.

use serde::{Deserialize, Serialize};

use crate::kronecker::KrMode;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    pub ring: RingDecl,
    /// Default seed of every corpus that does not carry its own.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub caps: CapsOverride,
    /// Adds `timing_ms` to every record. Off by default so that reports
    /// are reproducible byte for byte.
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub ideals: Vec<IdealDecl>,
    #[serde(default)]
    pub valuations: Vec<ValuationDecl>,
    #[serde(default)]
    pub stars: Vec<StarDecl>,
    #[serde(default)]
    pub corpora: Vec<CorpusDecl>,
    #[serde(default)]
    pub checks: Vec<CheckDecl>,
}

/// Variable names and the rows of the degree matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDecl {
    pub vars: Vec<String>,
    pub degrees: Vec<Vec<u32>>,
}

/// `{ "den": "<poly>", "gens": ["<poly>", ...] }`; `den` defaults to 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealLit {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<String>,
    pub gens: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<String>,
    pub gens: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealRef {
    Name(String),
    Lit(IdealLit),
}

/// `{ "weights": [[1,2],[0,1]] }`, a lex stack of weight vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationLit {
    pub weights: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationDecl {
    pub name: String,
    pub weights: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValuationRef {
    Name(String),
    Lit(ValuationLit),
}

/// The overring of an `extend` star: exactly one field is set.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverringLit {
    /// `R[u_1, ..., u_k]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjoin: Option<Vec<String>>,
    /// `R[1/f]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invert: Option<String>,
    /// `R_p`, the generators of a prime `p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<Vec<String>>,
    /// `R_{H∖p}` for a homogeneous prime `p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homogeneous_prime: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case", deny_unknown_fields)]
pub enum StarLit {
    Identity,
    Divisorial,
    /// Integral closure of monomial ideals via Newton polyhedra.
    B,
    Extend(OverringLit),
    MeetValuations {
        valuations: Vec<ValuationRef>,
    },
    /// `h_X`: meet of the extensions to `R_{H∖p}`, `p ∈ X`.
    Localize {
        primes: Vec<Vec<String>>,
    },
    Meet {
        stars: Vec<StarRef>,
    },
    Join {
        stars: Vec<StarRef>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cap: Option<u32>,
    },
    StableApprox {
        star: Box<StarRef>,
        family: Vec<Vec<String>>,
    },
    EabHApprox {
        star: Box<StarRef>,
        family: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StarRef {
    Name(String),
    Expr(StarLit),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarDecl {
    pub name: String,
    pub expr: StarLit,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    #[default]
    Mixed,
    Monomial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub count: usize,
    pub max_degree: u32,
    #[serde(default)]
    pub kind: CorpusKind,
}

/// Per-check cap overrides; unset fields inherit the session caps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ascent: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subideal_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dm_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_level: Option<u32>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    #[default]
    All,
    Homogeneous,
    Monomial,
}

/// A list of ideals: a corpus (optionally one of its sublists) or
/// explicit references.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Corpus {
        corpus: String,
        #[serde(default)]
        part: Part,
    },
    List(Vec<IdealRef>),
}

/// `{ "num": ["<poly>", ...], "den": ["<poly>", ...] }`, index = power of X.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionLit {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

/// Points of a finite sample: exactly one list is set.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDecl {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuations: Option<Vec<ValuationRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stars: Option<Vec<StarRef>>,
}

/// Subbasic opens: `Zar_h(R[u])`, `D_h(f)` and `W_E`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpensDecl {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zar: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub w: Vec<IdealRef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckDecl {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<CapsOverride>,
    /// The check is expected to fail: pass and fail are swapped, witnesses
    /// are kept.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub expect_fail: bool,
    #[serde(flatten)]
    pub kind: CheckKind,
}

fn default_true() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum CheckKind {
    /// The four axioms; scalars default to the corpus scalars.
    Axioms {
        star: StarRef,
        ideals: Source,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scalars: Option<Vec<String>>,
    },
    /// Homogeneous ideals have homogeneous closures. Corpus sources use
    /// their homogeneous sublist.
    PreserveHomogeneity { star: StarRef, ideals: Source },
    Compare {
        star: StarRef,
        other: StarRef,
        ideals: Source,
        /// One of `<=`, `>=`, `=`, `incomparable`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<String>,
    },
    /// `z ∈ F^⋆`.
    Member {
        star: StarRef,
        ideal: IdealRef,
        element: String,
        #[serde(default = "default_true", skip_serializing_if = "is_true")]
        expect: bool,
    },
    Eab {
        star: StarRef,
        ideals: Source,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        limit: Option<usize>,
    },
    Stability { star: StarRef, ideals: Source },
    /// `I^⋆ ∩ R = I`.
    QuasiIdeal {
        star: StarRef,
        ideal: Vec<String>,
        #[serde(default = "default_true", skip_serializing_if = "is_true")]
        expect: bool,
    },
    GrStarValuation {
        valuation: ValuationRef,
        star: StarRef,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        approx: Option<StarRef>,
        ideals: Source,
    },
    DedekindMertens {
        f: String,
        g: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<u32>,
    },
    HomogeneousWitness { f: String, j: Vec<String>, i: Vec<String> },
    Newton {
        ideal: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<Vec<String>>,
    },
    JoinSemantics {
        stars: Vec<StarRef>,
        ideals: Source,
        #[serde(default)]
        single_round: bool,
    },
    KrMembership {
        star: StarRef,
        mode: KrMode,
        element: FunctionLit,
        /// Ideals on which the cancellation law is verified first.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        verify: Option<Source>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        family: Vec<Vec<String>>,
        #[serde(default = "default_true", skip_serializing_if = "is_true")]
        expect: bool,
    },
    KrIdealClosure {
        star: StarRef,
        ideal: IdealRef,
        element: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        verify: Option<Source>,
        #[serde(default = "default_true", skip_serializing_if = "is_true")]
        expect: bool,
    },
    DegreeRoundtrip {
        valuation: ValuationRef,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exp_bound: Option<u32>,
    },
    Rewrites {
        valuations: Vec<ValuationRef>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        elements: Vec<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        functions: Vec<FunctionLit>,
    },
    Specialization {
        points: PointsDecl,
        opens: OpensDecl,
    },
    Retraction {
        overrings: Vec<OverringLit>,
        stars: Vec<StarRef>,
        elements: Vec<String>,
    },
    Ultrafilter { points: PointsDecl, at: usize, #[serde(default)] family: Vec<IdealRef> },
}

impl CheckKind {
    pub fn tag(&self) -> &'static str {
        match self {
            CheckKind::Axioms { .. } => "axioms",
            CheckKind::PreserveHomogeneity { .. } => "preserve_homogeneity",
            CheckKind::Compare { .. } => "compare",
            CheckKind::Member { .. } => "member",
            CheckKind::Eab { .. } => "eab",
            CheckKind::Stability { .. } => "stability",
            CheckKind::QuasiIdeal { .. } => "quasi_ideal",
            CheckKind::GrStarValuation { .. } => "gr_star_valuation",
            CheckKind::DedekindMertens { .. } => "dedekind_mertens",
            CheckKind::HomogeneousWitness { .. } => "homogeneous_witness",
            CheckKind::Newton { .. } => "newton",
            CheckKind::JoinSemantics { .. } => "join_semantics",
            CheckKind::KrMembership { .. } => "kr_membership",
            CheckKind::KrIdealClosure { .. } => "kr_ideal_closure",
            CheckKind::DegreeRoundtrip { .. } => "degree_roundtrip",
            CheckKind::Rewrites { .. } => "rewrites",
            CheckKind::Specialization { .. } => "specialization",
            CheckKind::Retraction { .. } => "retraction",
            CheckKind::Ultrafilter { .. } => "ultrafilter",
        }
    }
}
