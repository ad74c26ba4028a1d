//! Overrings `R[u_1..u_k]`, `R_{H∖p}` and `R_p`, and membership in `F·T`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{eliminate_front, Ideal, Monomial, Polynomial};
use crate::fractional::{FractionalIdeal, KElement};
use crate::grading::{monomials_up_to, GradedRing};
use crate::verdict::Verdict;

/// An overring of R.
#[derive(Clone)]
pub enum Overring {
    /// `R[u_1..u_k]`.
    Adjoin(Adjunction),
    /// `R_{H∖p}` for a homogeneous prime `p`.
    LocalizeH(GradedRing, Ideal),
    /// `R_p` for a prime `p`.
    LocalizePrime(Ideal),
}

/// `R[u_1..u_k]` with a lazily computed presentation ideal.
#[derive(Clone)]
pub struct Adjunction {
    nvars: usize,
    elems: Vec<KElement>,
    presentation: Arc<OnceLock<Ideal>>,
}

impl Overring {
    pub fn adjoin(ring: &GradedRing, elems: Vec<KElement>) -> Overring {
        Overring::Adjoin(Adjunction {
            nvars: ring.nvars(),
            elems,
            presentation: Arc::new(OnceLock::new()),
        })
    }

    /// `R[1/f]`.
    pub fn localize_at(ring: &GradedRing, f: &Polynomial) -> Overring {
        let u = KElement::new(ring.one(), f.clone()).expect("nonzero f");
        Overring::adjoin(ring, vec![u])
    }

    /// Is `z` in `F·T`? Exact for every kind.
    pub fn module_member(&self, f: &FractionalIdeal, z: &KElement) -> bool {
        if z.is_zero() {
            return true;
        }
        match self {
            Overring::Adjoin(a) => a.module_member(f, z),
            Overring::LocalizeH(ring, p) => {
                // some homogeneous element of (F :_R z) lies outside p
                let j = colon_into_ring(f, z);
                let star = ring.largest_homogeneous_subideal(&j);
                !p.contains(&star)
            }
            Overring::LocalizePrime(p) => {
                let j = colon_into_ring(f, z);
                !p.contains(&j)
            }
        }
    }

    pub fn contains(&self, z: &KElement) -> bool {
        self.module_member(&FractionalIdeal::unit(z.nvars()), z)
    }

    /// Elements of `F·T` obtained from the generators of `F` by
    /// multiplying with a few elements of `T`; `level` bounds their size.
    pub fn sample_module(&self, f: &FractionalIdeal, level: u32) -> Vec<KElement> {
        let gens = f.generators();
        let mut out = Vec::new();
        for t in self.sample_units(f.nvars(), level) {
            for g in &gens {
                out.push(g.mul(&t).cancel_monomials());
            }
        }
        out
    }

    /// A few elements of `T`, starting with 1.
    pub fn sample_units(&self, nvars: usize, level: u32) -> Vec<KElement> {
        let one = KElement::from_poly(Polynomial::one(nvars));
        match self {
            Overring::Adjoin(a) => a.monomials(level.max(1)),
            Overring::LocalizeH(ring, p) => {
                let mut out = vec![one];
                for m in monomials_up_to(nvars, level.max(1)) {
                    let d = Polynomial::monomial(m);
                    if !d.is_one() && !p.member(&d) {
                        out.push(KElement::new(Polynomial::one(nvars), d).expect("nonzero"));
                    }
                }
                // homogeneous binomials outside p
                for i in 0..nvars {
                    for j in (i + 1)..nvars {
                        let (a, b) = (ring.var(i), ring.var(j));
                        if ring.var_degree(i) == ring.var_degree(j) {
                            let d = &a + &b;
                            if !p.member(&d) {
                                out.push(KElement::new(Polynomial::one(nvars), d).expect("nonzero"));
                            }
                        }
                    }
                }
                out
            }
            Overring::LocalizePrime(p) => {
                let mut out = vec![one];
                for i in 0..nvars {
                    let x = Polynomial::var(nvars, i);
                    let c = Polynomial::one(nvars);
                    for d in [x.clone(), &x + &c, &x - &c] {
                        if !p.member(&d) {
                            out.push(KElement::new(Polynomial::one(nvars), d).expect("nonzero"));
                        }
                    }
                }
                out
            }
        }
    }

    pub fn format(&self, ring: &GradedRing) -> String {
        match self {
            Overring::Adjoin(a) => {
                let us: Vec<String> = a.elems.iter().map(|u| u.format(ring)).collect();
                format!("R[{}]", us.join(", "))
            }
            Overring::LocalizeH(_, p) => format!("R_(H\\{})", ring.fmt_ideal(p)),
            Overring::LocalizePrime(p) => format!("R_{}", ring.fmt_ideal(p)),
        }
    }
}

/// `(F :_R z) = (b I : a h)` for `F = (1/h)I` and `z = a/b`.
pub fn colon_into_ring(f: &FractionalIdeal, z: &KElement) -> Ideal {
    let target = z.num() * f.den();
    f.num()
        .scale(z.den())
        .quotient(&target)
        .expect("nonzero element")
}

impl Adjunction {
    pub fn elems(&self) -> &[KElement] {
        &self.elems
    }

    /// The kernel of `R[Y] -> K, Y_j -> u_j`, in variables `Y_1..Y_k, x`:
    /// `(b_j Y_j - a_j) : (b_1...b_k)^∞`.
    pub fn presentation(&self) -> &Ideal {
        self.presentation.get_or_init(|| {
            let k = self.elems.len();
            let n = self.nvars;
            // variables: s, Y_1..Y_k, x_1..x_n
            let total = 1 + k + n;
            let mut gens = Vec::new();
            let mut prod = Polynomial::one(total);
            let mut all_const = true;
            for (j, u) in self.elems.iter().enumerate() {
                let a = u.num().extend_front(1 + k);
                let b = u.den().extend_front(1 + k);
                all_const &= u.den().is_constant();
                gens.push(&(&b * &Polynomial::var(total, 1 + j)) - &a);
                prod = &prod * &b;
            }
            if all_const {
                let stripped = gens.iter().map(|g| g.strip_front(1).expect("no s")).collect();
                return Ideal::from_gens(k + n, stripped);
            }
            gens.push(&(&Polynomial::var(total, 0) * &prod) - &Polynomial::one(total));
            eliminate_front(&gens, 1, k + n)
        })
    }

    /// `z = p/q ∈ (1/h) I T` iff `p h ∈ (q I) R[Y] + P`.
    pub fn module_member(&self, f: &FractionalIdeal, z: &KElement) -> bool {
        let k = self.elems.len();
        let p = self.presentation();
        let target = (z.num() * f.den()).extend_front(k);
        let mut gens: Vec<Polynomial> = f
            .num()
            .nonzero_gens()
            .map(|g| (g * z.den()).extend_front(k))
            .collect();
        gens.extend(p.gens().iter().cloned());
        Ideal::from_gens(k + self.nvars, gens).member(&target)
    }

    /// Monomials in the `u_j` of total degree at most `m`.
    pub fn monomials(&self, m: u32) -> Vec<KElement> {
        monomials_up_to(self.elems.len(), m)
            .into_iter()
            .map(|e| self.eval_monomial(&e))
            .collect()
    }

    fn eval_monomial(&self, e: &Monomial) -> KElement {
        let mut acc = KElement::from_poly(Polynomial::one(self.nvars));
        for (u, &k) in self.elems.iter().zip(e.exponents()) {
            for _ in 0..k {
                acc = acc.mul(u);
            }
        }
        acc
    }

    /// The module `F·T_m` with `T_m` spanned by the monomials of degree at
    /// most `m`.
    pub fn ascent_module(&self, f: &FractionalIdeal, m: u32) -> FractionalIdeal {
        let mut acc = f.clone();
        for mu in self.monomials(m) {
            if mu.is_polynomial() && mu.den().is_one() && mu.num().is_one() {
                continue;
            }
            acc = acc.sum(&f.scale(&mu));
        }
        acc
    }

    /// Bounded ascent: true once `z ∈ F·T_m` for some `m <= cap`.
    pub fn ascent_member(&self, f: &FractionalIdeal, z: &KElement, cap: u32) -> Verdict {
        for m in 0..=cap {
            if self.ascent_module(f, m).member(z) {
                return Verdict::True;
            }
        }
        Verdict::Unknown { cap }
    }
}

impl fmt::Debug for Overring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Overring::Adjoin(a) => write!(f, "R[{:?}]", a.elems),
            Overring::LocalizeH(_, p) => write!(f, "R_(H\\{p:?})"),
            Overring::LocalizePrime(p) => write!(f, "R_{p:?}"),
        }
    }
}
