//! Exact polynomial arithmetic over Q and the Groebner kernel.

pub mod format;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod lp;
pub mod monomial;
pub mod polynomial;

pub use format::{format_fraction, format_polynomial, parse_fraction, parse_polynomial};
pub use groebner::{groebner_basis, normal_form};
pub use ideal::{eliminate_front, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::Polynomial;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
