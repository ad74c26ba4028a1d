//! Text format for polynomials and rational functions.
//!
//! Polynomials print as sums of terms `c*x^a*y^b` in descending
//! degree-reverse-lexicographic order, e.g. `x^2 - 1/2*x*y + 3`. A
//! coefficient of one and exponents of one are omitted. The parser accepts
//! this format plus parentheses, `/` and integer powers, so `x/(x - 1)` and
//! `(x + y)^2` are valid inputs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::MonomialOrder;
use super::polynomial::Polynomial;
use super::Rational;
use crate::{Error, Result};

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn format_polynomial(p: &Polynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let order = MonomialOrder::DegRevLex;
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| order.cmp(b.0, a.0));
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| {
                let name = names.get(j).cloned().unwrap_or_else(|| format!("x{j}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&format_rational(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&format_rational(&abs));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Formats `num/den`, parenthesizing multi-term parts.
pub fn format_fraction(num: &Polynomial, den: &Polynomial, names: &[String]) -> String {
    let n = format_polynomial(num, names);
    if den.is_one() {
        return n;
    }
    let wrap = |p: &Polynomial, s: String| {
        if p.num_terms() > 1 || (p.is_term() && s.contains('*')) {
            format!("({s})")
        } else {
            s
        }
    };
    let d = format_polynomial(den, names);
    let n = if num.num_terms() > 1 { format!("({n})") } else { n };
    format!("{}/{}", n, wrap(den, d))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, toks: vec![] };
        let bytes: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                lx.toks.push((Tok::Num(s.parse().expect("digits")), start));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                lx.toks
                    .push((Tok::Ident(bytes[start..i].iter().collect()), start));
            } else if "+-*/^()".contains(c) {
                lx.toks.push((Tok::Op(c), i));
                i += 1;
            } else {
                return Err(parse_error(lx.src, i, &format!("unexpected character '{c}'")));
            }
        }
        Ok(lx.toks)
    }
}

fn parse_error(src: &str, offset: usize, message: &str) -> Error {
    let mut line = 1;
    let mut column = 1;
    for (i, c) in src.chars().enumerate() {
        if i == offset {
            break;
        }
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    Error::Parse {
        line,
        column,
        message: format!("{message} in \"{src}\""),
    }
}

/// A numerator/denominator pair produced by the parser.
#[derive(Clone)]
struct Frac {
    num: Polynomial,
    den: Polynomial,
}

impl Frac {
    fn normalize(self) -> Frac {
        if let Some(c) = self.den.constant_value() {
            let inv = c.recip();
            let n = self.num.nvars();
            return Frac {
                num: self.num.scale(&inv),
                den: Polynomial::one(n),
            };
        }
        self
    }
    fn add(self, o: Frac) -> Frac {
        if self.den == o.den {
            return Frac {
                num: &self.num + &o.num,
                den: self.den,
            }
            .normalize();
        }
        Frac {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .normalize()
    }
    fn neg(self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den,
        }
    }
    fn mul(self, o: Frac) -> Frac {
        Frac {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .normalize()
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }
    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.1)
            .unwrap_or_else(|| self.src.chars().count())
    }
    fn err(&self, msg: &str) -> Error {
        parse_error(self.src, self.offset(), msg)
    }
    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(rhs) } else { acc.add(rhs.neg()) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '*' && c != '/' {
                break;
            }
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = acc.mul(rhs);
            } else {
                if rhs.num.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = acc.mul(Frac {
                    num: rhs.den,
                    den: rhs.num,
                });
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Num(k)) => {
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    k
                }
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            };
            return Ok(Frac {
                num: base.num.pow(e),
                den: base.den.pow(e),
            }
            .normalize());
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac> {
        let n = self.n();
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.pos += 1;
                Ok(Frac {
                    num: Polynomial::constant(n, Rational::from_integer(k)),
                    den: Polynomial::one(n),
                })
            }
            Some(Tok::Ident(name)) => {
                let idx = self
                    .names
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| self.err(&format!("unknown variable '{name}'")))?;
                self.pos += 1;
                Ok(Frac {
                    num: Polynomial::var(n, idx),
                    den: Polynomial::one(n),
                })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parses a rational function in the given variables, returning
/// `(numerator, denominator)` with the denominator nonzero.
pub fn parse_fraction(src: &str, names: &[String]) -> Result<(Polynomial, Polynomial)> {
    let toks = Lexer::run(src)?;
    let mut p = Parser {
        src,
        toks,
        pos: 0,
        names,
    };
    if p.toks.is_empty() {
        return Err(p.err("empty expression"));
    }
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    if f.den.is_zero() {
        return Err(Error::ZeroDivision(src.to_string()));
    }
    Ok((f.num, f.den))
}

/// Parses a polynomial; a denominator must be a nonzero constant.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial> {
    let (num, den) = parse_fraction(src, names)?;
    match den.constant_value() {
        Some(c) if !c.is_zero() => Ok(num.scale(&c.recip())),
        _ => Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("\"{src}\" is not a polynomial"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn format_matches_text_format() {
        let p = parse_polynomial("3*x^2*y - 1/2*y + x*1 - 1", &names()).unwrap();
        assert_eq!(format_polynomial(&p, &names()), "3*x^2*y + x - 1/2*y - 1");
        let q = parse_polynomial("-x^2 + x*y - y^2", &names()).unwrap();
        assert_eq!(format_polynomial(&q, &names()), "-x^2 + x*y - y^2");
    }

    #[test]
    fn parses_powers_and_parentheses() {
        let p = parse_polynomial("(x+y)^2", &names()).unwrap();
        let q = parse_polynomial("x^2 + 2*x*y + y^2", &names()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn fraction_round_trip() {
        let (n, d) = parse_fraction("x/(x - 1)", &names()).unwrap();
        assert_eq!(format_fraction(&n, &d, &names()), "x/(x - 1)");
        let (n, d) = parse_fraction("(x+y)/x", &names()).unwrap();
        assert_eq!(format_fraction(&n, &d, &names()), "(x + y)/x");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial("x + z", &names()) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!((line, column), (1, 5));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial("x/y", &names()).is_err());
        assert!(parse_fraction("x/0", &names()).is_err());
    }
}
