//! Dense exact linear algebra over Q.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::Rational;

/// Row-reduces in place; returns the pivot column of each nonzero row.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a -= &f * b;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right kernel `{v : M v = 0}`.
pub fn kernel(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = matrix.to_vec();
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::from_integer(1.into());
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Coordinates of polynomials over a shared monomial index.
pub struct MonomialIndex {
    index: BTreeMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let mut index = BTreeMap::new();
        for p in polys {
            for m in p.monomials() {
                let n = index.len();
                index.entry(m.clone()).or_insert(n);
            }
        }
        MonomialIndex { index }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// `None` if `p` uses a monomial outside the index.
    pub fn vector(&self, p: &Polynomial) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.index.len()];
        for (m, c) in p.terms() {
            v[*self.index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn polynomial(&self, v: &[Rational], nvars: usize) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.index.iter().map(|(m, &i)| (m.clone(), v[i].clone())),
        )
    }
}

/// Is `target` a Q-linear combination of `span`?
pub fn in_linear_span(span: &[Polynomial], target: &Polynomial) -> bool {
    if target.is_zero() {
        return true;
    }
    let idx = MonomialIndex::new(span.iter().chain(std::iter::once(target)));
    let mut rows: Vec<Vec<Rational>> = span.iter().filter_map(|p| idx.vector(p)).collect();
    let rank = rref(&mut rows).len();
    rows.push(idx.vector(target).expect("indexed"));
    rref(&mut rows).len() == rank
}

/// Echelon basis of the Q-span of `polys`, as polynomials.
pub fn span_basis(polys: &[Polynomial], nvars: usize) -> Vec<Polynomial> {
    let idx = MonomialIndex::new(polys.iter());
    let mut rows: Vec<Vec<Rational>> = polys.iter().filter_map(|p| idx.vector(p)).collect();
    rref(&mut rows);
    rows.iter().map(|r| idx.polynomial(r, nvars)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![q(1), q(2), q(3)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = &v[0] + q(2) * &v[1] + q(3) * &v[2];
            assert!(s.is_zero());
        }
    }

    #[test]
    fn span_membership() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = |s: &str| crate::algebra::format::parse_polynomial(s, &names).unwrap();
        let span = [p("x + y"), p("x - y")];
        assert!(in_linear_span(&span, &p("3*x")));
        assert!(!in_linear_span(&span, &p("x*y")));
    }
}
