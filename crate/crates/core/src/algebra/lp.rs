//! Exact phase-one simplex for feasibility of `A x = b, x >= 0`.

use num_traits::{Signed, Zero};

use super::Rational;

/// Returns a feasible point of `{x >= 0 : A x = b}` or `None`.
///
/// Uses artificial variables and Bland's rule, so it terminates on every
/// input; all arithmetic is exact.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    // tableau rows: [A | I | b] with b made nonnegative
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row = Vec::with_capacity(width);
        for j in 0..n {
            row.push(if neg { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rational::from_integer(1.into()) } else { Rational::zero() });
        }
        row.push(b[i].abs());
        t.push(row);
    }
    // objective: minimize the sum of artificials, stored as reduced costs
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let costs = &t[m];
        let Some(enter) = (0..n + m).find(|&j| costs[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded in phase one cannot happen; treat as optimal
            break;
        };
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }

    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for v in t[r].iter_mut() {
        *v *= &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (a, p) in row.iter_mut().zip(&prow) {
                *a -= &f * p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn simplex_point() {
        // x + y = 1, x - y = 0
        let a = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]];
        let x = feasible_point(&a, &[rat(1), rat(0)]).unwrap();
        assert_eq!(x, vec![Rational::new(1.into(), 2.into()); 2]);
    }

    #[test]
    fn infeasible_detected() {
        // x + y = -1 with x, y >= 0
        let a = vec![vec![rat(1), rat(1)]];
        assert!(feasible_point(&a, &[rat(-1)]).is_none());
    }
}
