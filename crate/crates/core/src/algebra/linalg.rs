//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::poly::Rat;

/// Row-reduces `a` in place and returns the pivot columns.
pub fn row_reduce(a: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[Vec<Rat>]) -> usize {
    let mut m = a.to_vec();
    row_reduce(&mut m).len()
}

/// Solves `a x = b` (`a` is `m x n`). Returns `None` if the system is
/// inconsistent or the solution is not unique.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.contains(&n) || pivots.len() != n {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Determinant of a square matrix.
pub fn det(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..n {
                let v = &m[c][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    d
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let piv = row_reduce(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
