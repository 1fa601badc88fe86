//! Independent oracles used to cross-check library results.

use num_traits::Zero;
use toric_gw::algebra::{rat, Rat};

/// Plane rational curve counts `N_1..N_dmax` from Kontsevich's recursion.
pub fn kontsevich(dmax: usize) -> Vec<i64> {
    let binom = |n: i64, k: i64| -> i64 {
        if k < 0 || k > n {
            return 0;
        }
        (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
    };
    let mut n = vec![0i64; dmax + 1];
    n[1] = 1;
    for d in 2..=dmax as i64 {
        let mut acc = 0;
        for a in 1..d {
            let b = d - a;
            acc += n[a as usize] * n[b as usize] * a * a * b * (b * binom(3 * d - 4, 3 * a - 2) - a * binom(3 * d - 4, 3 * a - 1));
        }
        n[d as usize] = acc;
    }
    n
}

/// Akiyama-Tanigawa, independent of the binomial recurrence.
pub fn bernoulli_oracle(n: usize) -> Rat {
    let mut b = vec![Rat::zero(); n + 1];
    let mut row: Vec<Rat> = (0..=n).map(|m| Rat::new(1.into(), (m as i64 + 1).into())).collect();
    for m in 0..=n {
        b[m] = row[0].clone();
        let next: Vec<Rat> = (0..row.len() - 1)
            .map(|j| rat(j as i64 + 1) * (&row[j] - &row[j + 1]))
            .collect();
        row = next;
        if row.is_empty() {
            break;
        }
    }
    b[n].clone()
}

fn mul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < n {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Stirling coefficients by Laplace's method: solve `x - ln(1+x) = w^2/2`
/// for `x(w)`, then the `z^k` coefficient is `(2k+1)!! [w^{2k+1}] x(w)`.
pub fn stirling_oracle(n: usize) -> Vec<Rat> {
    let len = 2 * n + 3;
    // (x - ln(1+x)) / (x^2/2) = sum_{k>=0} 2 (-1)^k x^k / (k+2)
    let g: Vec<Rat> = (0..len).map(|k| Rat::new((2 * if k % 2 == 0 { 1 } else { -1 }).into(), (k as i64 + 2).into())).collect();
    // w = x sqrt(g(x)) = x h(x)
    let mut h = vec![Rat::zero(); len];
    h[0] = rat(1);
    for m in 1..len {
        let mut acc = g[m].clone();
        for i in 1..m {
            acc -= &h[i] * &h[m - i];
        }
        h[m] = acc / rat(2);
    }
    // reversion of w = x h(x) by fixed-point iteration x = w / h(x)
    let mut x = vec![Rat::zero(); len];
    x[1] = rat(1);
    for _ in 0..len {
        let mut hx = vec![Rat::zero(); len];
        let mut pw = vec![Rat::zero(); len];
        pw[0] = rat(1);
        for c in &h {
            for (a, b) in hx.iter_mut().zip(&pw) {
                *a += c * b;
            }
            pw = mul(&pw, &x, len);
        }
        let mut inv = vec![Rat::zero(); len];
        inv[0] = hx[0].recip();
        for m in 1..len {
            let mut acc = Rat::zero();
            for i in 1..=m {
                acc += &hx[i] * &inv[m - i];
            }
            inv[m] = -acc / &hx[0];
        }
        let mut nx = vec![Rat::zero(); len];
        nx[1..].clone_from_slice(&inv[..len - 1]);
        x = nx;
    }
    (0..=n)
        .map(|k| {
            let df = (1..=2 * k + 1).step_by(2).fold(rat(1), |a, j| a * rat(j as i64));
            df * &x[2 * k + 1]
        })
        .collect()
}
