//! Bernoulli numbers and the asymptotic series of the Gamma function.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Rat, Scalar};
use crate::error::Result;

use super::stationary::{stationary_phase, PhaseData, XSeries};

/// A power series in one variable, truncated after `coeffs.len()` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series1D {
    pub coeffs: Vec<Rat>,
}

impl Series1D {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// `exp(f)` for `f` without constant term.
    pub fn exp(&self) -> Series1D {
        let n = self.coeffs.len();
        let mut g = vec![Rat::zero(); n];
        if n == 0 {
            return Series1D { coeffs: g };
        }
        g[0] = Rat::one();
        for m in 1..n {
            let mut acc = Rat::zero();
            for k in 1..=m {
                acc += Rat::from_integer((k as i64).into()) * self.coeff(k) * &g[m - k];
            }
            g[m] = acc / Rat::from_integer((m as i64).into());
        }
        Series1D { coeffs: g }
    }

    pub fn format(&self, var: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Series1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("u"))
    }
}

fn binomial(n: u64, k: u64) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * Rat::from_integer((n - i).into()) / Rat::from_integer((i + 1).into());
    }
    acc
}

/// `B_0, ..., B_n` from `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli_table(n: usize) -> Vec<Rat> {
    let mut b = vec![Rat::one()];
    for m in 1..=n {
        let s = (0..m).fold(Rat::zero(), |acc, k| acc + binomial(m as u64 + 1, k as u64) * &b[k]);
        b.push(-s / Rat::from_integer((m as i64 + 1).into()));
    }
    b
}

pub fn bernoulli(m: usize) -> Rat {
    bernoulli_table(m).pop().expect("nonempty")
}

/// `exp(sum_{m>=1} B_{2m} / (2m (2m-1)) u^{2m-1})` through `u^n`, with
/// `u = z / nu`. The prefactor `sqrt(2 pi z / nu) e^{(nu ln nu - nu)/z}` is
/// left implicit.
pub fn gamma_hat_series(n: usize) -> Series1D {
    let b = bernoulli_table(n + 1);
    let mut f = vec![Rat::zero(); n + 1];
    for (k, slot) in f.iter_mut().enumerate().skip(1).step_by(2) {
        let m = k.div_ceil(2);
        let den = Rat::from_integer((((2 * m) * (2 * m - 1)) as i64).into());
        *slot = &b[2 * m] / den;
    }
    Series1D { coeffs: f }.exp()
}

/// Stationary phase of `int_0^inf e^{(-x + nu ln x)/z} d ln x` at `x = nu`,
/// with `nu` the formal parameter `s`. Returns `A_k nu^k` for `k <= n`,
/// which should be the coefficients of [`gamma_hat_series`].
pub fn gamma_stationary_coefficients(n: usize) -> Result<Vec<Scalar>> {
    let nu = Scalar::s();
    let nu_inv = nu.inv()?;
    let need = 2 * n + 2;
    let higher = (3..need + 3)
        .map(|k| {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            nu_inv.pow(k as u32 - 1).scale(&Rat::new(sign.into(), (k as i64).into()))
        })
        .collect();
    let phase = PhaseData::new(nu.clone(), higher, false);
    // nu / x = 1 / (1 + t / nu)
    let amp = XSeries::from_scalars(
        (0..need)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                nu_inv.pow(k as u32).scale(&Rat::from_integer(sign.into()))
            })
            .collect(),
        false,
    );
    let ex = stationary_phase(&phase, &amp, n as i64)?;
    Ok((0..=n).map(|k| ex.a(k as i64).mul_ref(&nu.pow(k as u32))).collect())
}

/// Termwise exact comparison of the two sides through order `n`.
pub fn gamma_vs_stationary_phase(n: usize) -> Result<bool> {
    let g = gamma_hat_series(n);
    let sp = gamma_stationary_coefficients(n)?;
    Ok(sp
        .iter()
        .enumerate()
        .all(|(k, a)| *a == Scalar::from_rat(g.coeff(k))))
}
