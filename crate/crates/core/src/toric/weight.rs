//! Equivariant first Chern classes: a linear form in the `lambda_j` plus a
//! multiple of the base hyperplane class `h`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{BaseElem, Rat, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    /// Coefficients of `lambda_1 .. lambda_N`.
    pub lam: Vec<Rat>,
    /// Coefficient of `h`.
    pub h: Rat,
}

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight {
            lam: vec![Rat::zero(); n],
            h: Rat::zero(),
        }
    }

    pub fn lambda(n: usize, j: usize) -> Self {
        let mut w = Weight::zero(n);
        w.lam[j] = Rat::one();
        w
    }

    pub fn h(n: usize, c: Rat) -> Self {
        Weight {
            lam: vec![Rat::zero(); n],
            h: c,
        }
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            lam: self.lam.iter().zip(&o.lam).map(|(a, b)| a + b).collect(),
            h: &self.h + &o.h,
        }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Weight {
        Weight {
            lam: self.lam.iter().map(|a| a * c).collect(),
            h: &self.h * c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.torically_zero()
    }

    /// True when the `lambda` part vanishes as a linear form.
    pub fn torically_zero(&self) -> bool {
        self.lam.iter().all(Zero::is_zero)
    }

    /// If `self = c * o` as weights, returns `c`.
    pub fn ratio(&self, o: &Weight) -> Option<Rat> {
        let j = o.lam.iter().position(|x| !x.is_zero())?;
        let c = &self.lam[j] / &o.lam[j];
        (self.sub(&o.scale(&c)).is_zero()).then_some(c)
    }

    /// Value of the `lambda` part on the line `lambda_j = c_j s`.
    pub fn lambda_value(&self, line: &[Rat]) -> Rat {
        self.lam.iter().zip(line).map(|(a, c)| a * c).sum()
    }

    /// Embeds into the base ring `Scalar[h]/(h^{r+1})` on the given line.
    pub fn to_base(&self, line: &[Rat], r: usize) -> BaseElem {
        let s0 = Scalar::monomial(self.lambda_value(line), 1);
        let mut coeffs = vec![s0];
        if r >= 1 {
            coeffs.push(Scalar::from_rat(self.h.clone()));
        }
        BaseElem::from_coeffs(coeffs, r)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let terms = self
            .lam
            .iter()
            .enumerate()
            .map(|(j, c)| (c, format!("l{}", j + 1)))
            .chain(std::iter::once((&self.h, "h".to_string())));
        for (c, name) in terms {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = if mag.is_one() { name } else { format!("{mag}*{name}") };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}
