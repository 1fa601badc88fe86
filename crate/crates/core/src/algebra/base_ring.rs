//! Truncated polynomial ring `Scalar[h] / (h^{r+1})`, the cohomology of the
//! base `P^r` tensored with the equivariant scalars. `r = 0` is a point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Rat;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseElem {
    /// Coefficients of `h^0 .. h^r`.
    coeffs: Vec<Scalar>,
}

impl BaseElem {
    pub fn zero(r: usize) -> Self {
        BaseElem {
            coeffs: vec![Scalar::zero(); r + 1],
        }
    }

    pub fn one(r: usize) -> Self {
        BaseElem::scalar(Scalar::one(), r)
    }

    pub fn scalar(c: Scalar, r: usize) -> Self {
        let mut e = BaseElem::zero(r);
        e.coeffs[0] = c;
        e
    }

    pub fn from_int(n: i64, r: usize) -> Self {
        BaseElem::scalar(Scalar::from_int(n), r)
    }

    /// The hyperplane class `h`, or zero on a point base.
    pub fn h(r: usize) -> Self {
        let mut e = BaseElem::zero(r);
        if r >= 1 {
            e.coeffs[1] = Scalar::one();
        }
        e
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>, r: usize) -> Self {
        coeffs.resize(r + 1, Scalar::zero());
        BaseElem { coeffs }
    }

    /// Truncation exponent `r`.
    pub fn r(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn h0(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Scalar::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn add_ref(&self, o: &BaseElem) -> BaseElem {
        debug_assert_eq!(self.coeffs.len(), o.coeffs.len());
        BaseElem {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul_ref(&self, o: &BaseElem) -> BaseElem {
        debug_assert_eq!(self.coeffs.len(), o.coeffs.len());
        let n = self.coeffs.len();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &a.mul_ref(b);
                }
            }
        }
        BaseElem { coeffs: out }
    }

    pub fn scale(&self, c: &Scalar) -> BaseElem {
        BaseElem {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> BaseElem {
        BaseElem {
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Inverse via the finite geometric series in the nilpotent part.
    pub fn inv(&self) -> Result<BaseElem> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NilpotentPole(self.to_string()));
        }
        let a0_inv = a0.inv()?;
        let r = self.r();
        // self = a0 (1 + n), n nilpotent
        let mut n = self.scale(&a0_inv);
        n.coeffs[0] = Scalar::zero();
        let mut acc = BaseElem::one(r);
        let mut term = BaseElem::one(r);
        for _ in 0..r {
            term = -&term.mul_ref(&n);
            acc = &acc + &term;
        }
        Ok(acc.scale(&a0_inv))
    }

    pub fn pow(&self, k: u32) -> BaseElem {
        let mut acc = BaseElem::one(self.r());
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Applies the non-equivariant limit `s -> 0` coefficientwise.
    pub fn at_zero(&self) -> Result<Vec<Rat>> {
        self.coeffs.iter().map(Scalar::at_zero).collect()
    }
}

impl fmt::Display for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            parts.push(match i {
                0 => cs,
                _ => {
                    let hp = if i == 1 { "h".to_string() } else { format!("h^{i}") };
                    if c.is_one() {
                        hp
                    } else {
                        format!("({cs})*{hp}")
                    }
                }
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else if parts.len() == 1 {
            f.write_str(&parts[0])
        } else {
            write!(f, "[{}]", parts.join(" + "))
        }
    }
}

impl Add for &BaseElem {
    type Output = BaseElem;
    fn add(self, o: &BaseElem) -> BaseElem {
        self.add_ref(o)
    }
}

impl Sub for &BaseElem {
    type Output = BaseElem;
    fn sub(self, o: &BaseElem) -> BaseElem {
        self.add_ref(&-o)
    }
}

impl Mul for &BaseElem {
    type Output = BaseElem;
    fn mul(self, o: &BaseElem) -> BaseElem {
        self.mul_ref(o)
    }
}

impl Neg for &BaseElem {
    type Output = BaseElem;
    fn neg(self) -> BaseElem {
        BaseElem {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
