//! Rational functions of the single equivariant parameter `s`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{rat, Poly, Rat};
use crate::error::{Error, Result};

/// A reduced fraction `num(s) / den(s)` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_rat(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(rat(n))
    }

    pub fn from_rat(c: Rat) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    /// The parameter `s` itself.
    pub fn s() -> Self {
        Scalar::monomial(Rat::one(), 1)
    }

    /// `c * s^n`
    pub fn monomial(c: Rat, n: usize) -> Self {
        Scalar {
            num: Poly::monomial(c, n),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds and reduces `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = d.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Scalar { num: n, den: d }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Returns the rational value if this scalar does not depend on `s`.
    pub fn as_rat(&self) -> Option<Rat> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rat::zero()),
            (Some(0), Some(0)) => Some(self.num.coeff(0) / self.den.coeff(0)),
            _ => None,
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_ref(&other.inv_unchecked()))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Scalar {
        Scalar::reduce(self.den.clone(), self.num.clone())
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Scalar::reduce(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Scalar::reduce(num, self.den.mul(&other.den))
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        Scalar::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Value at `s = 0`, if the reduced denominator does not vanish there.
    pub fn at_zero(&self) -> Result<Rat> {
        let d = self.den.coeff(0);
        if d.is_zero() {
            return Err(Error::NoNonEquivariantLimit(self.to_string()));
        }
        Ok(self.num.coeff(0) / d)
    }

    pub fn eval(&self, s: &Rat) -> Result<Rat> {
        let d = self.den.eval(s);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(s) / d)
    }

    /// d/ds
    pub fn derivative(&self) -> Scalar {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Scalar::reduce(n, self.den.mul(&self.den))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num
            .cmp(&other.num)
            .then_with(|| self.den.cmp(&other.den))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rat> for Scalar {
    fn from(c: Rat) -> Self {
        Scalar::from_rat(c)
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::from_int(c)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.fmt_with("s");
        if self.den.is_one() {
            return f.write_str(&n);
        }
        let d = self.den.fmt_with("s");
        let wrap = |x: String, p: &Poly| {
            if p.as_monomial().is_some() && !x.starts_with('-') {
                x
            } else {
                format!("({x})")
            }
        };
        write!(f, "{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("Scalar division by zero"));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
