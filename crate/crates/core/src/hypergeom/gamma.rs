//! Gamma-ratio products `prod_{m=1}^{n} (U + m z)`, read as
//! `prod_{-inf}^{n} / prod_{-inf}^{0}` when `n < 0`.

use crate::algebra::{BaseElem, ZFun};
use crate::error::{Error, Result};

/// `prod_{m=1}^{n} (U + m z)`; for `n < 0` this is `1 / prod_{m=n+1}^{0} (U + m z)`.
pub fn gamma_ratio_product(u: &BaseElem, n: i64) -> Result<ZFun> {
    let r = u.r();
    if n >= 0 {
        return Ok((1..=n).fold(ZFun::one(r), |acc, m| acc.mul(&ZFun::linear(u, m))));
    }
    if !u.is_invertible() {
        return Err(Error::ZeroFactor(format!("({u} + 0z)")));
    }
    let mut acc = ZFun::one(r);
    for m in n + 1..=0 {
        acc = acc.mul(&ZFun::inv_linear(u, m)?);
    }
    Ok(acc)
}

/// The reciprocal `1 / prod_{m=1}^{n} (U + m z)`. A zero `U` with `n < 0`
/// puts the factor `0 z` in the numerator and gives exactly zero.
pub fn gamma_ratio_inverse(u: &BaseElem, n: i64) -> ZFun {
    let r = u.r();
    if n >= 0 {
        let mut acc = ZFun::one(r);
        for m in 1..=n {
            acc = acc.mul(&ZFun::inv_linear(u, m).expect("m != 0"));
        }
        return acc;
    }
    (n + 1..=0).fold(ZFun::one(r), |acc, m| acc.mul(&ZFun::linear(u, m)))
}
