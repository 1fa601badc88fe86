//! Rational functions of `z` over [`BaseElem`] with the denominator kept as a
//! product of linear factors.
//!
//! A value is `z^shift * N(z) / prod (a_i + z)^{e_i}` where every `a_i` has an
//! invertible `h^0` part. Factors `(w + m z)` are normalized to `m = 1` on
//! construction; factors whose `w` is nilpotent are expanded into a finite
//! Laurent polynomial instead of being stored.

use std::collections::BTreeMap;
use std::fmt;

use super::base_ring::BaseElem;
use super::poly::{rat, Rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ZFun {
    r: usize,
    numer: Vec<BaseElem>,
    shift: i64,
    factors: Vec<(BaseElem, u32)>,
}

impl ZFun {
    pub fn zero(r: usize) -> Self {
        ZFun {
            r,
            numer: Vec::new(),
            shift: 0,
            factors: Vec::new(),
        }
    }

    pub fn constant(c: BaseElem) -> Self {
        let r = c.r();
        ZFun::new(r, vec![c], 0, Vec::new())
    }

    pub fn one(r: usize) -> Self {
        ZFun::constant(BaseElem::one(r))
    }

    /// `c * z^k`
    pub fn monomial(c: BaseElem, k: i64) -> Self {
        let r = c.r();
        ZFun::new(r, vec![c], k, Vec::new())
    }

    pub fn z(r: usize) -> Self {
        ZFun::monomial(BaseElem::one(r), 1)
    }

    /// Finite Laurent polynomial from `power -> coefficient`.
    pub fn from_laurent(r: usize, terms: &BTreeMap<i64, BaseElem>) -> Self {
        let Some((&lo, _)) = terms.iter().find(|(_, c)| !c.is_zero()) else {
            return ZFun::zero(r);
        };
        let hi = *terms.keys().next_back().unwrap();
        let numer = (lo..=hi)
            .map(|k| terms.get(&k).cloned().unwrap_or_else(|| BaseElem::zero(r)))
            .collect();
        ZFun::new(r, numer, lo, Vec::new())
    }

    /// `w + m z` as a polynomial.
    pub fn linear(w: &BaseElem, m: i64) -> Self {
        let r = w.r();
        ZFun::new(r, vec![w.clone(), BaseElem::from_int(m, r)], 0, Vec::new())
    }

    /// `1 / (w + m z)`.
    pub fn inv_linear(w: &BaseElem, m: i64) -> Result<Self> {
        let r = w.r();
        if m == 0 {
            return w
                .inv()
                .map(ZFun::constant)
                .map_err(|_| Error::ZeroFactor(w.to_string()));
        }
        let m_inv = Rat::new(1.into(), m.into());
        if w.is_invertible() {
            let a = w.scale_rat(&m_inv);
            return Ok(ZFun::new(r, vec![BaseElem::from_coeffs(vec![Scalar::from_rat(m_inv)], r)], 0, vec![(a, 1)]));
        }
        // 1/(w + m z) = sum_n (-w)^n / (m z)^{n+1}, finite because w is nilpotent
        let mut terms = BTreeMap::new();
        let neg_w = -w;
        let mut pw = BaseElem::one(r);
        let mut mpow = m_inv.clone();
        for n in 0..=r as i64 {
            if pw.is_zero() {
                break;
            }
            terms.insert(-(n + 1), pw.scale_rat(&mpow));
            pw = pw.mul_ref(&neg_w);
            mpow *= &m_inv;
        }
        Ok(ZFun::from_laurent(r, &terms))
    }

    fn new(r: usize, mut numer: Vec<BaseElem>, mut shift: i64, mut factors: Vec<(BaseElem, u32)>) -> Self {
        while numer.last().is_some_and(BaseElem::is_zero) {
            numer.pop();
        }
        if numer.is_empty() {
            return ZFun::zero(r);
        }
        let lead_zeros = numer.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            numer.drain(..lead_zeros);
            shift += lead_zeros as i64;
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BaseElem, u32)> = Vec::with_capacity(factors.len());
        for (a, e) in factors {
            match merged.last_mut() {
                Some((b, f)) if *b == a => *f += e,
                _ => merged.push((a, e)),
            }
        }
        ZFun {
            r,
            numer,
            shift,
            factors: merged,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_empty()
    }

    pub fn numerator(&self) -> &[BaseElem] {
        &self.numer
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Denominator factors `(a + z)^e` as `(a, e)`.
    pub fn factors(&self) -> &[(BaseElem, u32)] {
        &self.factors
    }

    pub fn mul(&self, o: &ZFun) -> ZFun {
        if self.is_zero() || o.is_zero() {
            return ZFun::zero(self.r);
        }
        let numer = poly_mul(&self.numer, &o.numer, self.r);
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().cloned());
        ZFun::new(self.r, numer, self.shift + o.shift, factors)
    }

    pub fn scale(&self, c: &BaseElem) -> ZFun {
        let numer = self.numer.iter().map(|x| x.mul_ref(c)).collect();
        ZFun::new(self.r, numer, self.shift, self.factors.clone())
    }

    pub fn scale_rat(&self, c: &Rat) -> ZFun {
        let numer = self.numer.iter().map(|x| x.scale_rat(c)).collect();
        ZFun::new(self.r, numer, self.shift, self.factors.clone())
    }

    pub fn neg(&self) -> ZFun {
        self.scale_rat(&rat(-1))
    }

    pub fn add(&self, o: &ZFun) -> ZFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        // common denominator: max multiplicity per factor
        let mut common: BTreeMap<&BaseElem, u32> = BTreeMap::new();
        for (a, e) in self.factors.iter().chain(&o.factors) {
            let slot = common.entry(a).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |f: &ZFun| -> Vec<BaseElem> {
            let mut n = f.numer.clone();
            for (a, e) in &common {
                let have = f.factors.iter().find(|(b, _)| b == *a).map_or(0, |x| x.1);
                for _ in have..*e {
                    n = poly_mul(&n, &[(*a).clone(), BaseElem::one(self.r)], self.r);
                }
            }
            n
        };
        let shift = self.shift.min(o.shift);
        let pad = |mut n: Vec<BaseElem>, k: i64| {
            let mut v = vec![BaseElem::zero(self.r); k as usize];
            v.append(&mut n);
            v
        };
        let n1 = pad(lift(self), self.shift - shift);
        let n2 = pad(lift(o), o.shift - shift);
        let len = n1.len().max(n2.len());
        let zero = BaseElem::zero(self.r);
        let numer = (0..len)
            .map(|i| n1.get(i).unwrap_or(&zero).add_ref(n2.get(i).unwrap_or(&zero)))
            .collect();
        let factors = common.into_iter().map(|(a, e)| (a.clone(), e)).collect();
        ZFun::new(self.r, numer, shift, factors)
    }

    pub fn sub(&self, o: &ZFun) -> ZFun {
        self.add(&o.neg())
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, o: &ZFun) -> bool {
        self.sub(o).is_zero()
    }

    /// Value at `z = z0`.
    pub fn eval(&self, z0: &BaseElem) -> Result<BaseElem> {
        if self.is_zero() {
            return Ok(BaseElem::zero(self.r));
        }
        let mut acc = BaseElem::zero(self.r);
        for c in self.numer.iter().rev() {
            acc = acc.mul_ref(z0).add_ref(c);
        }
        if self.shift > 0 {
            acc = acc.mul_ref(&z0.pow(self.shift as u32));
        } else if self.shift < 0 {
            let zi = z0
                .inv()
                .map_err(|_| Error::VanishingFactor(format!("z at z = {z0}")))?;
            acc = acc.mul_ref(&zi.pow((-self.shift) as u32));
        }
        for (a, e) in &self.factors {
            let v = a.add_ref(z0);
            let vi = v
                .inv()
                .map_err(|_| Error::VanishingFactor(format!("({a} + z) at z = {z0}")))?;
            acc = acc.mul_ref(&vi.pow(*e));
        }
        Ok(acc)
    }

    /// `Res_{z = -w/k} f(z) dz`. Zero when there is no pole there. The pole is
    /// located by the `h^0` part, so a factor `(a + z)` whose `a` differs from
    /// `w/k` by a nilpotent is the same pole.
    pub fn residue(&self, w: &BaseElem, k: i64) -> Result<BaseElem> {
        if !w.is_invertible() {
            return Err(Error::NilpotentPole(w.to_string()));
        }
        let target = w.h0().scale(&Rat::new(1.into(), k.into()));
        let hits: Vec<usize> = (0..self.factors.len())
            .filter(|&i| *self.factors[i].0.h0() == target)
            .collect();
        match hits.as_slice() {
            [] => Ok(BaseElem::zero(self.r)),
            [i] if self.factors[*i].1 == 1 => {
                let mut rest = self.clone();
                let (a, _) = rest.factors.remove(*i);
                rest.eval(&-&a)
            }
            _ => Err(Error::NonSimplePole(format!("-({target})"))),
        }
    }

    /// Nonzero coefficients of `z^p, z^{p-1}, ..., z^{-order}` of the expansion at
    /// `z = infinity`, where `p` is the pole order at infinity.
    pub fn laurent_at_infinity(&self, order: i64) -> Vec<(i64, BaseElem)> {
        if self.is_zero() {
            return Vec::new();
        }
        let deg = self.numer.len() as i64 - 1;
        let total_e: i64 = self.factors.iter().map(|f| f.1 as i64).sum();
        let top = self.shift + deg - total_e;
        if top < -order {
            return Vec::new();
        }
        let len = (top + order + 1) as usize;
        // product of (1 + a u)^{-e} as a power series in u = 1/z
        let mut series = vec![BaseElem::zero(self.r); len];
        series[0] = BaseElem::one(self.r);
        for (a, e) in &self.factors {
            let mut geo = Vec::with_capacity(len);
            let neg_a = -a;
            let mut p = BaseElem::one(self.r);
            for _ in 0..len {
                geo.push(p.clone());
                p = p.mul_ref(&neg_a);
            }
            for _ in 0..*e {
                series = series_mul(&series, &geo, len, self.r);
            }
        }
        let q: Vec<BaseElem> = self.numer.iter().rev().cloned().collect();
        let prod = series_mul(&q, &series, len, self.r);
        prod.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (top - i as i64, c))
            .collect()
    }

    /// Coefficient of `z^p` in the expansion at infinity.
    pub fn coeff_at_infinity(&self, p: i64) -> BaseElem {
        self.laurent_at_infinity(-p)
            .into_iter()
            .find(|(k, _)| *k == p)
            .map(|x| x.1)
            .unwrap_or_else(|| BaseElem::zero(self.r))
    }

    /// The image under `h -> 0`, as a function over a point base.
    pub fn at_h_zero(&self) -> ZFun {
        let cut = |b: &BaseElem| BaseElem::from_coeffs(vec![b.h0().clone()], 0);
        let numer = self.numer.iter().map(cut).collect();
        let factors = self.factors.iter().map(|(a, e)| (cut(a), *e)).collect();
        ZFun::new(0, numer, self.shift, factors)
    }

    /// Applies `f` to every scalar coefficient of the numerator and of the
    /// factor locations.
    pub fn try_map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<ZFun> {
        let map_b = |b: &BaseElem| -> Result<BaseElem> {
            Ok(BaseElem::from_coeffs(
                b.coeffs().iter().map(f).collect::<Result<_>>()?,
                self.r,
            ))
        };
        let numer = self.numer.iter().map(map_b).collect::<Result<_>>()?;
        let factors = self
            .factors
            .iter()
            .map(|(a, e)| Ok((map_b(a)?, *e)))
            .collect::<Result<_>>()?;
        Ok(ZFun::new(self.r, numer, self.shift, factors))
    }
}

fn poly_mul(a: &[BaseElem], b: &[BaseElem], r: usize) -> Vec<BaseElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BaseElem::zero(r); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    out
}

fn series_mul(a: &[BaseElem], b: &[BaseElem], len: usize, r: usize) -> Vec<BaseElem> {
    let mut out = vec![BaseElem::zero(r); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    out
}

impl PartialEq for ZFun {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl fmt::Display for ZFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.numer.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.shift + i as i64;
            let zs = match p {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{p}"),
            };
            let cs = c.to_string();
            terms.push(match (zs.is_empty(), c.is_one()) {
                (true, _) => cs,
                (false, true) => zs,
                (false, false) => format!("({cs})*{zs}"),
            });
        }
        let num = terms.join(" + ");
        if self.factors.is_empty() {
            return f.write_str(&num);
        }
        let den: Vec<String> = self
            .factors
            .iter()
            .map(|(a, e)| {
                if *e == 1 {
                    format!("({a} + z)")
                } else {
                    format!("({a} + z)^{e}")
                }
            })
            .collect();
        write!(f, "({num})/({})", den.join("*"))
    }
}
