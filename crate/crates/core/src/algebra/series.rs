//! Truncated Novikov series indexed by curve degree and by a monomial in the
//! formal divisor variables `t`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::poly::Rat;
use super::zfun::ZFun;

/// Fiber degree `d` (against `P_1..P_K`) and base degree `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeIndex {
    pub d: Vec<i64>,
    pub base: i64,
}

impl DegreeIndex {
    pub fn new(d: Vec<i64>, base: i64) -> Self {
        DegreeIndex { d, base }
    }

    pub fn zero(k: usize) -> Self {
        DegreeIndex {
            d: vec![0; k],
            base: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.base == 0 && self.d.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &DegreeIndex) -> DegreeIndex {
        DegreeIndex {
            d: self.d.iter().zip(&o.d).map(|(a, b)| a + b).collect(),
            base: self.base + o.base,
        }
    }

    pub fn sub(&self, o: &DegreeIndex) -> DegreeIndex {
        DegreeIndex {
            d: self.d.iter().zip(&o.d).map(|(a, b)| a - b).collect(),
            base: self.base - o.base,
        }
    }

    /// `omega . d + D`
    pub fn weight(&self, omega: &[Rat]) -> Rat {
        let mut w = Rat::from_integer(self.base.into());
        for (o, d) in omega.iter().zip(&self.d) {
            w += o * Rat::from_integer((*d).into());
        }
        w
    }
}

impl fmt::Display for DegreeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.d.iter().map(i64::to_string).collect();
        write!(f, "d=({}) D={}", d.join(","), self.base)
    }
}

/// Exponents of the formal divisor variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TMonomial(pub Vec<u32>);

impl TMonomial {
    pub fn one(nvars: usize) -> Self {
        TMonomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut v = vec![0; nvars];
        v[i] = 1;
        TMonomial(v)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &TMonomial) -> TMonomial {
        TMonomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `prod n_i!`
    pub fn factorial(&self) -> Rat {
        let mut f = Rat::from_integer(1.into());
        for &n in &self.0 {
            for k in 2..=n {
                f *= Rat::from_integer(k.into());
            }
        }
        f
    }

    /// All monomials in `nvars` variables of total degree `<= order`.
    pub fn all(nvars: usize, order: u32) -> Vec<TMonomial> {
        let mut out = vec![TMonomial::one(nvars)];
        for i in 0..nvars {
            let mut next = Vec::new();
            for m in &out {
                let used = m.total();
                for e in 0..=(order - used) {
                    let mut v = m.0.clone();
                    v[i] = e;
                    next.push(TMonomial(v));
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl fmt::Display for TMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "t=[{}]", v.join(","))
    }
}

/// Coefficient ring of a [`NovikovSeries`].
pub trait Coeff: Clone {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

impl Coeff for ZFun {
    fn is_zero(&self) -> bool {
        ZFun::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        ZFun::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ZFun::mul(self, o)
    }
}

impl Coeff for Rat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

pub type TermKey = (DegreeIndex, TMonomial);

/// Series truncated at weighted degree `cutoff` (and base degree
/// `cutoff`) and total `t`-degree `t_order`. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct NovikovSeries<C> {
    omega: Vec<Rat>,
    cutoff: Rat,
    t_order: u32,
    terms: BTreeMap<TermKey, C>,
}

impl<C: Coeff> NovikovSeries<C> {
    pub fn new(omega: Vec<Rat>, cutoff: Rat, t_order: u32) -> Self {
        NovikovSeries {
            omega,
            cutoff,
            t_order,
            terms: BTreeMap::new(),
        }
    }

    pub fn cutoff(&self) -> &Rat {
        &self.cutoff
    }

    pub fn t_order(&self) -> u32 {
        self.t_order
    }

    pub fn omega(&self) -> &[Rat] {
        &self.omega
    }

    pub fn admits(&self, deg: &DegreeIndex, t: &TMonomial) -> bool {
        t.total() <= self.t_order
            && Rat::from_integer(deg.base.into()) <= self.cutoff
            && deg.weight(&self.omega) <= self.cutoff
    }

    /// Adds `c` to the coefficient at `(deg, t)`; silently drops terms
    /// beyond the truncation.
    pub fn add_term(&mut self, deg: DegreeIndex, t: TMonomial, c: C) {
        if c.is_zero() || !self.admits(&deg, &t) {
            return;
        }
        let key = (deg, t);
        match self.terms.get_mut(&key) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn get(&self, deg: &DegreeIndex, t: &TMonomial) -> Option<&C> {
        self.terms.get(&(deg.clone(), t.clone()))
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, C> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TermKey, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &DegreeIndex> {
        self.terms.keys().map(|k| &k.0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let cutoff = self.cutoff.clone().min(o.cutoff.clone());
        let t_order = self.t_order.min(o.t_order);
        let mut out = NovikovSeries::new(self.omega.clone(), cutoff, t_order);
        for ((d, t), c) in self.terms.iter().chain(&o.terms) {
            out.add_term(d.clone(), t.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cutoff = self.cutoff.clone().min(o.cutoff.clone());
        let t_order = self.t_order.min(o.t_order);
        let mut out = NovikovSeries::new(self.omega.clone(), cutoff, t_order);
        for ((d1, t1), c1) in &self.terms {
            for ((d2, t2), c2) in &o.terms {
                let d = d1.add(d2);
                let t = t1.mul(t2);
                if out.admits(&d, &t) {
                    out.add_term(d, t, c1.mul(c2));
                }
            }
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NovikovSeries<D> {
        let mut out = NovikovSeries::new(self.omega.clone(), self.cutoff.clone(), self.t_order);
        for ((d, t), c) in &self.terms {
            out.add_term(d.clone(), t.clone(), f(c));
        }
        out
    }

    /// Canonical text form: one term per line, sorted by degree then `t`.
    pub fn dump(&self) -> String
    where
        C: fmt::Display,
    {
        let mut s = String::new();
        for ((d, t), c) in &self.terms {
            s.push_str(&format!("{d} {t}: {c}\n"));
        }
        s
    }
}

impl<C: Coeff + PartialEq> PartialEq for NovikovSeries<C> {
    fn eq(&self, o: &Self) -> bool {
        self.cutoff == o.cutoff
            && self.t_order == o.t_order
            && self.terms.len() == o.terms.len()
            && self
                .terms
                .iter()
                .zip(&o.terms)
                .all(|((k1, c1), (k2, c2))| k1 == k2 && c1 == c2)
    }
}
