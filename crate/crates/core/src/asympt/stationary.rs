//! Formal one-dimensional stationary phase.
//!
//! `int e^{f(x)/z} a(x) dx ~ sqrt(2 pi z) sigma e^{f(0)/z} sum_k A_k z^k` for
//! `f = f(0) - x^2/(2 sigma^2) + c_3 x^3 + c_4 x^4 + ...`. The markers
//! `sqrt(2 pi)`, `sigma` and `e^{f(0)/z}` are never evaluated.

use std::collections::BTreeMap;

use crate::algebra::{Rat, Scalar};
use crate::error::{Error, Result};

/// A finite Laurent polynomial in `z`.
pub type ZLaurent = BTreeMap<i64, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseData {
    pub sigma_sq: Scalar,
    /// `c_3, c_4, ...`
    pub higher: Vec<Scalar>,
    /// Whether the coefficients past `higher` are zero rather than unknown.
    pub complete: bool,
}

impl PhaseData {
    pub fn new(sigma_sq: Scalar, higher: Vec<Scalar>, complete: bool) -> Self {
        PhaseData { sigma_sq, higher, complete }
    }

    /// `f'(x)` as a series in `x`.
    pub fn derivative(&self) -> Result<XSeries> {
        let mut c = vec![Scalar::zero(), -self.sigma_sq.inv().map_err(|_| degenerate())?];
        for (i, a) in self.higher.iter().enumerate() {
            c.push(a.scale(&Rat::from_integer(((i + 3) as i64).into())));
        }
        Ok(XSeries::from_scalars(c, self.complete))
    }
}

/// A series in `x` whose coefficients are Laurent polynomials in `z`, known
/// exactly up to `coeffs.len()` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    pub coeffs: Vec<ZLaurent>,
    pub complete: bool,
}

pub type AmplitudeData = XSeries;

fn zl_add(a: &ZLaurent, b: &ZLaurent) -> ZLaurent {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_insert_with(Scalar::zero);
        *e = e.add_ref(v);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn zl_mul(a: &ZLaurent, b: &ZLaurent) -> ZLaurent {
    let mut out = ZLaurent::new();
    for (i, x) in a {
        for (j, y) in b {
            let e = out.entry(i + j).or_insert_with(Scalar::zero);
            *e = e.add_ref(&x.mul_ref(y));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl XSeries {
    pub fn from_scalars(c: Vec<Scalar>, complete: bool) -> Self {
        let coeffs = c
            .into_iter()
            .map(|v| {
                let mut m = ZLaurent::new();
                if !v.is_zero() {
                    m.insert(0, v);
                }
                m
            })
            .collect();
        XSeries { coeffs, complete }
    }

    pub fn one() -> Self {
        XSeries::from_scalars(vec![Scalar::one()], true)
    }

    /// `c x^k z^j`, exact.
    pub fn monomial(c: Scalar, k: usize, j: i64) -> Self {
        let mut coeffs = vec![ZLaurent::new(); k + 1];
        if !c.is_zero() {
            coeffs[k].insert(j, c);
        }
        XSeries { coeffs, complete: true }
    }

    fn known(&self) -> usize {
        if self.complete {
            usize::MAX
        } else {
            self.coeffs.len()
        }
    }

    fn get(&self, k: usize) -> ZLaurent {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &XSeries) -> XSeries {
        let len = self.coeffs.len().max(o.coeffs.len()).min(self.known().min(o.known()));
        XSeries {
            coeffs: (0..len).map(|k| zl_add(&self.get(k), &o.get(k))).collect(),
            complete: self.complete && o.complete,
        }
    }

    pub fn mul(&self, o: &XSeries) -> XSeries {
        let full = (self.coeffs.len() + o.coeffs.len()).saturating_sub(1);
        let len = full.min(self.known().min(o.known()));
        let coeffs = (0..len)
            .map(|n| {
                (0..=n).fold(ZLaurent::new(), |acc, i| {
                    zl_add(&acc, &zl_mul(&self.get(i), &o.get(n - i)))
                })
            })
            .collect();
        XSeries {
            coeffs,
            complete: self.complete && o.complete,
        }
    }

    pub fn derivative(&self) -> XSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let f = Rat::from_integer((k as i64).into());
                c.iter().map(|(j, v)| (*j, v.scale(&f))).collect()
            })
            .collect();
        XSeries {
            coeffs,
            complete: self.complete,
        }
    }

    /// Multiplies by `z^j`.
    pub fn shift_z(&self, j: i64) -> XSeries {
        XSeries {
            coeffs: self.coeffs.iter().map(|c| c.iter().map(|(k, v)| (k + j, v.clone())).collect()).collect(),
            complete: self.complete,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticExpansion {
    /// `+1` or `-1`: the square root of `sigma^2` used.
    pub branch: i8,
    /// `A_k` by power of `z`; absent entries are zero.
    pub coeffs: BTreeMap<i64, Scalar>,
    /// Highest power of `z` computed.
    pub order: i64,
}

impl AsymptoticExpansion {
    pub fn a(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

fn degenerate() -> Error {
    Error::Degenerate("sigma^2 = 0: the critical point is degenerate".into())
}

fn double_factorial(n: i64) -> Rat {
    let mut acc = Rat::from_integer(1.into());
    let mut k = n;
    while k > 1 {
        acc *= Rat::from_integer(k.into());
        k -= 2;
    }
    acc
}

/// `int x^n e^{-x^2 / 2 sigma^2} dx` as the coefficient of `sqrt(2 pi)`.
pub fn gaussian_moment(n: u32, sigma: &Scalar) -> Scalar {
    if n % 2 == 1 {
        return Scalar::zero();
    }
    sigma.pow(n + 1).scale(&double_factorial(n as i64 - 1))
}

/// `a + b sigma` with `sigma^2` fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Quad {
    a: Scalar,
    b: Scalar,
}

impl Quad {
    fn zero() -> Self {
        Quad { a: Scalar::zero(), b: Scalar::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add(&self, o: &Quad) -> Quad {
        Quad { a: self.a.add_ref(&o.a), b: self.b.add_ref(&o.b) }
    }

    fn mul(&self, o: &Quad, sq: &Scalar) -> Quad {
        Quad {
            a: self.a.mul_ref(&o.a).add_ref(&self.b.mul_ref(&o.b).mul_ref(sq)),
            b: self.a.mul_ref(&o.b).add_ref(&self.b.mul_ref(&o.a)),
        }
    }

    fn scale(&self, c: &Scalar) -> Quad {
        Quad { a: self.a.mul_ref(c), b: self.b.mul_ref(c) }
    }
}

/// Series in `w = sqrt(z)` and `y`, truncated above `w^wmax`.
type Biv = BTreeMap<(i64, u32), Quad>;

fn biv_add_term(s: &mut Biv, key: (i64, u32), v: Quad) {
    let e = s.entry(key).or_insert_with(Quad::zero);
    *e = e.add(&v);
    if e.is_zero() {
        s.remove(&key);
    }
}

fn biv_mul(a: &Biv, b: &Biv, wmax: i64, sq: &Scalar) -> Biv {
    let mut out = Biv::new();
    for ((wa, ya), x) in a {
        for ((wb, yb), y) in b {
            if wa + wb <= wmax {
                biv_add_term(&mut out, (wa + wb, ya + yb), x.mul(y, sq));
            }
        }
    }
    out
}

/// `A_k` for `k <= n` on the `+sigma` branch.
pub fn stationary_phase(phase: &PhaseData, amp: &AmplitudeData, n: i64) -> Result<AsymptoticExpansion> {
    stationary_phase_branch(phase, amp, n, 1)
}

/// Substitutes `x = sigma sqrt(z) y`, expands in `sqrt(z)` and integrates
/// termwise against the standard Gaussian.
pub fn stationary_phase_branch(phase: &PhaseData, amp: &AmplitudeData, n: i64, branch: i8) -> Result<AsymptoticExpansion> {
    let sq = &phase.sigma_sq;
    if sq.is_zero() {
        return Err(degenerate());
    }
    let sigma = Quad {
        a: Scalar::zero(),
        b: Scalar::from_int(branch.signum() as i64),
    };
    let sigma_pow = |k: u32| (0..k).fold(Quad { a: Scalar::one(), b: Scalar::zero() }, |acc, _| acc.mul(&sigma, sq));
    let wmax = 2 * n;
    let jmin = amp.coeffs.iter().flat_map(|c| c.keys().copied()).min().unwrap_or(0).min(0);
    if !amp.complete && (amp.coeffs.len() as i64) <= wmax - 2 * jmin {
        return Err(Error::Unsupported(format!(
            "amplitude known to {} terms, order {n} needs {}",
            amp.coeffs.len(),
            wmax - 2 * jmin + 1
        )));
    }
    let mut a_biv = Biv::new();
    for (k, c) in amp.coeffs.iter().enumerate() {
        for (j, v) in c {
            let wp = k as i64 + 2 * j;
            if wp <= wmax {
                biv_add_term(&mut a_biv, (wp, k as u32), sigma_pow(k as u32).scale(v));
            }
        }
    }
    let Some(wmin) = a_biv.keys().map(|k| k.0).min() else {
        return Ok(AsymptoticExpansion { branch, coeffs: BTreeMap::new(), order: n });
    };
    let room = wmax - wmin;
    if !phase.complete && (phase.higher.len() as i64) < room {
        return Err(Error::Unsupported(format!(
            "phase known to x^{}, order {n} needs x^{}",
            phase.higher.len() + 2,
            room + 2
        )));
    }
    let mut p = Biv::new();
    for (i, c) in phase.higher.iter().enumerate() {
        let k = i as i64 + 3;
        if k - 2 <= room {
            biv_add_term(&mut p, (k - 2, k as u32), sigma_pow(k as u32).scale(c));
        }
    }
    let mut e = Biv::new();
    biv_add_term(&mut e, (0, 0), Quad { a: Scalar::one(), b: Scalar::zero() });
    let mut pw = e.clone();
    let mut fact = Rat::from_integer(1.into());
    for m in 1..=room.max(0) {
        pw = biv_mul(&pw, &p, room, sq);
        if pw.is_empty() {
            break;
        }
        fact *= Rat::from_integer(m.into());
        let inv = Scalar::from_rat(fact.recip());
        for (key, v) in &pw {
            biv_add_term(&mut e, *key, v.scale(&inv));
        }
    }
    let prod = biv_mul(&e, &a_biv, wmax, sq);
    let mut by_w: BTreeMap<i64, Quad> = BTreeMap::new();
    for ((wp, yp), v) in prod {
        let m = gaussian_moment(yp, &Scalar::one());
        if m.is_zero() {
            continue;
        }
        let ent = by_w.entry(wp).or_insert_with(Quad::zero);
        *ent = ent.add(&v.scale(&m));
    }
    let mut coeffs = BTreeMap::new();
    for (wp, v) in by_w {
        if v.is_zero() {
            continue;
        }
        if !v.b.is_zero() || wp % 2 != 0 {
            return Err(Error::Internal(format!("half-integer power z^{wp}/2 survived")));
        }
        coeffs.insert(wp / 2, v.a);
    }
    Ok(AsymptoticExpansion { branch, coeffs, order: n })
}

/// True iff every `A_k`, `k <= order`, of `e^{f/z} (f' a v / z + (a v)')`
/// vanishes.
pub fn check_total_derivative(phase: &PhaseData, amp: &AmplitudeData, v: &XSeries, order: i64) -> Result<bool> {
    let b = amp.mul(v);
    let integrand = phase.derivative()?.mul(&b).shift_z(-1).add(&b.derivative());
    Ok(stationary_phase(phase, &integrand, order)?.is_zero())
}
