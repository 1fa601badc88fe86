//! Non-equivariant I-functions with coefficients in the ordinary
//! cohomology ring.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{BaseElem, CohAlgebra, CohLaurent, DegreeIndex, NovikovSeries, Rat, TMonomial};
use crate::algebra::coh::Monomial;
use crate::error::{Error, Result};
use crate::toric::{FiberPoly, Geometry};

use super::equivariant::dress;

/// Cohomology ring of the total space with its distinguished classes.
#[derive(Clone, Debug)]
pub struct ClassicalRing {
    pub alg: Arc<CohAlgebra>,
    /// `P_1..P_K`.
    pub p: Vec<Vec<Rat>>,
    /// `h`, or zero over a point.
    pub h: Vec<Rat>,
}

impl ClassicalRing {
    /// Generators `p1..pK` (and `h` over `P^r`), relations from the
    /// Poincare pairing computed by push-forward.
    pub fn from_pairing(geom: &Geometry, basis: Option<Vec<Monomial>>) -> Result<ClassicalRing> {
        let k = geom.k();
        let r = geom.r();
        let mut names: Vec<String> = (1..=k).map(|i| format!("p{i}")).collect();
        if r > 0 {
            names.push("h".into());
        }
        let dim = (geom.n() - k + r) as u32;
        let line = geom.spec.lambda_lines[0].clone();
        let integrate = |m: &Monomial| -> Result<Rat> {
            let b = if r > 0 { m[k] } else { 0 };
            let coeff = BaseElem::h(r).pow(b);
            let f = FiberPoly::monomial(m[..k].to_vec(), coeff);
            let v = geom.pushforward(&f, &line)?.at_zero()?;
            Ok(v[r].clone())
        };
        let alg = CohAlgebra::from_pairing(names, dim, &integrate, basis)?;
        let p = (0..k).map(|i| alg.generator(i)).collect();
        let h = if r > 0 { alg.generator(k) } else { alg.zero() };
        Ok(ClassicalRing { alg, p, h })
    }

    /// `Q[P, h] / ((P - Lambda_1) ... (P - Lambda_N), h^{r+1})` for a
    /// projective bundle (`K = 1`).
    pub fn projective_bundle(geom: &Geometry) -> Result<ClassicalRing> {
        if geom.k() != 1 {
            return Err(Error::Unsupported("the rewrite presentation needs K = 1".into()));
        }
        if geom.spec.m[0].iter().any(|&x| x != 1) {
            return Err(Error::Unsupported("the rewrite presentation needs m = (1, ..., 1)".into()));
        }
        let a: Vec<i64> = geom.spec.twists.iter().map(|l| -l).collect();
        let alg = CohAlgebra::projective_bundle(&a, geom.r() as u32);
        let p = vec![alg.generator(0)];
        let h = if geom.r() > 0 { alg.generator(1) } else { alg.zero() };
        Ok(ClassicalRing { alg, p, h })
    }

    /// `U_j = sum_i P_i m_ij + l_j h`.
    pub fn u(&self, geom: &Geometry, j: usize) -> Vec<Rat> {
        let mut v = self.alg.zero();
        for (i, pi) in self.p.iter().enumerate() {
            let c = Rat::from_integer(geom.spec.m[i][j].into());
            for (a, b) in v.iter_mut().zip(pi) {
                *a += &c * b;
            }
        }
        let l = Rat::from_integer(geom.spec.twists[j].into());
        for (a, b) in v.iter_mut().zip(&self.h) {
            *a += &l * b;
        }
        v
    }
}

/// `1 / (U + m z)` for nilpotent `U`, as a finite Laurent polynomial.
fn inv_linear(alg: &Arc<CohAlgebra>, u: &[Rat], m: i64) -> CohLaurent {
    let mut out = CohLaurent::zero(alg);
    let minv = Rat::new(1.into(), m.into());
    let neg: Vec<Rat> = u.iter().map(|x| -x).collect();
    let mut pw = alg.unit();
    let mut coef = minv.clone();
    let mut n = 0;
    while pw.iter().any(|x| !x.is_zero()) {
        let c: Vec<Rat> = pw.iter().map(|x| x * &coef).collect();
        out.add_at(-(n + 1), &c);
        pw = alg.mul(&pw, &neg);
        coef *= &minv;
        n += 1;
    }
    out
}

fn linear(alg: &Arc<CohAlgebra>, u: &[Rat], m: i64) -> CohLaurent {
    let mut out = CohLaurent::monomial(alg, u.to_vec(), 0);
    let mut c = alg.zero();
    c[0] = Rat::from_integer(m.into());
    out.add_at(1, &c);
    out
}

/// `1 / prod_{m=1}^{n} (U + m z)` with the Gamma-ratio convention.
pub fn gamma_inverse(alg: &Arc<CohAlgebra>, u: &[Rat], n: i64) -> CohLaurent {
    use crate::algebra::Coeff;
    let mut acc = CohLaurent::monomial(alg, alg.unit(), 0);
    if n >= 0 {
        for m in 1..=n {
            acc = acc.mul(&inv_linear(alg, u, m));
        }
    } else {
        for m in n + 1..=0 {
            acc = acc.mul(&linear(alg, u, m));
        }
    }
    acc
}

/// The non-equivariant I-function
/// `e^{(Pt + h tau)/z} sum_{D,d} Q^D q^d e^{dt} e^{D tau} J_D / prod_j prod_{m=1}^{U_j(d,D)} (U_j + m z)`
/// over the union of the effective ranges of all fixed points.
pub fn classical_i(geom: &Geometry, ring: &ClassicalRing, cutoff: &Rat, t_order: u32) -> NovikovSeries<CohLaurent> {
    use crate::algebra::Coeff;
    let alg = &ring.alg;
    let k = geom.k();
    let r = geom.r();
    let nvars = k + usize::from(r > 0);
    let mut degs: Vec<DegreeIndex> = geom
        .points
        .iter()
        .flat_map(|p| geom.effective_range(p, cutoff))
        .collect();
    degs.sort();
    degs.dedup();
    let us: Vec<Vec<Rat>> = (0..geom.n()).map(|j| ring.u(geom, j)).collect();
    let mut s = NovikovSeries::new(geom.spec.omega.clone(), cutoff.clone(), t_order);
    for deg in degs {
        let mut term = CohLaurent::monomial(alg, alg.unit(), 1);
        for m in 1..=deg.base {
            let f = inv_linear(alg, &ring.h, m);
            for _ in 0..=r {
                term = term.mul(&f);
            }
        }
        for (j, u) in us.iter().enumerate() {
            term = term.mul(&gamma_inverse(alg, u, geom.u_of(j, &deg)));
        }
        s.add_term(deg, TMonomial::one(nvars), term);
    }
    let lin = |c: &[Rat], delta: i64| {
        let mut l = CohLaurent::monomial(alg, c.to_vec(), -1);
        let mut d = alg.zero();
        d[0] = Rat::from_integer(delta.into());
        l.add_at(0, &d);
        l
    };
    for i in 0..k {
        s = dress(&s, i, |d| lin(&ring.p[i], d.d[i]), |c, q| c.scale(q));
    }
    if r > 0 {
        s = dress(&s, k, |d| lin(&ring.h, d.base), |c, q| c.scale(q));
    }
    s
}
