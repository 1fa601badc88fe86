//! Push-forward of polynomials in `P_1..P_K` to the base, by fixed-point
//! summation and by residues of the K-form `f dP / (U_1 ... U_N)`.

use num_traits::Zero;

use crate::algebra::{linalg, BaseElem, Rat, ZFun};
use crate::error::{Error, Result};

use super::geometry::Geometry;
use super::weight::Weight;

/// Polynomial in `P_1..P_K` with base-ring coefficients.
#[derive(Clone, Debug, Default)]
pub struct FiberPoly {
    pub terms: Vec<(Vec<u32>, BaseElem)>,
}

impl FiberPoly {
    pub fn monomial(exps: Vec<u32>, c: BaseElem) -> Self {
        FiberPoly {
            terms: vec![(exps, c)],
        }
    }

    pub fn eval(&self, p: &[BaseElem], r: usize) -> BaseElem {
        let mut acc = BaseElem::zero(r);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (pi, &ei) in p.iter().zip(e) {
                t = t.mul_ref(&pi.pow(ei));
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Largest total degree among the terms.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }
}

impl Geometry {
    /// `sum_alpha f(P^alpha) / e^alpha`.
    pub fn pushforward(&self, f: &FiberPoly, line: &[Rat]) -> Result<BaseElem> {
        let r = self.r();
        let mut acc = BaseElem::zero(r);
        for pt in &self.points {
            let p: Vec<BaseElem> = pt.p.iter().map(|w| w.to_base(line, r)).collect();
            let e = pt.euler(line, r).inv()?;
            acc = acc.add_ref(&f.eval(&p, r).mul_ref(&e));
        }
        Ok(acc)
    }

    /// The same push-forward computed as a sum of residues. For `K = 1` the
    /// form is a rational function of one variable: when every pole is a
    /// fixed point the sum is minus the residue at infinity, otherwise each
    /// pole is cleared separately. For `K > 1` each local residue is taken in
    /// the coordinates `U_j, j in alpha`, whose Jacobian is `det^{-1}`, and the
    /// wedge reordering multiplies by `det`.
    pub fn pushforward_residues(&self, f: &FiberPoly, line: &[Rat]) -> Result<BaseElem> {
        if self.k() == 1 {
            self.residues_one_variable(f, line)
        } else {
            self.residues_local(f, line)
        }
    }

    fn residues_one_variable(&self, f: &FiberPoly, line: &[Rat]) -> Result<BaseElem> {
        let r = self.r();
        let n = self.n();
        // P plays the role of z
        let mut g = ZFun::zero(r);
        for (e, c) in &f.terms {
            g = g.add(&ZFun::monomial(c.clone(), e[0] as i64));
        }
        let mut all_points = true;
        for j in 0..n {
            let m = self.spec.m[0][j];
            let shift = Weight::lambda(n, j)
                .scale(&-Rat::from_integer(1.into()))
                .add(&Weight::h(n, Rat::from_integer(self.spec.twists[j].into())));
            g = g.mul(&ZFun::inv_linear(&shift.to_base(line, r), m)?);
            if m != 0 && self.point_index(&[j]).is_none() {
                all_points = false;
            }
        }
        if all_points && self.points.iter().all(|p| p.det == 1) {
            return Ok(g.coeff_at_infinity(-1));
        }
        let mut acc = BaseElem::zero(r);
        for pt in &self.points {
            // pole at P = P^alpha, i.e. z = -w with w = -P^alpha
            let w = pt.p[0].scale(&-Rat::from_integer(1.into())).to_base(line, r);
            let res = g.residue(&w, 1)?;
            acc = acc.add_ref(&res.scale_rat(&Rat::from_integer(pt.det.into())));
        }
        Ok(acc)
    }

    fn residues_local(&self, f: &FiberPoly, line: &[Rat]) -> Result<BaseElem> {
        let r = self.r();
        let k = self.k();
        let mut acc = BaseElem::zero(r);
        for pt in &self.points {
            let sub: Vec<Vec<Rat>> = (0..k)
                .map(|i| pt.alpha.iter().map(|&j| Rat::from_integer(self.spec.m[i][j].into())).collect())
                .collect();
            let jac = linalg::det(&sub);
            if jac.is_zero() {
                return Err(Error::Internal(format!("degenerate cone {}", pt.label())));
            }
            // at u = 0 the point is P = P^alpha; the remaining factors are regular
            let p: Vec<BaseElem> = pt.p.iter().map(|w| w.to_base(line, r)).collect();
            let mut rest = f.eval(&p, r);
            for j in 0..self.n() {
                if pt.contains(j) {
                    continue;
                }
                let mut uj = BaseElem::zero(r);
                for (i, pi) in p.iter().enumerate() {
                    uj = uj.add_ref(&pi.scale_rat(&Rat::from_integer(self.spec.m[i][j].into())));
                }
                let shift = Weight::lambda(self.n(), j)
                    .add(&Weight::h(self.n(), Rat::from_integer((-self.spec.twists[j]).into())));
                uj = &uj - &shift.to_base(line, r);
                rest = rest.mul_ref(&uj.inv()?);
            }
            let local = rest.scale_rat(&jac.recip());
            acc = acc.add_ref(&local.scale_rat(&Rat::from_integer(pt.det.into())));
        }
        Ok(acc)
    }
}
