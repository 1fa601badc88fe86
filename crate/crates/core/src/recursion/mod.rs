//! Exact verification of the fixed-point residue recursion
//!
//! `k Res_{z = -chi/k} J^alpha(z) dz = q^{k d_ab} J^beta(-chi/k) / Euler(N_ab(k))`
//!
//! on truncated restrictions.

use std::fmt::Write as _;

use crate::algebra::{BaseElem, DegreeIndex, NovikovSeries, Rat, TMonomial, ZFun};
use crate::error::{Error, Result};
use crate::hypergeom::{gamma_ratio_product, EquivariantI};
use crate::toric::{Edge, Geometry};

/// Euler class of the deformation bundle of a multiplicity-`k` leg along
/// `edge`.
pub fn euler_leg(geom: &Geometry, edge: &Edge, k: u32, line: &[Rat]) -> Result<BaseElem> {
    let r = geom.r();
    let alpha = &geom.points[edge.alpha];
    let beta = &geom.points[edge.beta];
    let chi = edge.chi.to_base(line, r);
    let k = k as i64;
    let z0 = chi.scale_rat(&Rat::new((-1).into(), k.into()));
    let eval = |w: &BaseElem, n: i64| -> Result<BaseElem> {
        gamma_ratio_product(w, n)?
            .eval(&z0)
            .map_err(|e| Error::NonGenericLine(format!("leg Euler class factor vanishes: {e}")))
    };
    let mut acc = eval(&chi, k - 1)?;
    for j in (0..geom.n()).filter(|j| !beta.contains(*j)) {
        let w = alpha.u[j].to_base(line, r);
        acc = acc.mul_ref(&eval(&w, k * geom.u_fiber(j, &edge.d))?);
    }
    if !acc.is_invertible() {
        return Err(Error::NonGenericLine("leg Euler class is not invertible".into()));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionCheck {
    pub alpha: String,
    pub beta: String,
    pub k: u32,
    pub deg: DegreeIndex,
    pub t: TMonomial,
    pub left: BaseElem,
    pub right: BaseElem,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedCheck {
    pub alpha: String,
    pub beta: String,
    pub k: u32,
    pub deg: DegreeIndex,
    pub t: TMonomial,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecursionReport {
    pub checks: Vec<RecursionCheck>,
    pub skipped: Vec<SkippedCheck>,
}

impl RecursionReport {
    pub fn checked(&self) -> usize {
        self.checks.len()
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.equal).count()
    }

    pub fn failed(&self) -> usize {
        self.checked() - self.passed()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }

    pub fn merge(&mut self, other: RecursionReport) {
        self.checks.extend(other.checks);
        self.skipped.extend(other.skipped);
    }

    pub fn summary(&self) -> String {
        format!(
            "checked {}, passed {}, skipped {} (cutoff)",
            self.checked(),
            self.passed(),
            self.skipped.len()
        )
    }

    /// One line per check, failures marked.
    pub fn details(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.equal { "ok" } else { "FAIL" };
            let _ = writeln!(s, "{mark} {} -> {} k={} {} {}", c.alpha, c.beta, c.k, c.deg, c.t);
            if !c.equal {
                let _ = writeln!(s, "  left  = {}\n  right = {}", c.left, c.right);
            }
        }
        for c in &self.skipped {
            let _ = writeln!(s, "skip {} -> {} k={} {} {}: {}", c.alpha, c.beta, c.k, c.deg, c.t, c.reason);
        }
        s
    }
}

/// Checks every oriented edge and `k <= kmax` at every key of `J^alpha`
/// and at every key `e + k d_ab` with `e` in the support of `J^beta`.
/// Keys of the second kind beyond the truncation are skipped.
pub fn verify_recursion(geom: &Geometry, eq: &EquivariantI, kmax: u32) -> Result<RecursionReport> {
    let r = geom.r();
    let mut report = RecursionReport::default();
    for edge in &geom.edges {
        let ja = &eq.series[edge.alpha];
        let jb = &eq.series[edge.beta];
        let chi = edge.chi.to_base(&eq.line, r);
        let (la, lb) = (geom.points[edge.alpha].label(), geom.points[edge.beta].label());
        for k in 1..=kmax {
            let euler_inv = euler_leg(geom, edge, k, &eq.line)?.inv()?;
            let z0 = chi.scale_rat(&Rat::new((-1).into(), (k as i64).into()));
            let shift = DegreeIndex::new(edge.d.iter().map(|x| x * k as i64).collect(), 0);
            let mut keys: Vec<(DegreeIndex, TMonomial)> = ja.terms().keys().cloned().collect();
            for (e, t) in jb.terms().keys() {
                let key = e.add(&shift);
                if ja.admits(&key, t) {
                    keys.push((key, t.clone()));
                } else {
                    report.skipped.push(SkippedCheck {
                        alpha: la.clone(),
                        beta: lb.clone(),
                        k,
                        deg: key,
                        t: t.clone(),
                        reason: "cutoff".into(),
                    });
                }
            }
            keys.sort();
            keys.dedup();
            for (deg, t) in keys {
                let left = match ja.get(&deg, &t) {
                    Some(f) => f.residue(&chi, k as i64)?.scale_rat(&Rat::from_integer(k.into())),
                    None => BaseElem::zero(r),
                };
                let right = match jb.get(&deg.sub(&shift), &t) {
                    Some(f) => f.eval(&z0)?.mul_ref(&euler_inv),
                    None => BaseElem::zero(r),
                };
                let equal = left == right;
                report.checks.push(RecursionCheck {
                    alpha: la.clone(),
                    beta: lb.clone(),
                    k,
                    deg,
                    t,
                    left,
                    right,
                    equal,
                });
            }
        }
    }
    Ok(report)
}

/// Confirms that every finite pole of every coefficient of `J^alpha` sits
/// at `z = -chi_ab / k` for an edge `alpha -> beta` and some `k >= 1`, and
/// returns the number of poles inspected.
pub fn pole_inventory(geom: &Geometry, eq: &EquivariantI) -> Result<usize> {
    let r = geom.r();
    let mut count = 0;
    for (a, s) in eq.series.iter().enumerate() {
        let chis: Vec<BaseElem> = geom
            .edges
            .iter()
            .filter(|e| e.alpha == a)
            .map(|e| e.chi.to_base(&eq.line, r))
            .collect();
        for ((deg, t), f) in s.iter() {
            for (loc, _) in f.factors() {
                count += 1;
                let found = chis.iter().any(|chi| {
                    let q = loc.h0().checked_div(chi.h0()).ok().and_then(|q| q.as_rat());
                    q.is_some_and(|q| q > Rat::from_integer(0.into()) && q.recip().is_integer())
                });
                if !found {
                    return Err(Error::Internal(format!(
                        "unexpected pole z = -({loc}) in {} at {deg} {t}",
                        geom.points[a].label()
                    )));
                }
            }
        }
    }
    Ok(count)
}

/// Left-hand residues of one coefficient series, for inspection.
pub fn residues_at(series: &NovikovSeries<ZFun>, chi: &BaseElem, k: u32) -> Result<Vec<BaseElem>> {
    series
        .iter()
        .map(|(_, f)| f.residue(chi, k as i64).map(|v| v.scale_rat(&Rat::from_integer(k.into()))))
        .collect()
}
