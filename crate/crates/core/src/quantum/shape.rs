//! Shape of non-equivariant I-functions at `z = infinity` and the mirror map.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{CohLaurent, DegreeIndex, NovikovSeries, Rat, TMonomial};
use crate::hypergeom::ClassicalRing;
use crate::toric::{Base, Geometry};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeMode {
    /// Toric Fano manifold: `I` should already be the J-function.
    Fano,
    /// Projective bundle over `P^r` with nef twists.
    Nef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorMapReport {
    pub mode: ShapeMode,
    pub conditions_met: bool,
    pub conditions: String,
    /// The `z^1` coefficient is the unit at the origin and nothing else
    /// has a nonnegative power beyond `z^0`.
    pub leading_ok: bool,
    /// Nonzero `z^0` coefficients by Novikov degree and `t`-monomial.
    pub z0: Vec<(DegreeIndex, TMonomial, Vec<Rat>)>,
    /// `z^0` coefficient is exactly `tau h + P t`.
    pub trivial: bool,
}

impl MirrorMapReport {
    pub fn passes(&self) -> bool {
        self.conditions_met && self.leading_ok && self.trivial
    }
}

impl fmt::Display for MirrorMapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode: {:?}", self.mode)?;
        writeln!(f, "conditions: {} ({})", if self.conditions_met { "met" } else { "not met" }, self.conditions)?;
        writeln!(f, "z^1 coefficient: {}", if self.leading_ok { "1" } else { "unexpected" })?;
        writeln!(f, "z^0 coefficient:")?;
        for (d, t, v) in &self.z0 {
            writeln!(f, "  {d} {t}: {}", v.iter().map(Rat::to_string).collect::<Vec<_>>().join(" "))?;
        }
        write!(f, "mirror map: {}", if self.trivial { "trivial" } else { "nontrivial" })
    }
}

/// `c_1 . C > 0` on every invariant curve of a toric manifold.
pub fn is_toric_fano(geom: &Geometry) -> bool {
    geom.r() == 0
        && geom
            .edges
            .iter()
            .all(|e| (0..geom.n()).map(|j| geom.u_fiber(j, &e.d)).sum::<i64>() > 0)
}

fn conditions(geom: &Geometry, mode: ShapeMode) -> (bool, String) {
    match mode {
        ShapeMode::Fano => {
            if geom.r() != 0 {
                (false, "base is not a point".into())
            } else if is_toric_fano(geom) {
                (true, "c1 positive on all invariant curves".into())
            } else {
                (false, "c1 not positive on some invariant curve".into())
            }
        }
        ShapeMode::Nef => {
            let r = match geom.spec.base {
                Base::Projective(r) => r as i64,
                Base::Point => return (false, "base is a point".into()),
            };
            if geom.k() != 1 || geom.spec.m[0].iter().any(|&x| x != 1) {
                return (false, "not a projective bundle".into());
            }
            let a: Vec<i64> = geom.spec.twists.iter().map(|l| -l).collect();
            let ok = a[0] == 0 && a.iter().all(|&x| x >= 0) && r + 1 - a.iter().sum::<i64>() >= 0;
            let note = format!("Lambda = ({}) h", a.iter().map(i64::to_string).collect::<Vec<_>>().join(", "));
            (ok, note)
        }
    }
}

pub fn j_shape_check(geom: &Geometry, ring: &ClassicalRing, series: &NovikovSeries<CohLaurent>, mode: ShapeMode) -> MirrorMapReport {
    let (conditions_met, note) = conditions(geom, mode);
    let alg = &ring.alg;
    let k = geom.k();
    let nvars = k + usize::from(geom.r() > 0);
    let origin = (DegreeIndex::zero(k), TMonomial::one(nvars));
    let mut leading_ok = true;
    let mut z0 = Vec::new();
    let mut trivial = true;
    for ((d, t), c) in series.iter() {
        if c.max_power().is_some_and(|p| p > 1) {
            leading_ok = false;
        }
        let z1 = c.coeff(1);
        let expect1 = if (d, t) == (&origin.0, &origin.1) { alg.unit() } else { alg.zero() };
        if z1 != expect1 {
            leading_ok = false;
        }
        let v = c.coeff(0);
        let expect0 = if d.is_zero() && t.total() == 1 {
            let var = t.0.iter().position(|&e| e == 1).expect("linear monomial");
            if var < k {
                ring.p[var].clone()
            } else {
                ring.h.clone()
            }
        } else {
            alg.zero()
        };
        if v != expect0 {
            trivial = false;
        }
        if v.iter().any(|x| !x.is_zero()) {
            z0.push((d.clone(), t.clone(), v));
        }
    }
    if series.get(&origin.0, &origin.1).is_none_or(|c| c.coeff(1) != alg.unit()) {
        leading_ok = false;
    }
    MirrorMapReport {
        mode,
        conditions_met,
        conditions: note,
        leading_ok,
        z0,
        trivial,
    }
}
