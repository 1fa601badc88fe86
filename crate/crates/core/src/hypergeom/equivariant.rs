//! Base J-functions and the fixed-point restrictions `J^alpha` of the
//! equivariant I-function.

use std::collections::BTreeMap;

use crate::algebra::{BaseElem, Coeff, DegreeIndex, NovikovSeries, Rat, TMonomial, ZFun};
use crate::error::{Error, Result};
use crate::toric::Geometry;

use super::gamma::gamma_ratio_inverse;

/// Names of the formal variables: `t1..tK` for the fiber divisors, `tau`
/// for the base hyperplane (base `P^r` only) and `tau0` when the unit
/// direction is requested.
pub fn t_vars(geom: &Geometry, string: bool) -> Vec<String> {
    let mut v: Vec<String> = (1..=geom.k()).map(|i| format!("t{i}")).collect();
    if geom.r() > 0 {
        v.push("tau".into());
    }
    if string {
        v.push("tau0".into());
    }
    v
}

/// Multiplies every term by `exp(t_var * L(deg))`, where `L` is linear in
/// `1/z`, keeping the `t`-order.
pub fn dress<C: Coeff>(
    s: &NovikovSeries<C>,
    var: usize,
    lin: impl Fn(&DegreeIndex) -> C,
    scale: impl Fn(&C, &Rat) -> C,
) -> NovikovSeries<C> {
    let mut out = NovikovSeries::new(s.omega().to_vec(), s.cutoff().clone(), s.t_order());
    for ((deg, t), c) in s.iter() {
        let l = lin(deg);
        let mut term = c.clone();
        let mut fact = Rat::from_integer(1.into());
        let room = s.t_order() - t.total();
        for n in 0..=room {
            let mut tt = t.clone();
            tt.0[var] += n;
            out.add_term(deg.clone(), tt, scale(&term, &fact.recip()));
            term = term.mul(&l);
            fact *= Rat::from_integer((n + 1).into());
        }
    }
    out
}

fn laurent_linear(c: &BaseElem, delta: &Rat) -> ZFun {
    let mut m = BTreeMap::new();
    m.insert(-1, c.clone());
    m.insert(0, BaseElem::from_coeffs(vec![delta.clone().into()], c.r()));
    ZFun::from_laurent(c.r(), &m)
}

fn dress_z(s: &NovikovSeries<ZFun>, var: usize, lin: impl Fn(&DegreeIndex) -> (BaseElem, Rat)) -> NovikovSeries<ZFun> {
    dress(
        s,
        var,
        |d| {
            let (c, delta) = lin(d);
            laurent_linear(&c, &delta)
        },
        |f, q| f.scale_rat(q),
    )
}

/// `J_D = z / prod_{m=1}^{D} (h + m z)^{r+1}` for `D <= cutoff`, keyed by
/// base degree with an empty fiber part and `nvars` formal variables.
pub fn base_j(r: usize, cutoff: &Rat, t_order: u32, nvars: usize) -> NovikovSeries<ZFun> {
    let mut s = NovikovSeries::new(Vec::new(), cutoff.clone(), t_order);
    let h = BaseElem::h(r);
    let mut jd = ZFun::z(r);
    let mut dd = 0i64;
    loop {
        let deg = DegreeIndex::new(Vec::new(), dd);
        if !s.admits(&deg, &TMonomial::one(nvars)) {
            break;
        }
        s.add_term(deg, TMonomial::one(nvars), jd.clone());
        if r == 0 {
            break;
        }
        dd += 1;
        let f = ZFun::inv_linear(&h, dd).expect("m != 0");
        for _ in 0..=r {
            jd = jd.mul(&f);
        }
    }
    s
}

/// `J(tau + t rho) = exp(rho t / z) sum_D Q^D exp(rho(D) t) J_D` with
/// `rho = c h`, in the formal variable `var`.
pub fn divisor_shift(j: &NovikovSeries<ZFun>, c: &Rat, var: usize, r: usize) -> Result<NovikovSeries<ZFun>> {
    if r == 0 {
        return Err(Error::Unsupported("a point base has no divisor directions".into()));
    }
    let rho = BaseElem::h(r).scale_rat(c);
    Ok(dress_z(j, var, |d| (rho.clone(), c * Rat::from_integer(d.base.into()))))
}

/// `exp(tau0 / z)` dressing in the variable `var`.
pub fn string_dress(j: &NovikovSeries<ZFun>, var: usize, r: usize) -> NovikovSeries<ZFun> {
    dress_z(j, var, |_| (BaseElem::one(r), Rat::from_integer(0.into())))
}

/// The base J-function with its formal variables laid out as in [`t_vars`].
pub fn dressed_base_j(geom: &Geometry, cutoff: &Rat, t_order: u32, string: bool) -> NovikovSeries<ZFun> {
    let r = geom.r();
    let nb = usize::from(r > 0) + usize::from(string);
    let mut j = base_j(r, cutoff, t_order, nb);
    if r > 0 {
        j = divisor_shift(&j, &Rat::from_integer(1.into()), 0, r).expect("r > 0");
    }
    if string {
        j = string_dress(&j, nb - 1, r);
    }
    j
}

/// `J^alpha` for the fixed point `point` on the given line: the sum over
/// effective absolute degrees `(d, D)` of
/// `J_D prod_j 1 / prod_{m=1}^{U_j(d,D)} (alpha^*U_j + m z)`, dressed by
/// `exp(P^alpha t / z) exp(d t)`.
pub fn restrict_i(
    geom: &Geometry,
    point: usize,
    line: &[Rat],
    base: &NovikovSeries<ZFun>,
    cutoff: &Rat,
    t_order: u32,
) -> NovikovSeries<ZFun> {
    let r = geom.r();
    let k = geom.k();
    let pt = &geom.points[point];
    let weights: Vec<BaseElem> = pt.u.iter().map(|w| w.to_base(line, r)).collect();
    let mut s = NovikovSeries::new(geom.spec.omega.clone(), cutoff.clone(), t_order);
    for deg in geom.effective_range(pt, cutoff) {
        let mut core = ZFun::one(r);
        for (j, w) in weights.iter().enumerate() {
            core = core.mul(&gamma_ratio_inverse(w, geom.u_of(j, &deg)));
        }
        for ((bd, bt), jd) in base.iter() {
            if bd.base != deg.base {
                continue;
            }
            let mut t = vec![0; k];
            t.extend_from_slice(&bt.0);
            s.add_term(deg.clone(), TMonomial(t), jd.mul(&core));
        }
    }
    for i in 0..k {
        let p = pt.p[i].to_base(line, r);
        s = dress_z(&s, i, |d| (p.clone(), Rat::from_integer(d.d[i].into())));
    }
    s
}

/// All restrictions `J^alpha` on one line.
#[derive(Clone, Debug)]
pub struct EquivariantI {
    pub line: Vec<Rat>,
    pub vars: Vec<String>,
    pub series: Vec<NovikovSeries<ZFun>>,
}

pub fn build_equivariant(geom: &Geometry, line: &[Rat], cutoff: &Rat, t_order: u32, string: bool) -> EquivariantI {
    let base = dressed_base_j(geom, cutoff, t_order, string);
    let series = (0..geom.points.len())
        .map(|a| restrict_i(geom, a, line, &base, cutoff, t_order))
        .collect();
    EquivariantI {
        line: line.to_vec(),
        vars: t_vars(geom, string),
        series,
    }
}
