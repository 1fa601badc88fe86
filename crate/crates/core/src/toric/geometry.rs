//! Fixed points, one-dimensional orbits and effective degrees of a toric
//! fibration.

use std::fmt::Write as _;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::spec::{check_line, ToricFibrationSpec};
use super::weight::Weight;
use crate::algebra::{linalg, BaseElem, DegreeIndex, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    /// Sorted K-subset of `0..N`.
    pub alpha: Vec<usize>,
    /// `P^alpha_i`.
    pub p: Vec<Weight>,
    /// `alpha^* U_j` for every `j`; zero for `j` in `alpha`.
    pub u: Vec<Weight>,
    /// `det(m|alpha)`, always `+-1`.
    pub det: i64,
    /// Coordinates of `omega` in the cone of `alpha`, all positive.
    pub chamber: Vec<Rat>,
}

impl FixedPoint {
    pub fn contains(&self, j: usize) -> bool {
        self.alpha.contains(&j)
    }

    pub fn normal_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.u.len()).filter(|j| !self.contains(*j))
    }

    /// `h`-coefficients of `P^alpha`, i.e. `P^alpha(D)` for `D = 1`.
    pub fn p_h(&self) -> Vec<i64> {
        self.p.iter().map(|w| w.h.to_integer().to_i64().unwrap_or(0)).collect()
    }

    pub fn euler(&self, line: &[Rat], r: usize) -> BaseElem {
        self.normal_indices()
            .fold(BaseElem::one(r), |acc, j| acc.mul_ref(&self.u[j].to_base(line, r)))
    }

    pub fn label(&self) -> String {
        let v: Vec<String> = self.alpha.iter().map(|j| (j + 1).to_string()).collect();
        format!("{{{}}}", v.join(","))
    }
}

/// An oriented one-dimensional orbit from `alpha` to `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub alpha: usize,
    pub beta: usize,
    pub j_plus: usize,
    pub j_minus: usize,
    pub chi: Weight,
    pub d: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct Geometry {
    pub spec: ToricFibrationSpec,
    pub points: Vec<FixedPoint>,
    pub edges: Vec<Edge>,
}

impl Geometry {
    pub fn new(spec: ToricFibrationSpec) -> Result<Geometry> {
        spec.validate()?;
        let points = fixed_points(&spec)?;
        let edges = edges(&spec, &points)?;
        let mut used = vec![false; spec.n];
        for p in &points {
            for &j in &p.alpha {
                used[j] = true;
            }
        }
        if let Some(j) = used.iter().position(|u| !u) {
            return Err(Error::Spec(format!(
                "column {} lies in no fixed-point cone; the quotient is not compact",
                j + 1
            )));
        }
        Ok(Geometry { spec, points, edges })
    }

    pub fn r(&self) -> usize {
        self.spec.r()
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// Fiber curve class functional `U_j(d, D) = sum_i d_i m_ij + l_j D`
    /// on absolute degrees.
    pub fn u_of(&self, j: usize, deg: &DegreeIndex) -> i64 {
        let mut v = self.spec.twists[j] * deg.base;
        for (i, di) in deg.d.iter().enumerate() {
            v += di * self.spec.m[i][j];
        }
        v
    }

    /// `U_j(d)` of a fiber degree.
    pub fn u_fiber(&self, j: usize, d: &[i64]) -> i64 {
        d.iter().enumerate().map(|(i, di)| di * self.spec.m[i][j]).sum()
    }

    pub fn point_index(&self, alpha: &[usize]) -> Option<usize> {
        self.points.iter().position(|p| p.alpha == alpha)
    }

    /// Absolute degrees `(d + P^alpha(D), D)` with `U_j(d) >= 0` for
    /// `j` in `alpha`, weight at most `cutoff` and `D <= cutoff`.
    pub fn effective_range(&self, point: &FixedPoint, cutoff: &Rat) -> Vec<DegreeIndex> {
        let k = self.k();
        let mt: Vec<Vec<Rat>> = (0..k)
            .map(|s| (0..k).map(|i| Rat::from_integer(self.spec.m[i][point.alpha[s]].into())).collect())
            .collect();
        // d = (m|alpha^T)^{-1} u
        let inv = linalg::inverse(&mt).expect("unimodular cone");
        let max_base = if self.r() == 0 {
            0
        } else {
            cutoff.floor().to_integer().to_i64().unwrap_or(0)
        };
        let ph = point.p_h();
        let mut out = Vec::new();
        for base in 0..=max_base {
            let shift: Vec<i64> = ph.iter().map(|c| c * base).collect();
            let base_w = DegreeIndex::new(shift.clone(), base).weight(&self.spec.omega);
            let budget = cutoff - &base_w;
            if budget < Rat::zero() {
                continue;
            }
            let mut u = vec![0i64; k];
            enumerate_box(&point.chamber, &budget, 0, &mut u, &mut |u| {
                let d: Vec<i64> = (0..k)
                    .map(|i| {
                        let v: Rat = (0..k).map(|s| &inv[i][s] * Rat::from_integer(u[s].into())).sum();
                        v.to_integer().to_i64().expect("integral degree")
                    })
                    .collect();
                let abs: Vec<i64> = d.iter().zip(&shift).map(|(a, b)| a + b).collect();
                out.push(DegreeIndex::new(abs, base));
            });
        }
        out.sort();
        out
    }

    /// Rejects lines on which two non-proportional weights take values in a
    /// ratio `+-a/b` with `a, b <= bound`; such coincidences merge poles
    /// that are distinct for generic `lambda`.
    pub fn check_generic(&self, line: &[Rat], bound: i64) -> Result<()> {
        check_line(line, self.n())?;
        let mut forms: Vec<Weight> = Vec::new();
        for p in &self.points {
            for j in p.normal_indices() {
                let mut w = p.u[j].clone();
                w.h = Rat::zero();
                if !forms.iter().any(|f| f.ratio(&w).is_some()) {
                    forms.push(w);
                }
            }
        }
        for (i, a) in forms.iter().enumerate() {
            let va = a.lambda_value(line);
            if va.is_zero() {
                return Err(Error::NonGenericLine(format!("weight {a} vanishes")));
            }
            for b in &forms[..i] {
                let q = (va.clone() / b.lambda_value(line)).abs();
                if q.numer() <= &bound.into() && q.denom() <= &bound.into() {
                    return Err(Error::NonGenericLine(format!(
                        "weights {a} and {b} have ratio {q} on this line"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Multiplier bound for [`Geometry::check_generic`] that covers every
    /// factor `(w + m z)` reachable at the given cutoff and `kmax`.
    pub fn generic_bound(&self, cutoff: &Rat, kmax: u32) -> i64 {
        let maxm = self
            .spec
            .m
            .iter()
            .flatten()
            .chain(&self.spec.twists)
            .map(|x| x.abs())
            .max()
            .unwrap_or(1)
            .max(1);
        let c = cutoff.ceil().to_integer().to_i64().unwrap_or(0) + 1;
        let minw = self
            .points
            .iter()
            .flat_map(|p| p.chamber.iter())
            .min()
            .cloned()
            .unwrap_or_else(Rat::one);
        let steps = (Rat::from_integer(c.into()) / minw).ceil().to_integer().to_i64().unwrap_or(c);
        (steps * maxm * self.k() as i64 + 1) * kmax as i64 + 2
    }

    /// Canonical text listing of fixed points and edges.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for p in &self.points {
            let ps: Vec<String> = p.p.iter().map(Weight::to_string).collect();
            let _ = write!(s, "point {} det={} P=({})", p.label(), p.det, ps.join(", "));
            let e: Vec<String> = p.normal_indices().map(|j| format!("U{}={}", j + 1, p.u[j])).collect();
            let _ = writeln!(s, " normal: {}", e.join(", "));
        }
        for e in &self.edges {
            let d: Vec<String> = e.d.iter().map(i64::to_string).collect();
            let _ = writeln!(
                s,
                "edge {} -> {} j+={} j-={} chi={} d=({})",
                self.points[e.alpha].label(),
                self.points[e.beta].label(),
                e.j_plus + 1,
                e.j_minus + 1,
                e.chi,
                d.join(",")
            );
        }
        s
    }

    /// Checks the edge identities on every oriented edge and returns a
    /// description of each violation.
    pub fn edge_identity_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.edges {
            let (a, b) = (&self.points[e.alpha], &self.points[e.beta]);
            let tag = format!("{} -> {}", a.label(), b.label());
            for i in 0..self.k() {
                if a.p[i].sub(&b.p[i]) != e.chi.scale(&Rat::from_integer(e.d[i].into())) {
                    out.push(format!("{tag}: P{} difference is not chi * d", i + 1));
                }
            }
            for j in [e.j_plus, e.j_minus] {
                if self.u_fiber(j, &e.d) != 1 {
                    out.push(format!("{tag}: U{}(d) != 1", j + 1));
                }
            }
            for &j in a.alpha.iter().filter(|j| b.contains(**j)) {
                if !a.u[j].is_zero() || !b.u[j].is_zero() || self.u_fiber(j, &e.d) != 0 {
                    out.push(format!("{tag}: U{} does not vanish on the common face", j + 1));
                }
            }
        }
        out
    }
}

/// Enumerates `u in N^K` with `sum x_s u_s <= budget`.
fn enumerate_box(x: &[Rat], budget: &Rat, s: usize, u: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if s == x.len() {
        f(u);
        return;
    }
    let mut v = 0;
    loop {
        let used = &x[s] * Rat::from_integer(v.into());
        if &used > budget {
            break;
        }
        u[s] = v;
        let rest = budget - used;
        enumerate_box(x, &rest, s + 1, u, f);
        v += 1;
    }
    u[s] = 0;
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for last in (k - 1)..n {
        for mut s in subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out.sort();
    out
}

pub fn fixed_points(spec: &ToricFibrationSpec) -> Result<Vec<FixedPoint>> {
    let (k, n) = (spec.k, spec.n);
    let mut out = Vec::new();
    for alpha in subsets(n, k) {
        let sub: Vec<Vec<Rat>> = (0..k)
            .map(|i| alpha.iter().map(|&j| Rat::from_integer(spec.m[i][j].into())).collect())
            .collect();
        let det = linalg::det(&sub);
        if det.is_zero() {
            continue;
        }
        let x = linalg::solve(&sub, &spec.omega).expect("nonsingular");
        if x.iter().any(Signed::is_negative) {
            continue;
        }
        let label: Vec<usize> = alpha.iter().map(|j| j + 1).collect();
        if x.iter().any(Zero::is_zero) {
            return Err(Error::NonRegularChamber(format!(
                "omega lies on the boundary of the cone of columns {label:?}"
            )));
        }
        if det.abs() != Rat::one() {
            return Err(Error::SingularFixedPoint(format!("columns {label:?} have determinant {det}")));
        }
        // sum_i P_i m_ij = lambda_j - l_j h for j in alpha
        let mt: Vec<Vec<Rat>> = (0..k).map(|s| (0..k).map(|i| sub[i][s].clone()).collect()).collect();
        let inv = linalg::inverse(&mt).expect("nonsingular");
        let rhs: Vec<Weight> = alpha
            .iter()
            .map(|&j| Weight::lambda(n, j).add(&Weight::h(n, Rat::from_integer((-spec.twists[j]).into()))))
            .collect();
        let p: Vec<Weight> = (0..k)
            .map(|i| {
                (0..k).fold(Weight::zero(n), |acc, s| acc.add(&rhs[s].scale(&inv[i][s])))
            })
            .collect();
        let u = (0..n).map(|j| restricted_u(spec, &p, j)).collect::<Vec<_>>();
        for &j in &alpha {
            if !u[j].is_zero() {
                return Err(Error::Internal(format!("alpha^*U_{} does not vanish", j + 1)));
            }
        }
        for (j, w) in u.iter().enumerate() {
            if !alpha.contains(&j) && w.torically_zero() {
                return Err(Error::Internal(format!("normal weight U_{} is not torically nonzero", j + 1)));
            }
        }
        out.push(FixedPoint {
            alpha,
            p,
            u,
            det: det.to_integer().to_i64().unwrap_or(0),
            chamber: x,
        });
    }
    if out.is_empty() {
        return Err(Error::Spec("no fixed points".into()));
    }
    Ok(out)
}

/// `sum_i P_i m_ij - lambda_j - Lambda_j` at the given `P`.
pub fn restricted_u(spec: &ToricFibrationSpec, p: &[Weight], j: usize) -> Weight {
    let n = spec.n;
    let mut w = Weight::lambda(n, j)
        .scale(&-Rat::one())
        .add(&Weight::h(n, Rat::from_integer(spec.twists[j].into())));
    for (i, pi) in p.iter().enumerate() {
        w = w.add(&pi.scale(&Rat::from_integer(spec.m[i][j].into())));
    }
    w
}

pub fn edges(spec: &ToricFibrationSpec, points: &[FixedPoint]) -> Result<Vec<Edge>> {
    let mut out = Vec::new();
    for (a, pa) in points.iter().enumerate() {
        for (b, pb) in points.iter().enumerate() {
            if a == b {
                continue;
            }
            let plus: Vec<usize> = pb.alpha.iter().copied().filter(|j| !pa.contains(*j)).collect();
            let minus: Vec<usize> = pa.alpha.iter().copied().filter(|j| !pb.contains(*j)).collect();
            if plus.len() != 1 {
                continue;
            }
            let (j_plus, j_minus) = (plus[0], minus[0]);
            let chi = pa.u[j_plus].clone();
            let mut d = Vec::with_capacity(spec.k);
            for i in 0..spec.k {
                let diff = pa.p[i].sub(&pb.p[i]);
                let c = if diff.is_zero() {
                    Rat::zero()
                } else {
                    diff.ratio(&chi).ok_or_else(|| {
                        Error::Internal(format!(
                            "P^a - P^b is not a multiple of chi on edge {} -> {}",
                            pa.label(),
                            pb.label()
                        ))
                    })?
                };
                if !c.is_integer() {
                    return Err(Error::Internal(format!(
                        "non-integral edge degree {c} on {} -> {}",
                        pa.label(),
                        pb.label()
                    )));
                }
                d.push(c.to_integer().to_i64().unwrap_or(0));
            }
            out.push(Edge {
                alpha: a,
                beta: b,
                j_plus,
                j_minus,
                chi,
                d,
            });
        }
    }
    Ok(out)
}
