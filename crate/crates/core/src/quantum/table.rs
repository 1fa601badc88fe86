//! Small quantum products at the origin from iterated divisor derivatives
//! of the J-function.
//!
//! With `J = z + tau + O(1/z)` the derivatives `s_w = z^{|w|-1} d_w J`
//! factor as `L^{-1} v_w` with `L^{-1} = 1 + O(1/z)` and `v_w` polynomial in
//! `z`, and `v_{aw} = (p_a *) v_w + z d_a v_w`. The factorization is found
//! degree by degree in the Novikov ring from a set of basis words, and every
//! other word then over-determines the products.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::linalg;
use crate::algebra::{rat, CohAlgebra, CohLaurent, DegreeIndex, NovikovSeries, Rat, TMonomial};
use crate::error::{Error, Result};
use crate::hypergeom::{classical_i, ClassicalRing};
use crate::toric::Geometry;

use super::nov::{self, NovRat, QMat, QVec, Trunc};
use super::shape::{j_shape_check, ShapeMode};

/// A multiset of divisor directions, sorted.
pub type Word = Vec<usize>;

/// Divisor directions: `p1..pK` and, over `P^r`, `h`.
pub fn divisor_directions(geom: &Geometry, ring: &ClassicalRing) -> Vec<(String, Vec<Rat>)> {
    let mut v: Vec<(String, Vec<Rat>)> = ring.p.iter().enumerate().map(|(i, p)| (format!("p{}", i + 1), p.clone())).collect();
    if geom.r() > 0 {
        v.push(("h".into(), ring.h.clone()));
    }
    v
}

fn words_of_length(nvars: usize, len: usize) -> Vec<Word> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for w in words_of_length(nvars, len - 1) {
        let start = w.last().copied().unwrap_or(0);
        for a in start..nvars {
            let mut x = w.clone();
            x.push(a);
            out.push(x);
        }
    }
    out
}

/// Shortest words whose classical products form a basis.
pub fn basis_words(alg: &CohAlgebra, classes: &[Vec<Rat>]) -> Result<Vec<Word>> {
    let n = alg.dim();
    let mut chosen: Vec<Word> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for len in 0..=n {
        for w in words_of_length(classes.len(), len) {
            let v = w.iter().fold(alg.unit(), |acc, &a| alg.mul(&acc, &classes[a]));
            rows.push(v);
            if linalg::rank(&rows) > chosen.len() {
                chosen.push(w);
                if chosen.len() == n {
                    return Ok(chosen);
                }
            } else {
                rows.pop();
            }
        }
    }
    Err(Error::Degenerate(format!(
        "divisor derivatives span only {} of {n} dimensions",
        chosen.len()
    )))
}

fn word_monomial(w: &Word, nvars: usize) -> TMonomial {
    let mut e = vec![0u32; nvars];
    for &a in w {
        e[a] += 1;
    }
    TMonomial(e)
}

fn concat(a: usize, w: &Word) -> Word {
    let mut x = w.clone();
    x.push(a);
    x.sort_unstable();
    x
}

/// Novikov degree -> power of `z` -> components.
type ZVec = BTreeMap<DegreeIndex, BTreeMap<i64, Vec<Rat>>>;
/// Novikov degree -> power of `z` -> matrix.
type ZMat = BTreeMap<DegreeIndex, BTreeMap<i64, Vec<Vec<Rat>>>>;

fn axpy(acc: &mut [Rat], m: &[Vec<Rat>], v: &[Rat]) {
    for (a, row) in acc.iter_mut().zip(m) {
        for (x, y) in row.iter().zip(v) {
            if !x.is_zero() && !y.is_zero() {
                *a += x * y;
            }
        }
    }
}

fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Per power of `z`, as Novikov vectors.
fn by_z(v: &ZVec, n: usize) -> BTreeMap<i64, QVec> {
    let mut out: BTreeMap<i64, QVec> = BTreeMap::new();
    for (d, zs) in v {
        for (k, c) in zs {
            let slot = out.entry(*k).or_insert_with(|| vec![NovRat::new(); n]);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    slot[i].insert(d.clone(), x.clone());
                }
            }
        }
    }
    out
}

/// The `D`-module data generated by divisor derivatives of one J-function.
pub struct DModule {
    pub alg: Arc<CohAlgebra>,
    pub tr: Trunc,
    pub nvars: usize,
    pub words: Vec<Word>,
    series: NovikovSeries<CohLaurent>,
    degrees: Vec<DegreeIndex>,
    cache: HashMap<Word, ZVec>,
    reduced: HashMap<Word, ZVec>,
    l_inv: ZMat,
    mult: HashMap<usize, QMat>,
}

impl DModule {
    pub fn new(geom: &Geometry, ring: &ClassicalRing, series: NovikovSeries<CohLaurent>) -> Result<DModule> {
        let classes: Vec<Vec<Rat>> = divisor_directions(geom, ring).into_iter().map(|x| x.1).collect();
        let words = basis_words(&ring.alg, &classes)?;
        let tr = Trunc {
            omega: series.omega().to_vec(),
            cutoff: series.cutoff().clone(),
            k: geom.k(),
        };
        let degrees = Self::degree_order(&tr, series.terms().keys().map(|k| k.0.clone()).collect())?;
        let mut dm = DModule {
            alg: ring.alg.clone(),
            tr,
            nvars: classes.len(),
            words,
            series,
            degrees,
            cache: HashMap::new(),
            reduced: HashMap::new(),
            l_inv: ZMat::new(),
            mult: HashMap::new(),
        };
        dm.birkhoff()?;
        Ok(dm)
    }

    /// Closure of the support under addition within the truncation, in an
    /// order compatible with addition.
    fn degree_order(tr: &Trunc, support: BTreeSet<DegreeIndex>) -> Result<Vec<DegreeIndex>> {
        let mut all: BTreeSet<DegreeIndex> = support.into_iter().filter(|d| !d.is_zero()).collect();
        loop {
            let list: Vec<DegreeIndex> = all.iter().cloned().collect();
            let mut grew = false;
            for a in &list {
                for b in &list {
                    let c = a.add(b);
                    if tr.admits(&c) && all.insert(c) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let zero = Rat::zero();
        if let Some(d) = all.iter().find(|d| d.weight(&tr.omega) <= zero) {
            return Err(Error::Unsupported(format!("Novikov degree {d} has nonpositive weight")));
        }
        let mut v: Vec<DegreeIndex> = all.into_iter().collect();
        v.sort_by(|a, b| a.weight(&tr.omega).cmp(&b.weight(&tr.omega)).then(a.cmp(b)));
        Ok(v)
    }

    pub fn max_word(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `z^{|w|-1} d_w J` at `t = 0`.
    fn derivative(&mut self, w: &Word) -> Result<&ZVec> {
        if !self.cache.contains_key(w) {
            let mono = word_monomial(w, self.nvars);
            if mono.total() > self.series.t_order() {
                return Err(Error::Unsupported(format!(
                    "t-order {} is too small for a derivative of order {}",
                    self.series.t_order(),
                    mono.total()
                )));
            }
            let fact = mono.factorial();
            let shift = w.len() as i64 - 1;
            let mut out = ZVec::new();
            for ((d, t), c) in self.series.iter() {
                if *t != mono {
                    continue;
                }
                for (k, v) in c.terms() {
                    if is_zero_vec(v) {
                        continue;
                    }
                    let v: Vec<Rat> = v.iter().map(|x| x * &fact).collect();
                    out.entry(d.clone()).or_default().insert(k + shift, v);
                }
            }
            self.cache.insert(w.clone(), out);
        }
        Ok(&self.cache[w])
    }

    fn zero_deg(&self) -> DegreeIndex {
        self.tr.zero_deg()
    }

    /// `L^{-1}` from `S = L^{-1} V` on the basis words.
    fn birkhoff(&mut self) -> Result<()> {
        let n = self.alg.dim();
        let zero = self.zero_deg();
        let mut s: Vec<ZVec> = Vec::with_capacity(n);
        for w in self.words.clone() {
            s.push(self.derivative(&w)?.clone());
        }
        // classical part, columns = words
        let mut c = vec![vec![Rat::zero(); n]; n];
        for (j, sw) in s.iter().enumerate() {
            for (k, v) in sw.get(&zero).into_iter().flatten() {
                if *k != 0 {
                    return Err(Error::Unsupported(format!("degree-zero part of {:?} has z^{k}", self.words[j])));
                }
                for i in 0..n {
                    c[i][j] = v[i].clone();
                }
            }
        }
        let c_inv = linalg::inverse(&c).ok_or_else(|| Error::Degenerate("classical products of the basis words".into()))?;
        let mut v: Vec<ZVec> = vec![ZVec::new(); n];
        for (j, col) in v.iter_mut().enumerate() {
            col.insert(zero.clone(), [(0, (0..n).map(|i| c[i][j].clone()).collect())].into_iter().collect());
        }
        for d in self.degrees.clone() {
            // R = S_d - sum_{d1 + d2 = d, both nonzero} L^{-1}_{d1} V_{d2}
            let mut r: Vec<BTreeMap<i64, Vec<Rat>>> = s.iter().map(|sw| sw.get(&d).cloned().unwrap_or_default()).collect();
            for (d1, l) in &self.l_inv {
                let d2 = d.sub(d1);
                for (j, col) in v.iter().enumerate() {
                    if d2.is_zero() {
                        continue;
                    }
                    let Some(vz) = col.get(&d2) else { continue };
                    for (k1, m) in l {
                        for (k2, x) in vz {
                            let slot = r[j].entry(k1 + k2).or_insert_with(|| vec![Rat::zero(); n]);
                            let mut neg = vec![Rat::zero(); n];
                            axpy(&mut neg, m, x);
                            for (a, b) in slot.iter_mut().zip(neg) {
                                *a -= b;
                            }
                        }
                    }
                }
            }
            // negative part -> L^{-1}_d C, the rest -> V_d
            let mut lz: BTreeMap<i64, Vec<Vec<Rat>>> = BTreeMap::new();
            for (j, rj) in r.iter().enumerate() {
                for (k, x) in rj {
                    if is_zero_vec(x) {
                        continue;
                    }
                    if *k < 0 {
                        let m = lz.entry(*k).or_insert_with(|| vec![vec![Rat::zero(); n]; n]);
                        for i in 0..n {
                            m[i][j] = x[i].clone();
                        }
                    } else {
                        v[j].entry(d.clone()).or_default().insert(*k, x.clone());
                    }
                }
            }
            for m in lz.values_mut() {
                let prod: Vec<Vec<Rat>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| (0..n).fold(Rat::zero(), |acc, t| acc + &m[i][t] * &c_inv[t][j]))
                            .collect()
                    })
                    .collect();
                *m = prod;
            }
            if !lz.is_empty() {
                self.l_inv.insert(d, lz);
            }
        }
        for (w, col) in self.words.clone().into_iter().zip(v) {
            self.reduced.insert(w, col);
        }
        Ok(())
    }

    /// `v_w = L s_w`. May have negative powers of `z` when the series is
    /// inconsistent.
    pub fn reduce(&mut self, w: &Word) -> Result<ZVec> {
        if let Some(v) = self.reduced.get(w) {
            return Ok(v.clone());
        }
        let n = self.alg.dim();
        let s = self.derivative(w)?.clone();
        let zero = self.zero_deg();
        let mut v = ZVec::new();
        if let Some(x) = s.get(&zero) {
            v.insert(zero.clone(), x.clone());
        }
        for d in self.degrees.clone() {
            let mut acc = s.get(&d).cloned().unwrap_or_default();
            for (d1, l) in &self.l_inv {
                let d2 = d.sub(d1);
                let Some(vz) = v.get(&d2) else { continue };
                for (k1, m) in l {
                    for (k2, x) in vz {
                        let slot = acc.entry(k1 + k2).or_insert_with(|| vec![Rat::zero(); n]);
                        let mut t = vec![Rat::zero(); n];
                        axpy(&mut t, m, x);
                        for (a, b) in slot.iter_mut().zip(t) {
                            *a -= b;
                        }
                    }
                }
            }
            acc.retain(|_, x| !is_zero_vec(x));
            if !acc.is_empty() {
                v.insert(d, acc);
            }
        }
        self.reduced.insert(w.clone(), v.clone());
        Ok(v)
    }

    /// `q d/dq` in direction `a`.
    fn q_derivative(&self, a: usize, v: &QVec) -> QVec {
        v.iter()
            .map(|x| {
                x.iter()
                    .filter_map(|(d, c)| {
                        let e = if a < self.tr.k { d.d[a] } else { d.base };
                        (e != 0).then(|| (d.clone(), c * Rat::from_integer(e.into())))
                    })
                    .collect()
            })
            .collect()
    }

    /// Matrix of `p_a *` in the standard basis, from `z^0`, together with
    /// whether every power of `z` of every relation agrees with it.
    pub fn multiplication(&mut self, a: usize) -> Result<(QMat, bool)> {
        let n = self.alg.dim();
        let mut v0 = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        let mut rel = Vec::with_capacity(n);
        for w in self.words.clone() {
            let vw = by_z(&self.reduce(&w)?, n);
            let vaw = by_z(&self.reduce(&concat(a, &w))?, n);
            v0.push(vw.get(&0).cloned().unwrap_or_else(|| vec![NovRat::new(); n]));
            b.push(vaw.get(&0).cloned().unwrap_or_else(|| vec![NovRat::new(); n]));
            rel.push((vw, vaw));
        }
        let cols = |c: &Vec<QVec>| -> QMat { (0..n).map(|i| c.iter().map(|x| x[i].clone()).collect()).collect() };
        let m = self.tr.mat_mul(&cols(&b), &self.tr.inverse(&cols(&v0))?);
        let mut ok = true;
        for (vw, vaw) in &rel {
            ok &= self.relation_holds(&m, a, vw, vaw);
        }
        self.mult.insert(a, m.clone());
        Ok((m, ok))
    }

    /// `v_{aw} = A v_w + z d_a v_w` at every power of `z`.
    fn relation_holds(&self, m: &QMat, a: usize, vw: &BTreeMap<i64, QVec>, vaw: &BTreeMap<i64, QVec>) -> bool {
        let n = self.alg.dim();
        let zero = vec![NovRat::new(); n];
        if vaw.keys().any(|&k| k < 0) || vw.keys().any(|&k| k < 0) {
            return false;
        }
        let top = vw.keys().chain(vaw.keys()).copied().max().unwrap_or(0) + 1;
        (0..=top).all(|k| {
            let mut lhs = self.tr.mat_vec(m, vw.get(&k).unwrap_or(&zero));
            if let Some(prev) = vw.get(&(k - 1)) {
                lhs = nov::vec_add(&lhs, &self.q_derivative(a, prev));
            }
            lhs == *vaw.get(&k).unwrap_or(&zero)
        })
    }

    /// Whether `z d_v d_w J` reduces consistently, together with all
    /// relations fixing `p_v *`.
    pub fn check_pair(&mut self, v: usize, w: usize) -> Result<bool> {
        let n = self.alg.dim();
        let (m, mut ok) = self.multiplication(v)?;
        let vw = by_z(&self.reduce(&vec![w])?, n);
        let vvw = by_z(&self.reduce(&concat(v, &vec![w]))?, n);
        ok &= self.relation_holds(&m, v, &vw, &vvw);
        Ok(ok)
    }
}


#[derive(Clone, Debug)]
pub struct QuantumProductTable {
    pub alg: Arc<CohAlgebra>,
    pub tr: Trunc,
    pub labels: Vec<String>,
    /// `consts[a][b]` holds the components of `phi_a * phi_b`.
    pub consts: Vec<Vec<QVec>>,
    pub words: Vec<Word>,
}

impl QuantumProductTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &NovRat {
        &self.consts[a][b][c]
    }

    /// Bilinear extension to Novikov-valued vectors.
    pub fn product(&self, x: &QVec, y: &QVec) -> QVec {
        let n = self.dim();
        let mut out = vec![NovRat::new(); n];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_empty() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_empty() {
                    continue;
                }
                let c = self.tr.mul(xa, yb);
                out = nov::vec_add(&out, &self.tr.vec_mul(&c, &self.consts[a][b]));
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> QVec {
        let mut v = vec![NovRat::new(); self.dim()];
        v[i] = self.tr.constant(rat(1));
        v
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|a| (0..self.dim()).all(|b| self.consts[a][b] == self.consts[b][a]))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let l = self.product(&self.consts[a][b], &self.basis_vec(c));
                    let r = self.product(&self.basis_vec(a), &self.consts[b][c]);
                    l == r
                })
            })
        })
    }

    /// The unit of the classical ring is the unit of the product.
    pub fn has_unit(&self) -> bool {
        let e = self.alg.unit();
        let unit: QVec = e.iter().map(|c| self.tr.constant(c.clone())).collect();
        (0..self.dim()).all(|b| self.product(&unit, &self.basis_vec(b)) == self.basis_vec(b))
    }

    /// Degree-zero slice against `alg.mul`.
    pub fn classical_limit_ok(&self) -> bool {
        let zero = self.tr.zero_deg();
        let n = self.dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let c = nov::classical_part(&self.consts[a][b], &zero);
                c == self.alg.mul(&self.alg.basis_vector(a), &self.alg.basis_vector(b))
            })
        })
    }

    pub fn qnames(&self) -> Vec<String> {
        if self.tr.k == 1 {
            vec!["q".into()]
        } else {
            (1..=self.tr.k).map(|i| format!("q{i}")).collect()
        }
    }

    pub fn to_text(&self) -> String {
        let q = self.qnames();
        let mut s = String::new();
        for a in 0..self.dim() {
            for b in a..self.dim() {
                let terms: Vec<String> = (0..self.dim())
                    .filter(|&c| !self.consts[a][b][c].is_empty())
                    .map(|c| format!("({})*{}", nov::format_nov(&self.consts[a][b][c], &q), self.labels[c]))
                    .collect();
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                let _ = writeln!(s, "{} * {} = {}", self.labels[a], self.labels[b], rhs);
            }
        }
        s
    }

    /// One line `a b c <d...> D coefficient` per nonzero structure constant.
    pub fn to_machine(&self) -> String {
        let mut s = String::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                for c in 0..self.dim() {
                    for (d, v) in &self.consts[a][b][c] {
                        let dd: Vec<String> = d.d.iter().map(i64::to_string).collect();
                        let _ = writeln!(s, "{a} {b} {c} {} {} {v}", dd.join(" "), d.base);
                    }
                }
            }
        }
        s
    }
}


/// Structure constants of the small quantum product at the origin from a
/// J-function whose `t`-order is at least one more than the longest basis
/// word.
pub fn quantum_constants(geom: &Geometry, ring: &ClassicalRing, series: NovikovSeries<CohLaurent>) -> Result<QuantumProductTable> {
    let mut dm = DModule::new(geom, ring, series)?;
    let n = dm.alg.dim();
    let mut mats = Vec::with_capacity(dm.nvars);
    for a in 0..dm.nvars {
        let (m, ok) = dm.multiplication(a)?;
        if !ok {
            return Err(Error::Internal(format!("structure constants for direction {a} depend on z")));
        }
        mats.push(m);
    }
    let tr = dm.tr.clone();
    let unit: QVec = dm.alg.unit().into_iter().map(|c| tr.constant(c)).collect();
    let apply = |w: &Word, v: &QVec| w.iter().rev().fold(v.clone(), |acc, &a| tr.mat_vec(&mats[a], &acc));
    let m: QMat = {
        let cols: Vec<QVec> = dm.words.iter().map(|w| apply(w, &unit)).collect();
        (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    };
    let m_inv = tr.inverse(&m)?;
    let mut consts = vec![vec![Vec::new(); n]; n];
    for c in 0..n {
        let ec: QVec = (0..n).map(|i| tr.constant(if i == c { rat(1) } else { Rat::zero() })).collect();
        let images: Vec<QVec> = dm.words.iter().map(|w| apply(w, &ec)).collect();
        for b in 0..n {
            let mut out = vec![NovRat::new(); n];
            for (wi, img) in images.iter().enumerate() {
                let coef = &m_inv[wi][b];
                if !coef.is_empty() {
                    out = nov::vec_add(&out, &tr.vec_mul(coef, img));
                }
            }
            consts[b][c] = out;
        }
    }
    let labels = dm.alg.basis().iter().map(|m| dm.alg.format_monomial(m)).collect();
    Ok(QuantumProductTable {
        alg: dm.alg.clone(),
        tr,
        labels,
        consts,
        words: dm.words.clone(),
    })
}

/// True iff `z d_v d_w J` and the relations fixing `p_v *` are consistent
/// with `z`-independent structure constants at every power of `z`.
pub fn pde_overdetermination_check(
    geom: &Geometry,
    ring: &ClassicalRing,
    series: NovikovSeries<CohLaurent>,
    v: usize,
    w: usize,
) -> Result<bool> {
    DModule::new(geom, ring, series)?.check_pair(v, w)
}

/// The mode under which `I` is expected to be the J-function.
pub fn shape_mode(geom: &Geometry) -> ShapeMode {
    if geom.r() == 0 {
        ShapeMode::Fano
    } else {
        ShapeMode::Nef
    }
}

/// `t`-order needed by [`quantum_constants`].
pub fn required_t_order(geom: &Geometry, ring: &ClassicalRing) -> Result<u32> {
    let classes: Vec<Vec<Rat>> = divisor_directions(geom, ring).into_iter().map(|x| x.1).collect();
    let words = basis_words(&ring.alg, &classes)?;
    Ok(words.iter().map(Vec::len).max().unwrap_or(0) as u32 + 1)
}

/// Builds `I` at the needed `t`-order, checks that it is the J-function and
/// extracts the table.
pub fn quantum_table(geom: &Geometry, ring: &ClassicalRing, cutoff: &Rat) -> Result<QuantumProductTable> {
    let series = classical_i(geom, ring, cutoff, required_t_order(geom, ring)?);
    let report = j_shape_check(geom, ring, &series, shape_mode(geom));
    if !report.passes() {
        return Err(Error::Unsupported(format!(
            "the I-function is not known to be the J-function here:\n{report}"
        )));
    }
    quantum_constants(geom, ring, series)
}

/// `DegreeIndex` of `q^d Q^base`.
pub fn deg(d: &[i64], base: i64) -> DegreeIndex {
    DegreeIndex::new(d.to_vec(), base)
}
