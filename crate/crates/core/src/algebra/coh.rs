//! Finite-dimensional graded commutative algebras over `Q` generated by
//! degree-2 classes: the non-equivariant cohomology rings used for
//! J-function shape checks and quantum products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::linalg;
use super::poly::{rat, Rat};

use crate::error::{Error, Result};

/// Exponent vector over the generators.
pub type Monomial = Vec<u32>;

#[derive(Debug, PartialEq, Eq)]
pub struct CohAlgebra {
    gen_names: Vec<String>,
    basis: Vec<Monomial>,
    /// `table[i][j]` = coordinates of `b_i * b_j`.
    table: Vec<Vec<Vec<Rat>>>,
    /// Linear functional `integral` on basis elements.
    integral: Vec<Rat>,
}

impl CohAlgebra {
    /// Builds the ring as polynomials in the generators modulo the kernel of
    /// the Poincare pairing. `integrate` must return the integral of any
    /// monomial of top degree `dim`. When `basis` is given it is used
    /// (and checked to be a basis); otherwise monomials are chosen greedily.
    pub fn from_pairing(
        gen_names: Vec<String>,
        dim: u32,
        integrate: &dyn Fn(&Monomial) -> Result<Rat>,
        basis: Option<Vec<Monomial>>,
    ) -> Result<Arc<CohAlgebra>> {
        let ngens = gen_names.len();
        let by_degree: Vec<Vec<Monomial>> = (0..=dim).map(|k| monomials(ngens, k)).collect();
        let mut ints: HashMap<Monomial, Rat> = HashMap::new();
        for m in &by_degree[dim as usize] {
            ints.insert(m.clone(), integrate(m)?);
        }
        let pair = |a: &Monomial, b: &Monomial| -> Rat {
            let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
            ints.get(&m).cloned().unwrap_or_else(Rat::zero)
        };
        let mut chosen: Vec<Monomial> = Vec::new();
        for k in 0..=dim as usize {
            let duals = &by_degree[dim as usize - k];
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            let candidates: Vec<Monomial> = match &basis {
                Some(b) => b.iter().filter(|m| deg(m) == k as u32).cloned().collect(),
                None => by_degree[k].clone(),
            };
            for m in candidates {
                let row: Vec<Rat> = duals.iter().map(|y| pair(&m, y)).collect();
                rows.push(row);
                if linalg::rank(&rows) < rows.len() {
                    if basis.is_some() {
                        return Err(Error::Degenerate(format!(
                            "requested basis monomial {m:?} is dependent"
                        )));
                    }
                    rows.pop();
                } else {
                    chosen.push(m);
                }
            }
            // every monomial of degree k must be expressible
            let full = linalg::rank(
                &by_degree[k]
                    .iter()
                    .map(|m| duals.iter().map(|y| pair(m, y)).collect())
                    .collect::<Vec<_>>(),
            );
            if full != rows.len() {
                return Err(Error::Degenerate(format!(
                    "basis in degree {k} has {} elements, pairing rank is {full}",
                    rows.len()
                )));
            }
        }
        let n = chosen.len();
        let index_of_deg: Vec<Vec<usize>> = (0..=dim)
            .map(|k| (0..n).filter(|&i| deg(&chosen[i]) == k).collect())
            .collect();
        let reduce = |m: &Monomial| -> Result<Vec<Rat>> {
            let k = deg(m);
            let mut out = vec![Rat::zero(); n];
            if k > dim {
                return Ok(out);
            }
            let duals = &by_degree[(dim - k) as usize];
            let idx = &index_of_deg[k as usize];
            // sum_b c_b <b, y> = <m, y> for all duals y
            let a: Vec<Vec<Rat>> = duals
                .iter()
                .map(|y| idx.iter().map(|&b| pair(&chosen[b], y)).collect())
                .collect();
            let rhs: Vec<Rat> = duals.iter().map(|y| pair(m, y)).collect();
            let c = linalg::solve(&a, &rhs)
                .ok_or_else(|| Error::Internal(format!("cannot reduce monomial {m:?}")))?;
            for (j, &b) in idx.iter().enumerate() {
                out[b] = c[j].clone();
            }
            Ok(out)
        };
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let m: Monomial = chosen[i].iter().zip(&chosen[j]).map(|(x, y)| x + y).collect();
                table[i][j] = reduce(&m)?;
            }
        }
        let integral = chosen
            .iter()
            .map(|b| {
                if deg(b) == dim {
                    ints[b].clone()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        Ok(Arc::new(CohAlgebra {
            gen_names,
            basis: chosen,
            table,
            integral,
        }))
    }

    /// `Q[P, h] / ((P - a_1 h) ... (P - a_N h), h^{r+1})` with basis
    /// `P^a h^b`, `a < N`, `b <= r`, reduced by rewriting.
    pub fn projective_bundle(a: &[i64], r: u32) -> Arc<CohAlgebra> {
        let n = a.len() as u32;
        // prod_j (P - a_j h) as a polynomial in (P, h)
        let mut rel: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        rel.insert((0, 0), Rat::one());
        for &aj in a {
            let mut next = BTreeMap::new();
            for ((p, h), c) in &rel {
                *next.entry((p + 1, *h)).or_insert_with(Rat::zero) += c;
                *next.entry((*p, h + 1)).or_insert_with(Rat::zero) -= c * rat(aj);
            }
            rel = next;
        }
        // P^N = P^N - rel
        let mut p_top: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        for ((p, h), c) in &rel {
            if *p != n && !c.is_zero() {
                p_top.insert((*p, *h), -c);
            }
        }
        let mut basis: Vec<Monomial> = Vec::new();
        for total in 0..n + r {
            for p in 0..n {
                if p <= total && total - p <= r {
                    basis.push(vec![p, total - p]);
                }
            }
        }
        let pos: HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let reduce = |start: BTreeMap<(u32, u32), Rat>| -> Vec<Rat> {
            let mut work = start;
            let mut out = vec![Rat::zero(); basis.len()];
            while let Some(((p, h), c)) = work.pop_last() {
                if c.is_zero() || h > r {
                    continue;
                }
                if p < n {
                    out[pos[&vec![p, h]]] += c;
                    continue;
                }
                for ((pp, hh), cc) in &p_top {
                    *work.entry((p - n + pp, h + hh)).or_insert_with(Rat::zero) += &c * cc;
                }
            }
            out
        };
        let nb = basis.len();
        let mut table = vec![vec![Vec::new(); nb]; nb];
        for i in 0..nb {
            for j in 0..nb {
                let mut m = BTreeMap::new();
                m.insert((basis[i][0] + basis[j][0], basis[i][1] + basis[j][1]), Rat::one());
                table[i][j] = reduce(m);
            }
        }
        let integral = basis
            .iter()
            .map(|b| if b[0] == n - 1 && b[1] == r { Rat::one() } else { Rat::zero() })
            .collect();
        Arc::new(CohAlgebra {
            gen_names: vec!["P".into(), "h".into()],
            basis,
            table,
            integral,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ngens(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn zero(&self) -> Vec<Rat> {
        vec![Rat::zero(); self.dim()]
    }

    pub fn unit(&self) -> Vec<Rat> {
        self.basis_vector(0)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = self.zero();
        v[i] = Rat::one();
        v
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// The element represented by a monomial in the generators.
    pub fn monomial(&self, m: &Monomial) -> Vec<Rat> {
        let mut acc = self.unit();
        for (g, &e) in m.iter().enumerate() {
            let gen = self.generator(g);
            for _ in 0..e {
                acc = self.mul(&acc, &gen);
            }
        }
        acc
    }

    pub fn generator(&self, g: usize) -> Vec<Rat> {
        let mut m = vec![0; self.ngens()];
        m[g] = 1;
        match self.basis.iter().position(|b| *b == m) {
            Some(i) => self.basis_vector(i),
            None => self.zero(),
        }
    }

    pub fn integrate(&self, x: &[Rat]) -> Rat {
        x.iter().zip(&self.integral).map(|(a, b)| a * b).sum()
    }

    pub fn format(&self, x: &[Rat]) -> String {
        let mut parts = Vec::new();
        for (c, b) in x.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            let mono = self.format_monomial(b);
            parts.push(match (mono.as_str(), c.is_one()) {
                ("1", _) => c.to_string(),
                (_, true) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.gen_names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn deg(m: &Monomial) -> u32 {
    m.iter().sum()
}

/// Monomials of total degree `k` in `n` variables, lexicographically.
pub fn monomials(n: usize, k: u32) -> Vec<Monomial> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in monomials(n - 1, k - first) {
            let mut m = vec![first];
            m.append(&mut rest);
            out.push(m);
        }
    }
    out
}

/// Laurent polynomial in `z` with coefficients in a [`CohAlgebra`].
#[derive(Clone, Debug)]
pub struct CohLaurent {
    alg: Arc<CohAlgebra>,
    terms: BTreeMap<i64, Vec<Rat>>,
}

impl CohLaurent {
    pub fn zero(alg: &Arc<CohAlgebra>) -> Self {
        CohLaurent {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `c * z^k`
    pub fn monomial(alg: &Arc<CohAlgebra>, c: Vec<Rat>, k: i64) -> Self {
        let mut s = CohLaurent::zero(alg);
        s.add_at(k, &c);
        s
    }

    pub fn algebra(&self) -> &Arc<CohAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<i64, Vec<Rat>> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> Vec<Rat> {
        self.terms.get(&k).cloned().unwrap_or_else(|| self.alg.zero())
    }

    pub fn add_at(&mut self, k: i64, c: &[Rat]) {
        let slot = self.terms.entry(k).or_insert_with(|| self.alg.zero());
        for (a, b) in slot.iter_mut().zip(c) {
            *a += b;
        }
        if slot.iter().all(Zero::is_zero) {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &Rat) -> CohLaurent {
        let mut out = CohLaurent::zero(&self.alg);
        for (k, v) in &self.terms {
            let w: Vec<Rat> = v.iter().map(|x| x * c).collect();
            out.add_at(*k, &w);
        }
        out
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> CohLaurent {
        CohLaurent {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(p, v)| (p + k, v.clone())).collect(),
        }
    }

    pub fn max_power(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }
}

impl super::series::Coeff for CohLaurent {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_at(*k, v);
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = CohLaurent::zero(&self.alg);
        for (k1, v1) in &self.terms {
            for (k2, v2) in &o.terms {
                out.add_at(k1 + k2, &self.alg.mul(v1, v2));
            }
        }
        out
    }
}

impl PartialEq for CohLaurent {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl fmt::Display for CohLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, v)| {
                let c = self.alg.format(v);
                match k {
                    0 => format!("({c})"),
                    1 => format!("({c})*z"),
                    _ => format!("({c})*z^{k}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
