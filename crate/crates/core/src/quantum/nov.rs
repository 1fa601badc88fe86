//! Truncated Novikov series with rational coefficients, vectors and
//! matrices over them.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::linalg;
use crate::algebra::{DegreeIndex, Rat};
use crate::error::{Error, Result};

pub type NovRat = BTreeMap<DegreeIndex, Rat>;
/// Components in a cohomology basis.
pub type QVec = Vec<NovRat>;
pub type QMat = Vec<Vec<NovRat>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trunc {
    pub omega: Vec<Rat>,
    pub cutoff: Rat,
    pub k: usize,
}

impl Trunc {
    pub fn admits(&self, d: &DegreeIndex) -> bool {
        Rat::from_integer(d.base.into()) <= self.cutoff && d.weight(&self.omega) <= self.cutoff
    }

    pub fn zero_deg(&self) -> DegreeIndex {
        DegreeIndex::zero(self.k)
    }

    pub fn constant(&self, c: Rat) -> NovRat {
        let mut m = NovRat::new();
        if !c.is_zero() {
            m.insert(self.zero_deg(), c);
        }
        m
    }

    pub fn mul(&self, a: &NovRat, b: &NovRat) -> NovRat {
        let mut out = NovRat::new();
        for (da, x) in a {
            for (db, y) in b {
                let d = da.add(db);
                if self.admits(&d) {
                    *out.entry(d).or_insert_with(Rat::zero) += x * y;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn vec_mul(&self, c: &NovRat, v: &QVec) -> QVec {
        v.iter().map(|x| self.mul(c, x)).collect()
    }

    pub fn mat_vec(&self, m: &QMat, v: &QVec) -> QVec {
        m.iter()
            .map(|row| row.iter().zip(v).fold(NovRat::new(), |acc, (a, b)| add(&acc, &self.mul(a, b))))
            .collect()
    }

    pub fn mat_mul(&self, a: &QMat, b: &QMat) -> QMat {
        let n = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| {
                        row.iter()
                            .enumerate()
                            .fold(NovRat::new(), |acc, (k, x)| add(&acc, &self.mul(x, &b[k][j])))
                    })
                    .collect()
            })
            .collect()
    }

    /// Inverse of a square matrix whose degree-zero part is invertible.
    pub fn inverse(&self, m: &QMat) -> Result<QMat> {
        let zero = self.zero_deg();
        let m0: Vec<Vec<Rat>> = m
            .iter()
            .map(|row| row.iter().map(|x| x.get(&zero).cloned().unwrap_or_else(Rat::zero)).collect())
            .collect();
        let inv0 = linalg::inverse(&m0).ok_or_else(|| Error::Degenerate("classical part is singular".into()))?;
        let inv0: QMat = inv0.into_iter().map(|row| row.into_iter().map(|c| self.constant(c)).collect()).collect();
        // -inv0 (m - m0)
        let mut pos = m.to_vec();
        for row in pos.iter_mut() {
            for x in row.iter_mut() {
                x.remove(&zero);
            }
        }
        let step: QMat = self
            .mat_mul(&inv0, &pos)
            .into_iter()
            .map(|row| row.into_iter().map(|x| neg(&x)).collect())
            .collect();
        let mut acc = inv0.clone();
        let mut term = inv0;
        for _ in 0..256 {
            term = self.mat_mul(&step, &term);
            if term.iter().all(|r| r.iter().all(NovRat::is_empty)) {
                return Ok(acc);
            }
            acc = acc.iter().zip(&term).map(|(a, b)| a.iter().zip(b).map(|(x, y)| add(x, y)).collect()).collect();
        }
        Err(Error::Internal("Novikov inverse did not terminate".into()))
    }
}

pub fn add(a: &NovRat, b: &NovRat) -> NovRat {
    let mut out = a.clone();
    for (d, v) in b {
        *out.entry(d.clone()).or_insert_with(Rat::zero) += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn neg(a: &NovRat) -> NovRat {
    a.iter().map(|(d, v)| (d.clone(), -v)).collect()
}

pub fn vec_add(a: &QVec, b: &QVec) -> QVec {
    a.iter().zip(b).map(|(x, y)| add(x, y)).collect()
}

pub fn vec_sub(a: &QVec, b: &QVec) -> QVec {
    a.iter().zip(b).map(|(x, y)| add(x, &neg(y))).collect()
}

pub fn vec_is_zero(v: &QVec) -> bool {
    v.iter().all(NovRat::is_empty)
}

/// Degree-zero components.
pub fn classical_part(v: &QVec, zero: &DegreeIndex) -> Vec<Rat> {
    v.iter().map(|x| x.get(zero).cloned().unwrap_or_else(Rat::zero)).collect()
}

pub fn format_nov(a: &NovRat, qnames: &[String]) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (d, c) in a {
        let mut mono = Vec::new();
        for (i, e) in d.d.iter().enumerate() {
            match e {
                0 => {}
                1 => mono.push(qnames[i].clone()),
                _ => mono.push(format!("{}^{e}", qnames[i])),
            }
        }
        match d.base {
            0 => {}
            1 => mono.push("Q".into()),
            e => mono.push(format!("Q^{e}")),
        }
        let m = mono.join("*");
        parts.push(match (m.is_empty(), c == &Rat::from_integer(1.into())) {
            (true, _) => c.to_string(),
            (false, true) => m,
            (false, false) => format!("{c}*{m}"),
        });
    }
    parts.join(" + ").replace("+ -", "- ")
}
