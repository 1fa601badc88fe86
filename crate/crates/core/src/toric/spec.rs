//! Input geometry and its text format.
//!
//! ```text
//! # Hirzebruch surface F_1 as a toric manifold
//! K = 2
//! N = 4
//! m = 1 1 0 0; 0 -1 1 1
//! omega = 1 1
//! base = point
//! cutoff = 2
//! ```
//!
//! Optional keys: `base` (`point` or `P<r>`), `twists`, `lambda_line`
//! (repeatable), `cutoff`, `t_order`, `z_order`, `kmax`, `name`.

use std::collections::HashSet;
use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::{rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Point,
    Projective(usize),
}

impl Base {
    /// `r`, the dimension of the base; zero for a point.
    pub fn r(&self) -> usize {
        match self {
            Base::Point => 0,
            Base::Projective(r) => *r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricFibrationSpec {
    pub name: String,
    pub k: usize,
    pub n: usize,
    /// `K x N`, row-major.
    pub m: Vec<Vec<i64>>,
    pub omega: Vec<Rat>,
    pub base: Base,
    /// `l_j`, with `Lambda_j = -l_j h`.
    pub twists: Vec<i64>,
    pub lambda_lines: Vec<Vec<Rat>>,
    pub cutoff: Rat,
    pub t_order: u32,
    pub z_order: u32,
    pub kmax: u32,
}

/// Three fixed lines; the first `N` entries of each are used.
pub const DEFAULT_LINES: [[(i64, i64); 6]; 3] = [
    [(1009, 1), (-2003, 1), (3011, 1), (-4027, 1), (5039, 1), (-6047, 1)],
    [(7919, 3), (104729, 7), (-1299709, 11), (15485863, 13), (-179424673, 17), (2038074743, 19)],
    [(-173, 5), (811, 2), (1543, 9), (-2711, 4), (3607, 7), (-4801, 3)],
];

impl ToricFibrationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k >= self.n {
            return Err(Error::Spec(format!("need 0 < K < N, got K = {}, N = {}", self.k, self.n)));
        }
        if self.m.len() != self.k || self.m.iter().any(|row| row.len() != self.n) {
            return Err(Error::Spec(format!("m must be a {} x {} matrix", self.k, self.n)));
        }
        if self.omega.len() != self.k {
            return Err(Error::Spec(format!("omega must have {} entries", self.k)));
        }
        if self.twists.len() != self.n {
            return Err(Error::Spec(format!("twists must have {} entries", self.n)));
        }
        if self.base == Base::Point && self.twists.iter().any(|&l| l != 0) {
            return Err(Error::Spec("twists must vanish over a point base".into()));
        }
        if self.cutoff < Rat::zero() {
            return Err(Error::Spec("cutoff must be nonnegative".into()));
        }
        if self.kmax == 0 {
            return Err(Error::Spec("kmax must be at least 1".into()));
        }
        if self.lambda_lines.is_empty() {
            return Err(Error::Spec("at least one lambda line is required".into()));
        }
        for line in &self.lambda_lines {
            check_line(line, self.n)?;
        }
        Ok(())
    }

    pub fn default_lines(n: usize) -> Vec<Vec<Rat>> {
        DEFAULT_LINES
            .iter()
            .map(|l| l.iter().take(n).map(|&(a, b)| Rat::new(a.into(), b.into())).collect())
            .collect()
    }

    /// Parses the text format. Unknown keys and malformed values are
    /// reported with their position.
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = String::new();
        let mut k = None;
        let mut n = None;
        let mut m: Option<Vec<Vec<i64>>> = None;
        let mut omega = None;
        let mut base = Base::Point;
        let mut twists = None;
        let mut lines = Vec::new();
        let mut cutoff = rat(2);
        let mut t_order = 2;
        let mut z_order = 4;
        let mut kmax = 2;
        let mut seen = HashSet::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let Some(eq) = content.find('=') else {
                let col = content.len() - content.trim_start().len() + 1;
                return Err(perr(line_no, col, "expected `key = value`"));
            };
            let key = content[..eq].trim();
            let vcol = eq + 2 + (content[eq + 1..].len() - content[eq + 1..].trim_start().len());
            let value = content[eq + 1..].trim();
            let at = |msg: String| perr(line_no, vcol, &msg);
            if key != "lambda_line" && !seen.insert(key.to_string()) {
                return Err(perr(line_no, 1, &format!("duplicate key `{key}`")));
            }
            match key {
                "name" => name = value.to_string(),
                "K" => k = Some(parse_num::<usize>(value).map_err(at)?),
                "N" => n = Some(parse_num::<usize>(value).map_err(at)?),
                "m" => {
                    let rows = value
                        .split(';')
                        .map(parse_list::<i64>)
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(at)?;
                    m = Some(rows);
                }
                "omega" => omega = Some(parse_rats(value).map_err(at)?),
                "base" => {
                    base = match value {
                        "point" => Base::Point,
                        v if v.starts_with('P') => {
                            let r = parse_num::<usize>(&v[1..]).map_err(at)?;
                            if r == 0 {
                                Base::Point
                            } else {
                                Base::Projective(r)
                            }
                        }
                        v => return Err(at(format!("unknown base `{v}`"))),
                    }
                }
                "twists" => twists = Some(parse_list::<i64>(value).map_err(at)?),
                "lambda_line" => lines.push(parse_rats(value).map_err(at)?),
                "cutoff" => cutoff = parse_rat(value).map_err(at)?,
                "t_order" => t_order = parse_num::<u32>(value).map_err(at)?,
                "z_order" => z_order = parse_num::<u32>(value).map_err(at)?,
                "kmax" => kmax = parse_num::<u32>(value).map_err(at)?,
                other => return Err(perr(line_no, 1, &format!("unknown key `{other}`"))),
            }
        }
        let missing = |what: &str| perr(text.lines().count().max(1), 1, &format!("missing key `{what}`"));
        let k = k.ok_or_else(|| missing("K"))?;
        let n = n.ok_or_else(|| missing("N"))?;
        let m = m.ok_or_else(|| missing("m"))?;
        let omega = omega.ok_or_else(|| missing("omega"))?;
        let spec = ToricFibrationSpec {
            name,
            k,
            n,
            m,
            omega,
            base,
            twists: twists.unwrap_or_else(|| vec![0; n]),
            lambda_lines: if lines.is_empty() {
                ToricFibrationSpec::default_lines(n)
            } else {
                lines
            },
            cutoff,
            t_order,
            z_order,
            kmax,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn r(&self) -> usize {
        self.base.r()
    }
}

impl FromStr for ToricFibrationSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ToricFibrationSpec::parse(s)
    }
}

pub fn check_line(line: &[Rat], n: usize) -> Result<()> {
    if line.len() != n {
        return Err(Error::Spec(format!("lambda line must have {n} entries")));
    }
    for (i, a) in line.iter().enumerate() {
        if a.is_zero() {
            return Err(Error::Spec("lambda line entries must be nonzero".into()));
        }
        if line[..i].contains(a) {
            return Err(Error::Spec("lambda line entries must be distinct".into()));
        }
    }
    Ok(())
}

fn perr(line: usize, column: usize, message: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

fn parse_num<T: FromStr>(s: &str) -> std::result::Result<T, String> {
    s.trim().parse::<T>().map_err(|_| format!("invalid number `{}`", s.trim()))
}

fn parse_list<T: FromStr>(s: &str) -> std::result::Result<Vec<T>, String> {
    let items: Vec<&str> = s.split([',', ' ', '\t']).filter(|x| !x.is_empty()).collect();
    if items.is_empty() {
        return Err("empty list".into());
    }
    items.into_iter().map(parse_num).collect()
}

pub fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = parse_num(a)?;
            let b: i64 = parse_num(b)?;
            if b == 0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(a.into(), b.into()))
        }
        None => Ok(Rat::from_integer(parse_num::<i64>(s)?.into())),
    }
}

pub fn parse_rats(s: &str) -> std::result::Result<Vec<Rat>, String> {
    let items: Vec<&str> = s.split([',', ' ', '\t']).filter(|x| !x.is_empty()).collect();
    if items.is_empty() {
        return Err("empty list".into());
    }
    items.into_iter().map(parse_rat).collect()
}
