//! Permutations, Bruhat order, the bijection `Φ` between `S_n` and the
//! poset of a symmetric multisegment, and Kazhdan–Lusztig polynomials.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;
use crate::segment::Segment;

/// Largest `n` for which KL tables are built.
pub const MAX_KL_RANK: usize = 7;

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(one_line: Vec<u8>) -> Result<Self> {
        let n = one_line.len();
        if n > u8::MAX as usize {
            return Err(Error::Domain(format!("permutation of size {n} is too large")));
        }
        let mut seen = vec![false; n];
        for &v in &one_line {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Domain(format!(
                    "{one_line:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.0
    }

    /// `w(i)` for `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation(inv)
    }

    /// `s_i · w`: exchanges the values `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let (a, b) = (i as u8, i as u8 + 1);
        Permutation(
            self.0
                .iter()
                .map(|&v| if v == a { b } else if v == b { a } else { v })
                .collect(),
        )
    }

    /// `w · s_i`: exchanges the positions `i` and `i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Permutation(v)
    }

    /// `ℓ(s_i w) < ℓ(w)`, i.e. `i+1` appears before `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: usize| self.0.iter().position(|&x| x as usize == v).unwrap();
        pos(i + 1) < pos(i)
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// Whether `self` contains `pattern` as a (not necessarily consecutive)
    /// subsequence with the same relative order.
    pub fn contains_pattern(&self, pattern: &[u8]) -> bool {
        fn go(w: &[u8], p: &[u8], start: usize, chosen: &mut Vec<u8>) -> bool {
            if chosen.len() == p.len() {
                return true;
            }
            let k = chosen.len();
            for i in start..w.len() {
                let ok = (0..k).all(|j| (p[j] < p[k]) == (chosen[j] < w[i]));
                if ok {
                    chosen.push(w[i]);
                    if go(w, p, i + 1, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        go(&self.0, pattern, 0, &mut Vec::new())
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation(current.clone()));
            // Next lexicographic permutation.
            let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
                return out;
            };
            let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
    }
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<u8>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<u8> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() < 10 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts compact one-line notation (`1324`) or comma-separated values.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let values: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|e| Error::Parse(format!("bad permutation entry {t:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad permutation digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn same_size(v: &Permutation, w: &Permutation) -> Result<()> {
    if v.n() != w.n() {
        return Err(Error::Domain(format!(
            "permutations {v} and {w} live in different symmetric groups"
        )));
    }
    Ok(())
}

/// `v ≤ w` in Bruhat order, by the rank-matrix criterion: for every prefix
/// of positions and every threshold, `v` has no more large values there
/// than `w`.
pub fn bruhat_leq(v: &Permutation, w: &Permutation) -> Result<bool> {
    same_size(v, w)?;
    let n = v.n();
    for k in 1..=n as u8 {
        let (mut cv, mut cw) = (0, 0);
        for i in 0..n {
            cv += (v.0[i] >= k) as usize;
            cw += (w.0[i] >= k) as usize;
            if cv > cw {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn symmetric_base(base: &Multisegment) -> Result<(Vec<i64>, Vec<i64>)> {
    if !base.is_symmetric() {
        return Err(Error::Domain(format!("{base} is not symmetric")));
    }
    Ok((base.begins(), base.ends()))
}

/// `Φ(w) = Σ_i [b_i, e_{w(i)}]` with `b_1 < … < b_n` and `e_1 < … < e_n`
/// the beginnings and ends of `base`.
pub fn phi(base: &Multisegment, w: &Permutation) -> Result<Multisegment> {
    let (begins, ends) = symmetric_base(base)?;
    if begins.len() != w.n() {
        return Err(Error::Domain(format!(
            "{base} has {} segments but {w} is in S_{}",
            begins.len(),
            w.n()
        )));
    }
    begins
        .iter()
        .enumerate()
        .map(|(i, &b)| Segment::new(b, ends[w.apply(i + 1) - 1]))
        .collect::<Result<Vec<_>>>()
        .map(Multisegment::new)
}

/// The unique `w` with `Φ(w) = b`.
pub fn phi_inverse(base: &Multisegment, b: &Multisegment) -> Result<Permutation> {
    let (begins, ends) = symmetric_base(base)?;
    if b.begins() != begins || b.ends() != ends {
        return Err(Error::Domain(format!(
            "{b} does not have the beginnings and ends of {base}"
        )));
    }
    let mut one_line = vec![0u8; begins.len()];
    for s in b {
        let i = begins.binary_search(&s.begin()).expect("begins match");
        let j = ends.binary_search(&s.end()).expect("ends match");
        one_line[i] = (j + 1) as u8;
    }
    Permutation::new(one_line)
}

/// A polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KlPolynomial(Vec<i64>);

impl KlPolynomial {
    pub fn zero() -> Self {
        KlPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        KlPolynomial(vec![1])
    }

    pub fn from_coefficients(mut c: Vec<i64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        KlPolynomial(c)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn coefficient(&self, d: usize) -> i64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn at_one(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    fn add_shifted(&mut self, other: &KlPolynomial, shift: usize, scale: i64) {
        if other.0.is_empty() || scale == 0 {
            return;
        }
        if self.0.len() < other.0.len() + shift {
            self.0.resize(other.0.len() + shift, 0);
        }
        for (d, &c) in other.0.iter().enumerate() {
            self.0[d + shift] += scale * c;
        }
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }
}

impl fmt::Display for KlPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{d}")?,
                _ => write!(f, "{a}q^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KlPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which left descent the recursion peels off. Both give the same
/// polynomials; having two lets each check the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DescentChoice {
    First,
    Last,
}

/// Multiplication tables and lengths for `S_n`.
struct GroupTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    lengths: Vec<usize>,
    /// `left[s][x]` = index of `s_{s+1} · x`.
    left: Vec<Vec<usize>>,
    /// Bit `s` set when `s_{s+1}` is a left descent.
    left_descents: Vec<u32>,
}

impl GroupTable {
    fn new(n: usize) -> Self {
        let elements = Permutation::all(n);
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let lengths = elements.iter().map(Permutation::length).collect();
        let left = (1..n)
            .map(|s| elements.iter().map(|x| index[&x.left_mul_simple(s)]).collect())
            .collect();
        let left_descents = elements
            .iter()
            .map(|x| {
                (1..n)
                    .filter(|&s| x.has_left_descent(s))
                    .fold(0u32, |acc, s| acc | 1 << (s - 1))
            })
            .collect();
        GroupTable {
            elements,
            index,
            lengths,
            left,
            left_descents,
        }
    }

    fn has_left_descent(&self, x: usize, s: usize) -> bool {
        self.left_descents[x] & (1 << s) != 0
    }
}

type Column = Arc<Vec<KlPolynomial>>;

/// Memoized KL polynomials `P_{x,w}` for one `S_n`, computed a column
/// (fixed `w`, all `x`) at a time by the standard recursion: for a left
/// descent `s` of `w` with `v = sw`,
///
/// `P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v} − Σ_z μ(z,v) q^{(ℓ(w)-ℓ(z))/2} P_{x,z}`
///
/// where `c = 1` iff `sx < x` and `z` runs over `z < v` with `sz < z`.
pub struct KlTable {
    group: GroupTable,
    choice: DescentChoice,
    columns: HashMap<usize, Column>,
    mu: HashMap<usize, Arc<Vec<(usize, i64)>>>,
}

impl KlTable {
    pub fn new(n: usize, choice: DescentChoice) -> Result<Self> {
        if n > MAX_KL_RANK {
            return Err(Error::ResourceLimit {
                what: format!("KL table for S_{n}"),
                cap: MAX_KL_RANK,
            });
        }
        Ok(KlTable {
            group: GroupTable::new(n),
            choice,
            columns: HashMap::new(),
            mu: HashMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.group.elements.first().map_or(0, Permutation::n)
    }

    pub fn polynomial(&mut self, x: &Permutation, w: &Permutation) -> Result<KlPolynomial> {
        same_size(x, w)?;
        let (ix, iw) = (self.lookup(x)?, self.lookup(w)?);
        Ok(self.column(iw)[ix].clone())
    }

    fn lookup(&self, p: &Permutation) -> Result<usize> {
        self.group.index.get(p).copied().ok_or_else(|| {
            Error::Domain(format!("{p} is not in S_{}", self.n()))
        })
    }

    fn column(&mut self, w: usize) -> Column {
        if let Some(c) = self.columns.get(&w) {
            return c.clone();
        }
        let size = self.group.elements.len();
        let col: Vec<KlPolynomial> = if self.group.lengths[w] == 0 {
            (0..size)
                .map(|x| if x == w { KlPolynomial::one() } else { KlPolynomial::zero() })
                .collect()
        } else {
            let descents = (0..self.group.left.len()).filter(|&s| self.group.has_left_descent(w, s));
            let s = match self.choice {
                DescentChoice::First => descents.min(),
                DescentChoice::Last => descents.max(),
            }
            .expect("non-identity element has a left descent");
            let v = self.group.left[s][w];
            let col_v = self.column(v);
            let mu_v = self.mu_list(v);
            let lw = self.group.lengths[w];
            let corrections: Vec<(i64, usize, Column)> = mu_v
                .iter()
                .filter(|&&(z, _)| self.group.has_left_descent(z, s))
                .map(|&(z, m)| (m, (lw - self.group.lengths[z]) / 2, z))
                .collect::<Vec<_>>()
                .into_iter()
                .map(|(m, shift, z)| (m, shift, self.column(z)))
                .collect();
            (0..size)
                .map(|x| {
                    let sx = self.group.left[s][x];
                    let c = usize::from(self.group.has_left_descent(x, s));
                    let mut p = KlPolynomial::zero();
                    p.add_shifted(&col_v[sx], 1 - c, 1);
                    p.add_shifted(&col_v[x], c, 1);
                    for (m, shift, col_z) in &corrections {
                        p.add_shifted(&col_z[x], *shift, -m);
                    }
                    p
                })
                .collect()
        };
        let col = Arc::new(col);
        self.columns.insert(w, col.clone());
        col
    }

    /// `(z, μ(z,v))` for `z < v` with `μ ≠ 0`.
    fn mu_list(&mut self, v: usize) -> Arc<Vec<(usize, i64)>> {
        if let Some(m) = self.mu.get(&v) {
            return m.clone();
        }
        let col = self.column(v);
        let lv = self.group.lengths[v];
        let list: Vec<(usize, i64)> = col
            .iter()
            .enumerate()
            .filter_map(|(z, p)| {
                let lz = self.group.lengths[z];
                if z == v || p.is_zero() || lz >= lv || (lv - lz).is_multiple_of(2) {
                    return None;
                }
                let m = p.coefficient((lv - lz - 1) / 2);
                (m != 0).then_some((z, m))
            })
            .collect();
        let list = Arc::new(list);
        self.mu.insert(v, list.clone());
        list
    }
}

type TableCache = Mutex<HashMap<(usize, DescentChoice), KlTable>>;

fn tables() -> &'static TableCache {
    static TABLES: OnceLock<TableCache> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `P_{x,w}`, zero unless `x ≤ w`, from a process-wide memo table.
pub fn kl_polynomial(x: &Permutation, w: &Permutation) -> Result<KlPolynomial> {
    kl_polynomial_with(x, w, DescentChoice::First)
}

pub fn kl_polynomial_with(
    x: &Permutation,
    w: &Permutation,
    choice: DescentChoice,
) -> Result<KlPolynomial> {
    same_size(x, w)?;
    let mut guard = tables().lock().unwrap_or_else(|e| e.into_inner());
    let table = match guard.entry((w.n(), choice)) {
        Entry::Occupied(e) => e.into_mut(),
        Entry::Vacant(e) => e.insert(KlTable::new(w.n(), choice)?),
    };
    let p = table.polynomial(x, w)?;
    if p.coefficients().iter().any(|&c| c < 0) {
        return Err(Error::invariant(format!("P_{{{x},{w}}} = {p} has a negative coefficient")));
    }
    Ok(p)
}
