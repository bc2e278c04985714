//! End and begin truncation operators, the hypotheses that cut out the
//! descent sets `S(a)_k`, and the truncation bijection `ψ_k` with its
//! inverse.
//!
//! Every begin-side operation is the end-side operation conjugated by the
//! reflection `x ↦ -x`, which exchanges beginnings and ends.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;
use crate::poset::{generate_poset, leq_rank, minimal_element};
use crate::segment::Segment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    End,
    Begin,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::End => "end",
            Side::Begin => "begin",
        })
    }
}

/// A sequence of truncation indices applied on one side, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DescentPath {
    pub side: Side,
    pub steps: Vec<i64>,
}

impl DescentPath {
    pub fn new(side: Side, steps: Vec<i64>) -> Self {
        DescentPath { side, steps }
    }

    pub fn empty(side: Side) -> Self {
        DescentPath::new(side, Vec::new())
    }

    /// End side: `k, k+1, …, ℓ`. Begin side: `ℓ, ℓ-1, …, k`.
    pub fn from_segment(side: Side, segment: Segment) -> Self {
        let steps = match side {
            Side::End => (segment.begin()..=segment.end()).collect(),
            Side::Begin => (segment.begin()..=segment.end()).rev().collect(),
        };
        DescentPath::new(side, steps)
    }

    /// Path indexed by a multisegment `d = {Δ₁ ⪯ … ⪯ Δ_r}`.
    ///
    /// End side: `Δ_r` first, down to `Δ₁`. Begin side: the mirror image,
    /// i.e. segments by increasing beginning (longer first on ties).
    pub fn from_multisegment(side: Side, d: &Multisegment) -> Self {
        match side {
            Side::End => DescentPath::new(
                side,
                d.iter()
                    .rev()
                    .flat_map(|s| DescentPath::from_segment(Side::End, *s).steps)
                    .collect(),
            ),
            Side::Begin => {
                let mirrored = DescentPath::from_multisegment(Side::End, &d.mirror());
                DescentPath::new(side, mirrored.steps.into_iter().map(|k| -k).collect())
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn flat(&self) -> impl Iterator<Item = (Side, i64)> + '_ {
        self.steps.iter().map(move |&k| (self.side, k))
    }
}

/// Flattens a list of paths into `(side, k)` steps.
pub fn route_steps(route: &[DescentPath]) -> Vec<(Side, i64)> {
    route.iter().flat_map(DescentPath::flat).collect()
}

/// `a^(k)`: every segment ending at `k` loses its end point.
pub fn truncate_end(a: &Multisegment, k: i64) -> Multisegment {
    a.iter()
        .filter_map(|s| if s.end() == k { s.shrink_end() } else { Some(*s) })
        .collect()
}

/// `^(k)a`: every segment beginning at `k` loses its first point.
pub fn truncate_begin(a: &Multisegment, k: i64) -> Multisegment {
    a.iter()
        .filter_map(|s| if s.begin() == k { s.shrink_begin() } else { Some(*s) })
        .collect()
}

pub fn truncate(a: &Multisegment, side: Side, k: i64) -> Multisegment {
    match side {
        Side::End => truncate_end(a, k),
        Side::Begin => truncate_begin(a, k),
    }
}

pub fn truncate_path(a: &Multisegment, path: &DescentPath) -> Multisegment {
    path.steps
        .iter()
        .fold(a.clone(), |acc, &k| truncate(&acc, path.side, k))
}

pub fn truncate_route(a: &Multisegment, route: &[DescentPath]) -> Multisegment {
    route.iter().fold(a.clone(), |acc, p| truncate_path(&acc, p))
}

/// `ℓ_{a,k}`, the number of segments touching `k` on the given side.
pub fn boundary_count(a: &Multisegment, side: Side, k: i64) -> usize {
    match side {
        Side::End => a.count_ending_at(k),
        Side::Begin => a.count_beginning_at(k),
    }
}

/// `H_k(a)` for `b`: `deg(b^(k)) = deg(a^(k))` and `b` has no linked pair
/// with ends `k-1` and `k`.
pub fn hypothesis_hk(b: &Multisegment, a: &Multisegment, k: i64) -> bool {
    if truncate_end(b, k).degree() != truncate_end(a, k).degree() {
        return false;
    }
    let before: Vec<&Segment> = b.iter().filter(|s| s.end() == k - 1).collect();
    let at: Vec<&Segment> = b.iter().filter(|s| s.end() == k).collect();
    !before.iter().any(|x| at.iter().any(|y| x.linked(y)))
}

/// `H_k` on the requested side.
pub fn hypothesis(side: Side, b: &Multisegment, a: &Multisegment, k: i64) -> bool {
    match side {
        Side::End => hypothesis_hk(b, a, k),
        Side::Begin => hypothesis_hk(&b.mirror(), &a.mirror(), -k),
    }
}

/// `S(a)_k` on the end side.
pub fn descent_set(a: &Multisegment, k: i64) -> Result<Vec<Multisegment>> {
    descent_set_side(a, Side::End, k)
}

pub fn descent_set_side(a: &Multisegment, side: Side, k: i64) -> Result<Vec<Multisegment>> {
    Ok(generate_poset(a)?
        .elements()
        .iter()
        .filter(|c| hypothesis(side, c, a, k))
        .cloned()
        .collect())
}

/// Whether `c` lies in the iterated descent set `S(a)_{k₁,…,k_r}` for the route.
pub fn in_descent_route(c: &Multisegment, a: &Multisegment, route: &[DescentPath]) -> bool {
    if !leq_rank(c, a) {
        return false;
    }
    let mut c = c.clone();
    let mut a = a.clone();
    for (side, k) in route_steps(route) {
        if !hypothesis(side, &c, &a, k) {
            return false;
        }
        c = truncate(&c, side, k);
        a = truncate(&a, side, k);
        if !leq_rank(&c, &a) {
            return false;
        }
    }
    true
}

pub fn descent_set_path(a: &Multisegment, path: &DescentPath) -> Result<Vec<Multisegment>> {
    descent_set_route(a, std::slice::from_ref(path))
}

pub fn descent_set_route(a: &Multisegment, route: &[DescentPath]) -> Result<Vec<Multisegment>> {
    Ok(generate_poset(a)?
        .elements()
        .iter()
        .filter(|c| in_descent_route(c, a, route))
        .cloned()
        .collect())
}

/// `ψ_k(c) = c^(k)`.
pub fn psi_k(c: &Multisegment, k: i64) -> Multisegment {
    truncate_end(c, k)
}

pub fn psi_path(c: &Multisegment, path: &DescentPath) -> Multisegment {
    truncate_path(c, path)
}

/// The unique `c ∈ S(a)_k` with `c^(k) = d`.
pub fn psi_k_inverse(a: &Multisegment, k: i64, d: &Multisegment) -> Result<Multisegment> {
    psi_inverse(Side::End, a, k, d)
}

pub fn psi_inverse(side: Side, a: &Multisegment, k: i64, d: &Multisegment) -> Result<Multisegment> {
    match side {
        Side::End => psi_end_inverse(a, k, d),
        Side::Begin => psi_end_inverse(&a.mirror(), -k, &d.mirror())
            .map(|c| c.mirror())
            .map_err(|e| match e {
                Error::NotInPoset { .. } => Error::NotInPoset {
                    what: d.clone(),
                    root: truncate_begin(a, k),
                },
                other => other,
            }),
    }
}

fn psi_end_inverse(a: &Multisegment, k: i64, d: &Multisegment) -> Result<Multisegment> {
    let truncated = truncate_end(a, k);
    if !leq_rank(d, &truncated) {
        return Err(Error::NotInPoset {
            what: d.clone(),
            root: truncated,
        });
    }
    let survivors: Vec<Multisegment> = preimage_candidates(d, k, a.count_ending_at(k))
        .into_iter()
        .filter(|c| leq_rank(c, a) && hypothesis_hk(c, a, k))
        .collect();
    match survivors.len() {
        1 => Ok(survivors.into_iter().next().unwrap()),
        n => Err(Error::invariant(format!(
            "{n} preimages of {d} in S({a})_{k}, expected exactly one"
        ))),
    }
}

/// All `c` with `c^(k) = d` that have exactly `ell` segments ending at `k`:
/// some segments of `d` ending at `k-1` are extended to `k` and the rest of
/// the `ell` are new singletons `[k]`.
fn preimage_candidates(d: &Multisegment, k: i64, ell: usize) -> Vec<Multisegment> {
    let mut groups: Vec<(Segment, usize)> = Vec::new();
    for s in d.iter().filter(|s| s.end() == k - 1) {
        match groups.last_mut() {
            Some((g, n)) if g == s => *n += 1,
            _ => groups.push((*s, 1)),
        }
    }
    let rest: Vec<Segment> = d.iter().filter(|s| s.end() != k - 1).copied().collect();
    let mut out = Vec::new();
    let mut counts = vec![0usize; groups.len()];
    loop {
        let extended: usize = counts.iter().sum();
        if extended <= ell {
            let mut segs = rest.clone();
            for ((g, n), &x) in groups.iter().zip(&counts) {
                segs.extend(std::iter::repeat_n(g.extend_end(), x));
                segs.extend(std::iter::repeat_n(*g, n - x));
            }
            segs.extend(std::iter::repeat_n(Segment::point(k), ell - extended));
            out.push(Multisegment::new(segs));
        }
        // Odometer over counts[i] ∈ 0..=groups[i].1.
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
            }
            if counts[i] < groups[i].1 {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

/// Iterated inverse along a route: the unique `c ∈ S(a)_{route}` with
/// `truncate_route(c) = d`.
pub fn psi_route_inverse(
    a: &Multisegment,
    route: &[DescentPath],
    d: &Multisegment,
) -> Result<Multisegment> {
    let steps = route_steps(route);
    let mut chain = Vec::with_capacity(steps.len() + 1);
    chain.push(a.clone());
    for &(side, k) in &steps {
        let next = truncate(chain.last().unwrap(), side, k);
        chain.push(next);
    }
    let mut current = d.clone();
    for (t, &(side, k)) in steps.iter().enumerate().rev() {
        current = psi_inverse(side, &chain[t], k, &current)?;
    }
    if !leq_rank(&current, a) {
        return Err(Error::invariant(format!("lift {current} is not below {a}")));
    }
    Ok(current)
}

pub fn psi_path_inverse(a: &Multisegment, path: &DescentPath, d: &Multisegment) -> Result<Multisegment> {
    psi_route_inverse(a, std::slice::from_ref(path), d)
}

/// The explicit `c ∈ S(a)_k` with `c^(k)` the minimal element of `S(a^(k))`.
///
/// With `a₀` the segments of `(a^(k))_min` ending at `k-1` (longest first)
/// and `ℓ = ℓ_{a,k}`:
/// 1. `φ(k-1) > φ(k)`: extend the first `ℓ` segments of `a₀`;
/// 2. `φ(k) - ℓ < φ(k-1) ≤ φ(k)`: extend all of `a₀` and add `ℓ - |a₀|` copies of `[k]`;
/// 3. `φ(k-1) ≤ φ(k) - ℓ`: `a₀` is empty; add `ℓ` copies of `[k]`.
pub fn minimal_lift(a: &Multisegment, k: i64) -> Result<Multisegment> {
    let weight = a.weight();
    let (before, at) = (weight.get(k - 1) as i64, weight.get(k) as i64);
    let ell = a.count_ending_at(k);
    let base = minimal_element(&truncate_end(a, k));
    let mut a0: Vec<Segment> = base.iter().filter(|s| s.end() == k - 1).copied().collect();
    a0.sort_by(|x, y| y.cmp(x));
    let rest = base.iter().filter(|s| s.end() != k - 1).copied();
    let mut segs: Vec<Segment> = rest.collect();
    let r = a0.len();
    if before > at {
        if r as i64 != before - at + ell as i64 || r < ell {
            return Err(Error::invariant(format!(
                "minimal lift of {a} at {k}: |a0| = {r} disagrees with the weight count"
            )));
        }
        segs.extend(a0[..ell].iter().map(Segment::extend_end));
        segs.extend_from_slice(&a0[ell..]);
    } else if at - (ell as i64) < before {
        if r as i64 != before - at + ell as i64 {
            return Err(Error::invariant(format!(
                "minimal lift of {a} at {k}: |a0| = {r} disagrees with the weight count"
            )));
        }
        segs.extend(a0.iter().map(Segment::extend_end));
        segs.extend(std::iter::repeat_n(Segment::point(k), ell - r));
    } else {
        if r != 0 {
            return Err(Error::invariant(format!(
                "minimal lift of {a} at {k}: expected no segment ending at {}",
                k - 1
            )));
        }
        segs.extend(std::iter::repeat_n(Segment::point(k), ell));
    }
    let c = Multisegment::new(segs);
    if !(leq_rank(&c, a) && hypothesis_hk(&c, a, k) && truncate_end(&c, k) == base) {
        return Err(Error::invariant(format!(
            "minimal lift {c} of {a} at {k} fails its postconditions"
        )));
    }
    Ok(c)
}
