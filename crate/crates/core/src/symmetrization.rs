//! Reduction of an arbitrary multisegment to a symmetric one.
//!
//! Stage 1 makes the ends distinct (recording `c1`), then the beginnings
//! (recording `c2`); the result is regular. Stage 2 pushes ends to the
//! right until every beginning is at most every end (recording `c3`).
//! Truncating the symmetric output along [`SymmetrizationData::route`]
//! recovers the input.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;
use crate::poset::{generate_poset, leq_rank};
use crate::segment::Segment;
use crate::truncation::{in_descent_route, psi_route_inverse, truncate_route, DescentPath, Side};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrizationData {
    pub original: Multisegment,
    pub ordinary: Multisegment,
    pub symmetric: Multisegment,
    /// End-side descent data of stage 1.
    pub c1: Multisegment,
    /// Begin-side descent data of stage 1.
    pub c2: Multisegment,
    /// End-side descent data of stage 2.
    pub c3: Multisegment,
}

impl SymmetrizationData {
    /// Truncation route from `symmetric` back to `original`.
    pub fn route(&self) -> Vec<DescentPath> {
        vec![
            DescentPath::from_multisegment(Side::End, &self.c3),
            DescentPath::from_multisegment(Side::Begin, &self.c2),
            DescentPath::from_multisegment(Side::End, &self.c1),
        ]
    }
}

/// Result of stage 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordinarization {
    pub ordinary: Multisegment,
    pub c1: Multisegment,
    pub c2: Multisegment,
}

impl Ordinarization {
    pub fn route(&self) -> Vec<DescentPath> {
        vec![
            DescentPath::from_multisegment(Side::Begin, &self.c2),
            DescentPath::from_multisegment(Side::End, &self.c1),
        ]
    }
}

/// Removes duplicated ends, smallest duplicated end first.
///
/// For the smallest end value `E` of multiplicity > 1, the `⪯`-largest
/// segment ending at `E` is extended by one, together with every segment
/// whose end lies in the run `E+1, …, ℓ-1` of consecutive occupied ends;
/// `[E+1, ℓ]` is recorded.
fn separate_ends(a: &Multisegment) -> (Multisegment, Vec<Segment>) {
    let mut current = a.clone();
    let mut recorded = Vec::new();
    loop {
        let ends = current.ends();
        let Some(dup) = ends.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]) else {
            return (current, recorded);
        };
        let mut ell = dup + 1;
        while ends.binary_search(&ell).is_ok() {
            ell += 1;
        }
        let chosen = current
            .iter()
            .rposition(|s| s.end() == dup)
            .expect("duplicated end is present");
        let segs = current.iter().enumerate().map(|(i, s)| {
            if i == chosen || (s.end() > dup && s.end() <= ell) {
                s.extend_end()
            } else {
                *s
            }
        });
        current = Multisegment::new(segs);
        recorded.push(Segment::new(dup + 1, ell).expect("ell > dup"));
    }
}

/// Stage 1: a regular `b` and `c1`, `c2` with `a = ^(c2) b^(c1)`.
pub fn ordinarize(a: &Multisegment) -> Result<Ordinarization> {
    let (distinct_ends, c1) = separate_ends(a);
    let (mirrored, c2_mirrored) = separate_ends(&distinct_ends.mirror());
    let out = Ordinarization {
        ordinary: mirrored.mirror(),
        c1: Multisegment::new(c1),
        c2: Multisegment::new(c2_mirrored.iter().map(Segment::mirror)),
    };
    let route = out.route();
    if !out.ordinary.is_regular() {
        return Err(Error::invariant(format!("{} is not regular", out.ordinary)));
    }
    if truncate_route(&out.ordinary, &route) != *a {
        return Err(Error::invariant(format!(
            "truncating {} by c1={}, c2={} does not recover {a}",
            out.ordinary, out.c1, out.c2
        )));
    }
    if !in_descent_route(&out.ordinary, &out.ordinary, &route) {
        return Err(Error::invariant(format!(
            "{} is outside its own descent set",
            out.ordinary
        )));
    }
    Ok(out)
}

/// Stage 2: a symmetric `b^sym` and `c3` with `b = b^sym^(c3)`.
///
/// While the smallest end is below the largest beginning, every segment in
/// the run of consecutive ends starting at the smallest end `e` is extended
/// by one and `[e+1, ℓ+1]` is recorded, `ℓ` being the last end of the run.
pub fn symmetrize_ordinary(b: &Multisegment) -> Result<(Multisegment, Multisegment)> {
    if !b.is_regular() {
        return Err(Error::Domain(format!("{b} is not regular")));
    }
    let mut current = b.clone();
    let mut recorded = Vec::new();
    while !current.is_symmetric() {
        let ends = current.ends();
        let start = ends[0];
        let mut last = start;
        while ends.binary_search(&(last + 1)).is_ok() {
            last += 1;
        }
        current = current
            .iter()
            .map(|s| {
                if (start..=last).contains(&s.end()) {
                    s.extend_end()
                } else {
                    *s
                }
            })
            .collect();
        recorded.push(Segment::new(start + 1, last + 1).expect("last >= start"));
    }
    let c3 = Multisegment::new(recorded);
    let route = [DescentPath::from_multisegment(Side::End, &c3)];
    if truncate_route(&current, &route) != *b {
        return Err(Error::invariant(format!(
            "truncating {current} by c3={c3} does not recover {b}"
        )));
    }
    if !in_descent_route(&current, &current, &route) {
        return Err(Error::invariant(format!(
            "{current} is outside its own descent set"
        )));
    }
    Ok((current, c3))
}

/// Both stages, with every invariant of [`SymmetrizationData`] checked.
pub fn symmetrize(a: &Multisegment) -> Result<SymmetrizationData> {
    let stage1 = ordinarize(a)?;
    let (symmetric, c3) = symmetrize_ordinary(&stage1.ordinary)?;
    let data = SymmetrizationData {
        original: a.clone(),
        ordinary: stage1.ordinary,
        symmetric,
        c1: stage1.c1,
        c2: stage1.c2,
        c3,
    };
    let route = data.route();
    if !data.symmetric.is_symmetric() {
        return Err(Error::invariant(format!("{} is not symmetric", data.symmetric)));
    }
    if truncate_route(&data.symmetric, &route) != *a {
        return Err(Error::invariant(format!(
            "descent route does not map {} back to {a}",
            data.symmetric
        )));
    }
    if !in_descent_route(&data.symmetric, &data.symmetric, &route) {
        return Err(Error::invariant(format!(
            "{} is outside its own descent set",
            data.symmetric
        )));
    }
    Ok(data)
}

/// The unique `b^sym ∈ S(a^sym)` in the descent set of the route whose
/// truncation is `b`, found by searching all of `S(a^sym)`.
pub fn lift(data: &SymmetrizationData, b: &Multisegment) -> Result<Multisegment> {
    if !leq_rank(b, &data.original) {
        return Err(Error::NotInPoset {
            what: b.clone(),
            root: data.original.clone(),
        });
    }
    let route = data.route();
    let poset = generate_poset(&data.symmetric)?;
    let matches: Vec<&Multisegment> = poset
        .elements()
        .iter()
        .filter(|c| truncate_route(c, &route) == *b && in_descent_route(c, &data.symmetric, &route))
        .collect();
    match matches.as_slice() {
        [only] => Ok((*only).clone()),
        other => Err(Error::invariant(format!(
            "{} lifts of {b} into S({}), expected exactly one",
            other.len(),
            data.symmetric
        ))),
    }
}

/// Lift computed by inverting the truncation steps one at a time.
pub fn lift_stepwise(data: &SymmetrizationData, b: &Multisegment) -> Result<Multisegment> {
    if !leq_rank(b, &data.original) {
        return Err(Error::NotInPoset {
            what: b.clone(),
            root: data.original.clone(),
        });
    }
    psi_route_inverse(&data.symmetric, &data.route(), b)
}

/// The whole bijection `S(a^sym)_{route} → S(a)`, inverted.
#[derive(Clone, Debug)]
pub struct LiftTable {
    lifts: HashMap<Multisegment, Multisegment>,
}

impl LiftTable {
    pub fn new(data: &SymmetrizationData) -> Result<Self> {
        let route = data.route();
        let target_size = generate_poset(&data.original)?.len();
        let mut lifts = HashMap::new();
        for c in generate_poset(&data.symmetric)?.elements() {
            if !in_descent_route(c, &data.symmetric, &route) {
                continue;
            }
            let image = truncate_route(c, &route);
            if let Some(prev) = lifts.insert(image.clone(), c.clone()) {
                return Err(Error::invariant(format!(
                    "{prev} and {c} both truncate to {image}"
                )));
            }
        }
        if lifts.len() != target_size {
            return Err(Error::invariant(format!(
                "descent set of {} has {} elements, S({}) has {target_size}",
                data.symmetric,
                lifts.len(),
                data.original
            )));
        }
        Ok(LiftTable { lifts })
    }

    pub fn get(&self, b: &Multisegment) -> Option<&Multisegment> {
        self.lifts.get(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multisegment, &Multisegment)> {
        self.lifts.iter()
    }

    pub fn len(&self) -> usize {
        self.lifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lifts.is_empty()
    }
}
