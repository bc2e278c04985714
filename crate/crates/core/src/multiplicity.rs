//! Multiplicities `m(b, a)` of irreducibles in standard modules, and the
//! transport of posets between multisegments of the same relation type.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;
use crate::poset::leq_rank;
use crate::segment::Segment;
use crate::symmetrization::{lift_stepwise, symmetrize, LiftTable};
use crate::weyl::{kl_polynomial, phi_inverse};

/// The identity element `Φ(id)` sharing the beginnings and ends of a
/// symmetric multisegment.
fn identity_base(a: &Multisegment) -> Result<Multisegment> {
    if !a.is_symmetric() {
        return Err(Error::Domain(format!("{a} is not symmetric")));
    }
    a.begins()
        .into_iter()
        .zip(a.ends())
        .map(|(b, e)| Segment::new(b, e))
        .collect::<Result<Vec<_>>>()
        .map(Multisegment::new)
}

fn checked_count(p: i64, what: impl FnOnce() -> String) -> Result<u64> {
    u64::try_from(p).map_err(|_| Error::invariant(format!("{} evaluates to {p}", what())))
}

/// `m(b, a)` for symmetric `a`, read off a KL polynomial without
/// symmetrizing: with `b = Φ(v)` and `a = Φ(w)`, `m = P_{w,v}(1)`.
pub fn mult_direct_symmetric(b: &Multisegment, a: &Multisegment) -> Result<u64> {
    if !leq_rank(b, a) {
        return Ok(0);
    }
    let base = identity_base(a)?;
    let w = phi_inverse(&base, a)?;
    let v = phi_inverse(&base, b)?;
    let p = kl_polynomial(&w, &v)?;
    checked_count(p.at_one(), || format!("P_{{{w},{v}}}"))
}

/// `m(b, a)` through the symmetrization of `a` and the lift of `b`.
pub fn mult_via_symmetrization(b: &Multisegment, a: &Multisegment) -> Result<u64> {
    if !leq_rank(b, a) {
        return Ok(0);
    }
    let data = symmetrize(a)?;
    let lifted = lift_stepwise(&data, b)?;
    mult_direct_symmetric(&lifted, &data.symmetric)
}

/// `m(b, a)`: zero unless `b ≤ a`, one on the diagonal.
pub fn mult(b: &Multisegment, a: &Multisegment) -> Result<u64> {
    if !leq_rank(b, a) {
        return Ok(0);
    }
    if b == a {
        return Ok(1);
    }
    if a.is_symmetric() {
        mult_direct_symmetric(b, a)
    } else {
        mult_via_symmetrization(b, a)
    }
}

pub type MultMatrix = BTreeMap<Multisegment, u64>;

type MatrixCache = Mutex<HashMap<Multisegment, Arc<MultMatrix>>>;

fn matrix_cache() -> &'static MatrixCache {
    static CACHE: OnceLock<MatrixCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `m(b, a)` for every `b ∈ S(a)`, memoized per `a`.
pub fn mult_matrix(a: &Multisegment) -> Result<Arc<MultMatrix>> {
    if let Some(m) = matrix_cache().lock().unwrap_or_else(|e| e.into_inner()).get(a) {
        return Ok(m.clone());
    }
    let data = symmetrize(a)?;
    let table = LiftTable::new(&data)?;
    let mut matrix = MultMatrix::new();
    for (b, lifted) in table.iter() {
        let m = mult_direct_symmetric(lifted, &data.symmetric)?;
        if m == 0 || (b == a && m != 1) {
            return Err(Error::invariant(format!("m({b}, {a}) = {m}")));
        }
        matrix.insert(b.clone(), m);
    }
    let matrix = Arc::new(matrix);
    matrix_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(a.clone(), matrix.clone());
    Ok(matrix)
}

/// How an ordered pair of segments sits relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationType {
    /// The first contains the second.
    Covers,
    LinkedNotJuxtaposed,
    Juxtaposed,
    Unrelated,
}

pub fn relation_type(d1: &Segment, d2: &Segment) -> RelationType {
    if d1.covers(d2) {
        RelationType::Covers
    } else if d1.juxtaposed(d2) {
        RelationType::Juxtaposed
    } else if d1.linked(d2) {
        RelationType::LinkedNotJuxtaposed
    } else {
        RelationType::Unrelated
    }
}

/// A bijection between two multisegments preserving `⪯` and all pairwise
/// relation types, together with the induced maps on ends and beginnings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTypeMap {
    pub source: Multisegment,
    pub target: Multisegment,
    /// `pairing[i] = j` sends the `i`-th segment of `source` to the `j`-th
    /// segment of `target`.
    pub pairing: Vec<usize>,
    pub end_map: BTreeMap<i64, i64>,
    pub begin_map: BTreeMap<i64, i64>,
}

/// Inserts `from ↦ to`, failing if `from` already maps elsewhere.
fn extend_map(map: &mut BTreeMap<i64, i64>, from: i64, to: i64) -> bool {
    *map.entry(from).or_insert(to) == to
}

fn strictly_increasing(map: &BTreeMap<i64, i64>) -> bool {
    map.values().zip(map.values().skip(1)).all(|(x, y)| x < y)
}

/// The relation-type bijection `a → a2`, if one exists.
///
/// A bijection preserving `⪯` must send equal segments to equal segments
/// and respect the sorted order, so aligning the sorted lists is the only
/// candidate up to permuting equal segments, which changes nothing.
pub fn same_relation_type(a: &Multisegment, a2: &Multisegment) -> Option<RelationTypeMap> {
    if a.len() != a2.len() {
        return None;
    }
    let (s, t) = (a.segments(), a2.segments());
    let mut end_map = BTreeMap::new();
    let mut begin_map = BTreeMap::new();
    for (x, y) in s.iter().zip(t) {
        if !extend_map(&mut end_map, x.end(), y.end())
            || !extend_map(&mut begin_map, x.begin(), y.begin())
        {
            return None;
        }
    }
    if !strictly_increasing(&end_map) || !strictly_increasing(&begin_map) {
        return None;
    }
    for i in 0..s.len() {
        for j in 0..s.len() {
            if (s[i] == s[j]) != (t[i] == t[j])
                || relation_type(&s[i], &s[j]) != relation_type(&t[i], &t[j])
            {
                return None;
            }
        }
    }
    Some(RelationTypeMap {
        source: a.clone(),
        target: a2.clone(),
        pairing: (0..s.len()).collect(),
        end_map,
        begin_map,
    })
}

/// `Ξ(b)`: each segment `[x, y]` of `b` becomes `[begin_map(x), end_map(y)]`.
pub fn xi_transport(map: &RelationTypeMap, b: &Multisegment) -> Result<Multisegment> {
    if !leq_rank(b, &map.source) {
        return Err(Error::NotInPoset {
            what: b.clone(),
            root: map.source.clone(),
        });
    }
    b.iter()
        .map(|s| {
            let begin = map.begin_map.get(&s.begin());
            let end = map.end_map.get(&s.end());
            match (begin, end) {
                (Some(&x), Some(&y)) => Segment::new(x, y),
                _ => Err(Error::invariant(format!(
                    "{s} has an endpoint outside those of {}",
                    map.source
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Multisegment::new)
}
