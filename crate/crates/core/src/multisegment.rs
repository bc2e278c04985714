//! Multisegments and their weight functions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::segment::Segment;

/// A finite multiset of segments, stored sorted by [`Segment`]'s order.
///
/// Two multisegments are equal exactly when they are equal as multisets, so
/// the type can key hash maps directly. The empty multisegment has degree 0.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

impl Multisegment {
    pub fn new(segments: impl IntoIterator<Item = Segment>) -> Self {
        let mut segments: Vec<Segment> = segments.into_iter().collect();
        segments.sort_unstable();
        Multisegment { segments }
    }

    pub fn empty() -> Self {
        Multisegment::default()
    }

    /// Builds from `(begin, end)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(b, e)| Segment::new(b, e))
            .collect::<Result<Vec<_>>>()
            .map(Multisegment::new)
    }

    /// All singletons `[k]` with multiplicity `weight(k)`.
    pub fn singletons(weight: &WeightFunction) -> Self {
        Multisegment::new(
            weight
                .iter()
                .flat_map(|(k, m)| std::iter::repeat_n(Segment::point(k), m as usize)),
        )
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment> {
        self.segments.iter()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.segments.iter().map(Segment::len).sum()
    }

    /// Sorted multiset of ends.
    pub fn ends(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.segments.iter().map(Segment::end).collect();
        v.sort_unstable();
        v
    }

    /// Sorted multiset of beginnings.
    pub fn begins(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.segments.iter().map(Segment::begin).collect();
        v.sort_unstable();
        v
    }

    pub fn count_ending_at(&self, k: i64) -> usize {
        self.segments.iter().filter(|s| s.end() == k).count()
    }

    pub fn count_beginning_at(&self, k: i64) -> usize {
        self.segments.iter().filter(|s| s.begin() == k).count()
    }

    pub fn weight(&self) -> WeightFunction {
        let mut w = BTreeMap::new();
        for s in &self.segments {
            for k in s.begin()..=s.end() {
                *w.entry(k).or_insert(0u32) += 1;
            }
        }
        WeightFunction(w)
    }

    /// Smallest and largest integer in the support.
    pub fn support_hull(&self) -> Option<(i64, i64)> {
        let lo = self.segments.iter().map(Segment::begin).min()?;
        let hi = self.segments.iter().map(Segment::end).max()?;
        Some((lo, hi))
    }

    /// Beginnings pairwise distinct and ends pairwise distinct.
    pub fn is_regular(&self) -> bool {
        fn distinct(v: &[i64]) -> bool {
            v.windows(2).all(|w| w[0] != w[1])
        }
        distinct(&self.begins()) && distinct(&self.ends())
    }

    /// Regular, and every beginning is at most every end.
    pub fn is_symmetric(&self) -> bool {
        if !self.is_regular() {
            return false;
        }
        match (
            self.segments.iter().map(Segment::begin).max(),
            self.segments.iter().map(Segment::end).min(),
        ) {
            (Some(max_begin), Some(min_end)) => max_begin <= min_end,
            _ => true,
        }
    }

    /// Index pairs `(i, j)`, `i < j`, of linked segments. Pairs that repeat an
    /// already listed pair of segment values are skipped.
    pub fn linked_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let segs = &self.segments;
        for i in 0..segs.len() {
            if i > 0 && segs[i] == segs[i - 1] {
                continue;
            }
            for j in (i + 1)..segs.len() {
                if segs[j] == segs[j - 1] && j - 1 != i {
                    continue;
                }
                if segs[i].linked(&segs[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn has_linked_pair(&self) -> bool {
        let segs = &self.segments;
        (0..segs.len()).any(|i| (i + 1..segs.len()).any(|j| segs[i].linked(&segs[j])))
    }

    /// Replaces the linked segments at positions `i` and `j` by their union and
    /// (when nonempty) their intersection.
    pub fn elementary_operation(&self, i: usize, j: usize) -> Result<Multisegment> {
        let len = self.segments.len();
        for index in [i, j] {
            if index >= len {
                return Err(Error::IndexOutOfRange { index, len });
            }
        }
        let (x, y) = (self.segments[i], self.segments[j]);
        if i == j || !x.linked(&y) {
            return Err(Error::NotLinked(x, y));
        }
        let union = x.union(&y).expect("linked segments have a segment union");
        let mut segments: Vec<Segment> = self
            .segments
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != i && idx != j)
            .map(|(_, s)| *s)
            .collect();
        segments.push(union);
        segments.extend(x.intersection(&y));
        Ok(Multisegment::new(segments))
    }

    /// Multiset sum.
    pub fn union(&self, other: &Multisegment) -> Multisegment {
        Multisegment::new(self.segments.iter().chain(other.segments.iter()).copied())
    }

    pub fn with_segment(&self, segment: Segment) -> Multisegment {
        let mut segments = self.segments.clone();
        let pos = segments.partition_point(|s| *s <= segment);
        segments.insert(pos, segment);
        Multisegment { segments }
    }

    /// Image under `x ↦ -x`; exchanges the roles of beginnings and ends.
    pub fn mirror(&self) -> Multisegment {
        Multisegment::new(self.segments.iter().map(Segment::mirror))
    }

    pub fn translate(&self, by: i64) -> Multisegment {
        Multisegment::new(self.segments.iter().map(|s| s.translate(by)))
    }

    /// `Σ len²`; strictly increases along every elementary operation.
    pub(crate) fn potential(&self) -> u64 {
        self.segments.iter().map(|s| s.len() * s.len()).sum()
    }
}

impl From<Vec<Segment>> for Multisegment {
    fn from(v: Vec<Segment>) -> Self {
        Multisegment::new(v)
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        Multisegment::new(iter)
    }
}

impl<'a> IntoIterator for &'a Multisegment {
    type Item = &'a Segment;
    type IntoIter = std::slice::Iter<'a, Segment>;

    fn into_iter(self) -> Self::IntoIter {
        self.segments.iter()
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the bracket notation used in `Display`, e.g. `{[1,2],[3]}`.
/// The outer braces and separators are optional.
impl FromStr for Multisegment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut segments = Vec::new();
        let mut rest = s.trim();
        rest = rest.strip_prefix('{').unwrap_or(rest);
        rest = rest.strip_suffix('}').unwrap_or(rest);
        loop {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
            if rest.is_empty() {
                break;
            }
            let body = rest
                .strip_prefix('[')
                .ok_or_else(|| Error::Parse(format!("expected '[' at {rest:?}")))?;
            let close = body
                .find(']')
                .ok_or_else(|| Error::Parse("unterminated segment".into()))?;
            let nums = body[..close]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let seg = match nums.as_slice() {
                [k] => Segment::point(*k),
                [b, e] => Segment::new(*b, *e)?,
                _ => return Err(Error::Parse(format!("bad segment [{}]", &body[..close]))),
            };
            segments.push(seg);
            rest = &body[close + 1..];
        }
        Ok(Multisegment::new(segments))
    }
}

#[derive(Serialize, Deserialize)]
struct MultisegmentJson {
    segments: Vec<Segment>,
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MultisegmentJson {
            segments: self.segments.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multisegment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MultisegmentJson::deserialize(deserializer)?;
        Ok(Multisegment::new(raw.segments))
    }
}

/// Finitely supported `ℤ → ℕ`: how many segments cover each integer.
/// Only positive values are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightFunction(BTreeMap<i64, u32>);

impl WeightFunction {
    pub fn new(values: impl IntoIterator<Item = (i64, u32)>) -> Self {
        WeightFunction(values.into_iter().filter(|&(_, m)| m > 0).collect())
    }

    pub fn get(&self, k: i64) -> u32 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().map(|&m| m as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.0.iter().map(|(&k, &m)| (k, m))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}
