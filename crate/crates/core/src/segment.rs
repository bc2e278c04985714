//! Segments: closed integer intervals `[begin, end]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonempty interval of consecutive integers.
///
/// The `Ord` instance is the well-ordering used throughout the crate:
/// segments are compared by end, and among segments with the same end the
/// one with the larger beginning (the shorter one) comes first. It is a
/// total order, so `a < b` is exactly "`a` precedes `b`".
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    begin: i64,
    end: i64,
}

impl Segment {
    pub fn new(begin: i64, end: i64) -> Result<Self> {
        Self::try_new(begin, end)
            .ok_or_else(|| Error::Domain(format!("segment [{begin},{end}] is empty")))
    }

    /// `None` when `begin > end`.
    pub fn try_new(begin: i64, end: i64) -> Option<Self> {
        (begin <= end).then_some(Segment { begin, end })
    }

    /// The singleton `[k]`.
    pub fn point(k: i64) -> Self {
        Segment { begin: k, end: k }
    }

    pub fn begin(&self) -> i64 {
        self.begin
    }

    pub fn end(&self) -> i64 {
        self.end
    }

    /// Number of integers in the segment; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        (self.end - self.begin + 1) as u64
    }

    pub fn is_singleton(&self) -> bool {
        self.begin == self.end
    }

    pub fn contains_point(&self, k: i64) -> bool {
        self.begin <= k && k <= self.end
    }

    /// `self ⊇ other`.
    pub fn covers(&self, other: &Segment) -> bool {
        self.begin <= other.begin && other.end <= self.end
    }

    /// `[b, e-1]`, or `None` for a singleton.
    pub fn shrink_end(&self) -> Option<Segment> {
        Segment::try_new(self.begin, self.end - 1)
    }

    /// `[b+1, e]`, or `None` for a singleton.
    pub fn shrink_begin(&self) -> Option<Segment> {
        Segment::try_new(self.begin + 1, self.end)
    }

    /// `[b, e+1]`.
    pub fn extend_end(&self) -> Segment {
        Segment {
            begin: self.begin,
            end: self.end + 1,
        }
    }

    /// `[b-1, e]`.
    pub fn extend_begin(&self) -> Segment {
        Segment {
            begin: self.begin - 1,
            end: self.end,
        }
    }

    /// Image under `x ↦ -x`.
    pub fn mirror(&self) -> Segment {
        Segment {
            begin: -self.end,
            end: -self.begin,
        }
    }

    pub fn translate(&self, by: i64) -> Segment {
        Segment {
            begin: self.begin + by,
            end: self.end + by,
        }
    }

    pub fn intersection(&self, other: &Segment) -> Option<Segment> {
        Segment::try_new(self.begin.max(other.begin), self.end.min(other.end))
    }

    /// The union, when it is itself a segment.
    pub fn union(&self, other: &Segment) -> Option<Segment> {
        if self.begin.max(other.begin) <= self.end.min(other.end) + 1 {
            Some(Segment {
                begin: self.begin.min(other.begin),
                end: self.end.max(other.end),
            })
        } else {
            None
        }
    }

    /// Strict precedence: `e(self) < e(other)`, or equal ends and `b(self) > b(other)`.
    pub fn precedes(&self, other: &Segment) -> bool {
        self < other
    }

    /// The union is a segment different from both inputs.
    pub fn linked(&self, other: &Segment) -> bool {
        match self.union(other) {
            Some(u) => u != *self && u != *other,
            None => false,
        }
    }

    /// Linked with empty intersection.
    pub fn juxtaposed(&self, other: &Segment) -> bool {
        self.linked(other) && self.intersection(other).is_none()
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.end
            .cmp(&other.end)
            .then_with(|| other.begin.cmp(&self.begin))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            write!(f, "[{}]", self.begin)
        } else {
            write!(f, "[{},{}]", self.begin, self.end)
        }
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.begin, self.end].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Segment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [begin, end] = <[i64; 2]>::deserialize(deserializer)?;
        Segment::try_new(begin, end).ok_or_else(|| {
            serde::de::Error::custom(format!("segment [{begin},{end}] has begin > end"))
        })
    }
}
