//! The poset `S(a)` of multisegments obtainable from `a` by elementary
//! operations, and the rank-function test for the order.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;

/// Default refusal threshold for [`generate_poset`].
pub const DEFAULT_MAX_SIZE: usize = 50_000;

/// `S(a)` with the edges produced by single elementary operations.
///
/// Elements are kept in breadth-first discovery order, so `elements()[0]`
/// is the root. An edge `(p, c)` means `c` is obtained from `p` by one
/// elementary operation; such an edge need not be a cover relation.
#[derive(Clone, Debug)]
pub struct MultisegmentPoset {
    elements: Vec<Multisegment>,
    index: HashMap<Multisegment, usize>,
    edges: Vec<(usize, usize)>,
}

impl MultisegmentPoset {
    pub fn root(&self) -> &Multisegment {
        &self.elements[0]
    }

    pub fn elements(&self) -> &[Multisegment] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, m: &Multisegment) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Multisegment) -> bool {
        self.index.contains_key(m)
    }

    /// Elementary-operation edges as index pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The unique element with no outgoing edge.
    pub fn minimum(&self) -> &Multisegment {
        let mut has_child = vec![false; self.elements.len()];
        for &(p, _) in &self.edges {
            has_child[p] = true;
        }
        let sinks: Vec<usize> = (0..self.elements.len()).filter(|&i| !has_child[i]).collect();
        assert_eq!(sinks.len(), 1, "S(a) must have exactly one minimal element");
        &self.elements[sinks[0]]
    }

    /// Cover relations (transitive reduction of the edge set), sorted.
    ///
    /// An edge `p → c` is a cover iff no other child `w` of `p` has `c ≤ w`:
    /// any intermediate element would lie below some child of `p`.
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); self.elements.len()];
        for &(p, c) in &self.edges {
            if !children[p].contains(&c) {
                children[p].push(c);
            }
        }
        let mut covers = Vec::new();
        for (p, kids) in children.iter().enumerate() {
            for &c in kids {
                let skipped = kids
                    .iter()
                    .any(|&w| w != c && leq_rank(&self.elements[c], &self.elements[w]));
                if !skipped {
                    covers.push((p, c));
                }
            }
        }
        covers.sort_unstable();
        covers
    }

    /// Reachability test `b ≤ a` inside this poset by walking edges.
    pub fn reachable(&self, b: &Multisegment, a: &Multisegment) -> bool {
        let (Some(ib), Some(ia)) = (self.index_of(b), self.index_of(a)) else {
            return false;
        };
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); self.elements.len()];
        for &(p, c) in &self.edges {
            children[p].push(c);
        }
        let mut seen = vec![false; self.elements.len()];
        let mut stack = vec![ia];
        seen[ia] = true;
        while let Some(x) = stack.pop() {
            if x == ib {
                return true;
            }
            for &c in &children[x] {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        false
    }
}

/// Breadth-first closure of `{a}` under elementary operations, with the
/// default size cap.
pub fn generate_poset(a: &Multisegment) -> Result<MultisegmentPoset> {
    generate_poset_capped(a, DEFAULT_MAX_SIZE)
}

pub fn generate_poset_capped(a: &Multisegment, max_size: usize) -> Result<MultisegmentPoset> {
    let mut elements = vec![a.clone()];
    let mut index = HashMap::from([(a.clone(), 0usize)]);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        let current = elements[p].clone();
        for (i, j) in current.linked_pairs() {
            let child = current.elementary_operation(i, j)?;
            let c = match index.get(&child) {
                Some(&c) => c,
                None => {
                    if elements.len() >= max_size {
                        return Err(Error::ResourceLimit {
                            what: format!("poset of {a}"),
                            cap: max_size,
                        });
                    }
                    let c = elements.len();
                    index.insert(child.clone(), c);
                    elements.push(child);
                    queue.push_back(c);
                    c
                }
            };
            edges.push((p, c));
        }
    }
    Ok(MultisegmentPoset {
        elements,
        index,
        edges,
    })
}

/// `r[i][j]` = number of segments containing `[i, j]`, over the support hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    lo: i64,
    width: usize,
    ranks: Vec<u32>,
}

impl RankTable {
    pub fn new(a: &Multisegment) -> Self {
        let (lo, hi) = a.support_hull().unwrap_or((0, -1));
        Self::over(a, lo, hi)
    }

    /// Rank table over the window `[lo, hi]`.
    pub fn over(a: &Multisegment, lo: i64, hi: i64) -> Self {
        let width = (hi - lo + 1).max(0) as usize;
        let mut ranks = vec![0u32; width * width];
        for s in a {
            let b = (s.begin().max(lo) - lo) as usize;
            let e = s.end().min(hi) - lo;
            if e < 0 || b >= width {
                continue;
            }
            let e = e as usize;
            for i in b..=e {
                for j in i..=e {
                    ranks[i * width + j] += 1;
                }
            }
        }
        RankTable { lo, width, ranks }
    }

    /// `r_{ij}`; zero outside the window or when `i > j`.
    pub fn get(&self, i: i64, j: i64) -> u32 {
        if i > j || i < self.lo || j < self.lo {
            return 0;
        }
        let (i, j) = ((i - self.lo) as usize, (j - self.lo) as usize);
        if j >= self.width {
            return 0;
        }
        self.ranks[i * self.width + j]
    }
}

/// Decides `b ≤ a`: equal weights and `r_{ij}(b) ≥ r_{ij}(a)` for all `i ≤ j`.
pub fn leq_rank(b: &Multisegment, a: &Multisegment) -> bool {
    if b.degree() != a.degree() || b.weight() != a.weight() {
        return false;
    }
    let Some((lo, hi)) = a.support_hull() else {
        return true;
    };
    let rb = RankTable::over(b, lo, hi);
    let ra = RankTable::over(a, lo, hi);
    rb.ranks.iter().zip(&ra.ranks).all(|(x, y)| x >= y)
}

/// The unique element of `S(a)` without linked pairs, reached greedily.
pub fn minimal_element(a: &Multisegment) -> Multisegment {
    let mut current = a.clone();
    while let Some(&(i, j)) = current.linked_pairs().first() {
        current = current
            .elementary_operation(i, j)
            .expect("linked_pairs returns linked pairs");
    }
    current
}

/// DOT digraph of the Hasse diagram; nodes are labeled by their JSON form.
pub fn hasse_dot(p: &MultisegmentPoset) -> String {
    let mut out = String::from("digraph poset {\n");
    for (i, m) in p.elements().iter().enumerate() {
        let label = serde_json::to_string(m).expect("multisegments serialize");
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
    }
    for (a, b) in p.cover_edges() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}
