#![allow(dead_code)]

use multiseg::{generate_poset, Multisegment, MultisegmentPoset, Segment, WeightFunction};
use rand::Rng;

pub fn ms(s: &str) -> Multisegment {
    s.parse().unwrap()
}

/// Every nonzero weight function on `0..width` of total at most `max_degree`.
pub fn weights(width: usize, max_degree: u32) -> Vec<WeightFunction> {
    fn go(pos: usize, width: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<WeightFunction>) {
        if pos == width {
            if cur.iter().any(|&v| v > 0) {
                out.push(WeightFunction::new(
                    cur.iter().enumerate().map(|(i, &v)| (i as i64, v)),
                ));
            }
            return;
        }
        for v in 0..=left {
            cur.push(v);
            go(pos + 1, width, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, width, max_degree, &mut Vec::new(), &mut out);
    out
}

/// All multisegments of weight `w`: the poset below the singletons.
pub fn with_weight(w: &WeightFunction) -> MultisegmentPoset {
    generate_poset(&Multisegment::singletons(w)).unwrap()
}

/// Every multisegment supported in `0..width` of degree at most `max_degree`.
pub fn all_multisegments(width: usize, max_degree: u32) -> Vec<Multisegment> {
    weights(width, max_degree)
        .iter()
        .flat_map(|w| with_weight(w).elements().to_vec())
        .collect()
}

/// A random multisegment in `[0, width)` with `1..=max_degree` points.
pub fn random_multisegment(rng: &mut impl Rng, width: i64, max_degree: u64) -> Multisegment {
    let target = rng.gen_range(1..=max_degree);
    let mut segs = Vec::new();
    let mut degree = 0;
    while degree < target {
        let begin = rng.gen_range(0..width);
        let max_len = (width - begin).min((target - degree) as i64);
        let len = rng.gen_range(1..=max_len);
        segs.push(Segment::new(begin, begin + len - 1).unwrap());
        degree += len as u64;
    }
    Multisegment::new(segs)
}

/// `{[1,n],[2,n+1],…,[n,2n-1]}`.
pub fn symmetric_identity(n: i64) -> Multisegment {
    Multisegment::new((1..=n).map(|i| Segment::new(i, i + n - 1).unwrap()))
}

/// `reach[i][j]` iff element `j` is reachable from element `i` along
/// elementary-operation edges (reflexively).
pub fn reachability(p: &MultisegmentPoset) -> Vec<Vec<bool>> {
    let n = p.len();
    let mut children = vec![Vec::new(); n];
    for &(a, b) in p.edges() {
        children[a].push(b);
    }
    (0..n)
        .map(|start| {
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                for &c in &children[x] {
                    if !seen[c] {
                        seen[c] = true;
                        stack.push(c);
                    }
                }
            }
            seen
        })
        .collect()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
