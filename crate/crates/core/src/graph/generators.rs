use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, VertexLabel};
use crate::error::{input, Result};
use crate::scalar::{format_rational, is_unit_interval, Rational};

pub const MAX_HYPERCUBE_DIMENSION: u32 = 20;

const MAX_SET_GRAPH_SIDE: u64 = 100_000;

/// The hypercube `Q_d`: vertex `x` is the integer whose binary expansion is
/// the coordinate string, first coordinate most significant. Labelled by
/// bitstrings.
pub fn hypercube(d: u32) -> Result<Graph> {
    if !(1..=MAX_HYPERCUBE_DIMENSION).contains(&d) {
        return input(format!(
            "hypercube dimension {d} outside 1..={MAX_HYPERCUBE_DIMENSION}"
        ));
    }
    let n = 1usize << d;
    let edges = (0..n).flat_map(|x| {
        (0..d)
            .map(move |b| (x, x ^ (1usize << b)))
            .filter(|&(x, y)| x < y)
    });
    let g = Graph::new(n, edges)?;
    let labels = (0..n as u64)
        .map(|value| VertexLabel::Bits { value, width: d })
        .collect();
    g.with_labels(labels)
}

/// The bipartite containment graph between `l`-subsets and `(k-l)`-subsets of
/// `{1..k}`. The `l`-subsets come first, each side in lexicographic order.
pub fn set_graph(l: u32, k: u32) -> Result<Graph> {
    if l == 0 || 2 * l >= k || k > 63 {
        return input(format!("set graph needs 1 <= l < k/2 (got l={l}, k={k})"));
    }
    let side = binomial(k as u64, l as u64);
    if side > MAX_SET_GRAPH_SIDE {
        return input(format!("binomial({k},{l}) = {side} exceeds {MAX_SET_GRAPH_SIDE}"));
    }
    let small = subsets_of_size(k, l);
    let large = subsets_of_size(k, k - l);
    let offset = small.len();
    let index: HashMap<u64, usize> = large
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, offset + i))
        .collect();
    let full = (1u64 << k) - 1;
    let mut edges = Vec::new();
    for (i, &s) in small.iter().enumerate() {
        // Supersets of size k-l: add k-2l elements of the complement.
        let comp = full & !s;
        for extra in subsets_of_mask(comp, k - 2 * l) {
            edges.push((i, index[&(s | extra)]));
        }
    }
    let labels = small
        .iter()
        .chain(large.iter())
        .map(|&m| VertexLabel::Subset(m))
        .collect();
    Graph::new(offset + large.len(), edges)?.with_labels(labels)
}

/// `G(n, p)` with each pair `u < v` (lexicographic order) kept when a
/// uniform draw from `0..den(p)` falls below `num(p)`. The stream comes from
/// `ChaCha8Rng::seed_from_u64(seed)`, so `(n, p, seed)` fixes the graph.
pub fn random(n: usize, p: &Rational, seed: u64) -> Result<Graph> {
    if !is_unit_interval(p) {
        return input(format!("edge probability {} outside [0,1]", format_rational(p)));
    }
    let (num, den) = match (p.numer().to_u64(), p.denom().to_u64()) {
        (Some(a), Some(b)) => (a, b),
        _ => return input("edge probability denominator must fit in 64 bits"),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..den) < num {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("valid")
}

/// `K_{1,leaves}` with centre `0`.
pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid")
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("valid")
}

/// The cycle `0, 1, ..., n-1`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return input(format!("a cycle needs at least 3 vertices (got {n})"));
    }
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// The `t`-blowup of `C_n`: every cycle vertex becomes `t` twins
/// (`i*t .. i*t+t`) and consecutive twin classes are completely joined.
pub fn cycle_blowup(n: usize, t: usize) -> Result<Graph> {
    if n < 3 || t == 0 {
        return input("cycle blowup needs n >= 3 and t >= 1");
    }
    let mut edges = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        for a in 0..t {
            for b in 0..t {
                edges.push((i * t + a, j * t + b));
            }
        }
    }
    Graph::new(n * t, edges)
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc.to_u64().unwrap_or(u64::MAX)
}

/// All `size`-subsets of `{1..k}` as bitmasks, in lexicographic order of
/// their sorted element lists.
pub(crate) fn subsets_of_size(k: u32, size: u32) -> Vec<u64> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size as usize);
    fn rec(start: u32, k: u32, size: u32, current: &mut Vec<u32>, out: &mut Vec<u64>) {
        if current.len() as u32 == size {
            out.push(current.iter().fold(0u64, |m, &e| m | (1u64 << e)));
            return;
        }
        let remaining = size - current.len() as u32;
        for e in start..=k - remaining {
            current.push(e);
            rec(e + 1, k, size, current, out);
            current.pop();
        }
    }
    rec(0, k, size, &mut current, &mut out);
    out
}

fn subsets_of_mask(mask: u64, size: u32) -> Vec<u64> {
    let elems: Vec<u32> = (0..64).filter(|&i| (mask >> i) & 1 == 1).collect();
    subsets_of_size(elems.len() as u32, size)
        .into_iter()
        .map(|local| {
            (0..elems.len())
                .filter(|&i| (local >> i) & 1 == 1)
                .fold(0u64, |m, i| m | (1u64 << elems[i]))
        })
        .collect()
}
