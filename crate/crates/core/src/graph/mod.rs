//! Simple undirected graphs, generators, edge colourings and file I/O.

mod colouring;
mod generators;
mod io;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{input, Result};
use crate::scalar::Rational;

pub use colouring::{direction_colouring, greedy_proper_colouring, EdgeColouring};
pub use generators::{
    complete, complete_bipartite, cycle, cycle_blowup, hypercube, path, random, set_graph, star,
    MAX_HYPERCUBE_DIMENSION,
};
pub(crate) use generators::binomial;
pub use io::{read_colouring, read_edge_list, write_colouring, write_edge_list};

/// Optional human-readable vertex label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexLabel {
    /// A hypercube vertex; the first coordinate is the most significant bit.
    Bits { value: u64, width: u32 },
    /// A subset of the ground set `{1, ..., k}` stored as a bitmask (bit `i-1` for `i`).
    Subset(u64),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexLabel::Bits { value, width } => {
                for i in (0..width).rev() {
                    write!(f, "{}", (value >> i) & 1)?;
                }
                Ok(())
            }
            VertexLabel::Subset(mask) => {
                write!(f, "{{")?;
                let mut first = true;
                for i in 0..64 {
                    if (mask >> i) & 1 == 1 {
                        if !first {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", i + 1)?;
                        first = false;
                    }
                }
                write!(f, "}}")
            }
        }
    }
}

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency is kept twice: sorted neighbour lists for iteration and packed
/// bit rows for the counting kernels.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<u64>,
    words: usize,
    edge_count: usize,
    labels: Option<Vec<VertexLabel>>,
}

impl Graph {
    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u},{v}) has an endpoint outside 0..{n}"));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        let mut degree_sum = 0;
        for (u, list) in adj.iter().enumerate() {
            degree_sum += list.len();
            for &v in list {
                rows[u * words + v / 64] |= 1u64 << (v % 64);
            }
        }
        let g = Graph {
            adj,
            rows,
            words,
            edge_count: degree_sum / 2,
            labels: None,
        };
        debug_assert!(g.check_invariants());
        g
    }

    fn check_invariants(&self) -> bool {
        self.adj.iter().enumerate().all(|(u, list)| {
            list.windows(2).all(|w| w[0] < w[1])
                && list.iter().all(|&v| v != u && self.adj[v].binary_search(&u).is_ok())
        })
    }

    /// Attaches vertex labels; the label count must equal the vertex count.
    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Result<Self> {
        if labels.len() != self.n() {
            return input(format!(
                "{} labels supplied for {} vertices",
                labels.len(),
                self.n()
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    /// Label of `v` rendered as text, falling back to the decimal id.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].to_string(),
            None => v.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Minimum degree; zero for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    /// Number of 64-bit words in a packed neighbourhood row.
    pub fn row_words(&self) -> usize {
        self.words
    }

    /// Packed neighbourhood of `v`: bit `w` of word `w / 64` is set iff `vw` is an edge.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Proper 2-colouring (`0`/`1` per vertex) if the graph is bipartite.
    /// Each component's smallest vertex gets side `0`.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Component index of every vertex, numbered in order of smallest member.
    pub fn components(&self) -> Vec<usize> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().iter().all(|&c| c == 0)
    }

    /// Subgraph induced on `keep` (which must be sorted and distinct); vertex
    /// `i` of the result is `keep[i]`. Labels are carried over.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        let mut g = Graph::from_sorted_adjacency(adj);
        if let Some(labels) = &self.labels {
            g.labels = Some(keep.iter().map(|&v| labels[v].clone()).collect());
        }
        g
    }

    /// Graph with vertices renamed by `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n()];
        if perm.len() != self.n() || perm.iter().any(|&p| p >= self.n() || std::mem::replace(&mut seen[p], true)) {
            return input("relabelling is not a permutation of the vertex set");
        }
        Graph::new(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Edge density `2 e(G) / n^2`.
    pub fn edge_density(&self) -> Result<Rational> {
        if self.n() == 0 {
            return input("edge density of the empty vertex set is undefined");
        }
        let n = BigInt::from(self.n());
        Ok(Rational::new(BigInt::from(2 * self.edge_count), &n * &n))
    }

    /// Repeatedly deletes vertices of degree below `threshold`. The surviving
    /// vertex set does not depend on the deletion order.
    pub fn peel_min_degree(&self, threshold: usize) -> Peeled {
        let order: Vec<usize> = (0..self.n()).collect();
        self.peel_min_degree_in_order(threshold, &order)
    }

    /// Peeling that scans candidates in the given order; exposed so that the
    /// order-independence of the result can be checked.
    pub fn peel_min_degree_in_order(&self, threshold: usize, order: &[usize]) -> Peeled {
        let n = self.n();
        let mut degree = self.degrees();
        let mut removed = vec![false; n];
        let mut queue: VecDeque<usize> = order
            .iter()
            .copied()
            .filter(|&v| degree[v] < threshold)
            .collect();
        let mut queued = vec![false; n];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            removed[v] = true;
            for &w in &self.adj[v] {
                if removed[w] {
                    continue;
                }
                degree[w] -= 1;
                if degree[w] < threshold && !queued[w] {
                    queued[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
        Peeled {
            graph: self.induced_subgraph(&kept),
            kept,
        }
    }

    /// Measured almost-regularity `Δ(G) / δ(G)`, `None` when `δ(G) = 0`.
    pub fn regularity_ratio(&self) -> Option<Rational> {
        let min = self.min_degree();
        (min > 0).then(|| Rational::new(BigInt::from(self.max_degree()), BigInt::from(min)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Result of [`Graph::peel_min_degree`].
#[derive(Clone, Debug)]
pub struct Peeled {
    pub graph: Graph,
    /// Original ids of the surviving vertices, sorted.
    pub kept: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn path_on_three_vertices() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(Graph::new(4, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn densities() {
        assert_eq!(complete(4).edge_density().unwrap(), rational(3, 4));
        assert_eq!(Graph::new(5, []).unwrap().edge_density().unwrap(), rational(0, 1));
        assert_eq!(hypercube(3).unwrap().edge_density().unwrap(), rational(3, 8));
        assert!(Graph::new(0, []).unwrap().edge_density().is_err());
    }

    #[test]
    fn peeling_examples() {
        assert_eq!(star(5).peel_min_degree(2).graph.n(), 0);
        let c5 = cycle(5).unwrap();
        let p = c5.peel_min_degree(2);
        assert_eq!(p.kept, vec![0, 1, 2, 3, 4]);
        assert_eq!(p.graph, c5);
        let k4_minus = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(k4_minus.peel_min_degree(3).graph.n(), 0);
    }

    #[test]
    fn bipartition_and_components() {
        let g = Graph::new(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.bipartition().unwrap(), vec![0, 1, 0, 0, 1]);
        assert_eq!(g.components(), vec![0, 0, 0, 1, 1]);
        assert!(!g.is_connected());
        assert!(complete(3).bipartition().is_none());
    }

    #[test]
    fn packed_rows_match_lists() {
        let g = random(70, &rational(1, 3), 9).unwrap();
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(g.has_edge(u, v), g.neighbours(u).contains(&v));
            }
        }
    }
}
