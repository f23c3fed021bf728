use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{hypercube, Graph};
use crate::error::{input, Result};

/// A colour for every edge of a fixed graph.
///
/// Colours are stored alongside the neighbour lists: `colour_at(u, i)` is the
/// colour of the edge from `u` to its `i`-th neighbour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColouring {
    incident: Vec<Vec<u32>>,
    proper: bool,
}

impl EdgeColouring {
    /// Builds a colouring from `(u, v, colour)` triples that must cover the
    /// edge set of `graph` exactly once.
    pub fn new<I>(graph: &Graph, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut incident: Vec<Vec<Option<u32>>> =
            (0..graph.n()).map(|u| vec![None; graph.degree(u)]).collect();
        for (u, v, c) in triples {
            if !graph.has_edge(u, v) {
                return input(format!("colour given for non-edge ({u},{v})"));
            }
            let iu = graph.neighbours(u).binary_search(&v).expect("edge");
            let iv = graph.neighbours(v).binary_search(&u).expect("edge");
            if incident[u][iu].is_some() {
                return input(format!("edge ({u},{v}) coloured twice"));
            }
            incident[u][iu] = Some(c);
            incident[v][iv] = Some(c);
        }
        let mut out = Vec::with_capacity(graph.n());
        for (u, row) in incident.into_iter().enumerate() {
            let mut colours = Vec::with_capacity(row.len());
            for (i, c) in row.into_iter().enumerate() {
                match c {
                    Some(c) => colours.push(c),
                    None => {
                        return input(format!(
                            "edge ({u},{}) has no colour",
                            graph.neighbours(u)[i]
                        ))
                    }
                }
            }
            out.push(colours);
        }
        let proper = out.iter().all(|row| {
            let distinct: BTreeSet<u32> = row.iter().copied().collect();
            distinct.len() == row.len()
        });
        Ok(EdgeColouring {
            incident: out,
            proper,
        })
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    /// Colour of the edge from `u` to its `i`-th neighbour.
    pub fn colour_at(&self, u: usize, i: usize) -> u32 {
        self.incident[u][i]
    }

    /// Colours around `u`, aligned with `graph.neighbours(u)`.
    pub fn incident(&self, u: usize) -> &[u32] {
        &self.incident[u]
    }

    pub fn colour(&self, graph: &Graph, u: usize, v: usize) -> Option<u32> {
        let i = graph.neighbours(u).binary_search(&v).ok()?;
        Some(self.incident[u][i])
    }

    /// Sorted list of colours in use.
    pub fn palette(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self.incident.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// `(u, v, colour)` with `u < v` in the graph's edge order.
    pub fn triples(&self, graph: &Graph) -> Vec<(usize, usize, u32)> {
        graph
            .edges()
            .map(|(u, v)| (u, v, self.colour(graph, u, v).expect("edge")))
            .collect()
    }

    /// Number of edges in each colour class.
    pub fn class_sizes(&self, graph: &Graph) -> HashMap<u32, usize> {
        let mut sizes = HashMap::new();
        for (_, _, c) in self.triples(graph) {
            *sizes.entry(c).or_default() += 1;
        }
        sizes
    }
}

/// Greedy proper colouring: edges are visited in a seeded random order and
/// each takes the smallest colour free at both endpoints, so at most
/// `2Δ(G) - 1` colours are used.
pub fn greedy_proper_colouring(graph: &Graph, seed: u64) -> EdgeColouring {
    let mut edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    edges.shuffle(&mut rng);
    let mut used: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); graph.n()];
    let mut triples = Vec::with_capacity(edges.len());
    for (u, v) in edges {
        let c = (0u32..)
            .find(|c| !used[u].contains(c) && !used[v].contains(c))
            .expect("unbounded range");
        used[u].insert(c);
        used[v].insert(c);
        triples.push((u, v, c));
    }
    let colouring = EdgeColouring::new(graph, triples).expect("greedy covers every edge");
    assert!(colouring.is_proper());
    colouring
}

/// `Q_d` with every edge coloured by the coordinate in which its endpoints
/// differ (colour `i - 1` for coordinate `i`).
pub fn direction_colouring(d: u32) -> Result<(Graph, EdgeColouring)> {
    let g = hypercube(d)?;
    let triples: Vec<_> = g
        .edges()
        .map(|(u, v)| {
            let bit = (u ^ v).trailing_zeros();
            (u, v, d - 1 - bit)
        })
        .collect();
    let c = EdgeColouring::new(&g, triples)?;
    Ok((g, c))
}
