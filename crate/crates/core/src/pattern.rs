use crate::error::{capability, input, Result};
use crate::graph::Graph;
use crate::vertex_set::{VertexSet, MAX_PATTERN_VERTICES};

/// A small pattern graph `H` with packed adjacency and its bipartition.
#[derive(Clone, Debug)]
pub struct Pattern {
    graph: Graph,
    adj: Vec<VertexSet>,
    sides: Option<[VertexSet; 2]>,
}

impl Pattern {
    pub fn new(graph: Graph) -> Result<Self> {
        if graph.n() > MAX_PATTERN_VERTICES {
            return capability(format!(
                "pattern has {} vertices; the limit is {MAX_PATTERN_VERTICES}",
                graph.n()
            ));
        }
        let adj = (0..graph.n())
            .map(|v| graph.neighbours(v).iter().copied().collect())
            .collect();
        let sides = graph.bipartition().map(|side| {
            let zero: VertexSet = (0..graph.n()).filter(|&v| side[v] == 0).collect();
            [zero, VertexSet::full(graph.n()).difference(zero)]
        });
        Ok(Pattern { graph, adj, sides })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Both parts of the bipartition, part `0` holding vertex `0`.
    pub fn sides(&self) -> Result<[VertexSet; 2]> {
        self.sides
            .ok_or_else(|| crate::Error::Input("pattern is not bipartite".into()))
    }

    /// Index of the part containing all of `set`, if there is one.
    pub fn side_containing(&self, set: VertexSet) -> Result<Option<usize>> {
        let sides = self.sides()?;
        Ok((0..2).find(|&i| set.is_subset(sides[i])))
    }

    /// Errors unless the pattern is connected and bipartite.
    pub fn require_connected_bipartite(&self) -> Result<[VertexSet; 2]> {
        if !self.graph.is_connected() {
            return input("pattern is not connected");
        }
        self.sides()
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(set))
    }

    /// Connected components of the subgraph induced on `within`.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut remaining = within;
        let mut out = Vec::new();
        while let Some(s) = remaining.first() {
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adj[v]);
                }
                next = next.intersection(within).difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            remaining = remaining.difference(comp);
            out.push(comp);
        }
        out
    }
}
