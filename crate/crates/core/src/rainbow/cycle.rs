use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::error::{input, Result};
use crate::graph::{EdgeColouring, Graph};
use crate::scalar::{rational, Rational};

/// A closed walk `u_0 u_1 … u_{L-1} u_0` of length `L ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HomCycle {
    vertices: Vec<usize>,
}

impl HomCycle {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        let len = vertices.len();
        if len < 2 {
            return input(format!("a homomorphic cycle needs length >= 2 (got {len})"));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
            return input(format!("vertex {v} outside the host"));
        }
        for t in 0..len {
            let (a, b) = (vertices[t], vertices[(t + 1) % len]);
            if !g.has_edge(a, b) {
                return input(format!("{a} and {b} are not adjacent"));
            }
        }
        Ok(HomCycle { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges `u_t u_{t+1}` for `t = 0..L`, indices modulo `L`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.len();
        (0..len).map(move |t| (self.vertices[t], self.vertices[(t + 1) % len]))
    }

    /// `1 / Π d(u_t)`.
    pub fn weight(&self, g: &Graph) -> Rational {
        self.vertices
            .iter()
            .fold(Rational::one(), |w, &v| w * rational(1, g.degree(v) as i64))
    }

    /// No repeated vertex. A length-2 cycle counts as simple.
    pub fn is_simple(&self) -> bool {
        let set: BTreeSet<usize> = self.vertices.iter().copied().collect();
        set.len() == self.len()
    }

    pub fn colours(&self, g: &Graph, c: &EdgeColouring) -> Vec<u32> {
        self.edges()
            .map(|(a, b)| c.colour(g, a, b).expect("cycle edges exist"))
            .collect()
    }

    pub fn distinct_colours(&self, g: &Graph, c: &EdgeColouring) -> usize {
        self.colours(g, c).into_iter().collect::<BTreeSet<_>>().len()
    }
}

/// Splits a homomorphic cycle at its first repeated vertex, recursively,
/// until every piece is a simple cycle or a 2-cycle. For the first `i` with
/// a later repeat `u_j = u_i` (smallest such `j`), the pieces of
/// `(u_i … u_{j-1})` come first, then those of `(u_0 … u_i, u_{j+1} …)`.
pub fn decompose_hom_cycle(cycle: &HomCycle) -> Vec<HomCycle> {
    let u = &cycle.vertices;
    let repeat = (0..u.len()).find_map(|i| (i + 1..u.len()).find(|&j| u[j] == u[i]).map(|j| (i, j)));
    let Some((i, j)) = repeat else {
        return vec![cycle.clone()];
    };
    let inner = HomCycle {
        vertices: u[i..j].to_vec(),
    };
    let outer = HomCycle {
        vertices: u[..=i].iter().chain(&u[j + 1..]).copied().collect(),
    };
    let mut pieces = decompose_hom_cycle(&inner);
    pieces.extend(decompose_hom_cycle(&outer));
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    fn hc(g: &Graph, v: &[usize]) -> HomCycle {
        HomCycle::new(g, v.to_vec()).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let k4 = complete(4);
        let simple = hc(&k4, &[0, 1, 2, 3]);
        assert_eq!(decompose_hom_cycle(&simple), vec![simple.clone()]);
        let back = hc(&k4, &[0, 1, 0, 1]);
        assert_eq!(decompose_hom_cycle(&back), vec![hc(&k4, &[0, 1]), hc(&k4, &[0, 1])]);
        let tail = hc(&k4, &[0, 1, 2, 1]);
        assert_eq!(decompose_hom_cycle(&tail), vec![hc(&k4, &[1, 2]), hc(&k4, &[0, 1])]);
    }

    #[test]
    fn validation_and_weight() {
        let c5 = cycle(5).unwrap();
        assert!(HomCycle::new(&c5, vec![0, 2]).is_err());
        assert!(HomCycle::new(&c5, vec![0]).is_err());
        assert_eq!(hc(&c5, &[0, 1, 2, 3, 4]).weight(&c5), rational(1, 32));
    }
}
