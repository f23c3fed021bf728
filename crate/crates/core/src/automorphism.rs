//! Automorphisms and involutions of small pattern graphs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{capability, input, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest pattern handled by the exhaustive automorphism search.
pub const MAX_AUTOMORPHISM_VERTICES: usize = 32;

/// A vertex permutation preserving adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Automorphism {
    perm: Vec<usize>,
    #[serde(skip)]
    involution: bool,
}

impl TryFrom<Vec<usize>> for Automorphism {
    type Error = String;

    fn try_from(perm: Vec<usize>) -> std::result::Result<Self, String> {
        if !is_permutation(&perm) {
            return Err("image array is not a permutation".into());
        }
        Ok(Automorphism::from_perm_unchecked(perm))
    }
}

impl From<Automorphism> for Vec<usize> {
    fn from(a: Automorphism) -> Self {
        a.perm
    }
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter()
        .all(|&p| p < perm.len() && !std::mem::replace(&mut seen[p], true))
}

impl Automorphism {
    /// Validates that `perm` is a bijection of `V(h)` preserving adjacency.
    pub fn new(h: &Graph, perm: Vec<usize>) -> Result<Self> {
        if perm.len() != h.n() || !is_permutation(&perm) {
            return input(format!("{perm:?} is not a permutation of 0..{}", h.n()));
        }
        if !h.edges().all(|(u, v)| h.has_edge(perm[u], perm[v])) {
            return input(format!("{perm:?} does not preserve adjacency"));
        }
        Ok(Self::from_perm_unchecked(perm))
    }

    pub(crate) fn from_perm_unchecked(perm: Vec<usize>) -> Self {
        let involution = perm.iter().enumerate().all(|(v, &p)| perm[p] == v);
        Automorphism { perm, involution }
    }

    /// Re-checks adjacency preservation against `h`.
    pub fn is_automorphism_of(&self, h: &Graph) -> bool {
        self.perm.len() == h.n() && h.edges().all(|(u, v)| h.has_edge(self.perm[u], self.perm[v]))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_perm_unchecked((0..n).collect())
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn is_involution(&self) -> bool {
        self.involution
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(v, &p)| v == p)
    }

    /// Fixed points `{v : φ(v) = v}`.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.perm.len()).filter(|&v| self.perm[v] == v).collect()
    }

    /// Fixed points as a pattern vertex set (requires at most 64 vertices).
    pub fn fixed_set(&self) -> VertexSet {
        self.fixed_points().into_iter().collect()
    }

    pub fn map_set(&self, s: VertexSet) -> VertexSet {
        s.map(&self.perm)
    }

    /// `self ∘ other`, i.e. `v ↦ self(other(v))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Self::from_perm_unchecked(other.perm.iter().map(|&v| self.perm[v]).collect())
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.perm.len()];
        for (v, &p) in self.perm.iter().enumerate() {
            inv[p] = v;
        }
        Self::from_perm_unchecked(inv)
    }

    /// `σ ∘ self ∘ σ⁻¹`.
    pub fn conjugate_by(&self, sigma: &Automorphism) -> Automorphism {
        sigma.compose(self).compose(&sigma.inverse())
    }

    /// Image array as decimal, space separated.
    pub fn to_image_string(&self) -> String {
        self.perm
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Vertex invariant used to prune candidate images: degree followed by the
/// sorted degrees of the neighbours.
fn signatures(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|v| {
            let mut sig: Vec<usize> = g.neighbours(v).iter().map(|&w| g.degree(w)).collect();
            sig.sort_unstable();
            sig.insert(0, g.degree(v));
            sig
        })
        .collect()
}

/// Visiting order in which each vertex (after the first of its component) has
/// an earlier neighbour.
fn search_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct Matcher<'a> {
    from: &'a Graph,
    to: &'a Graph,
    order: Vec<usize>,
    sig_from: Vec<Vec<usize>>,
    sig_to: Vec<Vec<usize>>,
}

impl<'a> Matcher<'a> {
    fn new(from: &'a Graph, to: &'a Graph) -> Self {
        Matcher {
            from,
            to,
            order: search_order(from),
            sig_from: signatures(from),
            sig_to: signatures(to),
        }
    }

    fn consistent(&self, image: &[usize], depth: usize, w: usize) -> bool {
        let v = self.order[depth];
        if self.sig_from[v] != self.sig_to[w] {
            return false;
        }
        self.order[..depth]
            .iter()
            .all(|&u| self.from.has_edge(u, v) == self.to.has_edge(image[u], w))
    }

    /// Extends the partial map; `sink` returns `false` to stop the search.
    fn extend(
        &self,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
        sink: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return sink(image);
        }
        let v = self.order[depth];
        for w in 0..self.to.n() {
            if used[w] || !self.consistent(image, depth, w) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            let go_on = self.extend(image, used, depth + 1, sink);
            used[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    fn all_from_root(&self, root_image: usize) -> Vec<Vec<usize>> {
        let n = self.from.n();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut found = Vec::new();
        if !self.consistent(&image, 0, root_image) {
            return found;
        }
        image[self.order[0]] = root_image;
        used[root_image] = true;
        self.extend(&mut image, &mut used, 1, &mut |img| {
            found.push(img.to_vec());
            true
        });
        found
    }
}

fn check_cap(h: &Graph) -> Result<()> {
    if h.n() > MAX_AUTOMORPHISM_VERTICES {
        return capability(format!(
            "pattern has {} vertices; automorphism search is capped at {MAX_AUTOMORPHISM_VERTICES}",
            h.n()
        ));
    }
    Ok(())
}

/// The full automorphism group, sorted lexicographically by image array.
pub fn enumerate_automorphisms(h: &Graph) -> Result<Vec<Automorphism>> {
    check_cap(h)?;
    if h.n() == 0 {
        return Ok(vec![Automorphism::identity(0)]);
    }
    let m = Matcher::new(h, h);
    let mut perms: Vec<Vec<usize>> = (0..h.n())
        .into_par_iter()
        .flat_map_iter(|w| m.all_from_root(w))
        .collect();
    perms.sort();
    Ok(perms
        .into_iter()
        .map(Automorphism::from_perm_unchecked)
        .collect())
}

/// Non-identity automorphisms that are their own inverse.
pub fn enumerate_involutions(h: &Graph) -> Result<Vec<Automorphism>> {
    Ok(enumerate_automorphisms(h)?
        .into_iter()
        .filter(|a| a.is_involution() && !a.is_identity())
        .collect())
}

/// Some isomorphism `from → to` as an image array, if one exists.
pub fn find_isomorphism(from: &Graph, to: &Graph) -> Result<Option<Vec<usize>>> {
    check_cap(from)?;
    if from.n() != to.n() || from.edge_count() != to.edge_count() {
        return Ok(None);
    }
    if from.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    let m = Matcher::new(from, to);
    let mut image = vec![usize::MAX; from.n()];
    let mut used = vec![false; to.n()];
    let mut result = None;
    m.extend(&mut image, &mut used, 0, &mut |img| {
        result = Some(img.to_vec());
        false
    });
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hypercube, set_graph};

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(enumerate_automorphisms(&complete(2)).unwrap().len(), 2);
        assert_eq!(enumerate_automorphisms(&cycle(6).unwrap()).unwrap().len(), 12);
        for d in 1..=4u32 {
            let q = hypercube(d).unwrap();
            let group = enumerate_automorphisms(&q).unwrap();
            assert_eq!(group.len(), (1 << d) * factorial(d as usize));
        }
    }

    #[test]
    fn group_contains_identity_and_is_closed() {
        let q = hypercube(3).unwrap();
        let group = enumerate_automorphisms(&q).unwrap();
        assert!(group.contains(&Automorphism::identity(8)));
        for a in group.iter().step_by(7) {
            for b in group.iter().step_by(5) {
                assert!(group.binary_search(&a.compose(b)).is_ok());
            }
            assert!(group.binary_search(&a.inverse()).is_ok());
        }
    }

    #[test]
    fn k2_swap_is_the_only_involution() {
        let inv = enumerate_involutions(&complete(2)).unwrap();
        assert_eq!(inv.len(), 1);
        assert!(inv[0].fixed_points().is_empty());
    }

    #[test]
    fn q3_coordinate_swap_fixes_four_vertices() {
        let q = hypercube(3).unwrap();
        // abc -> bac
        let perm: Vec<usize> = (0..8)
            .map(|x| {
                let (a, b, c) = ((x >> 2) & 1, (x >> 1) & 1, x & 1);
                (b << 2) | (a << 1) | c
            })
            .collect();
        let phi = Automorphism::new(&q, perm).unwrap();
        assert!(phi.is_involution());
        let fixed: Vec<String> = phi.fixed_points().iter().map(|&v| q.label(v)).collect();
        assert_eq!(fixed, vec!["000", "001", "110", "111"]);
        assert!(enumerate_involutions(&q).unwrap().contains(&phi));
    }

    #[test]
    fn identity_fixes_everything() {
        assert_eq!(Automorphism::identity(5).fixed_points(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let c = cycle(4).unwrap();
        assert!(Automorphism::new(&c, vec![0, 2, 1, 3]).is_err());
        assert!(Automorphism::new(&c, vec![0, 0, 1, 2]).is_err());
        assert!(Automorphism::new(&c, vec![1, 2, 3, 0]).is_ok());
    }

    #[test]
    fn set_graph_1_3_is_a_hexagon() {
        let h = set_graph(1, 3).unwrap();
        let iso = find_isomorphism(&h, &cycle(6).unwrap()).unwrap().unwrap();
        let c6 = cycle(6).unwrap();
        for (u, v) in h.edges() {
            assert!(c6.has_edge(iso[u], iso[v]));
        }
        assert!(find_isomorphism(&h, &hypercube(2).unwrap()).unwrap().is_none());
    }

    #[test]
    fn size_cap() {
        assert!(enumerate_automorphisms(&cycle(33).unwrap()).is_err());
    }
}
