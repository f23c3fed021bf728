use rayon::prelude::*;

use crate::error::{capability, input, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Exact homomorphism counts.
pub type HomCount = u128;

pub const MAX_HOM_PATTERN_VERTICES: usize = 16;
pub const MAX_INJECTIVE_PATTERN_VERTICES: usize = 10;

/// `H/R`: the vertices of `R` merged into one (placed at the position of the
/// smallest), parallel edges collapsed. `R` must be independent.
pub fn quotient(h: &Graph, r: VertexSet) -> Result<Graph> {
    if !r.to_vec().iter().all(|&v| v < h.n()) {
        return input(format!("constraint {r} has vertices outside the pattern"));
    }
    if let Some((u, v)) = h.edges().find(|&(u, v)| r.contains(u) && r.contains(v)) {
        return input(format!("constraint {r} contains the edge {u}-{v}"));
    }
    let Some(root) = r.first() else {
        return Ok(h.clone());
    };
    let mut index = vec![0; h.n()];
    let mut next = 0;
    for (v, slot) in index.iter_mut().enumerate() {
        if r.contains(v) && v != root {
            continue;
        }
        *slot = next;
        next += 1;
    }
    for v in r.iter() {
        index[v] = index[root];
    }
    Graph::new(next, h.edges().map(|(u, v)| (index[u], index[v])))
}

/// `hom(H, G; R)`: homomorphisms sending every vertex of `R` to one vertex.
pub fn hom_count(h: &Graph, g: &Graph, r: Option<VertexSet>) -> Result<HomCount> {
    if h.n() > MAX_HOM_PATTERN_VERTICES {
        return capability(format!(
            "pattern has {} vertices; the counting limit is {MAX_HOM_PATTERN_VERTICES}",
            h.n()
        ));
    }
    let q;
    let h = match r {
        Some(r) if r.len() > 1 => {
            q = quotient(h, r)?;
            &q
        }
        Some(r) => {
            quotient(h, r)?;
            h
        }
        None => h,
    };
    check_overflow(h.n(), g.n())?;
    Ok(match Bipartite::plan(h) {
        Some(plan) => plan.count(g),
        None => general_count(h, g, false),
    })
}

/// Number of injective homomorphisms `H → G`.
pub fn injective_hom_count(h: &Graph, g: &Graph) -> Result<HomCount> {
    if h.n() > MAX_INJECTIVE_PATTERN_VERTICES {
        return capability(format!(
            "pattern has {} vertices; the injective limit is {MAX_INJECTIVE_PATTERN_VERTICES}",
            h.n()
        ));
    }
    check_overflow(h.n(), g.n())?;
    Ok(match Bipartite::plan(h) {
        Some(plan) => plan.count_injective(g),
        None => general_count(h, g, true),
    })
}

fn check_overflow(v: usize, n: usize) -> Result<()> {
    let fits = u32::try_from(v)
        .ok()
        .and_then(|v| (n as u128).checked_pow(v))
        .is_some();
    if fits {
        Ok(())
    } else {
        capability(format!("{n}^{v} maps overflow the 128-bit counter"))
    }
}

/// Size of `∩ rows(imgs) \ excluded` (all vertices when `imgs` is empty).
fn common(g: &Graph, imgs: impl Iterator<Item = usize> + Clone, excluded: &[u64]) -> u32 {
    let words = g.row_words();
    let mut total = 0;
    for w in 0..words {
        let mut acc = full_word(g.n(), w);
        for u in imgs.clone() {
            acc &= g.row(u)[w];
        }
        if let Some(&x) = excluded.get(w) {
            acc &= !x;
        }
        total += acc.count_ones();
    }
    total
}

fn full_word(n: usize, w: usize) -> u64 {
    let lo = w * 64;
    if n >= lo + 64 {
        u64::MAX
    } else if n <= lo {
        0
    } else {
        (1u64 << (n - lo)) - 1
    }
}

/// Counting plan for a bipartite pattern: the smaller part `X` is assigned
/// explicitly; each vertex `y` of the other part contributes the size of the
/// common neighbourhood of its images once all its neighbours are placed.
struct Bipartite {
    /// Order in which `X` is assigned.
    x: Vec<usize>,
    /// For each depth, the `y` vertices completed there, as positions in `x`.
    done_at: Vec<Vec<Vec<usize>>>,
    /// Every `y` as positions in `x`, in a fixed order.
    ys: Vec<Vec<usize>>,
    /// `y` vertices without neighbours.
    free_y: u32,
}

impl Bipartite {
    fn plan(h: &Graph) -> Option<Self> {
        let side = h.bipartition()?;
        let part = |s: u8| (0..h.n()).filter(|&v| side[v] == s).collect::<Vec<_>>();
        let (mut xs, ys) = (part(0), part(1));
        let (xs_all, ys_all) = if xs.len() <= ys.len() { (std::mem::take(&mut xs), ys) } else { (ys, xs) };

        // Greedy order: next x completes the most y vertices.
        let mut order = Vec::new();
        let mut placed = VertexSet::EMPTY;
        let mut remaining = xs_all;
        let nbhd = |y: usize| h.neighbours(y).iter().copied().collect::<VertexSet>();
        while !remaining.is_empty() {
            let best = remaining
                .iter()
                .enumerate()
                .max_by_key(|&(_, &x)| {
                    let with = placed.union(VertexSet::singleton(x));
                    let done = ys_all
                        .iter()
                        .filter(|&&y| !h.neighbours(y).is_empty() && nbhd(y).is_subset(with))
                        .count();
                    (done, std::cmp::Reverse(x))
                })
                .map(|(i, _)| i)
                .expect("non-empty");
            let x = remaining.remove(best);
            placed.insert(x);
            order.push(x);
        }
        let pos = |v: usize| order.iter().position(|&x| x == v).expect("neighbour lies in X");
        let mut done_at = vec![Vec::new(); order.len()];
        let mut ys = Vec::new();
        let mut free_y = 0;
        for &y in &ys_all {
            let nb: Vec<usize> = h.neighbours(y).iter().map(|&v| pos(v)).collect();
            match nb.iter().max() {
                Some(&last) => done_at[last].push(nb.clone()),
                None => free_y += 1,
            }
            ys.push(nb);
        }
        Some(Bipartite {
            x: order,
            done_at,
            ys,
            free_y,
        })
    }

    fn count(&self, g: &Graph) -> HomCount {
        if self.x.is_empty() {
            return (g.n() as u128).pow(self.free_y);
        }
        let total: u128 = (0..g.n())
            .into_par_iter()
            .map(|v| {
                let mut assign = vec![0; self.x.len()];
                assign[0] = v;
                match self.factor(g, 0, &assign) {
                    0 => 0,
                    f => f * self.rec(g, 1, &mut assign),
                }
            })
            .sum();
        total * (g.n() as u128).pow(self.free_y)
    }

    fn factor(&self, g: &Graph, depth: usize, assign: &[usize]) -> u128 {
        let mut f = 1u128;
        for nb in &self.done_at[depth] {
            let c = common(g, nb.iter().map(|&i| assign[i]), &[]);
            if c == 0 {
                return 0;
            }
            f *= c as u128;
        }
        f
    }

    fn rec(&self, g: &Graph, depth: usize, assign: &mut [usize]) -> u128 {
        if depth == self.x.len() {
            return 1;
        }
        let mut total = 0;
        for v in 0..g.n() {
            assign[depth] = v;
            let f = self.factor(g, depth, assign);
            if f != 0 {
                total += f * self.rec(g, depth + 1, assign);
            }
        }
        total
    }

    fn count_injective(&self, g: &Graph) -> HomCount {
        let partitions = weighted_partitions(self.ys.len());
        let words = g.row_words().max(1);
        if self.x.is_empty() {
            let total = self.leaf_injective(g, &[], &vec![0; words], &partitions);
            return u128::try_from(total).expect("injective count is non-negative");
        }
        let total: i128 = (0..g.n())
            .into_par_iter()
            .map(|v| {
                let mut assign = vec![0; self.x.len()];
                let mut used = vec![0u64; words];
                self.rec_injective(g, 0, v, &mut assign, &mut used, &partitions)
            })
            .sum();
        u128::try_from(total).expect("injective count is non-negative")
    }

    fn rec_injective(
        &self,
        g: &Graph,
        depth: usize,
        v: usize,
        assign: &mut [usize],
        used: &mut [u64],
        partitions: &[(Vec<u32>, i128)],
    ) -> i128 {
        if depth == self.x.len() {
            return self.leaf_injective(g, assign, used, partitions);
        }
        if used[v / 64] >> (v % 64) & 1 == 1 {
            return 0;
        }
        assign[depth] = v;
        used[v / 64] |= 1 << (v % 64);
        let pruned = self.done_at[depth]
            .iter()
            .any(|nb| common(g, nb.iter().map(|&i| assign[i]), used) == 0);
        let mut total = 0;
        if !pruned {
            if depth + 1 == self.x.len() {
                total = self.leaf_injective(g, assign, used, partitions);
            } else {
                for w in 0..g.n() {
                    total += self.rec_injective(g, depth + 1, w, assign, used, partitions);
                }
            }
        }
        used[v / 64] &= !(1 << (v % 64));
        total
    }

    /// Injective extensions to `Y` avoiding `used`, by Möbius inversion over
    /// set partitions of `Y`.
    fn leaf_injective(
        &self,
        g: &Graph,
        assign: &[usize],
        used: &[u64],
        partitions: &[(Vec<u32>, i128)],
    ) -> i128 {
        let m = self.ys.len();
        let words = used.len();
        let cands: Vec<Vec<u64>> = self
            .ys
            .iter()
            .map(|nb| {
                (0..words)
                    .map(|w| {
                        let mut acc = full_word(g.n(), w);
                        for &i in nb {
                            acc &= g.row(assign[i])[w];
                        }
                        acc & !used[w]
                    })
                    .collect()
            })
            .collect();
        // Common-candidate sizes for every subset of Y.
        let mut sizes = vec![0i128; 1 << m];
        let mut inter = vec![vec![0u64; words]; 1 << m];
        for w in 0..words {
            inter[0][w] = full_word(g.n(), w) & !used[w];
        }
        sizes[0] = inter[0].iter().map(|x| x.count_ones() as i128).sum();
        for s in 1usize..(1 << m) {
            let low = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            let row: Vec<u64> = (0..words).map(|w| inter[rest][w] & cands[low][w]).collect();
            sizes[s] = row.iter().map(|x| x.count_ones() as i128).sum();
            inter[s] = row;
        }
        partitions
            .iter()
            .map(|(blocks, coeff)| coeff * blocks.iter().map(|&b| sizes[b as usize]).product::<i128>())
            .sum()
    }
}

/// Set partitions of `{0..m}` as block masks, with the Möbius weight
/// `Π (-1)^{|B|-1} (|B|-1)!`.
pub(crate) fn weighted_partitions(m: usize) -> Vec<(Vec<u32>, i128)> {
    let mut out = Vec::new();
    let mut blocks: Vec<u32> = Vec::new();
    fn go(i: usize, m: usize, blocks: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, i128)>) {
        if i == m {
            let coeff = blocks
                .iter()
                .map(|b| {
                    let s = b.count_ones() as i128;
                    let fact: i128 = (1..s).product();
                    if s % 2 == 1 { fact } else { -fact }
                })
                .product();
            out.push((blocks.clone(), coeff));
            return;
        }
        for j in 0..blocks.len() {
            blocks[j] |= 1 << i;
            go(i + 1, m, blocks, out);
            blocks[j] &= !(1 << i);
        }
        blocks.push(1 << i);
        go(i + 1, m, blocks, out);
        blocks.pop();
    }
    go(0, m, &mut blocks, &mut out);
    out
}

/// Backtracking over all pattern vertices in BFS order; candidates are the
/// common neighbourhood of already placed neighbours.
fn general_count(h: &Graph, g: &Graph, injective: bool) -> HomCount {
    if h.n() == 0 {
        return 1;
    }
    let order = bfs_order(h);
    let mut pos = vec![0; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let back: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| h.neighbours(v).iter().map(|&u| pos[u]).filter(|&p| p < pos[v]).collect())
        .collect();
    let words = g.row_words().max(1);
    (0..g.n())
        .into_par_iter()
        .map(|v| {
            let mut assign = vec![0; h.n()];
            let mut used = vec![0u64; words];
            assign[0] = v;
            used[v / 64] |= 1 << (v % 64);
            general_rec(g, &back, 1, &mut assign, &mut used, injective)
        })
        .sum()
}

fn general_rec(
    g: &Graph,
    back: &[Vec<usize>],
    depth: usize,
    assign: &mut [usize],
    used: &mut [u64],
    injective: bool,
) -> u128 {
    if depth == back.len() {
        return 1;
    }
    let mut total = 0;
    for w in 0..g.row_words() {
        let mut acc = full_word(g.n(), w);
        for &p in &back[depth] {
            acc &= g.row(assign[p])[w];
        }
        if injective {
            acc &= !used[w];
        }
        if depth + 1 == back.len() {
            total += acc.count_ones() as u128;
            continue;
        }
        while acc != 0 {
            let v = w * 64 + acc.trailing_zeros() as usize;
            acc &= acc - 1;
            assign[depth] = v;
            used[v / 64] |= 1 << (v % 64);
            total += general_rec(g, back, depth + 1, assign, used, injective);
            used[v / 64] &= !(1 << (v % 64));
        }
    }
    total
}

fn bfs_order(h: &Graph) -> Vec<usize> {
    let mut seen = vec![false; h.n()];
    let mut order = Vec::with_capacity(h.n());
    for s in 0..h.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for &u in h.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
            i += 1;
        }
    }
    order
}
