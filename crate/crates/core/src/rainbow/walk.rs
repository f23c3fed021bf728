use rayon::prelude::*;

use crate::error::{capability, input, Result};
use crate::graph::{EdgeColouring, Graph};
use crate::scalar::{Rational, Weight};

/// Host size limit of the colour-indexed pattern DP.
pub const MAX_PATTERN_HOST: usize = 80;
/// Largest half-length `k` for the pattern DP.
pub const MAX_PATTERN_HALF_LENGTH: usize = 8;
/// Host size limit of the plain `h_{2k}` DP.
pub const MAX_WALK_HOST: usize = 4096;
pub const MAX_HALF_LENGTH: usize = 64;

pub(crate) fn require_min_degree(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return input("host has no vertices");
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return input(format!("vertex {v} is isolated, so walk weights are undefined"));
    }
    Ok(())
}

fn inverse_degrees<T: Weight>(g: &Graph) -> Vec<T> {
    (0..g.n()).map(|v| T::ratio(1, g.degree(v) as u64)).collect()
}

/// One walk step: `out(y) = Σ_{x ~ y} v(x) · (1/d(x) if divide)`.
fn step<T: Weight>(g: &Graph, inv: &[T], v: &[T], divide: bool) -> Vec<T> {
    let mut out = vec![T::zero(); g.n()];
    for (x, vx) in v.iter().enumerate() {
        if vx.is_zero() {
            continue;
        }
        let w = if divide { mul(vx, &inv[x]) } else { vx.clone() };
        for &y in g.neighbours(x) {
            out[y] += &w;
        }
    }
    out
}

fn mul<T: Weight>(a: &T, b: &T) -> T {
    let mut x = a.clone();
    x *= b;
    x
}

fn unit<T: Weight>(n: usize, v: usize) -> Vec<T> {
    let mut e = vec![T::zero(); n];
    e[v] = T::one();
    e
}

/// Walk sums from one start vertex `u_0` over walks of length `k`, each walk
/// weighted by `1/Π d(u_t)` over its interior vertices `u_1 … u_{k-1}`.
///
/// `coloured[ℓ-1][R]` restricts to walks whose `ℓ`-th step `u_{ℓ-1} u_ℓ`
/// has colour index `R`; entry `ℓ = 1` is the first-step table.
#[derive(Clone, Debug)]
pub struct WalkTable<T> {
    start: usize,
    plain: Vec<T>,
    coloured: Vec<Vec<Option<Vec<T>>>>,
}

/// Colours renumbered `0..palette.len()`, aligned with neighbour lists.
#[derive(Clone, Debug)]
pub struct ColourIndex {
    palette: Vec<u32>,
    incident: Vec<Vec<usize>>,
}

impl ColourIndex {
    pub fn new(g: &Graph, c: &EdgeColouring) -> Self {
        let palette = c.palette();
        let incident = (0..g.n())
            .map(|u| {
                c.incident(u)
                    .iter()
                    .map(|col| palette.binary_search(col).expect("colour in palette"))
                    .collect()
            })
            .collect();
        ColourIndex { palette, incident }
    }

    /// Colour index of the edge from `u` to its `i`-th neighbour.
    pub fn incident_index(&self, u: usize, i: usize) -> usize {
        self.incident[u][i]
    }

    pub fn palette(&self) -> &[u32] {
        &self.palette
    }

    pub fn len(&self) -> usize {
        self.palette.len()
    }

    pub fn is_empty(&self) -> bool {
        self.palette.is_empty()
    }
}

impl<T: Weight> WalkTable<T> {
    pub fn build(g: &Graph, colours: &ColourIndex, k: usize, start: usize) -> Self {
        let inv = inverse_degrees::<T>(g);
        Self::build_with(g, &inv, colours, k, start)
    }

    fn build_with(g: &Graph, inv: &[T], colours: &ColourIndex, k: usize, start: usize) -> Self {
        let n = g.n();
        // prefix[t] = walk sums after t steps, unconstrained.
        let mut prefix = vec![unit::<T>(n, start)];
        for t in 0..k {
            let next = step(g, inv, &prefix[t], t > 0);
            prefix.push(next);
        }
        let mut coloured = Vec::with_capacity(k);
        for l in 1..=k {
            let prev = &prefix[l - 1];
            let mut split: Vec<Option<Vec<T>>> = vec![None; colours.len()];
            for (x, vx) in prev.iter().enumerate() {
                if vx.is_zero() {
                    continue;
                }
                let w = if l > 1 { mul(vx, &inv[x]) } else { vx.clone() };
                for (i, &y) in g.neighbours(x).iter().enumerate() {
                    let r = colours.incident[x][i];
                    split[r].get_or_insert_with(|| vec![T::zero(); n])[y] += &w;
                }
            }
            for v in split.iter_mut().flatten() {
                for _ in l..k {
                    *v = step(g, inv, v, true);
                }
            }
            coloured.push(split);
        }
        let plain = prefix.pop().expect("k + 1 entries");
        WalkTable {
            start,
            plain,
            coloured,
        }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Unconstrained walk sums to each end vertex.
    pub fn plain(&self) -> &[T] {
        &self.plain
    }

    /// `α̃(u_0, ·, R)` for step `l` (1-based); `None` when no such walk exists.
    pub fn alpha(&self, l: usize, colour: usize) -> Option<&[T]> {
        self.coloured[l - 1][colour].as_deref()
    }

    /// `β̃(u_0, ·, R)`: walks whose first step has colour `R`.
    pub fn beta(&self, colour: usize) -> Option<&[T]> {
        self.alpha(1, colour)
    }
}

fn check_half_length(k: usize, max: usize) -> Result<()> {
    if k == 0 {
        return input("half-length k must be at least 1");
    }
    if k > max {
        return capability(format!("half-length {k} exceeds {max}"));
    }
    Ok(())
}

/// `h_{2k}`: total weight of homomorphic `2k`-cycles, as
/// `Σ_{u,v} P_k(u,v)² / (d(u) d(v))` with `P_k` the interior-weighted walk sums.
pub fn h2k<T: Weight>(g: &Graph, k: usize) -> Result<T> {
    require_min_degree(g)?;
    check_half_length(k, MAX_HALF_LENGTH)?;
    if g.n() > MAX_WALK_HOST {
        return capability(format!("host has {} vertices; the walk limit is {MAX_WALK_HOST}", g.n()));
    }
    let inv = inverse_degrees::<T>(g);
    let total = (0..g.n())
        .into_par_iter()
        .map(|u| {
            let mut f = unit::<T>(g.n(), u);
            for t in 0..k {
                f = step(g, &inv, &f, t > 0);
            }
            let mut s = T::zero();
            for (v, fv) in f.iter().enumerate() {
                if !fv.is_zero() {
                    s += mul(&mul(fv, fv), &inv[v]);
                }
            }
            s *= &inv[u];
            s
        })
        .reduce(T::zero, |a, b| a + b);
    Ok(total)
}

pub fn h2k_exact(g: &Graph, k: usize) -> Result<Rational> {
    h2k::<Rational>(g, k)
}

/// Canonical class of the pair `(i, j)`: `min(j - i, 2k - (j - i))`.
pub fn pattern_class(k: usize, i: usize, j: usize) -> Result<usize> {
    if !(1 <= i && i < j && j <= 2 * k) {
        return input(format!("need 1 <= i < j <= 2k (got i={i}, j={j}, k={k})"));
    }
    let s = j - i;
    Ok(s.min(2 * k - s))
}

/// Number of pairs `i < j` in class `l`.
pub fn class_multiplicity(k: usize, l: usize) -> usize {
    if l == k {
        k
    } else {
        2 * k
    }
}

/// `h_{2k}` with every coincidence value `h_{2k}(ℓ, 2k)`, `ℓ = 1..k`; by
/// rotation invariance these determine every `h_{2k}(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternValues<T> {
    pub k: usize,
    pub total: T,
    /// Index `ℓ - 1`.
    pub classes: Vec<T>,
}

impl<T: Weight> PatternValues<T> {
    pub fn value(&self, i: usize, j: usize) -> Result<T> {
        Ok(self.classes[pattern_class(self.k, i, j)? - 1].clone())
    }

    /// `h_{2k}(1, 2k)`.
    pub fn extremal(&self) -> &T {
        &self.classes[0]
    }

    /// `Σ_{1 ≤ i < j ≤ 2k} h_{2k}(i, j)`.
    pub fn pair_sum(&self) -> T {
        let mut s = T::zero();
        for (idx, v) in self.classes.iter().enumerate() {
            s += mul(v, &T::ratio(class_multiplicity(self.k, idx + 1) as u64, 1));
        }
        s
    }
}

/// All coincidence classes for one `k`, summing `α̃ β̃ / (d(u_0) d(u_k))` over
/// start vertex, end vertex and colour.
pub fn h2k_patterns<T: Weight>(g: &Graph, c: &EdgeColouring, k: usize) -> Result<PatternValues<T>> {
    require_min_degree(g)?;
    check_half_length(k, MAX_PATTERN_HALF_LENGTH)?;
    if g.n() > MAX_PATTERN_HOST {
        return capability(format!(
            "host has {} vertices; the pattern limit is {MAX_PATTERN_HOST}",
            g.n()
        ));
    }
    let colours = ColourIndex::new(g, c);
    let inv = inverse_degrees::<T>(g);
    let zero = || (T::zero(), vec![T::zero(); k]);
    let (total, classes) = (0..g.n())
        .into_par_iter()
        .map(|u| {
            let table = WalkTable::build_with(g, &inv, &colours, k, u);
            let mut total = T::zero();
            for (v, p) in table.plain.iter().enumerate() {
                if !p.is_zero() {
                    total += mul(&mul(p, p), &inv[v]);
                }
            }
            let mut classes = vec![T::zero(); k];
            for (l, slot) in classes.iter_mut().enumerate() {
                for r in 0..colours.len() {
                    let (Some(a), Some(b)) = (table.alpha(l + 1, r), table.beta(r)) else {
                        continue;
                    };
                    for v in 0..g.n() {
                        if !a[v].is_zero() && !b[v].is_zero() {
                            *slot += mul(&mul(&a[v], &b[v]), &inv[v]);
                        }
                    }
                }
                *slot *= &inv[u];
            }
            total *= &inv[u];
            (total, classes)
        })
        .reduce(zero, |(t1, c1), (t2, c2)| {
            (t1 + t2, c1.into_iter().zip(c2).map(|(a, b)| a + b).collect())
        });
    Ok(PatternValues { k, total, classes })
}

pub fn h2k_pattern<T: Weight>(g: &Graph, c: &EdgeColouring, k: usize, i: usize, j: usize) -> Result<T> {
    pattern_class(k, i, j)?;
    h2k_patterns::<T>(g, c, k)?.value(i, j)
}

pub fn h2k_pattern_exact(g: &Graph, c: &EdgeColouring, k: usize, i: usize, j: usize) -> Result<Rational> {
    h2k_pattern::<Rational>(g, c, k, i, j)
}
