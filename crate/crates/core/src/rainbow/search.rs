use serde::Serialize;

use super::cycle::HomCycle;
use super::walk::ColourIndex;
use crate::error::{input, Result};
use crate::graph::{EdgeColouring, Graph};
use crate::scalar::{rational, Rational};
use num_traits::{One, Zero};

/// Default cap on DFS nodes expanded by the cycle finders.
pub const DEFAULT_CYCLE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CycleSearch {
    Found { cycle: HomCycle },
    /// Every simple cycle of length `3..=max_len` was examined.
    NoneExists { max_len: usize },
    BudgetExhausted { max_len: usize, explored: u64 },
}

impl CycleSearch {
    pub fn cycle(&self) -> Option<&HomCycle> {
        match self {
            CycleSearch::Found { cycle } => Some(cycle),
            _ => None,
        }
    }
}

struct Dfs<'a> {
    g: &'a Graph,
    colours: &'a ColourIndex,
    budget: u64,
    explored: u64,
    len: usize,
    /// Largest number of repeated-colour edges allowed on a cycle of length `len`.
    max_repeats: usize,
    path: Vec<usize>,
    on_path: Vec<bool>,
    counts: Vec<u32>,
    repeats: usize,
}

enum Step {
    Found,
    Exhausted,
    Continue,
}

impl Dfs<'_> {
    fn push_colour(&mut self, r: usize) {
        if self.counts[r] > 0 {
            self.repeats += 1;
        }
        self.counts[r] += 1;
    }

    fn pop_colour(&mut self, r: usize) {
        self.counts[r] -= 1;
        if self.counts[r] > 0 {
            self.repeats -= 1;
        }
    }

    fn extend(&mut self) -> Step {
        self.explored += 1;
        if self.explored > self.budget {
            return Step::Exhausted;
        }
        let start = self.path[0];
        let last = *self.path.last().expect("non-empty path");
        let nbrs = self.g.neighbours(last);
        if self.path.len() == self.len {
            if let Ok(i) = nbrs.binary_search(&start) {
                let r = self.colours.incident_index(last, i);
                self.push_colour(r);
                let ok = self.repeats <= self.max_repeats;
                self.pop_colour(r);
                if ok {
                    return Step::Found;
                }
            }
            return Step::Continue;
        }
        for (i, &next) in nbrs.iter().enumerate() {
            if next <= start || self.on_path[next] {
                continue;
            }
            let r = self.colours.incident_index(last, i);
            self.push_colour(r);
            if self.repeats <= self.max_repeats {
                self.path.push(next);
                self.on_path[next] = true;
                match self.extend() {
                    Step::Continue => {}
                    done => return done,
                }
                self.on_path[next] = false;
                self.path.pop();
            }
            self.pop_colour(r);
        }
        Step::Continue
    }
}

/// Iterative deepening over cycle length; each cycle is rooted at its
/// smallest vertex. `max_repeats(L)` bounds the repeated-colour edges.
fn search(
    g: &Graph,
    c: &EdgeColouring,
    max_len: usize,
    budget: u64,
    max_repeats: impl Fn(usize) -> Option<usize>,
) -> CycleSearch {
    let colours = ColourIndex::new(g, c);
    let mut explored = 0;
    let max_len = max_len.min(g.n());
    for len in 3..=max_len {
        let Some(max_repeats) = max_repeats(len) else {
            continue;
        };
        for start in 0..g.n() {
            let mut dfs = Dfs {
                g,
                colours: &colours,
                budget,
                explored,
                len,
                max_repeats,
                path: vec![start],
                on_path: vec![false; g.n()],
                counts: vec![0; colours.len()],
                repeats: 0,
            };
            dfs.on_path[start] = true;
            let step = dfs.extend();
            explored = dfs.explored;
            match step {
                Step::Found => {
                    let cycle = HomCycle::new(g, dfs.path).expect("search walks host edges");
                    return CycleSearch::Found { cycle };
                }
                Step::Exhausted => return CycleSearch::BudgetExhausted { max_len, explored },
                Step::Continue => {}
            }
        }
    }
    CycleSearch::NoneExists { max_len }
}

/// Shortest simple cycle of length at most `max_len` whose edges all have
/// distinct colours.
pub fn find_rainbow_cycle(g: &Graph, c: &EdgeColouring, max_len: usize, budget: u64) -> CycleSearch {
    search(g, c, max_len, budget, |_| Some(0))
}

pub(crate) fn check_epsilon(eps: &Rational) -> Result<()> {
    if !(eps > &Rational::zero() && eps < &rational(1, 2)) {
        return input(format!("epsilon must lie strictly between 0 and 1/2 (got {eps})"));
    }
    Ok(())
}

/// Whether a length-`len` cycle with `distinct` colours has more than
/// `(1 - ε) len` of them.
pub fn is_almost_rainbow_count(distinct: usize, len: usize, eps: &Rational) -> bool {
    let lhs = Rational::from_integer(distinct.into());
    let rhs = (Rational::one() - eps) * Rational::from_integer(len.into());
    lhs > rhs
}

/// Shortest simple cycle of length `L ≤ max_len` carrying more than
/// `(1 - ε) L` distinct colours.
pub fn find_almost_rainbow(
    g: &Graph,
    c: &EdgeColouring,
    eps: &Rational,
    max_len: usize,
    budget: u64,
) -> Result<CycleSearch> {
    check_epsilon(eps)?;
    Ok(search(g, c, max_len, budget, |len| {
        // distinct = len - repeats must exceed (1 - ε) len.
        (0..len).rev().find(|&r| is_almost_rainbow_count(len - r, len, eps))
    }))
}

/// Checks a returned cycle against the finder's contract.
pub fn verify_found_cycle(
    g: &Graph,
    c: &EdgeColouring,
    cycle: &HomCycle,
    eps: Option<&Rational>,
) -> bool {
    if cycle.len() < 3 || !cycle.is_simple() || HomCycle::new(g, cycle.vertices().to_vec()).is_err() {
        return false;
    }
    let distinct = cycle.distinct_colours(g, c);
    match eps {
        None => distinct == cycle.len(),
        Some(eps) => is_almost_rainbow_count(distinct, cycle.len(), eps),
    }
}
