use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::automorphism::{enumerate_involutions, Automorphism};
use crate::error::{capability, input, Result};
use crate::pattern::Pattern;
use crate::vertex_set::VertexSet;

use super::certificate::{CertificateStep, ReflectivityCertificate};
use super::triple::{triples_from_involutions, NiceTriple};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Largest part the search accepts.
pub const MAX_SEARCH_SIDE: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknownReason {
    /// The state budget ran out.
    BudgetExhausted,
    /// Every reachable state was explored without reaching the side. The
    /// search is not a refutation, so this is still only "unknown".
    SearchExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Certified(ReflectivityCertificate),
    Unknown { reason: UnknownReason, visited: usize },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&ReflectivityCertificate> {
        match self {
            SearchOutcome::Certified(c) => Some(c),
            SearchOutcome::Unknown { .. } => None,
        }
    }
}

/// Breadth-first search for a reflectivity certificate starting from `r0`.
pub fn certify_reflective(pattern: &Pattern, r0: VertexSet, budget: usize) -> Result<SearchOutcome> {
    let triples = triples_from_involutions(pattern, &enumerate_involutions(pattern.graph())?)?;
    let side = check_start(pattern, r0)?;
    Ok(search(&triples, r0, side, budget))
}

fn check_start(pattern: &Pattern, r0: VertexSet) -> Result<VertexSet> {
    let sides = pattern.require_connected_bipartite()?;
    if r0.len() != 2 {
        return input(format!("start set {r0} must have two vertices"));
    }
    let Some(i) = pattern.side_containing(r0)? else {
        return input(format!("start set {r0} meets both parts"));
    };
    if sides[i].len() > MAX_SEARCH_SIDE {
        return capability(format!(
            "part has {} vertices; the search limit is {MAX_SEARCH_SIDE}",
            sides[i].len()
        ));
    }
    Ok(sides[i])
}

struct State {
    set: VertexSet,
    parent: usize,
    triple: usize,
}

fn search(triples: &[NiceTriple], r0: VertexSet, side: VertexSet, budget: usize) -> SearchOutcome {
    let mut states = vec![State {
        set: r0,
        parent: usize::MAX,
        triple: usize::MAX,
    }];
    if r0 == side {
        return SearchOutcome::Certified(path(&states, triples, 0, side));
    }
    // Maximal visited sets; anything below one of them is dominated.
    let mut frontier_max = vec![r0];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let r = states[i].set;
        for (ti, t) in triples.iter().enumerate() {
            if !t.meets_both_sides(r) {
                continue;
            }
            let next = t.reflect(r);
            if frontier_max.iter().any(|&m| next.is_subset(m)) {
                continue;
            }
            if states.len() >= budget {
                return SearchOutcome::Unknown {
                    reason: UnknownReason::BudgetExhausted,
                    visited: states.len(),
                };
            }
            states.push(State {
                set: next,
                parent: i,
                triple: ti,
            });
            let id = states.len() - 1;
            if next == side {
                return SearchOutcome::Certified(path(&states, triples, id, side));
            }
            frontier_max.retain(|&m| !m.is_subset(next));
            frontier_max.push(next);
            queue.push_back(id);
        }
    }
    SearchOutcome::Unknown {
        reason: UnknownReason::SearchExhausted,
        visited: states.len(),
    }
}

fn path(states: &[State], triples: &[NiceTriple], end: usize, side: VertexSet) -> ReflectivityCertificate {
    let mut steps = Vec::new();
    let mut i = end;
    while states[i].parent != usize::MAX {
        steps.push(CertificateStep::new(&triples[states[i].triple], states[i].set));
        i = states[i].parent;
    }
    steps.reverse();
    ReflectivityCertificate {
        start: states[i].set,
        side,
        steps,
    }
}

/// Result of the search from one starting pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairOutcome {
    pub pair: VertexSet,
    pub side: usize,
    pub outcome: SearchOutcome,
    /// Obtained by transporting the certificate of the mirrored pair.
    pub by_symmetry: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AllPairsReport {
    pub outcomes: Vec<PairOutcome>,
}

impl AllPairsReport {
    /// True when every pair on both sides was certified.
    pub fn is_reflective(&self) -> bool {
        self.outcomes
            .iter()
            .all(|o| matches!(o.outcome, SearchOutcome::Certified(_)))
    }
}

fn pairs_of(set: VertexSet) -> Vec<VertexSet> {
    let v = set.to_vec();
    let mut out = Vec::new();
    for (i, &x) in v.iter().enumerate() {
        for &y in &v[i + 1..] {
            out.push([x, y].into_iter().collect());
        }
    }
    out
}

/// Runs the search from every pair on both sides. When some involution swaps
/// the two parts, the second side is covered by transporting certificates.
pub fn certify_all_pairs(pattern: &Pattern, budget: usize) -> Result<AllPairsReport> {
    let sides = pattern.require_connected_bipartite()?;
    for s in sides {
        if s.len() > MAX_SEARCH_SIDE {
            return capability(format!(
                "part has {} vertices; the search limit is {MAX_SEARCH_SIDE}",
                s.len()
            ));
        }
    }
    let involutions = enumerate_involutions(pattern.graph())?;
    let triples = triples_from_involutions(pattern, &involutions)?;
    let swap: Option<&Automorphism> = involutions.iter().find(|s| s.map_set(sides[0]) == sides[1]);

    let searched_sides: &[usize] = if swap.is_some() { &[0] } else { &[0, 1] };
    let jobs: Vec<(usize, VertexSet)> = searched_sides
        .iter()
        .flat_map(|&i| pairs_of(sides[i]).into_iter().map(move |p| (i, p)))
        .collect();
    let mut outcomes: Vec<PairOutcome> = jobs
        .par_iter()
        .map(|&(i, pair)| PairOutcome {
            pair,
            side: i,
            outcome: search(&triples, pair, sides[i], budget),
            by_symmetry: false,
        })
        .collect();
    if let Some(sigma) = swap {
        let mirrored: Vec<PairOutcome> = outcomes
            .iter()
            .map(|o| PairOutcome {
                pair: sigma.map_set(o.pair),
                side: 1,
                outcome: match &o.outcome {
                    SearchOutcome::Certified(c) => SearchOutcome::Certified(c.transport(sigma.perm())),
                    other => other.clone(),
                },
                by_symmetry: true,
            })
            .collect();
        outcomes.extend(mirrored);
        outcomes.sort_by_key(|o| (o.side, o.pair.to_vec()));
    }
    Ok(AllPairsReport { outcomes })
}
