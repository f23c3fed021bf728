use num_traits::One;
use serde::Serialize;

use super::search::{check_epsilon, find_almost_rainbow, find_rainbow_cycle, verify_found_cycle, CycleSearch};
use super::walk::{h2k_exact, h2k_patterns, pattern_class, PatternValues};
use crate::error::{input, Result};
use crate::graph::{EdgeColouring, Graph};
use crate::scalar::{format_rational, rational, rational_to_f64, Rational, Weight};

/// One inequality `lhs ≤ rhs`, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    #[serde(with = "crate::scalar::serde_rational")]
    pub lhs: Rational,
    #[serde(with = "crate::scalar::serde_rational")]
    pub rhs: Rational,
    pub holds: bool,
    /// Only guaranteed when the host has no (almost-)rainbow cycle of
    /// length at most `2k`.
    pub conditional: bool,
}

impl InequalityCheck {
    fn new(name: impl Into<String>, lhs: Rational, rhs: Rational, conditional: bool) -> Self {
        let holds = lhs <= rhs;
        InequalityCheck {
            name: name.into(),
            lhs,
            rhs,
            holds,
            conditional,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PatternEntry {
    pub i: usize,
    pub j: usize,
    #[serde(with = "crate::scalar::serde_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", with = "crate::scalar::serde_rational::option")]
    pub epsilon: Option<Rational>,
    #[serde(with = "crate::scalar::serde_rational")]
    pub h2k: Rational,
    pub h2k_float: f64,
    /// `h_{2k-2}`, with `h_0 = n`.
    #[serde(with = "crate::scalar::serde_rational")]
    pub h2k_prev: Rational,
    /// Canonical patterns `(ℓ, 2k)` for `ℓ = 1..k`.
    pub patterns: Vec<PatternEntry>,
    pub inequalities: Vec<InequalityCheck>,
    /// Finder result, present when a conditional bound fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CycleSearch>,
    /// `witness` re-checked against the finder contract.
    pub cycles_found: Vec<super::HomCycle>,
}

impl ChainReport {
    pub fn unconditional_violations(&self) -> impl Iterator<Item = &InequalityCheck> {
        self.inequalities.iter().filter(|c| !c.conditional && !c.holds)
    }

    pub fn conditional_violations(&self) -> impl Iterator<Item = &InequalityCheck> {
        self.inequalities.iter().filter(|c| c.conditional && !c.holds)
    }

    pub fn unconditional_hold(&self) -> bool {
        self.unconditional_violations().next().is_none()
    }

    /// A conditional bound failed but the finder proved no qualifying cycle
    /// exists, which contradicts the theory and signals a bug.
    pub fn pipeline_contradiction(&self) -> bool {
        matches!(self.witness, Some(CycleSearch::NoneExists { .. }))
            || (self.witness.as_ref().and_then(CycleSearch::cycle).is_some() && self.cycles_found.is_empty())
    }

    pub fn budget_exhausted(&self) -> bool {
        matches!(self.witness, Some(CycleSearch::BudgetExhausted { .. }))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "k={} h2k={} h2k_float={} h2k_prev={}\n",
            self.k,
            format_rational(&self.h2k),
            crate::scalar::format_decimal(self.h2k_float),
            format_rational(&self.h2k_prev)
        );
        if let Some(eps) = &self.epsilon {
            out.push_str(&format!("epsilon={}\n", format_rational(eps)));
        }
        for p in &self.patterns {
            out.push_str(&format!("pattern ({},{}) = {}\n", p.i, p.j, format_rational(&p.value)));
        }
        for c in &self.inequalities {
            out.push_str(&format!(
                "{} [{}]: {} <= {} holds={}\n",
                c.name,
                if c.conditional { "conditional" } else { "unconditional" },
                format_rational(&c.lhs),
                format_rational(&c.rhs),
                c.holds
            ));
        }
        match &self.witness {
            None => {}
            Some(CycleSearch::Found { cycle }) => {
                out.push_str(&format!("witness cycle: {:?} verified={}\n", cycle.vertices(), !self.cycles_found.is_empty()))
            }
            Some(CycleSearch::NoneExists { max_len }) => {
                out.push_str(&format!("witness: none of length <= {max_len} (contradiction)\n"))
            }
            Some(CycleSearch::BudgetExhausted { max_len, explored }) => out.push_str(&format!(
                "witness: search budget exhausted at length <= {max_len} after {explored} nodes\n"
            )),
        }
        out
    }
}

fn int(v: usize) -> Rational {
    Rational::from_integer(v.into())
}

fn require_proper(c: &EdgeColouring) -> Result<()> {
    if !c.is_proper() {
        return input("the inequality chain needs a proper edge colouring");
    }
    Ok(())
}

/// Checks that hold for every proper colouring.
fn unconditional_checks(g: &Graph, k: usize, p: &PatternValues<Rational>, prev: &Rational) -> Vec<InequalityCheck> {
    let delta = int(g.min_degree());
    let mut checks = vec![InequalityCheck::new("weighted cycle count", Rational::one(), p.total.clone(), false)];
    if k == 1 {
        checks.push(InequalityCheck::new("h2 upper bound", p.total.clone(), int(g.n()) / &delta, false));
    }
    let h1 = p.extremal().clone();
    for l in 1..=k {
        let hl = &p.classes[l - 1];
        let other = &p.classes[pattern_class(k, l, 2 * k + 1 - l).expect("valid pair") - 1];
        checks.push(InequalityCheck::new(
            format!("cycle Cauchy-Schwarz l={l}"),
            hl.clone() * hl,
            h1.clone() * other,
            false,
        ));
    }
    for l in 2..=k {
        checks.push(InequalityCheck::new(
            format!("extremal pattern l={l}"),
            p.classes[l - 1].clone(),
            h1.clone(),
            false,
        ));
    }
    let max_class = p.classes.iter().max().expect("k >= 1").clone();
    checks.push(InequalityCheck::new("pattern below total", max_class, p.total.clone(), false));
    if k >= 2 {
        checks.push(InequalityCheck::new("step down", h1, prev.clone() / &delta, false));
    }
    checks
}

fn evaluate(g: &Graph, c: &EdgeColouring, k: usize) -> Result<(PatternValues<Rational>, Rational)> {
    require_proper(c)?;
    let p = h2k_patterns::<Rational>(g, c, k)?;
    let prev = if k == 1 { int(g.n()) } else { h2k_exact(g, k - 1)? };
    Ok((p, prev))
}

fn pattern_entries(p: &PatternValues<Rational>) -> Vec<PatternEntry> {
    (1..=p.k)
        .map(|l| PatternEntry {
            i: l,
            j: 2 * p.k,
            value: p.classes[l - 1].clone(),
        })
        .collect()
}

struct Evaluated {
    k: usize,
    eps: Option<Rational>,
    p: PatternValues<Rational>,
    prev: Rational,
    inequalities: Vec<InequalityCheck>,
}

fn build_report(g: &Graph, c: &EdgeColouring, e: Evaluated, budget: u64) -> ChainReport {
    let Evaluated {
        k,
        eps,
        p,
        prev,
        inequalities,
    } = e;
    let violated = inequalities.iter().any(|c| c.conditional && !c.holds);
    let witness = violated.then(|| match &eps {
        None => find_rainbow_cycle(g, c, 2 * k, budget),
        Some(e) => find_almost_rainbow(g, c, e, 2 * k, budget).expect("epsilon validated"),
    });
    let cycles_found = witness
        .as_ref()
        .and_then(CycleSearch::cycle)
        .filter(|cyc| verify_found_cycle(g, c, cyc, eps.as_ref()))
        .cloned()
        .into_iter()
        .collect();
    ChainReport {
        k,
        epsilon: eps,
        h2k_float: rational_to_f64(&p.total),
        h2k: p.total.clone(),
        h2k_prev: prev,
        patterns: pattern_entries(&p),
        inequalities,
        witness,
        cycles_found,
    }
}

/// Evaluates every pattern value at `k` and checks the rainbow-cycle
/// inequality chain. When a conditional bound fails, searches for a rainbow
/// cycle of length at most `2k`, which must then exist.
pub fn check_pattern_chain(g: &Graph, c: &EdgeColouring, k: usize, budget: u64) -> Result<ChainReport> {
    let (p, prev) = evaluate(g, c, k)?;
    let mut checks = unconditional_checks(g, k, &p, &prev);
    let delta = int(g.min_degree());
    let kk = int(k);
    let factor = rational(2, 1) * &kk * &kk / &delta;
    checks.push(InequalityCheck::new("counting step", p.total.clone(), p.pair_sum(), true));
    checks.push(InequalityCheck::new("one step", p.total.clone(), factor.clone() * &prev, true));
    checks.push(InequalityCheck::new(
        "corollary",
        p.total.clone(),
        factor.powu(k as u32) * int(g.n()),
        true,
    ));
    let e = Evaluated {
        k,
        eps: None,
        p,
        prev,
        inequalities: checks,
    };
    Ok(build_report(g, c, e, budget))
}

/// As [`check_pattern_chain`] with the `ε`-variant bounds; a failure there
/// calls for a cycle of length `L ≤ 2k` with more than `(1 - ε) L` colours.
pub fn check_variant_chain(
    g: &Graph,
    c: &EdgeColouring,
    k: usize,
    eps: &Rational,
    budget: u64,
) -> Result<ChainReport> {
    check_epsilon(eps)?;
    let (p, prev) = evaluate(g, c, k)?;
    let mut checks = unconditional_checks(g, k, &p, &prev);
    let delta = int(g.min_degree());
    let factor = int(k) / (eps.clone() * &delta);
    checks.push(InequalityCheck::new(
        "variant counting step",
        rational(2, 1) * eps * int(k) * &p.total,
        p.pair_sum(),
        true,
    ));
    checks.push(InequalityCheck::new("variant one step", p.total.clone(), factor.clone() * &prev, true));
    checks.push(InequalityCheck::new(
        "variant corollary",
        p.total.clone(),
        factor.powu(k as u32) * int(g.n()),
        true,
    ));
    let e = Evaluated {
        k,
        eps: Some(eps.clone()),
        p,
        prev,
        inequalities: checks,
    };
    Ok(build_report(g, c, e, budget))
}
