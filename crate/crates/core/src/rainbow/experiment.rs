use serde::Serialize;

use super::chain::{check_pattern_chain, check_variant_chain, ChainReport, InequalityCheck};
use super::search::{check_epsilon, find_almost_rainbow, find_rainbow_cycle, CycleSearch};
use super::spectral::{NormalizedAdjacency, SpectralValue};
use super::walk::{h2k_exact, require_min_degree, MAX_PATTERN_HOST, MAX_WALK_HOST};
use crate::error::{input, Result};
use crate::graph::{EdgeColouring, Graph};
use crate::scalar::{format_decimal, format_rational, rational, rational_to_f64, Rational, Weight};

/// Relative tolerance between the exact and spectral `h_{2k}`.
pub const SPECTRAL_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsEntry {
    pub k: usize,
    #[serde(with = "crate::scalar::serde_rational::option")]
    pub h2k: Option<Rational>,
    pub spectral: SpectralValue,
    /// Exact and spectral values agree; `None` without an exact value.
    pub spectral_agrees: Option<bool>,
    #[serde(with = "crate::scalar::serde_rational")]
    pub corollary_rhs: Rational,
    /// `spectral + error_bound ≤ corollary_rhs`.
    pub spectral_bound_holds: bool,
    /// Exact corollary check when the full chain is out of reach.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corollary: Option<InequalityCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CycleSearch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainReport>,
}

impl BoundsEntry {
    fn witness(&self) -> Option<&CycleSearch> {
        self.chain.as_ref().and_then(|c| c.witness.as_ref()).or(self.witness.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub colours: usize,
    pub proper: bool,
    #[serde(with = "crate::scalar::serde_rational::option")]
    pub epsilon: Option<Rational>,
    pub entries: Vec<BoundsEntry>,
}

impl BoundsReport {
    /// Every unconditional check held and the two evaluation paths agree.
    pub fn unconditional_hold(&self) -> bool {
        self.entries.iter().all(|e| {
            e.spectral_agrees != Some(false) && e.chain.as_ref().is_none_or(ChainReport::unconditional_hold)
        })
    }

    /// Some conditional bound failed without a verified witness being found
    /// although the search completed.
    pub fn pipeline_contradiction(&self) -> bool {
        self.entries.iter().any(|e| {
            e.chain.as_ref().is_some_and(ChainReport::pipeline_contradiction)
                || matches!(e.witness, Some(CycleSearch::NoneExists { .. }))
        })
    }

    pub fn budget_exhausted(&self) -> bool {
        self.entries
            .iter()
            .any(|e| matches!(e.witness(), Some(CycleSearch::BudgetExhausted { .. })))
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &super::HomCycle> {
        self.entries.iter().filter_map(|e| e.witness().and_then(CycleSearch::cycle))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "host n={} edges={} min_degree={} max_degree={} colours={} proper={}\n",
            self.n, self.edges, self.min_degree, self.max_degree, self.colours, self.proper
        );
        for e in &self.entries {
            out.push_str(&format!(
                "k={} h2k={} spectral={} (+/- {}) agrees={} corollary_rhs={} spectral_bound_holds={}\n",
                e.k,
                e.h2k.as_ref().map_or("n/a".into(), format_rational),
                format_decimal(e.spectral.value),
                format_decimal(e.spectral.error_bound),
                e.spectral_agrees.map_or("n/a".into(), |b| b.to_string()),
                format_rational(&e.corollary_rhs),
                e.spectral_bound_holds,
            ));
            if let Some(c) = &e.chain {
                for line in c.to_text().lines().skip(1) {
                    out.push_str("  ");
                    out.push_str(line);
                    out.push('\n');
                }
            }
            if let Some(c) = &e.corollary {
                out.push_str(&format!(
                    "  {}: {} <= {} holds={}\n",
                    c.name,
                    format_rational(&c.lhs),
                    format_rational(&c.rhs),
                    c.holds
                ));
            }
            if let Some(w) = &e.witness {
                out.push_str(&format!("  witness: {}\n", serde_json::to_string(w).expect("serializable")));
            }
        }
        out
    }
}

/// `(2k²/δ)^k n`, or `(k/(εδ))^k n` for the variant.
pub fn corollary_rhs(n: usize, min_degree: usize, k: usize, eps: Option<&Rational>) -> Rational {
    let delta = Rational::from_integer(min_degree.into());
    let kk = Rational::from_integer(k.into());
    let factor = match eps {
        None => rational(2, 1) * &kk * &kk / delta,
        Some(e) => kk / (e.clone() * delta),
    };
    factor.powu(k as u32) * Rational::from_integer(n.into())
}

/// Evaluates `h_{2k}` by both paths for `k = 1..=k_max` and checks the
/// corollary bound (the `ε`-variant when `eps` is given). Hosts within the
/// pattern limit with a proper colouring get the full inequality chain.
pub fn rainbow_bounds(
    g: &Graph,
    c: &EdgeColouring,
    k_max: usize,
    eps: Option<&Rational>,
    budget: u64,
) -> Result<BoundsReport> {
    require_min_degree(g)?;
    if k_max == 0 {
        return input("k-max must be at least 1");
    }
    if let Some(e) = eps {
        check_epsilon(e)?;
    }
    let spectrum = NormalizedAdjacency::<f64>::new(g)?.spectrum();
    let full_chain = c.is_proper() && g.n() <= MAX_PATTERN_HOST;
    let mut entries = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let spectral = spectrum.h2k(k)?;
        let rhs = corollary_rhs(g.n(), g.min_degree(), k, eps);
        let spectral_bound_holds = spectral.value + spectral.error_bound <= rational_to_f64(&rhs);
        let mut entry = BoundsEntry {
            k,
            h2k: None,
            spectral,
            spectral_agrees: None,
            corollary_rhs: rhs.clone(),
            spectral_bound_holds,
            corollary: None,
            witness: None,
            chain: None,
        };
        if full_chain {
            let chain = match eps {
                None => check_pattern_chain(g, c, k, budget)?,
                Some(e) => check_variant_chain(g, c, k, e, budget)?,
            };
            entry.h2k = Some(chain.h2k.clone());
            entry.chain = Some(chain);
        } else if g.n() <= MAX_WALK_HOST {
            let exact = h2k_exact(g, k)?;
            let check = InequalityCheck {
                name: if eps.is_some() { "variant corollary" } else { "corollary" }.into(),
                holds: exact <= rhs,
                lhs: exact.clone(),
                rhs,
                conditional: true,
            };
            if !check.holds {
                entry.witness = Some(match eps {
                    None => find_rainbow_cycle(g, c, 2 * k, budget),
                    Some(e) => find_almost_rainbow(g, c, e, 2 * k, budget)?,
                });
            }
            entry.h2k = Some(exact);
            entry.corollary = Some(check);
        }
        if let Some(exact) = &entry.h2k {
            let x = rational_to_f64(exact);
            entry.spectral_agrees = Some((x - entry.spectral.value).abs() <= SPECTRAL_TOLERANCE * x.abs());
        }
        entries.push(entry);
    }
    Ok(BoundsReport {
        n: g.n(),
        edges: g.edge_count(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        colours: c.palette().len(),
        proper: c.is_proper(),
        epsilon: eps.cloned(),
        entries,
    })
}
