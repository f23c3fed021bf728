use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{capability, Result};
use crate::graph::{hypercube, random};
use crate::scalar::{format_rational, rational, rational_from_uint, rational_to_f64, Rational};

use super::count::{hom_count, injective_hom_count, HomCount};

/// Largest host accepted by the supersaturation experiment.
pub const MAX_EXPERIMENT_HOST: usize = 48;

/// Lower bound the harness expects for `injective / (n^8 p^12)`. A harness
/// choice: the constant of the supersaturation theorem is not explicit.
pub fn supersaturation_threshold() -> Rational {
    rational(1, 10)
}

#[derive(Clone, Debug, Serialize)]
pub struct SupersaturationTrial {
    pub seed: u64,
    pub n: usize,
    #[serde(with = "crate::scalar::serde_rational")]
    pub p: Rational,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub hom: HomCount,
    pub injective: HomCount,
    pub non_injective: HomCount,
    /// `non_injective / hom`, absent when `hom = 0`.
    #[serde(with = "crate::scalar::serde_rational::option")]
    pub non_injective_fraction: Option<Rational>,
    /// `n^{v} p^{e}`.
    #[serde(with = "crate::scalar::serde_rational")]
    pub expected: Rational,
    /// `injective / expected`, absent when `expected = 0`.
    #[serde(with = "crate::scalar::serde_rational::option")]
    pub ratio: Option<Rational>,
    pub ratio_decimal: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupersaturationReport {
    pub d: u32,
    pub n: usize,
    #[serde(with = "crate::scalar::serde_rational")]
    pub p: Rational,
    pub seed: u64,
    pub trials: Vec<SupersaturationTrial>,
    pub min_ratio_decimal: Option<f64>,
    pub median_ratio_decimal: Option<f64>,
    #[serde(with = "crate::scalar::serde_rational")]
    pub threshold: Rational,
    /// Every defined ratio is at least the threshold.
    pub meets_threshold: bool,
}

/// Counts copies of `Q_d` in `G(n, p)` for seeds `seed, seed + 1, …`.
pub fn supersaturation_experiment(
    d: u32,
    n: usize,
    p: &Rational,
    seed: u64,
    trials: usize,
) -> Result<SupersaturationReport> {
    if d != 3 {
        return capability(format!("the experiment runs for d = 3 only (got {d})"));
    }
    if n > MAX_EXPERIMENT_HOST {
        return capability(format!("host size {n} exceeds {MAX_EXPERIMENT_HOST}"));
    }
    let h = hypercube(d)?;
    let expected = num_traits::pow(Rational::from_integer(n.into()), h.n())
        * num_traits::pow(p.clone(), h.edge_count());
    let rows: Vec<SupersaturationTrial> = (0..trials as u64)
        .into_par_iter()
        .map(|i| -> Result<SupersaturationTrial> {
            let s = seed.wrapping_add(i);
            let g = random(n, p, s)?;
            let hom = hom_count(&h, &g, None)?;
            let injective = injective_hom_count(&h, &g)?;
            let non_injective = hom - injective;
            let q = |v: HomCount| rational_from_uint(&BigUint::from(v));
            let ratio = (!expected.is_zero()).then(|| q(injective) / &expected);
            Ok(SupersaturationTrial {
                seed: s,
                n,
                p: p.clone(),
                edges: g.edge_count(),
                min_degree: if n == 0 { 0 } else { g.min_degree() },
                max_degree: if n == 0 { 0 } else { g.max_degree() },
                hom,
                injective,
                non_injective,
                non_injective_fraction: (hom != 0).then(|| q(non_injective) / q(hom)),
                expected: expected.clone(),
                ratio_decimal: ratio.as_ref().map(rational_to_f64),
                ratio,
            })
        })
        .collect::<Result<_>>()?;
    let mut ratios: Vec<&Rational> = rows.iter().filter_map(|t| t.ratio.as_ref()).collect();
    ratios.sort();
    let threshold = supersaturation_threshold();
    Ok(SupersaturationReport {
        d,
        n,
        p: p.clone(),
        seed,
        min_ratio_decimal: ratios.first().map(|r| rational_to_f64(r)),
        median_ratio_decimal: ratios.get(ratios.len() / 2).map(|r| rational_to_f64(r)),
        meets_threshold: ratios.iter().all(|r| **r >= threshold),
        threshold,
        trials: rows,
    })
}

impl SupersaturationReport {
    /// One line per trial followed by the aggregate line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.trials {
            out.push_str(&format!(
                "seed={} n={} p={} edges={} hom={} injective={} ratio={}\n",
                t.seed,
                t.n,
                format_rational(&t.p),
                t.edges,
                t.hom,
                t.injective,
                t.ratio_decimal.map_or("undefined".into(), crate::scalar::format_decimal),
            ));
        }
        out.push_str(&format!(
            "min_ratio={} median_ratio={} threshold={} meets_threshold={}\n",
            self.min_ratio_decimal.map_or("undefined".into(), crate::scalar::format_decimal),
            self.median_ratio_decimal.map_or("undefined".into(), crate::scalar::format_decimal),
            format_rational(&self.threshold),
            self.meets_threshold,
        ));
        out
    }
}
