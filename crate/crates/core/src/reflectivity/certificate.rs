use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::vertex_set::VertexSet;

use super::triple::{verify_nice_triple, NiceTriple};

/// One reflection step: the triple used and the set kept afterwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    #[serde(rename = "A")]
    pub a: VertexSet,
    #[serde(rename = "B")]
    pub b: VertexSet,
    pub phi: Automorphism,
    #[serde(rename = "R_next")]
    pub next: VertexSet,
}

impl CertificateStep {
    pub fn new(triple: &NiceTriple, next: VertexSet) -> Self {
        CertificateStep {
            a: triple.a(),
            b: triple.b(),
            phi: triple.phi().clone(),
            next,
        }
    }
}

/// A sequence of reflections carrying a pair `R_0` to a whole part `X_i`.
///
/// Steps are stored unverified so that certificates read from disk can be
/// checked with [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectivityCertificate {
    pub start: VertexSet,
    pub side: VertexSet,
    pub steps: Vec<CertificateStep>,
}

impl ReflectivityCertificate {
    pub fn m(&self) -> usize {
        self.steps.len()
    }

    /// The exponent `s = 2^m` of the final inequality.
    pub fn s(&self) -> BigUint {
        BigUint::from(1u8) << self.m()
    }

    /// `R_m`, or the start set when there are no steps.
    pub fn last(&self) -> VertexSet {
        self.steps.last().map_or(self.start, |s| s.next)
    }

    /// Image of the certificate under an isomorphism `iso` onto another pattern.
    pub fn transport(&self, iso: &[usize]) -> ReflectivityCertificate {
        let sigma = Automorphism::from_perm_unchecked(iso.to_vec());
        ReflectivityCertificate {
            start: self.start.map(iso),
            side: self.side.map(iso),
            steps: self
                .steps
                .iter()
                .map(|s| CertificateStep {
                    a: s.a.map(iso),
                    b: s.b.map(iso),
                    phi: s.phi.conjugate_by(&sigma),
                    next: s.next.map(iso),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad certificate: {e}")))
    }
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CertificateCheck {
    /// All invariants hold. `relaxed_steps` lists the steps with
    /// `R_{j+1} ⊊ ψ(R_j)`.
    Valid { relaxed_steps: Vec<usize> },
    /// `step` is `None` for failures of the start or end conditions.
    Invalid { step: Option<usize>, reason: String },
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateCheck::Valid { .. })
    }
}

fn invalid(step: Option<usize>, reason: String) -> Result<CertificateCheck> {
    Ok(CertificateCheck::Invalid { step, reason })
}

/// Checks every certificate invariant from scratch.
///
/// Errors if the pattern is not connected and bipartite, or if some step
/// carries a malformed triple (the message names the step).
pub fn verify_certificate(
    pattern: &Pattern,
    cert: &ReflectivityCertificate,
) -> Result<CertificateCheck> {
    let sides = pattern.require_connected_bipartite()?;
    let all = pattern.vertices();
    if !sides.contains(&cert.side) {
        return invalid(None, format!("{} is not a part of the bipartition", cert.side));
    }
    if cert.start.len() != 2 || !cert.start.is_subset(cert.side) {
        return invalid(None, format!("start {} is not a pair inside the side", cert.start));
    }
    let mut current = cert.start;
    let mut relaxed_steps = Vec::new();
    for (j, step) in cert.steps.iter().enumerate() {
        let malformed = |msg: String| Error::Input(format!("certificate step {j}: {msg}"));
        if !step.a.union(step.b).union(step.next).is_subset(all) {
            return Err(malformed("vertex out of range".into()));
        }
        let triple = match verify_nice_triple(pattern, step.a, step.b, &step.phi) {
            Ok(None) => NiceTriple::new(pattern, step.a, step.b, step.phi.clone())?,
            Ok(Some(v)) => return Err(malformed(format!("not a nice triple: {v}"))),
            Err(e) => return Err(malformed(e.to_string())),
        };
        if !current.is_subset(cert.side) || !triple.meets_both_sides(current) {
            return invalid(Some(j), format!("{current} is not admissible"));
        }
        let image = triple.reflect(current);
        if step.next.is_empty() || !step.next.is_subset(image) {
            return invalid(Some(j), format!("{} is not a non-empty subset of {image}", step.next));
        }
        if step.next != image {
            relaxed_steps.push(j);
        }
        current = step.next;
    }
    if current != cert.side {
        return invalid(None, format!("final set {current} is not the side {}", cert.side));
    }
    Ok(CertificateCheck::Valid { relaxed_steps })
}
