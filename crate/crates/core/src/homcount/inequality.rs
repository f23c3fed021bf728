use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{capability, input, Error, Result};
use crate::graph::Graph;
use crate::pattern::Pattern;
use crate::reflectivity::{is_admissible, verify_certificate, CertificateCheck, NiceTriple, ReflectivityCertificate};
use crate::scalar::{rational_from_uint, Rational};
use crate::vertex_set::VertexSet;

use super::count::{hom_count, HomCount};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SidorenkoCheck {
    /// `hom(H, G)`.
    pub lhs: HomCount,
    /// `n^{v(H)} p^{e(H)}` with `p = 2e(G)/n^2`.
    #[serde(with = "crate::scalar::serde_rational")]
    pub rhs: Rational,
    /// `lhs / rhs`, when `rhs > 0`.
    #[serde(with = "crate::scalar::serde_rational::option")]
    pub margin: Option<Rational>,
    pub holds: bool,
}

pub fn sidorenko_check(h: &Graph, g: &Graph) -> Result<SidorenkoCheck> {
    let lhs = hom_count(h, g, None)?;
    let p = g.edge_density()?;
    let n = Rational::from_integer(g.n().into());
    let rhs = num_traits::pow(n, h.n()) * num_traits::pow(p, h.edge_count());
    let lhs_q = rational_from_uint(&BigUint::from(lhs));
    let margin = (!rhs.is_zero()).then(|| &lhs_q / &rhs);
    Ok(SidorenkoCheck {
        lhs,
        holds: lhs_q >= rhs,
        rhs,
        margin,
    })
}

/// The three constrained counts of one reflection step and both forms of the
/// Cauchy-Schwarz bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionCheck {
    /// `hom(H, G; R)`.
    pub constrained: HomCount,
    /// `hom(H, G; ψ_{A,B,φ}(R))`.
    pub forward: HomCount,
    /// `hom(H, G; ψ_{B,A,φ}(R))`.
    pub backward: HomCount,
    /// `hom(H, G)`.
    pub total: HomCount,
    /// `constrained² ≤ forward · backward`.
    pub holds_product: bool,
    /// `constrained² ≤ forward · total`.
    pub holds_weak: bool,
}

impl ReflectionCheck {
    pub fn holds(&self) -> bool {
        self.holds_product && self.holds_weak
    }
}

pub fn check_reflection_inequality(
    pattern: &Pattern,
    g: &Graph,
    triple: &NiceTriple,
    r: VertexSet,
) -> Result<ReflectionCheck> {
    if !is_admissible(pattern, triple, r)? {
        return Err(Error::Precondition(format!("{r} is not admissible for the triple")));
    }
    let h = pattern.graph();
    let constrained = hom_count(h, g, Some(r))?;
    let forward = hom_count(h, g, Some(triple.reflect(r)))?;
    let backward = hom_count(h, g, Some(triple.swapped().reflect(r)))?;
    let total = hom_count(h, g, None)?;
    let sq = BigUint::from(constrained).pow(2);
    Ok(ReflectionCheck {
        constrained,
        forward,
        backward,
        total,
        holds_product: sq <= BigUint::from(forward) * BigUint::from(backward),
        holds_weak: sq <= BigUint::from(forward) * BigUint::from(total),
    })
}

/// `hom(H,G;X) · hom(H,G)^{s-1} ≥ hom(H,G;R_0)^s` with `s = 2^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinalCheck {
    /// `hom(H, G; X)` for the target side `X`.
    pub side: HomCount,
    /// `hom(H, G; R_0)`.
    pub start: HomCount,
    pub total: HomCount,
    pub m: usize,
    pub holds: bool,
}

/// Largest `m` for which `s = 2^m` is used as an integer exponent.
const MAX_FINAL_STEPS: usize = 20;

pub fn check_final_inequality(
    pattern: &Pattern,
    g: &Graph,
    cert: &ReflectivityCertificate,
) -> Result<FinalCheck> {
    if let CertificateCheck::Invalid { step, reason } = verify_certificate(pattern, cert)? {
        return input(format!("invalid certificate (step {step:?}): {reason}"));
    }
    if cert.m() > MAX_FINAL_STEPS {
        return capability(format!("certificate has {} steps; s = 2^m is too large", cert.m()));
    }
    let h = pattern.graph();
    let side = hom_count(h, g, Some(cert.side))?;
    let start = hom_count(h, g, Some(cert.start))?;
    let total = hom_count(h, g, None)?;
    let s = 1u32 << cert.m();
    let lhs = BigUint::from(side) * BigUint::from(total).pow(s - 1);
    let rhs = BigUint::from(start).pow(s);
    Ok(FinalCheck {
        side,
        start,
        total,
        m: cert.m(),
        holds: lhs >= rhs,
    })
}
