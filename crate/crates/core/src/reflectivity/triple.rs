use std::fmt;

use crate::automorphism::{enumerate_involutions, Automorphism};
use crate::error::{capability, Error, Result};
use crate::pattern::Pattern;
use crate::vertex_set::VertexSet;

/// Most component pairs an involution may produce before the `2^pairs`
/// orientation enumeration is refused.
const MAX_ORIENTATION_PAIRS: usize = 16;

/// First failed condition of a candidate nice triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TripleViolation {
    NotInvolution,
    Identity,
    /// `A`, `B` and the fixed set do not partition the vertex set.
    NotPartition,
    /// An edge joins `A` and `B`, so the fixed set does not separate them.
    NotSeparated { a: usize, b: usize },
    /// `φ(A) ≠ B`.
    ImageMismatch,
}

impl fmt::Display for TripleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleViolation::NotInvolution => write!(f, "phi is not an involution"),
            TripleViolation::Identity => write!(f, "phi is the identity"),
            TripleViolation::NotPartition => write!(f, "A, B and F_phi do not partition V(H)"),
            TripleViolation::NotSeparated { a, b } => {
                write!(f, "edge {a}-{b} joins A and B")
            }
            TripleViolation::ImageMismatch => write!(f, "phi(A) != B"),
        }
    }
}

/// Checks the nice-triple conditions for `(A, B, φ)`; `Ok(None)` means nice.
///
/// Errors if `φ` is not an automorphism of the pattern.
pub fn verify_nice_triple(
    pattern: &Pattern,
    a: VertexSet,
    b: VertexSet,
    phi: &Automorphism,
) -> Result<Option<TripleViolation>> {
    if !phi.is_automorphism_of(pattern.graph()) {
        return Err(Error::Input(format!(
            "[{}] is not an automorphism of the pattern",
            phi.to_image_string()
        )));
    }
    if !phi.is_involution() {
        return Ok(Some(TripleViolation::NotInvolution));
    }
    if phi.is_identity() {
        return Ok(Some(TripleViolation::Identity));
    }
    let fixed = phi.fixed_set();
    let all = pattern.vertices();
    if !a.is_disjoint(b)
        || !a.is_disjoint(fixed)
        || !b.is_disjoint(fixed)
        || a.union(b).union(fixed) != all
    {
        return Ok(Some(TripleViolation::NotPartition));
    }
    for u in a.iter() {
        if let Some(w) = pattern.neighbours(u).intersection(b).first() {
            return Ok(Some(TripleViolation::NotSeparated { a: u, b: w }));
        }
    }
    if phi.map_set(a) != b {
        return Ok(Some(TripleViolation::ImageMismatch));
    }
    Ok(None)
}

/// A verified nice triple `(A, B, φ)` with its fixed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTriple {
    a: VertexSet,
    b: VertexSet,
    phi: Automorphism,
    fixed: VertexSet,
}

impl NiceTriple {
    pub fn new(pattern: &Pattern, a: VertexSet, b: VertexSet, phi: Automorphism) -> Result<Self> {
        if let Some(v) = verify_nice_triple(pattern, a, b, &phi)? {
            return Err(Error::Input(format!("not a nice triple: {v}")));
        }
        let fixed = phi.fixed_set();
        Ok(NiceTriple { a, b, phi, fixed })
    }

    pub fn a(&self) -> VertexSet {
        self.a
    }

    pub fn b(&self) -> VertexSet {
        self.b
    }

    pub fn phi(&self) -> &Automorphism {
        &self.phi
    }

    pub fn fixed(&self) -> VertexSet {
        self.fixed
    }

    /// `(B, A, φ)`.
    pub fn swapped(&self) -> NiceTriple {
        NiceTriple {
            a: self.b,
            b: self.a,
            phi: self.phi.clone(),
            fixed: self.fixed,
        }
    }

    /// Image under an automorphism `σ`: `(σA, σB, σφσ⁻¹)`.
    pub fn conjugate(&self, sigma: &Automorphism) -> NiceTriple {
        NiceTriple {
            a: sigma.map_set(self.a),
            b: sigma.map_set(self.b),
            phi: self.phi.conjugate_by(sigma),
            fixed: sigma.map_set(self.fixed),
        }
    }

    /// Admissibility without the same-part test.
    pub(crate) fn meets_both_sides(&self, r: VertexSet) -> bool {
        r.intersects(self.a.union(self.fixed)) && r.intersects(self.b.union(self.fixed))
    }

    /// `ψ` without the admissibility check.
    pub(crate) fn reflect(&self, r: VertexSet) -> VertexSet {
        r.intersection(self.a.union(self.fixed))
            .union(self.phi.map_set(r.intersection(self.a)))
    }
}

/// Every nice triple of the pattern. For each involution the components of
/// `H - F_φ` are paired by `φ`; an involution fixing some component yields
/// nothing, otherwise each pair is assigned to `A` in either orientation.
pub fn enumerate_nice_triples(pattern: &Pattern) -> Result<Vec<NiceTriple>> {
    triples_from_involutions(pattern, &enumerate_involutions(pattern.graph())?)
}

pub(crate) fn triples_from_involutions(
    pattern: &Pattern,
    involutions: &[Automorphism],
) -> Result<Vec<NiceTriple>> {
    let mut out = Vec::new();
    for phi in involutions {
        let fixed = phi.fixed_set();
        let comps = pattern.components_within(pattern.vertices().difference(fixed));
        if comps.iter().any(|&c| phi.map_set(c) == c) {
            continue;
        }
        // Components are listed by smallest vertex; keep the first of each pair.
        let firsts: Vec<VertexSet> = comps
            .iter()
            .copied()
            .filter(|&c| c.first() < phi.map_set(c).first())
            .collect();
        if firsts.len() > MAX_ORIENTATION_PAIRS {
            return capability(format!(
                "involution splits H - F into {} component pairs",
                firsts.len()
            ));
        }
        for mask in 0u32..(1u32 << firsts.len()) {
            let mut a = VertexSet::EMPTY;
            for (i, &c) in firsts.iter().enumerate() {
                a = a.union(if (mask >> i) & 1 == 0 { c } else { phi.map_set(c) });
            }
            let b = phi.map_set(a);
            out.push(NiceTriple {
                a,
                b,
                phi: (*phi).clone(),
                fixed,
            });
        }
    }
    Ok(out)
}

/// `R` lies in one part of the bipartition and meets both `A ∪ F` and `B ∪ F`.
pub fn is_admissible(pattern: &Pattern, triple: &NiceTriple, r: VertexSet) -> Result<bool> {
    if r.is_empty() {
        return Ok(false);
    }
    Ok(pattern.side_containing(r)?.is_some() && triple.meets_both_sides(r))
}

/// `ψ_{A,B,φ}(R) = (R ∩ (A ∪ F)) ∪ φ(R ∩ A)`.
pub fn psi_apply(pattern: &Pattern, triple: &NiceTriple, r: VertexSet) -> Result<VertexSet> {
    if !is_admissible(pattern, triple, r)? {
        return Err(Error::Precondition(format!(
            "{r} is not admissible for the triple (A={}, B={})",
            triple.a, triple.b
        )));
    }
    let out = triple.reflect(r);
    debug_assert!(!out.is_empty());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, hypercube};

    pub(crate) fn q3() -> Pattern {
        Pattern::new(hypercube(3).unwrap()).unwrap()
    }

    fn set(bits: &[&str]) -> VertexSet {
        bits.iter()
            .map(|b| usize::from_str_radix(b, 2).unwrap())
            .collect()
    }

    /// abc -> bac
    fn swap12() -> Automorphism {
        let perm = (0..8usize)
            .map(|x| ((x >> 1) & 1) << 2 | ((x >> 2) & 1) << 1 | (x & 1))
            .collect();
        Automorphism::new(q3().graph(), perm).unwrap()
    }

    /// (x1,x2,x3) -> (1-x2, 1-x1, x3)
    fn complement_swap12() -> Automorphism {
        let perm = (0..8usize)
            .map(|x| {
                let (x1, x2, x3) = ((x >> 2) & 1, (x >> 1) & 1, x & 1);
                (1 - x2) << 2 | (1 - x1) << 1 | x3
            })
            .collect();
        Automorphism::new(q3().graph(), perm).unwrap()
    }

    #[test]
    fn example_triple_is_nice_both_ways() {
        let p = q3();
        let a = set(&["100", "101"]);
        let b = set(&["010", "011"]);
        assert_eq!(verify_nice_triple(&p, a, b, &swap12()).unwrap(), None);
        assert_eq!(verify_nice_triple(&p, b, a, &swap12()).unwrap(), None);
        let bad_b = set(&["010", "110"]);
        assert!(verify_nice_triple(&p, a, bad_b, &swap12()).unwrap().is_some());
    }

    #[test]
    fn violations_are_named() {
        let p = q3();
        let a = set(&["100", "101"]);
        let b = set(&["010", "011"]);
        let id = Automorphism::identity(8);
        assert_eq!(
            verify_nice_triple(&p, a, b, &id).unwrap(),
            Some(TripleViolation::Identity)
        );
        // B overlaps the fixed set.
        let b2 = set(&["010", "110"]);
        assert_eq!(
            verify_nice_triple(&p, a, b2, &swap12()).unwrap(),
            Some(TripleViolation::NotPartition)
        );
        let foreign = Automorphism::try_from(vec![1, 0, 2, 3, 4, 5, 6, 7]).unwrap();
        assert!(verify_nice_triple(&p, a, b, &foreign).is_err());
    }

    #[test]
    fn k2_swap_is_not_nice() {
        // With nothing fixed, the single edge joins A and B.
        let p = Pattern::new(complete(2)).unwrap();
        assert!(enumerate_nice_triples(&p).unwrap().is_empty());
        let swap = Automorphism::new(p.graph(), vec![1, 0]).unwrap();
        let v = verify_nice_triple(&p, VertexSet::singleton(0), VertexSet::singleton(1), &swap);
        assert_eq!(v.unwrap(), Some(TripleViolation::NotSeparated { a: 0, b: 1 }));
    }

    #[test]
    fn q3_swap_gives_two_orientations() {
        let p = q3();
        let ts: Vec<NiceTriple> = enumerate_nice_triples(&p)
            .unwrap()
            .into_iter()
            .filter(|t| t.phi() == &swap12())
            .collect();
        assert_eq!(ts.len(), 2);
        let a = set(&["100", "101"]);
        let b = set(&["010", "011"]);
        assert!(ts.iter().any(|t| t.a() == a && t.b() == b));
        assert!(ts.iter().any(|t| t.a() == b && t.b() == a));
    }

    #[test]
    fn c6_reflection_through_0_and_3() {
        let p = Pattern::new(cycle(6).unwrap()).unwrap();
        let refl = Automorphism::new(p.graph(), vec![0, 5, 4, 3, 2, 1]).unwrap();
        let ts: Vec<NiceTriple> = enumerate_nice_triples(&p)
            .unwrap()
            .into_iter()
            .filter(|t| t.phi() == &refl)
            .collect();
        let pairs: Vec<(Vec<usize>, Vec<usize>)> =
            ts.iter().map(|t| (t.a().to_vec(), t.b().to_vec())).collect();
        assert_eq!(pairs, vec![(vec![1, 2], vec![4, 5]), (vec![4, 5], vec![1, 2])]);
    }

    #[test]
    fn enumerated_triples_verify() {
        for g in [hypercube(3).unwrap(), cycle(8).unwrap(), complete_bipartite(2, 3)] {
            let p = Pattern::new(g).unwrap();
            for t in enumerate_nice_triples(&p).unwrap() {
                assert_eq!(verify_nice_triple(&p, t.a(), t.b(), t.phi()).unwrap(), None);
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let p = q3();
        let t = NiceTriple::new(&p, set(&["100", "101"]), set(&["010", "011"]), swap12()).unwrap();
        assert!(is_admissible(&p, &t, set(&["000", "011"])).unwrap());
        // Inside A only.
        assert!(!is_admissible(&p, &t, set(&["101"])).unwrap());
        // Straddles the bipartition.
        assert!(!is_admissible(&p, &t, set(&["000", "001"])).unwrap());
        let tri = Pattern::new(complete(3)).unwrap();
        let t3 = enumerate_nice_triples(&tri).unwrap();
        assert!(t3.is_empty() || is_admissible(&tri, &t3[0], VertexSet::singleton(0)).is_err());
    }

    #[test]
    fn psi_examples_from_the_cube() {
        let p = q3();
        let t = NiceTriple::new(&p, set(&["010", "011"]), set(&["100", "101"]), swap12()).unwrap();
        assert_eq!(
            psi_apply(&p, &t, set(&["000", "011"])).unwrap(),
            set(&["000", "011", "101"])
        );
        let t2 = NiceTriple::new(
            &p,
            set(&["000", "001"]),
            set(&["110", "111"]),
            complement_swap12(),
        )
        .unwrap();
        assert_eq!(
            psi_apply(&p, &t2, set(&["000", "011", "101"])).unwrap(),
            set(&["000", "011", "101", "110"])
        );
        // R inside the fixed set is left alone.
        let r = set(&["000", "110"]);
        assert_eq!(psi_apply(&p, &t, r).unwrap(), r);
        assert!(psi_apply(&p, &t, set(&["101"])).is_err());
    }
}
