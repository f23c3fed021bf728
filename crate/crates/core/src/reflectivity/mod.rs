//! Nice triples, the reflection map `ψ`, and reflectivity certificates.

mod certificate;
mod construction;
mod search;
mod triple;

pub use certificate::{verify_certificate, CertificateCheck, CertificateStep, ReflectivityCertificate};
pub use construction::{
    hypercube_claim_triples, hypercube_paper_sequence, hypercube_s_set, hypercube_t_set,
    set_graph_paper_sequence,
};
pub use search::{
    certify_all_pairs, certify_reflective, AllPairsReport, PairOutcome, SearchOutcome, UnknownReason,
    DEFAULT_BUDGET, MAX_SEARCH_SIDE,
};
pub use triple::{enumerate_nice_triples, is_admissible, psi_apply, verify_nice_triple, NiceTriple, TripleViolation};

/// Constraint sets are plain vertex sets; the part containing one is
/// recovered with [`crate::pattern::Pattern::side_containing`].
pub type ConstraintSet = crate::vertex_set::VertexSet;
