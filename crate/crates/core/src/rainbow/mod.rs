//! Weighted homomorphic cycle counts and the rainbow-cycle machinery.
//!
//! `h_{2k}` sums `1/Π d(u_i)` over closed walks `u_0 … u_{2k-1}`; it equals
//! the trace of the `2k`-th power of the degree-normalized adjacency matrix.
//! The exact path evaluates it, and every colour-coincidence pattern, with a
//! transfer DP over rationals. The spectral path is for large hosts and for
//! cross-checking.

mod chain;
mod cycle;
mod experiment;
mod search;
mod spectral;
mod walk;

pub use chain::{check_pattern_chain, check_variant_chain, ChainReport, InequalityCheck, PatternEntry};
pub use cycle::{decompose_hom_cycle, HomCycle};
pub use experiment::{corollary_rhs, rainbow_bounds, BoundsEntry, BoundsReport, SPECTRAL_TOLERANCE};
pub use search::{
    find_almost_rainbow, find_rainbow_cycle, is_almost_rainbow_count, verify_found_cycle, CycleSearch,
    DEFAULT_CYCLE_BUDGET,
};
pub use spectral::{
    h2k_spectral, hypercube_h2k_closed_form, NormalizedAdjacency, NormalizedSpectrum, SpectralValue,
    MAX_SPECTRAL_HOST,
};
pub use walk::{
    class_multiplicity, h2k, h2k_exact, h2k_pattern, h2k_pattern_exact, h2k_patterns, pattern_class,
    ColourIndex, PatternValues, WalkTable, MAX_HALF_LENGTH, MAX_PATTERN_HALF_LENGTH, MAX_PATTERN_HOST,
    MAX_WALK_HOST,
};

pub type ExactWalkTable = WalkTable<crate::Rational>;
pub type FloatWalkTable = WalkTable<f64>;
pub type ExactPatternValues = PatternValues<crate::Rational>;
