//! Constrained and injective homomorphism counts, and the inequalities of
//! the reflection argument checked on concrete hosts.

mod count;
mod experiment;
mod exponent;
mod inequality;

pub use count::{
    hom_count, injective_hom_count, quotient, HomCount, MAX_HOM_PATTERN_VERTICES,
    MAX_INJECTIVE_PATTERN_VERTICES,
};
pub use experiment::{
    supersaturation_experiment, supersaturation_threshold, SupersaturationReport, SupersaturationTrial,
    MAX_EXPERIMENT_HOST,
};
pub use exponent::{turan_exponent, ExponentSpec};
pub use inequality::{
    check_final_inequality, check_reflection_inequality, sidorenko_check, FinalCheck, ReflectionCheck,
    SidorenkoCheck,
};

use crate::error::Result;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// A counting job as read from the command line.
#[derive(Clone, Debug)]
pub struct HomCountRequest<'a> {
    pub pattern: &'a Graph,
    pub host: &'a Graph,
    pub constraint: Option<VertexSet>,
    pub injective: bool,
}

impl HomCountRequest<'_> {
    pub fn run(&self) -> Result<HomCount> {
        match (self.injective, self.constraint) {
            (false, r) => hom_count(self.pattern, self.host, r),
            // Identifying two or more vertices rules out injectivity.
            (true, Some(r)) if r.len() > 1 => Ok(0),
            (true, _) => injective_hom_count(self.pattern, self.host),
        }
    }
}
