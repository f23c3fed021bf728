use serde::Serialize;

use crate::error::{input, Result};
use crate::graph::Graph;
use crate::scalar::{rational, Rational};

/// `(v(H), e(H), t)` with `t` the size of the larger part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentSpec {
    pub v: u64,
    pub e: u64,
    pub t: u64,
}

impl ExponentSpec {
    pub fn new(v: u64, e: u64, t: u64) -> Result<Self> {
        if !(t < v && 2 * t >= v) {
            return input(format!("need v > t >= v/2 (got v={v}, t={t})"));
        }
        Ok(ExponentSpec { v, e, t })
    }

    pub fn of_pattern(h: &Graph) -> Result<Self> {
        let Some(side) = h.bipartition() else {
            return input("pattern is not bipartite");
        };
        let zeros = side.iter().filter(|&&s| s == 0).count();
        let t = zeros.max(h.n() - zeros);
        Self::new(h.n() as u64, h.edge_count() as u64, t as u64)
    }
}

/// `2 - (v - t - 1)/(e - t)`.
pub fn turan_exponent(spec: ExponentSpec) -> Result<Rational> {
    if spec.e <= spec.t {
        return input(format!(
            "exponent undefined: e = {} does not exceed t = {}",
            spec.e, spec.t
        ));
    }
    let frac = rational((spec.v - spec.t - 1) as i64, (spec.e - spec.t) as i64);
    Ok(rational(2, 1) - frac)
}
