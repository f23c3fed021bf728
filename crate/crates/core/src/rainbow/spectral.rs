use nalgebra::{DMatrix, RealField, SymmetricEigen};
use serde::Serialize;

use super::walk::require_min_degree;
use crate::error::{capability, input, Result};
use crate::graph::Graph;

pub const MAX_SPECTRAL_HOST: usize = 2048;

/// `A[u][v] = 1/√(d(u) d(v))` on edges, zero elsewhere.
#[derive(Clone, Debug)]
pub struct NormalizedAdjacency<T: RealField + Copy> {
    matrix: DMatrix<T>,
}

impl<T: RealField + Copy> NormalizedAdjacency<T> {
    pub fn new(g: &Graph) -> Result<Self> {
        require_min_degree(g)?;
        if g.n() > MAX_SPECTRAL_HOST {
            return capability(format!(
                "host has {} vertices; the spectral limit is {MAX_SPECTRAL_HOST}",
                g.n()
            ));
        }
        let root: Vec<T> = (0..g.n())
            .map(|v| T::from_usize(g.degree(v)).expect("degree fits").sqrt())
            .collect();
        let mut matrix = DMatrix::zeros(g.n(), g.n());
        for (u, v) in g.edges() {
            let w = T::one() / (root[u] * root[v]);
            matrix[(u, v)] = w;
            matrix[(v, u)] = w;
        }
        Ok(NormalizedAdjacency { matrix })
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn spectrum(&self) -> NormalizedSpectrum<T> {
        let eig = SymmetricEigen::new(self.matrix.clone());
        let mut eigenvalues: Vec<T> = eig.eigenvalues.iter().copied().collect();
        eigenvalues.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        NormalizedSpectrum { eigenvalues }
    }
}

/// Eigenvalues of the normalized adjacency, in decreasing order.
#[derive(Clone, Debug)]
pub struct NormalizedSpectrum<T> {
    eigenvalues: Vec<T>,
}

/// A trace value with an a-priori bound on its absolute error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralValue {
    pub value: f64,
    pub error_bound: f64,
}

impl<T: RealField + Copy> NormalizedSpectrum<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `tr(A^{2k}) = Σ λ_i^{2k}`.
    pub fn h2k(&self, k: usize) -> Result<SpectralValue> {
        if k == 0 {
            return input("half-length k must be at least 1");
        }
        let exp = i32::try_from(2 * k).map_err(|_| crate::Error::Input("k too large".into()))?;
        let value = self
            .eigenvalues
            .iter()
            .fold(T::zero(), |acc, &l| acc + l.powi(exp));
        let n = self.n() as f64;
        // Each eigenvalue is off by at most a few n·ε in norm; the 2k-th power
        // of a value in [-1, 1] amplifies that by at most 2k.
        let eps = T::default_epsilon().to_subset().unwrap_or(f64::EPSILON);
        let error_bound = 16.0 * k as f64 * n * n * eps;
        Ok(SpectralValue {
            value: value.to_subset().expect("real value"),
            error_bound,
        })
    }
}

pub fn h2k_spectral(g: &Graph, k: usize) -> Result<SpectralValue> {
    NormalizedAdjacency::<f64>::new(g)?.spectrum().h2k(k)
}

/// `Σ_i C(d,i) ((d-2i)/d)^{2k}`.
pub fn hypercube_h2k_closed_form(d: u32, k: usize) -> Result<crate::Rational> {
    use crate::scalar::rational;
    use crate::scalar::Weight;
    if d == 0 || k == 0 {
        return input("need d >= 1 and k >= 1");
    }
    let mut total = rational(0, 1);
    for i in 0..=d {
        let base = rational(d as i64 - 2 * i as i64, d as i64);
        let term = base.powu(2 * k as u32);
        total += term * rational(crate::graph::binomial(d as u64, i as u64) as i64, 1);
    }
    Ok(total)
}
