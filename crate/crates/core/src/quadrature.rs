//! Gauss quadrature generated from a family's own recurrence coefficients.
//!
//! Golub–Welsch: the nodes are the eigenvalues of the symmetrized Jacobi
//! matrix (diagonal `beta_n`, off-diagonal `sqrt(alpha_n gamma_{n+1})`), the
//! weights are `mass * v_0^2` from the first eigenvector components. Exact
//! for polynomial integrands up to degree `2 deg - 1` against the family
//! weight, which is all the orthogonality checks need.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::family::{Family, Kind};

#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Integrates `f` against the family weight.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Builds a `deg`-point rule for a continuous family.
pub fn gauss_rule(family: &Family<f64>, deg: usize) -> Result<GaussRule> {
    if family.kind() != Kind::Continuous {
        return Err(Error::InvalidParameter(format!(
            "quadrature is for continuous families, got {}",
            family.name()
        )));
    }
    if deg < 1 {
        return Err(Error::InvalidParameter("quadrature needs deg >= 1".into()));
    }
    let mut jacobi = DMatrix::<f64>::zeros(deg, deg);
    for i in 0..deg {
        jacobi[(i, i)] = family.recurrence(i).beta;
        if i + 1 < deg {
            let prod = family.recurrence(i).alpha * family.recurrence(i + 1).gamma;
            debug_assert!(prod > 0.0, "Jacobi symmetrization needs alpha_n gamma_n+1 > 0");
            let a = prod.sqrt();
            jacobi[(i, i + 1)] = a;
            jacobi[(i + 1, i)] = a;
        }
    }
    let eig = jacobi.symmetric_eigen();
    let mass = family.mass();
    let mut pairs: Vec<(f64, f64)> = (0..deg)
        .map(|k| {
            let v0 = eig.eigenvectors[(0, k)];
            (eig.eigenvalues[k], mass * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    Ok(GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}
