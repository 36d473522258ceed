//! Effective resistances from a dense Laplacian pseudoinverse.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Largest vertex count accepted by the dense solver.
pub const DENSE_SOLVER_LIMIT: usize = 2000;

/// Effective resistance between the endpoints of every edge, aligned with
/// `g.edges()`. Each record is a resistor of conductance `u_e`, so the
/// effective conductance is `c_e = 1 / r_e`.
pub fn effective_resistances(g: &Multigraph) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    if n > DENSE_SOLVER_LIMIT {
        return Err(Error::domain(format!(
            "dense resistance solver is limited to n <= {DENSE_SOLVER_LIMIT}"
        )));
    }
    g.require_connected("effective_resistances")?;
    let pinv = laplacian_pseudoinverse(g)?;
    Ok(g.edges()
        .iter()
        .map(|e| pinv[(e.a, e.a)] + pinv[(e.b, e.b)] - 2.0 * pinv[(e.a, e.b)])
        .collect())
}

/// `L⁺ = (L + J/n)⁻¹ − J/n` for a connected graph.
pub(crate) fn laplacian_pseudoinverse(g: &Multigraph) -> Result<DMatrix<f64>> {
    let n = g.vertex_count();
    let shift = 1.0 / n as f64;
    let mut m = DMatrix::from_element(n, n, shift);
    for e in g.edges() {
        let w = e.weight as f64;
        m[(e.a, e.a)] += w;
        m[(e.b, e.b)] += w;
        m[(e.a, e.b)] -= w;
        m[(e.b, e.a)] -= w;
    }
    let chol = m
        .cholesky()
        .ok_or_else(|| Error::internal("shifted Laplacian is not positive definite"))?;
    let mut inv = chol.inverse();
    inv.add_scalar_mut(-shift);
    Ok(inv)
}
