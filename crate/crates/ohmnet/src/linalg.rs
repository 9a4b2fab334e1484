//! Reduced weighted-Laplacian systems and their solvers.
//!
//! Both the battery problem and the hitting-time equations reduce to an SPD
//! system on a subset of a component's vertices (the Laplacian with some
//! rows/columns pinned). Components below [`DENSE_CUTOFF`] vertices go
//! through dense Gaussian elimination; larger ones through conjugate
//! gradients with diagonal (Jacobi) preconditioning. The tolerance contract
//! everywhere is the relative residual `||Lx - b|| / ||b||`.

use crate::{Error, Graph, Result};

/// Components smaller than this are solved by dense elimination.
pub(crate) const DENSE_CUTOFF: usize = 200;

/// Iteration cap is this multiple of the component size.
pub(crate) const ITERATION_CAP_FACTOR: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    /// Dense below [`DENSE_CUTOFF`] component vertices, CG above.
    Auto,
    Dense,
    ConjugateGradient,
}

/// The Laplacian of `graph` restricted to `vertices` (everything pinned or
/// outside the component is dropped; pinned values enter through the RHS).
pub(crate) struct ReducedSystem<'g> {
    graph: &'g Graph,
    /// Unknown vertices, in a fixed order.
    pub vertices: Vec<usize>,
    /// vertex id -> unknown index
    index: Vec<usize>,
    /// Weighted degrees of the unknowns (the matrix diagonal).
    diag: Vec<f64>,
    /// Size of the component the system came from (drives method choice).
    component_size: usize,
}

pub(crate) struct Solution {
    pub values: Vec<f64>,
    pub residual: f64,
}

impl<'g> ReducedSystem<'g> {
    pub fn new(graph: &'g Graph, vertices: Vec<usize>, component_size: usize) -> ReducedSystem<'g> {
        let mut index = vec![usize::MAX; graph.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let diag = vertices.iter().map(|&v| graph.weighted_degree(v) as f64).collect();
        ReducedSystem { graph, vertices, index, diag, component_size }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// `out = L x` on the unknowns.
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (i, &v) in self.vertices.iter().enumerate() {
            let mut acc = self.diag[i] * x[i];
            for &(y, m) in self.graph.neighbors(v) {
                let j = self.index[y];
                if j != usize::MAX {
                    acc -= m as f64 * x[j];
                }
            }
            out[i] = acc;
        }
    }

    fn relative_residual(&self, x: &[f64], b: &[f64]) -> f64 {
        let norm_b = norm(b);
        if norm_b == 0.0 {
            return 0.0;
        }
        let mut lx = vec![0.0; x.len()];
        self.apply(x, &mut lx);
        let mut acc = 0.0;
        for i in 0..x.len() {
            let d = lx[i] - b[i];
            acc += d * d;
        }
        acc.sqrt() / norm_b
    }

    pub fn solve(&self, b: &[f64], tolerance: f64, method: SolveMethod) -> Result<Solution> {
        if self.len() == 0 {
            return Ok(Solution { values: Vec::new(), residual: 0.0 });
        }
        let dense = match method {
            SolveMethod::Auto => self.component_size < DENSE_CUTOFF,
            SolveMethod::Dense => true,
            SolveMethod::ConjugateGradient => false,
        };
        let values = if dense { self.solve_dense(b) } else { self.solve_cg(b, tolerance)? };
        let residual = self.relative_residual(&values, b);
        if residual > tolerance && residual > 1e-14 {
            return Err(Error::NonConvergence { residual, iterations: 0 });
        }
        Ok(Solution { values, residual })
    }

    fn solve_dense(&self, b: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut a = vec![vec![0.0f64; n]; n];
        for (i, &v) in self.vertices.iter().enumerate() {
            a[i][i] = self.diag[i];
            for &(y, m) in self.graph.neighbors(v) {
                let j = self.index[y];
                if j != usize::MAX {
                    a[i][j] = -(m as f64);
                }
            }
        }
        let mut x = b.to_vec();
        // Gaussian elimination with partial pivoting.
        for col in 0..n {
            let mut pivot = col;
            for row in col + 1..n {
                if a[row][col].abs() > a[pivot][col].abs() {
                    pivot = row;
                }
            }
            a.swap(col, pivot);
            x.swap(col, pivot);
            let p = a[col][col];
            debug_assert!(p != 0.0, "reduced Laplacian is nonsingular");
            for row in col + 1..n {
                let factor = a[row][col] / p;
                if factor == 0.0 {
                    continue;
                }
                for k in col..n {
                    a[row][k] -= factor * a[col][k];
                }
                x[row] -= factor * x[col];
            }
        }
        for col in (0..n).rev() {
            let mut acc = x[col];
            for k in col + 1..n {
                acc -= a[col][k] * x[k];
            }
            x[col] = acc / a[col][col];
        }
        x
    }

    fn solve_cg(&self, b: &[f64], tolerance: f64) -> Result<Vec<f64>> {
        let n = self.len();
        let norm_b = norm(b);
        if norm_b == 0.0 {
            return Ok(vec![0.0; n]);
        }
        let cap = ITERATION_CAP_FACTOR * self.component_size;
        let target = tolerance * norm_b;

        let mut x = vec![0.0; n];
        let mut r = b.to_vec();
        let mut z: Vec<f64> = r.iter().zip(&self.diag).map(|(ri, di)| ri / di).collect();
        let mut p = z.clone();
        let mut rz: f64 = dot(&r, &z);
        let mut ap = vec![0.0; n];

        for iteration in 0..cap {
            if norm(&r) <= target {
                return Ok(x);
            }
            self.apply(&p, &mut ap);
            let pap = dot(&p, &ap);
            if pap <= 0.0 {
                return Err(Error::NonConvergence { residual: norm(&r) / norm_b, iterations: iteration });
            }
            let alpha = rz / pap;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            // Periodically recompute the true residual to stop drift.
            if iteration % 64 == 63 {
                self.apply(&x, &mut r);
                for i in 0..n {
                    r[i] = b[i] - r[i];
                }
            }
            for i in 0..n {
                z[i] = r[i] / self.diag[i];
            }
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        let residual = self.relative_residual(&x, b);
        if residual <= tolerance {
            Ok(x)
        } else {
            Err(Error::NonConvergence { residual, iterations: cap })
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
