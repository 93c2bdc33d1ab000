//! Restarted Lanczos with full reorthogonalization for the lowest eigenpair of a
//! real symmetric operator, restricted to the complement of a set of locked vectors.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Krylov vectors per cycle.
    pub krylov: usize,
    pub max_restarts: usize,
    /// Residual norm accepted as converged, scaled by `max(1, |θ|)`.
    pub tol: f64,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions { krylov: 80, max_restarts: 400, tol: 1e-10, seed: 0x5eed }
    }
}

pub(crate) struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64], exec: Exec) -> f64 {
    exec::for_len(exec, a.len()).sum(a.len(), |i| a[i] * b[i])
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64], exec: Exec) {
    exec::for_len(exec, y.len()).for_each_mut(y, |i, v| *v += alpha * x[i]);
}

fn normalize(v: &mut [f64], exec: Exec) -> f64 {
    let n = dot(v, v, exec).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Two passes of classical Gram–Schmidt against `basis`.
fn orthogonalize<'a, I>(w: &mut [f64], basis: I, exec: Exec)
where
    I: Iterator<Item = &'a [f64]> + Clone,
{
    for _ in 0..2 {
        for q in basis.clone() {
            let c = dot(q, w, exec);
            axpy(-c, q, w, exec);
        }
    }
}

/// Lowest eigenpair of `op` on the orthogonal complement of `locked`.
pub(crate) fn lowest_pair<F>(op: &F, dim: usize, locked: &[Vec<f64>], opts: &LanczosOptions, exec: Exec) -> Result<Eigenpair>
where
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    let free = dim.checked_sub(locked.len()).filter(|&f| f > 0).ok_or_else(|| Error::contract("no directions left outside the locked subspace"))?;
    let locked_iter = || locked.iter().map(Vec::as_slice);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (locked.len() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut start: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() - 0.5).collect();
    let m = opts.krylov.min(free).max(1);
    let mut w = vec![0.0; dim];
    let mut last_residual = f64::INFINITY;

    for _ in 0..opts.max_restarts.max(1) {
        orthogonalize(&mut start, locked_iter(), exec);
        if normalize(&mut start, exec) == 0.0 {
            return Err(Error::numerical("Lanczos start vector vanished after deflation"));
        }
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alpha = Vec::with_capacity(m);
        let mut beta: Vec<f64> = Vec::with_capacity(m);
        for j in 0..m {
            op(&basis[j], &mut w);
            let a = dot(&basis[j], &w, exec);
            alpha.push(a);
            orthogonalize(&mut w, locked_iter().chain(basis.iter().map(Vec::as_slice)), exec);
            if j + 1 == m {
                break;
            }
            let b = normalize(&mut w, exec);
            if b <= 1e-13 * a.abs().max(1.0) {
                break;
            }
            beta.push(b);
            basis.push(w.clone());
        }
        let k = alpha.len();
        let mut t = DMatrix::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (imin, &theta) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("tridiagonal matrix is non-empty");
        let y = eig.eigenvectors.column(imin);
        let mut x = vec![0.0; dim];
        for (q, &c) in basis.iter().zip(y.iter()) {
            axpy(c, q, &mut x, exec);
        }
        orthogonalize(&mut x, locked_iter(), exec);
        normalize(&mut x, exec);
        op(&x, &mut w);
        orthogonalize(&mut w, locked_iter(), exec);
        axpy(-theta, &x, &mut w, exec);
        last_residual = dot(&w, &w, exec).sqrt();
        if last_residual <= opts.tol * theta.abs().max(1.0) {
            return Ok(Eigenpair { value: theta, vector: x });
        }
        start = x;
    }
    Err(Error::numerical(format!(
        "Lanczos did not converge: residual {last_residual:.3e} after {} restarts of {m} vectors (dim {dim}, {} locked)",
        opts.max_restarts,
        locked.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_op(d: Vec<f64>) -> impl Fn(&[f64], &mut [f64]) + Sync {
        move |x, y| {
            for i in 0..x.len() {
                y[i] = d[i] * x[i];
            }
        }
    }

    #[test]
    fn finds_lowest_of_diagonal_operator() {
        let d: Vec<f64> = (0..200).map(|i| ((i * 37) % 200) as f64 * 0.1 + 1.0).collect();
        let op = diag_op(d);
        let p = lowest_pair(&op, 200, &[], &LanczosOptions::default(), Exec::Sequential).unwrap();
        assert!((p.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn deflation_reaches_degenerate_partner() {
        let mut d = vec![5.0; 64];
        d[3] = 1.0;
        d[10] = 1.0;
        d[20] = 2.0;
        let op = diag_op(d);
        let opts = LanczosOptions::default();
        let p0 = lowest_pair(&op, 64, &[], &opts, Exec::Sequential).unwrap();
        let p1 = lowest_pair(&op, 64, std::slice::from_ref(&p0.vector), &opts, Exec::Sequential).unwrap();
        let p2 = lowest_pair(&op, 64, &[p0.vector, p1.vector], &opts, Exec::Sequential).unwrap();
        assert!((p0.value - 1.0).abs() < 1e-10);
        assert!((p1.value - 1.0).abs() < 1e-10);
        assert!((p2.value - 2.0).abs() < 1e-10);
    }
}
