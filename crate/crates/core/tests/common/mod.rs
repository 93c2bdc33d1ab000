//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use aqgi::graphs::Graph;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in all_perms(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Automorphisms by checking every permutation against the adjacency matrix.
pub fn brute_automorphisms(g: &Graph) -> Vec<String> {
    let n = g.order();
    let mut out: Vec<String> = all_perms(n)
        .into_iter()
        .filter(|p| (0..n).all(|i| (0..n).all(|j| g.adj(i, j) == g.adj(p[i], p[j]))))
        .map(|p| p.iter().map(|d| d.to_string()).collect())
        .collect();
    out.sort();
    out
}

/// Cost from the matrix definitions: `σ_ij = δ(i, s_j)` for in-range `s_j`,
/// `B = σ A σᵀ` by explicit products.
pub fn naive_cost(g: &Graph, gp: &Graph, s: &[u32], squared: bool) -> u64 {
    let n = g.order();
    let sigma = |i: usize, j: usize| -> i64 { i64::from((s[j] as usize) < n && s[j] as usize == i) };
    let c1 = s.iter().filter(|&&x| x as usize >= n).count() as u64;
    let mut c2 = 0;
    for i in 0..n {
        for j in i + 1..n {
            c2 += u64::from(s[i] == s[j]);
        }
    }
    let mut c3 = 0u64;
    for l in 0..n {
        for m in 0..n {
            let mut b = 0i64;
            for i in 0..n {
                for j in 0..n {
                    b += sigma(l, i) * g.adj(i, j) as i64 * sigma(m, j);
                }
            }
            let d = b - gp.adj(l, m) as i64;
            c3 += if squared { (d * d) as u64 } else { d.unsigned_abs() };
        }
    }
    c1 + c2 + c3
}

/// `a·Σ_l ½(1 − σˣ_l) + b·diag(energies)` from Kronecker products.
pub fn kron_hamiltonian(a: f64, b: f64, energies: &[f64]) -> DMatrix<f64> {
    let dim = energies.len();
    let qubits = dim.trailing_zeros() as usize;
    let id2 = DMatrix::<f64>::identity(2, 2);
    let x = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for l in 0..qubits {
        // Qubit l is bit l of the basis index, so it is the l-th factor from the right.
        let term = (0..qubits).rev().fold(DMatrix::<f64>::identity(1, 1), |acc, k| {
            let f = if k == l { (&id2 - &x) * 0.5 } else { id2.clone() };
            acc.kronecker(&f)
        });
        h += term * a;
    }
    for (i, &e) in energies.iter().enumerate() {
        h[(i, i)] += b * e;
    }
    h
}

/// `i dψ/dt = H(t/T) ψ` by classical RK4 on the Kronecker-built matrix.
pub fn dense_rk4(energies: &[f64], t_total: f64, steps: usize) -> DVector<Complex64> {
    let dim = energies.len();
    let hi = kron_hamiltonian(1.0, 0.0, energies);
    let hp = DMatrix::from_diagonal(&DVector::from_column_slice(energies));
    let h = |t: f64| -> DMatrix<Complex64> {
        let s = t / t_total;
        (&hi * (1.0 - s) + &hp * s).map(|v| Complex64::new(v, 0.0))
    };
    let minus_i = Complex64::new(0.0, -1.0);
    let f = |t: f64, y: &DVector<Complex64>| (h(t) * y) * minus_i;
    let mut y = DVector::from_element(dim, Complex64::new(1.0 / (dim as f64).sqrt(), 0.0));
    let dt = t_total / steps as f64;
    for k in 0..steps {
        let t = k as f64 * dt;
        let k1 = f(t, &y);
        let k2 = f(t + dt / 2.0, &(&y + &k1 * Complex64::from(dt / 2.0)));
        let k3 = f(t + dt / 2.0, &(&y + &k2 * Complex64::from(dt / 2.0)));
        let k4 = f(t + dt, &(&y + &k3 * Complex64::from(dt)));
        y += (k1 + k2 * Complex64::from(2.0) + k3 * Complex64::from(2.0) + k4) * Complex64::from(dt / 6.0);
    }
    y
}
