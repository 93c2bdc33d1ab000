//! Simple undirected graphs held as symmetric 0/1 adjacency matrices.

mod edgelist;
pub mod fixtures;

pub use edgelist::{parse_edge_list, to_edge_list};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An `N`-vertex simple graph. Vertices are `0..N`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    adj: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edge_list(r.order, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { order: g.n, edges: g.edges().collect() }
    }
}

/// Strongly-regular parameters `(ν, k, λ, μ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub nu: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl Graph {
    /// Graph with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("graph order must be positive"));
        }
        Ok(Graph { n, adj: vec![0; n * n] })
    }

    /// Build from an edge list; duplicate edges collapse.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            g.adj[u * n + v] = 1;
            g.adj[v * n + u] = 1;
        }
        Ok(g)
    }

    /// Build from adjacency rows, validating symmetry, zero diagonal and 0/1 entries.
    pub fn from_adjacency<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::input(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if x > 1 {
                    return Err(Error::input(format!("entry ({i},{j}) = {x} is not 0/1")));
                }
                g.adj[i * n + j] = x;
            }
        }
        for i in 0..n {
            if g.adj[i * n + i] != 0 {
                return Err(Error::input(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                if g.adj[i * n + j] != g.adj[j * n + i] {
                    return Err(Error::input(format!("asymmetric entry ({i},{j})")));
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adj(&self, i: usize, j: usize) -> u8 {
        self.adj[i * self.n + j]
    }

    /// Row-major adjacency entries.
    pub fn adjacency(&self) -> &[u8] {
        &self.adj
    }

    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        self.adj.chunks(self.n).map(<[u8]>::to_vec).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).filter(move |&v| self.adj(u, v) == 1).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n].iter().map(|&x| x as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.adj(v, u) == 1)
    }

    /// Degrees sorted non-increasing.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Coefficients of `det(λI − A)`, highest degree first (`c[0] = 1`).
    ///
    /// Faddeev–LeVerrier in exact integer arithmetic; every division is exact.
    pub fn characteristic_polynomial(&self) -> CharPoly {
        let n = self.n;
        let a: Vec<BigInt> = self.adj.iter().map(|&x| BigInt::from(x)).collect();
        let mut coeffs = vec![BigInt::one()];
        // M_0 = 0, M_k = A·M_{k−1} + c_{k−1}·I, c_k = −tr(A·M_k)/k.
        let mut m = vec![BigInt::zero(); n * n];
        for k in 1..=n {
            let am = matmul(&a, &m, n);
            let prev = &coeffs[k - 1];
            m = am;
            for i in 0..n {
                m[i * n + i] += prev;
            }
            let am = matmul(&a, &m, n);
            let trace: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
            coeffs.push(-trace / BigInt::from(k));
        }
        CharPoly(coeffs)
    }

    /// `(ν, k, λ, μ)` when the graph is strongly regular, else `None`.
    ///
    /// A family with no adjacent (or no non-adjacent) pairs reports 0 for λ (or μ).
    pub fn strongly_regular_params(&self) -> Option<SrgParams> {
        let n = self.n;
        let k = self.degree(0);
        if (1..n).any(|v| self.degree(v) != k) {
            return None;
        }
        let common = |u: usize, v: usize| (0..n).filter(|&w| self.adj(u, w) == 1 && self.adj(v, w) == 1).count();
        let (mut lambda, mut mu) = (None, None);
        for u in 0..n {
            for v in u + 1..n {
                let c = common(u, v);
                let slot = if self.adj(u, v) == 1 { &mut lambda } else { &mut mu };
                match *slot {
                    None => *slot = Some(c),
                    Some(x) if x != c => return None,
                    _ => {}
                }
            }
        }
        Some(SrgParams { nu: n, k, lambda: lambda.unwrap_or(0), mu: mu.unwrap_or(0) })
    }

    /// Vertices relabeled by `perm`: vertex `i` becomes `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::input("permutation length differs from graph order"));
        }
        Graph::from_edge_list(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Subgraph induced by `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let k = vertices.len();
        let mut g = Graph::empty(k)?;
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                g.adj[a * k + b] = self.adj(u, v);
            }
        }
        Ok(g)
    }
}

fn matmul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for l in 0..n {
            let x = &a[i * n + l];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * &b[l * n + j];
            }
        }
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(N={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Cycle `C_n`: edges `i ~ i+1 mod n`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Wheel `W_n`: a rim cycle on `0..n−1` and hub `n−1` joined to every rim vertex.
pub fn make_wheel(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::input(format!("wheel needs n >= 4, got {n}")));
    }
    let rim = n - 1;
    let edges = (0..rim).flat_map(|i| [(i, (i + 1) % rim), (i, rim)]);
    Graph::from_edge_list(n, edges)
}

/// `rows × cols` grid. The vertex at row `r`, column `c` is labeled `c·rows + r`,
/// so each column's vertices are consecutive. `make_grid(2, 3)` is G₂,₃ with the
/// published labels.
pub fn make_grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 || rows * cols < 2 {
        return Err(Error::input(format!("grid needs rows·cols >= 2, got {rows}x{cols}")));
    }
    let label = |r: usize, c: usize| c * rows + r;
    let vertical = (0..cols).flat_map(move |c| (0..rows - 1).map(move |r| (label(r, c), label(r + 1, c))));
    let horizontal = (0..rows).flat_map(move |r| (0..cols - 1).map(move |c| (label(r, c), label(r, c + 1))));
    Graph::from_edge_list(rows * cols, vertical.chain(horizontal))
}

/// Complete graph `K_n`.
pub fn make_complete(n: usize) -> Result<Graph> {
    Graph::from_edge_list(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Path `P_n`: `0 – 1 – … – n−1`.
pub fn make_path(n: usize) -> Result<Graph> {
    Graph::from_edge_list(n, (1..n).map(|i| (i - 1, i)))
}

/// Integer characteristic polynomial, highest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly(pub Vec<BigInt>);

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    /// Value at `λ = 0`, i.e. the constant term.
    pub fn constant(&self) -> &BigInt {
        self.0.last().expect("monic polynomial has a leading term")
    }

    /// Coefficients as `i64`, highest degree first, when they fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.degree();
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = deg - i;
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let show_mag = !mag.is_one() || p == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match p {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{p}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
