//! Dense symmetric eigensolving, signless Laplacians, quotient matrices and
//! the closed-form spectral bounds used by the extremal search.
//!
//! The signless Laplacian spectral radius is written `q1` throughout; some
//! literature calls the same quantity `ρ_Q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Off-diagonal convergence threshold per unit of order.
pub const JACOBI_THRESHOLD: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Slack for floating-point row-sum comparisons on non-integer matrices.
const ROW_SUM_SLACK: f64 = 1e-12;
const DEFAULT_EIGEN_TOL: f64 = 1e-9;

/// Dense real symmetric matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    /// Fails unless `entries` is an `order x order` exactly symmetric matrix of
    /// finite values.
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::Matrix(format!(
                "expected {} entries, got {}",
                order * order,
                entries.len()
            )));
        }
        for i in 0..order {
            for j in 0..order {
                let x = entries[i * order + j];
                if !x.is_finite() {
                    return Err(Error::Matrix(format!("entry ({i}, {j}) is not finite")));
                }
                if j > i && x != entries[j * order + i] {
                    return Err(Error::Matrix(format!("entry ({i}, {j}) breaks symmetry")));
                }
            }
        }
        Ok(SymMatrix { order, entries })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let entries = (0..order * order)
            .map(|idx| f(idx / order, idx % order))
            .collect();
        SymMatrix::new(order, entries)
    }

    pub fn identity(order: usize) -> Self {
        SymMatrix::from_fn(order, |i, j| (i == j) as u8 as f64).expect("identity is symmetric")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum()
    }

    /// True if every entry is an integer small enough for exact `f64` sums.
    pub fn is_integer_valued(&self) -> bool {
        self.entries
            .iter()
            .all(|x| x.fract() == 0.0 && x.abs() < 2f64.powi(40))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&x| x >= 0.0)
    }

    /// Row-major product `self * v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.order)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    /// Non-increasing.
    pub eigenvalues: Vec<f64>,
    /// Off-diagonal Frobenius norm when the iteration stopped.
    pub offdiag_residual: f64,
    pub sweeps: usize,
}

impl SpectrumResult {
    pub fn largest(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// All eigenvalues of `m` by cyclic Jacobi rotations.
pub fn spectrum(m: &SymMatrix) -> Result<SpectrumResult> {
    spectrum_with_threshold(m, JACOBI_THRESHOLD)
}

/// Cyclic Jacobi with a caller-chosen stopping threshold: iteration stops once
/// the off-diagonal Frobenius norm drops below `threshold * order`.
pub fn spectrum_with_threshold(m: &SymMatrix, threshold: f64) -> Result<SpectrumResult> {
    let n = m.order;
    let mut a = m.entries.clone();
    let stop = threshold * n.max(1) as f64;
    let mut sweeps = 0;
    let mut residual = offdiag_norm(&a, n);
    while residual >= stop {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
        residual = offdiag_norm(&a, n);
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(SpectrumResult {
        eigenvalues,
        offdiag_residual: residual,
        sweeps,
    })
}

fn offdiag_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`.
#[inline]
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[r * n + p];
        let arq = a[r * n + q];
        let new_p = c * arp - s * arq;
        let new_q = c * arq + s * arp;
        a[r * n + p] = new_p;
        a[p * n + r] = new_p;
        a[r * n + q] = new_q;
        a[q * n + r] = new_q;
    }
}

/// `Q(G) = D(G) + A(G)`.
pub fn signless_laplacian(g: &Graph) -> SymMatrix {
    let n = g.order();
    SymMatrix::from_fn(n, |i, j| {
        if i == j {
            g.degree(i) as f64
        } else {
            g.has_edge(i, j) as u8 as f64
        }
    })
    .expect("signless Laplacian is symmetric")
}

pub fn adjacency_matrix(g: &Graph) -> SymMatrix {
    SymMatrix::from_fn(g.order(), |i, j| g.has_edge(i, j) as u8 as f64)
        .expect("adjacency is symmetric")
}

/// Largest eigenvalue of the signless Laplacian.
pub fn q1(g: &Graph) -> f64 {
    spectrum(&signless_laplacian(g))
        .expect("Jacobi converges on symmetric input")
        .largest()
}

/// `q1(S_{n,k})` from the largest root of the 2x2 quotient characteristic
/// polynomial: `(n+2k-2 + sqrt((n+2k-2)^2 - 8k(k-1))) / 2`.
pub fn q1_split_closed_form(n: usize, k: usize) -> Result<f64> {
    if k == 0 || n <= k {
        return Err(Error::InvalidParameters(format!(
            "need n > k >= 1, got n={n}, k={k}"
        )));
    }
    let s = (n + 2 * k - 2) as f64;
    let radicand = s * s - 8.0 * (k * (k - 1)) as f64;
    Ok((s + radicand.sqrt()) / 2.0)
}

/// `n + 2k - 2 - 2k(k-1)/(n+2k-3)`, a lower bound on `q1(S_{n,k})` valid for
/// `n >= 2k^2 - 4k + 3`.
pub fn q1_split_lower_bound(n: usize, k: usize) -> Result<f64> {
    if k == 0 || n <= k {
        return Err(Error::InvalidParameters(format!(
            "need n > k >= 1, got n={n}, k={k}"
        )));
    }
    let threshold = 2 * k * k + 3 - 4 * k;
    if n < threshold {
        return Err(Error::InvalidParameters(format!(
            "lower bound needs n >= {threshold}, got {n}"
        )));
    }
    Ok((n + 2 * k - 2) as f64 - (2 * k * (k - 1)) as f64 / (n + 2 * k - 3) as f64)
}

/// Maximum over vertices of `d_v + (sum of neighbor degrees) / d_v`, with the
/// first vertex attaining it. This bounds `q1` from above.
pub fn merris_bound(g: &Graph) -> Result<(f64, usize)> {
    let deg = g.degrees();
    let mut best: Option<(u64, u64, usize)> = None; // value = num / den
    for v in 0..g.order() {
        let d = deg[v] as u64;
        if d == 0 {
            return Err(Error::IsolatedVertex(v));
        }
        let sum: u64 = g.neighbors(v).iter().map(|w| deg[w] as u64).sum();
        let num = d * d + sum;
        match best {
            Some((bn, bd, _)) if num * bd <= bn * d => {}
            _ => best = Some((num, d, v)),
        }
    }
    let (num, den, v) =
        best.ok_or_else(|| Error::InvalidParameters("graph has no vertices".into()))?;
    Ok((num as f64 / den as f64, v))
}

/// Both sides of `Σ_{w∈N(v)} d_w = d_v + 2e(G[N(v)]) + e(N(v), N_2(v))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eq1Identity {
    pub lhs: u64,
    pub rhs: u64,
    pub equal: bool,
}

/// Evaluates the neighbor-degree-sum decomposition at `v` in exact integers.
pub fn eq1_identity(g: &Graph, v: usize) -> Result<Eq1Identity> {
    g.check_vertex(v)?;
    let nb = g.neighbors(v);
    if nb.is_empty() {
        return Err(Error::IsolatedVertex(v));
    }
    let lhs: u64 = nb.iter().map(|w| g.degree(w) as u64).sum();
    let inside = g.edges_within(nb) as u64;
    let outward = g.cut_edges(nb, g.second_neighborhood(v)?)? as u64;
    let rhs = nb.len() as u64 + 2 * inside + outward;
    Ok(Eq1Identity {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// Ordered blocks of a partition of `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(order: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; order];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Partition(format!("block {i} is empty")));
            }
            for &v in b {
                if v >= order {
                    return Err(Error::Partition(format!(
                        "vertex {v} out of range for order {order}"
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Partition(format!("vertex {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Partition(format!("vertex {v} is not covered")));
        }
        Ok(VertexPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn order(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

/// Block-averaged row sums of a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    /// Row-major, `size x size`.
    pub b: Vec<f64>,
    pub size: usize,
    pub block_sizes: Vec<usize>,
    /// Every block has constant row sums.
    pub equitable: bool,
}

impl QuotientMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.b[i * self.size + j]
    }

    /// Eigenvalues, non-increasing.
    ///
    /// Since `|N_i| b_ij` and `|N_j| b_ji` both equal the entry sum of the
    /// `(i, j)` block of a symmetric matrix, `D^{1/2} B D^{-1/2}` (with `D` the
    /// block sizes) is symmetric and similar to `B`.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let k = self.size;
        let sizes: Vec<f64> = self.block_sizes.iter().map(|&s| s as f64).collect();
        let mut sym = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                let x = self.get(i, j) * (sizes[i] / sizes[j]).sqrt();
                sym[i * k + j] = x;
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let avg = 0.5 * (sym[i * k + j] + sym[j * k + i]);
                sym[i * k + j] = avg;
                sym[j * k + i] = avg;
            }
        }
        Ok(spectrum(&SymMatrix::new(k, sym)?)?.eigenvalues)
    }
}

/// Quotient matrix of `m` with respect to `p`, with its equitability flag.
/// Row sums are compared exactly when `m` is integer valued.
pub fn quotient(m: &SymMatrix, p: &VertexPartition) -> Result<QuotientMatrix> {
    if p.order() != m.order() {
        return Err(Error::Partition(format!(
            "partition covers {} vertices, matrix has order {}",
            p.order(),
            m.order()
        )));
    }
    let exact = m.is_integer_valued();
    let k = p.blocks.len();
    let mut b = vec![0.0; k * k];
    let mut equitable = true;
    for (i, rows) in p.blocks.iter().enumerate() {
        for (j, cols) in p.blocks.iter().enumerate() {
            let sums: Vec<f64> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| m.get(r, c)).sum())
                .collect();
            let first = sums[0];
            let constant = if exact {
                sums.iter().all(|&s| s == first)
            } else {
                sums.iter().all(|&s| (s - first).abs() <= ROW_SUM_SLACK)
            };
            equitable &= constant;
            b[i * k + j] = sums.iter().sum::<f64>() / sums.len() as f64;
        }
    }
    Ok(QuotientMatrix {
        b,
        size: k,
        block_sizes: p.blocks.iter().map(Vec::len).collect(),
        equitable,
    })
}

/// Compares the largest eigenvalues of two nonnegative symmetric matrices with
/// `m1 - m2` entrywise nonnegative, for which `λ1(m1) >= λ1(m2)` must hold.
/// Returns whether the computed values satisfy it within the eigen tolerance.
pub fn perron_dominance(m1: &SymMatrix, m2: &SymMatrix) -> Result<bool> {
    if m1.order() != m2.order() {
        return Err(Error::Matrix(format!(
            "orders differ: {} vs {}",
            m1.order(),
            m2.order()
        )));
    }
    let n = m1.order();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (m1.get(i, j), m2.get(i, j));
            if a < 0.0 || b < 0.0 {
                return Err(Error::Matrix(format!("negative entry at ({i}, {j})")));
            }
            if a < b {
                return Err(Error::Matrix(format!(
                    "m1 - m2 is negative at ({i}, {j}): {a} < {b}"
                )));
            }
        }
    }
    let l1 = spectrum(m1)?.largest();
    let l2 = spectrum(m2)?.largest();
    Ok(l1 >= l2 - DEFAULT_EIGEN_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn signless_laplacian_entries() {
        let q = signless_laplacian(&Graph::complete(2).unwrap());
        assert_eq!(q.entries(), &[1.0, 1.0, 1.0, 1.0]);
        let q = signless_laplacian(&Graph::complete(3).unwrap());
        assert_eq!(q.entries(), &[2.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 2.0]);
        let g = Graph::split(7, 3).unwrap();
        let q = signless_laplacian(&g);
        let sums = q.mul_vec(&[1.0; 7]);
        for (v, sum) in sums.into_iter().enumerate() {
            assert_eq!(sum, 2.0 * g.degree(v) as f64);
        }
    }

    #[test]
    fn small_spectra() {
        let s = spectrum(&SymMatrix::identity(3)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0, 1.0]);
        assert_eq!(s.sweeps, 0);
        let s = spectrum(&SymMatrix::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap()).unwrap();
        assert!(close(s.eigenvalues[0], 1.0, 1e-12) && close(s.eigenvalues[1], -1.0, 1e-12));
        let s = spectrum(&signless_laplacian(&Graph::cycle(4).unwrap())).unwrap();
        for (got, want) in s.eigenvalues.iter().zip([4.0, 2.0, 2.0, 0.0]) {
            assert!(close(*got, want, 1e-12), "{:?}", s.eigenvalues);
        }
        assert!(spectrum(&SymMatrix::identity(0))
            .unwrap()
            .eigenvalues
            .is_empty());
    }

    #[test]
    fn rejects_asymmetric_or_nonfinite() {
        assert!(SymMatrix::new(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(SymMatrix::new(1, vec![f64::NAN]).is_err());
        assert!(SymMatrix::new(2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn q1_values() {
        assert!(close(q1(&Graph::complete(4).unwrap()), 6.0, 1e-12));
        assert!(close(
            q1(&Graph::complete_bipartite(2, 3).unwrap()),
            5.0,
            1e-12
        ));
        let expected = 6.0 + 4.0 * 2f64.sqrt();
        assert!(close(q1(&Graph::split(10, 2).unwrap()), expected, 1e-9));
    }

    #[test]
    fn split_closed_form() {
        for n in 2..30 {
            assert_eq!(q1_split_closed_form(n, 1).unwrap(), n as f64);
            assert_eq!(q1_split_lower_bound(n, 1).unwrap(), n as f64);
        }
        assert!(close(
            q1_split_closed_form(8, 2).unwrap(),
            5.0 + 21f64.sqrt(),
            1e-12
        ));
        assert!(close(
            q1_split_closed_form(10, 2).unwrap(),
            6.0 + 4.0 * 2f64.sqrt(),
            1e-12
        ));
        assert!(q1_split_closed_form(3, 3).is_err());
        let lb = q1_split_lower_bound(10, 2).unwrap();
        assert!(close(lb, 12.0 - 4.0 / 11.0, 1e-12));
        assert!(lb <= q1_split_closed_form(10, 2).unwrap());
        let lb = q1_split_lower_bound(11, 3).unwrap();
        assert!(close(lb, 15.0 - 12.0 / 14.0, 1e-12));
        assert!(lb <= q1_split_closed_form(11, 3).unwrap());
        assert!(q1_split_lower_bound(8, 3).is_err());
        assert!(q1_split_lower_bound(9, 3).is_ok());
    }

    #[test]
    fn merris_examples() {
        let (v, _) = merris_bound(&Graph::cycle(5).unwrap()).unwrap();
        assert_eq!(v, 4.0);
        let (v, _) = merris_bound(&Graph::complete_bipartite(2, 3).unwrap()).unwrap();
        assert_eq!(v, 5.0);
        let s = Graph::split(8, 2).unwrap();
        let (v, at) = merris_bound(&s).unwrap();
        // clique vertex: 7 + (7 + 6*2)/7
        assert!(close(v, 7.0 + 19.0 / 7.0, 1e-12));
        assert_eq!(at, 0);
        assert!(v > q1(&s) + 1e-3);
        assert!(matches!(
            merris_bound(&Graph::empty(2).unwrap()),
            Err(Error::IsolatedVertex(0))
        ));
    }

    #[test]
    fn quotient_of_split_graph() {
        for (n, k) in [(5, 2), (10, 2), (9, 4), (6, 1)] {
            let q = signless_laplacian(&Graph::split(n, k).unwrap());
            let p = VertexPartition::new(n, vec![(0..k).collect(), (k..n).collect()]).unwrap();
            let b = quotient(&q, &p).unwrap();
            assert!(b.equitable);
            assert_eq!(
                b.b,
                vec![(n + k - 2) as f64, (n - k) as f64, k as f64, k as f64]
            );
            let lam = b.eigenvalues().unwrap();
            assert!(close(lam[0], q1_split_closed_form(n, k).unwrap(), 1e-9));
        }
    }

    #[test]
    fn single_block_quotient() {
        let c5 = signless_laplacian(&Graph::cycle(5).unwrap());
        let p = VertexPartition::new(5, vec![(0..5).collect()]).unwrap();
        let b = quotient(&c5, &p).unwrap();
        assert!(b.equitable);
        assert_eq!(b.b, vec![4.0]);
        let p4 = signless_laplacian(&Graph::path(4).unwrap());
        let b = quotient(
            &p4,
            &VertexPartition::new(4, vec![(0..4).collect()]).unwrap(),
        )
        .unwrap();
        assert!(!b.equitable);
        assert_eq!(b.b, vec![3.0]);
    }

    #[test]
    fn partition_validation() {
        assert!(VertexPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 3], vec![1, 2]]).is_err());
        let p = VertexPartition::new(3, vec![vec![2], vec![0, 1]]).unwrap();
        assert!(quotient(&SymMatrix::identity(4), &p).is_err());
    }

    #[test]
    fn dominance() {
        let k4 = signless_laplacian(&Graph::complete(4).unwrap());
        let c4 = signless_laplacian(&Graph::cycle(4).unwrap());
        assert!(perron_dominance(&k4, &k4).unwrap());
        assert!(perron_dominance(&k4, &c4).unwrap());
        assert!(perron_dominance(&c4, &k4).is_err());
        let neg = SymMatrix::new(1, vec![-1.0]).unwrap();
        assert!(perron_dominance(&neg, &neg).is_err());
    }

    #[test]
    fn neighbor_degree_decomposition() {
        for n in 2..9 {
            let r = eq1_identity(&Graph::complete(n).unwrap(), 0).unwrap();
            assert!(r.equal);
            assert_eq!(r.lhs, ((n - 1) * (n - 1)) as u64);
        }
        let r = eq1_identity(&Graph::cycle(5).unwrap(), 2).unwrap();
        assert_eq!((r.lhs, r.rhs), (4, 4));
        assert!(eq1_identity(&Graph::empty(3).unwrap(), 1).is_err());
    }
}
