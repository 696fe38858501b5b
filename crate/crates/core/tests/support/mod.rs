//! Independent reference implementations used only by tests.
//!
//! Nothing here calls into the algorithms under test beyond the `Graph`
//! container; each oracle is the slowest obviously-correct method.

#![allow(dead_code, clippy::needless_range_loop)]

use fanspec::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense signless Laplacian built from adjacency queries.
pub fn signless_laplacian_dense(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.order();
    let mut q = vec![vec![0.0; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u != v && g.has_edge(u, v) {
                q[u][v] = 1.0;
                q[u][u] += 1.0;
            }
        }
    }
    q
}

/// Largest eigenvalue of a nonnegative symmetric matrix by power iteration on
/// `M + I`, reported as a Rayleigh quotient.
pub fn power_iteration(m: &[Vec<f64>], iterations: usize) -> f64 {
    let n = m.len();
    if n == 0 {
        return 0.0;
    }
    // A strictly positive start vector has a nonzero Perron component.
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 / (7.0 * n as f64)).collect();
    let mut rayleigh = 0.0;
    for _ in 0..iterations {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + (0..n).map(|j| m[i][j] * x[j]).sum::<f64>())
            .collect();
        let norm = y.iter().map(|t| t * t).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let next: Vec<f64> = y.iter().map(|t| t / norm).collect();
        let mx: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| m[i][j] * next[j]).sum())
            .collect();
        rayleigh = next.iter().zip(&mx).map(|(a, b)| a * b).sum();
        // Some eigenvalue lies within the residual norm of the quotient.
        let residual = mx
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - rayleigh * b).powi(2))
            .sum::<f64>()
            .sqrt();
        x = next;
        if residual < 1e-11 {
            break;
        }
    }
    rayleigh
}

pub fn q1_power(g: &Graph) -> f64 {
    power_iteration(&signless_laplacian_dense(g), 200_000)
}

/// q1 of `K_k` joined to `n - k` independent vertices, from the 2x2 quotient
/// `[[2k-2 + (n-k), n-k], [k, k]]` solved by the quadratic formula.
pub fn split_q1_quadratic(n: usize, k: usize) -> f64 {
    let (n, k) = (n as f64, k as f64);
    let a = 2.0 * k - 2.0 + (n - k);
    let d = k;
    let off = (n - k) * k;
    let tr = a + d;
    let det = a * d - off;
    (tr + (tr * tr - 4.0 * det).sqrt()) / 2.0
}

/// Maximum matching size by enumerating every set of pairwise disjoint edges.
pub fn brute_matching_number(g: &Graph) -> usize {
    fn go(edges: &[(usize, usize)], from: usize, used: u64) -> usize {
        let mut best = 0;
        for i in from..edges.len() {
            let (u, v) = edges[i];
            if used >> u & 1 == 0 && used >> v & 1 == 0 {
                best = best.max(1 + go(edges, i + 1, used | 1 << u | 1 << v));
            }
        }
        best
    }
    let edges: Vec<(usize, usize)> = all_edges(g);
    go(&edges, 0, 0)
}

fn all_edges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Does some `(2k+1)`-vertex subset host `F_k` with one of its vertices as
/// the center? Tries every subset, every center and every pairing of the rest.
pub fn naive_contains_fan(g: &Graph, k: usize) -> bool {
    let n = g.order();
    let size = 2 * k + 1;
    if size > n {
        return false;
    }
    let mut found = false;
    for_each_subset(n, size, &mut |subset| {
        if found {
            return;
        }
        for (ci, &c) in subset.iter().enumerate() {
            let rest: Vec<usize> = subset
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ci)
                .map(|(_, &v)| v)
                .collect();
            if rest.iter().all(|&v| g.has_edge(c, v)) && has_perfect_pairing(g, &rest) {
                found = true;
                return;
            }
        }
    });
    found
}

fn has_perfect_pairing(g: &Graph, vs: &[usize]) -> bool {
    match vs {
        [] => true,
        [first, rest @ ..] => (0..rest.len()).any(|i| {
            if !g.has_edge(*first, rest[i]) {
                return false;
            }
            let remaining: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v)
                .collect();
            has_perfect_pairing(g, &remaining)
        }),
    }
}

pub fn for_each_subset(n: usize, size: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < size - cur.len() {
                break;
            }
            cur.push(v);
            go(n, size, v + 1, cur, f);
            cur.pop();
        }
    }
    go(n, size, 0, &mut Vec::with_capacity(size), f);
}

pub fn is_connected_bfs(g: &Graph) -> bool {
    let n = g.order();
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = vec![0];
    seen[0] = true;
    while let Some(u) = queue.pop() {
        for v in 0..n {
            if !seen[v] && g.has_edge(u, v) {
                seen[v] = true;
                queue.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Graph on `n` vertices whose edges are the set bits of `mask` over the
/// pairs `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Smallest edge mask over all relabelings. Only practical for `n <= 7`.
pub struct BruteCanon {
    n: usize,
    perms: Vec<Vec<usize>>,
    pair_bit: Vec<Vec<u32>>,
}

impl BruteCanon {
    pub fn new(n: usize) -> Self {
        let mut pair_bit = vec![vec![0u32; n]; n];
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                pair_bit[u][v] = bit;
                pair_bit[v][u] = bit;
                bit += 1;
            }
        }
        BruteCanon {
            n,
            perms: permutations(n),
            pair_bit,
        }
    }

    pub fn key(&self, g: &Graph) -> u64 {
        let edges = all_edges(g);
        self.perms
            .iter()
            .map(|p| {
                edges
                    .iter()
                    .fold(0u64, |acc, &(u, v)| acc | 1 << self.pair_bit[p[u]][p[v]])
            })
            .min()
            .unwrap_or(0)
    }

    /// Number of isomorphism classes among all labeled graphs of this order,
    /// optionally restricted to connected ones.
    pub fn count_classes(&self, connected_only: bool) -> usize {
        let bits = self.n * self.n.saturating_sub(1) / 2;
        let mut keys = std::collections::HashSet::new();
        for mask in 0..1u64 << bits {
            let g = graph_from_mask(self.n, mask);
            if connected_only && !is_connected_bfs(&g) {
                continue;
            }
            keys.insert(self.key(&g));
        }
        keys.len()
    }
}

pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random spanning tree plus independent extra edges.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((order[i], parent));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
        .iter_mut()
        .for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
    edges.sort();
    edges.dedup();
    Graph::from_edges(n, &edges).unwrap()
}

/// Random `d`-regular simple graph from the pairing model with rejection.
pub fn random_regular(rng: &mut impl Rng, n: usize, d: usize) -> Graph {
    assert!((n * d).is_multiple_of(2) && d < n);
    'retry: loop {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(rng);
        let mut edges = Vec::new();
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || edges.contains(&(u, v)) {
                continue 'retry;
            }
            edges.push((u, v));
        }
        return Graph::from_edges(n, &edges).unwrap();
    }
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = all_edges(g)
        .into_iter()
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    Graph::from_edges(g.order(), &edges).unwrap()
}

/// Row sums of `m` restricted to column block `cols`, checked for constancy
/// over the rows in `rows`.
pub fn block_rows_constant(m: &[Vec<f64>], rows: &[usize], cols: &[usize]) -> bool {
    let sums: Vec<f64> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| m[i][j]).sum())
        .collect();
    sums.windows(2).all(|w| w[0] == w[1])
}

pub fn is_equitable(m: &[Vec<f64>], blocks: &[Vec<usize>]) -> bool {
    blocks
        .iter()
        .all(|r| blocks.iter().all(|c| block_rows_constant(m, r, c)))
}

/// True if `g` has `k` pairwise disjoint edges; stops at the first hit.
pub fn has_disjoint_edges(g: &Graph, k: usize) -> bool {
    fn go(edges: &[(usize, usize)], from: usize, used: u64, need: usize) -> bool {
        need == 0
            || (from..edges.len()).any(|i| {
                let (u, v) = edges[i];
                used >> u & 1 == 0
                    && used >> v & 1 == 0
                    && go(edges, i + 1, used | 1 << u | 1 << v, need - 1)
            })
    }
    go(&all_edges(g), 0, 0, k)
}

/// Every edge mask over `n` vertices with exactly `e` edges.
pub fn masks_with_edges(n: usize, e: usize) -> Vec<u64> {
    let bits = n * n.saturating_sub(1) / 2;
    if e > bits {
        return Vec::new();
    }
    if e == 0 {
        return vec![0];
    }
    let limit = 1u64 << bits;
    let mut out = Vec::new();
    let mut m = (1u64 << e) - 1;
    while m < limit {
        out.push(m);
        // Next integer with the same popcount.
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}
