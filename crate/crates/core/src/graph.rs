//! Simple undirected graphs on at most 64 vertices.
//!
//! Each vertex's neighborhood is a single `u64` bitset, so neighborhood
//! intersections and induced-subgraph queries are word operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported order for the bitset backend.
pub const MAX_ORDER: usize = 64;

/// A set of vertices of a graph with at most [`MAX_ORDER`] vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A simple undirected graph with vertices `0..n`.
///
/// Values are immutable once built; every constructor maintains symmetry
/// and the absence of loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::InvalidParameters(format!("loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency bit rows, validating symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mask = VertexSet::full(n).0;
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::InvalidParameters(format!(
                    "row {v} references vertices beyond {n}"
                )));
            }
            if row >> v & 1 == 1 {
                return Err(Error::InvalidParameters(format!("loop at vertex {v}")));
            }
            for u in VertexSet(row) {
                if rows[u] >> v & 1 == 0 {
                    return Err(Error::InvalidParameters(format!(
                        "asymmetric adjacency at ({v}, {u})"
                    )));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Rows must already be symmetric and loop-free.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(rows.len() <= MAX_ORDER);
        Graph {
            n: rows.len(),
            adj: rows,
        }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    /// Copy of `self` with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidParameters(format!("loop at vertex {u}")));
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    /// Copy of `self` with the edge `uv` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.adj[u] &= !(1u64 << v);
        g.adj[v] &= !(1u64 << u);
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] >> u >> 1 << u << 1) {
                out.push((u, v));
            }
        }
        out
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter()
            .map(|v| (self.adj[v] & s.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).first() {
            None => Ok(()),
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
        }
    }

    /// Vertices at distance exactly `dist` from `v`.
    pub fn distance_layer(&self, v: usize, dist: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        for _ in 0..dist {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(self.neighbors(u));
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
            if frontier.is_empty() {
                break;
            }
        }
        Ok(frontier)
    }

    /// `N_2(v)`: vertices at distance exactly two from `v`.
    pub fn second_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.distance_layer(v, 2)
    }

    /// `e(S, T)`, the number of edges with one end in `s` and the other in `t`.
    pub fn cut_edges(&self, s: VertexSet, t: VertexSet) -> Result<usize> {
        self.check_set(s)?;
        self.check_set(t)?;
        let common = s.intersection(t);
        if !common.is_empty() {
            return Err(Error::OverlappingSets(common.to_vec()));
        }
        Ok(s.iter()
            .map(|v| (self.adj[v] & t.0).count_ones() as usize)
            .sum())
    }

    /// Subgraph induced by `s`, relabeled to `0..|s|`, with the map from new
    /// to old labels.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(s)?;
        let map = s.to_vec();
        let rows = map
            .iter()
            .map(|&old| {
                map.iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.has_edge(old, w))
                    .fold(0u64, |acc, (i, _)| acc | 1u64 << i)
            })
            .collect();
        Ok((Graph::from_rows_unchecked(rows), map))
    }

    /// Graph with vertex `perm[v]` playing the role of old vertex `v`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n || VertexSet::from_vertices(perm.iter().copied()) != self.vertices()
        {
            return Err(Error::InvalidParameters(
                "not a permutation of the vertex set".into(),
            ));
        }
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u) {
                rows[perm[u]] |= 1u64 << perm[v];
            }
        }
        Ok(Graph::from_rows_unchecked(rows))
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(self.neighbors(u));
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen == self.vertices()
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).0;
        let rows = (0..self.n)
            .map(|v| !self.adj[v] & full & !(1u64 << v))
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    // --- named constructions ---

    pub fn complete(n: usize) -> Result<Self> {
        check_order(n)?;
        let full = VertexSet::full(n).0;
        Ok(Graph::from_rows_unchecked(
            (0..n).map(|v| full & !(1u64 << v)).collect(),
        ))
    }

    /// `S_{n,k}`: clique on `0..k` joined to an independent set on `k..n`.
    pub fn split(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidParameters(format!(
                "complete split graph needs 1 <= k < n, got n={n}, k={k}"
            )));
        }
        Graph::complete(k)?.join(&Graph::empty(n - k)?)
    }

    /// `F_k = K_1 ∇ kK_2` with center 0 and triangles `{0, 2i+1, 2i+2}`.
    pub fn fan(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameters("fan needs k >= 1".into()));
        }
        let matching = (0..k).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>();
        Graph::complete(1)?.join(&Graph::from_edges(2 * k, &matching)?)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Graph::empty(a)?.join(&Graph::empty(b)?)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameters(format!(
                "cycle needs n >= 3, got {n}"
            )));
        }
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("path needs n >= 1".into()));
        }
        let edges = (1..n).map(|i| (i - 1, i)).collect::<Vec<_>>();
        Graph::from_edges(n, &edges)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).expect("petersen graph is valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_order(n)?;
        let shift = self.n;
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|r| r << shift));
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// `self ∇ other`: the disjoint union plus every edge between the parts.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = VertexSet::full(self.n).0;
        let right = VertexSet::full(g.n).0 & !left;
        for v in 0..g.n {
            g.adj[v] |= if v < self.n { right } else { left };
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::OrderTooLarge { n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

/// The named families used throughout the toolkit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NamedGraphSpec {
    Complete {
        n: usize,
    },
    CompleteSplit {
        n: usize,
        k: usize,
    },
    Fan {
        k: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    DisjointUnion {
        left: Box<NamedGraphSpec>,
        right: Box<NamedGraphSpec>,
    },
    Join {
        left: Box<NamedGraphSpec>,
        right: Box<NamedGraphSpec>,
    },
}

impl NamedGraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            NamedGraphSpec::Complete { n } => Graph::complete(*n),
            NamedGraphSpec::CompleteSplit { n, k } => Graph::split(*n, *k),
            NamedGraphSpec::Fan { k } => Graph::fan(*k),
            NamedGraphSpec::CompleteBipartite { a, b } => Graph::complete_bipartite(*a, *b),
            NamedGraphSpec::Cycle { n } => Graph::cycle(*n),
            NamedGraphSpec::Path { n } => Graph::path(*n),
            NamedGraphSpec::DisjointUnion { left, right } => {
                left.build()?.disjoint_union(&right.build()?)
            }
            NamedGraphSpec::Join { left, right } => left.build()?.join(&right.build()?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_simple(g: &Graph) {
        for v in 0..g.order() {
            assert!(!g.has_edge(v, v));
            for u in g.neighbors(v) {
                assert!(g.has_edge(u, v));
            }
        }
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.size());
    }

    #[test]
    fn split_graphs() {
        let star = Graph::split(3, 1).unwrap();
        assert_eq!(star.size(), 2);
        assert_eq!(star.degrees(), vec![2, 1, 1]);
        assert_eq!(Graph::split(5, 4).unwrap(), Graph::complete(5).unwrap());
        let s = Graph::split(10, 2).unwrap();
        assert_eq!(s.size(), 17);
        assert_simple(&s);
        assert!(Graph::split(4, 4).is_err());
        assert!(Graph::split(4, 0).is_err());
        assert!(Graph::split(65, 2).is_err());
    }

    #[test]
    fn fans() {
        assert_eq!(Graph::fan(1).unwrap(), Graph::complete(3).unwrap());
        let bowtie = Graph::fan(2).unwrap();
        assert_eq!((bowtie.order(), bowtie.size()), (5, 6));
        let f4 = Graph::fan(4).unwrap();
        assert_eq!((f4.order(), f4.size(), f4.degree(0)), (9, 12, 8));
        assert_simple(&f4);
        assert!(Graph::fan(0).is_err());
    }

    #[test]
    fn joins() {
        let star = Graph::complete(1)
            .unwrap()
            .join(&Graph::empty(2).unwrap())
            .unwrap();
        assert_eq!(star, Graph::split(3, 1).unwrap());
        let s52 = Graph::complete(2)
            .unwrap()
            .join(&Graph::empty(3).unwrap())
            .unwrap();
        assert_eq!(s52, Graph::split(5, 2).unwrap());
        assert_eq!(s52.size(), 7);
        let k6 = Graph::complete(3)
            .unwrap()
            .join(&Graph::complete(3).unwrap())
            .unwrap();
        assert_eq!(k6, Graph::complete(6).unwrap());
        let big = Graph::empty(40).unwrap();
        assert!(matches!(
            big.join(&big),
            Err(Error::OrderTooLarge { n: 80, .. })
        ));
    }

    #[test]
    fn second_neighborhoods() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(
            c5.second_neighborhood(0).unwrap(),
            VertexSet::from_vertices([2, 3])
        );
        let k5 = Graph::complete(5).unwrap();
        assert!(k5.second_neighborhood(3).unwrap().is_empty());
        let s = Graph::split(10, 2).unwrap();
        assert_eq!(
            s.second_neighborhood(4).unwrap(),
            VertexSet::from_vertices([2, 3, 5, 6, 7, 8, 9])
        );
        assert!(s.second_neighborhood(10).is_err());
    }

    #[test]
    fn cut_edge_counts() {
        let k4 = Graph::complete(4).unwrap();
        let a = VertexSet::from_vertices([0, 1]);
        let b = VertexSet::from_vertices([2, 3]);
        assert_eq!(k4.cut_edges(a, b).unwrap(), 4);
        assert_eq!(k4.cut_edges(VertexSet::EMPTY, b).unwrap(), 0);
        assert!(matches!(k4.cut_edges(a, a), Err(Error::OverlappingSets(_))));
        let s = Graph::split(10, 2).unwrap();
        let clique = VertexSet::full(2);
        assert_eq!(
            s.cut_edges(clique, s.vertices().difference(clique))
                .unwrap(),
            16
        );
    }

    #[test]
    fn induced_subgraph_relabels() {
        let s = Graph::split(6, 2).unwrap();
        let (h, map) = s.induced_subgraph(s.neighbors(0)).unwrap();
        assert_eq!(map, vec![1, 2, 3, 4, 5]);
        assert_eq!(h, Graph::split(5, 1).unwrap());
    }

    #[test]
    fn from_rows_validates() {
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
    }

    #[test]
    fn named_specs_build() {
        let spec = NamedGraphSpec::Join {
            left: Box::new(NamedGraphSpec::Complete { n: 2 }),
            right: Box::new(NamedGraphSpec::CompleteBipartite { a: 1, b: 2 }),
        };
        let g = spec.build().unwrap();
        assert_eq!((g.order(), g.size()), (5, 1 + 2 + 6));
        assert!(NamedGraphSpec::CompleteSplit { n: 2, k: 2 }
            .build()
            .is_err());
    }

    #[test]
    fn petersen_is_cubic() {
        let p = Graph::petersen();
        assert!(p.degrees().iter().all(|&d| d == 3));
        assert_eq!(p.size(), 15);
    }
}
