//! Canonical labeling by individualization and refinement.
//!
//! The search starts from the coarsest equitable refinement of the unit
//! partition, branches on the first non-singleton cell, and keeps the leaf
//! whose relabeled adjacency rows are lexicographically largest. Automorphisms
//! discovered when two leaves coincide prune siblings in the same orbit and let
//! the search jump back to the deepest common ancestor.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::graph6;

/// Canonical graph6 text: equal for two graphs iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(pub String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(graph6::encode(&canonical_graph(g)))
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (rows, _) = canonical_labeling(g.rows());
    Graph::from_rows_unchecked(rows)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    let sorted_degrees = |x: &Graph| {
        let mut d = x.degrees();
        d.sort_unstable();
        d
    };
    g.order() == h.order()
        && g.size() == h.size()
        && sorted_degrees(g) == sorted_degrees(h)
        && canonical_labeling(g.rows()).0 == canonical_labeling(h.rows()).0
}

/// Canonical adjacency rows and the labeling producing them: vertex `lab[i]`
/// of the input becomes vertex `i` of the canonical graph.
///
/// `lab[n-1]` always has maximum degree, since cells stay ordered by degree.
pub fn canonical_labeling(rows: &[u64]) -> (Vec<u64>, Vec<usize>) {
    let n = rows.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut cells = vec![VertexSet::full(n).0];
    refine(rows, &mut cells, &mut vec![true]);
    let mut s = Search {
        rows,
        n,
        path: Vec::with_capacity(n),
        first: None,
        best: None,
        autos: Vec::new(),
        scratch: vec![0; n],
    };
    s.descend(cells);
    let best = s.best.expect("search visits at least one leaf");
    (best.key, best.lab)
}

const MAX_STORED_AUTOMORPHISMS: usize = 128;

struct Leaf {
    key: Vec<u64>,
    lab: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    path: Vec<usize>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Each entry maps vertex `i` to `aut[i]`.
    autos: Vec<Vec<usize>>,
    scratch: Vec<usize>,
}

impl Search<'_> {
    /// Returns `Some(level)` to abandon everything below the node at `level`.
    fn descend(&mut self, cells: Vec<u64>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(&cells);
        }
        let level = self.path.len();
        let target = cells
            .iter()
            .position(|c| c.count_ones() > 1)
            .expect("partition is not discrete");
        let cell = cells[target];
        let mut explored = 0u64;
        for x in VertexSet(cell) {
            if explored != 0 && self.in_explored_orbit(x, explored, level) {
                continue;
            }
            explored |= 1 << x;
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(1 << x);
            next.push(cell & !(1 << x));
            next.extend_from_slice(&cells[target + 1..]);
            let mut active = vec![false; next.len()];
            active[target] = true;
            refine(self.rows, &mut next, &mut active);
            self.path.push(x);
            let jump = self.descend(next);
            self.path.pop();
            if let Some(j) = jump {
                if j < level {
                    return Some(j);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        for (i, &v) in lab.iter().enumerate() {
            self.scratch[v] = i;
        }
        let key: Vec<u64> = lab
            .iter()
            .map(|&v| {
                VertexSet(self.rows[v])
                    .iter()
                    .fold(0u64, |acc, w| acc | 1 << self.scratch[w])
            })
            .collect();
        let Some(first) = &self.first else {
            let leaf = Leaf {
                key,
                lab,
                path: self.path.clone(),
            };
            self.best = Some(Leaf {
                key: leaf.key.clone(),
                lab: leaf.lab.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if key == first.key {
            let aut = compose(&first.lab, &lab, self.n);
            let level = common_prefix(&first.path, &self.path);
            self.store(aut);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match key.cmp(&best.key) {
            Ordering::Equal => {
                let aut = compose(&best.lab, &lab, self.n);
                let level = common_prefix(&best.path, &self.path);
                self.store(aut);
                Some(level)
            }
            Ordering::Greater => {
                self.best = Some(Leaf {
                    key,
                    lab,
                    path: self.path.clone(),
                });
                None
            }
            Ordering::Less => None,
        }
    }

    fn store(&mut self, aut: Vec<usize>) {
        if self.autos.len() < MAX_STORED_AUTOMORPHISMS {
            self.autos.push(aut);
        }
    }

    /// Whether `x` shares an orbit with an explored sibling under the stored
    /// automorphisms that fix the current path pointwise.
    fn in_explored_orbit(&self, x: usize, explored: u64, level: usize) -> bool {
        let prefix = &self.path[..level];
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        let mut any = false;
        for aut in &self.autos {
            if prefix.iter().any(|&p| aut[p] != p) {
                continue;
            }
            any = true;
            for (i, &j) in aut.iter().enumerate() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, x);
        VertexSet(explored)
            .iter()
            .any(|y| find(&mut parent, y) == root)
    }
}

/// The automorphism sending `from[i]` to `to[i]` for every position `i`.
fn compose(from: &[usize], to: &[usize], n: usize) -> Vec<usize> {
    let mut aut = vec![0; n];
    for (&a, &b) in from.iter().zip(to) {
        aut[a] = b;
    }
    aut
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Refines an ordered partition (cells as bitmasks) to the coarsest equitable
/// partition finer than it. `active` flags cells still to be used as
/// splitters. A split cell is replaced in place by its fragments ordered by
/// increasing neighbor count, so the result depends only on the structure.
fn refine(rows: &[u64], cells: &mut Vec<u64>, active: &mut Vec<bool>) {
    let mut counts = [0u32; 64];
    while let Some(wi) = active.iter().position(|&a| a) {
        active[wi] = false;
        let splitter = cells[wi];
        let mut ci = 0;
        while ci < cells.len() {
            let cell = cells[ci];
            if cell.count_ones() == 1 {
                ci += 1;
                continue;
            }
            let mut lo = u32::MAX;
            let mut hi = 0;
            for v in VertexSet(cell) {
                let c = (rows[v] & splitter).count_ones();
                counts[v] = c;
                lo = lo.min(c);
                hi = hi.max(c);
            }
            if lo == hi {
                ci += 1;
                continue;
            }
            let mut fragments: Vec<(u32, u64)> = Vec::new();
            for v in VertexSet(cell) {
                match fragments.iter_mut().find(|(c, _)| *c == counts[v]) {
                    Some((_, mask)) => *mask |= 1 << v,
                    None => fragments.push((counts[v], 1 << v)),
                }
            }
            fragments.sort_unstable_by_key(|&(c, _)| c);
            let m = fragments.len();
            cells.splice(ci..=ci, fragments.iter().map(|&(_, mask)| mask));
            active.splice(ci..=ci, std::iter::repeat_n(true, m));
            ci += m;
        }
    }
}
