//! Isomorph-free generation of all graphs of a given order.
//!
//! Orderly generation by canonical augmentation: every canonical graph on
//! `m` vertices is extended by a new vertex `m` over all neighbor sets, and an
//! extension is kept only when deleting the vertex that the canonical labeling
//! places last gives back a graph isomorphic to the parent. Each isomorphism
//! class therefore has exactly one parent class, and duplicates can only arise
//! among the children of a single parent, which are deduplicated locally.

mod canon;
mod stream;

pub use canon::{
    canonical_form, canonical_graph, canonical_labeling, is_isomorphic, CanonicalForm,
};
pub use stream::{read_graph6, write_graph6, Graph6Reader, MalformedPolicy};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6;

/// Largest order accepted by the generator.
pub const MAX_ENUMERATION_ORDER: usize = 11;

/// Number of isomorphism classes of graphs of order 0..=11.
pub const GRAPH_COUNTS: [u64; 12] = [
    1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168, 1018997864,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationTask {
    pub n: usize,
    pub connected_only: bool,
    pub shard: Option<Shard>,
}

impl EnumerationTask {
    pub fn all(n: usize) -> Self {
        EnumerationTask {
            n,
            connected_only: false,
            shard: None,
        }
    }

    pub fn connected(n: usize) -> Self {
        EnumerationTask {
            n,
            connected_only: true,
            shard: None,
        }
    }

    pub fn with_shard(self, index: usize, count: usize) -> Self {
        EnumerationTask {
            shard: Some(Shard { index, count }),
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_ENUMERATION_ORDER {
            return Err(Error::InvalidParameters(format!(
                "enumeration order must be in 1..={MAX_ENUMERATION_ORDER}, got {}",
                self.n
            )));
        }
        if let Some(s) = self.shard {
            if s.count == 0 || s.index >= s.count {
                return Err(Error::InvalidParameters(format!(
                    "invalid shard {}/{}",
                    s.index, s.count
                )));
            }
        }
        Ok(())
    }

    /// Graphs of this order are dealt round-robin to shards; their
    /// descendants stay in the same shard.
    fn shard_level(&self) -> usize {
        self.n.saturating_sub(2).max(1)
    }
}

/// Streaming generator over one representative per isomorphism class, each
/// in canonical labeling. Output order is deterministic.
pub fn enumerate(task: EnumerationTask) -> Result<Enumerator> {
    task.validate()?;
    Ok(Enumerator {
        task,
        stack: vec![Frame {
            children: vec![vec![0]],
            next: 0,
        }],
        dealt: 0,
    })
}

struct Frame {
    children: Vec<Vec<u64>>,
    next: usize,
}

pub struct Enumerator {
    task: EnumerationTask,
    stack: Vec<Frame>,
    /// Graphs seen so far at the shard level.
    dealt: usize,
}

impl Iterator for Enumerator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next == frame.children.len() {
                self.stack.pop();
                continue;
            }
            let rows = std::mem::take(&mut frame.children[frame.next]);
            frame.next += 1;
            let order = rows.len();
            if order == self.task.shard_level() {
                let idx = self.dealt;
                self.dealt += 1;
                if let Some(s) = self.task.shard {
                    if idx % s.count != s.index {
                        continue;
                    }
                }
            }
            if order == self.task.n {
                let g = Graph::from_rows_unchecked(rows);
                if self.task.connected_only && !g.is_connected() {
                    continue;
                }
                return Some(g);
            }
            self.stack.push(Frame {
                children: augment(&rows),
                next: 0,
            });
        }
    }
}

/// Canonical children of the canonical graph `parent`, sorted by graph6 text.
pub fn augment(parent: &[u64]) -> Vec<Vec<u64>> {
    let m = parent.len();
    let degrees: Vec<u32> = parent.iter().map(|r| r.count_ones()).collect();
    let mut children: Vec<(String, Vec<u64>)> = Vec::new();
    let mut rows = vec![0u64; m + 1];
    for s in 0u64..1 << m {
        let d = s.count_ones();
        // the new vertex must have maximum degree in the child
        let too_small = (0..m).any(|u| degrees[u] + (s >> u & 1) as u32 > d);
        if too_small {
            continue;
        }
        for u in 0..m {
            rows[u] = parent[u] | (s >> u & 1) << m;
        }
        rows[m] = s;
        let (key, lab) = canonical_labeling(&rows);
        let last = lab[m];
        if last != m && !removal_matches(&rows, last, parent) {
            continue;
        }
        let text = graph6::encode(&Graph::from_rows_unchecked(key.clone()));
        children.push((text, key));
    }
    children.sort_unstable();
    children.dedup_by(|a, b| a.0 == b.0);
    children.into_iter().map(|(_, key)| key).collect()
}

/// Whether deleting `v` from `rows` leaves a graph isomorphic to the
/// canonical graph `parent`.
fn removal_matches(rows: &[u64], v: usize, parent: &[u64]) -> bool {
    let keep = VertexSet::full(rows.len()).without(v);
    let reduced: Vec<u64> = keep.iter().map(|u| compress(rows[u], v)).collect();
    canonical_labeling(&reduced).0 == parent
}

/// Drops bit `v` and shifts the higher bits down.
#[inline]
fn compress(row: u64, v: usize) -> u64 {
    let low = row & ((1u64 << v) - 1);
    let high = if v + 1 >= 64 { 0 } else { row >> (v + 1) };
    low | high << v
}

/// Number of classes an unrestricted, unsharded run produces, when known.
pub fn expected_count(n: usize) -> Option<u64> {
    GRAPH_COUNTS.get(n).copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn count(task: EnumerationTask) -> usize {
        enumerate(task).unwrap().count()
    }

    #[test]
    fn small_counts() {
        for (n, &expected) in GRAPH_COUNTS.iter().enumerate().take(8).skip(1) {
            assert_eq!(count(EnumerationTask::all(n)) as u64, expected, "n = {n}");
        }
    }

    #[test]
    fn connected_counts() {
        for (n, want) in [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)] {
            assert_eq!(count(EnumerationTask::connected(n)), want, "n = {n}");
        }
    }

    #[test]
    fn outputs_are_canonical_and_distinct() {
        let forms: Vec<String> = enumerate(EnumerationTask::all(6))
            .unwrap()
            .map(|g| graph6::encode(&g))
            .collect();
        let set: BTreeSet<_> = forms.iter().cloned().collect();
        assert_eq!(set.len(), forms.len());
        for f in &forms {
            let g = graph6::decode(f).unwrap();
            assert_eq!(&canonical_form(&g).0, f);
        }
    }

    #[test]
    fn shards_partition_the_run() {
        let full: BTreeSet<String> = enumerate(EnumerationTask::all(7))
            .unwrap()
            .map(|g| graph6::encode(&g))
            .collect();
        let mut union = BTreeSet::new();
        let mut total = 0;
        for i in 0..3 {
            for g in enumerate(EnumerationTask::all(7).with_shard(i, 3)).unwrap() {
                union.insert(graph6::encode(&g));
                total += 1;
            }
        }
        assert_eq!(total, full.len());
        assert_eq!(union, full);
    }

    #[test]
    fn tiny_orders_with_shards() {
        assert_eq!(count(EnumerationTask::all(1).with_shard(0, 2)), 1);
        assert_eq!(count(EnumerationTask::all(1).with_shard(1, 2)), 0);
        assert_eq!(count(EnumerationTask::all(2).with_shard(0, 4)), 2);
    }

    #[test]
    fn rejects_bad_tasks() {
        assert!(enumerate(EnumerationTask::all(0)).is_err());
        assert!(enumerate(EnumerationTask::all(12)).is_err());
        assert!(enumerate(EnumerationTask::all(5).with_shard(2, 2)).is_err());
        assert!(enumerate(EnumerationTask::all(5).with_shard(0, 0)).is_err());
    }

    #[test]
    fn compress_drops_a_bit() {
        assert_eq!(compress(0b1011, 1), 0b101);
        assert_eq!(compress(0b1011, 0), 0b101);
        assert_eq!(compress(u64::MAX, 63), u64::MAX >> 1);
    }
}
