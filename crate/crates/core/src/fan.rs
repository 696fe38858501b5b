//! k-fan containment via neighborhood matchings.
//!
//! A copy of `F_k` centered at `v` is exactly a `k`-matching inside the
//! subgraph induced by `N(v)`, so `G` contains `F_k` iff some vertex
//! neighborhood has matching number at least `k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::find_matching_of_size;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanWitness {
    pub center: usize,
    /// `k` disjoint edges inside `N(center)`.
    pub pairs: Vec<(usize, usize)>,
}

impl FanWitness {
    /// Re-checks the embedding against `g` independently of how it was found.
    pub fn validate(&self, g: &Graph, k: usize) -> bool {
        if self.pairs.len() != k || self.center >= g.order() {
            return false;
        }
        let mut used = 1u64 << self.center;
        for &(a, b) in &self.pairs {
            if a >= g.order() || b >= g.order() || a == b {
                return false;
            }
            let ends = 1u64 << a | 1u64 << b;
            if used & ends != 0 {
                return false;
            }
            used |= ends;
            if !(g.has_edge(a, b) && g.has_edge(self.center, a) && g.has_edge(self.center, b)) {
                return false;
            }
        }
        true
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidParameters("fan needs k >= 1".into()))
    } else {
        Ok(())
    }
}

/// A copy of `F_k` in `g`, preferring the smallest center and, for that
/// center, the lexicographically smallest set of pairs.
pub fn contains_fan(g: &Graph, k: usize) -> Result<Option<FanWitness>> {
    check_k(k)?;
    for center in 0..g.order() {
        let nb = g.neighbors(center);
        // a k-matching needs 2k vertices and k edges
        if nb.len() < 2 * k || g.edges_within(nb) < k {
            continue;
        }
        if let Some(pairs) = find_matching_of_size(g, nb, k) {
            let w = FanWitness { center, pairs };
            if !w.validate(g, k) {
                return Err(Error::SelfCheck(format!("invalid fan witness {w:?}")));
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn is_fan_free(g: &Graph, k: usize) -> Result<bool> {
    Ok(contains_fan(g, k)?.is_none())
}

/// Outcome of a saturation check on an `F_k`-free graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Saturation {
    Saturated,
    /// The first non-edge (lexicographic order) whose addition stays `F_k`-free.
    NotSaturated {
        u: usize,
        v: usize,
    },
}

/// Whether adding any missing edge to the `F_k`-free graph `g` creates an
/// `F_k`. Errors if `g` already contains one.
pub fn fan_saturation(g: &Graph, k: usize) -> Result<Saturation> {
    if let Some(w) = contains_fan(g, k)? {
        return Err(Error::ContainsFan {
            k,
            center: w.center,
        });
    }
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            if g.has_edge(u, v) {
                continue;
            }
            if contains_fan(&g.with_edge(u, v)?, k)?.is_none() {
                return Ok(Saturation::NotSaturated { u, v });
            }
        }
    }
    Ok(Saturation::Saturated)
}

pub fn is_fan_saturated(g: &Graph, k: usize) -> Result<bool> {
    Ok(fan_saturation(g, k)? == Saturation::Saturated)
}

/// True iff every two non-adjacent vertices have a common neighbor.
pub fn common_neighbor_check(g: &Graph) -> bool {
    (0..g.order()).all(|u| {
        let non_adjacent = g.vertices().difference(g.neighbors(u)).without(u);
        non_adjacent
            .iter()
            .all(|v| !g.neighbors(u).intersection(g.neighbors(v)).is_empty())
    })
}
