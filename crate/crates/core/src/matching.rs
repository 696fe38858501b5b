//! Exact maximum matching on small graphs and the extremal edge counts for
//! bounded matching number.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    /// The matching number `α'`.
    pub size: usize,
    /// A maximum matching: pairs `(u, v)` with `u < v`, sorted. Among all
    /// maximum matchings this is the lexicographically smallest pair list.
    pub pairs: Vec<(usize, usize)>,
}

/// Which extremal family attains the bounded-matching edge maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `K_{2α+1} ∪ (n-2α-1)K_1` is the unique extremal graph.
    CliqueRegime,
    /// `S_{n,α}` is the unique extremal graph.
    SplitRegime,
    /// Both families are extremal.
    Boundary,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::CliqueRegime => "clique-regime",
            Regime::SplitRegime => "split-regime",
            Regime::Boundary => "boundary",
        })
    }
}

/// A forbidden subgraph for Turán-type queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "k", rename_all = "kebab-case")]
pub enum Pattern {
    /// `kK_2`, a matching with `k` edges.
    Matching(usize),
    /// `F_k`, the k-fan.
    Fan(usize),
}

impl Pattern {
    pub fn k(self) -> usize {
        match self {
            Pattern::Matching(k) | Pattern::Fan(k) => k,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Matching(k) => write!(f, "{k}K2"),
            Pattern::Fan(k) => write!(f, "F{k}"),
        }
    }
}

/// Maximum edge count of an `n`-vertex graph avoiding `pattern`, with every
/// extremal graph listed by canonical graph6 form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TuranRecord {
    pub n: usize,
    pub pattern: Pattern,
    pub max_edges: usize,
    pub extremal: Vec<String>,
    /// Only meaningful for matching patterns.
    pub regime: Option<Regime>,
}

/// Exact matching number of `g` with a lexicographically smallest witness.
pub fn matching_number(g: &Graph) -> MatchingResult {
    max_matching_within(g, g.vertices())
}

/// Maximum matching of the subgraph induced by `within`.
pub fn max_matching_within(g: &Graph, within: VertexSet) -> MatchingResult {
    let mut search = Search {
        rows: g.rows(),
        target: usize::MAX,
        current: Vec::new(),
        best: Vec::new(),
    };
    search.run(within.intersection(g.vertices()).0);
    MatchingResult {
        size: search.best.len(),
        pairs: search.best,
    }
}

/// Whether the subgraph induced by `within` has a matching with `k` edges.
/// Returns a witness as soon as one is found.
pub fn find_matching_of_size(
    g: &Graph,
    within: VertexSet,
    k: usize,
) -> Option<Vec<(usize, usize)>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let mut search = Search {
        rows: g.rows(),
        target: k,
        current: Vec::new(),
        best: Vec::new(),
    };
    search.run(within.intersection(g.vertices()).0);
    (search.best.len() >= k).then_some(search.best)
}

/// True iff `g` has no `k` pairwise disjoint edges.
pub fn is_kk2_free(g: &Graph, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidParameters("kK2 needs k >= 1".into()));
    }
    Ok(find_matching_of_size(g, g.vertices(), k).is_none())
}

/// Branch and bound: branch on the lowest non-isolated vertex, first matching
/// it to each neighbor in increasing order and finally leaving it unmatched.
/// That order visits matchings in lexicographic order of their sorted pair
/// lists, so keeping only strict improvements yields the smallest witness.
struct Search<'a> {
    rows: &'a [u64],
    target: usize,
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn run(&mut self, avail: u64) {
        if self.best.len() >= self.target {
            return;
        }
        if self.current.len() == self.target {
            self.best.clone_from(&self.current);
            return;
        }
        // drop vertices with no neighbor left
        let mut live = 0u64;
        for v in VertexSet(avail) {
            if self.rows[v] & avail != 0 {
                live |= 1 << v;
            }
        }
        if self.current.len() + upper_bound(self.rows, live) <= self.best.len() {
            return;
        }
        if live == 0 {
            if self.current.len() > self.best.len() {
                self.best.clone_from(&self.current);
            }
            return;
        }
        let v = live.trailing_zeros() as usize;
        let rest = live & !(1 << v);
        for u in VertexSet(self.rows[v] & rest) {
            self.current.push((v, u));
            self.run(rest & !(1 << u));
            self.current.pop();
            if self.best.len() >= self.target {
                return;
            }
        }
        self.run(rest);
    }
}

/// Upper bound on the matching number of the subgraph induced by `live`
/// (every vertex of which has a neighbor in `live`): the smaller of half the
/// vertex count and the size of a greedy vertex cover.
fn upper_bound(rows: &[u64], live: u64) -> usize {
    let half = live.count_ones() as usize / 2;
    // endpoints of a greedy maximal matching form a vertex cover
    let mut left = live;
    let mut matched = 0;
    while left != 0 {
        let v = left.trailing_zeros() as usize;
        left &= !(1 << v);
        let nb = rows[v] & left;
        if nb != 0 {
            left &= !(1 << nb.trailing_zeros());
            matched += 1;
        }
    }
    half.min(2 * matched)
}

fn binom2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Largest size of an `n`-vertex graph with matching number `alpha`, and
/// which family attains it.
pub fn max_edges_matching(n: usize, alpha: usize) -> Result<(usize, Regime)> {
    if n < 2 * alpha + 1 {
        return Err(Error::InvalidParameters(format!(
            "need n >= 2*alpha + 1, got n={n}, alpha={alpha}"
        )));
    }
    let clique = binom2(2 * alpha + 1);
    let split = alpha * n - alpha * (alpha + 1) / 2;
    // compare n against (5α + 3)/2 without fractions
    let regime = match (2 * n).cmp(&(5 * alpha + 3)) {
        std::cmp::Ordering::Greater => Regime::SplitRegime,
        std::cmp::Ordering::Equal => Regime::Boundary,
        std::cmp::Ordering::Less => Regime::CliqueRegime,
    };
    Ok((clique.max(split), regime))
}

/// `ex(n, kK_2)` and its regime.
pub fn turan_kk2(n: usize, k: usize) -> Result<(usize, Regime)> {
    if k < 2 {
        return Err(Error::InvalidParameters(format!("need k >= 2, got {k}")));
    }
    if n < 2 * k - 1 {
        return Err(Error::InvalidParameters(format!(
            "need n >= 2k - 1, got n={n}, k={k}"
        )));
    }
    max_edges_matching(n, k - 1)
}

/// The extremal `kK_2`-free graphs of order `n`.
pub fn kk2_extremal_graphs(n: usize, k: usize) -> Result<Vec<Graph>> {
    let (_, regime) = turan_kk2(n, k)?;
    let clique = || Graph::complete(2 * k - 1)?.disjoint_union(&Graph::empty(n + 1 - 2 * k)?);
    Ok(match regime {
        Regime::CliqueRegime => vec![clique()?],
        Regime::SplitRegime => vec![Graph::split(n, k - 1)?],
        Regime::Boundary => vec![clique()?, Graph::split(n, k - 1)?],
    })
}
