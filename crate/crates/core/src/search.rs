//! Exhaustive extremal searches over all graphs of a fixed order.
//!
//! [`certify_max_q1`] scans every isomorphism class, keeps the `F_k`-free
//! ones, eigensolves each survivor and reports the maximizer of `q1` together
//! with the margin to the runner-up. [`turan_bruteforce`] finds the exact
//! maximum edge count avoiding a pattern. The remaining functions build and
//! evaluate the bipartite-plus-embedding extremal graphs for `ex(n, F_k)`.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::enumeration::{canonical_form, enumerate, CanonicalForm, EnumerationTask};
use crate::error::{Error, Result};
use crate::fan::is_fan_free;
use crate::graph::Graph;
use crate::graph6;
use crate::matching::{is_kk2_free, turan_kk2, Pattern, TuranRecord};
use crate::spectral::{
    q1_split_closed_form, signless_laplacian, spectrum, spectrum_with_threshold,
};

/// Number of leading candidates retained for auditing margins.
pub const TOP_CANDIDATES: usize = 5;

/// Whether `(n, k)` satisfies `k >= 2` and `n >= 3k^2 - k - 2`, where the
/// complete split graph is the proven unique maximizer.
pub fn in_theorem_regime(n: usize, k: usize) -> bool {
    k >= 2 && n + k + 2 >= 3 * k * k
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub graph6: CanonicalForm,
    #[serde(with = "sig15")]
    pub q1: f64,
}

/// Outcome of an exhaustive certification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Inside the theorem regime and the split graph is the unique maximizer.
    Confirmed,
    /// Inside the theorem regime and it is not.
    Counterexample,
    /// Outside the theorem regime: the result is exploratory only.
    OutsideTheoremRegime,
}

impl Verdict {
    /// Process exit code for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Confirmed | Verdict::OutsideTheoremRegime => 0,
            Verdict::Counterexample => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub n: usize,
    pub k: usize,
    pub verdict: Verdict,
    pub in_theorem_regime: bool,
    /// Present when the parameters are outside the proven range and the run is exploratory.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flag: Option<String>,
    pub winner: CanonicalForm,
    #[serde(with = "sig15")]
    pub winner_q1: f64,
    /// True only if the maximizer is unique and is `S_{n,k}`.
    pub winner_is_split: bool,
    pub unique: bool,
    #[serde(with = "sig15::option")]
    pub runner_up_q1: Option<f64>,
    #[serde(with = "sig15::option")]
    pub margin: Option<f64>,
    #[serde(with = "sig15::option")]
    pub split_q1: Option<f64>,
    /// `F_k`-free graphs examined.
    pub scanned: u64,
    /// All graphs of order `n` read from the source.
    pub total: u64,
    pub connected_only: bool,
    pub top: Vec<Candidate>,
    /// Every graph within the tie margin of the maximum, after re-verification.
    pub near_maximal: Vec<Candidate>,
    pub tolerances: Tolerances,
    #[serde(with = "sig15")]
    pub elapsed: f64,
}

impl SearchCertificate {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyOptions {
    pub tolerances: Tolerances,
    pub shards: usize,
    /// Worker threads; `None` uses one per available processor.
    pub jobs: Option<usize>,
    pub connected_only: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            tolerances: Tolerances::default(),
            shards: 1,
            jobs: None,
            connected_only: false,
        }
    }
}

/// Running state of a scan: counts plus the best candidates seen.
#[derive(Clone, Debug, Default)]
struct Scan {
    scanned: u64,
    total: u64,
    /// Sorted by q1 descending, then canonical form; distinct forms.
    top: Vec<Candidate>,
    /// Everything within `margin` of the best value so far.
    near: Vec<Candidate>,
}

impl Scan {
    fn offer(&mut self, g: &Graph, q: f64, canonical: bool, margin: f64) {
        let best = self.top.first().map_or(f64::NEG_INFINITY, |c| c.q1);
        let enters_top = self.top.len() < TOP_CANDIDATES || q >= self.top[self.top.len() - 1].q1;
        let enters_near = q >= best - margin;
        if !enters_top && !enters_near {
            return;
        }
        let form = if canonical {
            CanonicalForm(graph6::encode(g))
        } else {
            canonical_form(g)
        };
        let cand = Candidate {
            graph6: form,
            q1: q,
        };
        if enters_top {
            insert_sorted(&mut self.top, cand.clone());
            self.top.truncate(TOP_CANDIDATES);
        }
        if enters_near {
            insert_sorted(&mut self.near, cand);
            let best = self.near[0].q1;
            self.near.retain(|c| c.q1 >= best - margin);
        }
    }

    fn merge(mut self, other: Scan, margin: f64) -> Scan {
        self.scanned += other.scanned;
        self.total += other.total;
        for c in other.top {
            insert_sorted(&mut self.top, c);
        }
        self.top.truncate(TOP_CANDIDATES);
        for c in other.near {
            insert_sorted(&mut self.near, c);
        }
        if let Some(best) = self.near.first().map(|c| c.q1) {
            self.near.retain(|c| c.q1 >= best - margin);
        }
        self
    }
}

fn candidate_order(a: &Candidate, b: &Candidate) -> std::cmp::Ordering {
    b.q1.total_cmp(&a.q1).then_with(|| a.graph6.cmp(&b.graph6))
}

fn insert_sorted(list: &mut Vec<Candidate>, c: Candidate) {
    if list.iter().any(|x| x.graph6 == c.graph6) {
        return;
    }
    let pos = list.partition_point(|x| candidate_order(x, &c).is_lt());
    list.insert(pos, c);
}

fn scan_graph(
    scan: &mut Scan,
    g: &Graph,
    k: usize,
    canonical: bool,
    tol: &Tolerances,
) -> Result<()> {
    scan.total += 1;
    if !is_fan_free(g, k)? {
        return Ok(());
    }
    scan.scanned += 1;
    let q = spectrum(&signless_laplacian(g))?.largest();
    scan.offer(g, q, canonical, tol.margin);
    Ok(())
}

fn check_certify_args(n: usize, k: usize, opts: &CertifyOptions) -> Result<()> {
    opts.tolerances.validate()?;
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    if opts.shards == 0 {
        return Err(Error::InvalidParameters(
            "shard count must be positive".into(),
        ));
    }
    Ok(())
}

/// Exhaustive certification over the internal generator, split into
/// `opts.shards` independent shards scanned on `opts.jobs` workers.
pub fn certify_max_q1(n: usize, k: usize, opts: &CertifyOptions) -> Result<SearchCertificate> {
    check_certify_args(n, k, opts)?;
    let start = Instant::now();
    let tol = opts.tolerances;
    let run = || -> Result<Scan> {
        let parts: Vec<Result<Scan>> = (0..opts.shards)
            .into_par_iter()
            .map(|i| {
                let task = EnumerationTask {
                    n,
                    connected_only: opts.connected_only,
                    shard: None,
                }
                .with_shard(i, opts.shards);
                let mut scan = Scan::default();
                for g in enumerate(task)? {
                    scan_graph(&mut scan, &g, k, true, &tol)?;
                }
                log::debug!(
                    "shard {i}/{}: {} graphs, {} fan-free",
                    opts.shards,
                    scan.total,
                    scan.scanned
                );
                Ok(scan)
            })
            .collect();
        parts
            .into_iter()
            .try_fold(Scan::default(), |acc, s| Ok(acc.merge(s?, tol.margin)))
    };
    let scan = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidParameters(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    finish(n, k, scan, opts, start)
}

/// Certification over an externally supplied stream of graphs of order `n`.
/// Inputs need not be canonical or distinct.
pub fn certify_from_graphs<I>(
    n: usize,
    k: usize,
    graphs: I,
    opts: &CertifyOptions,
) -> Result<SearchCertificate>
where
    I: IntoIterator<Item = Result<Graph>>,
{
    check_certify_args(n, k, opts)?;
    let start = Instant::now();
    let mut scan = Scan::default();
    for g in graphs {
        let g = g?;
        if g.order() != n {
            return Err(Error::InvalidParameters(format!(
                "input graph has order {}, expected {n}",
                g.order()
            )));
        }
        if opts.connected_only && !g.is_connected() {
            continue;
        }
        scan_graph(&mut scan, &g, k, false, &opts.tolerances)?;
    }
    finish(n, k, scan, opts, start)
}

fn finish(
    n: usize,
    k: usize,
    scan: Scan,
    opts: &CertifyOptions,
    start: Instant,
) -> Result<SearchCertificate> {
    let tol = opts.tolerances;
    if scan.top.is_empty() {
        return Err(Error::InvalidParameters(format!(
            "no F_{k}-free graph of order {n} in the source"
        )));
    }
    // Re-solve every near-maximal graph at the tightened threshold; only a
    // single survivor counts as a unique maximizer.
    let mut near = Vec::with_capacity(scan.near.len());
    for c in &scan.near {
        let q = spectrum_with_threshold(&signless_laplacian(&c.graph6.to_graph()), tol.reverify)?
            .largest();
        insert_sorted(
            &mut near,
            Candidate {
                graph6: c.graph6.clone(),
                q1: q,
            },
        );
    }
    let best = near[0].q1;
    let tied: Vec<Candidate> = near
        .iter()
        .filter(|c| best - c.q1 <= tol.reverify * n as f64)
        .cloned()
        .collect();
    let unique = tied.len() == 1;
    let winner = near[0].clone();

    // independent re-solve of the decoded winner
    let check = spectrum(&signless_laplacian(&graph6::decode(
        winner.graph6.as_str(),
    )?))?
    .largest();
    if (check - winner.q1).abs() > tol.eigen {
        return Err(Error::SelfCheck(format!(
            "winner q1 {} does not reproduce ({check})",
            winner.q1
        )));
    }

    let split = if k < n {
        Some(Graph::split(n, k)?)
    } else {
        None
    };
    let is_split = split
        .as_ref()
        .is_some_and(|s| canonical_form(s) == winner.graph6);
    let winner_is_split = unique && is_split;
    let runner_up = scan
        .top
        .iter()
        .find(|c| c.graph6 != winner.graph6)
        .map(|c| c.q1);
    let regime = in_theorem_regime(n, k);
    let verdict = match (regime, winner_is_split) {
        (false, _) => Verdict::OutsideTheoremRegime,
        (true, true) => Verdict::Confirmed,
        (true, false) => Verdict::Counterexample,
    };
    let flag = (!regime).then(|| {
        if k < 2 {
            "outside theorem regime (k < 2: exploration only)".to_string()
        } else {
            format!("outside theorem regime (n < {})", 3 * k * k - k - 2)
        }
    });
    Ok(SearchCertificate {
        n,
        k,
        verdict,
        in_theorem_regime: regime,
        flag,
        winner_q1: winner.q1,
        winner: winner.graph6,
        winner_is_split,
        unique,
        runner_up_q1: runner_up,
        margin: runner_up.map(|r| (best - r).max(0.0)),
        split_q1: if k < n {
            Some(q1_split_closed_form(n, k)?)
        } else {
            None
        },
        scanned: scan.scanned,
        total: scan.total,
        connected_only: opts.connected_only,
        top: scan.top,
        near_maximal: near,
        tolerances: tol,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

fn avoids(g: &Graph, pattern: Pattern) -> Result<bool> {
    match pattern {
        Pattern::Matching(k) => is_kk2_free(g, k),
        Pattern::Fan(k) => is_fan_free(g, k),
    }
}

/// Exact `ex(n, pattern)` with every extremal graph, by scanning all
/// isomorphism classes of order `n`.
pub fn turan_bruteforce(n: usize, pattern: Pattern) -> Result<TuranRecord> {
    turan_from_graphs(n, pattern, enumerate(EnumerationTask::all(n))?.map(Ok))
}

/// As [`turan_bruteforce`] over an external source of order-`n` graphs.
pub fn turan_from_graphs<I>(n: usize, pattern: Pattern, graphs: I) -> Result<TuranRecord>
where
    I: IntoIterator<Item = Result<Graph>>,
{
    if pattern.k() == 0 {
        return Err(Error::InvalidParameters(
            "pattern parameter must be at least 1".into(),
        ));
    }
    let mut max_edges = 0;
    let mut extremal: Vec<String> = Vec::new();
    let mut seen_any = false;
    for g in graphs {
        let g = g?;
        if g.order() != n {
            return Err(Error::InvalidParameters(format!(
                "input graph has order {}, expected {n}",
                g.order()
            )));
        }
        let e = g.size();
        if (seen_any && e < max_edges) || !avoids(&g, pattern)? {
            continue;
        }
        if !seen_any || e > max_edges {
            max_edges = e;
            extremal.clear();
            seen_any = true;
        }
        extremal.push(canonical_form(&g).0);
    }
    if !seen_any {
        return Err(Error::InvalidParameters(format!(
            "no {pattern}-free graph of order {n} in the source"
        )));
    }
    extremal.sort();
    extremal.dedup();
    let regime = match pattern {
        Pattern::Matching(k) if k >= 2 && n + 1 >= 2 * k => Some(turan_kk2(n, k)?.1),
        _ => None,
    };
    Ok(TuranRecord {
        n,
        pattern,
        max_edges,
        extremal,
        regime,
    })
}

/// `⌊n²/4⌋ + k² - k` for odd `k`, `⌊n²/4⌋ + k² - 3k/2` for even `k`.
pub fn efgg_value(n: usize, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let extra = if k % 2 == 1 {
        k * k - k
    } else {
        k * k - 3 * k / 2
    };
    Ok(n * n / 4 + extra)
}

/// Whether `n >= 50k²`, where `efgg_value` is the proven Turán number.
pub fn efgg_guaranteed(n: usize, k: usize) -> bool {
    n >= 50 * k * k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedPart {
    pub description: String,
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub n: usize,
    pub k: usize,
    pub parity: Parity,
    /// Part sizes of the complete bipartite base; the embedding sits in `host`.
    pub other_side: usize,
    pub host_side: usize,
    pub embedded: EmbeddedPart,
}

/// The graph placed inside one side for even `k`: `2k - 1` vertices, one of
/// degree `k - 2` and the rest of degree `k - 1`. It is the circulant with
/// distances `1..=(k-2)/2` plus a near-perfect matching taken from the
/// Hamilton cycle of step `k - 1`.
pub fn even_embedding(k: usize) -> Result<Graph> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::InvalidParameters(format!(
            "even embedding needs even k >= 2, got {k}"
        )));
    }
    let m = 2 * k - 1;
    let mut edges = Vec::new();
    for i in 0..m {
        for d in 1..=(k - 2) / 2 {
            edges.push((i, (i + d) % m));
        }
    }
    let cycle: Vec<usize> = (0..m).map(|i| i * (k - 1) % m).collect();
    for pair in cycle[..m - 1].chunks(2) {
        edges.push((pair[0], pair[1]));
    }
    Graph::from_edges(m, &edges)
}

/// Complete bipartite graph on parts `⌊n/2⌋`, `⌈n/2⌉` with two disjoint `K_k`
/// (odd `k`) or [`even_embedding`] (even `k`) inside the larger part. The
/// result is verified to be `F_k`-free with exactly `efgg_value(n, k)` edges.
pub fn efgg_construction(n: usize, k: usize) -> Result<(Graph, ConstructionSpec)> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let (parity, min_n) = if k % 2 == 1 {
        (Parity::Odd, 4 * k - 1)
    } else {
        (Parity::Even, 4 * k - 3)
    };
    if n < min_n {
        return Err(Error::InvalidParameters(format!(
            "k = {k} needs n >= {min_n}, got {n}"
        )));
    }
    let other_side = n / 2;
    let host_side = n - other_side;
    let (embedded, description) = match parity {
        Parity::Odd => {
            let two_cliques = Graph::complete(k)?.disjoint_union(&Graph::complete(k)?)?;
            (two_cliques, format!("two disjoint K_{k}"))
        }
        Parity::Even => (
            even_embedding(k)?,
            format!("{}-vertex graph with max degree {}", 2 * k - 1, k - 1),
        ),
    };
    let host = embedded.disjoint_union(&Graph::empty(host_side - embedded.order())?)?;
    let g = Graph::empty(other_side)?.join(&host)?;
    let part = EmbeddedPart {
        description,
        vertices: embedded.order(),
        edges: embedded.size(),
        max_degree: embedded.degrees().into_iter().max().unwrap_or(0),
    };
    match parity {
        Parity::Odd => {
            if part.vertices != 2 * k || part.edges != k * (k - 1) {
                return Err(Error::SelfCheck(format!(
                    "odd embedding has shape {part:?}"
                )));
            }
        }
        Parity::Even => {
            if part.vertices != 2 * k - 1
                || part.edges != k * k - 3 * k / 2
                || part.max_degree > k - 1
            {
                return Err(Error::SelfCheck(format!(
                    "even embedding has shape {part:?}"
                )));
            }
        }
    }
    let expected = efgg_value(n, k)?;
    if g.size() != expected {
        return Err(Error::SelfCheck(format!(
            "construction has {} edges, expected {expected}",
            g.size()
        )));
    }
    if !is_fan_free(&g, k)? {
        return Err(Error::SelfCheck(format!("construction contains F_{k}")));
    }
    Ok((
        g,
        ConstructionSpec {
            n,
            k,
            parity,
            other_side,
            host_side,
            embedded: part,
        },
    ))
}

/// Writes `record` as one pretty-printed JSON document followed by a newline.
pub fn emit_certificate<T: Serialize, W: Write>(record: &T, sink: &mut W) -> Result<()> {
    serde_json::to_writer_pretty(&mut *sink, record).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(sink)?;
    Ok(())
}

/// Rounds to 15 significant decimal digits.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

/// Serde helpers printing reals at 15 significant digits.
pub mod sig15 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(super::round_sig15(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        f64::deserialize(d)
    }

    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&super::super::round_sig15(*v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            Option::<f64>::deserialize(d)
        }
    }
}
