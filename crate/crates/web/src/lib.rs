//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes plain numbers or strings and returns a JSON document,
//! so the page needs no generated type definitions. The `*_report` functions
//! hold the logic and are ordinary Rust, which keeps them testable natively.

use fanspec::fan::{contains_fan, FanWitness};
use fanspec::search::{efgg_construction, efgg_guaranteed, efgg_value, ConstructionSpec};
use fanspec::spectral::{
    merris_bound, q1, q1_split_closed_form, q1_split_lower_bound, quotient, signless_laplacian,
    VertexPartition,
};
use fanspec::{graph6, Graph};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest order the page will draw; the core library caps at 64.
pub const MAX_DRAW_ORDER: usize = 64;

/// What the canvas needs: vertices with a color group and the edge list.
#[derive(Debug, Serialize)]
pub struct Drawing {
    pub n: usize,
    pub groups: Vec<u8>,
    pub edges: Vec<(usize, usize)>,
    pub highlight: Vec<(usize, usize)>,
}

impl Drawing {
    fn plain(g: &Graph) -> Self {
        Drawing {
            n: g.order(),
            groups: vec![0; g.order()],
            edges: g.edges(),
            highlight: Vec::new(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SplitProfile {
    pub n: usize,
    pub k: usize,
    pub closed_form: f64,
    pub eigensolver: f64,
    pub quotient_top: f64,
    pub equitable: bool,
    /// `None` below the order where the bound is valid.
    pub lower_bound: Option<f64>,
    pub drawing: Drawing,
}

pub fn split_profile_report(n: usize, k: usize) -> fanspec::Result<SplitProfile> {
    let g = Graph::split(n, k)?;
    let q = signless_laplacian(&g);
    let p = VertexPartition::new(n, vec![(0..k).collect(), (k..n).collect()])?;
    let qm = quotient(&q, &p)?;
    let mut drawing = Drawing::plain(&g);
    drawing.groups[..k].fill(1);
    Ok(SplitProfile {
        n,
        k,
        closed_form: q1_split_closed_form(n, k)?,
        eigensolver: q1(&g),
        quotient_top: qm.eigenvalues()?[0],
        equitable: qm.equitable,
        lower_bound: q1_split_lower_bound(n, k).ok(),
        drawing,
    })
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub graph6: String,
    pub n: usize,
    pub e: usize,
    pub q1: f64,
    pub merris: Option<f64>,
    pub merris_vertex: Option<usize>,
    pub k: usize,
    pub fan: Option<FanWitness>,
    pub drawing: Drawing,
}

pub fn analyze_report(text: &str, k: usize) -> fanspec::Result<Analysis> {
    let g = graph6::decode(text.trim())?;
    let merris = merris_bound(&g).ok();
    let fan = contains_fan(&g, k)?;
    let mut drawing = Drawing::plain(&g);
    if let Some(w) = &fan {
        drawing.groups[w.center] = 1;
        for &(a, b) in &w.pairs {
            drawing.groups[a] = 2;
            drawing.groups[b] = 2;
            drawing
                .highlight
                .extend([(w.center, a), (w.center, b), (a, b)]);
        }
    }
    Ok(Analysis {
        graph6: graph6::encode(&g),
        n: g.order(),
        e: g.size(),
        q1: q1(&g),
        merris: merris.map(|m| m.0),
        merris_vertex: merris.map(|m| m.1),
        k,
        fan,
        drawing,
    })
}

#[derive(Debug, Serialize)]
pub struct Construction {
    pub graph6: String,
    pub e: usize,
    pub efgg_value: usize,
    pub guaranteed: bool,
    pub spec: ConstructionSpec,
    pub drawing: Drawing,
}

pub fn construction_report(n: usize, k: usize) -> fanspec::Result<Construction> {
    if n > MAX_DRAW_ORDER {
        return Err(fanspec::Error::OrderTooLarge {
            n,
            max: MAX_DRAW_ORDER,
        });
    }
    let (g, spec) = efgg_construction(n, k)?;
    let mut drawing = Drawing::plain(&g);
    // Vertices are laid out as the plain side, then the embedded part, then
    // the rest of the host side.
    let embedded_end = spec.other_side + spec.embedded.vertices;
    drawing.groups[spec.other_side..].fill(2);
    drawing.groups[spec.other_side..embedded_end].fill(1);
    drawing.highlight = g
        .edges()
        .into_iter()
        .filter(|&(u, _)| u >= spec.other_side)
        .collect();
    Ok(Construction {
        graph6: graph6::encode(&g),
        e: g.size(),
        efgg_value: efgg_value(n, k)?,
        guaranteed: efgg_guaranteed(n, k),
        spec,
        drawing,
    })
}

fn to_json<T: Serialize>(r: fanspec::Result<T>) -> Result<String, String> {
    r.map_err(|e| e.to_string())
        .and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
}

/// `q1(S_{n,k})` by closed form, eigensolver and quotient, plus the lower bound.
#[wasm_bindgen]
pub fn split_profile(n: usize, k: usize) -> Result<String, String> {
    to_json(split_profile_report(n, k))
}

/// q1, the degree-average bound and an `F_k` witness for one graph6 string.
#[wasm_bindgen]
pub fn analyze(graph6_text: &str, k: usize) -> Result<String, String> {
    to_json(analyze_report(graph6_text, k))
}

/// The complete bipartite `F_k`-free construction with the most edges.
#[wasm_bindgen]
pub fn construct(n: usize, k: usize) -> Result<String, String> {
    to_json(construction_report(n, k))
}
