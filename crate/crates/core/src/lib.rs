//! Signless Laplacian spectral extremal toolkit for graphs without k-fans.
//!
//! The crate computes signless Laplacian spectral radii, detects k-fans via
//! neighborhood matchings, evaluates the closed-form spectral and Turán-type
//! bounds around complete split graphs, and exhaustively certifies which
//! `F_k`-free graph of small order maximizes `q1`.

pub mod config;
pub mod enumeration;
pub mod error;
pub mod fan;
pub mod graph;
pub mod graph6;
pub mod matching;
pub mod search;
pub mod spectral;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use graph::{Graph, NamedGraphSpec, VertexSet, MAX_ORDER};
