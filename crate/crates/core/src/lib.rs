//! Exact-arithmetic toolkit for edge-colored loop-signed graphs.
//!
//! An edge-colored loop-signed graph assigns every vertex exactly one edge of
//! each color: a link to another vertex, an N-loop, or a D-loop. Its per-color
//! adjacency matrices are diagonally-signed permutation matrices (symmetric
//! involutions). This crate
//!
//! * validates and canonicalizes such graphs ([`graph`], [`canon`]),
//! * builds their vertex-colored and edge-colored directed line graphs
//!   together with the weighted incidence decomposition ([`linegraph`]),
//! * decides whether two graphs are transplantable — simultaneously similar
//!   by a single invertible matrix — and produces certificates, including the
//!   block-diagonal line-graph transplantation matrix ([`transplant`]),
//! * turns certified pairs into adjacency-cospectral weighted directed graphs
//!   ([`cospectral`]), and
//! * enumerates graphs up to isomorphism and mines non-isomorphic
//!   transplantable pairs ([`search`]).
//!
//! All decision paths use arbitrary-precision rational arithmetic; no floating
//! point is involved anywhere.
//!
//! ```
//! use cospec::cospectral::{generate_cospectral_pair, verify_cospectral, Flavor};
//! use cospec::rational::rat;
//! use cospec::{demo, transplant};
//!
//! // A bundled non-isomorphic pair known to be transplantable.
//! let g = demo::left_graph();
//! let h = demo::right_graph();
//! let cert = transplant::certify(&g, &h, 7).unwrap();
//! assert!(cert.is_transplantable());
//! assert_eq!(cert.block_sizes, vec![2, 2, 2]);
//!
//! // Any weighting of the line-graph colors gives cospectral digraphs.
//! let weights = [rat(1), rat(2), rat(3)];
//! let pair = generate_cospectral_pair(&g, &h, &weights, Flavor::VertexColored, 7).unwrap();
//! assert!(verify_cospectral(&pair.left, &pair.right).unwrap());
//! ```

#![forbid(unsafe_code)]

pub mod canon;
pub mod cospectral;
pub mod demo;
pub mod graph;
pub mod linegraph;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod search;
pub mod transplant;
pub mod word;

pub use graph::{ColoredGraph, Edge, ValidationReport};
pub use matrix::{ExactMatrix, IntMatrix, Matrix};
pub use poly::Polynomial;
pub use rational::Rational;
