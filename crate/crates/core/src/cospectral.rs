//! Cospectral weighted digraph generation.
//!
//! A transplantable pair shares one block-diagonal matrix that intertwines
//! every line-graph adjacency matrix, so any rational weighting of the colors
//! produces similar — hence adjacency-cospectral — weighted digraphs. The
//! characteristic polynomials are computed exactly on both sides anyway; the
//! certificate is never taken on faith.

use crate::graph::ColoredGraph;
use crate::linegraph::{build_ec, build_vc, EcLineGraph, VcLineGraph};
use crate::matrix::{ExactMatrix, IntMatrix};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::transplant::{certify, GraphFingerprint, TransplantCertificate, TransplantError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    VertexColored,
    EdgeColored,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::VertexColored => "vc",
            Flavor::EdgeColored => "ec",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CospectralError {
    #[error("expected {expected} weights, got {got}")]
    MissingWeight { expected: usize, got: usize },
    #[error("digraphs have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("the input pair is not transplantable")]
    NotTransplantable,
    #[error(transparent)]
    Transplant(#[from] TransplantError),
}

/// `sum_i weights[i] * mats[i]`, exactly. One weight per color slot.
pub fn weighted_matrix(
    mats: &[IntMatrix],
    weights: &[Rational],
) -> Result<ExactMatrix, CospectralError> {
    if mats.len() != weights.len() {
        return Err(CospectralError::MissingWeight {
            expected: mats.len(),
            got: weights.len(),
        });
    }
    let n = mats.first().map_or(0, IntMatrix::rows);
    let mut acc = ExactMatrix::zeros(n, n);
    for (m, w) in mats.iter().zip(weights) {
        acc = acc.add(&m.to_rational().scale(w));
    }
    Ok(acc)
}

impl VcLineGraph {
    /// Weighted adjacency matrix; one weight per color.
    pub fn weighted(&self, weights: &[Rational]) -> Result<ExactMatrix, CospectralError> {
        weighted_matrix(&self.adjacency, weights)
    }
}

impl EcLineGraph {
    /// Weighted adjacency matrix; one weight per color pair.
    pub fn weighted(&self, weights: &[Rational]) -> Result<ExactMatrix, CospectralError> {
        weighted_matrix(&self.adjacency, weights)
    }
}

/// A weighted directed graph with its exact characteristic polynomial and the
/// provenance needed to re-verify it.
#[derive(Debug, Clone)]
pub struct WeightedDigraph {
    pub adjacency: ExactMatrix,
    pub char_poly: Polynomial,
    pub source: GraphFingerprint,
    pub flavor: Flavor,
    pub weights: Vec<Rational>,
}

impl WeightedDigraph {
    pub fn new(
        adjacency: ExactMatrix,
        source: GraphFingerprint,
        flavor: Flavor,
        weights: Vec<Rational>,
    ) -> Self {
        let char_poly = adjacency.char_poly().expect("adjacency is square");
        WeightedDigraph {
            adjacency,
            char_poly,
            source,
            flavor,
            weights,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.rows()
    }
}

#[derive(Debug, Clone)]
pub struct CospectralPair {
    pub left: WeightedDigraph,
    pub right: WeightedDigraph,
    /// Intertwines the two weighted matrices, certifying similarity.
    pub line_transplantation: ExactMatrix,
    pub certificate: TransplantCertificate,
}

/// Builds the weighted line digraphs of a transplantable pair along with the
/// certificate that makes them cospectral. The line transplantation matrix
/// intertwines each color matrix separately, so similarity holds for every
/// weight vector; this instance is checked exactly nonetheless.
pub fn generate_cospectral_pair(
    g: &ColoredGraph,
    h: &ColoredGraph,
    weights: &[Rational],
    flavor: Flavor,
    seed: u64,
) -> Result<CospectralPair, CospectralError> {
    let certificate = certify(g, h, seed)?;
    if !certificate.is_transplantable() {
        return Err(CospectralError::NotTransplantable);
    }
    let t_line = certificate
        .line_witness
        .clone()
        .expect("transplantable certificate");
    let (w_left, w_right) = match flavor {
        Flavor::VertexColored => (
            build_vc(g).weighted(weights)?,
            build_vc(h).weighted(weights)?,
        ),
        Flavor::EdgeColored => (
            build_ec(g).weighted(weights)?,
            build_ec(h).weighted(weights)?,
        ),
    };
    if w_left.mul(&t_line) != t_line.mul(&w_right) {
        return Err(TransplantError::VerificationFailed.into());
    }
    let left = WeightedDigraph::new(w_left, certificate.left, flavor, weights.to_vec());
    let right = WeightedDigraph::new(w_right, certificate.right, flavor, weights.to_vec());
    Ok(CospectralPair {
        left,
        right,
        line_transplantation: t_line,
        certificate,
    })
}

/// Exact coefficient-wise comparison of the characteristic polynomials.
pub fn verify_cospectral(
    a: &WeightedDigraph,
    b: &WeightedDigraph,
) -> Result<bool, CospectralError> {
    if a.vertex_count() != b.vertex_count() {
        return Err(CospectralError::SizeMismatch(
            a.vertex_count(),
            b.vertex_count(),
        ));
    }
    Ok(a.char_poly == b.char_poly)
}
