//! File formats: graph documents, certificates, line-graph dumps, and pair
//! catalogs. Everything numeric that is not a plain integer travels as an
//! exact `"p/q"` string; vertices and colors are 1-based on disk.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use cospec::canon::canonical_form;
use cospec::cospectral::{CospectralPair, Flavor};
use cospec::graph::{ColoredGraph, Edge};
use cospec::linegraph::{EcLineGraph, VcLineGraph};
use cospec::matrix::ExactMatrix;
use cospec::poly::Polynomial;
use cospec::rational::{format_rational, parse_rational, Rational};
use cospec::search::PairRecord;
use cospec::transplant::TransplantCertificate;

pub const GRAPH_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDocument {
    pub version: u32,
    pub n: usize,
    pub colors: Vec<String>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub color: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
    pub v: usize,
}

/// A parsed graph together with its display color names.
#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub graph: ColoredGraph,
    pub colors: Vec<String>,
}

impl NamedGraph {
    pub fn pair_label(&self, c: usize, d: usize) -> String {
        format!("{}+{}", self.colors[c], self.colors[d])
    }
}

/// Document contents before the graph-encoding validation runs, so that
/// `validate` can report on them.
pub struct GraphParts {
    pub n: usize,
    pub colors: Vec<String>,
    pub edges: Vec<(usize, Edge)>,
}

pub fn parse_graph_parts(bytes: &[u8]) -> Result<GraphParts> {
    let doc: GraphDocument = serde_json::from_slice(bytes).context("malformed graph document")?;
    if doc.version != GRAPH_FORMAT_VERSION {
        bail!("unsupported graph format version {}", doc.version);
    }
    if doc.n == 0 {
        bail!("n must be positive");
    }
    if doc.colors.is_empty() {
        bail!("at least one color is required");
    }
    for (i, a) in doc.colors.iter().enumerate() {
        if doc.colors[..i].contains(a) {
            bail!("duplicate color name {a:?}");
        }
    }
    let color_index = |name: &str, pos: usize| {
        doc.colors
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| anyhow!("edge {}: unknown color {name:?}", pos + 1))
    };
    let vertex = |v: usize, pos: usize| {
        if v == 0 || v > doc.n {
            bail!("edge {}: vertex {v} out of range 1..={}", pos + 1, doc.n);
        }
        Ok(v - 1)
    };
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (pos, entry) in doc.edges.iter().enumerate() {
        let color = color_index(&entry.color, pos)?;
        let edge = match entry.kind.as_str() {
            "link" => {
                let u = entry
                    .u
                    .ok_or_else(|| anyhow!("edge {}: link needs both \"u\" and \"v\"", pos + 1))?;
                Edge::link(vertex(u, pos)?, vertex(entry.v, pos)?)
            }
            "nloop" => Edge::NLoop(vertex(entry.v, pos)?),
            "dloop" => Edge::DLoop(vertex(entry.v, pos)?),
            other => bail!(
                "edge {}: unknown kind {other:?} (expected link|nloop|dloop)",
                pos + 1
            ),
        };
        edges.push((color, edge));
    }
    Ok(GraphParts {
        n: doc.n,
        colors: doc.colors,
        edges,
    })
}

pub fn parse_graph_document(bytes: &[u8]) -> Result<NamedGraph> {
    let parts = parse_graph_parts(bytes)?;
    let graph = ColoredGraph::from_edges(parts.n, parts.colors.len(), &parts.edges)
        .map_err(|report| anyhow!("invalid graph: {report}"))?;
    Ok(NamedGraph {
        graph,
        colors: parts.colors,
    })
}

pub fn graph_to_document(g: &ColoredGraph, colors: &[String]) -> GraphDocument {
    let edges = g
        .edges()
        .into_iter()
        .map(|(c, e)| match e {
            Edge::Link(u, v) => EdgeEntry {
                color: colors[c].clone(),
                kind: "link".into(),
                u: Some(u + 1),
                v: v + 1,
            },
            Edge::NLoop(v) => EdgeEntry {
                color: colors[c].clone(),
                kind: "nloop".into(),
                u: None,
                v: v + 1,
            },
            Edge::DLoop(v) => EdgeEntry {
                color: colors[c].clone(),
                kind: "dloop".into(),
                u: None,
                v: v + 1,
            },
        })
        .collect();
    GraphDocument {
        version: GRAPH_FORMAT_VERSION,
        n: g.vertex_count(),
        colors: colors.to_vec(),
        edges,
    }
}

pub fn default_color_names(k: usize) -> Vec<String> {
    (1..=k).map(|c| c.to_string()).collect()
}

// ---- exact matrices and polynomials ------------------------------------

pub fn matrix_to_strings(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| format_rational(&m[(r, c)])).collect())
        .collect()
}

pub fn matrix_from_strings(rows: &[Vec<String>]) -> Result<ExactMatrix> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut data = Vec::with_capacity(nrows * ncols);
    for row in rows {
        if row.len() != ncols {
            bail!("ragged matrix rows");
        }
        for s in row {
            data.push(parse_rational(s)?);
        }
    }
    let mut iter = data.into_iter();
    Ok(ExactMatrix::from_fn(nrows, ncols, |_, _| {
        iter.next().expect("sized above")
    }))
}

pub fn poly_to_strings(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

// ---- certificates -------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomDimsDocument {
    pub left: usize,
    pub right: usize,
    pub cross: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub version: u32,
    pub left_key: String,
    pub right_key: String,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<HomDimsDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refuting_word: Option<Vec<String>>,
    pub block_sizes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transplantation: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_transplantation: Option<Vec<Vec<String>>>,
    pub seed: u64,
}

pub fn certificate_to_document(
    cert: &TransplantCertificate,
    left: &NamedGraph,
    right: &NamedGraph,
    seed: u64,
) -> CertificateDocument {
    let refuting_word = match &cert.refutation {
        Some(cospec::transplant::Refutation::TraceMismatch { word, .. }) => {
            Some(word.iter().map(|&c| left.colors[c].clone()).collect())
        }
        _ => None,
    };
    CertificateDocument {
        version: 1,
        left_key: canonical_form(&left.graph).to_string(),
        right_key: canonical_form(&right.graph).to_string(),
        verdict: if cert.is_transplantable() {
            "transplantable"
        } else {
            "not-transplantable"
        }
        .into(),
        dims: cert.dims.map(|d| HomDimsDocument {
            left: d.left,
            right: d.right,
            cross: d.cross,
        }),
        refuting_word,
        block_sizes: cert.block_sizes.clone(),
        transplantation: cert.witness.as_ref().map(matrix_to_strings),
        line_transplantation: cert.line_witness.as_ref().map(matrix_to_strings),
        seed,
    }
}

// ---- line graph dumps ---------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineGraphDocument {
    pub flavor: String,
    pub vertex_count: usize,
    pub vertex_colors: Vec<String>,
    pub matrices: Vec<LabeledMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub color: String,
    pub rows: Vec<Vec<i64>>,
}

fn int_rows(m: &cospec::matrix::IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

pub fn vc_to_document(lg: &VcLineGraph, named: &NamedGraph) -> LineGraphDocument {
    LineGraphDocument {
        flavor: Flavor::VertexColored.as_str().into(),
        vertex_count: lg.indexing.len(),
        vertex_colors: lg
            .vertex_colors()
            .iter()
            .map(|&c| named.colors[c].clone())
            .collect(),
        matrices: lg
            .adjacency
            .iter()
            .enumerate()
            .map(|(c, m)| LabeledMatrix {
                color: named.colors[c].clone(),
                rows: int_rows(m),
            })
            .collect(),
    }
}

pub fn ec_to_document(lg: &EcLineGraph, named: &NamedGraph) -> LineGraphDocument {
    LineGraphDocument {
        flavor: Flavor::EdgeColored.as_str().into(),
        vertex_count: lg.indexing.len(),
        vertex_colors: lg
            .indexing
            .vertices()
            .iter()
            .map(|lv| named.colors[lv.color].clone())
            .collect(),
        matrices: lg
            .adjacency
            .iter()
            .zip(&lg.color_pairs)
            .map(|(m, &(c, d))| LabeledMatrix {
                color: named.pair_label(c, d),
                rows: int_rows(m),
            })
            .collect(),
    }
}

// ---- weights ------------------------------------------------------------

/// Accepts either positional values (`1,2,3`) or `label=value` entries
/// (`s=1,w=2,z=3`; pair labels like `s+w=1` for the edge-colored flavor).
/// Values are exact rationals.
pub fn parse_weights(input: &str, labels: &[String]) -> Result<Vec<Rational>> {
    let entries: Vec<&str> = input
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if entries.is_empty() {
        bail!("empty weight list");
    }
    let named = entries.iter().any(|e| e.contains('='));
    if named {
        let mut out: Vec<Option<Rational>> = vec![None; labels.len()];
        for entry in &entries {
            let (name, value) = entry
                .split_once('=')
                .ok_or_else(|| anyhow!("mixed positional and named weights in {input:?}"))?;
            let idx = labels
                .iter()
                .position(|l| l == name.trim())
                .ok_or_else(|| anyhow!("unknown weight label {:?}", name.trim()))?;
            if out[idx].is_some() {
                bail!("duplicate weight for {:?}", name.trim());
            }
            out[idx] = Some(parse_rational(value.trim())?);
        }
        out.into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| anyhow!("missing weight for {:?}", labels[i])))
            .collect()
    } else {
        if entries.len() != labels.len() {
            bail!("expected {} weights, got {}", labels.len(), entries.len());
        }
        entries.iter().map(|e| Ok(parse_rational(e)?)).collect()
    }
}

// ---- cospectral output ----------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedDigraphDocument {
    pub vertex_count: usize,
    pub adjacency: Vec<Vec<String>>,
    pub char_poly: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CospectralDocument {
    pub flavor: String,
    pub weights: Vec<String>,
    pub left: WeightedDigraphDocument,
    pub right: WeightedDigraphDocument,
    pub line_transplantation: Vec<Vec<String>>,
    pub cospectral: bool,
}

pub fn cospectral_to_document(pair: &CospectralPair) -> CospectralDocument {
    let digraph = |d: &cospec::cospectral::WeightedDigraph| WeightedDigraphDocument {
        vertex_count: d.vertex_count(),
        adjacency: matrix_to_strings(&d.adjacency),
        char_poly: poly_to_strings(&d.char_poly),
    };
    CospectralDocument {
        flavor: pair.left.flavor.as_str().into(),
        weights: pair.left.weights.iter().map(format_rational).collect(),
        left: digraph(&pair.left),
        right: digraph(&pair.right),
        line_transplantation: matrix_to_strings(&pair.line_transplantation),
        cospectral: pair.left.char_poly == pair.right.char_poly,
    }
}

// ---- pair catalog ---------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairRecordDocument {
    pub left_key: String,
    pub right_key: String,
    pub left: GraphDocument,
    pub right: GraphDocument,
    pub certificate: CertificateDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_graphs_isomorphic: Option<bool>,
}

pub fn pair_record_to_document(rec: &PairRecord, seed: u64) -> PairRecordDocument {
    let colors = default_color_names(rec.left.color_count());
    let left = NamedGraph {
        graph: rec.left.clone(),
        colors: colors.clone(),
    };
    let right = NamedGraph {
        graph: rec.right.clone(),
        colors: colors.clone(),
    };
    PairRecordDocument {
        left_key: rec.left_key.to_string(),
        right_key: rec.right_key.to_string(),
        left: graph_to_document(&rec.left, &colors),
        right: graph_to_document(&rec.right, &colors),
        certificate: certificate_to_document(&rec.certificate, &left, &right, seed),
        line_graphs_isomorphic: rec.line_graphs_isomorphic,
    }
}
