//! Colored directed line graphs and the weighted incidence decomposition.
//!
//! Strip the D-loops from a graph; the remaining edges (links and N-loops)
//! become line-graph vertices, grouped by color. The vertex-colored line
//! graph connects edge `e` to edge `f != e` with weight 2 when `e` shares all
//! of its vertices with `f`, and weight 1 when `e` is a link sharing exactly
//! one vertex with `f`; rows of the color-`c` matrix are supported on
//! `c`-colored edges. The edge-colored variant keeps the same vertices and
//! colors each arc by the unordered pair of endpoint colors.
//!
//! Everything here is integer arithmetic; entries never leave `{0, 1, 2}`.

use crate::graph::{ColoredGraph, Edge};
use crate::matrix::IntMatrix;

/// A line-graph vertex: one edge of the loop-stripped graph. For an N-loop
/// both endpoints coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineVertex {
    pub color: usize,
    pub ends: (usize, usize),
}

impl LineVertex {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    fn touches(&self, v: usize) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }
}

/// Deterministic numbering of the edges of the loop-stripped graph: grouped
/// by color, links first (sorted by endpoints), then N-loops (sorted by
/// vertex). Per color there are `tr(I + A_c)/2` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeIndexing {
    verts: Vec<LineVertex>,
    per_color: Vec<usize>,
}

impl EdgeIndexing {
    pub fn new(g: &ColoredGraph) -> Self {
        let mut verts = Vec::new();
        let mut per_color = Vec::with_capacity(g.color_count());
        for c in 0..g.color_count() {
            let before = verts.len();
            for e in g.color_edges(c) {
                match e {
                    Edge::Link(u, v) => verts.push(LineVertex {
                        color: c,
                        ends: (u, v),
                    }),
                    Edge::NLoop(v) => verts.push(LineVertex {
                        color: c,
                        ends: (v, v),
                    }),
                    Edge::DLoop(_) => {}
                }
            }
            per_color.push(verts.len() - before);
        }
        let idx = EdgeIndexing { verts, per_color };
        debug_assert!((0..g.color_count()).all(|c| {
            let tr = g.adjacency(c).trace();
            idx.per_color[c] as i64 == (g.vertex_count() as i64 + tr) / 2
        }));
        idx
    }

    /// Total number of line-graph vertices.
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Per-color counts, i.e. the block sizes of any line-graph
    /// transplantation matrix.
    pub fn color_counts(&self) -> &[usize] {
        &self.per_color
    }

    pub fn vertex(&self, e: usize) -> LineVertex {
        self.verts[e]
    }

    pub fn color_of(&self, e: usize) -> usize {
        self.verts[e].color
    }

    pub fn vertices(&self) -> &[LineVertex] {
        &self.verts
    }
}

/// Vertex-colored directed line graph: one adjacency matrix per color, rows
/// supported on that color's edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcLineGraph {
    pub indexing: EdgeIndexing,
    pub adjacency: Vec<IntMatrix>,
}

impl VcLineGraph {
    pub fn vertex_colors(&self) -> Vec<usize> {
        self.indexing.vertices().iter().map(|lv| lv.color).collect()
    }
}

/// Edge-colored directed line graph: one adjacency matrix per unordered pair
/// of distinct colors, in lexicographic pair order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcLineGraph {
    pub indexing: EdgeIndexing,
    pub color_pairs: Vec<(usize, usize)>,
    pub adjacency: Vec<IntMatrix>,
}

/// Weighted incidence matrix `B_w` (w at N-loop incidences, 1 at link
/// incidences) together with the diagonal color projectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceData {
    pub weight: i64,
    pub incidence: IntMatrix,
    pub projectors: Vec<IntMatrix>,
}

pub fn build_vc(g: &ColoredGraph) -> VcLineGraph {
    let indexing = EdgeIndexing::new(g);
    let n_l = indexing.len();
    let mut adjacency = Vec::with_capacity(g.color_count());
    for c in 0..g.color_count() {
        let mut m = IntMatrix::zeros(n_l, n_l);
        for e in 0..n_l {
            let lv = indexing.vertex(e);
            if lv.color != c {
                continue;
            }
            for f in 0..n_l {
                if f == e {
                    continue;
                }
                let other = indexing.vertex(f);
                let shares_all = other.touches(lv.ends.0) && other.touches(lv.ends.1);
                if shares_all {
                    m[(e, f)] = 2;
                } else if !lv.is_loop() && (other.touches(lv.ends.0) || other.touches(lv.ends.1)) {
                    m[(e, f)] = 1;
                }
            }
        }
        adjacency.push(m);
    }
    let lg = VcLineGraph {
        indexing,
        adjacency,
    };
    // Cross-check against the incidence route C_c (B2^t B1 - 2I).
    assert!(
        decomposition_holds(g, &lg),
        "line graph disagrees with its incidence decomposition"
    );
    lg
}

pub fn build_ec(g: &ColoredGraph) -> EcLineGraph {
    let vc = build_vc(g);
    let n_l = vc.indexing.len();
    let k = g.color_count();
    let mut color_pairs = Vec::new();
    for c in 0..k {
        for d in c + 1..k {
            color_pairs.push((c, d));
        }
    }
    let adjacency = color_pairs
        .iter()
        .map(|&(c, d)| {
            IntMatrix::from_fn(n_l, n_l, |e, f| {
                let ce = vc.indexing.color_of(e);
                let cf = vc.indexing.color_of(f);
                if (ce.min(cf), ce.max(cf)) == (c, d) {
                    vc.adjacency[c][(e, f)] + vc.adjacency[d][(e, f)]
                } else {
                    0
                }
            })
        })
        .collect();
    EcLineGraph {
        indexing: vc.indexing,
        color_pairs,
        adjacency,
    }
}

/// Builds `B_w` and the color projectors. `w` is 1 or 2.
pub fn incidence(g: &ColoredGraph, w: i64) -> IncidenceData {
    assert!(w == 1 || w == 2, "incidence weight must be 1 or 2");
    let indexing = EdgeIndexing::new(g);
    let n = g.vertex_count();
    let n_l = indexing.len();
    let mut b = IntMatrix::zeros(n, n_l);
    for (e, lv) in indexing.vertices().iter().enumerate() {
        if lv.is_loop() {
            b[(lv.ends.0, e)] = w;
        } else {
            b[(lv.ends.0, e)] = 1;
            b[(lv.ends.1, e)] = 1;
        }
    }
    let projectors = (0..g.color_count())
        .map(|c| {
            IntMatrix::from_fn(n_l, n_l, |e, f| {
                (e == f && indexing.color_of(e) == c) as i64
            })
        })
        .collect();
    IncidenceData {
        weight: w,
        incidence: b,
        projectors,
    }
}

fn decomposition_holds(g: &ColoredGraph, vc: &VcLineGraph) -> bool {
    let n = g.vertex_count();
    let n_l = vc.indexing.len();
    let b1 = incidence(g, 1);
    let b2 = incidence(g, 2);
    let b2t_b1 = b2.incidence.transpose().mul(&b1.incidence);
    let two_i = IntMatrix::identity(n_l).scale(&2);
    let eye_n = IntMatrix::identity(n);
    (0..g.color_count()).all(|c| {
        let proj = &b1.projectors[c];
        let graph_side = b1
            .incidence
            .mul(proj)
            .mul(&b2.incidence.transpose())
            .sub(&eye_n);
        let line_side = proj.mul(&b2t_b1.sub(&two_i));
        graph_side == g.adjacency(c) && line_side == vc.adjacency[c]
    })
}

/// Checks both incidence identities exactly:
/// `A_c = B1 C_c B2^t - I` on the graph side and
/// `A_c(vc) = C_c (B2^t B1 - 2I)` on the line-graph side.
pub fn verify_decomposition(g: &ColoredGraph) -> bool {
    decomposition_holds(g, &build_vc(g))
}
