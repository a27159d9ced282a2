//! A bundled worked example: a transplantable but non-isomorphic pair of
//! 4-vertex, 3-color graphs together with its transplantation matrix and the
//! expected line-graph data. The pair doubles as golden test input and as the
//! subject of the CLI demo command.

use crate::graph::{ColoredGraph, Edge};
use crate::matrix::{ExactMatrix, IntMatrix};
use crate::rational::rat;

/// Display names for the three colors.
pub const COLOR_NAMES: [&str; 3] = ["s", "w", "z"];

/// Left graph: per color one link at vertex 1 plus one N-loop and one D-loop.
pub fn left_graph() -> ColoredGraph {
    ColoredGraph::from_edges(
        4,
        3,
        &[
            (0, Edge::link(0, 1)),
            (0, Edge::DLoop(2)),
            (0, Edge::NLoop(3)),
            (1, Edge::link(0, 2)),
            (1, Edge::NLoop(1)),
            (1, Edge::DLoop(3)),
            (2, Edge::link(0, 3)),
            (2, Edge::DLoop(1)),
            (2, Edge::NLoop(2)),
        ],
    )
    .expect("reference graph is valid")
}

/// Right graph: the same links with every loop sign flipped. It is the
/// conjugate of the left graph by the transplantation matrix, and is not
/// isomorphic to it.
pub fn right_graph() -> ColoredGraph {
    ColoredGraph::from_edges(
        4,
        3,
        &[
            (0, Edge::link(0, 1)),
            (0, Edge::NLoop(2)),
            (0, Edge::DLoop(3)),
            (1, Edge::link(0, 2)),
            (1, Edge::DLoop(1)),
            (1, Edge::NLoop(3)),
            (2, Edge::link(0, 3)),
            (2, Edge::NLoop(1)),
            (2, Edge::DLoop(2)),
        ],
    )
    .expect("reference graph is valid")
}

/// The invertible transplantation matrix carrying the left graph's adjacency
/// tuple onto the right graph's: `A_left T = T A_right` for every color.
/// Satisfies `T T^t = 3 I` (so `det(T)^2 = 81`; the sign works out to -9).
pub fn transplantation_matrix() -> ExactMatrix {
    IntMatrix::from_rows(vec![
        vec![0, 1, 1, 1],
        vec![1, 0, 1, -1],
        vec![1, -1, 0, 1],
        vec![1, 1, -1, 0],
    ])
    .to_rational()
}

/// Expected adjacency matrices of the left graph, one per color.
pub const ADJACENCY: [[[i64; 4]; 4]; 3] = [
    [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
    [[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1]],
    [[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]],
];

/// Expected vertex-colored line graph of the left graph, one 6x6 matrix per
/// color. Line vertices are the edges of the loop-stripped graph, grouped by
/// color: (link 1-2, N-loop 4), (link 1-3, N-loop 2), (link 1-4, N-loop 3).
pub const VC_ADJACENCY: [[[i64; 6]; 6]; 3] = [
    [
        [0, 0, 1, 1, 1, 0],
        [0, 0, 0, 0, 2, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
    ],
    [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 1, 1],
        [2, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
    ],
    [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [1, 1, 1, 0, 0, 0],
        [0, 0, 2, 0, 0, 0],
    ],
];

/// Color pairs of the edge-colored line graph, as index pairs into
/// [`COLOR_NAMES`], in lexicographic order.
pub const EC_COLOR_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Expected edge-colored line graph of the left graph, one 6x6 matrix per
/// color pair in [`EC_COLOR_PAIRS`] order.
pub const EC_ADJACENCY: [[[i64; 6]; 6]; 3] = [
    // {s, w}
    [
        [0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [2, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
    ],
    // {s, z}
    [
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 2, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
    ],
    // {w, z}
    [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 2, 0, 0, 0],
    ],
];

/// Expected line-graph transplantation matrix for the pair: block diagonal
/// with one 2x2 block per color.
pub const LINE_TRANSPLANTATION: [[i64; 6]; 6] = [
    [1, 1, 0, 0, 0, 0],
    [2, -1, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 2, -1, 0, 0],
    [0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 2, -1],
];

pub fn vc_golden() -> Vec<IntMatrix> {
    VC_ADJACENCY.iter().map(int_matrix_6).collect()
}

pub fn ec_golden() -> Vec<IntMatrix> {
    EC_ADJACENCY.iter().map(int_matrix_6).collect()
}

pub fn adjacency_golden() -> Vec<IntMatrix> {
    ADJACENCY
        .iter()
        .map(|m| IntMatrix::from_fn(4, 4, |r, c| m[r][c]))
        .collect()
}

pub fn line_transplantation_golden() -> ExactMatrix {
    ExactMatrix::from_fn(6, 6, |r, c| rat(LINE_TRANSPLANTATION[r][c]))
}

fn int_matrix_6(m: &[[i64; 6]; 6]) -> IntMatrix {
    IntMatrix::from_fn(6, 6, |r, c| m[r][c])
}
