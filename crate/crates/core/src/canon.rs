//! Isomorphism testing and canonical forms for colored graphs.
//!
//! Both routines are brute force over vertex permutations with cheap pruning,
//! which is exact and fast enough at the sizes this crate targets (n <= 12,
//! and typically n <= 8). Canonical keys are byte strings: equal keys exactly
//! when the graphs are isomorphic.

use std::fmt;

use crate::graph::ColoredGraph;
use crate::matrix::IntMatrix;

/// A bijection on vertices; `apply(v)` is the new label of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a bijection on 0..{expected}")]
pub struct InvalidPermutation {
    pub expected: usize,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, InvalidPermutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &w in &images {
            if w >= n || seen[w] {
                return Err(InvalidPermutation { expected: n });
            }
            seen[w] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Permutation(inv)
    }

    /// Permutation matrix with `P[v, apply(v)] = 1`.
    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.len(), self.len());
        for v in 0..self.len() {
            m[(v, self.apply(v))] = 1;
        }
        m
    }
}

/// The graph with every vertex `v` renamed to `perm.apply(v)`.
pub fn relabel(g: &ColoredGraph, perm: &Permutation) -> ColoredGraph {
    assert_eq!(perm.len(), g.vertex_count());
    let edges: Vec<_> = g
        .edges()
        .into_iter()
        .map(|(c, e)| {
            (
                c,
                match e {
                    crate::graph::Edge::Link(u, v) => {
                        crate::graph::Edge::link(perm.apply(u), perm.apply(v))
                    }
                    crate::graph::Edge::NLoop(v) => crate::graph::Edge::NLoop(perm.apply(v)),
                    crate::graph::Edge::DLoop(v) => crate::graph::Edge::DLoop(perm.apply(v)),
                },
            )
        })
        .collect();
    ColoredGraph::from_edges(g.vertex_count(), g.color_count(), &edges)
        .expect("relabeling preserves validity")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graphs disagree in size ({0} vs {1} vertices) or colors ({2} vs {3})")]
pub struct GraphShapeMismatch(pub usize, pub usize, pub usize, pub usize);

/// Per-vertex pruning signature: the edge kind of each color.
fn kind_signature(g: &ColoredGraph, v: usize) -> Vec<u8> {
    (0..g.color_count())
        .map(|c| match g.edge_at(c, v) {
            crate::graph::Edge::NLoop(_) => 0,
            crate::graph::Edge::DLoop(_) => 1,
            crate::graph::Edge::Link(..) => 2,
        })
        .collect()
}

/// Searches for a color-preserving isomorphism by backtracking over vertex
/// assignments. Returns a permutation `p` with `relabel(g, p) == h`.
pub fn isomorphism(
    g: &ColoredGraph,
    h: &ColoredGraph,
) -> Result<Option<Permutation>, GraphShapeMismatch> {
    if g.vertex_count() != h.vertex_count() || g.color_count() != h.color_count() {
        return Err(GraphShapeMismatch(
            g.vertex_count(),
            h.vertex_count(),
            g.color_count(),
            h.color_count(),
        ));
    }
    let n = g.vertex_count();
    let sig_g: Vec<Vec<u8>> = (0..n).map(|v| kind_signature(g, v)).collect();
    let sig_h: Vec<Vec<u8>> = (0..n).map(|v| kind_signature(h, v)).collect();

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(
        g: &ColoredGraph,
        h: &ColoredGraph,
        image: &[usize],
        used: &[bool],
        v: usize,
        w: usize,
    ) -> bool {
        for c in 0..g.color_count() {
            if let crate::graph::Edge::Link(a, b) = g.edge_at(c, v) {
                let other = if a == v { b } else { a };
                let crate::graph::Edge::Link(x, y) = h.edge_at(c, w) else {
                    return false;
                };
                let h_other = if x == w { y } else { x };
                if image[other] != usize::MAX {
                    if image[other] != h_other {
                        return false;
                    }
                } else if used[h_other] {
                    // h_other is already taken by a different vertex.
                    return false;
                }
            }
        }
        true
    }

    fn backtrack(
        g: &ColoredGraph,
        h: &ColoredGraph,
        sig_g: &[Vec<u8>],
        sig_h: &[Vec<u8>],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for w in 0..g.vertex_count() {
            if used[w] || sig_g[v] != sig_h[w] {
                continue;
            }
            if !consistent(g, h, image, used, v, w) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if backtrack(g, h, sig_g, sig_h, image, used, v + 1) {
                return true;
            }
            image[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    if backtrack(g, h, &sig_g, &sig_h, &mut image, &mut used, 0) {
        Ok(Some(
            Permutation::new(image).expect("backtracking builds a bijection"),
        ))
    } else {
        Ok(None)
    }
}

/// Isomorphism-invariant key: the lexicographically smallest relabeled
/// serialization over all vertex permutations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Encoding of the graph under its own labeling (the canonical key when the
/// graph is a class representative).
pub fn identity_encoding(g: &ColoredGraph) -> Vec<u8> {
    let n = g.vertex_count();
    let identity: Vec<usize> = (0..n).collect();
    let mut buf = vec![0u8; g.color_count() * n];
    encode_under(g, &identity, &mut buf);
    buf
}

/// Byte encoding of a graph relabeled by `images`: per color, per new vertex
/// label, an edge code (0 N-loop, 1 D-loop, 2+w link to new label w).
fn encode_under(g: &ColoredGraph, images: &[usize], buf: &mut [u8]) {
    let n = g.vertex_count();
    for c in 0..g.color_count() {
        for v in 0..n {
            let code = match g.edge_at(c, v) {
                crate::graph::Edge::NLoop(_) => 0,
                crate::graph::Edge::DLoop(_) => 1,
                crate::graph::Edge::Link(a, b) => {
                    let other = if a == v { b } else { a };
                    2 + images[other] as u8
                }
            };
            buf[c * n + images[v]] = code;
        }
    }
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    // Heap's algorithm, iterative.
    let mut items: Vec<usize> = (0..n).collect();
    let mut stack = vec![0usize; n];
    f(&items);
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(stack[i], i);
            }
            f(&items);
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
}

pub fn canonical_form(g: &ColoredGraph) -> CanonicalKey {
    assert!(g.vertex_count() <= 254, "byte encoding supports n <= 254");
    let n = g.vertex_count();
    let k = g.color_count();
    let mut best: Option<Vec<u8>> = None;
    let mut buf = vec![0u8; k * n];
    for_each_permutation(n, |images| {
        encode_under(g, images, &mut buf);
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    });
    CanonicalKey(best.expect("at least the identity permutation"))
}

/// True when the identity labeling already realizes the canonical key, i.e.
/// the graph is its own class representative. Adjacent transpositions act as
/// a cheap reject before the full scan.
pub fn is_canonical(g: &ColoredGraph) -> bool {
    let n = g.vertex_count();
    let k = g.color_count();
    let mut own = vec![0u8; k * n];
    let identity: Vec<usize> = (0..n).collect();
    encode_under(g, &identity, &mut own);

    let mut buf = vec![0u8; k * n];
    for i in 0..n.saturating_sub(1) {
        let mut images = identity.clone();
        images.swap(i, i + 1);
        encode_under(g, &images, &mut buf);
        if buf < own {
            return false;
        }
    }
    let mut minimal = true;
    for_each_permutation(n, |images| {
        if minimal {
            encode_under(g, images, &mut buf);
            if buf < own {
                minimal = false;
            }
        }
    });
    minimal
}
