//! Edge-colored loop-signed graphs and their signed permutation encoding.
//!
//! Every vertex carries exactly one edge of each color: a link to another
//! vertex, an N-loop, or a D-loop. The color-`c` adjacency matrix has a 1 for
//! each link, +1 on the diagonal for an N-loop, -1 for a D-loop; it is a
//! symmetric involution with at most one nonzero per row.
//!
//! Vertices and colors are 0-based throughout the crate; the file formats and
//! human-readable reports are 1-based.

use std::fmt;

use rand::RngExt;

use crate::matrix::{ExactMatrix, IntMatrix, LinalgError};

/// One edge of one color. Links are unordered; constructors normalize the
/// endpoint order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    Link(usize, usize),
    NLoop(usize),
    DLoop(usize),
}

impl Edge {
    pub fn link(u: usize, v: usize) -> Edge {
        Edge::Link(u.min(v), u.max(v))
    }

    pub fn vertices(&self) -> (usize, usize) {
        match *self {
            Edge::Link(u, v) => (u, v),
            Edge::NLoop(v) | Edge::DLoop(v) => (v, v),
        }
    }
}

/// Per-(color, vertex) view of the unique incident edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Incidence {
    Link(usize),
    NLoop,
    DLoop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ColorOutOfRange { color: usize },
    VertexOutOfRange { color: usize, vertex: usize },
    SelfLink { color: usize, vertex: usize },
    DuplicateEdge { color: usize, vertex: usize },
    MissingEdge { color: usize, vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::ColorOutOfRange { color } => {
                write!(f, "color {} out of range", color + 1)
            }
            Violation::VertexOutOfRange { color, vertex } => {
                write!(
                    f,
                    "vertex {} out of range in a color-{} edge",
                    vertex + 1,
                    color + 1
                )
            }
            Violation::SelfLink { color, vertex } => {
                write!(
                    f,
                    "color-{} link from vertex {} to itself",
                    color + 1,
                    vertex + 1
                )
            }
            Violation::DuplicateEdge { color, vertex } => {
                write!(
                    f,
                    "vertex {} has more than one color-{} edge",
                    vertex + 1,
                    color + 1
                )
            }
            Violation::MissingEdge { color, vertex } => {
                write!(f, "vertex {} lacks a color-{} edge", vertex + 1, color + 1)
            }
        }
    }
}

/// Outcome of validating an edge list against the one-edge-per-vertex-per-color
/// encoding. Empty means valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConjugateError {
    #[error("conjugating matrix must be {0}x{0}")]
    ShapeMismatch(usize),
    #[error("conjugating matrix is not invertible")]
    NotInvertible,
    #[error("conjugated color-{} matrix is not a signed permutation matrix", color + 1)]
    NotASignedPermutation { color: usize },
}

/// A validated edge-colored loop-signed graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    n: usize,
    /// `incident[c][v]` is the unique color-`c` edge at vertex `v`.
    incident: Vec<Vec<Incidence>>,
}

impl ColoredGraph {
    /// Validates an edge list without building the graph: every vertex needs
    /// exactly one edge of each color.
    pub fn validate_edges(n: usize, k: usize, edges: &[(usize, Edge)]) -> ValidationReport {
        let mut violations = Vec::new();
        let mut slots: Vec<Vec<Option<Incidence>>> = vec![vec![None; n]; k];
        for &(color, edge) in edges {
            if color >= k {
                violations.push(Violation::ColorOutOfRange { color });
                continue;
            }
            let mut place = |vertex: usize, inc: Incidence, violations: &mut Vec<Violation>| {
                if vertex >= n {
                    violations.push(Violation::VertexOutOfRange { color, vertex });
                } else if slots[color][vertex].is_some() {
                    violations.push(Violation::DuplicateEdge { color, vertex });
                } else {
                    slots[color][vertex] = Some(inc);
                }
            };
            match edge {
                Edge::Link(u, v) => {
                    if u == v {
                        violations.push(Violation::SelfLink { color, vertex: u });
                    } else {
                        place(u, Incidence::Link(v), &mut violations);
                        place(v, Incidence::Link(u), &mut violations);
                    }
                }
                Edge::NLoop(v) => place(v, Incidence::NLoop, &mut violations),
                Edge::DLoop(v) => place(v, Incidence::DLoop, &mut violations),
            }
        }
        for (color, row) in slots.iter().enumerate() {
            for (vertex, slot) in row.iter().enumerate() {
                if slot.is_none() {
                    violations.push(Violation::MissingEdge { color, vertex });
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn from_edges(
        n: usize,
        k: usize,
        edges: &[(usize, Edge)],
    ) -> Result<ColoredGraph, ValidationReport> {
        let report = Self::validate_edges(n, k, edges);
        if !report.is_ok() {
            return Err(report);
        }
        let mut incident = vec![vec![Incidence::NLoop; n]; k];
        for &(color, edge) in edges {
            match edge {
                Edge::Link(u, v) => {
                    incident[color][u] = Incidence::Link(v);
                    incident[color][v] = Incidence::Link(u);
                }
                Edge::NLoop(v) => incident[color][v] = Incidence::NLoop,
                Edge::DLoop(v) => incident[color][v] = Incidence::DLoop,
            }
        }
        Ok(ColoredGraph { n, incident })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn color_count(&self) -> usize {
        self.incident.len()
    }

    /// The unique color-`c` edge at `v`, with link endpoints normalized.
    pub fn edge_at(&self, color: usize, vertex: usize) -> Edge {
        match self.incident[color][vertex] {
            Incidence::Link(other) => Edge::link(vertex, other),
            Incidence::NLoop => Edge::NLoop(vertex),
            Incidence::DLoop => Edge::DLoop(vertex),
        }
    }

    /// Edges of one color: links sorted by endpoints, then N-loops, then
    /// D-loops by vertex.
    pub fn color_edges(&self, color: usize) -> Vec<Edge> {
        let mut links = Vec::new();
        let mut nloops = Vec::new();
        let mut dloops = Vec::new();
        for v in 0..self.n {
            match self.incident[color][v] {
                Incidence::Link(other) if v < other => links.push(Edge::Link(v, other)),
                Incidence::Link(_) => {}
                Incidence::NLoop => nloops.push(Edge::NLoop(v)),
                Incidence::DLoop => dloops.push(Edge::DLoop(v)),
            }
        }
        links.into_iter().chain(nloops).chain(dloops).collect()
    }

    /// All edges as `(color, edge)` pairs, grouped by color.
    pub fn edges(&self) -> Vec<(usize, Edge)> {
        (0..self.color_count())
            .flat_map(|c| self.color_edges(c).into_iter().map(move |e| (c, e)))
            .collect()
    }

    /// Signed permutation adjacency matrix of one color. Panics if the color
    /// index is out of range.
    pub fn adjacency(&self, color: usize) -> IntMatrix {
        assert!(color < self.color_count(), "color index out of range");
        let mut m = IntMatrix::zeros(self.n, self.n);
        for v in 0..self.n {
            match self.incident[color][v] {
                Incidence::Link(other) => m[(v, other)] = 1,
                Incidence::NLoop => m[(v, v)] = 1,
                Incidence::DLoop => m[(v, v)] = -1,
            }
        }
        m
    }

    pub fn adjacencies(&self) -> Vec<IntMatrix> {
        (0..self.color_count()).map(|c| self.adjacency(c)).collect()
    }

    pub fn signed_perm(&self, color: usize) -> SignedPermutation {
        assert!(color < self.color_count(), "color index out of range");
        let mut target = Vec::with_capacity(self.n);
        let mut sign = Vec::with_capacity(self.n);
        for v in 0..self.n {
            match self.incident[color][v] {
                Incidence::Link(other) => {
                    target.push(other);
                    sign.push(1);
                }
                Incidence::NLoop => {
                    target.push(v);
                    sign.push(1);
                }
                Incidence::DLoop => {
                    target.push(v);
                    sign.push(-1);
                }
            }
        }
        SignedPermutation { target, sign }
    }

    pub fn signed_perms(&self) -> Vec<SignedPermutation> {
        (0..self.color_count())
            .map(|c| self.signed_perm(c))
            .collect()
    }

    /// Per-color adjacency traces: `#N-loops - #D-loops`.
    pub fn trace_vector(&self) -> Vec<i64> {
        self.incident
            .iter()
            .map(|row| {
                row.iter()
                    .map(|inc| match inc {
                        Incidence::NLoop => 1,
                        Incidence::DLoop => -1,
                        Incidence::Link(_) => 0,
                    })
                    .sum()
            })
            .collect()
    }

    /// The graph whose color-`c` adjacency is `T^-1 A_c T`, provided every
    /// conjugated matrix stays a valid signed permutation matrix.
    pub fn conjugate(&self, t: &ExactMatrix) -> Result<ColoredGraph, ConjugateError> {
        if t.rows() != self.n || t.cols() != self.n {
            return Err(ConjugateError::ShapeMismatch(self.n));
        }
        let inv = match t.inverse() {
            Ok(inv) => inv,
            Err(LinalgError::Singular) => return Err(ConjugateError::NotInvertible),
            Err(_) => return Err(ConjugateError::ShapeMismatch(self.n)),
        };
        let mut edges = Vec::new();
        for color in 0..self.color_count() {
            let conj = inv.mul(&self.adjacency(color).to_rational()).mul(t);
            let perm = SignedPermutation::try_from_matrix(&conj)
                .ok_or(ConjugateError::NotASignedPermutation { color })?;
            edges.extend(perm.edges().into_iter().map(|e| (color, e)));
        }
        Ok(ColoredGraph::from_edges(self.n, self.color_count(), &edges)
            .expect("signed permutations decode to a valid graph"))
    }

    /// Uniform-ish random valid graph; each color draws an independent
    /// involutive structure. Used by the randomized property suites.
    ///
    /// Panics if no edge kind can cover a vertex (no loops allowed and `n`
    /// odd).
    pub fn random(rng: &mut impl RngExt, n: usize, k: usize, allow_n: bool, allow_d: bool) -> Self {
        assert!(n > 0 && k > 0);
        assert!(
            allow_n || allow_d || n.is_multiple_of(2),
            "odd n needs loops"
        );
        let loops = usize::from(allow_n) + usize::from(allow_d);
        let mut edges = Vec::new();
        for color in 0..k {
            let mut assigned = vec![false; n];
            for v in 0..n {
                if assigned[v] {
                    continue;
                }
                let later: Vec<usize> = (v + 1..n).filter(|&u| !assigned[u]).collect();
                let choice = rng.random_range(0..loops + later.len());
                let edge = if choice < loops {
                    match (allow_n, choice) {
                        (true, 0) => Edge::NLoop(v),
                        _ => Edge::DLoop(v),
                    }
                } else {
                    let u = later[choice - loops];
                    assigned[u] = true;
                    Edge::Link(v, u)
                };
                assigned[v] = true;
                edges.push((color, edge));
            }
        }
        ColoredGraph::from_edges(n, k, &edges).expect("random structure is valid")
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredGraph(n={}", self.n)?;
        for c in 0..self.color_count() {
            write!(f, "; {c}:")?;
            for e in self.color_edges(c) {
                match e {
                    Edge::Link(u, v) => write!(f, " {}-{}", u + 1, v + 1)?,
                    Edge::NLoop(v) => write!(f, " N{}", v + 1)?,
                    Edge::DLoop(v) => write!(f, " D{}", v + 1)?,
                }
            }
        }
        write!(f, ")")
    }
}

/// Compact form of a signed permutation matrix: row `v` has its single
/// nonzero `sign[v]` in column `target[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    target: Vec<usize>,
    sign: Vec<i64>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            target: (0..n).collect(),
            sign: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    /// Accepts exactly the symmetric involutions with entries in `{-1,0,1}`
    /// and signs only on the diagonal.
    pub fn try_from_matrix(m: &ExactMatrix) -> Option<Self> {
        use num_traits::ToPrimitive;
        if !m.is_square() {
            return None;
        }
        let n = m.rows();
        let mut target = vec![usize::MAX; n];
        let mut sign = vec![0i64; n];
        for r in 0..n {
            for c in 0..n {
                let e = &m[(r, c)];
                if !e.is_integer() {
                    return None;
                }
                let val = e.numer().to_i64()?;
                match val {
                    0 => continue,
                    1 => {}
                    -1 if r == c => {}
                    _ => return None,
                }
                if target[r] != usize::MAX {
                    return None; // second nonzero in a row
                }
                target[r] = c;
                sign[r] = val;
            }
            if target[r] == usize::MAX {
                return None; // zero row
            }
        }
        let perm = SignedPermutation { target, sign };
        if perm.is_involution() {
            Some(perm)
        } else {
            None
        }
    }

    fn is_involution(&self) -> bool {
        (0..self.len()).all(|v| {
            let w = self.target[v];
            self.target[w] == v && self.sign[w] == self.sign[v] && (w == v || self.sign[v] == 1)
        })
    }

    /// Decodes back to the edge set of one color.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for v in 0..self.len() {
            let w = self.target[v];
            if w == v {
                out.push(if self.sign[v] == 1 {
                    Edge::NLoop(v)
                } else {
                    Edge::DLoop(v)
                });
            } else if v < w {
                out.push(Edge::Link(v, w));
            }
        }
        out
    }

    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.len(), other.len());
        let mut target = Vec::with_capacity(self.len());
        let mut sign = Vec::with_capacity(self.len());
        for v in 0..self.len() {
            let mid = self.target[v];
            target.push(other.target[mid]);
            sign.push(self.sign[v] * other.sign[mid]);
        }
        SignedPermutation { target, sign }
    }

    pub fn trace(&self) -> i64 {
        (0..self.len())
            .filter(|&v| self.target[v] == v)
            .map(|v| self.sign[v])
            .sum()
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.len(), self.len());
        for v in 0..self.len() {
            m[(v, self.target[v])] = self.sign[v];
        }
        m
    }
}

/// Trace of a word product of signed permutations, without materializing
/// matrices. Agrees with [`crate::matrix::word_trace`] on the corresponding
/// adjacency matrices.
pub fn signed_perm_word_trace(perms: &[SignedPermutation], word: &[usize]) -> i64 {
    let n = perms.first().map_or(0, SignedPermutation::len);
    let Some((&first, rest)) = word.split_first() else {
        return n as i64;
    };
    let mut acc = perms[first].clone();
    for &c in rest {
        acc = acc.compose(&perms[c]);
    }
    acc.trace()
}
