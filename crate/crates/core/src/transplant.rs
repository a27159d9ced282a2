//! Transplantability: intertwiner spaces, the decision procedure, trace
//! certificates, and block-diagonal line-graph transplantation matrices.
//!
//! Two graphs with adjacency tuples `(A_c)` and `(B_c)` are transplantable
//! when a single invertible `T` satisfies `A_c T = T B_c` for every color.
//! The solution space of that linear system is computed exactly; whether it
//! contains an invertible element is decided through dimensions alone.
//! Because every `A_c` is orthogonal, the generated matrix group preserves
//! the standard inner product, so the two representations are semisimple and
//!
//! ```text
//! dim Hom(g,g) + dim Hom(h,h) - 2 dim Hom(g,h) = sum_i d_i (m_i - m'_i)^2
//! ```
//!
//! is zero exactly when the multiplicities agree, i.e. when an invertible
//! intertwiner exists. The verdict is deterministic; randomness only enters
//! when materializing a witness, which is then verified exactly.

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use crate::canon::{identity_encoding, GraphShapeMismatch};
use crate::graph::{signed_perm_word_trace, ColoredGraph};
use crate::linegraph::{build_ec, build_vc, EdgeIndexing};
use crate::matrix::ExactMatrix;
use crate::rational::Rational;
use crate::word;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Cheap identity hash of a labeled graph, recorded in certificates so they
/// can be matched back to their inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphFingerprint(pub u64);

impl GraphFingerprint {
    pub fn of(g: &ColoredGraph) -> Self {
        // FNV-1a.
        let mut h = 0xcbf29ce484222325u64;
        let mut eat = |b: u8| {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x100000001b3);
        };
        eat(g.vertex_count() as u8);
        eat(g.color_count() as u8);
        for b in identity_encoding(g) {
            eat(b);
        }
        GraphFingerprint(h)
    }
}

impl std::fmt::Display for GraphFingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransplantError {
    #[error(transparent)]
    Shape(#[from] GraphShapeMismatch),
    #[error("no invertible intertwiner found after {trials} trials (basis dimension {dim})")]
    WitnessSearchExhausted { dim: usize, trials: usize },
    #[error("matrix does not intertwine color {}", color + 1)]
    IntertwiningViolated { color: usize },
    #[error("inconsistent line transplantation entry at ({row}, {col})")]
    ConsistencyViolated { row: usize, col: usize },
    #[error("line graph sizes are incompatible ({0} vs {1})")]
    LineSizeMismatch(usize, usize),
    #[error("freshly built certificate failed verification")]
    VerificationFailed,
}

/// Basis of the intertwiner space `{T : A_c T = T B_c for all c}`, scaled to
/// primitive integer matrices.
#[derive(Debug, Clone)]
pub struct IntertwinerBasis {
    pub source: GraphFingerprint,
    pub target: GraphFingerprint,
    pub basis: Vec<ExactMatrix>,
}

impl IntertwinerBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The three nullspace dimensions entering the equivalence criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomDims {
    pub left: usize,
    pub right: usize,
    pub cross: usize,
}

impl HomDims {
    /// `dim Hom(g,g) + dim Hom(h,h) - 2 dim Hom(g,h)`; zero exactly for
    /// transplantable pairs, positive otherwise.
    pub fn gap(&self) -> i64 {
        self.left as i64 + self.right as i64 - 2 * self.cross as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Transplantable,
    NotTransplantable,
}

/// Why a pair was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// A word whose product traces differ; words of length 1 are the plain
    /// per-color trace comparison.
    TraceMismatch {
        word: Vec<usize>,
        left: i64,
        right: i64,
    },
    /// The dimension criterion came out positive.
    DimensionGap { dims: HomDims },
}

/// Decision record, optionally extended with verified witnesses by
/// [`certify`].
#[derive(Debug, Clone)]
pub struct TransplantCertificate {
    pub left: GraphFingerprint,
    pub right: GraphFingerprint,
    pub verdict: Verdict,
    /// Present unless a trace prefilter short-circuited the decision.
    pub dims: Option<HomDims>,
    pub refutation: Option<Refutation>,
    /// Per-color line block sizes `tr(I + A_c)/2`, taken from the left graph.
    pub block_sizes: Vec<usize>,
    /// Invertible intertwiner of the graphs themselves.
    pub witness: Option<ExactMatrix>,
    /// Block-diagonal intertwiner of both line-graph families.
    pub line_witness: Option<ExactMatrix>,
}

impl TransplantCertificate {
    pub fn is_transplantable(&self) -> bool {
        self.verdict == Verdict::Transplantable
    }
}

fn check_shapes(g: &ColoredGraph, h: &ColoredGraph) -> Result<(), GraphShapeMismatch> {
    if g.vertex_count() != h.vertex_count() || g.color_count() != h.color_count() {
        return Err(GraphShapeMismatch(
            g.vertex_count(),
            h.vertex_count(),
            g.color_count(),
            h.color_count(),
        ));
    }
    Ok(())
}

/// Stacked linear system whose kernel is the intertwiner space, one block of
/// `n^2` rows per color, unknowns `vec(T)` in row-major order.
fn intertwiner_system(g: &ColoredGraph, h: &ColoredGraph) -> ExactMatrix {
    let n = g.vertex_count();
    let k = g.color_count();
    let mut sys = ExactMatrix::zeros(k * n * n, n * n);
    for c in 0..k {
        let a = g.adjacency(c);
        let b = h.adjacency(c);
        for i in 0..n {
            for j in 0..n {
                let row = c * n * n + i * n + j;
                for m in 0..n {
                    if a[(i, m)] != 0 {
                        let cur = sys[(row, m * n + j)].clone();
                        sys[(row, m * n + j)] = cur + crate::rational::rat(a[(i, m)]);
                    }
                    if b[(m, j)] != 0 {
                        let cur = sys[(row, i * n + m)].clone();
                        sys[(row, i * n + m)] = cur - crate::rational::rat(b[(m, j)]);
                    }
                }
            }
        }
    }
    sys
}

/// Scales a rational matrix to integer entries with content 1 and a positive
/// leading entry.
fn primitive_scale(m: &ExactMatrix) -> ExactMatrix {
    let mut denom_lcm = BigInt::one();
    for e in m.entries() {
        denom_lcm = denom_lcm.lcm(e.denom());
    }
    let scaled = m.scale(&Rational::from_integer(denom_lcm));
    let mut content = BigInt::zero();
    for e in scaled.entries() {
        content = content.gcd(e.numer());
    }
    if content.is_zero() {
        return scaled;
    }
    let out = scaled.scale(&Rational::new(BigInt::one(), content));
    let flip = out
        .entries()
        .find(|e| !e.is_zero())
        .is_some_and(|first| first.numer().is_negative());
    if flip {
        out.neg()
    } else {
        out
    }
}

/// Exact basis of the intertwiner space, reshaped to `n x n` matrices.
pub fn intertwiner_basis(
    g: &ColoredGraph,
    h: &ColoredGraph,
) -> Result<IntertwinerBasis, GraphShapeMismatch> {
    check_shapes(g, h)?;
    let n = g.vertex_count();
    let basis: Vec<ExactMatrix> = intertwiner_system(g, h)
        .nullspace_basis()
        .iter()
        .map(|v| {
            primitive_scale(&ExactMatrix::from_fn(n, n, |r, c| {
                v[(r * n + c, 0)].clone()
            }))
        })
        .collect();
    debug_assert!(basis.iter().all(|b| {
        (0..g.color_count())
            .all(|c| g.adjacency(c).to_rational().mul(b) == b.mul(&h.adjacency(c).to_rational()))
    }));
    Ok(IntertwinerBasis {
        source: GraphFingerprint::of(g),
        target: GraphFingerprint::of(h),
        basis,
    })
}

/// Dimension of the intertwiner space without materializing a basis.
pub fn intertwiner_dimension(
    g: &ColoredGraph,
    h: &ColoredGraph,
) -> Result<usize, GraphShapeMismatch> {
    check_shapes(g, h)?;
    let n = g.vertex_count();
    Ok(n * n - intertwiner_system(g, h).rank())
}

pub fn hom_dims(g: &ColoredGraph, h: &ColoredGraph) -> Result<HomDims, GraphShapeMismatch> {
    Ok(HomDims {
        left: intertwiner_dimension(g, g)?,
        right: intertwiner_dimension(h, h)?,
        cross: intertwiner_dimension(g, h)?,
    })
}

/// Word lengths covered by the trace prefilter in [`decide_transplantable`].
const PREFILTER_MAX_LEN: usize = 5;

pub fn block_sizes(g: &ColoredGraph) -> Vec<usize> {
    EdgeIndexing::new(g).color_counts().to_vec()
}

/// Decides transplantability. Per-color traces and short word traces act as
/// fast refutations; otherwise the exact dimension criterion settles the
/// verdict. The result never depends on randomness.
pub fn decide_transplantable(
    g: &ColoredGraph,
    h: &ColoredGraph,
) -> Result<TransplantCertificate, GraphShapeMismatch> {
    check_shapes(g, h)?;
    let mut cert = TransplantCertificate {
        left: GraphFingerprint::of(g),
        right: GraphFingerprint::of(h),
        verdict: Verdict::NotTransplantable,
        dims: None,
        refutation: None,
        block_sizes: block_sizes(g),
        witness: None,
        line_witness: None,
    };

    let perms_g = g.signed_perms();
    let perms_h = h.signed_perms();
    let k = g.color_count();
    for c in 0..k {
        let (tg, th) = (perms_g[c].trace(), perms_h[c].trace());
        if tg != th {
            cert.refutation = Some(Refutation::TraceMismatch {
                word: vec![c],
                left: tg,
                right: th,
            });
            return Ok(cert);
        }
    }
    for w in word::square_free_classes_up_to(k, 2, PREFILTER_MAX_LEN, true) {
        let (tg, th) = (
            signed_perm_word_trace(&perms_g, &w),
            signed_perm_word_trace(&perms_h, &w),
        );
        if tg != th {
            cert.refutation = Some(Refutation::TraceMismatch {
                word: w,
                left: tg,
                right: th,
            });
            return Ok(cert);
        }
    }

    let dims = hom_dims(g, h)?;
    cert.dims = Some(dims);
    if dims.gap() == 0 {
        cert.verdict = Verdict::Transplantable;
    } else {
        cert.refutation = Some(Refutation::DimensionGap { dims });
    }
    Ok(cert)
}

fn combine(basis: &[ExactMatrix], coeffs: &[i64]) -> ExactMatrix {
    let mut acc = ExactMatrix::zeros(basis[0].rows(), basis[0].cols());
    for (b, &a) in basis.iter().zip(coeffs) {
        if a != 0 {
            acc = acc.add(&b.scale(&crate::rational::rat(a)));
        }
    }
    acc
}

pub const DEFAULT_WITNESS_TRIALS: usize = 64;

/// Picks an invertible element of the intertwiner space: the all-ones
/// combination first, then random integer coefficients drawn from `[-B, B]`
/// with `B` doubling each trial. When an invertible element exists the
/// singular combinations form a proper algebraic subset, so each trial fails
/// with probability at most `n/(2B+1)` and the search terminates almost
/// surely; the budget only bounds pathological inputs (where no invertible
/// intertwiner exists at all).
pub fn find_invertible_intertwiner(
    basis: &IntertwinerBasis,
    seed: u64,
) -> Result<ExactMatrix, TransplantError> {
    find_invertible_intertwiner_with_budget(basis, seed, DEFAULT_WITNESS_TRIALS)
}

pub fn find_invertible_intertwiner_with_budget(
    basis: &IntertwinerBasis,
    seed: u64,
    budget: usize,
) -> Result<ExactMatrix, TransplantError> {
    let dim = basis.dim();
    if dim == 0 {
        return Err(TransplantError::WitnessSearchExhausted { dim, trials: 0 });
    }
    let ones = vec![1i64; dim];
    let candidate = combine(&basis.basis, &ones);
    if !candidate
        .determinant()
        .expect("basis matrices are square")
        .is_zero()
    {
        return Ok(candidate);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut bound = 2i64;
    for _ in 0..budget {
        let coeffs: Vec<i64> = (0..dim).map(|_| rng.random_range(-bound..=bound)).collect();
        let candidate = combine(&basis.basis, &coeffs);
        if !candidate
            .determinant()
            .expect("basis matrices are square")
            .is_zero()
        {
            return Ok(candidate);
        }
        bound = (bound * 2).min(1 << 20);
    }
    Err(TransplantError::WitnessSearchExhausted {
        dim,
        trials: budget,
    })
}

/// Outcome of a bounded trace-certificate comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleCheck {
    Equal,
    Mismatch {
        word: Vec<usize>,
        left: i64,
        right: i64,
    },
}

/// Compares word traces over all cyclically square-free class representatives
/// of length at most `max_len`, plus all length-1 words. Arbitrary words
/// reduce to this set: adjacency matrices square to the identity, so adjacent
/// equal letters cancel cyclically. Returns the first mismatch in
/// length-then-lexicographic order.
pub fn cycle_equivalence_check(
    g: &ColoredGraph,
    h: &ColoredGraph,
    max_len: usize,
) -> Result<CycleCheck, GraphShapeMismatch> {
    check_shapes(g, h)?;
    let perms_g = g.signed_perms();
    let perms_h = h.signed_perms();
    let k = g.color_count();
    let compare = |w: Vec<usize>| -> Option<CycleCheck> {
        let (tg, th) = (
            signed_perm_word_trace(&perms_g, &w),
            signed_perm_word_trace(&perms_h, &w),
        );
        (tg != th).then_some(CycleCheck::Mismatch {
            word: w,
            left: tg,
            right: th,
        })
    };
    for c in 0..k {
        if let Some(m) = compare(vec![c]) {
            return Ok(m);
        }
    }
    for len in 2..=max_len {
        // Traces are rotation-invariant, and reversal-invariant because the
        // matrices are symmetric, so class representatives suffice.
        for w in word::square_free_classes(k, len, true) {
            if let Some(m) = compare(w) {
                return Ok(m);
            }
        }
    }
    Ok(CycleCheck::Equal)
}

/// Default cycle-check depth: the square of the vertex count.
pub fn default_cycle_depth(g: &ColoredGraph) -> usize {
    g.vertex_count() * g.vertex_count()
}

/// Builds the block-diagonal line-graph transplantation matrix from an
/// intertwiner `T` of the graphs. Rows index edges of the left loop-stripped
/// graph, columns edges of the right one; for same-colored `e` (ends `v`,
/// `v~`) and `f` (ends `w`, `w~`) the entry is `T[v,w] + T[v,w~]` when `f` is
/// a link and `T[v,w]` when `f` is an N-loop, independent of which end of `e`
/// is used. That independence is implied by the intertwining relations and is
/// asserted here.
pub fn build_line_transplantation(
    t: &ExactMatrix,
    g: &ColoredGraph,
    h: &ColoredGraph,
) -> Result<ExactMatrix, TransplantError> {
    check_shapes(g, h)?;
    let n = g.vertex_count();
    if t.rows() != n || t.cols() != n {
        return Err(TransplantError::LineSizeMismatch(t.rows(), n));
    }
    for c in 0..g.color_count() {
        let a = g.adjacency(c).to_rational();
        let b = h.adjacency(c).to_rational();
        if a.mul(t) != t.mul(&b) {
            return Err(TransplantError::IntertwiningViolated { color: c });
        }
    }
    let idx_g = EdgeIndexing::new(g);
    let idx_h = EdgeIndexing::new(h);
    if idx_g.color_counts() != idx_h.color_counts() {
        return Err(TransplantError::LineSizeMismatch(idx_g.len(), idx_h.len()));
    }
    let n_l = idx_g.len();
    let mut t_line = ExactMatrix::zeros(n_l, n_l);
    for e in 0..n_l {
        let lv = idx_g.vertex(e);
        for f in 0..n_l {
            let lw = idx_h.vertex(f);
            if lv.color != lw.color {
                continue;
            }
            let entry_via = |src: usize| -> Rational {
                if lw.is_loop() {
                    t[(src, lw.ends.0)].clone()
                } else {
                    t[(src, lw.ends.0)].clone() + &t[(src, lw.ends.1)]
                }
            };
            let entry = entry_via(lv.ends.0);
            if !lv.is_loop() && entry != entry_via(lv.ends.1) {
                return Err(TransplantError::ConsistencyViolated { row: e, col: f });
            }
            t_line[(e, f)] = entry;
        }
    }
    Ok(t_line)
}

/// True iff `t_line` is invertible and intertwines every vertex-colored and
/// every edge-colored line-graph adjacency matrix of the pair, exactly.
pub fn verify_line_certificate(
    t_line: &ExactMatrix,
    g: &ColoredGraph,
    h: &ColoredGraph,
) -> Result<bool, TransplantError> {
    check_shapes(g, h)?;
    let vc_g = build_vc(g);
    let vc_h = build_vc(h);
    if t_line.rows() != vc_g.indexing.len() || t_line.cols() != vc_h.indexing.len() {
        return Err(TransplantError::LineSizeMismatch(
            t_line.rows(),
            t_line.cols(),
        ));
    }
    if !t_line.is_square() {
        return Ok(false);
    }
    if t_line.determinant().expect("square").is_zero() {
        return Ok(false);
    }
    for (a, b) in vc_g.adjacency.iter().zip(&vc_h.adjacency) {
        if a.to_rational().mul(t_line) != t_line.mul(&b.to_rational()) {
            return Ok(false);
        }
    }
    let ec_g = build_ec(g);
    let ec_h = build_ec(h);
    for (a, b) in ec_g.adjacency.iter().zip(&ec_h.adjacency) {
        if a.to_rational().mul(t_line) != t_line.mul(&b.to_rational()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full pipeline: decide, and for transplantable pairs attach a verified
/// invertible witness and its line-graph transplantation matrix.
pub fn certify(
    g: &ColoredGraph,
    h: &ColoredGraph,
    seed: u64,
) -> Result<TransplantCertificate, TransplantError> {
    let mut cert = decide_transplantable(g, h).map_err(TransplantError::Shape)?;
    if !cert.is_transplantable() {
        return Ok(cert);
    }
    let basis = intertwiner_basis(g, h).map_err(TransplantError::Shape)?;
    let witness = find_invertible_intertwiner(&basis, seed)?;
    let line_witness = build_line_transplantation(&witness, g, h)?;
    if !verify_line_certificate(&line_witness, g, h)? {
        return Err(TransplantError::VerificationFailed);
    }
    cert.witness = Some(witness);
    cert.line_witness = Some(line_witness);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;
    use crate::graph::Edge;
    use crate::rational::rat;

    /// Membership of `m` in the rational span of `basis`.
    fn in_span(basis: &[ExactMatrix], m: &ExactMatrix) -> bool {
        let n2 = m.rows() * m.cols();
        let cols = basis.len();
        let stack = |with_m: bool| {
            ExactMatrix::from_fn(n2, cols + usize::from(with_m), |r, c| {
                let (i, j) = (r / m.cols(), r % m.cols());
                if c < cols {
                    basis[c][(i, j)].clone()
                } else {
                    m[(i, j)].clone()
                }
            })
        };
        stack(false).rank() == stack(true).rank()
    }

    /// Flips the color-z D-loop at vertex 2 into an N-loop; trace becomes 2.
    fn z_flipped() -> ColoredGraph {
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
                (2, Edge::NLoop(1)),
                (2, Edge::NLoop(2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn self_intertwiners_contain_identity() {
        let g = demo::left_graph();
        let basis = intertwiner_basis(&g, &g).unwrap();
        assert!(basis.dim() >= 1);
        assert!(in_span(&basis.basis, &ExactMatrix::identity(4)));
    }

    #[test]
    fn reference_pair_basis_contains_printed_matrix() {
        let g = demo::left_graph();
        let h = demo::right_graph();
        let basis = intertwiner_basis(&g, &h).unwrap();
        assert!(in_span(&basis.basis, &demo::transplantation_matrix()));
        // Basis elements really do intertwine.
        for b in &basis.basis {
            for c in 0..3 {
                let a = g.adjacency(c).to_rational();
                let bb = h.adjacency(c).to_rational();
                assert_eq!(a.mul(b), b.mul(&bb));
            }
        }
    }

    #[test]
    fn reference_pair_dims_are_equal() {
        let g = demo::left_graph();
        let h = demo::right_graph();
        let dims = hom_dims(&g, &h).unwrap();
        assert_eq!(dims.left, dims.right);
        assert_eq!(dims.left, dims.cross);
        assert_eq!(dims.gap(), 0);
    }

    #[test]
    fn decide_reference_pair() {
        let g = demo::left_graph();
        let h = demo::right_graph();
        let cert = decide_transplantable(&g, &h).unwrap();
        assert!(cert.is_transplantable());
        assert_eq!(cert.block_sizes, vec![2, 2, 2]);

        let self_cert = decide_transplantable(&g, &g).unwrap();
        assert!(self_cert.is_transplantable());
    }

    #[test]
    fn decide_refutes_flipped_loop_by_trace() {
        let g = demo::left_graph();
        let cert = decide_transplantable(&g, &z_flipped()).unwrap();
        assert!(!cert.is_transplantable());
        assert_eq!(
            cert.refutation,
            Some(Refutation::TraceMismatch {
                word: vec![2],
                left: 0,
                right: 2
            })
        );
    }

    #[test]
    fn witness_search_on_singleton_identity_basis() {
        // The reference graph's self-intertwiner space is one-dimensional,
        // so the primitive basis is exactly {I} and the witness is I itself.
        let g = demo::left_graph();
        let basis = intertwiner_basis(&g, &g).unwrap();
        assert_eq!(basis.dim(), 1);
        assert_eq!(basis.basis[0], ExactMatrix::identity(4));
        let t = find_invertible_intertwiner(&basis, 7).unwrap();
        assert_eq!(t, ExactMatrix::identity(4));
    }

    #[test]
    fn witness_for_reference_pair_is_the_printed_matrix() {
        // One-dimensional cross space whose primitive representative is the
        // printed transplantation matrix, so certification recovers it.
        let g = demo::left_graph();
        let h = demo::right_graph();
        let basis = intertwiner_basis(&g, &h).unwrap();
        assert_eq!(basis.dim(), 1);
        assert_eq!(basis.basis[0], demo::transplantation_matrix());
    }

    #[test]
    fn witness_search_fails_without_invertible_elements() {
        // Identity vs a sign-flipped loop: the cross space is nontrivial but
        // contains no invertible matrix.
        let g =
            ColoredGraph::from_edges(2, 1, &[(0, Edge::NLoop(0)), (0, Edge::NLoop(1))]).unwrap();
        let h =
            ColoredGraph::from_edges(2, 1, &[(0, Edge::NLoop(0)), (0, Edge::DLoop(1))]).unwrap();
        let basis = intertwiner_basis(&g, &h).unwrap();
        assert_eq!(basis.dim(), 2);
        let err = find_invertible_intertwiner_with_budget(&basis, 5, 8).unwrap_err();
        assert!(matches!(
            err,
            TransplantError::WitnessSearchExhausted { dim: 2, trials: 8 }
        ));
    }

    #[test]
    fn cycle_checks_on_reference_data() {
        let g = demo::left_graph();
        let h = demo::right_graph();
        assert_eq!(
            cycle_equivalence_check(&g, &h, 10).unwrap(),
            CycleCheck::Equal
        );
        assert_eq!(
            cycle_equivalence_check(&g, &g, 16).unwrap(),
            CycleCheck::Equal
        );
        assert_eq!(
            cycle_equivalence_check(&g, &z_flipped(), 6).unwrap(),
            CycleCheck::Mismatch {
                word: vec![2],
                left: 0,
                right: 2
            }
        );
    }

    #[test]
    fn line_transplantation_matches_golden_blocks() {
        let g = demo::left_graph();
        let h = demo::right_graph();
        let t = demo::transplantation_matrix();
        let t_line = build_line_transplantation(&t, &g, &h).unwrap();
        assert_eq!(t_line, demo::line_transplantation_golden());
        assert_eq!(block_sizes(&g), vec![2, 2, 2]);
        assert!(verify_line_certificate(&t_line, &g, &h).unwrap());
    }

    #[test]
    fn identity_line_transplantation() {
        let g = demo::left_graph();
        let t_line = build_line_transplantation(&ExactMatrix::identity(4), &g, &g).unwrap();
        assert_eq!(t_line, ExactMatrix::identity(6));
        assert!(verify_line_certificate(&t_line, &g, &g).unwrap());
    }

    #[test]
    fn perturbed_line_certificate_fails() {
        let g = demo::left_graph();
        let h = demo::right_graph();
        let mut t_line = demo::line_transplantation_golden();
        let bumped = t_line[(0, 0)].clone() + rat(1);
        t_line[(0, 0)] = bumped;
        assert!(!verify_line_certificate(&t_line, &g, &h).unwrap());
    }

    #[test]
    fn non_intertwiner_is_rejected() {
        let g = demo::left_graph();
        let h = demo::right_graph();
        let err = build_line_transplantation(&ExactMatrix::identity(4), &g, &h).unwrap_err();
        assert!(matches!(err, TransplantError::IntertwiningViolated { .. }));
    }

    #[test]
    fn wrongly_sized_line_certificate_is_an_error() {
        let g = demo::left_graph();
        let err = verify_line_certificate(&ExactMatrix::identity(4), &g, &g).unwrap_err();
        assert!(matches!(err, TransplantError::LineSizeMismatch(4, 4)));
    }

    #[test]
    fn certify_reference_pair_end_to_end() {
        let g = demo::left_graph();
        let h = demo::right_graph();
        let cert = certify(&g, &h, 7).unwrap();
        assert!(cert.is_transplantable());
        let t = cert.witness.expect("witness");
        assert!(!t.determinant().unwrap().is_zero());
        for c in 0..3 {
            let a = g.adjacency(c).to_rational();
            let b = h.adjacency(c).to_rational();
            assert_eq!(a.mul(&t), t.mul(&b));
        }
        let t_line = cert.line_witness.expect("line witness");
        assert!(verify_line_certificate(&t_line, &g, &h).unwrap());
    }
}
