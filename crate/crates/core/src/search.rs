//! Exhaustive enumeration of colored graphs up to isomorphism and mining of
//! non-isomorphic transplantable pairs.
//!
//! Each color independently ranges over all involutive structures (a partial
//! matching plus signed loops), so the labeled space is a k-fold product.
//! Enumeration keeps exactly the graphs that are their own canonical
//! representative; pair mining buckets representatives by sound trace
//! fingerprints and decides the survivors exactly.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::canon::{canonical_form, isomorphism, CanonicalKey};
use crate::graph::{signed_perm_word_trace, ColoredGraph, Edge};
use crate::linegraph::build_vc;
use crate::transplant::{certify, decide_transplantable, TransplantCertificate};
use crate::word;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    pub k: usize,
    pub allow_n_loops: bool,
    pub allow_d_loops: bool,
    /// Keep only graphs with this per-color trace vector.
    pub required_trace: Option<Vec<i64>>,
    /// Maximum word length for the trace prefilter buckets.
    pub l_filter: usize,
    pub max_pairs: Option<usize>,
    pub time_budget: Option<Duration>,
    pub seed: u64,
    /// Also report whether the vertex-colored line graphs are isomorphic.
    pub check_line_iso: bool,
}

impl SearchConfig {
    pub fn new(n: usize, k: usize) -> Self {
        SearchConfig {
            n,
            k,
            allow_n_loops: true,
            allow_d_loops: true,
            required_trace: None,
            l_filter: 4,
            max_pairs: None,
            time_budget: None,
            seed: 7,
            check_line_iso: true,
        }
    }
}

/// A verified non-isomorphic transplantable pair.
#[derive(Debug, Clone)]
pub struct PairRecord {
    pub left: ColoredGraph,
    pub right: ColoredGraph,
    pub left_key: CanonicalKey,
    pub right_key: CanonicalKey,
    pub certificate: TransplantCertificate,
    pub line_graphs_isomorphic: Option<bool>,
}

/// All involutive single-color structures on `n` vertices: every vertex gets
/// a link to a later partner or an allowed loop.
pub fn color_structures(n: usize, allow_n: bool, allow_d: bool) -> Vec<Vec<Edge>> {
    fn go(
        n: usize,
        allow_n: bool,
        allow_d: bool,
        assigned: &mut Vec<bool>,
        current: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
    ) {
        let Some(v) = (0..n).find(|&v| !assigned[v]) else {
            out.push(current.clone());
            return;
        };
        assigned[v] = true;
        if allow_n {
            current.push(Edge::NLoop(v));
            go(n, allow_n, allow_d, assigned, current, out);
            current.pop();
        }
        if allow_d {
            current.push(Edge::DLoop(v));
            go(n, allow_n, allow_d, assigned, current, out);
            current.pop();
        }
        for u in v + 1..n {
            if assigned[u] {
                continue;
            }
            assigned[u] = true;
            current.push(Edge::Link(v, u));
            go(n, allow_n, allow_d, assigned, current, out);
            current.pop();
            assigned[u] = false;
        }
        assigned[v] = false;
    }
    let mut out = Vec::new();
    let mut assigned = vec![false; n];
    go(
        n,
        allow_n,
        allow_d,
        &mut assigned,
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn structure_trace(edges: &[Edge]) -> i64 {
    edges
        .iter()
        .map(|e| match e {
            Edge::NLoop(_) => 1,
            Edge::DLoop(_) => -1,
            Edge::Link(..) => 0,
        })
        .sum()
}

/// Canonical representatives of all valid graphs for the configuration, in
/// canonical-key order.
pub fn enumerate(cfg: &SearchConfig) -> Vec<ColoredGraph> {
    assert!(
        cfg.n >= 1 && cfg.k >= 1,
        "searches need at least one vertex and color"
    );
    let all = color_structures(cfg.n, cfg.allow_n_loops, cfg.allow_d_loops);
    let per_color: Vec<Vec<&Vec<Edge>>> = (0..cfg.k)
        .map(|c| {
            all.iter()
                .filter(|s| {
                    cfg.required_trace
                        .as_ref()
                        .is_none_or(|req| structure_trace(s) == req[c])
                })
                .collect()
        })
        .collect();
    if per_color.iter().any(Vec::is_empty) {
        return Vec::new();
    }

    let mut out = Vec::new();
    let mut counters = vec![0usize; cfg.k];
    'outer: loop {
        let edges: Vec<(usize, Edge)> = counters
            .iter()
            .enumerate()
            .flat_map(|(c, &i)| per_color[c][i].iter().map(move |&e| (c, e)))
            .collect();
        let g = ColoredGraph::from_edges(cfg.n, cfg.k, &edges)
            .expect("enumerated structures are valid");
        if crate::canon::is_canonical(&g) {
            out.push(g);
        }
        for c in (0..cfg.k).rev() {
            counters[c] += 1;
            if counters[c] < per_color[c].len() {
                continue 'outer;
            }
            counters[c] = 0;
        }
        break;
    }
    out.sort_by_key(canonical_form);
    out
}

/// Sound bucket fingerprint: per-color traces plus word traces up to the
/// filter length. Transplantable pairs always share a fingerprint.
fn fingerprint(g: &ColoredGraph, words: &[Vec<usize>]) -> Vec<i64> {
    let perms = g.signed_perms();
    let mut fp = g.trace_vector();
    fp.extend(words.iter().map(|w| signed_perm_word_trace(&perms, w)));
    fp
}

/// Brute-force color-preserving isomorphism of vertex-colored line graphs,
/// over permutations that respect the color blocks.
pub fn vc_line_graphs_isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    let lg = build_vc(g);
    let lh = build_vc(h);
    if lg.indexing.color_counts() != lh.indexing.color_counts() {
        return false;
    }
    let n_l = lg.indexing.len();
    let blocks: Vec<(usize, usize)> = {
        let mut acc = Vec::new();
        let mut offset = 0;
        for &s in lg.indexing.color_counts() {
            acc.push((offset, s));
            offset += s;
        }
        acc
    };
    let block_perms: Vec<Vec<Vec<usize>>> = blocks.iter().map(|&(_, s)| permutations(s)).collect();

    let mut choice = vec![0usize; blocks.len()];
    loop {
        let mut image = vec![0usize; n_l];
        for (b, &(offset, _)) in blocks.iter().enumerate() {
            for (i, &p) in block_perms[b][choice[b]].iter().enumerate() {
                image[offset + i] = offset + p;
            }
        }
        let matches =
            lg.adjacency.iter().zip(&lh.adjacency).all(|(a, b)| {
                (0..n_l).all(|e| (0..n_l).all(|f| a[(e, f)] == b[(image[e], image[f])]))
            });
        if matches {
            return true;
        }
        let mut done = true;
        for b in (0..blocks.len()).rev() {
            choice[b] += 1;
            if choice[b] < block_perms[b].len() {
                done = false;
                break;
            }
            choice[b] = 0;
        }
        if done {
            return false;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(items, k - 1, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let n = items.len().max(1);
    heap(&mut items, n, &mut out);
    out
}

/// Mines verified transplantable pairs of non-isomorphic representatives.
/// Results are deterministic for a fixed configuration; the limits only cut
/// the stream short.
pub fn find_transplantable_pairs(cfg: &SearchConfig) -> Vec<PairRecord> {
    let started = Instant::now();
    let reps = enumerate(cfg);
    let words = word::square_free_classes_up_to(cfg.k, 2, cfg.l_filter.max(1), true);

    let mut buckets: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, g) in reps.iter().enumerate() {
        buckets.entry(fingerprint(g, &words)).or_default().push(i);
    }

    let mut records = Vec::new();
    'mine: for indices in buckets.values() {
        for (a, &i) in indices.iter().enumerate() {
            for &j in &indices[a + 1..] {
                if cfg.max_pairs.is_some_and(|m| records.len() >= m) {
                    break 'mine;
                }
                if cfg.time_budget.is_some_and(|b| started.elapsed() > b) {
                    break 'mine;
                }
                let (g, h) = (&reps[i], &reps[j]);
                if isomorphism(g, h)
                    .expect("same shape within a bucket")
                    .is_some()
                {
                    continue; // distinct canonical keys make this unreachable
                }
                let decision = decide_transplantable(g, h).expect("same shape");
                if !decision.is_transplantable() {
                    continue;
                }
                let certificate =
                    certify(g, h, cfg.seed).expect("witness exists for a transplantable pair");
                let line_graphs_isomorphic =
                    cfg.check_line_iso.then(|| vc_line_graphs_isomorphic(g, h));
                records.push(PairRecord {
                    left: g.clone(),
                    right: h.clone(),
                    left_key: canonical_form(g),
                    right_key: canonical_form(h),
                    certificate,
                    line_graphs_isomorphic,
                });
            }
        }
    }
    records.sort_by(|a, b| (&a.left_key, &a.right_key).cmp(&(&b.left_key, &b.right_key)));
    records
}
