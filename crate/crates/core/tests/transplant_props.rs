//! Property suites for the transplantation machinery: the line-graph trace
//! identities and the consistency of the decision procedure.

use cospec::canon::{relabel, Permutation};
use cospec::graph::ColoredGraph;
use cospec::linegraph::{build_ec, build_vc};
use cospec::matrix::IntMatrix;
use cospec::transplant::{
    certify, cycle_equivalence_check, decide_transplantable, verify_line_certificate, CycleCheck,
};
use cospec::word;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

fn random_graph(seed: u64, n: usize, k: usize) -> ColoredGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    ColoredGraph::random(&mut rng, n, k, true, true)
}

fn int_word_product(mats: &[IntMatrix], word: &[usize]) -> IntMatrix {
    let (&first, rest) = word.split_first().expect("nonempty word");
    let mut acc = mats[first].clone();
    for &c in rest {
        acc = acc.mul(&mats[c]);
    }
    acc
}

/// tr of the line-graph word product equals tr of the shifted graph product.
fn trace_identity_holds(g: &ColoredGraph, word: &[usize]) -> bool {
    let vc = build_vc(g);
    let shifted: Vec<IntMatrix> = (0..g.color_count())
        .map(|c| g.adjacency(c).add(&IntMatrix::identity(g.vertex_count())))
        .collect();
    int_word_product(&vc.adjacency, word).trace() == int_word_product(&shifted, word).trace()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_trace_identity((n, k, seed) in (1usize..=7, 2usize..=4, any::<u64>())) {
        let g = random_graph(seed, n, k);
        for word in word::square_free_classes_up_to(k, 2, 5, false) {
            prop_assert!(trace_identity_holds(&g, &word), "word {:?} on {:?}", word, g);
        }
    }

    #[test]
    fn relabeled_pairs_are_transplantable((n, k, seed) in (1usize..=6, 1usize..=3, any::<u64>())) {
        let g = random_graph(seed, n, k);
        let mut rng = StdRng::seed_from_u64(seed ^ 0xabcdef);
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            images.swap(i, j);
        }
        let h = relabel(&g, &Permutation::new(images).unwrap());
        let cert = decide_transplantable(&g, &h).unwrap();
        prop_assert!(cert.is_transplantable());
        prop_assert_eq!(cycle_equivalence_check(&g, &h, 6).unwrap(), CycleCheck::Equal);
    }

    #[test]
    fn transplantable_verdicts_are_cycle_equivalent((n, k, sa, sb) in
        (1usize..=5, 1usize..=2, any::<u64>(), any::<u64>())) {
        let g = random_graph(sa, n, k);
        let h = random_graph(sb, n, k);
        let cert = decide_transplantable(&g, &h).unwrap();
        if cert.is_transplantable() {
            prop_assert_eq!(cycle_equivalence_check(&g, &h, 9).unwrap(), CycleCheck::Equal);
        } else {
            // Refuted pairs carry either a short word or a positive gap.
            match cycle_equivalence_check(&g, &h, 9).unwrap() {
                CycleCheck::Mismatch { .. } => {}
                CycleCheck::Equal => {
                    let dims = cospec::transplant::hom_dims(&g, &h).unwrap();
                    prop_assert!(dims.gap() > 0);
                }
            }
        }
    }

    #[test]
    fn certified_witnesses_verify_end_to_end((n, k, seed) in (1usize..=5, 1usize..=3, any::<u64>())) {
        let g = random_graph(seed, n, k);
        let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            images.swap(i, j);
        }
        let h = relabel(&g, &Permutation::new(images).unwrap());
        let cert = certify(&g, &h, seed).unwrap();
        prop_assert!(cert.is_transplantable());
        let t_line = cert.line_witness.expect("line witness");
        prop_assert!(verify_line_certificate(&t_line, &g, &h).unwrap());
    }

    #[test]
    fn two_color_powers_and_odd_traces((n, seed) in (1usize..=7, any::<u64>())) {
        let g = random_graph(seed, n, 3);
        let vc = build_vc(&g);
        let ec = build_ec(&g);
        for (idx, &(c, d)) in ec.color_pairs.iter().enumerate() {
            let m = &ec.adjacency[idx];
            let cross = vc.adjacency[c].mul(&vc.adjacency[d]);
            let mut even = m.mul(m);
            let mut cross_pow = cross.clone();
            for _ in 1..=4 {
                prop_assert_eq!(even.trace(), 2 * cross_pow.trace());
                even = even.mul(m).mul(m);
                cross_pow = cross_pow.mul(&cross);
            }
            let mut odd = m.clone();
            for _ in 0..3 {
                prop_assert_eq!(odd.trace(), 0);
                odd = odd.mul(m).mul(m);
            }
        }
    }
}

#[test]
fn reference_line_graphs_are_cycle_equivalent() {
    // The line transplantation matrix intertwines both line-graph families,
    // so every word trace must coincide — including words that are not
    // square-free. Checked directly on all words up to length 5.
    let g = cospec::demo::left_graph();
    let h = cospec::demo::right_graph();
    let (vc_g, vc_h) = (build_vc(&g), build_vc(&h));
    let (ec_g, ec_h) = (build_ec(&g), build_ec(&h));
    let mut words: Vec<Vec<usize>> = vec![];
    for len in 1..=5usize {
        let mut w = vec![0usize; len];
        loop {
            words.push(w.clone());
            let mut done = true;
            for slot in w.iter_mut().rev() {
                *slot += 1;
                if *slot < 3 {
                    done = false;
                    break;
                }
                *slot = 0;
            }
            if done {
                break;
            }
        }
    }
    for w in &words {
        assert_eq!(
            int_word_product(&vc_g.adjacency, w).trace(),
            int_word_product(&vc_h.adjacency, w).trace(),
            "vc word {w:?}"
        );
        assert_eq!(
            int_word_product(&ec_g.adjacency, w).trace(),
            int_word_product(&ec_h.adjacency, w).trace(),
            "ec word {w:?}"
        );
    }
}

#[test]
fn mixed_color_cycle_identity_on_random_graphs() {
    for seed in 0..20u64 {
        let g = random_graph(seed, 5, 3);
        let vc = build_vc(&g);
        let ec = build_ec(&g);
        let pair_index = |a: usize, b: usize| {
            ec.color_pairs
                .iter()
                .position(|&(x, y)| (x, y) == (a.min(b), a.max(b)))
                .expect("pair exists")
        };
        for len in 3..=6 {
            for word in all_square_free_words(3, len) {
                if word[0] == word[2] {
                    continue;
                }
                let ec_word: Vec<IntMatrix> = (0..len)
                    .map(|i| ec.adjacency[pair_index(word[i], word[(i + 1) % len])].clone())
                    .collect();
                let ec_trace = int_word_product(&ec_word, &(0..len).collect::<Vec<_>>()).trace();
                let vc_trace = int_word_product(&vc.adjacency, &word).trace();
                assert_eq!(ec_trace, vc_trace, "word {word:?} on {g:?}");
            }
        }
    }
}

fn all_square_free_words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut word = Vec::new();
    fn go(k: usize, len: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if word.len() == len {
            if word[0] != word[len - 1] {
                out.push(word.clone());
            }
            return;
        }
        for c in 0..k {
            if word.last() == Some(&c) {
                continue;
            }
            word.push(c);
            go(k, len, word, out);
            word.pop();
        }
    }
    go(k, len, &mut word, &mut out);
    out
}
