//! Color words and their cyclic combinatorics.
//!
//! A word is a sequence of 0-based color indices. Because every adjacency
//! matrix here is an involution, trace comparisons only need cyclically
//! square-free words: no two cyclically adjacent letters equal (including the
//! wrap-around pair). Traces are invariant under rotation, and under reversal
//! when the matrices are symmetric, so enumeration works with canonical class
//! representatives.

/// A word together with its canonical cyclic representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    letters: Vec<usize>,
    square_free: bool,
}

impl CyclicWord {
    /// Canonicalizes up to rotation, and up to reversal as well when
    /// `with_reversal` is set.
    pub fn new(word: &[usize], with_reversal: bool) -> Self {
        CyclicWord {
            letters: canonical_cyclic(word, with_reversal),
            square_free: is_cyclically_square_free(word),
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn is_square_free(&self) -> bool {
        self.square_free
    }
}

/// True iff no two cyclically adjacent letters coincide. Length-1 words are
/// square-free; the empty word is, vacuously.
pub fn is_cyclically_square_free(word: &[usize]) -> bool {
    let l = word.len();
    if l <= 1 {
        return true;
    }
    (0..l).all(|i| word[i] != word[(i + 1) % l])
}

/// Lexicographically smallest rotation.
pub fn min_rotation(word: &[usize]) -> Vec<usize> {
    let l = word.len();
    if l == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<usize>> = None;
    for s in 0..l {
        let rot: Vec<usize> = (0..l).map(|i| word[(s + i) % l]).collect();
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap()
}

/// Smallest rotation of the word or (optionally) of its reversal.
pub fn canonical_cyclic(word: &[usize], with_reversal: bool) -> Vec<usize> {
    let fwd = min_rotation(word);
    if !with_reversal {
        return fwd;
    }
    let rev: Vec<usize> = word.iter().rev().copied().collect();
    let bwd = min_rotation(&rev);
    fwd.min(bwd)
}

/// Canonical representatives of all cyclically square-free words of exactly
/// the given length over `k` colors, in lexicographic order.
pub fn square_free_classes(k: usize, len: usize, with_reversal: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len == 0 || k == 0 {
        return out;
    }
    let mut word = Vec::with_capacity(len);
    collect(k, len, with_reversal, &mut word, &mut out);
    out
}

fn collect(
    k: usize,
    len: usize,
    with_reversal: bool,
    word: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if word.len() == len {
        if word[0] != word[len - 1] || len == 1 {
            // Keep only class representatives; they arrive in lex order.
            if canonical_cyclic(word, with_reversal) == *word {
                out.push(word.clone());
            }
        }
        return;
    }
    for c in 0..k {
        if word.last() == Some(&c) {
            continue;
        }
        word.push(c);
        collect(k, len, with_reversal, word, out);
        word.pop();
    }
}

/// Representatives of all cyclically square-free classes of length
/// `min_len..=max_len`, shortest first, lexicographic within a length.
pub fn square_free_classes_up_to(
    k: usize,
    min_len: usize,
    max_len: usize,
    with_reversal: bool,
) -> Vec<Vec<usize>> {
    (min_len..=max_len)
        .flat_map(|l| square_free_classes(k, l, with_reversal))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_free_wraps_around() {
        assert!(is_cyclically_square_free(&[0, 1, 2]));
        assert!(is_cyclically_square_free(&[0]));
        assert!(!is_cyclically_square_free(&[0, 1, 1]));
        assert!(!is_cyclically_square_free(&[0, 1, 0])); // wrap: last == first
    }

    #[test]
    fn rotation_and_reversal_canonicalization() {
        assert_eq!(min_rotation(&[2, 0, 1]), vec![0, 1, 2]);
        assert_eq!(canonical_cyclic(&[0, 2, 1], true), vec![0, 1, 2]);
        let w = CyclicWord::new(&[1, 2, 0, 1], false);
        assert_eq!(w.letters(), &[0, 1, 1, 2]);
        assert!(!w.is_square_free());
    }

    #[test]
    fn class_counts_over_two_colors() {
        // Over two colors the only square-free cyclic classes have even
        // length and alternate, so each length contributes exactly one class.
        for len in [2usize, 4, 6] {
            assert_eq!(
                square_free_classes(2, len, true),
                vec![{
                    let mut w = Vec::new();
                    for i in 0..len {
                        w.push(i % 2);
                    }
                    w
                }]
            );
        }
        assert!(square_free_classes(2, 3, true).is_empty());
        assert_eq!(square_free_classes(2, 1, true).len(), 2);
    }

    #[test]
    fn classes_partition_all_square_free_words() {
        // Every square-free word of length 4 over 3 colors must canonicalize
        // to a listed representative.
        let classes = square_free_classes(3, 4, true);
        let mut all = Vec::new();
        for a in 0..3usize {
            for b in 0..3usize {
                for c in 0..3usize {
                    for d in 0..3usize {
                        let w = [a, b, c, d];
                        if is_cyclically_square_free(&w) {
                            all.push(canonical_cyclic(&w, true));
                        }
                    }
                }
            }
        }
        all.sort();
        all.dedup();
        assert_eq!(all, classes);
    }
}
