//! Canonical index orders for antisymmetric and symmetric pairs and triples.
//!
//! Everything downstream (wedge bases, curvature coordinates, report output)
//! depends on these orders being fixed: pairs and triples are lexicographic,
//! symmetric pairs run diagonal-inclusive.

/// Ordered pairs (i, j) with i < j < n, lexicographic.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Position of (i, j), i < j, in the `pairs(n)` order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // Pairs starting below i: sum of (n-1-k) for k < i.
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Ordered triples (i, j, k) with i < j < k < n, lexicographic.
pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Position of (i, j, k), i < j < k, in the `triples(n)` order.
pub fn triple_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k && k < n);
    let c3 = |m: usize| {
        if m < 3 {
            0
        } else {
            m * (m - 1) * (m - 2) / 6
        }
    };
    let c2 = |m: usize| m.saturating_sub(1) * m / 2;
    // Triples with a smaller first index, then smaller second, then third.
    (c3(n) - c3(n - i)) + (c2(n - 1 - i) - c2(n - j)) + (k - j - 1)
}

/// All strictly increasing k-tuples from 0..n, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Symmetric pairs (i, j) with i <= j < n: off-diagonal pairs first in
/// lexicographic order, then the diagonal — matching a traceless basis that
/// lists mixed products before diagonal differences.
pub fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = pairs(n);
    out.extend((0..n).map(|i| (i, i)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_matches_enumeration() {
        for n in 1..8 {
            for (idx, (i, j)) in pairs(n).iter().enumerate() {
                assert_eq!(pair_index(n, *i, *j), idx);
            }
            assert_eq!(pairs(n).len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn triple_count() {
        assert_eq!(triples(7).len(), 35);
        assert_eq!(triples(3), vec![(0, 1, 2)]);
    }

    #[test]
    fn triple_index_matches_enumeration() {
        for n in 3..9 {
            for (idx, (i, j, k)) in triples(n).iter().enumerate() {
                assert_eq!(triple_index(n, *i, *j, *k), idx);
            }
        }
    }

    #[test]
    fn combinations_agree_with_pairs_and_triples() {
        let quads = combinations(8, 4);
        assert_eq!(quads.len(), 70);
        assert!(quads.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            combinations(5, 2)
                .into_iter()
                .map(|v| (v[0], v[1]))
                .collect::<Vec<_>>(),
            pairs(5)
        );
    }

    #[test]
    fn sym_pair_layout() {
        assert_eq!(
            sym_pairs(3),
            vec![(0, 1), (0, 2), (1, 2), (0, 0), (1, 1), (2, 2)]
        );
    }
}
