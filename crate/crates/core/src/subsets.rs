//! Colexicographic k-subset enumeration, ranking, and unranking.
//!
//! All subset streams in the library run in colex order: the subset `S`
//! precedes `T` exactly when the largest element where they differ lies in
//! `T`. Colex order is stable under growing the ground set, which keeps
//! block identifiers and counterexample reports deterministic, and its rank
//! function `rank(S) = sum C(s_i, i+1)` makes contiguous ranges cheap to
//! hand to worker threads.

/// Binomial coefficient as u128; saturates are not needed for the orders
/// this library handles (v <= 512, k <= 8).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Colex rank of a sorted subset.
pub fn colex_rank(subset: &[usize]) -> u128 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial(s, i + 1))
        .sum()
}

/// The sorted k-subset of {0, .., n-1} with the given colex rank.
pub fn colex_unrank(k: usize, mut rank: u128, n: usize) -> Vec<usize> {
    let mut out = vec![0usize; k];
    let mut hi = n;
    for i in (1..=k).rev() {
        // Largest a with C(a, i) <= rank.
        let mut a = i - 1;
        let mut best = 0u128;
        for cand in (i - 1..hi).rev() {
            let c = binomial(cand, i);
            if c <= rank {
                a = cand;
                best = c;
                break;
            }
        }
        rank -= best;
        out[i - 1] = a;
        hi = a;
    }
    out
}

/// Advance `subset` to its colex successor among k-subsets of {0,..,n-1}.
/// Returns `false` when `subset` was the last one.
pub fn colex_next(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in 0..k {
        let limit = if i + 1 < k { subset[i + 1] } else { n };
        if subset[i] + 1 < limit {
            subset[i] += 1;
            for (j, slot) in subset.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}

/// Visit the colex range `[from, to)` of k-subsets of {0,..,n-1}.
pub fn for_each_colex_range<F: FnMut(&[usize])>(
    n: usize,
    k: usize,
    from: u128,
    to: u128,
    mut visit: F,
) {
    if from >= to || k > n {
        return;
    }
    let mut subset = colex_unrank(k, from, n);
    let mut remaining = to - from;
    loop {
        visit(&subset);
        remaining -= 1;
        if remaining == 0 || !colex_next(&mut subset, n) {
            break;
        }
    }
}

/// Visit every k-subset of {0,..,n-1} in colex order.
pub fn for_each_colex<F: FnMut(&[usize])>(n: usize, k: usize, visit: F) {
    for_each_colex_range(n, k, 0, binomial(n, k), visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(240, 3), 2_275_280);
        assert_eq!(binomial(64, 4), 635_376);
        assert_eq!(binomial(4, 7), 0);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn colex_order_small() {
        let mut seen = Vec::new();
        for_each_colex(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn rank_unrank_round_trip() {
        let n = 11;
        let k = 4;
        let mut rank = 0u128;
        for_each_colex(n, k, |s| {
            assert_eq!(colex_rank(s), rank);
            assert_eq!(colex_unrank(k, rank, n), s);
            rank += 1;
        });
        assert_eq!(rank, binomial(n, k));
    }

    #[test]
    fn ranged_visit_matches_full_stream() {
        let n = 9;
        let k = 3;
        let total = binomial(n, k);
        let mut full = Vec::new();
        for_each_colex(n, k, |s| full.push(s.to_vec()));
        let mut pieced = Vec::new();
        for chunk in [(0, 10), (10, 11), (11, total)] {
            for_each_colex_range(n, k, chunk.0, chunk.1, |s| pieced.push(s.to_vec()));
        }
        assert_eq!(full, pieced);
    }
}
