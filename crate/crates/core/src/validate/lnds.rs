use alloc::vec::Vec;

const NONE: usize = usize::MAX;

/// Indices of one longest non-decreasing subsequence, ascending.
///
/// Patience-style: `tails[k]` holds the index of the smallest possible last
/// element of a non-decreasing subsequence of length `k + 1`. Each element
/// replaces the first tail strictly greater than it, found by binary
/// search, and records the tail before it as its predecessor. `O(m log m)`.
pub fn compute_lnds<T: Ord>(seq: &[T]) -> Vec<usize> {
    let mut tails: Vec<usize> = Vec::new();
    let mut prev = alloc::vec![NONE; seq.len()];
    for (i, x) in seq.iter().enumerate() {
        let k = tails.partition_point(|&t| seq[t] <= *x);
        if k > 0 {
            prev[i] = tails[k - 1];
        }
        if k == tails.len() {
            tails.push(i);
        } else {
            tails[k] = i;
        }
    }
    let mut kept = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied().unwrap_or(NONE);
    while cur != NONE {
        kept.push(cur);
        cur = prev[cur];
    }
    kept.reverse();
    kept
}

/// Length of a longest non-decreasing subsequence.
pub fn lnds_length<T: Ord>(seq: &[T]) -> usize {
    let mut tails: Vec<&T> = Vec::new();
    for x in seq {
        let k = tails.partition_point(|t| *t <= x);
        if k == tails.len() {
            tails.push(x);
        } else {
            tails[k] = x;
        }
    }
    tails.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn quadratic_length(seq: &[i64]) -> usize {
        let mut best = vec![1usize; seq.len()];
        for i in 0..seq.len() {
            for j in 0..i {
                if seq[j] <= seq[i] {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    #[test]
    fn tax_in_salary_order() {
        let tax = [20, 25, 3, 120, 15, 165, 18, 72, 160];
        let kept = compute_lnds(&tax);
        let values: Vec<i64> = kept.iter().map(|&i| tax[i]).collect();
        assert_eq!(values, vec![3, 15, 18, 72, 160]);
        assert_eq!(kept, vec![2, 4, 6, 7, 8]);
    }

    #[test]
    fn edge_cases() {
        assert!(compute_lnds::<i64>(&[]).is_empty());
        assert_eq!(compute_lnds(&[5, 5, 5]), vec![0, 1, 2]);
        assert_eq!(compute_lnds(&[3, 2, 1]).len(), 1);
        assert_eq!(lnds_length(&[1, 3, 2, 2, 4]), 4);
    }

    proptest! {
        #[test]
        fn longest_and_non_decreasing(seq in proptest::collection::vec(-20i64..20, 0..500)) {
            let kept = compute_lnds(&seq);
            prop_assert!(kept.windows(2).all(|w| w[0] < w[1] && seq[w[0]] <= seq[w[1]]));
            prop_assert_eq!(kept.len(), quadratic_length(&seq));
            prop_assert_eq!(lnds_length(&seq), kept.len());
        }
    }
}
