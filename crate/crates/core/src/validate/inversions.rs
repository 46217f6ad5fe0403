use alloc::vec::Vec;

/// Per-position and total inversion counts of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inversions {
    /// For position `i`, the number of `j` with `j > i ∧ seq[j] < seq[i]`
    /// or `j < i ∧ seq[j] > seq[i]`.
    pub per_index: Vec<u64>,
    /// Number of inverted pairs, i.e. half the sum of `per_index`.
    pub total: u64,
}

/// Counts strict inversions with a merge sort in `O(m log m)`.
///
/// Equal elements are never inverted. Over the `B`-projection of a class
/// sorted by `[A, B]`, position `i`'s count is the number of swaps its
/// tuple takes part in.
pub fn count_inversions<T: Ord>(seq: &[T]) -> Inversions {
    let n = seq.len();
    let mut per_index = alloc::vec![0u64; n];
    let mut order: Vec<usize> = (0..n).collect();
    let mut buf: Vec<usize> = alloc::vec![0; n];
    let mut width = 1;
    while width < n {
        let mut lo = 0;
        while lo + width < n {
            let mid = lo + width;
            let hi = (lo + 2 * width).min(n);
            merge(seq, &order[lo..mid], &order[mid..hi], &mut buf[lo..hi], &mut per_index);
            order[lo..hi].copy_from_slice(&buf[lo..hi]);
            lo = hi;
        }
        width *= 2;
    }
    let total = per_index.iter().sum::<u64>() / 2;
    Inversions { per_index, total }
}

// Merges two sorted runs of indices. On ties the left element goes first,
// so every right element taken is strictly smaller than all left elements
// still pending, and every left element taken is strictly larger than all
// right elements already taken.
fn merge<T: Ord>(seq: &[T], left: &[usize], right: &[usize], out: &mut [usize], counts: &mut [u64]) {
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() || j < right.len() {
        if j == right.len() || (i < left.len() && seq[left[i]] <= seq[right[j]]) {
            counts[left[i]] += j as u64;
            out[k] = left[i];
            i += 1;
        } else {
            counts[right[j]] += (left.len() - i) as u64;
            out[k] = right[j];
            j += 1;
        }
        k += 1;
    }
}
